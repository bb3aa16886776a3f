//! The graph6 interchange format.
//!
//! A graph6 string is a size header `N(n)` followed by the upper triangle of
//! the adjacency matrix, column by column (`x(0,1) x(0,2) x(1,2) x(0,3) ...`),
//! packed six bits per printable byte (value + 63) and zero-padded.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

const BIAS: u8 = 63;

/// Encodes `g` as graph6 without the optional `>>graph6<<` header.
pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(8 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    push_size(&mut out, n);

    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + BIAS);
        }
    } else {
        out.extend_from_slice(&[126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + BIAS);
        }
    }
}

fn err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        reason: reason.into(),
    }
}

fn sextet(bytes: &[u8], i: usize) -> Result<u64> {
    match bytes.get(i) {
        None => Err(err(i, "truncated input")),
        Some(&b) if (63..=126).contains(&b) => Ok((b - BIAS) as u64),
        Some(&b) => Err(err(
            i,
            format!("byte 0x{b:02x} outside the graph6 range 63..=126"),
        )),
    }
}

/// Decodes a graph6 string. A leading `>>graph6<<` header and one trailing
/// newline are accepted; anything else that is not strictly canonical
/// (wrong length, non-zero padding) is rejected with its byte offset.
pub fn decode(text: &str) -> Result<Graph> {
    let mut bytes = text.as_bytes();
    let mut base = 0;
    if let Some(rest) = bytes.strip_prefix(b">>graph6<<") {
        bytes = rest;
        base = 10;
    }
    if let Some(rest) = bytes.strip_suffix(b"\n") {
        bytes = rest;
    }
    if bytes.is_empty() {
        return Err(err(base, "empty input"));
    }
    if bytes[0] == b':' || bytes[0] == b';' {
        return Err(err(base, "sparse6/digraph6 input is not graph6"));
    }

    let (n, header) = if bytes[0] != 126 {
        (sextet(bytes, 0).map_err(|e| shift(e, base))? as usize, 1)
    } else if bytes.get(1) != Some(&126) {
        let mut n = 0u64;
        for i in 1..4 {
            n = (n << 6) | sextet(bytes, i).map_err(|e| shift(e, base))?;
        }
        if n <= 62 {
            return Err(err(base, "non-minimal size header"));
        }
        (n as usize, 4)
    } else {
        let mut n = 0u64;
        for i in 2..8 {
            n = (n << 6) | sextet(bytes, i).map_err(|e| shift(e, base))?;
        }
        if n <= 258_047 {
            return Err(err(base, "non-minimal size header"));
        }
        (n as usize, 8)
    };
    if n > MAX_VERTICES {
        return Err(Error::TooLarge {
            n,
            max: MAX_VERTICES,
        });
    }

    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    let body = &bytes[header..];
    if body.len() < nbytes {
        return Err(err(
            base + bytes.len(),
            format!(
                "truncated bit vector: expected {nbytes} data bytes, found {}",
                body.len()
            ),
        ));
    }
    if body.len() > nbytes {
        return Err(err(
            base + header + nbytes,
            "trailing bytes after bit vector",
        ));
    }

    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = sextet(body, k / 6).map_err(|e| shift(e, base + header))?;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    if nbytes > 0 {
        let last = sextet(body, nbytes - 1).map_err(|e| shift(e, base + header))?;
        let pad = nbytes * 6 - nbits;
        if last & ((1 << pad) - 1) != 0 {
            return Err(err(base + header + nbytes - 1, "non-zero padding bits"));
        }
    }
    Ok(g)
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Graph6 { offset, reason } => Error::Graph6 {
            offset: offset + by,
            reason,
        },
        other => other,
    }
}
