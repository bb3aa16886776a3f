//! Textual construction descriptions such as `turan:7,3` or
//! `join:path:3*hstar:8`.
//!
//! Grammar: `kind:args`. Numeric kinds take comma-separated counts
//! (`turan:n,p`, `h:n,p,s`, `hprime:n,p,s[,class,a,b]`, `hstar:n`, `q:r,p`,
//! `path:k`, `cycle:k`, `star:k`, `complete:k`, `empty:k`, `matching:k`).
//! `g6:<string>` embeds a graph. `blowup:<spec or graph6>,q` splits on the
//! last comma. `union:a+b+…` and `join:a*b*…` split on top-level separators;
//! parentheses group nested operands.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::constructions::{blow_up, h_graph, h_prime, h_star, q_graph, turan};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructionSpec {
    Turan {
        n: usize,
        p: usize,
    },
    H {
        n: usize,
        p: usize,
        s: usize,
    },
    HPrime {
        n: usize,
        p: usize,
        s: usize,
        class_index: Option<usize>,
        edge_choice: Option<(usize, usize)>,
    },
    HStar {
        n: usize,
    },
    Q {
        r: usize,
        p: usize,
    },
    BlowUp {
        base: Box<ConstructionSpec>,
        q: usize,
    },
    Join(Vec<ConstructionSpec>),
    Union(Vec<ConstructionSpec>),
    Path(usize),
    Cycle(usize),
    Star(usize),
    Complete(usize),
    Empty(usize),
    Matching(usize),
    Raw(Graph),
}

impl ConstructionSpec {
    pub fn build(&self) -> Result<Graph> {
        use ConstructionSpec::*;
        match self {
            Turan { n, p } => turan(*n, *p),
            H { n, p, s } => h_graph(*n, *p, *s),
            HPrime {
                n,
                p,
                s,
                class_index,
                edge_choice,
            } => h_prime(*n, *p, *s, *class_index, *edge_choice),
            HStar { n } => h_star(*n),
            Q { r, p } => q_graph(*r, *p),
            BlowUp { base, q } => blow_up(&base.build()?, *q),
            Join(parts) => fold(parts, Graph::join),
            Union(parts) => fold(parts, Graph::disjoint_union),
            Path(k) => Graph::path(*k),
            Cycle(k) => Graph::cycle(*k),
            Star(k) => Graph::star(*k),
            Complete(k) => Graph::complete(*k),
            Empty(k) => Graph::empty(*k),
            Matching(k) => Graph::matching(*k),
            Raw(g) => Ok(g.clone()),
        }
    }
}

fn fold(parts: &[ConstructionSpec], op: fn(&Graph, &Graph) -> Result<Graph>) -> Result<Graph> {
    let mut acc = Graph::empty(0)?;
    for p in parts {
        acc = op(&acc, &p.build()?)?;
    }
    Ok(acc)
}

impl fmt::Display for ConstructionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ConstructionSpec::*;
        let operands =
            |f: &mut fmt::Formatter<'_>, parts: &[ConstructionSpec], sep: &str| -> fmt::Result {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(sep)?;
                    }
                    match p {
                        Join(_) | Union(_) | BlowUp { .. } => write!(f, "({p})")?,
                        _ => write!(f, "{p}")?,
                    }
                }
                Ok(())
            };
        match self {
            Turan { n, p } => write!(f, "turan:{n},{p}"),
            H { n, p, s } => write!(f, "h:{n},{p},{s}"),
            HPrime {
                n,
                p,
                s,
                class_index,
                edge_choice,
            } => {
                write!(f, "hprime:{n},{p},{s}")?;
                if class_index.is_some() || edge_choice.is_some() {
                    let (a, b) = edge_choice.unwrap_or((0, 1));
                    write!(f, ",{},{a},{b}", class_index.unwrap_or(0))?;
                }
                Ok(())
            }
            HStar { n } => write!(f, "hstar:{n}"),
            Q { r, p } => write!(f, "q:{r},{p}"),
            BlowUp { base, q } => write!(f, "blowup:{base},{q}"),
            Join(parts) => {
                f.write_str("join:")?;
                operands(f, parts, "*")
            }
            Union(parts) => {
                f.write_str("union:")?;
                operands(f, parts, "+")
            }
            Path(k) => write!(f, "path:{k}"),
            Cycle(k) => write!(f, "cycle:{k}"),
            Star(k) => write!(f, "star:{k}"),
            Complete(k) => write!(f, "complete:{k}"),
            Empty(k) => write!(f, "empty:{k}"),
            Matching(k) => write!(f, "matching:{k}"),
            Raw(g) => write!(f, "g6:{}", graph6::encode(g)),
        }
    }
}

impl FromStr for ConstructionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s.trim())
    }
}

impl Serialize for ConstructionSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ConstructionSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn bad(input: &str, reason: impl Into<String>) -> Error {
    Error::SpecParse {
        input: input.to_string(),
        reason: reason.into(),
    }
}

fn counts(input: &str, args: &str, allowed: &[usize]) -> Result<Vec<usize>> {
    let nums = args
        .split(',')
        .map(|a| {
            a.trim()
                .parse::<usize>()
                .map_err(|_| bad(input, format!("`{a}` is not a count")))
        })
        .collect::<Result<Vec<_>>>()?;
    if !allowed.contains(&nums.len()) {
        return Err(bad(
            input,
            format!("expected {allowed:?} arguments, got {}", nums.len()),
        ));
    }
    Ok(nums)
}

fn strip_parens(s: &str) -> &str {
    let t = s.trim();
    if t.starts_with('(') && t.ends_with(')') && split_top(&t[1..t.len() - 1], '(').is_some() {
        &t[1..t.len() - 1]
    } else {
        t
    }
}

/// Splits on `sep` outside parentheses; `None` if parentheses are unbalanced.
fn split_top(s: &str, sep: char) -> Option<Vec<&str>> {
    let mut depth = 0i32;
    let mut parts = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return None;
    }
    parts.push(&s[start..]);
    Some(parts)
}

fn operands(input: &str, args: &str, sep: char) -> Result<Vec<ConstructionSpec>> {
    let parts = split_top(args, sep).ok_or_else(|| bad(input, "unbalanced parentheses"))?;
    parts.into_iter().map(|p| parse(strip_parens(p))).collect()
}

fn parse(input: &str) -> Result<ConstructionSpec> {
    use ConstructionSpec::*;
    let input = strip_parens(input);
    let (kind, args) = input
        .split_once(':')
        .ok_or_else(|| bad(input, "expected `kind:arguments`"))?;
    let one = |args: &str| counts(input, args, &[1]).map(|v| v[0]);
    Ok(match kind.trim() {
        "turan" => {
            let v = counts(input, args, &[2])?;
            Turan { n: v[0], p: v[1] }
        }
        "h" => {
            let v = counts(input, args, &[3])?;
            H {
                n: v[0],
                p: v[1],
                s: v[2],
            }
        }
        "hprime" => {
            let v = counts(input, args, &[3, 6])?;
            HPrime {
                n: v[0],
                p: v[1],
                s: v[2],
                class_index: v.get(3).copied(),
                edge_choice: (v.len() == 6).then(|| (v[4], v[5])),
            }
        }
        "hstar" => HStar { n: one(args)? },
        "q" => {
            let v = counts(input, args, &[2])?;
            Q { r: v[0], p: v[1] }
        }
        "blowup" => {
            let (base, q) = args
                .rsplit_once(',')
                .ok_or_else(|| bad(input, "expected `blowup:<base>,q`"))?;
            let q = q
                .trim()
                .parse()
                .map_err(|_| bad(input, "clique size is not a count"))?;
            let base = strip_parens(base);
            let base = if base.contains(':') {
                parse(base)?
            } else {
                Raw(graph6::decode(base)?)
            };
            BlowUp {
                base: Box::new(base),
                q,
            }
        }
        "join" => Join(operands(input, args, '*')?),
        "union" => Union(operands(input, args, '+')?),
        "path" => Path(one(args)?),
        "cycle" => Cycle(one(args)?),
        "star" => Star(one(args)?),
        "complete" => Complete(one(args)?),
        "empty" => Empty(one(args)?),
        "matching" => Matching(one(args)?),
        "g6" => Raw(graph6::decode(args)?),
        other => return Err(bad(input, format!("unknown construction kind `{other}`"))),
    })
}

/// Splits a comma-separated list of specs. A comma separates entries only
/// when the text after it starts a new `kind:`, so `turan:6,3,cycle:4`
/// yields two specs.
pub fn split_spec_list(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 && starts_kind(&s[i + 1..]) => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out.retain(|p| !p.is_empty());
    out
}

fn starts_kind(rest: &str) -> bool {
    let letters = rest
        .trim_start()
        .bytes()
        .take_while(u8::is_ascii_lowercase)
        .count();
    letters > 0 && rest.trim_start().as_bytes().get(letters) == Some(&b':')
}

/// Parses a spec list and builds every graph.
pub fn parse_graph_list(s: &str) -> Result<Vec<Graph>> {
    split_spec_list(s)
        .into_iter()
        .map(|p| p.parse::<ConstructionSpec>()?.build())
        .collect()
}
