//! Predicted extremal edge counts for blow-ups of stars, paths, cycles and
//! trees, with the size of `n` from which the prediction is known to hold.

use serde::Serialize;

use crate::constructions::{h_graph_edges, h_prime_edges, h_star_edges, turan_edges};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lab::tree::{classify_tree, PredictedKind};

#[derive(Clone, Debug)]
pub enum Target {
    /// `S_k^{p+1}`.
    Star { k: usize, p: usize },
    /// `P_{k+1}^{p+1}`, the path with `k` edges.
    Path { k: usize, p: usize },
    /// `C_k^{p+1}`.
    Cycle { k: usize, p: usize },
    /// `T^{p+1}` for a tree `T`.
    Tree { tree: Graph, p: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Threshold {
    /// The prediction is proven for `n >= min_n`.
    Known { min_n: u128, met: bool },
    /// Proven only for unspecified sufficiently large `n`.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PredictedValue {
    pub n: usize,
    pub edges: usize,
    /// Construction attaining the prediction, in spec syntax.
    pub construction: String,
    pub threshold: Threshold,
}

impl PredictedValue {
    pub fn threshold_note(&self) -> Option<String> {
        match self.threshold {
            Threshold::Known { met: true, .. } => None,
            Threshold::Known { min_n, met: false } => Some(format!(
                "threshold not met at n = {}: proven for n >= {min_n}",
                self.n
            )),
            Threshold::Unknown => Some(format!(
                "threshold unknown: proven only for large n, here n = {}",
                self.n
            )),
        }
    }
}

/// Additive constant over `e(T_{n,p})` for star blow-ups.
pub fn star_constant(k: usize) -> usize {
    if k % 2 == 1 {
        k * k - k
    } else {
        k * k - 3 * k / 2
    }
}

/// `s = ⌊(k-1)/2⌋ + 1` for paths with `k` edges and cycles of length `k`.
pub fn path_cycle_s(k: usize) -> usize {
    (k - 1) / 2 + 1
}

fn pow(b: u128, e: u32) -> u128 {
    b.saturating_pow(e)
}

fn known(n: usize, min_n: u128) -> Threshold {
    Threshold::Known {
        min_n,
        met: n as u128 >= min_n,
    }
}

pub fn predicted_value(target: &Target, n: usize) -> Result<PredictedValue> {
    match *target {
        Target::Star { k, p } => {
            if k < 1 || p < 2 {
                return Err(Error::param("star blow-ups need k >= 1 and p >= 2"));
            }
            let min_n = 16u128
                .saturating_mul(pow(k as u128, 3))
                .saturating_mul(pow(p as u128 + 1, 8));
            Ok(PredictedValue {
                n,
                edges: turan_edges(n, p)? + star_constant(k),
                construction: format!("turan:{n},{p}"),
                threshold: known(n, min_n),
            })
        }
        Target::Path { k, p } => {
            if k < 1 || p < 2 {
                return Err(Error::param("path blow-ups need k >= 1 and p >= 2"));
            }
            let min_n = 16u128
                .saturating_mul(pow(k as u128, 11))
                .saturating_mul(pow(p as u128 + 1, 8))
                .saturating_add(1);
            parity_construction(n, p, k, known(n, min_n))
        }
        Target::Cycle { k, p } => {
            if k < 3 || p < 2 {
                return Err(Error::param("cycle blow-ups need k >= 3 and p >= 2"));
            }
            if k == 3 && p == 2 {
                return Ok(PredictedValue {
                    n,
                    edges: h_star_edges(n)?,
                    construction: format!("hstar:{n}"),
                    threshold: Threshold::Unknown,
                });
            }
            parity_construction(n, p, k, Threshold::Unknown)
        }
        Target::Tree { ref tree, p } => {
            if p < 3 {
                return Err(Error::param("tree blow-ups need p >= 3"));
            }
            let c = classify_tree(tree)?;
            let pred = c.predicted.ok_or_else(|| {
                Error::Hypothesis("the tree satisfies neither case; no prediction".into())
            })?;
            let edges = match pred.kind {
                PredictedKind::H => h_graph_edges(n, p, pred.s)?,
                PredictedKind::HPrime => h_prime_edges(n, p, pred.s)?,
            };
            Ok(PredictedValue {
                n,
                edges,
                construction: pred.spec(n, p).to_string(),
                threshold: Threshold::Unknown,
            })
        }
    }
}

/// `H(n,p,s)` for odd `k`, `H'(n,p,s)` for even `k`.
fn parity_construction(
    n: usize,
    p: usize,
    k: usize,
    threshold: Threshold,
) -> Result<PredictedValue> {
    let s = path_cycle_s(k);
    let (edges, construction) = if k % 2 == 1 {
        (h_graph_edges(n, p, s)?, format!("h:{n},{p},{s}"))
    } else {
        (h_prime_edges(n, p, s)?, format!("hprime:{n},{p},{s}"))
    };
    Ok(PredictedValue {
        n,
        edges,
        construction,
        threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_values() {
        let v = predicted_value(&Target::Star { k: 2, p: 2 }, 10).unwrap();
        assert_eq!(v.edges, 26);
        assert!(v.threshold_note().is_some());
        assert_eq!(star_constant(3), 6);
        assert_eq!(star_constant(4), 10);
    }

    #[test]
    fn cycle_and_path_values() {
        assert_eq!(
            predicted_value(&Target::Cycle { k: 3, p: 2 }, 8)
                .unwrap()
                .edges,
            20
        );
        let v = predicted_value(&Target::Path { k: 3, p: 3 }, 12).unwrap();
        assert_eq!(v.edges, h_graph_edges(12, 3, 2).unwrap());
        assert_eq!(v.construction, "h:12,3,2");
        let v = predicted_value(&Target::Cycle { k: 4, p: 2 }, 12).unwrap();
        assert_eq!(v.construction, "hprime:12,2,2");
    }

    #[test]
    fn tree_values() {
        let t = Graph::path(5).unwrap();
        let v = predicted_value(&Target::Tree { tree: t, p: 3 }, 12).unwrap();
        assert_eq!(v.edges, h_prime_edges(12, 3, 2).unwrap());
        let s = Graph::star(3).unwrap();
        assert!(matches!(
            predicted_value(&Target::Tree { tree: s, p: 3 }, 12),
            Err(Error::Hypothesis(_))
        ));
    }
}
