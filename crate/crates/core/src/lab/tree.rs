//! Colour-class classification of trees and the construction it predicts
//! as extremal for the tree's blow-up.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::invariants::{bipartition, is_tree, matching_number};
use crate::spec::ConstructionSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// A leaf in the smaller class and `α(T) = |B|`: predicts `H(n,p,|A|)`.
    #[serde(rename = "case_i")]
    CaseI,
    /// Minimum degree 2 in the smaller class: predicts `H'(n,p,|A|)`.
    #[serde(rename = "case_ii")]
    CaseII,
    #[serde(rename = "neither")]
    Neither,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PredictedKind {
    H,
    HPrime,
}

/// Predicted extremal construction, parameterized by `s = |A|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub kind: PredictedKind,
    pub s: usize,
}

impl Prediction {
    pub fn spec(&self, n: usize, p: usize) -> ConstructionSpec {
        match self.kind {
            PredictedKind::H => ConstructionSpec::H { n, p, s: self.s },
            PredictedKind::HPrime => ConstructionSpec::HPrime {
                n,
                p,
                s: self.s,
                class_index: None,
                edge_choice: None,
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TreeClassification {
    #[serde(serialize_with = "crate::lab::report::ser_g6")]
    pub tree: Graph,
    /// The smaller colour class.
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub leaf_in_a: bool,
    pub alpha_equals_b: bool,
    pub min_degree_a_is_two: bool,
    pub verdict: Verdict,
    pub predicted: Option<Prediction>,
    pub notes: Vec<String>,
}

struct Flags {
    leaf_in_a: bool,
    alpha_equals_b: bool,
    min_degree_a_is_two: bool,
}

impl Flags {
    fn case_i(&self) -> bool {
        self.leaf_in_a && self.alpha_equals_b
    }

    fn case_ii(&self) -> bool {
        self.min_degree_a_is_two
    }
}

fn flags(t: &Graph, a: &[usize], b: &[usize], alpha: usize) -> Flags {
    Flags {
        leaf_in_a: a.iter().any(|&v| t.degree(v) == 1),
        alpha_equals_b: alpha == b.len(),
        min_degree_a_is_two: a.iter().map(|&v| t.degree(v)).min() == Some(2),
    }
}

/// Classifies a tree with at least one edge. With equal class sizes both
/// labelings are tried and the one satisfying a case is kept, case I first.
pub fn classify_tree(t: &Graph) -> Result<TreeClassification> {
    if !is_tree(t) {
        return Err(Error::NotATree);
    }
    if t.edge_count() == 0 {
        return Err(Error::param("a single vertex has no blow-up"));
    }
    let (x, y) = bipartition(t).expect("trees are bipartite");
    // König: α = n - ν for bipartite graphs
    let alpha = t.n() - matching_number(t);
    let (mut a, mut b) = if x.len() <= y.len() { (x, y) } else { (y, x) };
    let mut notes = Vec::new();
    let mut f = flags(t, &a, &b, alpha);
    if a.len() == b.len() {
        let g = flags(t, &b, &a, alpha);
        let better = |f: &Flags| {
            if f.case_i() {
                2
            } else if f.case_ii() {
                1
            } else {
                0
            }
        };
        if better(&g) > better(&f) {
            std::mem::swap(&mut a, &mut b);
            f = g;
        }
        notes.push(
            "colour classes have equal size; the labeling satisfying a case was kept".to_string(),
        );
    }
    let verdict = if f.case_i() {
        if f.case_ii() {
            notes.push("both cases apply; case I takes precedence".to_string());
        }
        Verdict::CaseI
    } else if f.case_ii() {
        Verdict::CaseII
    } else {
        Verdict::Neither
    };
    let predicted = match verdict {
        Verdict::CaseI => Some(Prediction {
            kind: PredictedKind::H,
            s: a.len(),
        }),
        Verdict::CaseII => Some(Prediction {
            kind: PredictedKind::HPrime,
            s: a.len(),
        }),
        Verdict::Neither => None,
    };
    Ok(TreeClassification {
        tree: t.clone(),
        a,
        b,
        leaf_in_a: f.leaf_in_a,
        alpha_equals_b: f.alpha_equals_b,
        min_degree_a_is_two: f.min_degree_a_is_two,
        verdict,
        predicted,
        notes,
    })
}

/// Star with one leg per entry of `legs`, each a path of that many edges
/// from the centre (label 0).
pub fn spider(legs: &[usize]) -> Result<Graph> {
    let n = 1 + legs.iter().sum::<usize>();
    let mut edges = Vec::new();
    let mut next = 1;
    for &len in legs {
        if len == 0 {
            return Err(Error::param("spider legs need at least one edge"));
        }
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Graph::from_edges(n, edges)
}
