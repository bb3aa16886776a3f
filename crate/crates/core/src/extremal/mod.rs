//! Exact extremal numbers `ex(n, 𝓕)` and all extremal graphs, by two
//! independent searches: level-wise isomorph-free generation
//! ([`ex_enumerate`]) and branch and bound over vertex pairs
//! ([`ex_branch_bound`]).

mod branch_bound;
pub mod cache;
mod enumerate;

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::containment::{
    contains_through_edge_with_reps, oriented_edge_representatives, ContainmentOptions,
};
use crate::error::{Error, Result};
use crate::family::GraphFamily;
use crate::graph::Graph;

pub use branch_bound::ex_branch_bound;
pub use enumerate::ex_enumerate;

pub const DEFAULT_WITNESS_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverMode {
    Enumerate,
    BranchBound,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_seconds: f64,
    pub workers: usize,
    /// Maximum number of extremal graphs kept; extra ones set the overflow flag.
    pub witness_cap: usize,
    /// Branch and bound keeps every extremal graph instead of stopping at the first.
    pub all_extremal: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 2_000_000_000,
            max_seconds: 3600.0,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            witness_cap: DEFAULT_WITNESS_CAP,
            all_extremal: true,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes_expanded: u64,
    pub prunes_by_bound: u64,
    pub prunes_by_containment: u64,
    pub iso_rejections: u64,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalResult {
    pub n: usize,
    pub family_key: Vec<String>,
    /// Exact when `complete`; otherwise the best lower bound found.
    pub max_edges: usize,
    pub extremal: GraphFamily,
    pub witness_overflow: bool,
    pub complete: bool,
    pub mode: SolverMode,
    pub stats: SearchStats,
}

/// Runs the solver for `mode`.
pub fn ex(
    n: usize,
    family: &GraphFamily,
    mode: SolverMode,
    budget: &SearchBudget,
) -> Result<ExtremalResult> {
    match mode {
        SolverMode::Enumerate => ex_enumerate(n, family, budget),
        SolverMode::BranchBound => ex_branch_bound(n, family, budget),
    }
}

/// Forbidden members with precomputed edge-orbit representatives.
pub(crate) struct Forbidden {
    members: Vec<(Graph, Vec<(usize, usize)>)>,
    opts: ContainmentOptions,
}

impl Forbidden {
    pub(crate) fn new(family: &GraphFamily) -> Result<Self> {
        if family.is_empty() {
            return Err(Error::param("empty forbidden family"));
        }
        let mut members = Vec::new();
        for g in family.iter() {
            if g.edge_count() == 0 {
                return Err(Error::param("forbidden graphs must have at least one edge"));
            }
            members.push((g.clone(), oriented_edge_representatives(g)));
        }
        Ok(Forbidden {
            members,
            opts: ContainmentOptions::default(),
        })
    }

    /// Whether `g` (which contains edge `uv`, and minus `uv` is free) contains a member.
    pub(crate) fn hit_through(&self, g: &Graph, u: usize, v: usize) -> Result<bool> {
        for (m, reps) in &self.members {
            if contains_through_edge_with_reps(g, m, reps, u, v, &self.opts)?.is_some() {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// `n` below every member's order: `K_n` is free.
pub(crate) fn degenerate(
    n: usize,
    family: &GraphFamily,
    mode: SolverMode,
) -> Result<Option<ExtremalResult>> {
    match family.min_order() {
        Some(min) if n < min => {
            let k = Graph::complete(n)?;
            Ok(Some(ExtremalResult {
                n,
                family_key: family.family_key(),
                max_edges: k.edge_count(),
                extremal: [k].into_iter().collect(),
                witness_overflow: false,
                complete: true,
                mode,
                stats: SearchStats::default(),
            }))
        }
        _ => Ok(None),
    }
}

pub(crate) struct Clock {
    start: Instant,
    limit: f64,
}

impl Clock {
    pub(crate) fn new(limit: f64) -> Self {
        Clock {
            start: Instant::now(),
            limit,
        }
    }

    pub(crate) fn expired(&self) -> bool {
        self.start.elapsed().as_secs_f64() > self.limit
    }

    pub(crate) fn elapsed_ms(&self) -> u64 {
        self.start.elapsed().as_millis() as u64
    }
}

pub(crate) fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::param(format!("cannot start worker pool: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::turan;

    fn fam(gs: &[Graph]) -> GraphFamily {
        gs.iter().collect()
    }

    fn both(n: usize, f: &GraphFamily) -> (ExtremalResult, ExtremalResult) {
        let b = SearchBudget::default();
        (
            ex_enumerate(n, f, &b).unwrap(),
            ex_branch_bound(n, f, &b).unwrap(),
        )
    }

    #[test]
    fn triangle_free_six() {
        let (a, b) = both(6, &fam(&[Graph::complete(3).unwrap()]));
        for r in [&a, &b] {
            assert!(r.complete);
            assert_eq!(r.max_edges, 9);
            assert_eq!(r.extremal, fam(&[turan(6, 2).unwrap()]));
        }
    }

    #[test]
    fn star_and_matching() {
        let (a, b) = both(
            5,
            &fam(&[Graph::star(2).unwrap(), Graph::matching(2).unwrap()]),
        );
        assert_eq!(a.max_edges, 1);
        assert_eq!(b.max_edges, 1);
        let f = fam(&[Graph::star(3).unwrap(), Graph::matching(3).unwrap()]);
        let (a, b) = both(8, &f);
        assert_eq!(a.max_edges, 6);
        assert_eq!(a.extremal, b.extremal);
        let two_triangles = Graph::k_copies(&Graph::complete(3).unwrap(), 2).unwrap();
        let padded = Graph::disjoint_union(&two_triangles, &Graph::empty(2).unwrap()).unwrap();
        assert!(a.extremal.contains_iso(&padded));
    }

    #[test]
    fn small_cases() {
        let (_, b) = both(7, &fam(&[Graph::complete(4).unwrap()]));
        assert_eq!(b.max_edges, 16);
        let (a, b) = both(4, &fam(&[Graph::path(3).unwrap()]));
        assert_eq!((a.max_edges, b.max_edges), (2, 2));
        assert_eq!(b.extremal, fam(&[Graph::matching(2).unwrap()]));
        let (a, b) = both(4, &fam(&[Graph::complete(5).unwrap()]));
        assert_eq!((a.max_edges, b.max_edges), (6, 6));
        let (a, b) = both(5, &fam(&[Graph::path(2).unwrap()]));
        assert_eq!((a.max_edges, b.max_edges), (0, 0));
        assert_eq!(b.extremal.len(), 1);
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let f = fam(&[Graph::complete(3).unwrap()]);
        let b = SearchBudget {
            max_nodes: 10,
            ..SearchBudget::default()
        };
        assert!(!ex_enumerate(8, &f, &b).unwrap().complete);
        assert!(!ex_branch_bound(8, &f, &b).unwrap().complete);
    }

    #[test]
    fn rejects_edgeless_members() {
        let f = fam(&[Graph::empty(2).unwrap()]);
        assert!(ex_enumerate(4, &f, &SearchBudget::default()).is_err());
        assert!(ex_enumerate(4, &GraphFamily::new(), &SearchBudget::default()).is_err());
    }
}
