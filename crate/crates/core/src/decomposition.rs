//! Decomposition families.
//!
//! `M` belongs to the decomposition family of `𝓛` (threshold `p`) when some
//! `L ∈ 𝓛` embeds in `(M ∪ I_t) ⊗ K_{p-1}(t,…,t)` and no graph obtained
//! from `M` by deleting one edge (and any vertices left isolated) has the
//! same property. The host only grows with `t`, so `t = |V(L)|` suffices.
//!
//! Candidates for the general computation come from the forbidden graphs
//! themselves. An embedding of `L` sends some vertex set `X` into `M ∪ I_t`
//! and colours the rest with the `p-1` independent classes, so every member
//! is `L[X]` minus its isolated vertices for some `X` with `χ(L - X) <= p-1`.
//! Candidates found this way are still confirmed through the product host.

use log::warn;
use rayon::prelude::*;

use crate::canon::{canonical_form, CanonicalForm};
use crate::containment::{
    contains_in_product, contains_with, ContainmentOptions, ContainmentWitness,
};
use crate::error::{Error, Result};
use crate::family::GraphFamily;
use crate::graph::Graph;
use crate::invariants::{chromatic_number, is_k_colorable};
use crate::split::{split_family, DEFAULT_SPLIT_CAP};

pub const DEFAULT_CANDIDATE_VERTEX_CAP: usize = 14;
/// Edge cap for the exhaustive edge-subset candidate sweep.
pub const ALL_SUBGRAPHS_EDGE_CAP: usize = 20;

/// `min χ(L) - 1` over the family.
pub fn family_threshold(family: &GraphFamily) -> Result<usize> {
    let mut best: Option<usize> = None;
    for g in family.iter() {
        let chi = chromatic_number(g)?;
        best = Some(best.map_or(chi, |b| b.min(chi)));
    }
    best.map(|c| c.saturating_sub(1))
        .ok_or_else(|| Error::param("empty forbidden family"))
}

/// Some `L` of the family embedded in the product host built on `m`.
pub fn product_condition(
    m: &Graph,
    family: &GraphFamily,
    p: usize,
    opts: &ContainmentOptions,
) -> Result<Option<(Graph, ContainmentWitness)>> {
    for l in family.iter() {
        if let Some(w) = contains_in_product(m, p, l.n().max(1), l, opts)? {
            return Ok(Some((l.clone(), w)));
        }
    }
    Ok(None)
}

/// Membership test: product condition plus single-edge-deletion minimality.
pub fn is_decomposition_member(
    m: &Graph,
    family: &GraphFamily,
    p: usize,
    opts: &ContainmentOptions,
) -> Result<bool> {
    if m.isolated_count() > 0 {
        return Err(Error::param(
            "decomposition candidates must not have isolated vertices",
        ));
    }
    if p < 2 {
        return Err(Error::param(format!("threshold p must be >= 2, got {p}")));
    }
    if product_condition(m, family, p, opts)?.is_none() {
        return Ok(false);
    }
    let mut seen: Vec<CanonicalForm> = Vec::new();
    for (u, v) in m.edges() {
        let smaller = m.without_edge(u, v)?.strip_isolated();
        let cf = canonical_form(&smaller);
        if seen.contains(&cf) {
            continue;
        }
        if product_condition(&smaller, family, p, opts)?.is_some() {
            return Ok(false);
        }
        seen.push(cf);
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CandidateSpace {
    /// Stripped induced subgraphs `L[X]` with `χ(L - X) <= p - 1`.
    Induced,
    /// Every edge subset of every `L`, stripped. Exhaustive and slow.
    AllSubgraphs,
}

#[derive(Clone, Debug)]
pub struct DecompositionQuery {
    pub forbidden: GraphFamily,
    /// Defaults to [`family_threshold`].
    pub p: Option<usize>,
    pub candidate_vertex_cap: usize,
    pub candidates: CandidateSpace,
    pub containment: ContainmentOptions,
}

impl DecompositionQuery {
    pub fn new(forbidden: GraphFamily) -> Self {
        DecompositionQuery {
            forbidden,
            p: None,
            candidate_vertex_cap: DEFAULT_CANDIDATE_VERTEX_CAP,
            candidates: CandidateSpace::Induced,
            containment: ContainmentOptions::default(),
        }
    }

    pub fn with_p(mut self, p: usize) -> Self {
        self.p = Some(p);
        self
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub family: GraphFamily,
    pub p: usize,
    /// False when a cap or budget cut the computation short.
    pub authoritative: bool,
    pub candidates_examined: usize,
}

pub fn decomposition_family_general(query: &DecompositionQuery) -> Result<Decomposition> {
    let p = match query.p {
        Some(p) => p,
        None => family_threshold(&query.forbidden)?,
    };
    if p < 2 {
        return Err(Error::param(format!("threshold p must be >= 2, got {p}")));
    }
    let mut authoritative = true;
    let mut forms: Vec<CanonicalForm> = Vec::new();
    for l in query.forbidden.iter() {
        if l.n() > query.candidate_vertex_cap {
            warn!(
                "skipping forbidden graph on {} vertices (cap {})",
                l.n(),
                query.candidate_vertex_cap
            );
            authoritative = false;
            continue;
        }
        match query.candidates {
            CandidateSpace::Induced => forms.extend(induced_candidates(l, p)),
            CandidateSpace::AllSubgraphs => {
                if l.edge_count() > ALL_SUBGRAPHS_EDGE_CAP {
                    return Err(Error::CapExceeded {
                        what: "edge-subset sweep edge",
                        value: l.edge_count(),
                        cap: ALL_SUBGRAPHS_EDGE_CAP,
                    });
                }
                forms.extend(edge_subset_candidates(l));
            }
        }
    }
    forms.sort();
    forms.dedup();
    let mut candidates: Vec<Graph> = forms.iter().map(|f| f.graph()).collect();
    candidates.sort_by_key(|g| (g.edge_count(), g.n()));
    let examined = candidates.len();

    let mut members: Vec<Graph> = Vec::new();
    let mut i = 0;
    while i < candidates.len() {
        let e = candidates[i].edge_count();
        let mut j = i;
        while j < candidates.len() && candidates[j].edge_count() == e {
            j += 1;
        }
        let level = &candidates[i..j];
        let outcomes: Vec<Result<bool>> = level
            .par_iter()
            .map(|c| {
                // anything containing a smaller member is not minimal
                for m in &members {
                    if contains_with(c, m, &query.containment)?.is_some() {
                        return Ok(false);
                    }
                }
                is_decomposition_member(c, &query.forbidden, p, &query.containment)
            })
            .collect();
        for (c, r) in level.iter().zip(outcomes) {
            match r {
                Ok(true) => members.push(c.clone()),
                Ok(false) => {}
                Err(Error::BudgetExceeded { nodes }) => {
                    warn!("candidate {c} exceeded the containment budget after {nodes} nodes");
                    authoritative = false;
                }
                Err(e) => return Err(e),
            }
        }
        i = j;
    }
    Ok(Decomposition {
        family: members.into_iter().collect(),
        p,
        authoritative,
        candidates_examined: examined,
    })
}

fn induced_candidates(l: &Graph, p: usize) -> Vec<CanonicalForm> {
    let n = l.n();
    let mut out: Vec<CanonicalForm> = (0u64..1 << n)
        .into_par_iter()
        .filter_map(|mask| {
            let (inside, outside): (Vec<usize>, Vec<usize>) =
                (0..n).partition(|&v| mask >> v & 1 == 1);
            if !is_k_colorable(&l.induced(&outside), p - 1) {
                return None;
            }
            Some(canonical_form(&l.induced(&inside).strip_isolated()))
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

fn edge_subset_candidates(l: &Graph) -> Vec<CanonicalForm> {
    let edges = l.edge_list();
    let k = edges.len();
    let mut out: Vec<CanonicalForm> = (0u64..1 << k)
        .into_par_iter()
        .map(|mask| {
            let chosen = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| edges[i]);
            let g = Graph::from_edges(l.n(), chosen).expect("edges of l");
            canonical_form(&g.strip_isolated())
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Fast path for blow-ups: with `p >= 3` and `χ(h) <= p - 1` the
/// decomposition family of the `(p+1)`-blow-up of `h` is the split family of `h`.
pub fn decomposition_family_blowup(h: &Graph, p: usize) -> Result<GraphFamily> {
    if p < 3 {
        return Err(Error::Hypothesis(format!(
            "blow-up fast path needs p >= 3, got {p}"
        )));
    }
    let chi = chromatic_number(h)?;
    if chi > p - 1 {
        return Err(Error::Hypothesis(format!(
            "blow-up fast path needs χ(h) <= p - 1, got χ = {chi} with p = {p}"
        )));
    }
    split_family(h, DEFAULT_SPLIT_CAP)
}
