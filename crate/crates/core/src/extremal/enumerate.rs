use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use super::{
    degenerate, pool, Clock, ExtremalResult, Forbidden, SearchBudget, SearchStats, SolverMode,
};
use crate::canon::{canonical_form, CanonicalForm};
use crate::error::Result;
use crate::family::GraphFamily;
use crate::graph::Graph;

/// Generates the 𝓕-free graphs on `n` vertices level by level (edge count),
/// one representative per isomorphism class. Every free graph with `e + 1`
/// edges is a free graph with `e` edges plus one edge, so the last
/// non-empty level holds exactly the extremal graphs.
pub fn ex_enumerate(
    n: usize,
    family: &GraphFamily,
    budget: &SearchBudget,
) -> Result<ExtremalResult> {
    if let Some(r) = degenerate(n, family, SolverMode::Enumerate)? {
        return Ok(r);
    }
    let forbidden = Forbidden::new(family)?;
    let clock = Clock::new(budget.max_seconds);
    let nodes = AtomicU64::new(0);
    let containment_prunes = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let mut iso_rejections = 0u64;

    let mut level: Vec<Graph> = vec![Graph::empty(n)?];
    let mut complete = true;
    let workers = pool(budget.workers)?;
    loop {
        let children: Vec<Result<Vec<(CanonicalForm, Graph)>>> = workers.install(|| {
            level
                .par_iter()
                .map(|g| {
                    let mut out = Vec::new();
                    for u in 0..n {
                        for v in u + 1..n {
                            if g.has_edge(u, v) {
                                continue;
                            }
                            if stop.load(Ordering::Relaxed) {
                                return Ok(out);
                            }
                            let count = nodes.fetch_add(1, Ordering::Relaxed) + 1;
                            if count > budget.max_nodes
                                || (count.is_multiple_of(1024) && clock.expired())
                            {
                                stop.store(true, Ordering::Relaxed);
                                return Ok(out);
                            }
                            let mut h = g.clone();
                            h.add_edge(u, v);
                            if forbidden.hit_through(&h, u, v)? {
                                containment_prunes.fetch_add(1, Ordering::Relaxed);
                                continue;
                            }
                            out.push((canonical_form(&h), h));
                        }
                    }
                    Ok(out)
                })
                .collect()
        });
        let mut next: BTreeMap<CanonicalForm, Graph> = BTreeMap::new();
        for batch in children {
            for (cf, g) in batch? {
                match next.entry(cf) {
                    Entry::Occupied(_) => iso_rejections += 1,
                    Entry::Vacant(e) => {
                        e.insert(g);
                    }
                }
            }
        }
        if stop.load(Ordering::Relaxed) {
            complete = false;
            if !next.is_empty() {
                level = next.into_values().collect();
            }
            break;
        }
        if next.is_empty() {
            break;
        }
        level = next.into_values().collect();
    }

    let max_edges = level[0].edge_count();
    let mut extremal: GraphFamily = level.iter().collect();
    let witness_overflow = extremal.len() > budget.witness_cap;
    extremal.truncate(budget.witness_cap);
    Ok(ExtremalResult {
        n,
        family_key: family.family_key(),
        max_edges,
        extremal,
        witness_overflow,
        complete,
        mode: SolverMode::Enumerate,
        stats: SearchStats {
            nodes_expanded: nodes.load(Ordering::Relaxed),
            prunes_by_bound: 0,
            prunes_by_containment: containment_prunes.load(Ordering::Relaxed),
            iso_rejections,
            elapsed_ms: clock.elapsed_ms(),
        },
    })
}
