use std::collections::{BTreeSet, HashSet};
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;

use super::{
    degenerate, pool, Clock, ExtremalResult, Forbidden, SearchBudget, SearchStats, SolverMode,
};
use crate::canon::{canonical_form, canonical_form_colored, CanonicalForm};
use crate::error::{Error, Result};
use crate::family::GraphFamily;
use crate::graph::Graph;

/// Decides vertex pairs in lexicographic order, including before excluding.
///
/// Whenever a row of pairs is finished (all pairs touching vertices `< i`
/// decided) the state is keyed by its canonical form with vertices `< i` and
/// `>= i` coloured apart; the undecided pairs are exactly those inside the
/// second colour class, so equal keys have isomorphic completion sets and
/// only the first visit is explored.
///
/// The subtrees below a shallow row are explored in parallel against a
/// shared incumbent.
pub fn ex_branch_bound(
    n: usize,
    family: &GraphFamily,
    budget: &SearchBudget,
) -> Result<ExtremalResult> {
    if let Some(r) = degenerate(n, family, SolverMode::BranchBound)? {
        return Ok(r);
    }
    let forbidden = Forbidden::new(family)?;
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    // boundary[idx] = Some(i) when pairs[..idx] are exactly the pairs meeting 0..i
    let mut boundary = vec![None; pairs.len() + 1];
    let mut idx = 0;
    for i in 0..n {
        boundary[idx] = Some(i);
        idx += n - i - 1;
    }
    let shared = Shared {
        n,
        pairs,
        boundary,
        forbidden,
        all_extremal: budget.all_extremal,
        witness_cap: budget.witness_cap,
        max_nodes: budget.max_nodes,
        clock: Clock::new(budget.max_seconds),
        incumbent: AtomicUsize::new(0),
        witnesses: Mutex::new(Witnesses::default()),
        memo: Mutex::new(HashSet::new()),
        nodes: AtomicU64::new(0),
        bound_prunes: AtomicU64::new(0),
        containment_prunes: AtomicU64::new(0),
        iso_rejections: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        error: Mutex::new(None),
    };

    let split_row = if n >= 8 { 3 } else { 2 };
    let mut frontier = Vec::new();
    {
        let mut w = Worker::new(&shared, Some(split_row));
        w.dfs(0, 0, Some(&mut frontier));
    }
    let workers = pool(budget.workers)?;
    workers.install(|| {
        frontier.into_par_iter().for_each(|(g, edges, idx)| {
            let mut w = Worker::new(&shared, None);
            w.g = g;
            w.branch(idx, edges, None);
        })
    });

    if let Some(e) = shared.error.lock().expect("error lock").take() {
        return Err(e);
    }
    let stopped = shared.stop.load(Ordering::Relaxed);
    let wit = shared.witnesses.into_inner().expect("witness lock");
    let mut extremal = GraphFamily::new();
    for cf in wit.forms {
        extremal.insert_canonical(cf);
    }
    Ok(ExtremalResult {
        n,
        family_key: family.family_key(),
        max_edges: wit.best,
        extremal,
        witness_overflow: wit.overflow,
        complete: !stopped,
        mode: SolverMode::BranchBound,
        stats: SearchStats {
            nodes_expanded: shared.nodes.load(Ordering::Relaxed),
            prunes_by_bound: shared.bound_prunes.load(Ordering::Relaxed),
            prunes_by_containment: shared.containment_prunes.load(Ordering::Relaxed),
            iso_rejections: shared.iso_rejections.load(Ordering::Relaxed),
            elapsed_ms: shared.clock.elapsed_ms(),
        },
    })
}

#[derive(Default)]
struct Witnesses {
    best: usize,
    forms: BTreeSet<CanonicalForm>,
    overflow: bool,
}

struct Shared {
    n: usize,
    pairs: Vec<(usize, usize)>,
    boundary: Vec<Option<usize>>,
    forbidden: Forbidden,
    all_extremal: bool,
    witness_cap: usize,
    max_nodes: u64,
    clock: Clock,
    /// Best edge count seen plus one; zero before the first leaf.
    incumbent: AtomicUsize,
    witnesses: Mutex<Witnesses>,
    memo: Mutex<HashSet<(usize, CanonicalForm)>>,
    nodes: AtomicU64,
    bound_prunes: AtomicU64,
    containment_prunes: AtomicU64,
    iso_rejections: AtomicU64,
    stop: AtomicBool,
    error: Mutex<Option<Error>>,
}

type Frontier = Vec<(Graph, usize, usize)>;

struct Worker<'a> {
    s: &'a Shared,
    g: Graph,
    split_row: Option<usize>,
    local_nodes: u64,
}

impl<'a> Worker<'a> {
    fn new(s: &'a Shared, split_row: Option<usize>) -> Self {
        Worker {
            s,
            g: Graph::empty(s.n).expect("n within limits"),
            split_row,
            local_nodes: 0,
        }
    }

    fn halt(&self) -> bool {
        self.s.stop.load(Ordering::Relaxed)
    }

    fn count_node(&mut self) {
        let total = self.s.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        self.local_nodes += 1;
        if total > self.s.max_nodes
            || (self.local_nodes.is_multiple_of(4096) && self.s.clock.expired())
        {
            self.s.stop.store(true, Ordering::Relaxed);
        }
    }

    fn pruned_by_bound(&self, bound: usize) -> bool {
        let inc = self.s.incumbent.load(Ordering::Relaxed);
        if self.s.all_extremal {
            bound + 1 < inc
        } else {
            bound < inc
        }
    }

    fn dfs(&mut self, idx: usize, edges: usize, frontier: Option<&mut Frontier>) {
        if self.halt() {
            return;
        }
        self.count_node();
        let total = self.s.pairs.len();
        if self.pruned_by_bound(edges + total - idx) {
            self.s.bound_prunes.fetch_add(1, Ordering::Relaxed);
            return;
        }
        if idx == total {
            self.record_leaf(edges);
            return;
        }
        if let Some(i) = self.s.boundary[idx] {
            if i > 0 {
                if !self.first_visit(i) {
                    self.s.iso_rejections.fetch_add(1, Ordering::Relaxed);
                    return;
                }
                if self.split_row == Some(i) {
                    if let Some(f) = frontier {
                        f.push((self.g.clone(), edges, idx));
                    }
                    return;
                }
            }
        }
        self.branch(idx, edges, frontier);
    }

    /// Decides pair `idx`, edge first.
    fn branch(&mut self, idx: usize, edges: usize, mut frontier: Option<&mut Frontier>) {
        let (u, v) = self.s.pairs[idx];
        self.g.add_edge(u, v);
        match self.s.forbidden.hit_through(&self.g, u, v) {
            Ok(true) => {
                self.s.containment_prunes.fetch_add(1, Ordering::Relaxed);
            }
            Ok(false) => self.dfs(idx + 1, edges + 1, frontier.as_deref_mut()),
            Err(e) => {
                self.s.error.lock().expect("error lock").get_or_insert(e);
                self.s.stop.store(true, Ordering::Relaxed);
            }
        }
        self.g.remove_edge(u, v);
        self.dfs(idx + 1, edges, frontier);
    }

    fn first_visit(&self, row: usize) -> bool {
        let colors: Vec<u32> = (0..self.s.n).map(|v| u32::from(v >= row)).collect();
        let (_, cf) = canonical_form_colored(&self.g, &colors);
        self.s.memo.lock().expect("memo lock").insert((row, cf))
    }

    fn record_leaf(&self, edges: usize) {
        let cf = canonical_form(&self.g);
        let mut w = self.s.witnesses.lock().expect("witness lock");
        let inc = self.s.incumbent.load(Ordering::Relaxed);
        if inc > 0 && edges < w.best {
            return;
        }
        if inc == 0 || edges > w.best {
            w.best = edges;
            w.forms.clear();
            w.overflow = false;
        }
        w.forms.insert(cf);
        if w.forms.len() > self.s.witness_cap {
            w.forms.pop_last();
            w.overflow = true;
        }
        self.s.incumbent.fetch_max(edges + 1, Ordering::Relaxed);
    }
}
