//! Exact graph invariants.
//!
//! Chromatic and independence numbers are exponential-time; they refuse
//! graphs above a vertex cap instead of falling back to a heuristic.

use petgraph::algo::maximum_matching;
use petgraph::graph::UnGraph;
use serde::Serialize;

use crate::bits::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_EXACT_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Invariants {
    /// `None` when the graph exceeds the exact-computation cap.
    pub chromatic_number: Option<usize>,
    pub independence_number: Option<usize>,
    pub matching_number: usize,
    pub degree_sequence: Vec<usize>,
    pub is_connected: bool,
    pub is_tree: bool,
    pub is_linear_forest: bool,
}

/// All invariants; the exponential ones only when `g.n() <= cap`.
pub fn invariants(g: &Graph, cap: usize) -> Invariants {
    let exact = g.n() <= cap;
    Invariants {
        chromatic_number: exact.then(|| chromatic_number_uncapped(g)),
        independence_number: exact.then(|| independence_number_uncapped(g)),
        matching_number: matching_number(g),
        degree_sequence: g.degree_sequence(),
        is_connected: is_connected(g),
        is_tree: is_tree(g),
        is_linear_forest: is_linear_forest(g),
    }
}

fn check_cap(g: &Graph, cap: usize) -> Result<()> {
    if g.n() > cap {
        return Err(Error::CapExceeded {
            what: "exact invariant vertex",
            value: g.n(),
            cap,
        });
    }
    Ok(())
}

pub fn chromatic_number(g: &Graph) -> Result<usize> {
    chromatic_number_capped(g, DEFAULT_EXACT_CAP)
}

pub fn chromatic_number_capped(g: &Graph, cap: usize) -> Result<usize> {
    check_cap(g, cap)?;
    Ok(chromatic_number_uncapped(g))
}

pub fn independence_number(g: &Graph) -> Result<usize> {
    independence_number_capped(g, DEFAULT_EXACT_CAP)
}

pub fn independence_number_capped(g: &Graph, cap: usize) -> Result<usize> {
    check_cap(g, cap)?;
    Ok(independence_number_uncapped(g))
}

pub fn clique_number(g: &Graph) -> Result<usize> {
    check_cap(g, DEFAULT_EXACT_CAP)?;
    Ok(max_clique(g))
}

fn independence_number_uncapped(g: &Graph) -> usize {
    max_clique(&g.complement())
}

/// Maximum clique by branch and bound with a greedy-coloring bound.
fn max_clique(g: &Graph) -> usize {
    fn expand(g: &Graph, size: usize, cand: VertexSet, best: &mut usize) {
        if cand.is_empty() {
            *best = (*best).max(size);
            return;
        }
        // greedy color classes give an upper bound per vertex
        let mut order: Vec<(usize, usize)> = Vec::new();
        let mut uncolored = cand.clone();
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut avail = uncolored.clone();
            while let Some(v) = avail.iter().next() {
                avail.remove(v);
                avail.difference_with(g.row(v));
                uncolored.remove(v);
                order.push((v, color));
            }
        }
        let mut cand = cand;
        for &(v, c) in order.iter().rev() {
            if size + c <= *best {
                return;
            }
            let mut next = cand.clone();
            next.intersect_with(g.row(v));
            expand(g, size + 1, next, best);
            cand.remove(v);
        }
    }
    let mut best = 0;
    expand(g, 0, VertexSet::full(g.n()), &mut best);
    best
}

/// Exact chromatic number by DSATUR-ordered branch and bound.
fn chromatic_number_uncapped(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    if g.edge_count() == 0 {
        return 1;
    }
    let lower = max_clique(g);
    let mut st = Coloring {
        g,
        color: vec![usize::MAX; n],
        nbr_count: vec![vec![0; n + 1]; n],
        sat: vec![0; n],
        best: n + 1,
        lower,
    };
    st.search(0, 0);
    st.best
}

struct Coloring<'a> {
    g: &'a Graph,
    color: Vec<usize>,
    nbr_count: Vec<Vec<u32>>,
    sat: Vec<usize>,
    best: usize,
    lower: usize,
}

impl Coloring<'_> {
    fn search(&mut self, colored: usize, used: usize) {
        if self.best <= self.lower {
            return;
        }
        let n = self.g.n();
        if colored == n {
            self.best = self.best.min(used);
            return;
        }
        let v = (0..n)
            .filter(|&v| self.color[v] == usize::MAX)
            .max_by_key(|&v| (self.sat[v], self.g.degree(v), std::cmp::Reverse(v)))
            .expect("uncolored vertex remains");
        let limit = (used + 1).min(self.best - 1);
        for c in 0..limit {
            if self.nbr_count[v][c] > 0 {
                continue;
            }
            self.assign(v, c);
            self.search(colored + 1, used.max(c + 1));
            self.unassign(v, c);
            if self.best <= self.lower {
                return;
            }
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        for w in self.g.neighbors(v) {
            if self.nbr_count[w][c] == 0 {
                self.sat[w] += 1;
            }
            self.nbr_count[w][c] += 1;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.color[v] = usize::MAX;
        for w in self.g.neighbors(v) {
            self.nbr_count[w][c] -= 1;
            if self.nbr_count[w][c] == 0 {
                self.sat[w] -= 1;
            }
        }
    }
}

/// Whether `g` admits a proper coloring with `k` colors.
pub fn is_k_colorable(g: &Graph, k: usize) -> bool {
    if g.n() == 0 {
        return true;
    }
    if k == 0 {
        return false;
    }
    if g.edge_count() == 0 {
        return true;
    }
    if k == 1 {
        return false;
    }
    if k == 2 {
        return bipartition(g).is_some();
    }
    chromatic_number_uncapped(g) <= k
}

/// Two-coloring `(side0, side1)` with every component's smallest vertex on side 0.
pub fn bipartition(g: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g.n();
    let mut side = vec![u8::MAX; n];
    for s in 0..n {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for v in g.neighbors(u) {
                if side[v] == u8::MAX {
                    side[v] = 1 - side[u];
                    stack.push(v);
                } else if side[v] == side[u] {
                    return None;
                }
            }
        }
    }
    let a = (0..n).filter(|&v| side[v] == 0).collect();
    let b = (0..n).filter(|&v| side[v] == 1).collect();
    Some((a, b))
}

pub fn matching_number(g: &Graph) -> usize {
    let mut pg: UnGraph<(), ()> = UnGraph::with_capacity(g.n(), g.edge_count());
    let nodes: Vec<_> = (0..g.n()).map(|_| pg.add_node(())).collect();
    for (u, v) in g.edges() {
        pg.add_edge(nodes[u], nodes[v], ());
    }
    maximum_matching(&pg).len()
}

pub fn is_connected(g: &Graph) -> bool {
    g.components().len() <= 1
}

pub fn is_forest(g: &Graph) -> bool {
    g.edge_count() + g.components().len() == g.n()
}

pub fn is_tree(g: &Graph) -> bool {
    g.n() >= 1 && is_connected(g) && g.edge_count() == g.n() - 1
}

/// Forest whose components are paths; isolated vertices count as paths.
pub fn is_linear_forest(g: &Graph) -> bool {
    is_forest(g) && g.max_degree() <= 2
}
