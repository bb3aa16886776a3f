//! Non-induced subgraph containment.
//!
//! Backtracking over pattern vertices in a connectivity-first order. Host
//! candidates for a pattern vertex are the common neighbours of the images
//! of its already-placed neighbours. Host twins (vertices with equal open
//! or closed neighbourhoods) are interchangeable while unused, so only one
//! unused member of a twin class is tried per search node.

use std::collections::HashMap;

use serde::Serialize;

use crate::bits::{self, VertexSet};
use crate::constructions::complete_multipartite;
use crate::error::{Error, Result};
use crate::family::GraphFamily;
use crate::graph::Graph;

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Injective map pattern vertex -> host vertex preserving every pattern edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ContainmentWitness {
    pub map: Vec<usize>,
}

impl ContainmentWitness {
    /// Re-checks injectivity and edge preservation from scratch.
    pub fn validate(&self, host: &Graph, pattern: &Graph) -> bool {
        if self.map.len() != pattern.n() {
            return false;
        }
        let mut seen = vec![false; host.n()];
        for &v in &self.map {
            if v >= host.n() || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        pattern
            .edges()
            .all(|(a, b)| host.has_edge(self.map[a], self.map[b]))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ContainmentOptions {
    /// Maximum number of search-tree nodes before giving up.
    pub node_budget: u64,
    /// Prune with host twin classes.
    pub twin_pruning: bool,
}

impl Default for ContainmentOptions {
    fn default() -> Self {
        ContainmentOptions {
            node_budget: DEFAULT_NODE_BUDGET,
            twin_pruning: true,
        }
    }
}

/// Searches for `pattern` as a (not necessarily induced) subgraph of `host`.
pub fn contains(host: &Graph, pattern: &Graph) -> Result<Option<ContainmentWitness>> {
    contains_with(host, pattern, &ContainmentOptions::default())
}

pub fn contains_with(
    host: &Graph,
    pattern: &Graph,
    opts: &ContainmentOptions,
) -> Result<Option<ContainmentWitness>> {
    if quick_reject(host, pattern) {
        return Ok(None);
    }
    let prep = HostPrep::new(host, opts.twin_pruning);
    let mut search = Matcher::new(host, pattern, &prep, opts.node_budget, &[]);
    search.run()
}

/// Like [`contains`], but only looks for embeddings that use the host edge
/// `(u, v)`. If `host - uv` is pattern-free, this decides containment in `host`.
pub fn contains_through_edge(
    host: &Graph,
    pattern: &Graph,
    u: usize,
    v: usize,
    opts: &ContainmentOptions,
) -> Result<Option<ContainmentWitness>> {
    let reps = oriented_edge_representatives(pattern);
    contains_through_edge_with_reps(host, pattern, &reps, u, v, opts)
}

/// Variant of [`contains_through_edge`] with precomputed pattern edge
/// representatives (see [`oriented_edge_representatives`]).
pub fn contains_through_edge_with_reps(
    host: &Graph,
    pattern: &Graph,
    reps: &[(usize, usize)],
    u: usize,
    v: usize,
    opts: &ContainmentOptions,
) -> Result<Option<ContainmentWitness>> {
    if !host.has_edge(u, v) || quick_reject(host, pattern) {
        return Ok(None);
    }
    let prep = HostPrep::new(host, opts.twin_pruning);
    let mut spent = 0;
    for &(a, b) in reps {
        let pins = [(a, u), (b, v)];
        let mut search = Matcher::new(
            host,
            pattern,
            &prep,
            opts.node_budget.saturating_sub(spent),
            &pins,
        );
        let r = search.run();
        spent += search.nodes;
        if let Some(w) = r? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// One oriented pattern edge `(a, b)` per orbit of the automorphism group
/// acting on ordered edges.
pub fn oriented_edge_representatives(pattern: &Graph) -> Vec<(usize, usize)> {
    let lab = crate::canon::canonical_labeling(pattern, None);
    let mut seen: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
    let mut reps = Vec::new();
    for (x, y) in pattern.edges() {
        for (a, b) in [(x, y), (y, x)] {
            if seen.contains(&(a, b)) {
                continue;
            }
            reps.push((a, b));
            // orbit closure under the generators
            let mut stack = vec![(a, b)];
            seen.insert((a, b));
            while let Some((c, d)) = stack.pop() {
                for g in &lab.generators {
                    let img = (g[c], g[d]);
                    if seen.insert(img) {
                        stack.push(img);
                    }
                }
            }
        }
    }
    reps
}

fn quick_reject(host: &Graph, pattern: &Graph) -> bool {
    if pattern.n() > host.n() || pattern.edge_count() > host.edge_count() {
        return true;
    }
    let hd = host.degree_sequence();
    let pd = pattern.degree_sequence();
    pd.iter().zip(&hd).any(|(p, h)| p > h)
}

struct HostPrep {
    /// Twin class id per vertex; singleton classes when pruning is off.
    twin_class: Vec<usize>,
    degree: Vec<usize>,
}

impl HostPrep {
    fn new(host: &Graph, twin_pruning: bool) -> Self {
        let n = host.n();
        let degree = (0..n).map(|v| host.degree(v)).collect();
        if !twin_pruning {
            return HostPrep {
                twin_class: (0..n).collect(),
                degree,
            };
        }
        let mut open: HashMap<&[u64], usize> = HashMap::new();
        let mut closed: HashMap<Vec<u64>, usize> = HashMap::new();
        let mut twin_class = vec![usize::MAX; n];
        let mut classes = 0;
        for v in 0..n {
            if let Some(&c) = open.get(host.row(v)) {
                twin_class[v] = c;
                continue;
            }
            let mut row = host.row(v).to_vec();
            bits::set(&mut row, v);
            if let Some(&c) = closed.get(&row) {
                twin_class[v] = c;
                continue;
            }
            twin_class[v] = classes;
            open.insert(host.row(v), classes);
            closed.insert(row, classes);
            classes += 1;
        }
        HostPrep { twin_class, degree }
    }
}

struct Matcher<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    prep: &'a HostPrep,
    /// Pattern vertices in placement order.
    order: Vec<usize>,
    /// For each position, earlier positions adjacent in the pattern.
    back: Vec<Vec<usize>>,
    map: Vec<usize>,
    used: VertexSet,
    pins: Vec<usize>,
    budget: u64,
    nodes: u64,
}

impl<'a> Matcher<'a> {
    fn new(
        host: &'a Graph,
        pattern: &'a Graph,
        prep: &'a HostPrep,
        budget: u64,
        pins: &[(usize, usize)],
    ) -> Self {
        let k = pattern.n();
        let mut placed = vec![false; k];
        let mut order = Vec::with_capacity(k);
        let mut pin_target = vec![usize::MAX; k];
        for &(a, h) in pins {
            placed[a] = true;
            order.push(a);
            pin_target[a] = h;
        }
        let mut attached = vec![0usize; k];
        for &a in &order {
            for w in pattern.neighbors(a) {
                attached[w] += 1;
            }
        }
        while order.len() < k {
            let next = (0..k)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| (attached[v], pattern.degree(v), std::cmp::Reverse(v)))
                .expect("unplaced vertex");
            placed[next] = true;
            order.push(next);
            for w in pattern.neighbors(next) {
                attached[w] += 1;
            }
        }
        let mut pos = vec![0; k];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                pattern
                    .neighbors(v)
                    .filter(|&w| pos[w] < i)
                    .map(|w| pos[w])
                    .collect()
            })
            .collect();
        let pins = order.iter().map(|&v| pin_target[v]).collect();
        Matcher {
            host,
            pattern,
            prep,
            order,
            back,
            map: vec![usize::MAX; k],
            used: VertexSet::empty(host.n()),
            pins,
            budget,
            nodes: 0,
        }
    }

    fn run(&mut self) -> Result<Option<ContainmentWitness>> {
        // map is indexed by position during the search
        if self.extend(0)? {
            let mut out = vec![0; self.pattern.n()];
            for (i, &v) in self.order.iter().enumerate() {
                out[v] = self.map[i];
            }
            Ok(Some(ContainmentWitness { map: out }))
        } else {
            Ok(None)
        }
    }

    fn extend(&mut self, i: usize) -> Result<bool> {
        if i == self.order.len() {
            return Ok(true);
        }
        let pv = self.order[i];
        let need = self.pattern.degree(pv);
        let mut cand = match self.back[i].first() {
            Some(&j) => VertexSet::from_words(self.host.row(self.map[j])),
            None => VertexSet::full(self.host.n()),
        };
        for &j in self.back[i].iter().skip(1) {
            cand.intersect_with(self.host.row(self.map[j]));
        }
        cand.difference_with(self.used.words());
        if self.pins[i] != usize::MAX {
            let t = self.pins[i];
            let ok = cand.contains(t);
            cand = VertexSet::empty(self.host.n());
            if ok {
                cand.insert(t);
            }
        }

        let mut tried: Vec<usize> = Vec::new();
        for h in cand.iter() {
            if self.prep.degree[h] < need {
                continue;
            }
            let c = self.prep.twin_class[h];
            if tried.contains(&c) {
                continue;
            }
            tried.push(c);
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded { nodes: self.nodes });
            }
            self.map[i] = h;
            self.used.insert(h);
            let found = self.extend(i + 1)?;
            self.used.remove(h);
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Host `(M ∪ I_t) ⊗ K_{p-1}(t,…,t)`.
#[derive(Clone, Debug)]
pub struct ProductHostSpec {
    pub m_part: Graph,
    pub p: usize,
    pub t: usize,
}

impl ProductHostSpec {
    /// Labels: `M` first, then the `t` isolated vertices, then the `p-1` classes.
    pub fn build(&self) -> Result<Graph> {
        if self.p < 2 || self.t < 1 {
            return Err(Error::param(format!(
                "product host needs p >= 2 and t >= 1, got p={}, t={}",
                self.p, self.t
            )));
        }
        let m_prime = Graph::disjoint_union(&self.m_part, &Graph::empty(self.t)?)?;
        let classes = complete_multipartite(&vec![self.t; self.p - 1])?;
        Graph::join(&m_prime, &classes)
    }

    pub fn order(&self) -> usize {
        self.m_part.n() + self.t * self.p
    }
}

/// Whether `pattern ⊆ (M ∪ I_t) ⊗ K_{p-1}(t,…,t)`.
pub fn contains_in_product(
    m: &Graph,
    p: usize,
    t: usize,
    pattern: &Graph,
    opts: &ContainmentOptions,
) -> Result<Option<ContainmentWitness>> {
    let host = ProductHostSpec {
        m_part: m.clone(),
        p,
        t,
    }
    .build()?;
    contains_with(&host, pattern, opts)
}

/// Result of a freeness test.
#[derive(Clone, Debug)]
pub enum Freeness {
    Free,
    /// The first member (in family order) found inside the host.
    Contains {
        member: Graph,
        witness: ContainmentWitness,
    },
}

impl Freeness {
    pub fn is_free(&self) -> bool {
        matches!(self, Freeness::Free)
    }
}

pub fn is_family_free(
    g: &Graph,
    family: &GraphFamily,
    opts: &ContainmentOptions,
) -> Result<Freeness> {
    for member in family.iter() {
        if let Some(witness) = contains_with(g, member, opts)? {
            return Ok(Freeness::Contains {
                member: member.clone(),
                witness,
            });
        }
    }
    Ok(Freeness::Free)
}
