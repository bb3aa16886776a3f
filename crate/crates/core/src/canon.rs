//! Canonical labeling by partition refinement and individualization.
//!
//! The search tree is the usual one: refine an ordered partition to an
//! equitable one, individualize each vertex of the first non-singleton cell,
//! recurse. Every leaf is a discrete partition, hence a relabeling; the
//! relabeling whose graph6 bit string is smallest is canonical. Leaves that
//! reproduce the first or the best certificate yield automorphisms, which
//! prune siblings in the same orbit and allow backjumping.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::graph6;

/// Canonical graph6 string; equal for two graphs iff they are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    /// The canonically relabeled graph.
    pub fn graph(&self) -> Graph {
        graph6::decode(&self.0).expect("canonical strings are valid graph6")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Output of the labeling search.
#[derive(Clone, Debug)]
pub struct Labeling {
    /// `order[i]` is the vertex that receives canonical label `i`.
    pub order: Vec<usize>,
    /// Automorphism generators found during the search, as images `gen[v]`.
    pub generators: Vec<Vec<usize>>,
    /// Number of leaves visited.
    pub leaves: u64,
}

impl Labeling {
    /// `perm[v]` = canonical label of `v`.
    pub fn relabeling(&self) -> Vec<usize> {
        let mut perm = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            perm[v] = i;
        }
        perm
    }

    /// Orbits of the group generated by the found generators, each sorted,
    /// listed by smallest element. `orbit_of[v]` indexes into the list.
    pub fn orbits(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let n = self.order.len();
        let mut uf = UnionFind::new(n);
        for g in &self.generators {
            for (v, &w) in g.iter().enumerate() {
                uf.union(v, w);
            }
        }
        let mut index = vec![usize::MAX; n];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        let mut orbit_of = vec![0; n];
        for v in 0..n {
            let r = uf.find(v);
            if index[r] == usize::MAX {
                index[r] = orbits.len();
                orbits.push(Vec::new());
            }
            orbits[index[r]].push(v);
            orbit_of[v] = index[r];
        }
        (orbits, orbit_of)
    }
}

/// Canonical form of an uncolored graph.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let lab = canonical_labeling(g, None);
    CanonicalForm(graph6::encode(&g.permuted(&lab.relabeling())))
}

/// Canonical form of `g` with a vertex coloring; isomorphisms must map
/// each color class onto the same class. Color values are compared as
/// ordered labels, not as an abstract partition.
pub fn canonical_form_colored(g: &Graph, colors: &[u32]) -> (Vec<usize>, CanonicalForm) {
    let lab = canonical_labeling(g, Some(colors));
    let mut sizes: Vec<(u32, usize)> = Vec::new();
    let mut sorted: Vec<u32> = colors.to_vec();
    sorted.sort_unstable();
    for c in sorted {
        match sizes.last_mut() {
            Some((last, k)) if *last == c => *k += 1,
            _ => sizes.push((c, 1)),
        }
    }
    (
        sizes.into_iter().map(|(_, k)| k).collect(),
        CanonicalForm(graph6::encode(&g.permuted(&lab.relabeling()))),
    )
}

/// Runs the full labeling search.
pub fn canonical_labeling(g: &Graph, colors: Option<&[u32]>) -> Labeling {
    let n = g.n();
    if n == 0 {
        return Labeling {
            order: Vec::new(),
            generators: Vec::new(),
            leaves: 1,
        };
    }
    let mut part = match colors {
        Some(c) => {
            assert_eq!(c.len(), n, "one color per vertex");
            Partition::colored(c)
        }
        None => Partition::unit(n),
    };
    let all: Vec<usize> = part.cell_starts();
    part.refine(g, all);

    let mut search = Search {
        g,
        first: None,
        best: None,
        generators: Vec::new(),
        leaves: 0,
    };
    let mut path = Vec::new();
    search.descend(part, &mut path);
    let best = search.best.expect("at least one leaf");
    Labeling {
        order: best.order,
        generators: search.generators,
        leaves: search.leaves,
    }
}

struct Leaf {
    order: Vec<usize>,
    cert: Vec<u64>,
    path: Vec<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
    leaves: u64,
}

impl Search<'_> {
    /// Returns `Some(level)` to unwind to the node at depth `level`.
    fn descend(&mut self, part: Partition, path: &mut Vec<usize>) -> Option<usize> {
        let depth = path.len();
        let Some((start, end)) = part.first_nontrivial() else {
            return self.leaf(&part, path);
        };
        let mut cell: Vec<usize> = part.order[start..end].to_vec();
        cell.sort_unstable();

        let mut explored: Vec<usize> = Vec::new();
        for &w in &cell {
            if !explored.is_empty() && self.same_orbit_as_explored(path, &explored, w) {
                continue;
            }
            explored.push(w);
            let mut child = part.clone();
            child.individualize(self.g, w);
            path.push(w);
            let jump = self.descend(child, path);
            path.pop();
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    fn same_orbit_as_explored(&self, path: &[usize], explored: &[usize], w: usize) -> bool {
        let n = self.g.n();
        let mut uf = UnionFind::new(n);
        let mut any = false;
        for gen in &self.generators {
            if path.iter().all(|&v| gen[v] == v) {
                any = true;
                for (v, &x) in gen.iter().enumerate() {
                    uf.union(v, x);
                }
            }
        }
        if !any {
            return false;
        }
        let rw = uf.find(w);
        explored.iter().any(|&u| uf.find(u) == rw)
    }

    fn leaf(&mut self, part: &Partition, path: &[usize]) -> Option<usize> {
        self.leaves += 1;
        let order = part.order.clone();
        let cert = certificate(self.g, &order);
        let Some(first) = &self.first else {
            let leaf = Leaf {
                order,
                cert,
                path: path.to_vec(),
            };
            self.first = Some(Leaf {
                order: leaf.order.clone(),
                cert: leaf.cert.clone(),
                path: leaf.path.clone(),
            });
            self.best = Some(leaf);
            return None;
        };
        if cert == first.cert {
            let gen = automorphism(&first.order, &order);
            let level = common_prefix(&first.path, path);
            self.generators.push(gen);
            return Some(level);
        }
        let best = self.best.as_ref().expect("set with first");
        match cert.cmp(&best.cert) {
            std::cmp::Ordering::Equal => {
                let gen = automorphism(&best.order, &order);
                let level = common_prefix(&best.path, path);
                self.generators.push(gen);
                Some(level)
            }
            std::cmp::Ordering::Less => {
                self.best = Some(Leaf {
                    order,
                    cert,
                    path: path.to_vec(),
                });
                None
            }
            std::cmp::Ordering::Greater => None,
        }
    }
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Maps `from[i]` to `to[i]` for every position.
fn automorphism(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut gen = vec![0; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        gen[a] = b;
    }
    gen
}

/// graph6 bit string of the graph relabeled by `order`, packed MSB-first
/// so that word-wise comparison is lexicographic comparison of the bits.
fn certificate(g: &Graph, order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let nbits = n * n.saturating_sub(1) / 2;
    let mut out = vec![0u64; nbits.div_ceil(64)];
    let mut k = 0;
    for j in 1..n {
        let row = g.row(order[j]);
        for &vi in &order[..j] {
            if crate::bits::test(row, vi) {
                out[k >> 6] |= 1 << (63 - (k & 63));
            }
            k += 1;
        }
    }
    out
}

/// Ordered partition. Cells are identified by their start position.
#[derive(Clone)]
struct Partition {
    order: Vec<usize>,
    /// `cell_of[v]` = start position of the cell containing `v`.
    cell_of: Vec<usize>,
    /// `cell_end[s]` = one past the last position of the cell starting at `s`.
    cell_end: Vec<usize>,
    pos: Vec<usize>,
}

impl Partition {
    fn unit(n: usize) -> Self {
        let mut cell_end = vec![0; n];
        cell_end[0] = n;
        Partition {
            order: (0..n).collect(),
            cell_of: vec![0; n],
            cell_end,
            pos: (0..n).collect(),
        }
    }

    fn colored(colors: &[u32]) -> Self {
        let n = colors.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (colors[v], v));
        let mut cell_of = vec![0; n];
        let mut cell_end = vec![0; n];
        let mut pos = vec![0; n];
        let mut s = 0;
        for i in 0..n {
            if i > 0 && colors[order[i]] != colors[order[i - 1]] {
                cell_end[s] = i;
                s = i;
            }
            cell_of[order[i]] = s;
            pos[order[i]] = i;
        }
        cell_end[s] = n;
        Partition {
            order,
            cell_of,
            cell_end,
            pos,
        }
    }

    fn cell_starts(&self) -> Vec<usize> {
        let mut v = Vec::new();
        let mut s = 0;
        while s < self.order.len() {
            v.push(s);
            s = self.cell_end[s];
        }
        v
    }

    fn first_nontrivial(&self) -> Option<(usize, usize)> {
        let mut s = 0;
        while s < self.order.len() {
            let e = self.cell_end[s];
            if e - s > 1 {
                return Some((s, e));
            }
            s = e;
        }
        None
    }

    fn individualize(&mut self, g: &Graph, v: usize) {
        let s = self.cell_of[v];
        let e = self.cell_end[s];
        let p = self.pos[v];
        let u = self.order[s];
        self.order.swap(s, p);
        self.pos[v] = s;
        self.pos[u] = p;
        self.cell_end[s] = s + 1;
        self.cell_end[s + 1] = e;
        for i in s + 1..e {
            self.cell_of[self.order[i]] = s + 1;
        }
        self.refine(g, vec![s]);
    }

    /// Refines to the coarsest equitable partition finer than the current one.
    fn refine(&mut self, g: &Graph, initial: Vec<usize>) {
        let n = self.order.len();
        let mut queued = vec![false; n];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for s in initial {
            queued[s] = true;
            queue.push_back(s);
        }
        let mut count = vec![0usize; n];
        let mut touched_cells: Vec<usize> = Vec::new();
        let mut marked = vec![false; n];

        while let Some(w) = queue.pop_front() {
            queued[w] = false;
            let wend = self.cell_end[w];
            touched_cells.clear();
            for i in w..wend {
                let x = self.order[i];
                for y in g.neighbors(x) {
                    count[y] += 1;
                    let c = self.cell_of[y];
                    if !marked[c] {
                        marked[c] = true;
                        touched_cells.push(c);
                    }
                }
            }
            touched_cells.sort_unstable();
            for &c in &touched_cells {
                marked[c] = false;
                let e = self.cell_end[c];
                if e - c == 1 {
                    continue;
                }
                let first = count[self.order[c]];
                if self.order[c + 1..e].iter().all(|&v| count[v] == first) {
                    continue;
                }
                self.order[c..e].sort_by_key(|&v| count[v]);
                // split at count boundaries
                let mut starts = vec![c];
                for i in c + 1..e {
                    if count[self.order[i]] != count[self.order[i - 1]] {
                        starts.push(i);
                    }
                }
                starts.push(e);
                let was_queued = queued[c];
                for k in 0..starts.len() - 1 {
                    let (a, b) = (starts[k], starts[k + 1]);
                    self.cell_end[a] = b;
                    for i in a..b {
                        let v = self.order[i];
                        self.cell_of[v] = a;
                        self.pos[v] = i;
                    }
                    if !(k == 0 && was_queued) {
                        queued[a] = true;
                        queue.push_back(a);
                    }
                }
            }
            for i in w..wend {
                for y in g.neighbors(self.order[i]) {
                    count[y] = 0;
                }
            }
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shuffled(g: &Graph, seed: u64) -> Graph {
        // small LCG; keeps this module free of dev-only imports
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        for i in (1..n).rev() {
            s = s
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let j = (s >> 33) as usize % (i + 1);
            perm.swap(i, j);
        }
        g.permuted(&perm)
    }

    #[test]
    fn relabeled_paths_agree() {
        let a = Graph::path(4).unwrap();
        // 2-0-3-1
        let b = Graph::from_edges(4, [(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert_ne!(
            canonical_form(&a),
            canonical_form(&Graph::cycle(4).unwrap())
        );
    }

    #[test]
    fn symmetric_graphs_are_cheap() {
        for g in [
            Graph::empty(60).unwrap(),
            Graph::complete(40).unwrap(),
            Graph::matching(20).unwrap(),
            Graph::k_copies(&Graph::cycle(3).unwrap(), 10).unwrap(),
        ] {
            let lab = canonical_labeling(&g, None);
            assert!(lab.leaves < 5_000, "{} leaves", lab.leaves);
            assert_eq!(canonical_form(&g), canonical_form(&shuffled(&g, 7)));
        }
    }

    #[test]
    fn generators_are_automorphisms() {
        let g = Graph::cycle(8).unwrap();
        let lab = canonical_labeling(&g, None);
        assert!(!lab.generators.is_empty());
        for gen in &lab.generators {
            assert_eq!(g.permuted(gen), g);
        }
        let (orbits, _) = lab.orbits();
        assert_eq!(orbits.len(), 1);
    }

    #[test]
    fn petersen_and_shuffles() {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        let p = Graph::from_edges(10, outer.chain(spokes).chain(inner)).unwrap();
        let c = canonical_form(&p);
        for seed in 0..20 {
            assert_eq!(canonical_form(&shuffled(&p, seed)), c);
        }
    }

    #[test]
    fn colors_are_respected() {
        let g = Graph::path(3).unwrap();
        let (_, a) = canonical_form_colored(&g, &[0, 1, 1]);
        let (_, b) = canonical_form_colored(&g, &[1, 1, 0]);
        let (_, c) = canonical_form_colored(&g, &[1, 0, 1]);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
