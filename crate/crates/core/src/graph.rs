//! Simple undirected graphs with bit-packed adjacency rows.

use std::fmt;

use crate::bits::{self, words_for};
use crate::error::{Error, Result};

/// Largest vertex count a [`Graph`] may have.
pub const MAX_VERTICES: usize = 1024;

/// A labeled simple graph on vertices `0..n`.
///
/// Adjacency is symmetric with an all-false diagonal. Values are cheap to
/// clone and are never shared mutably; operations return new graphs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    stride: usize,
    edges: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooLarge {
                n,
                max: MAX_VERTICES,
            });
        }
        let stride = words_for(n);
        Ok(Graph {
            n,
            stride,
            edges: 0,
            rows: vec![0; n * stride],
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.check_pair(u, v)?;
            g.add_edge(u, v);
        }
        Ok(g)
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: x,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        bits::test(self.row(u), v)
    }

    /// Adjacency row of `u` as packed words.
    #[inline]
    pub fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.stride..(u + 1) * self.stride]
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        bits::count(self.row(u))
    }

    pub fn neighbors(&self, u: usize) -> bits::Ones<'_> {
        bits::ones(self.row(u))
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges().collect()
    }

    /// Degrees in descending order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|u| self.degree(u)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).max().unwrap_or(0)
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        if !self.has_edge(u, v) {
            let s = self.stride;
            bits::set(&mut self.rows[u * s..(u + 1) * s], v);
            bits::set(&mut self.rows[v * s..(v + 1) * s], u);
            self.edges += 1;
        }
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        if self.has_edge(u, v) {
            let s = self.stride;
            bits::clear(&mut self.rows[u * s..(u + 1) * s], v);
            bits::clear(&mut self.rows[v * s..(v + 1) * s], u);
            self.edges -= 1;
        }
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_pair(u, v)?;
        let mut g = self.clone();
        g.add_edge(u, v);
        Ok(g)
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_pair(u, v)?;
        let mut g = self.clone();
        g.remove_edge(u, v);
        Ok(g)
    }

    /// Relabels vertex `v` to `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut g = Graph::empty(self.n).expect("same size");
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Subgraph induced by `vertices`; the i-th listed vertex becomes label i.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len()).expect("subgraph is smaller");
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n).expect("same size");
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Drops isolated vertices, keeping the relative order of the rest.
    pub fn strip_isolated(&self) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|&u| self.degree(u) > 0).collect();
        if keep.len() == self.n {
            return self.clone();
        }
        self.induced(&keep)
    }

    pub fn isolated_count(&self) -> usize {
        (0..self.n).filter(|&u| self.degree(u) == 0).count()
    }

    /// Connected components, each sorted ascending, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    // ---- named graphs ----

    /// `K_n`.
    pub fn complete(n: usize) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        Ok(g)
    }

    /// `P_k`: the path on `k` vertices.
    pub fn path(k: usize) -> Result<Graph> {
        Graph::from_edges(k, (1..k).map(|i| (i - 1, i)))
    }

    /// `C_k`: the cycle with `k >= 3` edges.
    pub fn cycle(k: usize) -> Result<Graph> {
        if k < 3 {
            return Err(Error::param(format!(
                "cycle needs at least 3 vertices, got {k}"
            )));
        }
        Graph::from_edges(k, (0..k).map(|i| (i, (i + 1) % k)))
    }

    /// `S_k`: centre 0 joined to leaves `1..=k`.
    pub fn star(k: usize) -> Result<Graph> {
        Graph::from_edges(k + 1, (1..=k).map(|i| (0, i)))
    }

    /// `M_k`: `k` disjoint edges `(2i, 2i+1)`.
    pub fn matching(k: usize) -> Result<Graph> {
        Graph::from_edges(2 * k, (0..k).map(|i| (2 * i, 2 * i + 1)))
    }

    // ---- combinators ----

    /// Join: disjoint union plus every edge between the two parts.
    /// Vertices of `a` keep their labels; `b` is shifted by `a.n()`.
    pub fn join(a: &Graph, b: &Graph) -> Result<Graph> {
        let mut g = Graph::disjoint_union(a, b)?;
        for u in 0..a.n {
            for v in 0..b.n {
                g.add_edge(u, a.n + v);
            }
        }
        Ok(g)
    }

    pub fn disjoint_union(a: &Graph, b: &Graph) -> Result<Graph> {
        let mut g = Graph::empty(a.n + b.n)?;
        for (u, v) in a.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in b.edges() {
            g.add_edge(a.n + u, a.n + v);
        }
        Ok(g)
    }

    /// `kH`. `k_copies(h, 0)` is the graph on zero vertices.
    pub fn k_copies(h: &Graph, k: usize) -> Result<Graph> {
        let total = h.n.saturating_mul(k);
        if total > MAX_VERTICES {
            return Err(Error::TooLarge {
                n: total,
                max: MAX_VERTICES,
            });
        }
        let mut g = Graph::empty(total)?;
        for c in 0..k {
            for (u, v) in h.edges() {
                g.add_edge(c * h.n + u, c * h.n + v);
            }
        }
        Ok(g)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edge_list())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::graph6::encode(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_graph_sizes() {
        assert_eq!(Graph::path(4).unwrap().edge_count(), 3);
        assert_eq!(Graph::cycle(5).unwrap().edge_count(), 5);
        assert_eq!(Graph::star(3).unwrap().n(), 4);
        assert_eq!(Graph::complete(6).unwrap().edge_count(), 15);
        assert!(Graph::cycle(2).is_err());
    }

    #[test]
    fn join_counts_and_labels() {
        let a = Graph::cycle(4).unwrap();
        let b = Graph::empty(2).unwrap();
        let j = Graph::join(&a, &b).unwrap();
        assert_eq!(j.n(), 6);
        assert_eq!(j.edge_count(), 4 + 8);
        // labels of `a` are preserved
        for (u, v) in a.edges() {
            assert!(j.has_edge(u, v));
        }
        let zero = Graph::empty(0).unwrap();
        assert_eq!(Graph::join(&zero, &a).unwrap(), a);
    }

    #[test]
    fn unions_and_copies() {
        let m3 = Graph::k_copies(&Graph::path(2).unwrap(), 3).unwrap();
        assert_eq!(m3, Graph::matching(3).unwrap());
        let c3 = Graph::cycle(3).unwrap();
        let two = Graph::disjoint_union(&c3, &c3).unwrap();
        assert_eq!((two.n(), two.edge_count()), (6, 6));
        assert_eq!(Graph::k_copies(&c3, 1).unwrap(), c3);
        assert_eq!(Graph::k_copies(&c3, 0).unwrap().n(), 0);
        assert!(Graph::k_copies(&c3, 400).is_err());
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(
            Graph::from_edges(3, [(0, 3)]),
            Err(Error::VertexOutOfRange { .. })
        ));
        assert!(matches!(
            Graph::from_edges(3, [(1, 1)]),
            Err(Error::SelfLoop(1))
        ));
        assert!(Graph::empty(MAX_VERTICES + 1).is_err());
    }

    #[test]
    fn wide_graph_rows() {
        let g = Graph::from_edges(200, [(0, 199), (64, 130)]).unwrap();
        assert!(g.has_edge(199, 0));
        assert_eq!(g.neighbors(130).collect::<Vec<_>>(), vec![64]);
        assert_eq!(g.strip_isolated().n(), 4);
    }
}
