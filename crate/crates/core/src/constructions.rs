//! Named extremal constructions and the blow-up operation.
//!
//! Layouts are fixed so outputs are reproducible: Turán classes are listed
//! largest-first on consecutive labels, dominating cliques come first, and
//! blow-up vertices are appended edge by edge in lexicographic order.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Class sizes of `T_{n,p}`, largest first.
pub fn turan_class_sizes(n: usize, p: usize) -> Result<Vec<usize>> {
    if p == 0 || p > n {
        return Err(Error::param(format!(
            "Turán graph needs 1 <= p <= n, got n={n}, p={p}"
        )));
    }
    Ok((0..p).map(|i| n / p + usize::from(i < n % p)).collect())
}

/// Edge count of the complete multipartite graph with the given class sizes.
pub fn multipartite_edges(sizes: &[usize]) -> usize {
    let total: usize = sizes.iter().sum();
    let squares: usize = sizes.iter().map(|s| s * s).sum();
    (total * total - squares) / 2
}

pub fn turan_edges(n: usize, p: usize) -> Result<usize> {
    Ok(multipartite_edges(&turan_class_sizes(n, p)?))
}

/// Complete multipartite graph, classes on consecutive labels.
pub fn complete_multipartite(sizes: &[usize]) -> Result<Graph> {
    let n: usize = sizes.iter().sum();
    let mut class = Vec::with_capacity(n);
    for (i, &s) in sizes.iter().enumerate() {
        class.extend(std::iter::repeat_n(i, s));
    }
    let mut g = Graph::empty(n)?;
    for u in 0..n {
        for v in u + 1..n {
            if class[u] != class[v] {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// `T_{n,p}`.
pub fn turan(n: usize, p: usize) -> Result<Graph> {
    complete_multipartite(&turan_class_sizes(n, p)?)
}

fn check_h(n: usize, p: usize, s: usize) -> Result<()> {
    if s == 0 || p == 0 || n + 1 < s + p {
        return Err(Error::param(format!(
            "H(n,p,s) needs s >= 1, p >= 1 and n - s + 1 >= p, got n={n}, p={p}, s={s}"
        )));
    }
    Ok(())
}

/// `H(n,p,s) = K_{s-1} ⊗ T_{n-s+1,p}`; labels `0..s-1` form the dominating clique.
pub fn h_graph(n: usize, p: usize, s: usize) -> Result<Graph> {
    check_h(n, p, s)?;
    Graph::join(&Graph::complete(s - 1)?, &turan(n - s + 1, p)?)
}

pub fn h_graph_edges(n: usize, p: usize, s: usize) -> Result<usize> {
    check_h(n, p, s)?;
    let k = s - 1;
    Ok(k * k.saturating_sub(1) / 2 + k * (n - k) + turan_edges(n - k, p)?)
}

/// `H'(n,p,s)`: `H(n,p,s)` plus one edge inside Turán class `class_index`,
/// between the class members at positions `edge_choice` (default: the two
/// lowest-labeled members of class 0).
pub fn h_prime(
    n: usize,
    p: usize,
    s: usize,
    class_index: Option<usize>,
    edge_choice: Option<(usize, usize)>,
) -> Result<Graph> {
    let mut g = h_graph(n, p, s)?;
    let sizes = turan_class_sizes(n - s + 1, p)?;
    let class = class_index.unwrap_or(0);
    let size = *sizes
        .get(class)
        .ok_or_else(|| Error::param(format!("class index {class} out of range for {p} classes")))?;
    if size < 2 {
        return Err(Error::param(format!(
            "class {class} has {size} vertex, cannot hold an edge"
        )));
    }
    let (a, b) = edge_choice.unwrap_or((0, 1));
    if a == b || a >= size || b >= size {
        return Err(Error::param(format!(
            "edge choice ({a},{b}) invalid for a class of {size}"
        )));
    }
    let offset = (s - 1) + sizes[..class].iter().sum::<usize>();
    g.add_edge(offset + a, offset + b);
    Ok(g)
}

pub fn h_prime_edges(n: usize, p: usize, s: usize) -> Result<usize> {
    check_h(n, p, s)?;
    if turan_class_sizes(n - s + 1, p)?[0] < 2 {
        return Err(Error::param("every Turán class is a single vertex"));
    }
    Ok(h_graph_edges(n, p, s)? + 1)
}

/// `H*(n)`: `K_{⌈n/2⌉,⌊n/2⌋}` with near-perfect matchings inside both sides.
/// Side A is `0..⌈n/2⌉`; within a side, local positions `2i, 2i+1` are matched.
pub fn h_star(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::param(format!("H*(n) needs n >= 2, got {n}")));
    }
    let a = n.div_ceil(2);
    let mut g = complete_multipartite(&[a, n - a])?;
    for (offset, size) in [(0, a), (a, n - a)] {
        for i in 0..size / 2 {
            g.add_edge(offset + 2 * i, offset + 2 * i + 1);
        }
    }
    Ok(g)
}

pub fn h_star_edges(n: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::param(format!("H*(n) needs n >= 2, got {n}")));
    }
    let (a, b) = (n.div_ceil(2), n / 2);
    Ok(a * b + a / 2 + b / 2)
}

/// `Q(r,p) = I_1 ⊗ T_{rp,p}`; label 0 is the dominating vertex.
pub fn q_graph(r: usize, p: usize) -> Result<Graph> {
    if r == 0 || p == 0 {
        return Err(Error::param("Q(r,p) needs r, p >= 1"));
    }
    Graph::join(&Graph::empty(1)?, &turan(r * p, p)?)
}

/// Blow-up: every edge of `h` becomes a `q`-clique on fresh vertices.
pub fn blow_up(h: &Graph, q: usize) -> Result<Graph> {
    if q < 2 {
        return Err(Error::param(format!(
            "blow-up clique size must be >= 2, got {q}"
        )));
    }
    let extra = h.edge_count() * (q - 2);
    let mut g = Graph::empty(h.n() + extra)?;
    let mut next = h.n();
    for (u, v) in h.edges() {
        let mut clique = vec![u, v];
        clique.extend(next..next + q - 2);
        next += q - 2;
        for i in 0..clique.len() {
            for j in i + 1..clique.len() {
                g.add_edge(clique[i], clique[j]);
            }
        }
    }
    Ok(g)
}
