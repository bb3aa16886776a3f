//! Vertex splitting and split families.

use rayon::prelude::*;

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::family::GraphFamily;
use crate::graph::Graph;

pub const DEFAULT_SPLIT_CAP: usize = 12;

/// Replaces every vertex of `split` by `d(v)` independent vertices, each
/// attached to exactly one former neighbour.
///
/// Unsplit vertices keep their relative order at the front; the copies of a
/// split vertex `v` follow, one per neighbour in ascending order, with `v`s
/// taken in ascending order. Splitting an isolated vertex deletes it.
pub fn vertex_split(h: &Graph, split: &[usize]) -> Result<Graph> {
    let n = h.n();
    let mut is_split = vec![false; n];
    for &v in split {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        is_split[v] = true;
    }
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for v in 0..n {
        if !is_split[v] {
            label[v] = next;
            next += 1;
        }
    }
    // copy[v][j] = label of the copy of split vertex v facing its j-th neighbour
    let mut copy: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for v in 0..n {
        if is_split[v] {
            for w in h.neighbors(v) {
                copy[v].push((w, next));
                next += 1;
            }
        }
    }
    let end = |v: usize, toward: usize| -> usize {
        if is_split[v] {
            copy[v]
                .iter()
                .find(|&&(w, _)| w == toward)
                .map(|&(_, l)| l)
                .expect("neighbour has a copy")
        } else {
            label[v]
        }
    };
    Graph::from_edges(next, h.edges().map(|(u, v)| (end(u, v), end(v, u))))
}

/// All graphs obtained by splitting some vertex subset of `h`, up to
/// isomorphism. Requires `h.n() <= cap`.
pub fn split_family(h: &Graph, cap: usize) -> Result<GraphFamily> {
    if h.n() > cap {
        return Err(Error::CapExceeded {
            what: "split family base vertex",
            value: h.n(),
            cap,
        });
    }
    let n = h.n();
    // splitting a leaf is the identity up to isomorphism
    let splittable: Vec<usize> = (0..n).filter(|&v| h.degree(v) != 1).collect();
    let k = splittable.len();
    let mut forms: Vec<_> = (0u64..1 << k)
        .into_par_iter()
        .map(|mask| {
            let set: Vec<usize> = (0..k)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| splittable[i])
                .collect();
            canonical_form(&vertex_split(h, &set).expect("indices in range"))
        })
        .collect();
    forms.sort();
    forms.dedup();
    let mut family = GraphFamily::new();
    for f in forms {
        family.insert_canonical(f);
    }
    Ok(family)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitting_star_centre_gives_matching() {
        let s3 = Graph::star(3).unwrap();
        let m = vertex_split(&s3, &[0]).unwrap();
        assert_eq!(
            canonical_form(&m),
            canonical_form(&Graph::matching(3).unwrap())
        );
        assert_eq!(vertex_split(&s3, &[]).unwrap(), s3);
    }

    #[test]
    fn splitting_interior_path_vertex() {
        let g = vertex_split(&Graph::path(4).unwrap(), &[1]).unwrap();
        let expect =
            Graph::disjoint_union(&Graph::path(2).unwrap(), &Graph::path(3).unwrap()).unwrap();
        assert_eq!(canonical_form(&g), canonical_form(&expect));
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn leaf_split_is_isomorphic() {
        let p = Graph::path(5).unwrap();
        let g = vertex_split(&p, &[0]).unwrap();
        assert_eq!(canonical_form(&g), canonical_form(&p));
    }

    #[test]
    fn isolated_vertices_vanish() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(vertex_split(&g, &[2]).unwrap().n(), 2);
        assert!(vertex_split(&g, &[3]).is_err());
    }

    #[test]
    fn small_families() {
        assert_eq!(
            split_family(&Graph::path(2).unwrap(), DEFAULT_SPLIT_CAP)
                .unwrap()
                .len(),
            1
        );
        assert_eq!(
            split_family(&Graph::path(4).unwrap(), DEFAULT_SPLIT_CAP)
                .unwrap()
                .len(),
            3
        );
        assert_eq!(
            split_family(&Graph::cycle(4).unwrap(), DEFAULT_SPLIT_CAP)
                .unwrap()
                .len(),
            6
        );
        assert!(split_family(&Graph::path(13).unwrap(), DEFAULT_SPLIT_CAP).is_err());
    }
}
