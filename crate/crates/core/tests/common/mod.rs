#![allow(dead_code)]

use rand::Rng;

use turan_core::spec::ConstructionSpec;
use turan_core::{Graph, GraphFamily};

pub fn build(spec: &str) -> Graph {
    spec.parse::<ConstructionSpec>().unwrap().build().unwrap()
}

pub fn fam(specs: &[&str]) -> GraphFamily {
    specs.iter().map(|s| build(s)).collect()
}

/// Forbidden families for solver cross-checks.
pub fn corpus() -> Vec<GraphFamily> {
    [
        &["complete:3"][..],
        &["complete:4"],
        &["cycle:4"],
        &["cycle:5"],
        &["path:3"],
        &["path:4"],
        &["path:5"],
        &["star:3"],
        &["star:4"],
        &["matching:2"],
        &["matching:3"],
        &["star:2", "matching:2"],
        &["star:3", "matching:3"],
        &["complete:3", "cycle:4"],
        &["cycle:4", "cycle:5"],
        &["turan:5,2"],
        &["g6:Cz"],
        &["g6:Ds_"],
        &["g6:Dzo"],
        &["union:path:4+path:2"],
        &["union:complete:3+path:2"],
        &["join:empty:1*matching:2"],
        &["complete:4", "cycle:4"],
        &["blowup:path:3,3"],
    ]
    .iter()
    .map(|s| fam(s))
    .collect()
}

/// Whether some injection maps every pattern edge onto a host edge.
pub fn naive_contains(host: &Graph, pattern: &Graph) -> bool {
    fn extend(host: &Graph, pattern: &Graph, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        if map.len() == pattern.n() {
            return pattern.edges().all(|(x, y)| host.has_edge(map[x], map[y]));
        }
        for v in 0..host.n() {
            if !used[v] {
                used[v] = true;
                map.push(v);
                let found = extend(host, pattern, map, used);
                map.pop();
                used[v] = false;
                if found {
                    return true;
                }
            }
        }
        false
    }
    pattern.n() <= host.n() && extend(host, pattern, &mut Vec::new(), &mut vec![false; host.n()])
}

/// `G(n, density)` with `n` uniform in `0..=max_n`.
pub fn random_graph<R: Rng>(rng: &mut R, max_n: usize) -> Graph {
    let n = rng.gen_range(0..=max_n);
    let density: f64 = rng.gen();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}
