//! One line per acceptance criterion. Exits non-zero when a criterion fails
//! unexpectedly or overruns its time limit.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{build, corpus, fam, naive_contains, random_graph};
use turan_core::canon::canonical_form;
use turan_core::constructions::{
    blow_up, complete_multipartite, h_graph, h_star, q_graph, turan, turan_edges,
};
use turan_core::containment::{contains, is_family_free, ContainmentOptions};
use turan_core::decomposition::{decomposition_family_general, DecompositionQuery};
use turan_core::extremal::{ex, ExtremalResult, SearchBudget, SolverMode};
use turan_core::lab::predict::path_cycle_s;
use turan_core::lab::recipes::{
    verify_figure_claims, verify_freeness_sweep, verify_star_constant, RecipeOptions,
};
use turan_core::lab::tree::{spider, PredictedKind};
use turan_core::lab::{classify_tree, Status, Verdict};
use turan_core::split::{split_family, vertex_split};
use turan_core::{graph6, Graph, GraphFamily};

const BOTH: [SolverMode; 2] = [SolverMode::Enumerate, SolverMode::BranchBound];

struct Outcome {
    pass: bool,
    summary: String,
    failures: Vec<String>,
}

impl Outcome {
    fn from_failures(summary: String, failures: Vec<String>) -> Self {
        Outcome {
            pass: failures.is_empty(),
            summary,
            failures,
        }
    }
}

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
    /// Failures that follow from the statement itself; each must appear
    /// exactly for the run to count as reproduced.
    expected_failures: &'static [&'static str],
}

fn opts() -> RecipeOptions {
    RecipeOptions::default()
}

fn solve(n: usize, f: &GraphFamily, mode: SolverMode) -> ExtremalResult {
    ex(n, f, mode, &SearchBudget::default()).expect("solver runs")
}

fn decomposition(l: &Graph, p: Option<usize>) -> (GraphFamily, bool) {
    let mut q = DecompositionQuery::new([l].into_iter().collect());
    q.p = p;
    let d = decomposition_family_general(&q).expect("decomposition runs");
    (d.family, d.authoritative)
}

fn keys(f: &GraphFamily) -> String {
    format!("{:?}", f.family_key())
}

fn small_decompositions() -> Outcome {
    let cases: Vec<(&str, Graph, GraphFamily)> = vec![
        (
            "O_6",
            complete_multipartite(&[2, 2, 2]).unwrap(),
            fam(&["cycle:4"]),
        ),
        ("Q(2,2)", q_graph(2, 2).unwrap(), fam(&["star:2"])),
        ("C_5", Graph::cycle(5).unwrap(), fam(&["path:2"])),
        (
            "S_2^3",
            build("blowup:star:2,3"),
            fam(&["star:2", "matching:2"]),
        ),
        (
            "S_3^3",
            build("blowup:star:3,3"),
            fam(&["star:3", "matching:3"]),
        ),
    ];
    let mut failures = Vec::new();
    for (name, l, expected) in &cases {
        let (got, authoritative) = decomposition(l, None);
        if !authoritative || got != *expected {
            failures.push(format!(
                "M({name}) = {} (authoritative {authoritative}), expected {}",
                keys(&got),
                keys(expected)
            ));
        }
    }
    Outcome::from_failures(
        format!("{} families, set equality up to isomorphism", cases.len()),
        failures,
    )
}

fn split_equivalence() -> Outcome {
    let bases = ["path:3", "path:4", "cycle:3", "cycle:4", "star:2", "star:3"];
    let mut failures = Vec::new();
    for spec in bases {
        let h = build(spec);
        let (general, authoritative) = decomposition(&blow_up(&h, 4).unwrap(), Some(3));
        let split = split_family(&h, 12).unwrap();
        if !authoritative || general != split {
            let missing: Vec<String> = split
                .iter()
                .filter(|g| !general.contains_iso(g))
                .map(graph6::encode)
                .collect();
            let extra: Vec<String> = general
                .iter()
                .filter(|g| !split.contains_iso(g))
                .map(graph6::encode)
                .collect();
            failures.push(format!(
                "{spec}: only in split family {missing:?}, only in definition {extra:?}"
            ));
        }
    }
    Outcome::from_failures(format!("{} bases at p = 3", bases.len()), failures)
}

fn star_constants() -> Outcome {
    let mut failures = Vec::new();
    let mut checks = 0;
    for (k, ms) in [(2, 4..=9), (3, 6..=9)] {
        let r = verify_star_constant(k, 2, ms, &BOTH, &opts()).expect("recipe runs");
        checks += r.stats.checks;
        for c in r.checks.iter().filter(|c| c.status != Status::Pass) {
            failures.push(format!(
                "{} [{}]: {}",
                c.claim,
                c.status.as_str(),
                c.evidence
            ));
        }
    }
    Outcome::from_failures(format!("{checks} solver runs, exact"), failures)
}

fn turan_law() -> Outcome {
    let mut failures = Vec::new();
    let mut runs = 0;
    for n in 3..=9 {
        for p in 2..n {
            let f: GraphFamily = [Graph::complete(p + 1).unwrap()].into_iter().collect();
            let expected = turan(n, p).unwrap();
            let modes: &[SolverMode] = if n <= 8 {
                &BOTH
            } else {
                &[SolverMode::BranchBound]
            };
            for &mode in modes {
                runs += 1;
                let r = solve(n, &f, mode);
                let unique = r.extremal.len() == 1 && r.extremal.contains_iso(&expected);
                if !r.complete || r.max_edges != turan_edges(n, p).unwrap() || !unique {
                    failures.push(format!(
                        "n={n} p={p} {mode:?}: max {} witnesses {} complete {}",
                        r.max_edges,
                        keys(&r.extremal),
                        r.complete
                    ));
                }
            }
        }
    }
    Outcome::from_failures(
        format!("{runs} solver runs over 3 <= n <= 9, both modes up to n = 8"),
        failures,
    )
}

fn figure_suite() -> Outcome {
    let mut failures = Vec::new();
    let mut checks = 0;
    for k in 3..=7 {
        let r = verify_figure_claims(k, &opts()).expect("recipe runs");
        checks += r.stats.checks;
        for c in r.checks.iter().filter(|c| c.status != Status::Pass) {
            failures.push(format!(
                "k={k} {} <{}> [{}]",
                c.claim,
                c.anchor,
                c.status.as_str()
            ));
        }
    }
    Outcome::from_failures(format!("{checks} claims over k = 3..7"), failures)
}

fn freeness_sweeps() -> Outcome {
    let mut sweeps: Vec<(String, GraphFamily, std::ops::RangeInclusive<usize>)> = Vec::new();
    for (p, k) in [(2, 4), (2, 5), (3, 4), (3, 5)] {
        let s = path_cycle_s(k);
        let template = if k % 2 == 1 {
            format!("h:n,{p},{s}")
        } else {
            format!("hprime:n,{p},{s}")
        };
        sweeps.push((
            template,
            fam(&[&format!("blowup:cycle:{k},{}", p + 1)]),
            12..=40,
        ));
    }
    let c33 = fam(&["blowup:cycle:3,3"]);
    sweeps.push(("hstar:n".into(), c33.clone(), 6..=40));
    sweeps.push(("h:n,2,2".into(), c33, 6..=40));
    sweeps.push(("h:n,3,2".into(), fam(&["blowup:path:4,4"]), 12..=40));
    let mut failures = Vec::new();
    let mut checks = 0;
    for (template, forbidden, ns) in &sweeps {
        let r =
            verify_freeness_sweep(template, forbidden, ns.clone(), &opts()).expect("recipe runs");
        checks += r.stats.checks;
        for c in r.checks.iter().filter(|c| c.status != Status::Pass) {
            failures.push(format!(
                "{} [{}]: {}",
                c.claim,
                c.status.as_str(),
                c.evidence
            ));
        }
    }
    Outcome::from_failures(format!("{} sweeps, {checks} hosts", sweeps.len()), failures)
}

fn edge_law() -> Outcome {
    let mut failures = Vec::new();
    for n in 8..=40usize {
        let diff =
            h_star(n).unwrap().edge_count() as i64 - h_graph(n, 2, 2).unwrap().edge_count() as i64;
        let expected = i64::from(n % 4 == 0);
        if diff != expected {
            failures.push(format!("n={n}: difference {diff}, expected {expected}"));
        }
    }
    Outcome::from_failures("n = 8..40, exact".into(), failures)
}

fn cross_validation() -> Outcome {
    let corpus = corpus();
    let mut failures = Vec::new();
    for f in &corpus {
        for n in 2..=7 {
            let a = solve(n, f, SolverMode::Enumerate);
            let b = solve(n, f, SolverMode::BranchBound);
            if !a.complete || !b.complete || a.max_edges != b.max_edges || a.extremal != b.extremal
            {
                failures.push(format!(
                    "{} n={n}: {} vs {}",
                    keys(&f.clone()),
                    a.max_edges,
                    b.max_edges
                ));
            }
        }
    }
    Outcome::from_failures(format!("{} families, n = 2..7", corpus.len()), failures)
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7572_616e);
    let mut failures = Vec::new();
    for _ in 0..10_000 {
        let g = random_graph(&mut rng, 70);
        let text = graph6::encode(&g);
        if graph6::decode(&text).ok().as_ref() != Some(&g) {
            failures.push(format!("graph6 roundtrip: {text}"));
        }
    }
    for _ in 0..1_000 {
        let g = random_graph(&mut rng, 12);
        let mut perm: Vec<usize> = (0..g.n()).collect();
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut rng);
        if canonical_form(&g) != canonical_form(&g.permuted(&perm)) {
            failures.push(format!(
                "canonical form under relabeling: {}",
                graph6::encode(&g)
            ));
        }
    }
    let mut witnesses = 0;
    for _ in 0..1_000 {
        let host = random_graph(&mut rng, 8);
        let pattern = random_graph(&mut rng, 6);
        let found = contains(&host, &pattern).expect("containment runs");
        if found.is_some() != naive_contains(&host, &pattern) {
            failures.push(format!(
                "containment: host {} pattern {}",
                graph6::encode(&host),
                graph6::encode(&pattern)
            ));
        }
        if let Some(w) = found {
            witnesses += 1;
            if !w.validate(&host, &pattern) {
                failures.push(format!("invalid witness {:?}", w.map));
            }
        }
    }
    for _ in 0..1_000 {
        let h = random_graph(&mut rng, 8);
        let split: Vec<usize> = (0..h.n())
            .filter(|_| rand::Rng::gen_bool(&mut rng, 0.5))
            .collect();
        if vertex_split(&h, &split).unwrap().edge_count() != h.edge_count() {
            failures.push(format!(
                "split changed the edge count of {}",
                graph6::encode(&h)
            ));
        }
    }
    let lower_bounds = lower_bound_consistency(&mut failures);
    Outcome::from_failures(
        format!(
            "graph6 10^4, canonical 10^3, containment 10^3 ({witnesses} witnesses validated), split 10^3, {lower_bounds} lower-bound pairs"
        ),
        failures,
    )
}

/// Every free construction must have at most as many edges as the solver's
/// maximum at the same `n`.
fn lower_bound_consistency(failures: &mut Vec<String>) -> usize {
    let opts = ContainmentOptions::default();
    let mut pairs = 0;
    let mut check = |name: String, g: &Graph, f: &GraphFamily, n: usize| {
        if !is_family_free(g, f, &opts)
            .expect("containment runs")
            .is_free()
        {
            return;
        }
        pairs += 1;
        let r = solve(n, f, SolverMode::BranchBound);
        if g.edge_count() > r.max_edges {
            failures.push(format!(
                "{name}: e = {} exceeds ex = {}",
                g.edge_count(),
                r.max_edges
            ));
        }
    };
    for n in 3..=9 {
        for p in 2..n {
            let f: GraphFamily = [Graph::complete(p + 1).unwrap()].into_iter().collect();
            check(format!("T({n},{p})"), &turan(n, p).unwrap(), &f, n);
        }
    }
    let c33 = fam(&["blowup:cycle:3,3"]);
    for n in 6..=8 {
        check(format!("H*({n})"), &h_star(n).unwrap(), &c33, n);
        check(format!("H({n},2,2)"), &h_graph(n, 2, 2).unwrap(), &c33, n);
    }
    pairs
}

fn tree_classification() -> Outcome {
    let mut failures = Vec::new();
    let mut trees = 0;
    for v in 4..=9 {
        trees += 1;
        let k = v - 1;
        let c = classify_tree(&Graph::path(v).unwrap()).unwrap();
        let (verdict, kind) = if v % 2 == 0 {
            (Verdict::CaseI, PredictedKind::H)
        } else {
            (Verdict::CaseII, PredictedKind::HPrime)
        };
        let ok = c.verdict == verdict
            && c.predicted
                .is_some_and(|p| p.kind == kind && p.s == path_cycle_s(k));
        if !ok {
            failures.push(format!("P_{v}: {:?} {:?}", c.verdict, c.predicted));
        }
    }
    for legs in 2..=5 {
        for lens in leg_multisets(legs, 2, 4) {
            trees += 1;
            let c = classify_tree(&spider(&lens).unwrap()).unwrap();
            if c.verdict == Verdict::Neither
                || !c.alpha_equals_b
                || !(c.leaf_in_a || c.min_degree_a_is_two)
            {
                failures.push(format!("spider {lens:?}: {:?}", c.verdict));
            }
        }
    }
    Outcome::from_failures(format!("{trees} trees"), failures)
}

fn leg_multisets(legs: usize, min: usize, max: usize) -> Vec<Vec<usize>> {
    if legs == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in min..=max {
        for mut rest in leg_multisets(legs - 1, first, max) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn criteria() -> Vec<Criterion> {
    let min = |m: u64| Duration::from_secs(60 * m);
    vec![
        Criterion {
            id: 1,
            title: "decomposition families of small forbidden graphs",
            limit: min(5),
            run: small_decompositions,
            expected_failures: &[],
        },
        Criterion {
            id: 2,
            title: "definition-based decomposition of h^4 equals the split family of h",
            limit: min(30),
            run: split_equivalence,
            // chi(C_3) = 3 > p - 1 = 2, so M_3 is not a member of M(C_3^4)
            expected_failures: &["cycle:3: only in split family [\"E@Q?\"], only in definition []"],
        },
        Criterion {
            id: 3,
            title: "star blow-up additive constants",
            limit: min(10),
            run: star_constants,
            expected_failures: &[],
        },
        Criterion {
            id: 4,
            title: "Turán graph is the unique K_{p+1}-free extremal graph",
            limit: min(10),
            run: turan_law,
            expected_failures: &[],
        },
        Criterion {
            id: 5,
            title: "cycle blow-up membership and cover claims",
            limit: min(20),
            run: figure_suite,
            expected_failures: &[],
        },
        Criterion {
            id: 6,
            title: "constructions are free of the blow-ups they bound",
            limit: min(30),
            run: freeness_sweeps,
            expected_failures: &[],
        },
        Criterion {
            id: 7,
            title: "e(H*(n)) - e(H(n,2,2)) is 1 exactly when 4 | n",
            limit: min(1),
            run: edge_law,
            expected_failures: &[],
        },
        Criterion {
            id: 8,
            title: "enumeration and branch-and-bound agree",
            limit: min(30),
            run: cross_validation,
            expected_failures: &[],
        },
        Criterion {
            id: 9,
            title: "property suites and lower-bound consistency",
            limit: min(10),
            run: property_suites,
            expected_failures: &[],
        },
        Criterion {
            id: 10,
            title: "paths and star subdivisions classify with the predicted s",
            limit: min(1),
            run: tree_classification,
            expected_failures: &[],
        },
    ]
}

fn main() -> ExitCode {
    let mut unexpected = 0;
    for c in criteria() {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let in_time = elapsed <= c.limit;
        let pass = outcome.pass && in_time;
        println!(
            "criterion {:>2} {}: {} ({}; {:.2}s of {}s)",
            c.id,
            if pass { "PASS" } else { "FAIL" },
            c.title,
            outcome.summary,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
        for f in &outcome.failures {
            println!("    {f}");
        }
        let reproduced = !c.expected_failures.is_empty()
            && in_time
            && outcome.failures.len() == c.expected_failures.len()
            && outcome
                .failures
                .iter()
                .all(|f| c.expected_failures.contains(&f.as_str()));
        if reproduced {
            println!("    failure matches the recorded analysis");
        } else if !pass {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        println!("{unexpected} criteria failed unexpectedly");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
