//! Verification recipes. Each one fans its checks out in parallel and
//! assembles a [`VerificationReport`] in a fixed order.

use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::constructions::blow_up;
use crate::containment::{contains_with, is_family_free, ContainmentOptions, Freeness};
use crate::decomposition::{
    decomposition_family_general, is_decomposition_member, DecompositionQuery,
};
use crate::error::{Error, Result};
use crate::extremal::{ex, ExtremalResult, SearchBudget, SolverMode};
use crate::family::GraphFamily;
use crate::graph::Graph;
use crate::invariants::chromatic_number;
use crate::lab::predict::star_constant;
use crate::lab::report::{g6, Check, Status, VerificationReport};
use crate::lab::tree::{classify_tree, Verdict};
use crate::spec::ConstructionSpec;
use crate::split::{split_family, DEFAULT_SPLIT_CAP};

#[derive(Clone, Copy, Debug, Default)]
pub struct RecipeOptions {
    pub containment: ContainmentOptions,
    pub search: SearchBudget,
}

fn params(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => Map::new(),
    }
}

/// `Ok(None)` when a search budget ran out.
fn within_budget<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::BudgetExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn skipped(claim: String, anchor: &str, evidence: Value) -> Check {
    Check {
        claim,
        anchor: anchor.to_string(),
        status: Status::Skipped,
        evidence,
    }
}

/// Disjoint union of `copies` paths on `len` vertices for each `(copies, len)`,
/// plus `isolated` isolated vertices.
pub fn linear_forest(parts: &[(usize, usize)], isolated: usize) -> Result<Graph> {
    let mut g = Graph::empty(isolated)?;
    for &(copies, len) in parts {
        if copies > 0 {
            g = Graph::disjoint_union(&Graph::k_copies(&Graph::path(len)?, copies)?, &g)?;
        }
    }
    Ok(g)
}

/// Checks that the smaller colour class of a case-I tree `t` plus a clique
/// cannot host any split of `t`: `K_{a-1} ⊗ I_m` is free of the split family.
pub fn verify_lemma_tfree(t: &Graph, m: usize, opts: &RecipeOptions) -> Result<VerificationReport> {
    if m == 0 {
        return Err(Error::param("m must be at least 1"));
    }
    let c = classify_tree(t)?;
    if c.verdict != Verdict::CaseI {
        return Err(Error::Hypothesis(format!(
            "tree is {:?}, the check needs case I",
            c.verdict
        )));
    }
    let a = c.a.len();
    let host = Graph::join(&Graph::complete(a - 1)?, &Graph::empty(m)?)?;
    let family = split_family(t, DEFAULT_SPLIT_CAP)?;
    let mut report =
        VerificationReport::new("tfree", params(json!({ "tree": g6(t), "m": m, "a": a })));
    let members: Vec<&Graph> = family.iter().collect();
    let checks: Vec<Result<Check>> = members
        .par_iter()
        .map(|f| {
            let claim = format!(
                "split {} absent from K_{} ⊗ I_{m}",
                crate::graph6::encode(f),
                a - 1
            );
            let evidence = json!({ "member": g6(f), "host_order": host.n() });
            Ok(
                match within_budget(contains_with(&host, f, &opts.containment))? {
                    None => skipped(claim, "tree-split-free-host", evidence),
                    Some(w) => Check {
                        claim,
                        anchor: "tree-split-free-host".into(),
                        status: Status::from_bool(w.is_none()),
                        evidence: match w {
                            None => evidence,
                            Some(w) => json!({ "member": g6(f), "host": g6(&host), "witness": w }),
                        },
                    },
                },
            )
        })
        .collect();
    for c in checks {
        report.push(c?);
    }
    Ok(report)
}

enum ClaimKind {
    /// Graph is a decomposition-family member of `C_k^3` at `p = 2`.
    CycleMember(fn(usize) -> Result<Graph>),
    /// `C_k^3 ⊆ left ⊗ right`.
    CycleCover(fn(usize) -> Result<Graph>, fn(usize) -> Result<Graph>),
}

struct FigureClaim {
    anchor: &'static str,
    applies: fn(usize) -> bool,
    text: fn(usize) -> String,
    kind: ClaimKind,
}

/// `2P_3 ∪ P_4 ∪ I_5` style name; zero-copy parts are dropped.
fn forest_name(parts: &[(usize, usize)], isolated: usize) -> String {
    let mut terms: Vec<String> = parts
        .iter()
        .filter(|&&(c, _)| c > 0)
        .map(|&(c, len)| {
            if c == 1 {
                format!("P_{len}")
            } else {
                format!("{c}P_{len}")
            }
        })
        .collect();
    if isolated > 0 {
        terms.push(format!("I_{isolated}"));
    }
    terms.join(" ∪ ")
}

fn odd(k: usize) -> bool {
    k % 2 == 1
}

fn figure_claims() -> Vec<FigureClaim> {
    use ClaimKind::*;
    vec![
        FigureClaim {
            anchor: "cycle/long-path-member",
            applies: |_| true,
            text: |k| format!("P_{} ∈ M(C_{k}^3)", k + 1),
            kind: CycleMember(|k| linear_forest(&[(1, k + 1)], 0)),
        },
        FigureClaim {
            anchor: "cycle/odd-path-cover",
            applies: odd,
            text: |k| format!("C_{k}^3 ⊆ (P_{k} ∪ I_{k}) ⊗ (P_2 ∪ I_{k})"),
            kind: CycleCover(
                |k| linear_forest(&[(1, k)], k),
                |k| linear_forest(&[(1, 2)], k),
            ),
        },
        FigureClaim {
            anchor: "cycle/even-cherry-path-member",
            applies: |k| !odd(k),
            text: |k| format!("(P_3 ∪ P_{}) ∈ M(C_{k}^3)", k - 1),
            kind: CycleMember(|k| linear_forest(&[(1, 3), (1, k - 1)], 0)),
        },
        FigureClaim {
            anchor: "cycle/even-five-path-member",
            applies: |k| !odd(k) && k >= 6,
            text: |k| format!("(P_5 ∪ P_{}) ∈ M(C_{k}^3)", k - 3),
            kind: CycleMember(|k| linear_forest(&[(1, 5), (1, k - 3)], 0)),
        },
        FigureClaim {
            anchor: "cycle/odd-cherries-cover",
            applies: odd,
            text: |k| {
                format!(
                    "C_{k}^3 ⊆ ({}) ⊗ (P_2 ∪ I_{k})",
                    forest_name(&[((k - 1) / 2, 3)], k)
                )
            },
            kind: CycleCover(
                |k| linear_forest(&[((k - 1) / 2, 3)], k),
                |k| linear_forest(&[(1, 2)], k),
            ),
        },
        FigureClaim {
            anchor: "cycle/odd-cherries-four-path-member",
            applies: odd,
            text: |k| {
                format!(
                    "({}) ∈ M(C_{k}^3)",
                    forest_name(&[((k - 3) / 2, 3), (1, 4)], 0)
                )
            },
            kind: CycleMember(|k| linear_forest(&[((k - 3) / 2, 3), (1, 4)], 0)),
        },
        FigureClaim {
            anchor: "cycle/triangle-member",
            applies: |k| k == 3,
            text: |_| "K_3 ∈ M(C_3^3)".to_string(),
            kind: CycleMember(|_| Graph::complete(3)),
        },
        FigureClaim {
            anchor: "cycle/odd-matching-cover",
            applies: |k| odd(k) && k >= 5,
            text: |k| {
                format!(
                    "C_{k}^3 ⊆ ({}) ⊗ {}",
                    forest_name(&[(1, 3), ((k - 3) / 2, 2)], k),
                    forest_name(&[((k - 1) / 2, 2)], 0)
                )
            },
            kind: CycleCover(
                |k| linear_forest(&[(1, 3), ((k - 3) / 2, 2)], k),
                |k| linear_forest(&[((k - 1) / 2, 2)], 0),
            ),
        },
        FigureClaim {
            anchor: "cycle/even-cherries-member",
            applies: |k| !odd(k),
            text: |k| format!("{}P_3 ∈ M(C_{k}^3)", k / 2),
            kind: CycleMember(|k| linear_forest(&[(k / 2, 3)], 0)),
        },
        FigureClaim {
            anchor: "cycle/even-matching-cover",
            applies: |k| !odd(k),
            text: |k| format!("C_{k}^3 ⊆ {}P_2 ⊗ {}P_2", k / 2, k / 2),
            kind: CycleCover(
                |k| linear_forest(&[(k / 2, 2)], 0),
                |k| linear_forest(&[(k / 2, 2)], 0),
            ),
        },
    ]
}

/// Membership and containment claims about `C_k^3` for the parity of `k`;
/// `3 <= k <= 8`.
pub fn verify_figure_claims(k: usize, opts: &RecipeOptions) -> Result<VerificationReport> {
    if !(3..=8).contains(&k) {
        return Err(Error::param(format!(
            "figure claims are checked for 3 <= k <= 8, got {k}"
        )));
    }
    let cycle = blow_up(&Graph::cycle(k)?, 3)?;
    let cycle_family: GraphFamily = [&cycle].into_iter().collect();
    let claims: Vec<FigureClaim> = figure_claims()
        .into_iter()
        .filter(|c| (c.applies)(k))
        .collect();
    let checks: Vec<Result<Check>> = claims
        .par_iter()
        .map(|c| {
            let claim = (c.text)(k);
            match c.kind {
                ClaimKind::CycleMember(build) => {
                    let m = build(k)?;
                    let evidence = json!({ "graph": g6(&m), "family": [g6(&cycle)], "p": 2 });
                    Ok(
                        match within_budget(is_decomposition_member(
                            &m,
                            &cycle_family,
                            2,
                            &opts.containment,
                        ))? {
                            None => skipped(claim, c.anchor, evidence),
                            Some(ok) => Check {
                                claim,
                                anchor: c.anchor.into(),
                                status: Status::from_bool(ok),
                                evidence,
                            },
                        },
                    )
                }
                ClaimKind::CycleCover(left, right) => {
                    let pattern = &cycle;
                    let host = Graph::join(&left(k)?, &right(k)?)?;
                    let mut evidence = json!({ "host": g6(&host), "pattern": g6(pattern) });
                    Ok(
                        match within_budget(contains_with(&host, pattern, &opts.containment))? {
                            None => skipped(claim, c.anchor, evidence),
                            Some(w) => {
                                let ok = w.as_ref().is_some_and(|w| w.validate(&host, pattern));
                                if let Some(w) = w {
                                    evidence["witness"] = json!(w);
                                }
                                Check {
                                    claim,
                                    anchor: c.anchor.into(),
                                    status: Status::from_bool(ok),
                                    evidence,
                                }
                            }
                        },
                    )
                }
            }
        })
        .collect();
    let mut report = VerificationReport::new("figures", params(json!({ "k": k })));
    for c in checks {
        report.push(c?);
    }
    Ok(report)
}

/// Replaces every argument token equal to `n` in a spec template such as
/// `h:n,2,3` or `hstar:n`.
pub fn instantiate(template: &str, n: usize) -> Result<ConstructionSpec> {
    let mut out = String::new();
    let mut token = String::new();
    let flush = |token: &mut String, out: &mut String| {
        if token == "n" {
            out.push_str(&n.to_string());
        } else {
            out.push_str(token);
        }
        token.clear();
    };
    for ch in template.chars() {
        if matches!(ch, ':' | ',' | '+' | '*' | '(' | ')') {
            flush(&mut token, &mut out);
            out.push(ch);
        } else {
            token.push(ch);
        }
    }
    flush(&mut token, &mut out);
    out.parse()
}

/// Checks that the construction `template` (see [`instantiate`]) is free of
/// `forbidden` for every `n` in the range.
pub fn verify_freeness_sweep(
    template: &str,
    forbidden: &GraphFamily,
    ns: RangeInclusive<usize>,
    opts: &RecipeOptions,
) -> Result<VerificationReport> {
    let ns: Vec<usize> = ns.collect();
    let checks: Vec<Result<Check>> = ns
        .par_iter()
        .map(|&n| {
            let spec = instantiate(template, n)?;
            let g = spec.build()?;
            let claim = format!("{spec} is free of the forbidden family");
            let evidence =
                json!({ "n": n, "construction": spec.to_string(), "edges": g.edge_count() });
            Ok(
                match within_budget(is_family_free(&g, forbidden, &opts.containment))? {
                    None => skipped(claim, "construction-freeness", evidence),
                    Some(Freeness::Free) => Check {
                        claim,
                        anchor: "construction-freeness".into(),
                        status: Status::Pass,
                        evidence,
                    },
                    Some(Freeness::Contains { member, witness }) => Check {
                        claim,
                        anchor: "construction-freeness".into(),
                        status: Status::Fail,
                        evidence: json!({
                            "n": n,
                            "construction": spec.to_string(),
                            "edges": g.edge_count(),
                            "host": g6(&g),
                            "member": g6(&member),
                            "witness": witness,
                        }),
                    },
                },
            )
        })
        .collect();
    let mut report = VerificationReport::new(
        "freeness",
        params(json!({
            "construction": template,
            "forbidden": forbidden.family_key(),
            "n_min": ns.first(),
            "n_max": ns.last(),
        })),
    );
    for c in checks {
        report.push(c?);
    }
    Ok(report)
}

/// Compares the decomposition family of `h^{p+1}` computed from the
/// definition with the split family of `h`, for each base graph.
pub fn verify_split_decomposition(
    bases: &[Graph],
    p: usize,
    opts: &RecipeOptions,
) -> Result<VerificationReport> {
    if p < 2 {
        return Err(Error::param(format!("p must be >= 2, got {p}")));
    }
    let mut report = VerificationReport::new(
        "split-decomposition",
        params(json!({ "bases": bases.iter().map(g6).collect::<Vec<_>>(), "p": p })),
    );
    for h in bases {
        let claim = format!(
            "M({}^{}) equals the split family of the base",
            crate::graph6::encode(h),
            p + 1
        );
        let target = blow_up(h, p + 1)?;
        let mut query = DecompositionQuery::new([&target].into_iter().collect()).with_p(p);
        query.containment = opts.containment;
        let general = decomposition_family_general(&query)?;
        let split = split_family(h, DEFAULT_SPLIT_CAP)?;
        let only_general: Vec<&str> = general
            .family
            .canonical_forms()
            .filter(|f| !split.contains_iso(&f.graph()))
            .map(|f| f.as_str())
            .collect();
        let only_split: Vec<&str> = split
            .canonical_forms()
            .filter(|f| !general.family.contains_iso(&f.graph()))
            .map(|f| f.as_str())
            .collect();
        let chi = chromatic_number(h)?;
        let evidence = json!({
            "base": g6(h),
            "general": general.family,
            "split": split,
            "only_general": only_general,
            "only_split": only_split,
            "candidates_examined": general.candidates_examined,
            "base_chromatic_number": chi,
        });
        if chi > p - 1 {
            report.note(format!(
                "{} has chromatic number {chi} > p - 1; equality is checked beyond the usual hypothesis",
                crate::graph6::encode(h)
            ));
        }
        report.push(if general.authoritative {
            Check {
                claim,
                anchor: "blow-up-split-decomposition".into(),
                status: Status::from_bool(only_general.is_empty() && only_split.is_empty()),
                evidence,
            }
        } else {
            skipped(claim, "blow-up-split-decomposition", evidence)
        });
    }
    Ok(report)
}

fn mode_name(m: SolverMode) -> &'static str {
    match m {
        SolverMode::Enumerate => "enumerate",
        SolverMode::BranchBound => "branch_bound",
    }
}

fn result_evidence(r: &ExtremalResult) -> Value {
    json!({
        "mode": mode_name(r.mode),
        "max_edges": r.max_edges,
        "complete": r.complete,
        "witnesses": r.extremal,
        "witness_overflow": r.witness_overflow,
    })
}

/// `ex(m, {S_k, M_k})` equals the additive constant of the star blow-up
/// formula for every `m` in the range, in each solver mode.
pub fn verify_star_constant(
    k: usize,
    p: usize,
    ms: RangeInclusive<usize>,
    modes: &[SolverMode],
    opts: &RecipeOptions,
) -> Result<VerificationReport> {
    if k < 1 {
        return Err(Error::param("k must be at least 1"));
    }
    let family: GraphFamily = [Graph::star(k)?, Graph::matching(k)?].into_iter().collect();
    let constant = star_constant(k);
    let mut report = VerificationReport::new(
        "star-constant",
        params(
            json!({ "k": k, "p": p, "m_min": ms.start(), "m_max": ms.end(), "constant": constant }),
        ),
    );
    report.note(format!(
        "the constant is the excess of ex(n, S_{k}^{}) over the Turán number for large n",
        p + 1
    ));
    for m in ms {
        for &mode in modes {
            let r = ex(m, &family, mode, &opts.search)?;
            let claim = format!(
                "ex({m}, {{S_{k}, M_{k}}}) = {constant} [{}]",
                mode_name(mode)
            );
            let evidence = result_evidence(&r);
            report.push(if r.complete {
                Check {
                    claim,
                    anchor: "star-blow-up-constant".into(),
                    status: Status::from_bool(r.max_edges == constant),
                    evidence,
                }
            } else {
                skipped(claim, "star-blow-up-constant", evidence)
            });
        }
    }
    Ok(report)
}
