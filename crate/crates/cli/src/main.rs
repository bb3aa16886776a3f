use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use turan_core::containment::{contains_with, ContainmentOptions};
use turan_core::decomposition::{
    decomposition_family_blowup, decomposition_family_general, CandidateSpace, DecompositionQuery,
};
use turan_core::extremal::cache::{cache_get, cache_put, CacheKey};
use turan_core::extremal::{ex, ExtremalResult, SearchBudget, SolverMode};
use turan_core::invariants::{invariants, DEFAULT_EXACT_CAP};
use turan_core::lab::{
    classify_tree, emit_report, predicted_value, recipes, ReportFormat, Target, VerificationReport,
};
use turan_core::spec::{parse_graph_list, ConstructionSpec};
use turan_core::split::split_family;
use turan_core::{graph6, Graph, GraphFamily};

#[derive(Parser)]
#[command(
    name = "turanlab",
    version,
    about = "Blow-up constructions, decomposition families and exact extremal numbers"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// JSON-lines cache of solver results.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Node budget for searches.
    #[arg(long, global = true)]
    budget_nodes: Option<u64>,
    /// Wall-clock budget in seconds for extremal searches.
    #[arg(long, global = true)]
    budget_seconds: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Human,
    G6,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Enum,
    Bb,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Build a construction and print it.
    Construct { spec: String },
    /// Split family of a graph.
    Split {
        spec: String,
        #[arg(long, default_value_t = turan_core::split::DEFAULT_SPLIT_CAP)]
        cap: usize,
    },
    /// Decomposition family of a forbidden family.
    Decomp {
        /// Comma-separated construction specs.
        #[arg(long)]
        forbid: Option<String>,
        #[arg(long)]
        p: Option<usize>,
        /// `<base spec>,<p>`: split family of the base, valid for its (p+1)-blow-up.
        #[arg(long)]
        fast_blowup: Option<String>,
        /// With --fast-blowup, also compute the family from the definition and compare.
        #[arg(long)]
        cross_check: bool,
        /// Use every edge subset of each forbidden graph as a candidate.
        #[arg(long)]
        all_subgraphs: bool,
    },
    /// Subgraph containment test.
    Contains {
        #[arg(long)]
        host: String,
        #[arg(long)]
        pattern: String,
        /// Print the embedding.
        #[arg(long)]
        witness: bool,
    },
    /// Exact extremal number ex(n, F).
    Ex {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        forbid: String,
        #[arg(long, value_enum, default_value = "bb")]
        mode: Mode,
        /// Report every extremal graph (up to the witness cap) instead of one.
        #[arg(long)]
        all_extremal: bool,
    },
    /// Colour-class classification of a tree.
    ClassifyTree { spec: String },
    /// Predicted extremal edge count.
    Predict {
        #[arg(long, value_enum)]
        family: PredictFamily,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        n: usize,
        /// Tree spec for `--family tree`.
        #[arg(long)]
        tree: Option<String>,
    },
    /// Verification recipes.
    #[command(subcommand)]
    Verify(Verify),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PredictFamily {
    Star,
    Path,
    Cycle,
    Tree,
}

#[derive(Subcommand)]
enum Verify {
    /// Membership and containment claims about C_k^3.
    Figures {
        #[arg(long)]
        k: usize,
    },
    /// A construction template (e.g. `h:n,2,3`) is free of a family over a range of n.
    Freeness {
        #[arg(long)]
        construction: String,
        #[arg(long)]
        forbid: String,
        /// Inclusive range `A..B`.
        #[arg(long, value_parser = parse_range)]
        n_range: RangeInclusive<usize>,
    },
    /// K_{a-1} ⊗ I_m is free of the split family of a case-I tree.
    Tfree {
        #[arg(long)]
        tree: String,
        #[arg(long)]
        m: usize,
    },
    /// Decomposition family of h^{p+1} from the definition equals the split family of h.
    #[command(alias = "lemma2")]
    SplitDecomposition {
        /// Comma-separated base graph specs.
        #[arg(long)]
        bases: String,
        #[arg(long, default_value_t = 3)]
        p: usize,
    },
    /// ex(m, {S_k, M_k}) equals the star blow-up constant.
    #[command(alias = "theorem1")]
    StarConstant {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        p: usize,
        #[arg(long, value_parser = parse_range)]
        m_range: RangeInclusive<usize>,
        #[arg(long, value_enum, default_value = "both")]
        mode: Mode,
    },
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, got `{s}`"))?;
    let a: usize = a
        .trim()
        .parse()
        .map_err(|_| format!("bad range start `{a}`"))?;
    let b: usize = b
        .trim()
        .trim_start_matches('=')
        .parse()
        .map_err(|_| format!("bad range end `{b}`"))?;
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok(a..=b)
}

fn spec(s: &str) -> Result<ConstructionSpec> {
    s.parse()
        .with_context(|| format!("parsing construction `{s}`"))
}

fn graph(s: &str) -> Result<Graph> {
    Ok(spec(s)?.build()?)
}

fn family(s: &str) -> Result<GraphFamily> {
    let graphs = parse_graph_list(s)?;
    if graphs.is_empty() {
        bail!("empty forbidden family");
    }
    Ok(graphs.into_iter().collect())
}

fn modes(m: Mode) -> Vec<SolverMode> {
    match m {
        Mode::Enum => vec![SolverMode::Enumerate],
        Mode::Bb => vec![SolverMode::BranchBound],
        Mode::Both => vec![SolverMode::Enumerate, SolverMode::BranchBound],
    }
}

struct Ctx {
    global: Global,
    out: std::io::StdoutLock<'static>,
}

impl Ctx {
    fn containment(&self) -> ContainmentOptions {
        let mut o = ContainmentOptions::default();
        if let Some(n) = self.global.budget_nodes {
            o.node_budget = n;
        }
        o
    }

    fn budget(&self) -> SearchBudget {
        let mut b = SearchBudget::default();
        if let Some(n) = self.global.budget_nodes {
            b.max_nodes = n;
        }
        if let Some(s) = self.global.budget_seconds {
            b.max_seconds = s;
        }
        if let Some(t) = self.global.threads {
            b.workers = t;
        }
        b
    }

    fn recipe_options(&self) -> recipes::RecipeOptions {
        recipes::RecipeOptions {
            containment: self.containment(),
            search: self.budget(),
        }
    }

    fn format(&self, default: Format) -> Format {
        self.global.format.unwrap_or(default)
    }

    fn json(&mut self, v: &serde_json::Value) -> Result<()> {
        writeln!(self.out, "{}", serde_json::to_string_pretty(v)?)?;
        Ok(())
    }

    fn family(&mut self, f: &GraphFamily, default: Format) -> Result<()> {
        match self.format(default) {
            Format::Json => self.json(&json!(f)),
            _ => {
                for g in f.family_key() {
                    writeln!(self.out, "{g}")?;
                }
                Ok(())
            }
        }
    }

    fn report(&mut self, r: &VerificationReport) -> Result<bool> {
        let fmt = match self.format(Format::Human) {
            Format::Json => ReportFormat::Json,
            Format::Tsv => ReportFormat::Tsv,
            Format::Human | Format::G6 => ReportFormat::Human,
        };
        self.out.write_all(&emit_report(r, fmt))?;
        Ok(r.passed())
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(t) = cli.global.threads {
        if let Err(e) = rayon_threads(t) {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    }
    let mut ctx = Ctx {
        global: cli.global,
        out: std::io::stdout().lock(),
    };
    match run(&mut ctx, cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn rayon_threads(t: usize) -> Result<()> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(t)
        .build_global()
        .map_err(|e| anyhow!("{e}"))
}

fn run(ctx: &mut Ctx, command: Command) -> Result<bool> {
    match command {
        Command::Construct { spec: s } => {
            let sp = spec(&s)?;
            let g = sp.build()?;
            match ctx.format(Format::G6) {
                Format::Json => ctx.json(&json!({
                    "spec": sp.to_string(),
                    "graph6": graph6::encode(&g),
                    "n": g.n(),
                    "edges": g.edge_count(),
                    "invariants": invariants(&g, DEFAULT_EXACT_CAP.min(24)),
                }))?,
                _ => writeln!(ctx.out, "{}", graph6::encode(&g))?,
            }
            Ok(true)
        }
        Command::Split { spec: s, cap } => {
            let f = split_family(&graph(&s)?, cap)?;
            ctx.family(&f, Format::G6)?;
            Ok(true)
        }
        Command::Decomp {
            forbid,
            p,
            fast_blowup,
            cross_check,
            all_subgraphs,
        } => decomp(ctx, forbid, p, fast_blowup, cross_check, all_subgraphs),
        Command::Contains {
            host,
            pattern,
            witness,
        } => {
            let h = graph(&host)?;
            let pat = graph(&pattern)?;
            let w = contains_with(&h, &pat, &ctx.containment())?;
            match ctx.format(Format::Human) {
                Format::Json => ctx.json(&json!({ "contains": w.is_some(), "witness": w }))?,
                _ => {
                    writeln!(ctx.out, "{}", w.is_some())?;
                    if let (true, Some(w)) = (witness, &w) {
                        writeln!(ctx.out, "{}", serde_json::to_string(w)?)?;
                    }
                }
            }
            Ok(true)
        }
        Command::Ex {
            n,
            forbid,
            mode,
            all_extremal,
        } => extremal(ctx, n, &forbid, mode, all_extremal),
        Command::ClassifyTree { spec: s } => {
            let c = classify_tree(&graph(&s)?)?;
            match ctx.format(Format::Human) {
                Format::Json => ctx.json(&json!(c))?,
                _ => {
                    writeln!(ctx.out, "verdict: {:?}", c.verdict)?;
                    writeln!(ctx.out, "A = {:?}, B = {:?}", c.a, c.b)?;
                    writeln!(
                        ctx.out,
                        "leaf in A: {}, alpha = |B|: {}, min degree in A is 2: {}",
                        c.leaf_in_a, c.alpha_equals_b, c.min_degree_a_is_two
                    )?;
                    match c.predicted {
                        Some(p) => writeln!(ctx.out, "predicted: {:?}(n, p, {})", p.kind, p.s)?,
                        None => writeln!(ctx.out, "predicted: none")?,
                    }
                    for note in &c.notes {
                        writeln!(ctx.out, "note: {note}")?;
                    }
                }
            }
            Ok(true)
        }
        Command::Predict {
            family,
            k,
            p,
            n,
            tree,
        } => {
            let need_k = || k.ok_or_else(|| anyhow!("--k is required for this family"));
            let target = match family {
                PredictFamily::Star => Target::Star { k: need_k()?, p },
                PredictFamily::Path => Target::Path { k: need_k()?, p },
                PredictFamily::Cycle => Target::Cycle { k: need_k()?, p },
                PredictFamily::Tree => Target::Tree {
                    tree: graph(
                        tree.as_deref()
                            .ok_or_else(|| anyhow!("--tree is required"))?,
                    )?,
                    p,
                },
            };
            let v = predicted_value(&target, n)?;
            match ctx.format(Format::Human) {
                Format::Json => {
                    ctx.json(&json!({ "prediction": v, "note": v.threshold_note() }))?
                }
                _ => {
                    writeln!(ctx.out, "{} ({})", v.edges, v.construction)?;
                    if let Some(note) = v.threshold_note() {
                        writeln!(ctx.out, "note: {note}")?;
                    }
                }
            }
            Ok(true)
        }
        Command::Verify(v) => verify(ctx, v),
    }
}

fn decomp(
    ctx: &mut Ctx,
    forbid: Option<String>,
    p: Option<usize>,
    fast_blowup: Option<String>,
    cross_check: bool,
    all_subgraphs: bool,
) -> Result<bool> {
    let candidates = if all_subgraphs {
        CandidateSpace::AllSubgraphs
    } else {
        CandidateSpace::Induced
    };
    if let Some(fb) = fast_blowup {
        let (base, bp) = fb
            .rsplit_once(',')
            .ok_or_else(|| anyhow!("--fast-blowup expects <spec>,<p>"))?;
        let bp: usize = bp.trim().parse().context("--fast-blowup p")?;
        let h = graph(base)?;
        let fast = decomposition_family_blowup(&h, bp)?;
        ctx.family(&fast, Format::G6)?;
        if !cross_check {
            return Ok(true);
        }
        let target = turan_core::constructions::blow_up(&h, bp + 1)?;
        let mut q = DecompositionQuery::new([&target].into_iter().collect()).with_p(bp);
        q.candidates = candidates;
        q.containment = ctx.containment();
        let general = decomposition_family_general(&q)?;
        let agree = general.family == fast;
        eprintln!(
            "cross-check: {} ({} members from the definition, authoritative: {})",
            if agree { "agree" } else { "DISAGREE" },
            general.family.len(),
            general.authoritative
        );
        return Ok(agree && general.authoritative);
    }
    let forbid = forbid.ok_or_else(|| anyhow!("--forbid or --fast-blowup is required"))?;
    let mut q = DecompositionQuery::new(family(&forbid)?);
    q.p = p;
    q.candidates = candidates;
    q.containment = ctx.containment();
    let d = decomposition_family_general(&q)?;
    if !d.authoritative {
        eprintln!("warning: a cap or budget was hit; the family may be incomplete");
    }
    match ctx.format(Format::G6) {
        Format::Json => ctx.json(&json!({
            "p": d.p,
            "family": d.family,
            "authoritative": d.authoritative,
            "candidates_examined": d.candidates_examined,
        }))?,
        _ => ctx.family(&d.family, Format::G6)?,
    }
    Ok(d.authoritative)
}

fn solve(
    ctx: &Ctx,
    n: usize,
    fam: &GraphFamily,
    mode: SolverMode,
    all_extremal: bool,
) -> Result<ExtremalResult> {
    let key = CacheKey::new(n, fam, mode);
    if let Some(path) = &ctx.global.cache {
        if let Some(rec) = cache_get(path, &key)? {
            if rec.result.complete
                && (all_extremal
                    || mode == SolverMode::Enumerate
                    || !rec.result.extremal.is_empty())
            {
                log::info!(
                    "cache hit (solver {} at {})",
                    rec.solver_version,
                    rec.timestamp
                );
                return Ok(rec.result);
            }
        }
    }
    let mut budget = ctx.budget();
    budget.all_extremal = all_extremal;
    let r = ex(n, fam, mode, &budget)?;
    if let Some(path) = &ctx.global.cache {
        if r.complete && (all_extremal || mode == SolverMode::Enumerate) {
            cache_put(path, &r)?;
        }
    }
    Ok(r)
}

fn extremal(ctx: &mut Ctx, n: usize, forbid: &str, mode: Mode, all_extremal: bool) -> Result<bool> {
    let fam = family(forbid)?;
    let results = modes(mode)
        .into_iter()
        .map(|m| solve(ctx, n, &fam, m, all_extremal))
        .collect::<Result<Vec<_>>>()?;
    let complete = results.iter().all(|r| r.complete);
    let agree = results.windows(2).all(|w| {
        w[0].max_edges == w[1].max_edges && (!all_extremal || w[0].extremal == w[1].extremal)
    });
    match ctx.format(Format::Json) {
        Format::Json => {
            let v = if results.len() == 1 {
                json!(results[0])
            } else {
                json!({ "results": results, "agree": agree })
            };
            ctx.json(&v)?;
        }
        Format::Tsv => {
            writeln!(
                ctx.out,
                "mode\tn\tmax_edges\tcomplete\twitnesses\twitness_overflow"
            )?;
            for r in &results {
                let mode = serde_json::to_value(r.mode)?;
                writeln!(
                    ctx.out,
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    mode.as_str().unwrap_or_default(),
                    r.n,
                    r.max_edges,
                    r.complete,
                    r.extremal.len(),
                    r.witness_overflow
                )?;
            }
        }
        fmt @ (Format::G6 | Format::Human) => {
            for r in &results {
                if fmt == Format::Human {
                    let mode = serde_json::to_value(r.mode)?;
                    writeln!(
                        ctx.out,
                        "ex({}, F) = {} [{}]{}",
                        r.n,
                        r.max_edges,
                        mode.as_str().unwrap_or_default(),
                        if r.witness_overflow {
                            " (witness list truncated)"
                        } else {
                            ""
                        }
                    )?;
                }
                if !r.complete {
                    eprintln!(
                        "warning: search incomplete; {} is a lower bound",
                        r.max_edges
                    );
                }
            }
            let shown = if all_extremal {
                results[0].extremal.family_key()
            } else {
                results[0]
                    .extremal
                    .family_key()
                    .into_iter()
                    .take(1)
                    .collect()
            };
            for g in shown {
                writeln!(ctx.out, "{g}")?;
            }
        }
    }
    if !agree {
        eprintln!("error: solver modes disagree");
    }
    Ok(complete && agree)
}

fn verify(ctx: &mut Ctx, v: Verify) -> Result<bool> {
    let opts = ctx.recipe_options();
    let report = match v {
        Verify::Figures { k } => recipes::verify_figure_claims(k, &opts)?,
        Verify::Freeness {
            construction,
            forbid,
            n_range,
        } => recipes::verify_freeness_sweep(&construction, &family(&forbid)?, n_range, &opts)?,
        Verify::Tfree { tree, m } => recipes::verify_lemma_tfree(&graph(&tree)?, m, &opts)?,
        Verify::SplitDecomposition { bases, p } => {
            recipes::verify_split_decomposition(&parse_graph_list(&bases)?, p, &opts)?
        }
        Verify::StarConstant {
            k,
            p,
            m_range,
            mode,
        } => recipes::verify_star_constant(k, p, m_range, &modes(mode), &opts)?,
    };
    ctx.report(&report)
}
