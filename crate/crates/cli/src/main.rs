use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kgraph::boundary::BoundPolicy;
use kgraph::catalog;
use kgraph::function::CompactOp;
use kgraph::oracle::{cross_check, PrefixUniverse};
use kgraph::{
    parse_degree, parse_graph, Degree, Dynamics, Error, FeWitness, KGraph, Outcome, Path, ProductSystem, Report,
    SpanCap, Verifier, WeightKind,
};

/// `println!` that stops quietly when the reader goes away.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if let Err(e) = writeln!(std::io::stdout(), $($arg)*) {
            if e.kind() != std::io::ErrorKind::BrokenPipe {
                eprintln!("error: {e}");
                std::process::exit(2);
            }
            std::process::exit(0);
        }
    }};
}

#[derive(Parser)]
#[command(name = "kgraph", version, about = "Exact combinatorics and operator checks for finite k-graphs")]
struct Cli {
    /// Graph definition file.
    #[arg(long, global = true, conflicts_with = "builtin")]
    graph: Option<String>,
    /// A built-in example graph instead of a file.
    #[arg(long, global = true)]
    builtin: Option<String>,
    /// Degree bound for exhaustiveness and emptiness checks (overrides the
    /// automatic choice).
    #[arg(long, global = true)]
    bound: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Jsonl,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Weights {
    Uniform,
    Normalized,
    Regular,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SetOp {
    Intersect,
    Union,
    Difference,
    Symdiff,
    Complement,
    Empty,
    Reduce,
    Refine,
    Image,
    Preimage,
    SliceContains,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate the graph.
    Validate,
    /// Minimal common extensions Λ^min(λ,μ).
    Mce { lambda: String, mu: String },
    /// Ext(λ;E) for a comma-separated E.
    Ext { lambda: String, set: String },
    /// Whether E ⊆ vΛ is exhaustive.
    Exhaustive {
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        set: String,
    },
    /// Boolean-algebra operations on cylinder sets.
    SetAlgebra {
        #[arg(value_enum)]
        op: SetOp,
        a: String,
        b: Option<String>,
        /// Degree argument for refine, image, preimage and slice-contains.
        #[arg(long)]
        n: Option<String>,
    },
    /// CK1–CK4 on spanning vectors within the cap.
    CkCheck {
        #[arg(long)]
        cap: String,
    },
    /// Nica covariance of range projections within the cap.
    NicaCheck {
        #[arg(long)]
        cap: String,
    },
    /// CK4 and generator extension for one finite exhaustive set.
    Ck4Check {
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        set: String,
        #[arg(long)]
        cap: Option<String>,
        /// Width w of the range s ∈ r + {0..w}^k.
        #[arg(long, default_value_t = 1)]
        s_range: u32,
    },
    /// The X̃-level computation for every enumerated finite exhaustive set.
    CpCheck {
        #[arg(long)]
        cap: String,
        #[arg(long, default_value_t = 1)]
        s_range: u32,
    },
    /// compact_align against sequential ι on generator pairs within the cap.
    CompactAlignCheck {
        #[arg(long)]
        cap: String,
        /// Largest number of avoided paths in generator sets.
        #[arg(long, default_value_t = 1)]
        max_avoid: usize,
    },
    /// Transfer-operator identities.
    ExelCheck {
        #[arg(long)]
        n: String,
        #[arg(long, value_enum, default_value_t = Weights::Uniform)]
        weights: Weights,
        #[arg(long)]
        cap: String,
    },
    /// Cross-check the engine against prefix semantics.
    OracleCheck {
        #[arg(long)]
        degree: String,
        #[arg(long)]
        cap: Option<String>,
        #[arg(long, default_value_t = 2)]
        max_avoid: usize,
    },
    /// Every check with default settings.
    Report {
        #[arg(long)]
        cap: String,
    },
}

fn load(cli: &Cli) -> Result<KGraph, String> {
    match (&cli.graph, &cli.builtin) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
            parse_graph(&text).map_err(|e| format!("{path}: {e}"))
        }
        (None, Some(name)) => catalog::builtin(name)
            .ok_or_else(|| format!("unknown builtin `{name}`; known: {}", catalog::BUILTIN_NAMES.join(", "))),
        (None, None) => Err("one of --graph or --builtin is required".into()),
    }
}

fn path_list(g: &KGraph, text: &str) -> Result<Vec<Path>, Error> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty()).map(|s| g.parse_path(s)).collect()
}

fn vertex(g: &KGraph, name: &str) -> Result<u32, String> {
    g.skeleton().vertex_id(name).ok_or_else(|| format!("unknown vertex `{name}`"))
}

fn emit(report: &Report, format: Format) {
    for line in report.lines() {
        match format {
            Format::Text => out!("{line}"),
            Format::Jsonl => {
                let (ok, witness) = match &line.outcome {
                    Outcome::Ok => (true, None),
                    Outcome::Fail(w) => (false, Some(w.clone())),
                };
                let rec = serde_json::json!({
                    "name": line.name,
                    "instance": line.instance,
                    "ok": ok,
                    "witness": witness,
                });
                out!("{rec}");
            }
        }
    }
}

fn align_report(v: &Verifier, ps: &ProductSystem, cap: &Degree, max_avoid: usize) -> Report {
    let span = SpanCap::uniform(cap.clone()).with_max_avoid(max_avoid);
    let ops = |m: &Degree| -> Vec<CompactOp> {
        let gens = ps.spanning_x(m, &span);
        let mut out = Vec::new();
        for a in &gens {
            for b in &gens {
                out.push(CompactOp::theta(m.clone(), a.clone(), b.clone()));
            }
        }
        out
    };
    let mut r = Report::new();
    let levels = cap.below();
    for m in &levels {
        for n in &levels {
            let mn = m.join(n);
            let vectors: Vec<_> = ps
                .spanning_x(&mn, &SpanCap::uniform(cap.join(&mn)).with_max_avoid(0))
                .into_iter()
                .map(|b| kgraph::CylinderFunction::indicator(mn.clone(), b))
                .collect();
            let inst = format!("m={m},n={n}");
            r.push("COMPACT-ALIGN", &inst, v.align_family(&ops(m), &ops(n), &vectors).map(|_| ()));
        }
    }
    r
}

fn exel_report(ps: &ProductSystem, n: &Degree, weights: Weights, cap: &Degree) -> Result<Report, Error> {
    let dy = Dynamics::new(ps);
    let kind = match weights {
        Weights::Uniform => WeightKind::Uniform,
        Weights::Normalized => WeightKind::Normalized,
        Weights::Regular => WeightKind::Regular(dy.regularity().ok_or(Error::RegularityRequired)?.to_vec()),
    };
    let mut r = dy.check_transfer_identity(n, cap, &kind)?;
    r.extend(dy.check_inner_product(n, cap)?);
    r.extend(dy.check_normalized_inverse(n, cap)?);
    if matches!(kind, WeightKind::Regular(_)) {
        r.extend(dy.check_omega(cap)?);
    }
    Ok(r)
}

fn run(cli: &Cli) -> Result<bool, String> {
    let g = load(cli)?;
    let k = g.rank();
    let deg = |s: &str| parse_degree(s, k).map_err(|e| e.to_string());
    let alg = match &cli.bound {
        Some(b) => kgraph::BoundaryAlgebra::with_policy(&g, BoundPolicy::Fixed(deg(b)?)),
        None => kgraph::BoundaryAlgebra::new(&g),
    };
    let ps = ProductSystem::new(alg);
    let alg = ps.alg();
    let e = |err: Error| err.to_string();

    let report = match &cli.command {
        Command::Validate => {
            let s = g.skeleton();
            out!("valid k={} vertices={} edges={} squares={}", k, s.vertices.len(), s.edges.len(), s.squares.len());
            return Ok(true);
        }
        Command::Mce { lambda, mu } => {
            let (l, m) = (g.parse_path(lambda).map_err(e)?, g.parse_path(mu).map_err(e)?);
            for (a, b) in g.lambda_min(&l, &m).map_err(e)?.iter() {
                out!("({},{})", g.path_name(a), g.path_name(b));
            }
            return Ok(true);
        }
        Command::Ext { lambda, set } => {
            let l = g.parse_path(lambda).map_err(e)?;
            let set = path_list(&g, set).map_err(e)?;
            let out: Vec<String> = g.ext(&l, &set).map_err(e)?.iter().map(|p| g.path_name(p)).collect();
            out!("{{{}}}", out.join(","));
            return Ok(true);
        }
        Command::Exhaustive { vertex: v, set } => {
            let v = vertex(&g, v)?;
            let set = path_list(&g, set).map_err(e)?;
            let bound = alg.bound_for(&set);
            return match g.exhaustive_witness(v, &set, &bound).map_err(e)? {
                None => {
                    out!("exhaustive bound={bound}");
                    Ok(true)
                }
                Some(w) => {
                    out!("not exhaustive bound={bound} witness={}", g.path_name(&w));
                    Ok(false)
                }
            };
        }
        Command::SetAlgebra { op, a, b, n } => {
            let a = alg.union_of(&alg.parse_set(a).map_err(e)?);
            let b = match b {
                Some(b) => Some(alg.union_of(&alg.parse_set(b).map_err(e)?)),
                None => None,
            };
            let need_b = || b.clone().ok_or_else(|| "this operation needs a second set".to_string());
            let need_n = || n.as_deref().map(deg).unwrap_or_else(|| Err("this operation needs --n".into()));
            let single = || -> Result<kgraph::BasicSet, String> {
                match a.parts() {
                    [p] => Ok(p.clone()),
                    _ => Err("this operation needs a single nonempty basic set".into()),
                }
            };
            let out = match op {
                SetOp::Intersect => alg.intersect(&a, &need_b()?),
                SetOp::Union => alg.union(&a, &need_b()?),
                SetOp::Difference => alg.difference(&a, &need_b()?),
                SetOp::Symdiff => alg.symmetric_difference(&a, &need_b()?),
                SetOp::Complement => {
                    let amb = need_b()?;
                    let [amb] = amb.parts() else {
                        return Err("the ambient set must be a single nonempty basic set".into());
                    };
                    alg.complement_within(&a, amb).map_err(e)?
                }
                SetOp::Empty => {
                    out!("{}", alg.is_empty_set(&a));
                    return Ok(true);
                }
                SetOp::SliceContains => {
                    let n = need_n()?;
                    out!("{}", a.parts().iter().all(|p| alg.slice_contains(p, &n)));
                    return Ok(true);
                }
                SetOp::Reduce => alg.set_of(alg.reduce(&single()?)),
                SetOp::Refine => alg.refine_to_slice(&single()?, &need_n()?).map_err(e)?,
                SetOp::Image => alg.set_of(alg.sigma_image(&single()?, &need_n()?).map_err(e)?),
                SetOp::Preimage => alg.prune(alg.sigma_preimage(&single()?, &need_n()?)),
            };
            out!("{}", alg.show_set(&out));
            return Ok(true);
        }
        Command::CkCheck { cap } => {
            let v = Verifier::new(&ps, deg(cap)?).map_err(e)?;
            let mut r = v.check_ck1();
            r.extend(v.check_ck2());
            r.extend(v.check_ck3());
            for fe in v.fe_sets() {
                r.extend(v.check_ck4(&fe));
            }
            r
        }
        Command::NicaCheck { cap } => Verifier::new(&ps, deg(cap)?).map_err(e)?.check_nica(),
        Command::Ck4Check { vertex: vname, set, cap, s_range } => {
            let v = vertex(&g, vname)?;
            let set = path_list(&g, set).map_err(e)?;
            let fe = FeWitness::certify(alg, v, set).map_err(e)?;
            let join = g.join_degrees(fe.set());
            let cap = match cap {
                Some(c) => deg(c)?,
                None => join.clone(),
            };
            let ver = Verifier::new(&ps, cap).map_err(e)?.with_s_range(g.zero(), *s_range);
            let mut r = ver.check_ck4(&fe);
            for m in join.below() {
                r.extend(ver.check_generator_extension(&fe, &join, &m).map_err(e)?);
            }
            r
        }
        Command::CpCheck { cap, s_range } => {
            let cap = deg(cap)?;
            let ver = Verifier::new(&ps, cap.clone()).map_err(e)?.with_s_range(g.zero(), *s_range);
            let mut r = Report::new();
            for fe in ver.fe_sets() {
                r.extend(ver.check_cp(&fe));
            }
            for n in cap.below() {
                r.extend(ver.check_xtilde_dichotomy(&n));
            }
            r
        }
        Command::CompactAlignCheck { cap, max_avoid } => {
            let cap = deg(cap)?;
            let ver = Verifier::new(&ps, cap.clone()).map_err(e)?;
            align_report(&ver, &ps, &cap, *max_avoid)
        }
        Command::ExelCheck { n, weights, cap } => exel_report(&ps, &deg(n)?, *weights, &deg(cap)?).map_err(e)?,
        Command::OracleCheck { degree, cap, max_avoid } => {
            let m = deg(degree)?;
            let cap = match cap {
                Some(c) => deg(c)?,
                None => Degree::from_vec(m.coords().iter().map(|c| c / 2).collect()),
            };
            let u = PrefixUniverse::new(&g, m).map_err(e)?;
            cross_check(&ps, &u, &cap, *max_avoid).map_err(e)?
        }
        Command::Report { cap } => {
            let cap = deg(cap)?;
            let ver = Verifier::new(&ps, cap.clone()).map_err(e)?;
            let mut r = ver.check_all();
            for fe in ver.fe_sets() {
                r.extend(ver.check_cp(&fe));
            }
            r.extend(align_report(&ver, &ps, &cap, 0));
            for n in cap.below().into_iter().filter(|n| !n.is_zero()) {
                r.extend(exel_report(&ps, &n, Weights::Uniform, &cap).map_err(e)?);
            }
            if g.find_source().is_none() {
                let u = PrefixUniverse::new(&g, cap.add(&cap)).map_err(e)?;
                r.extend(cross_check(&ps, &u, &cap, 1).map_err(e)?);
            }
            r
        }
    };
    emit(&report, cli.format);
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
