//! Batch front door for the verification engine.
//!
//! Exit codes: 0 = pass / vanishes / equal, 1 = an exact identity check
//! failed, 2 = unknown (a sound procedure could not confirm), 3 = input
//! error, 4 = resource cap exceeded.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use pgpr_core::error::{Error, Limits};
use pgpr_core::parse::{
    load_presentation, parse_boolfn, parse_cp, parse_point, parse_word, MapFile, MatrixPairFile,
};
use pgpr_core::presentations::{
    check_ck_iso, check_morphism, check_partial_isometries, CheckReport,
};
use pgpr_core::relations::{default_bound, CpVerdict, OmegaChecker, Verdict, WitnessAssignment};
use pgpr_core::verify::run_core_suites;
use pgpr_core::{alpha, Context, Ctx};

#[derive(Parser)]
#[command(
    name = "pgpr",
    about = "Exact checks for partial group algebras with projections and relations",
    version
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Uniform resource cap (assignments, search nodes, enumerated words).
    #[arg(long, global = true)]
    cap: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct CtxOpts {
    /// Free generators, comma separated.
    #[arg(long, default_value = "a,b")]
    alphabet: String,
    /// Projection labels, comma separated (may be empty).
    #[arg(long, default_value = "1,2")]
    proj: String,
}

impl CtxOpts {
    fn build(&self) -> Result<Ctx, Error> {
        let split = |s: &str| -> Vec<String> {
            s.split(',')
                .map(str::trim)
                .filter(|p| !p.is_empty())
                .map(String::from)
                .collect()
        };
        Context::free(split(&self.alphabet), split(&self.proj))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a coordinate expression at a finitely supported point.
    Eval {
        #[command(flatten)]
        ctx: CtxOpts,
        /// Expression, e.g. "1[a;1] + -1 * 1[b]".
        #[arg(long)]
        expr: String,
        /// Point coordinates, e.g. "a, a;1, b".
        #[arg(long, default_value = "")]
        point: String,
    },
    /// Apply the partial action by a word to an expression.
    Act {
        #[command(flatten)]
        ctx: CtxOpts,
        /// Acting word.
        #[arg(long)]
        t: String,
        #[arg(long)]
        expr: String,
    },
    /// Multiply two formal sums.
    CpMul {
        #[command(flatten)]
        ctx: CtxOpts,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Adjoint of a formal sum.
    CpStar {
        #[command(flatten)]
        ctx: CtxOpts,
        #[arg(long)]
        expr: String,
    },
    /// ℓ¹-norm of a formal sum.
    CpNorm {
        #[command(flatten)]
        ctx: CtxOpts,
        #[arg(long)]
        expr: String,
    },
    /// Bounded check that an expression vanishes on the invariant set of a
    /// relation file (matrices, graph, or raw relation set).
    CheckVanish {
        /// Relation input file (JSON).
        #[arg(long)]
        rel: String,
        #[arg(long)]
        expr: String,
        /// Search bound; defaults to twice the largest word length involved.
        #[arg(long, short = 'L')]
        bound: Option<usize>,
    },
    /// Print the two-matrix presentation for a matrix pair file.
    CkBuild {
        #[arg(long)]
        matrices: String,
    },
    /// Print the graph presentation for a graph file.
    GraphBuild {
        #[arg(long)]
        graph: String,
    },
    /// Check that a generator map preserves the source relations.
    CheckMorphism {
        #[arg(long)]
        src: String,
        #[arg(long)]
        tgt: String,
        /// Map file: {"group_map": {gen: word}, "proj_map": {label: cp}}.
        #[arg(long)]
        map: String,
        #[arg(long, short = 'L', default_value_t = 2)]
        bound: usize,
    },
    /// For a permutation matrix B, check the canonical isomorphism of the
    /// two-matrix algebra with the one-matrix algebra of BᵗA.
    CheckCkIso {
        #[arg(long)]
        matrices: String,
        #[arg(long, short = 'L', default_value_t = 2)]
        bound: usize,
        /// Escalate up to this bound if the check comes back unknown.
        #[arg(long, default_value_t = 3)]
        max_bound: usize,
    },
    /// Partial-isometry and commuting-range checks for all short edge words
    /// of a graph.
    CheckGraph {
        #[arg(long)]
        graph: String,
        /// Maximum reduced word length to check.
        #[arg(long, default_value_t = 2)]
        word_bound: usize,
        #[arg(long, short = 'L', default_value_t = 2)]
        bound: usize,
    },
    /// Run the seeded exact identity suites over the core algebra.
    VerifyCore {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = cli.cap.map(Limits::with_cap).unwrap_or_default();
    match run(cli.command, cli.format, &limits) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::EnumerationCap { .. } => 4,
                _ => 3,
            };
            ExitCode::from(code)
        }
    }
}

fn witness_json(w: &WitnessAssignment) -> serde_json::Value {
    json!({
        "ones": w.ones.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "value": w.value.to_string(),
    })
}

fn report_json(report: &CheckReport) -> serde_json::Value {
    let items: Vec<serde_json::Value> = report
        .items
        .iter()
        .map(|item| match &item.verdict {
            CpVerdict::Equal => json!({"label": item.label, "verdict": "pass"}),
            CpVerdict::Unknown { at, witness } => json!({
                "label": item.label,
                "verdict": "unknown",
                "coefficient_at": at.to_string(),
                "witness": witness_json(witness),
            }),
        })
        .collect();
    json!({
        "bound": report.bound,
        "passed": report.items.iter().filter(|i| i.passed()).count(),
        "total": report.items.len(),
        "overall": if report.all_passed() { "pass" } else { "unknown" },
        "checks": items,
    })
}

fn print_report(report: &CheckReport, format: Format) {
    match format {
        Format::Json => println!("{}", report_json(report)),
        Format::Text => println!("{report}"),
    }
}

fn presentation_json(p: &pgpr_core::presentations::Presentation) -> serde_json::Value {
    // same shape as the raw relation-set input format
    json!({
        "alphabet": p.ctx().alphabet(),
        "projections": p.ctx().proj_labels(),
        "length_additivity": p.relations().has_length_additivity(),
        "relations": p.relations().explicit().iter().map(|f| f.to_string()).collect::<Vec<_>>(),
    })
}

fn read_file(path: &str) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Validation(format!("cannot read `{path}`: {e}")))
}

fn run(command: Command, format: Format, limits: &Limits) -> Result<u8, Error> {
    match command {
        Command::Eval { ctx, expr, point } => {
            let ctx = ctx.build()?;
            let f = parse_boolfn(&ctx, &expr)?;
            let xi = parse_point(&ctx, &point)?;
            let value = f.evaluate(&xi);
            match format {
                Format::Json => println!("{}", json!({"value": value.to_string()})),
                Format::Text => println!("{value}"),
            }
            Ok(0)
        }
        Command::Act { ctx, t, expr } => {
            let ctx = ctx.build()?;
            let t = parse_word(&ctx, &t)?;
            let f = parse_boolfn(&ctx, &expr)?;
            let result = alpha(&t, &f);
            match format {
                Format::Json => println!("{}", json!({"result": result.to_string()})),
                Format::Text => println!("{result}"),
            }
            Ok(0)
        }
        Command::CpMul { ctx, lhs, rhs } => {
            let ctx = ctx.build()?;
            let x = parse_cp(&ctx, &lhs)?;
            let y = parse_cp(&ctx, &rhs)?;
            let result = x.mul(&y);
            match format {
                Format::Json => println!("{}", json!({"result": result.to_string()})),
                Format::Text => println!("{result}"),
            }
            Ok(0)
        }
        Command::CpStar { ctx, expr } => {
            let ctx = ctx.build()?;
            let result = parse_cp(&ctx, &expr)?.star();
            match format {
                Format::Json => println!("{}", json!({"result": result.to_string()})),
                Format::Text => println!("{result}"),
            }
            Ok(0)
        }
        Command::CpNorm { ctx, expr } => {
            let ctx = ctx.build()?;
            let norm = parse_cp(&ctx, &expr)?.one_norm(limits)?;
            match format {
                Format::Json => println!(
                    "{}",
                    json!({
                        "norm": norm.to_string(),
                        "exact_rational": norm.as_rational().map(|r| r.to_string()),
                        "approx": norm.to_f64(),
                    })
                ),
                Format::Text => println!("{norm}"),
            }
            Ok(0)
        }
        Command::CheckVanish { rel, expr, bound } => {
            let p = load_presentation(&read_file(&rel)?)?;
            let f = parse_boolfn(p.ctx(), &expr)?;
            let bound = bound.unwrap_or_else(|| default_bound(&f, p.relations()));
            let checker = OmegaChecker::new(p.relations(), bound, limits)?;
            match checker.vanishes(&f)? {
                Verdict::Vanishes => {
                    match format {
                        Format::Json => println!(
                            "{}",
                            json!({"bound": bound, "verdict": "vanishes"})
                        ),
                        Format::Text => println!("vanishes (bound {bound})"),
                    }
                    Ok(0)
                }
                Verdict::Unknown(w) => {
                    match format {
                        Format::Json => println!(
                            "{}",
                            json!({
                                "bound": bound,
                                "verdict": "unknown",
                                "witness": witness_json(&w),
                            })
                        ),
                        Format::Text => {
                            let ones: Vec<String> =
                                w.ones.iter().map(|c| c.to_string()).collect();
                            println!(
                                "unknown (bound {bound}): value {} at assignment {{{}}}",
                                w.value,
                                ones.join(", ")
                            );
                        }
                    }
                    Ok(2)
                }
            }
        }
        Command::CkBuild { matrices } => {
            let file: MatrixPairFile = serde_json::from_str(&read_file(&matrices)?)
                .map_err(|e| Error::Parse(format!("matrix file: {e}")))?;
            let (a, b) = file.into_matrices()?;
            let p = pgpr_core::presentations::build_ck(&a, &b)?;
            print_presentation(&p, format);
            Ok(0)
        }
        Command::GraphBuild { graph } => {
            let file: pgpr_core::parse::GraphFile = serde_json::from_str(&read_file(&graph)?)
                .map_err(|e| Error::Parse(format!("graph file: {e}")))?;
            let p = pgpr_core::presentations::build_graph(&file.into_graph()?)?;
            print_presentation(&p, format);
            Ok(0)
        }
        Command::CheckMorphism {
            src,
            tgt,
            map,
            bound,
        } => {
            let src = load_presentation(&read_file(&src)?)?;
            let tgt = load_presentation(&read_file(&tgt)?)?;
            let map_file: MapFile = serde_json::from_str(&read_file(&map)?)
                .map_err(|e| Error::Parse(format!("map file: {e}")))?;
            let map = map_file.into_generator_map(src.ctx(), tgt.ctx())?;
            let report = check_morphism(&map, &src, &tgt, bound, limits)?;
            print_report(&report, format);
            Ok(if report.all_passed() { 0 } else { 2 })
        }
        Command::CheckCkIso {
            matrices,
            bound,
            max_bound,
        } => {
            let file: MatrixPairFile = serde_json::from_str(&read_file(&matrices)?)
                .map_err(|e| Error::Parse(format!("matrix file: {e}")))?;
            let (a, b) = file.into_matrices()?;
            let (_, _, report) = check_ck_iso(&a, &b, bound, max_bound, limits)?;
            print_report(&report, format);
            Ok(if report.all_passed() { 0 } else { 2 })
        }
        Command::CheckGraph {
            graph,
            word_bound,
            bound,
        } => {
            let file: pgpr_core::parse::GraphFile = serde_json::from_str(&read_file(&graph)?)
                .map_err(|e| Error::Parse(format!("graph file: {e}")))?;
            let graph = file.into_graph()?;
            let report = check_partial_isometries(&graph, word_bound, bound, limits)?;
            print_report(&report, format);
            Ok(if report.all_passed() { 0 } else { 2 })
        }
        Command::VerifyCore { seed, samples } => {
            let report = run_core_suites(seed, samples, limits)?;
            match format {
                Format::Json => {
                    let suites: Vec<serde_json::Value> = report
                        .suites
                        .iter()
                        .map(|s| {
                            json!({
                                "name": s.name,
                                "cases": s.cases,
                                "failures": s.failures,
                            })
                        })
                        .collect();
                    println!(
                        "{}",
                        json!({
                            "seed": report.seed,
                            "samples": report.samples,
                            "overall": if report.all_passed() { "pass" } else { "fail" },
                            "suites": suites,
                        })
                    );
                }
                Format::Text => {
                    for s in &report.suites {
                        let status = if s.passed() { "pass" } else { "FAIL" };
                        println!("{status:<5} {} ({} cases)", s.name, s.cases);
                        for f in &s.failures {
                            println!("      counterexample: {f}");
                        }
                    }
                }
            }
            Ok(if report.all_passed() { 0 } else { 1 })
        }
    }
}

fn print_presentation(p: &pgpr_core::presentations::Presentation, format: Format) {
    match format {
        Format::Json => println!("{}", presentation_json(p)),
        Format::Text => {
            println!("generators: {}", p.ctx().alphabet().join(", "));
            println!("projections: {}", p.ctx().proj_labels().join(", "));
            println!(
                "length additivity family: {}",
                if p.relations().has_length_additivity() {
                    "on"
                } else {
                    "off"
                }
            );
            println!("relations:");
            for f in p.relations().explicit() {
                println!("  {f}");
            }
        }
    }
}
