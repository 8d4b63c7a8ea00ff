//! `wilson`: verification suites and data exports for the self-similar groups W and V.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use wilson_core::bounds::{self, curves_csv, eval_growth_bound, lambda_csv, lambda_sequence};
use wilson_core::catalog::{
    free_quadruple_for, make_base, make_free_quadruple, make_s, make_tilde, swapper_pairs,
    GeneratingSet,
};
use wilson_core::error::EngineError;
use wilson_core::growth::{
    ball_csv, enumerate_ball, export_dot, find_min_n_local_iso, free_monoid_check, growth_csv,
    growth_estimates, submultiplicativity_violations, BallConvention, DedupMode,
};
use wilson_core::verify::verify_all;
use wilson_core::words::{delta_stats_csv, geodesic_delta_stats, lemma30_csv, verify_lemma30};
use wilson_core::wreath::{parse_points, render_points, DEFAULT_STATE_BUDGET};
use wilson_core::{Engine, Error};

const BALL_RADIUS_CAP: usize = 12;
const PARTITION_RADIUS_CAP: usize = 8;
const FREE_LENGTH_CAP: usize = 12;
const BUDGET_ENV: &str = "WILSON_STATE_BUDGET";

#[derive(Parser, Serialize)]
#[command(name = "wilson", version, about)]
struct Cli {
    /// Output format; each command has its own default
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write to a file instead of stdout
    #[arg(long, short, global = true)]
    #[serde(skip)]
    output: Option<PathBuf>,
    /// Worker threads (results do not depend on it)
    #[arg(long, global = true)]
    #[serde(skip)]
    threads: Option<usize>,
    /// State budget of the identity test (default: $WILSON_STATE_BUDGET or 1000000)
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Lift the desk-scale caps on radii and lengths
    #[arg(long, global = true)]
    force: bool,
    /// Reserved; every algorithm here is deterministic
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Run every claim check and print a JSON report
    VerifyAll,
    /// Enumerate a Cayley ball
    Ball {
        #[arg(long, default_value = "S:1")]
        genset: String,
        #[arg(long, short)]
        radius: usize,
        /// Use exact equality for every comparison instead of signatures
        #[arg(long)]
        exact: bool,
    },
    /// Ball sizes and growth estimates
    Growth {
        #[arg(long, default_value = "S:1")]
        genset: String,
        #[arg(long, short)]
        radius: usize,
        #[arg(long, value_enum, default_value = "at-most")]
        convention: Convention,
    },
    /// Geodesic Δ-occurrence counts against the finite bound
    DeltaStats {
        #[arg(long, default_value = "S:2")]
        genset: String,
        #[arg(long, short)]
        radius: usize,
        #[arg(long, default_value_t = 0.2)]
        eta: f64,
    },
    /// Δ-free reduced word counts
    Lemma30 {
        #[arg(long, default_value_t = 40)]
        max_n: usize,
    },
    /// The Λₙ sequence
    Lambda {
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, default_value_t = bounds::DEFAULT_TOL)]
        tol: f64,
    },
    /// Distinctness of {a,d}-words and the refinement check
    FreeMonoid {
        #[arg(long, short = 'L', default_value_t = 8)]
        length: usize,
        /// Check every pair of swappers, not just the canonical one
        #[arg(long)]
        all_pairs: bool,
    },
    /// Least n with matching radius-R balls of (V, S̃) and (W, Sₙ)
    LocalIso {
        #[arg(long, short)]
        radius: usize,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
    /// Apply a word to a string of points
    Act {
        #[arg(long, default_value = "S:1")]
        genset: String,
        /// Space-separated generator symbols
        #[arg(long)]
        word: String,
        /// Digits 1..7
        #[arg(long)]
        string: String,
    },
    /// The two curves whose crossing defines the bound
    Curves {
        #[arg(long, default_value_t = 2.0)]
        lambda: f64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Format {
    Csv,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Convention {
    AtMost,
    Exactly,
}

enum Failure {
    Verdict(String),
    Usage(String),
    Resource(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Engine(EngineError::BudgetExceeded { .. }) => Failure::Resource(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        Error::from(e).into()
    }
}

struct Output {
    text: String,
    verdict_ok: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            verdict_ok: true,
        }
    }
}

#[derive(Serialize)]
struct Header<'a> {
    artifact: String,
    config: &'a Cli,
    budget: usize,
}

#[derive(Serialize)]
struct JsonDoc<'a, T: Serialize> {
    header: &'a Header<'a>,
    result: T,
}

fn header_comment(prefix: &str, header: &Header) -> String {
    format!(
        "{prefix} {}\n{prefix} config: {}\n",
        header.artifact,
        serde_json::to_string(&header.config).expect("plain data")
    )
}

fn json_doc<T: Serialize>(header: &Header, result: T) -> String {
    let mut s = serde_json::to_string_pretty(&JsonDoc { header, result }).expect("plain data");
    s.push('\n');
    s
}

fn resolve_budget(cli: &Cli) -> Result<usize, Failure> {
    if let Some(b) = cli.budget {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{BUDGET_ENV} is not a number: {v}"))),
        Err(_) => Ok(DEFAULT_STATE_BUDGET),
    }
}

fn parse_genset(engine: &mut Engine, spec: &str) -> Result<GeneratingSet, Failure> {
    match spec {
        "base" => Ok(make_base()),
        "tilde" => Ok(make_tilde(engine)?),
        "free" => Ok(make_free_quadruple(engine).as_generating_set()),
        _ => {
            let n = spec
                .strip_prefix("S:")
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|&n| n >= 1)
                .ok_or_else(|| {
                    Failure::Usage(format!(
                        "unknown generating set {spec:?}; use base, S:n, tilde or free"
                    ))
                })?;
            Ok(make_s(engine, n)?)
        }
    }
}

fn check_cap(cli: &Cli, what: &str, value: usize, cap: usize) -> Result<(), Failure> {
    if value > cap && !cli.force {
        return Err(Failure::Usage(format!(
            "{what} {value} exceeds the cap {cap}; pass --force to lift it"
        )));
    }
    Ok(())
}

fn pick_format(cli: &Cli, allowed: &[Format]) -> Result<Format, Failure> {
    match cli.format {
        None => Ok(allowed[0]),
        Some(f) if allowed.contains(&f) => Ok(f),
        Some(_) => Err(Failure::Usage(format!(
            "unsupported --format for this command; choose one of {}",
            allowed
                .iter()
                .map(|f| f.to_possible_value().unwrap().get_name().to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ))),
    }
}

fn run(cli: &Cli, engine: &mut Engine, header: &Header) -> Result<Output, Failure> {
    use Format::*;
    let csv = |body: String| Output::ok(header_comment("#", header) + &body);
    match &cli.command {
        Command::VerifyAll => {
            pick_format(cli, &[Json])?;
            let rep = verify_all(engine)?;
            Ok(Output {
                text: json_doc(header, &rep),
                verdict_ok: rep.all_pass,
            })
        }
        Command::Ball {
            genset,
            radius,
            exact,
        } => {
            check_cap(cli, "radius", *radius, BALL_RADIUS_CAP)?;
            let fmt = pick_format(cli, &[Csv, Dot, Json])?;
            let gs = parse_genset(engine, genset)?;
            let mode = if *exact {
                DedupMode::ExactOnly
            } else {
                DedupMode::Signature
            };
            let ball = enumerate_ball(engine, &gs, *radius, mode)?;
            Ok(match fmt {
                Csv => csv(ball_csv(&ball)),
                Dot => Output::ok(header_comment("//", header) + &export_dot(&ball)),
                Json => {
                    let members: Vec<String> =
                        ball.geodesics.iter().map(|g| ball.render_word(g)).collect();
                    Output::ok(json_doc(
                        header,
                        json!({
                            "genset": ball.genset,
                            "radius": ball.radius,
                            "size": ball.size(),
                            "sizes": ball.sizes(BallConvention::AtMost),
                            "geodesics": members,
                            "dedup": ball.dedup,
                        }),
                    ))
                }
            })
        }
        Command::Growth {
            genset,
            radius,
            convention,
        } => {
            check_cap(cli, "radius", *radius, BALL_RADIUS_CAP)?;
            let fmt = pick_format(cli, &[Csv, Json])?;
            let gs = parse_genset(engine, genset)?;
            let ball = enumerate_ball(engine, &gs, *radius, DedupMode::Signature)?;
            let conv = match convention {
                Convention::AtMost => BallConvention::AtMost,
                Convention::Exactly => BallConvention::Exactly,
            };
            let rows = growth_estimates(&ball.sizes(conv));
            Ok(match fmt {
                Csv => csv(growth_csv(&rows)),
                _ => {
                    let sizes: Vec<usize> = rows.iter().map(|r| r.ball_size).collect();
                    let violations = submultiplicativity_violations(&sizes);
                    Output {
                        text: json_doc(
                            header,
                            json!({ "rows": rows, "submultiplicativity_violations": violations }),
                        ),
                        verdict_ok: conv == BallConvention::Exactly || violations.is_empty(),
                    }
                }
            })
        }
        Command::DeltaStats {
            genset,
            radius,
            eta,
        } => {
            check_cap(cli, "radius", *radius, BALL_RADIUS_CAP)?;
            let fmt = pick_format(cli, &[Csv, Json])?;
            let gs = parse_genset(engine, genset)?;
            if gs.len() != 3 || !gs.all_involutions() {
                return Err(Failure::Usage(format!(
                    "{} is not a triple of involutions",
                    gs.name
                )));
            }
            let ball = enumerate_ball(engine, &gs, *radius, DedupMode::Signature)?;
            let rows = geodesic_delta_stats(&ball, *eta).map_err(Error::from)?;
            let ok = rows.iter().all(|r| r.within_bound);
            Ok(match fmt {
                Csv => Output {
                    verdict_ok: ok,
                    ..csv(delta_stats_csv(*eta, &rows))
                },
                _ => Output {
                    text: json_doc(header, json!({ "eta": eta, "rows": rows })),
                    verdict_ok: ok,
                },
            })
        }
        Command::Lemma30 { max_n } => {
            if *max_n == 0 {
                return Err(Failure::Usage("--max-n must be at least 1".into()));
            }
            let fmt = pick_format(cli, &[Csv, Json])?;
            let rep = verify_lemma30(*max_n);
            let ok = rep.all_at_most_30;
            Ok(match fmt {
                Csv => Output {
                    verdict_ok: ok,
                    ..csv(lemma30_csv(&rep))
                },
                _ => Output {
                    text: json_doc(header, &rep),
                    verdict_ok: ok,
                },
            })
        }
        Command::Lambda { steps, tol } => {
            if *steps == 0 {
                return Err(Failure::Usage("--steps must be at least 1".into()));
            }
            let fmt = pick_format(cli, &[Csv, Json])?;
            let seq = lambda_sequence(*steps, *tol).map_err(Error::from)?;
            Ok(match fmt {
                Csv => csv(lambda_csv(&seq)),
                _ => Output::ok(json_doc(header, &seq)),
            })
        }
        Command::FreeMonoid { length, all_pairs } => {
            if *length == 0 {
                return Err(Failure::Usage("--length must be at least 1".into()));
            }
            check_cap(cli, "length", *length, FREE_LENGTH_CAP)?;
            pick_format(cli, &[Json])?;
            let pairs = if *all_pairs {
                swapper_pairs()
            } else {
                swapper_pairs().into_iter().take(1).collect()
            };
            let mut reports = Vec::new();
            for (u, v) in pairs {
                let q = free_quadruple_for(engine, u, v);
                reports.push(free_monoid_check(engine, &q, *length)?);
            }
            let ok = reports.iter().all(|r| r.passed());
            Ok(Output {
                text: json_doc(header, json!({ "pass": ok, "pairs": reports })),
                verdict_ok: ok,
            })
        }
        Command::LocalIso { radius, max_n } => {
            if *radius == 0 {
                return Err(Failure::Usage("--radius must be at least 1".into()));
            }
            check_cap(cli, "radius", *radius, PARTITION_RADIUS_CAP)?;
            pick_format(cli, &[Json])?;
            let rep = find_min_n_local_iso(engine, *radius, *max_n)?;
            let ok = rep.found.is_some();
            Ok(Output {
                text: json_doc(header, &rep),
                verdict_ok: ok,
            })
        }
        Command::Act {
            genset,
            word,
            string,
        } => {
            pick_format(cli, &[Csv])?;
            let gs = parse_genset(engine, genset)?;
            let w = gs.parse_word(word)?;
            let s = parse_points(string).map_err(Error::from)?;
            let image = engine.act(&gs.evaluate(engine, &w), &s);
            Ok(csv(format!("{}\n", render_points(&image))))
        }
        Command::Curves { lambda } => {
            pick_format(cli, &[Csv])?;
            if lambda.is_nan() || *lambda < 1.0 {
                return Err(Failure::Usage("--lambda must be at least 1".into()));
            }
            let crossing = eval_growth_bound(*lambda, bounds::DEFAULT_TOL).map_err(Error::from)?;
            Ok(csv(format!(
                "# crossing value: {crossing:.12}\n{}",
                curves_csv(*lambda)
            )))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = (|| -> Result<Output, Failure> {
        if let Some(n) = cli.threads {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| Failure::Usage(e.to_string()))?;
        }
        let budget = resolve_budget(&cli)?;
        let header = Header {
            artifact: format!("wilson {}", env!("CARGO_PKG_VERSION")),
            config: &cli,
            budget,
        };
        let mut engine = Engine::with_budget(budget);
        let out = run(&cli, &mut engine, &header)?;
        match &cli.output {
            Some(path) => fs::write(path, &out.text)
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
            None => print!("{}", out.text),
        }
        if out.verdict_ok {
            Ok(out)
        } else {
            Err(Failure::Verdict("one or more checks failed".into()))
        }
    })();
    match outcome {
        Ok(_) => ExitCode::SUCCESS,
        Err(Failure::Verdict(m)) => {
            eprintln!("wilson: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("wilson: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(m)) => {
            eprintln!("wilson: {m}");
            ExitCode::from(3)
        }
    }
}
