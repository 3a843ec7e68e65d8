use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rand::rngs::StdRng;
use rand::SeedableRng;
use smpkit::catalog::{self, CATALOG};
use smpkit::dispatch::{solve_auto, Method, SolveOptions};
use smpkit::formats::{load_instance, load_semigroup, semigroup_reference, InstanceFile};
use smpkit::oracle::{closure_oracle_with, OracleConfig};
use smpkit::reductions::exact_cover::check_np_pair;
use smpkit::reductions::{
    dfa_intersection_nonempty, encode_exact_cover, encode_kozen_to_t3, encode_t3_to_automata,
    find_np_witness_pair, CompositionInstance, ExactCoverInstance,
};
use smpkit::solvers::clifford::clifford_smp;
use smpkit::solvers::t2::t2_smp_traced;
use smpkit::structure::{classify, clifford_decompose};
use smpkit::{Elem, Semigroup};

#[derive(Parser)]
#[command(name = "smpkit")]
#[command(about = "Subpower membership for finite semigroups")]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structural classification of a semigroup
    Classify {
        /// A `.sgp` file or `builtin:NAME`
        semigroup: String,
    },
    /// Decide an instance with the selected or requested solver
    Solve {
        instance: PathBuf,
        #[arg(long, default_value = "auto")]
        method: String,
        /// Always run the closure oracle and require agreement
        #[arg(long)]
        cross_check: bool,
        /// Include the witness in the report
        #[arg(long)]
        witness: bool,
    },
    /// Encode a source problem as SMP or SMP as automata
    Reduce {
        #[command(subcommand)]
        reduction: Reduction,
    },
    /// Brute-force closure of the generators
    Oracle {
        instance: PathBuf,
        /// Give up after this many tuples
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Timing and agreement runs on generated instances
    Bench {
        suite: Suite,
        /// Coordinates for the scaling suites (run at n and 2n)
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 100)]
        k: usize,
        /// Instances per semigroup for the catalog suite
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum Reduction {
    /// Composition instance (JSON) to SMP over T(3)
    Kozen { instance: PathBuf },
    /// Exact Cover instance (text) to SMP over a semigroup
    ExactCover {
        instance: PathBuf,
        #[arg(long, default_value = "builtin:Z2_1")]
        semigroup: String,
        /// Idempotent `e` (name, or 1-based index); found automatically if omitted
        #[arg(long, requires = "a")]
        e: Option<String>,
        /// Element `a` with `ea = ae = a` and `<a>` not a group
        #[arg(long, requires = "e")]
        a: Option<String>,
    },
    /// SMP instance over T(3) to 3n automata
    Automata {
        instance: PathBuf,
        /// Also decide intersection non-emptiness
        #[arg(long)]
        decide: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Clifford,
    T2,
    Catalog,
}

/// An error with its exit code.
struct Failure {
    input: bool,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        let input = error
            .downcast_ref::<smpkit::Error>()
            .is_none_or(smpkit::Error::is_input_error);
        Failure { input, error }
    }
}

impl From<smpkit::Error> for Failure {
    fn from(error: smpkit::Error) -> Self {
        anyhow::Error::from(error).into()
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("reports serialize")
            );
            ExitCode::SUCCESS
        }
        Err(Failure { input, error }) => {
            let kind = if input { "input" } else { "runtime" };
            println!("{}", json!({ "error": format!("{error:#}"), "kind": kind }));
            eprintln!("smpkit: {error:#}");
            ExitCode::from(if input { 2 } else { 1 })
        }
    }
}

fn run(command: Command) -> Result<Value, Failure> {
    match command {
        Command::Classify { semigroup } => {
            let s = load_semigroup(&semigroup, None)?;
            let mut report = serde_json::to_value(classify(&s)).map_err(anyhow::Error::from)?;
            report["semigroup"] = json!(semigroup_reference(&s, &semigroup));
            Ok(report)
        }
        Command::Solve {
            instance,
            method,
            cross_check,
            witness,
        } => {
            let inst = load_instance(&instance)?;
            let method = match method.as_str() {
                "auto" => None,
                other => Some(other.parse::<Method>()?),
            };
            let options = SolveOptions {
                method,
                cross_check: cross_check.then_some(true),
            };
            let mut report = solve_auto(&inst, options)?;
            if !witness {
                report.witness = None;
            }
            let mut value = serde_json::to_value(&report).map_err(anyhow::Error::from)?;
            value["n"] = json!(inst.n());
            value["k"] = json!(inst.k());
            Ok(value)
        }
        Command::Reduce { reduction } => reduce(reduction),
        Command::Oracle { instance, cap } => {
            let inst = load_instance(&instance)?;
            let out = closure_oracle_with(
                &inst,
                OracleConfig {
                    cap,
                    stop_at_target: false,
                },
            )?;
            Ok(serde_json::to_value(out).map_err(anyhow::Error::from)?)
        }
        Command::Bench {
            suite,
            n,
            k,
            count,
            seed,
        } => bench(suite, n, k, count, seed),
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// Resolves an element by name first, then as a 1-based index.
fn element(s: &Semigroup, text: &str) -> anyhow::Result<Elem> {
    if let Some(x) = s.elem_by_name(text) {
        return Ok(x);
    }
    match text.parse::<usize>().ok().and_then(Elem::from_one_based) {
        Some(x) if x.idx() < s.order() => Ok(x),
        _ => bail!(smpkit::Error::UnknownElement(text.to_string())),
    }
}

fn reduce(reduction: Reduction) -> Result<Value, Failure> {
    match reduction {
        Reduction::Kozen { instance } => {
            let c: CompositionInstance =
                serde_json::from_str(&read(&instance)?).map_err(smpkit::Error::from)?;
            let inst = encode_kozen_to_t3(&c)?;
            let file = InstanceFile::describe(&inst, semigroup_reference(inst.semigroup(), "T(3)"));
            Ok(serde_json::to_value(file).map_err(anyhow::Error::from)?)
        }
        Reduction::ExactCover {
            instance,
            semigroup,
            e,
            a,
        } => {
            let ec = ExactCoverInstance::parse(&read(&instance)?)?;
            let s = Arc::new(load_semigroup(&semigroup, None)?);
            let (e, a) = match (e, a) {
                (Some(e), Some(a)) => (element(&s, &e)?, element(&s, &a)?),
                _ => find_np_witness_pair(&s).ok_or_else(|| {
                    smpkit::Error::ExactCoverHypothesis(
                        "no idempotent e and element a with ea = ae = a and <a> not a group".into(),
                    )
                })?,
            };
            check_np_pair(&s, e, a)?;
            let inst = encode_exact_cover(&ec, s.clone(), e, a)?;
            let file = InstanceFile::describe(&inst, semigroup_reference(&s, &semigroup));
            let mut value = serde_json::to_value(file).map_err(anyhow::Error::from)?;
            value["e"] = json!(s.name(e));
            value["a"] = json!(s.name(a));
            Ok(value)
        }
        Reduction::Automata { instance, decide } => {
            let inst = load_instance(&instance)?;
            let dfas = encode_t3_to_automata(&inst)?;
            let mut value = json!({ "min_length": 1, "automata": dfas });
            if decide {
                value["intersection"] = serde_json::to_value(dfa_intersection_nonempty(&dfas, 1)?)
                    .map_err(anyhow::Error::from)?;
            }
            Ok(value)
        }
    }
}

fn bench(
    suite: Suite,
    n: Option<usize>,
    k: usize,
    count: usize,
    seed: u64,
) -> Result<Value, Failure> {
    let mut rng = StdRng::seed_from_u64(seed);
    if k == 0 {
        return Err(anyhow::anyhow!("k must be positive").into());
    }
    match suite {
        Suite::Clifford | Suite::T2 => {
            let base = n.unwrap_or(match suite {
                Suite::Clifford => 10_000,
                _ => 1_000,
            });
            let mut runs = Vec::new();
            for size in [base, 2 * base] {
                let (inst, start, answer) = match suite {
                    Suite::Clifford => {
                        let inst = catalog::clifford_bench_instance(size, k, &mut rng)?;
                        let dec = clifford_decompose(inst.semigroup())?;
                        let start = Instant::now();
                        let answer = clifford_smp(&inst, &dec)?;
                        (inst, start, answer)
                    }
                    _ => {
                        let inst = catalog::t2_bench_instance(size, k, &mut rng)?;
                        let start = Instant::now();
                        let answer = t2_smp_traced(&inst)?.member;
                        (inst, start, answer)
                    }
                };
                let seconds = start.elapsed().as_secs_f64();
                runs.push(
                    json!({ "n": inst.n(), "k": inst.k(), "answer": answer, "seconds": seconds }),
                );
            }
            let ratio = runs[1]["seconds"].as_f64().unwrap_or(0.0)
                / runs[0]["seconds"].as_f64().unwrap_or(1.0).max(1e-9);
            Ok(json!({ "suite": suite_name(suite), "runs": runs, "doubling_ratio": ratio }))
        }
        Suite::Catalog => {
            let mut rows = Vec::new();
            for s in catalog::load(CATALOG) {
                let start = Instant::now();
                let (mut members, mut method) = (0, None);
                for _ in 0..count {
                    let inst = catalog::random_small_instance(&s, 4, k.min(4), &mut rng)?;
                    let report = solve_auto(
                        &inst,
                        SolveOptions {
                            method: None,
                            cross_check: Some(true),
                        },
                    )?;
                    members += usize::from(report.answer);
                    method = Some(report.method);
                }
                rows.push(json!({
                    "semigroup": semigroup_reference(&s, "?"),
                    "method": method,
                    "instances": count,
                    "members": members,
                    "seconds": start.elapsed().as_secs_f64(),
                }));
            }
            Ok(json!({ "suite": "catalog", "results": rows }))
        }
    }
}

fn suite_name(suite: Suite) -> &'static str {
    match suite {
        Suite::Clifford => "clifford",
        Suite::T2 => "t2",
        Suite::Catalog => "catalog",
    }
}
