use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use talpha::balsep::weighted_separator_oracle;
use talpha::gen::{corpus, families, gen_glued_class_c, gen_random_class_c};
use talpha::hubdiv::hub_division;
use talpha::io::{parse_gr, read_graph, read_td, read_weights, write_gr};
use talpha::mwis::{mwis_bruteforce_guarded, mwis_td, BRUTE_FORCE_GUARD, STATE_GUARD};
use talpha::structures::{
    check_class, find_structure, find_wheel, Budget, Search, StructureKind, WheelFilter,
};
use talpha::treedec::{ta_pipeline_traced, td_stats, validate_td};
use talpha::{Error, Graph, WeightFunction};

#[derive(Parser)]
#[command(
    name = "talpha",
    version,
    about = "Tree decompositions with small clique covers per bag"
)]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, env = "TALPHA_SEED", default_value_t = 0)]
    seed: u64,
    /// Time limit per detector call, in milliseconds.
    #[arg(long, global = true)]
    budget_ms: Option<u64>,
    /// Raises the size guard of exhaustive oracles; results past the default guard may not finish.
    #[arg(long, global = true)]
    guard_n: Option<usize>,
    /// Adds wall-clock timing to the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate graphs: a named family, a random class member or a corpus.
    Gen {
        #[command(subcommand)]
        what: GenCmd,
    },
    /// Decide membership in C and C*.
    Check { graph: PathBuf },
    /// Search for one kind of structure.
    Structure {
        /// c4, diamond, theta, pyramid, prism or wheel.
        kind: StructureKind,
        graph: PathBuf,
        /// Wheel filter: any, even, non-bug or proper.
        #[arg(long, default_value = "any")]
        filter: WheelFilter,
    },
    /// Build a tree decomposition through atoms and balanced separators.
    Decompose {
        graph: PathBuf,
        #[arg(long)]
        td_out: Option<PathBuf>,
        /// Include hub divisions and separators in the report.
        #[arg(long)]
        trace: bool,
    },
    /// Validate a decomposition and report its statistics.
    Validate { graph: PathBuf, td: PathBuf },
    /// Maximum weight independent set.
    Mwis {
        graph: PathBuf,
        weights: PathBuf,
        /// Decomposition to use; built by the pipeline when absent.
        #[arg(long)]
        td: Option<PathBuf>,
        /// Also solve by brute force and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Balanced separator for a weight function summing to one.
    Oracle { graph: PathBuf, weights: PathBuf },
    /// Run the pipeline over graphs and print a CSV table.
    Bench {
        /// Graph files; a generated corpus is used when none are given.
        graphs: Vec<PathBuf>,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 12)]
        n_lo: usize,
        #[arg(long, default_value_t = 28)]
        n_hi: usize,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// A named family such as `hole(7)` or `wheel(6,1,2,4,5)`.
    Family {
        spec: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Random class member by rejection sampling.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.25)]
        density: f64,
        /// Glue random atoms along clique cutsets instead.
        #[arg(long)]
        glued: bool,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// A corpus of class members with a JSON-lines manifest.
    Corpus {
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 12)]
        n_lo: usize,
        #[arg(long, default_value_t = 28)]
        n_hi: usize,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

/// Outcome of a command: a JSON report and whether any assertion failed.
struct Outcome {
    report: Value,
    failed: bool,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome {
            report,
            failed: false,
        }
    }
}

fn budget(cli: &Cli) -> Budget {
    cli.budget_ms.map_or(Budget::UNLIMITED, Budget::millis)
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<Value, Error> {
    match out {
        Some(p) => {
            fs::write(p, text)?;
            Ok(json!(p.display().to_string()))
        }
        None => Ok(json!(text)),
    }
}

fn weights_for(path: &Path, g: &Graph) -> Result<WeightFunction, Error> {
    WeightFunction::from_rationals(&read_weights(path, g.n())?)
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.cmd {
        Cmd::Gen { what } => gen(cli, what),
        Cmd::Check { graph } => {
            let g = read_graph(graph)?;
            let r = check_class(&g, budget(cli));
            Ok(Outcome::ok(
                json!({ "n": g.n(), "m": g.m(), "class": r.to_json(&g) }),
            ))
        }
        Cmd::Structure {
            kind,
            graph,
            filter,
        } => {
            let g = read_graph(graph)?;
            let found = match kind {
                StructureKind::Wheel => find_wheel(&g, *filter, budget(cli)),
                k => find_structure(&g, *k, budget(cli)),
            };
            let v = match found {
                Search::Found(w) => json!({ "result": "found", "witness": w.to_json(&g) }),
                Search::Absent => json!({ "result": "absent" }),
                Search::Unknown => json!({ "result": "unknown" }),
            };
            Ok(Outcome::ok(
                json!({ "kind": kind.to_string(), "search": v }),
            ))
        }
        Cmd::Decompose {
            graph,
            td_out,
            trace,
        } => {
            let g = read_graph(graph)?;
            let r = ta_pipeline_traced(&g, *trace)?;
            let mut report = r.to_json();
            if let Some(p) = td_out {
                fs::write(p, r.td.to_pace(g.n()))?;
                report["td_out"] = json!(p.display().to_string());
            }
            if *trace {
                report["separators"] = json!(r.separators);
                let divisions: Vec<Value> = r
                    .atoms
                    .iter()
                    .filter(|a| a.route == "recursive")
                    .map(|a| {
                        let (h, map) = g.induced(&a.atom);
                        let ids: Vec<usize> = map.iter().map(|v| v + 1).collect();
                        match hub_division(&h, &WeightFunction::uniform(h.n())) {
                            Ok(hd) => json!({ "atom": ids, "weights": "uniform", "division": hd.to_json(&h) }),
                            Err(e) => json!({ "atom": ids, "error": e.to_string() }),
                        }
                    })
                    .collect();
                report["hub_divisions"] = json!(divisions);
            }
            Ok(Outcome {
                failed: !r.transcript.all_passed(),
                report,
            })
        }
        Cmd::Validate { graph, td } => {
            let g = read_graph(graph)?;
            let td = read_td(td, g.n())?;
            let (ok, violations) = validate_td(&g, &td);
            let mut report = json!({
                "valid": ok,
                "violations": violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            });
            if ok {
                report["stats"] = td_stats(&g, &td).to_json();
            }
            Ok(Outcome {
                report,
                failed: !ok,
            })
        }
        Cmd::Mwis {
            graph,
            weights,
            td,
            oracle,
        } => {
            let g = read_graph(graph)?;
            let w = read_weights(weights, g.n())?;
            let td = match td {
                Some(p) => read_td(p, g.n())?,
                None => ta_pipeline_traced(&g, false)?.td,
            };
            let dp = mwis_td(&g, &w, &td, STATE_GUARD)?;
            let mut report = json!({ "td": dp.to_json() });
            let mut failed = false;
            if *oracle {
                let bf = mwis_bruteforce_guarded(&g, &w, cli.guard_n.unwrap_or(BRUTE_FORCE_GUARD))?;
                failed = bf.value != dp.value;
                report["brute_force"] = bf.to_json();
                report["agree"] = json!(!failed);
            }
            Ok(Outcome { report, failed })
        }
        Cmd::Oracle { graph, weights } => {
            let g = read_graph(graph)?;
            let w = weights_for(weights, &g)?;
            let s = weighted_separator_oracle(&g, &w)?;
            let failed = s.checks.iter().any(|c| !c.passed);
            Ok(Outcome {
                report: s.to_json(&g, &w),
                failed,
            })
        }
        Cmd::Bench {
            graphs,
            count,
            n_lo,
            n_hi,
        } => bench(cli, graphs, *count, *n_lo, *n_hi),
    }
}

fn gen(cli: &Cli, what: &GenCmd) -> Result<Outcome, Error> {
    match what {
        GenCmd::Family { spec, out } => {
            let g = families::by_name(spec)?;
            Ok(Outcome::ok(
                json!({ "family": spec, "n": g.n(), "m": g.m(), "graph": emit(&write_gr(&g), out)? }),
            ))
        }
        GenCmd::Random {
            n,
            density,
            glued,
            out,
        } => {
            let g = if *glued {
                gen_glued_class_c(*n, *n, cli.seed)
            } else {
                gen_random_class_c(*n, *density, cli.seed).ok_or_else(|| {
                    Error::NotFound("no class member within the retry budget".into())
                })?
            };
            Ok(Outcome::ok(
                json!({ "seed": cli.seed, "n": g.n(), "m": g.m(), "graph": emit(&write_gr(&g), out)? }),
            ))
        }
        GenCmd::Corpus {
            count,
            n_lo,
            n_hi,
            out_dir,
        } => {
            if n_lo > n_hi {
                return Err(Error::BadParams("--n-lo exceeds --n-hi".into()));
            }
            fs::create_dir_all(out_dir)?;
            let mut manifest = String::new();
            for e in corpus(*count, *n_lo, *n_hi, cli.seed) {
                let name = format!("g{:05}.gr", e.seed);
                fs::write(out_dir.join(&name), write_gr(&e.graph))?;
                manifest.push_str(&e.manifest_line(&name).to_string());
                manifest.push('\n');
            }
            fs::write(out_dir.join("manifest.jsonl"), manifest)?;
            Ok(Outcome::ok(
                json!({ "count": count, "dir": out_dir.display().to_string() }),
            ))
        }
    }
}

fn bench(
    cli: &Cli,
    files: &[PathBuf],
    count: usize,
    n_lo: usize,
    n_hi: usize,
) -> Result<Outcome, Error> {
    let inputs: Vec<(String, Graph)> = if files.is_empty() {
        if n_lo > n_hi {
            return Err(Error::BadParams("--n-lo exceeds --n-hi".into()));
        }
        corpus(count, n_lo, n_hi, cli.seed)
            .into_iter()
            .map(|e| (format!("seed{}", e.seed), e.graph))
            .collect()
    } else {
        files
            .iter()
            .map(|p| Ok((p.display().to_string(), parse_gr(&fs::read_to_string(p)?)?)))
            .collect::<Result<_, Error>>()?
    };
    let rows: Vec<(String, bool)> = inputs
        .par_iter()
        .map(|(name, g)| {
            let t = Instant::now();
            match ta_pipeline_traced(g, false) {
                Ok(r) => {
                    let ms = t.elapsed().as_secs_f64() * 1e3;
                    let row = format!(
                        "{name},{},{},{},{},{},{ms:.3}",
                        g.n(),
                        g.m(),
                        r.stats.width,
                        r.stats.independence,
                        r.stats.cover
                    );
                    (row, !r.transcript.all_passed())
                }
                Err(e) => (
                    format!(
                        "{name},{},{},,,,error: {}",
                        g.n(),
                        g.m(),
                        e.to_string().replace(',', ";")
                    ),
                    true,
                ),
            }
        })
        .collect();
    let mut text = String::from("instance,n,m,width,independence,cover,runtime_ms\n");
    let mut failed = false;
    for (row, bad) in rows {
        text.push_str(&row);
        text.push('\n');
        failed |= bad;
    }
    print_out(&text);
    Ok(Outcome {
        report: Value::Null,
        failed,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.guard_n {
        if n > BRUTE_FORCE_GUARD {
            eprintln!("warning: --guard-n {n} raises the brute-force oracle guard past {BRUTE_FORCE_GUARD}; unsound if raised, runs may not finish");
        }
    }
    let start = Instant::now();
    let (mut report, code) = match run(&cli) {
        Ok(o) => (o.report, if o.failed { 1 } else { 0 }),
        Err(e @ (Error::BadParams(_) | Error::Format { .. } | Error::Weight(_))) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
        Err(e) => (json!({ "error": e.to_string() }), 1),
    };
    if report.is_null() {
        return ExitCode::from(code);
    }
    if cli.timing {
        report["timing_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    print_out(&format!(
        "{}\n",
        serde_json::to_string_pretty(&report).expect("report serializes")
    ));
    ExitCode::from(code)
}

/// Writes to stdout; a closed pipe is not an error.
fn print_out(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}
