mod commands;
mod io;
mod reproduce;

use std::path::PathBuf;
use std::process::ExitCode;

use chromacode::{Error, Limits};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::commands::{Outcome, SimulateArgs, SpectralArgs};
use crate::io::{sha256_hex, to_sorted_json, write_file, Inputs, RunManifest};

const EXIT_CHECK: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_GUARD: u8 = 3;

#[derive(Parser)]
#[command(name = "chromacode", version, about = "Characteristic graphs, OR powers and functional compression")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Tolerance for comparisons against reported values.
    #[arg(long, global = true, default_value_t = 5e-3)]
    tol: f64,
    /// Vertex budgets: one number for all, or `key=value,...` (mis, power, exact, entropy, dense, timeout).
    #[arg(long, global = true, env = "CHROMACODE_GUARD")]
    guard: Option<String>,
    /// Write JSON here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write a run manifest here.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Summary of a graph.
    Graph {
        #[arg(long)]
        graph: String,
    },
    /// Characteristic graphs of a two-argument function.
    Chargraph {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        pmf: Option<String>,
        /// Coloring JSON for source 1; with --coloring2, checks that the pair determines f.
        #[arg(long, requires = "coloring2")]
        coloring1: Option<String>,
        #[arg(long, requires = "coloring1")]
        coloring2: Option<String>,
    },
    /// n-fold OR power in Graph JSON.
    Power {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 2)]
        power: usize,
    },
    /// Color a graph power.
    Color {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 1)]
        power: usize,
        #[arg(long, value_parser = ["exact", "greedy", "even-cycle", "odd-cycle", "fractional"], default_value = "exact")]
        scheme: String,
        /// Colors per vertex for the fractional scheme.
        #[arg(long, default_value_t = 1)]
        b: usize,
    },
    /// Chromatic entropy and its bounds.
    Entropy {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 1)]
        power: usize,
        #[arg(long, value_parser = ["brute", "odd-cycle", "general", "fractional"], default_value = "brute")]
        bound: String,
        /// Vertex distribution: `uniform`, an inline JSON list, or a file.
        #[arg(long)]
        pmf: Option<String>,
        /// Entropy of this coloring of the power instead of a bound.
        #[arg(long)]
        coloring: Option<String>,
    },
    /// Spectra, Gershgorin intervals, the split decomposition and chromatic bounds.
    Spectral {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 1)]
        power: usize,
        #[arg(long, value_parser = ["eig", "gct", "split", "bounds"], default_value = "eig")]
        op: String,
        /// Block size for block Gershgorin.
        #[arg(long)]
        block: Option<usize>,
        /// Restrict `bounds` to one variant.
        #[arg(long)]
        variant: Option<String>,
    },
    /// Expansion rate of a vertex subset of a power.
    Expansion {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 1)]
        power: usize,
        /// Comma separated tuple indices.
        #[arg(long, conflicts_with = "sample")]
        subset: Option<String>,
        /// Size of a random subset.
        #[arg(long, requires = "seed")]
        sample: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Build the two-source codec and run it on random blocks.
    Simulate {
        /// FunctionSpec JSON, or `example1` / `pentagon`.
        #[arg(long)]
        spec: String,
        #[arg(long)]
        pmf: Option<String>,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = ["exact", "greedy", "even-cycle", "odd-cycle"], default_value = "exact")]
        strategy: String,
        /// Include colorings, codes and the decoder table.
        #[arg(long)]
        plan: bool,
        /// Also round-trip every positive-probability block pair.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Check the worked examples.
    Reproduce {
        #[arg(long, default_value = "all")]
        case: String,
        /// Also write the table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Graph { .. } => "graph",
            Command::Chargraph { .. } => "chargraph",
            Command::Power { .. } => "power",
            Command::Color { .. } => "color",
            Command::Entropy { .. } => "entropy",
            Command::Spectral { .. } => "spectral",
            Command::Expansion { .. } => "expansion",
            Command::Simulate { .. } => "simulate",
            Command::Reproduce { .. } => "reproduce",
        }
    }

    fn seed(&self) -> Option<u64> {
        match self {
            Command::Expansion { seed, .. } => *seed,
            Command::Simulate { seed, .. } => Some(*seed),
            _ => None,
        }
    }
}

fn dispatch(cmd: &Command, common: &Common, limits: &Limits, inputs: &mut Inputs) -> Result<(Outcome, Option<(PathBuf, String)>), Error> {
    let out = match cmd {
        Command::Graph { graph } => commands::graph(inputs, graph, limits)?,
        Command::Chargraph { spec, pmf, coloring1, coloring2 } => {
            let pair = coloring1.as_deref().zip(coloring2.as_deref());
            commands::chargraph(inputs, spec, pmf.as_deref(), pair)?
        }
        Command::Power { graph, power } => commands::power(inputs, graph, *power, limits)?,
        Command::Color { graph, power, scheme, b } => commands::color(inputs, graph, *power, scheme, *b, limits)?,
        Command::Entropy { graph, power, bound, pmf, coloring } => {
            commands::entropy(inputs, graph, *power, bound, pmf.as_deref(), coloring.as_deref(), limits)?
        }
        Command::Spectral { graph, power, op, block, variant } => {
            let a = SpectralArgs {
                op,
                n: *power,
                block: *block,
                variant: variant.as_deref(),
                tol: common.tol,
            };
            commands::spectral(inputs, graph, &a, limits)?
        }
        Command::Expansion { graph, power, subset, sample, seed } => {
            let sample = sample.zip(*seed);
            commands::expansion(inputs, graph, *power, subset.as_deref(), sample, limits)?
        }
        Command::Simulate { spec, pmf, n, samples, seed, strategy, plan, exhaustive } => {
            let a = SimulateArgs {
                spec,
                pmf: pmf.as_deref(),
                n: *n,
                samples: *samples,
                seed: *seed,
                strategy,
                plan: *plan,
                exhaustive: *exhaustive,
            };
            commands::simulate_cmd(inputs, &a, limits)?
        }
        Command::Reproduce { case, csv } => {
            let rows = reproduce::run(case, common.tol, limits)?;
            let passed = rows.iter().all(|r| r.pass);
            let csv = match csv {
                Some(path) => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    for r in &rows {
                        w.serialize(r).map_err(|e| Error::invalid(e.to_string()))?;
                    }
                    let bytes = w.into_inner().map_err(|e| Error::invalid(e.to_string()))?;
                    Some((path.clone(), String::from_utf8(bytes).expect("csv is utf-8")))
                }
                None => None,
            };
            let failed = rows.iter().filter(|r| !r.pass).count();
            let body = json!({"rows": rows, "passed": rows.len() - failed, "failed": failed, "tol": common.tol});
            return Ok((Outcome { body, passed }, csv));
        }
    };
    Ok((out, None))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Guard { .. } | Error::Timeout(_) => EXIT_GUARD,
        Error::Ambiguous { .. } | Error::Mismatch { .. } | Error::InvalidColoring(..) => EXIT_CHECK,
        Error::Invalid(_) | Error::Unsupported(_) | Error::OutOfScope(_) => EXIT_USAGE,
    }
}

fn error_json(e: &Error) -> serde_json::Value {
    let kind = match exit_code(e) {
        EXIT_GUARD => "guard",
        EXIT_CHECK => "check",
        _ => "usage",
    };
    let mut v = json!({"error": kind, "message": e.to_string()});
    match e {
        Error::Guard { what, needed, budget } => {
            v["what"] = json!(what);
            v["needed"] = json!(needed.to_string());
            v["budget"] = json!(budget.to_string());
        }
        Error::Ambiguous { x1, x2, y1, y2 } => v["witness"] = json!({"x1": x1, "x2": x2, "y1": y1, "y2": y2}),
        Error::Mismatch { sample, expected, got } => {
            v["sample"] = json!(sample);
            v["expected"] = json!(expected);
            v["got"] = json!(got);
        }
        _ => {}
    }
    v
}

fn run(cli: Cli) -> Result<u8, Error> {
    let limits = match &cli.common.guard {
        Some(spec) => Limits::default().with_overrides(spec)?,
        None => Limits::default(),
    };
    let mut inputs = Inputs::default();
    let (outcome, csv) = dispatch(&cli.command, &cli.common, &limits, &mut inputs)?;
    let text = to_sorted_json(&outcome.body);
    let mut outputs = std::collections::BTreeMap::new();
    match &cli.common.out {
        Some(path) => {
            write_file(path, text.as_bytes())?;
            outputs.insert(path.display().to_string(), sha256_hex(text.as_bytes()));
        }
        None => {
            print!("{text}");
            outputs.insert("-".to_string(), sha256_hex(text.as_bytes()));
        }
    }
    if let Some((path, body)) = csv {
        write_file(&path, body.as_bytes())?;
        outputs.insert(path.display().to_string(), sha256_hex(body.as_bytes()));
    }
    if let Some(path) = &cli.common.manifest {
        let m = RunManifest {
            subcommand: cli.command.name().to_string(),
            args: std::env::args().skip(1).collect(),
            inputs: inputs.digests,
            seed: cli.command.seed(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            outputs,
        };
        write_file(path, to_sorted_json(&m).as_bytes())?;
    }
    Ok(if outcome.passed { 0 } else { EXIT_CHECK })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{}", serde_json::to_string(&error_json(&e)).expect("serializes"));
            ExitCode::from(exit_code(&e))
        }
    }
}
