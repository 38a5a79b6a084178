use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use causalq::{
    build_grover, chordless_cycles, export_qasm, load_topology, run_query, synthesize_marker_with,
    verify_marker, FixedMode, Iterations, Precision, QueryOptions, Topology,
    DEFAULT_ENUMERATION_BOUND, DEFAULT_QUBIT_LIMIT,
};

const BITSTRING_HELP: &str = "Bitstrings in all outputs put edge 0 leftmost: character i is edge i, \
'1' = reference direction (tail -> head), '0' = reversed.";

/// Grover query of the causal configurations of a multiloop topology.
#[derive(Parser)]
#[command(name = "causalq", version, after_help = BITSTRING_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a topology file and report diagnostics.
    Validate { file: PathBuf },
    /// List the chordless cycles as JSON.
    Cycles { file: PathBuf },
    /// Count acyclic orientations and marked causal configurations.
    Count {
        file: PathBuf,
        #[command(flatten)]
        marker: MarkerArgs,
    },
    /// Write the query circuit as OpenQASM 3.0 and print its layout.
    Synth {
        file: PathBuf,
        /// Output path for the QASM text.
        #[arg(long)]
        qasm: PathBuf,
        /// Grover iterations: a number or `auto`.
        #[arg(long, default_value = "auto", value_parser = parse_iterations)]
        iterations: Iterations,
        #[command(flatten)]
        marker: MarkerArgs,
    },
    /// Simulate the query and print the report as JSON.
    Run {
        file: PathBuf,
        #[arg(long)]
        shots: u64,
        #[arg(long)]
        seed: u64,
        /// Grover iterations: a number or `auto`.
        #[arg(long, default_value = "auto", value_parser = parse_iterations)]
        iterations: Iterations,
        /// Simulate with 32-bit floats (halves memory).
        #[arg(long)]
        single_precision: bool,
        /// Report wall_time_ms as 0 so reruns are byte-identical.
        #[arg(long)]
        no_timing: bool,
        #[command(flatten)]
        marker: MarkerArgs,
    },
    /// Compare the oracle's marked set with classical enumeration; exit 1 on mismatch.
    Verify {
        file: PathBuf,
        #[command(flatten)]
        marker: MarkerArgs,
    },
}

#[derive(Args)]
struct MarkerArgs {
    /// Drop the fixed-edge conjunct (marks both members of every reversal pair).
    #[arg(long)]
    unconstrained: bool,
    /// Maximum number of simulated qubits.
    #[arg(long, default_value_t = DEFAULT_QUBIT_LIMIT)]
    qubit_limit: usize,
}

impl MarkerArgs {
    fn mode(&self) -> FixedMode {
        if self.unconstrained {
            FixedMode::Unconstrained
        } else {
            FixedMode::Default
        }
    }
}

fn parse_iterations(s: &str) -> Result<Iterations, String> {
    if s == "auto" {
        return Ok(Iterations::Auto);
    }
    s.parse::<usize>()
        .map(Iterations::Fixed)
        .map_err(|_| format!("expected a non-negative integer or `auto`, got `{s}`"))
}

#[derive(Serialize)]
struct CycleOut<'t> {
    edges: &'t [usize],
    vertices: Vec<&'t str>,
    alignments: Vec<u8>,
}

#[derive(Serialize)]
struct CountOut {
    n: usize,
    #[serde(rename = "N")]
    size: u64,
    acyclic_total: usize,
    #[serde(rename = "causal_M")]
    causal: usize,
}

#[derive(Serialize)]
struct LayoutOut {
    n_e: usize,
    n_c: usize,
    n_a: usize,
    total: usize,
    r: usize,
    gates: usize,
    qasm: String,
}

enum Failure {
    Usage(String),
    Verification,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string(value)?;
    writeln!(std::io::stdout().lock(), "{text}")?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn marked_count(topology: &Topology, mode: FixedMode) -> Result<usize, Failure> {
    let spec = synthesize_marker_with(topology, mode)?;
    Ok(topology.with_fixed(spec.fixed)?.enumerate_causal()?.len())
}

fn dispatch(command: Command) -> Result<(), Failure> {
    match command {
        Command::Validate { file } => match load_topology(&file) {
            Ok(t) => {
                println!(
                    "ok: {} ({} vertices, {} edges)",
                    t.name(),
                    t.vertex_count(),
                    t.edge_count()
                );
                Ok(())
            }
            Err(e) => {
                eprintln!("invalid: {}: {e}", file.display());
                Err(Failure::Verification)
            }
        },
        Command::Cycles { file } => {
            let t = load_topology(file)?;
            let cycles = chordless_cycles(&t);
            let out: Vec<CycleOut> = cycles
                .iter()
                .map(|c| CycleOut {
                    edges: &c.edges,
                    vertices: c.vertex_labels(&t),
                    alignments: c.alignments.iter().map(|&a| u8::from(a)).collect(),
                })
                .collect();
            print_json(&out)
        }
        Command::Count { file, marker } => {
            let t = load_topology(file)?;
            let mode = marker.mode();
            if matches!(mode, FixedMode::Unconstrained) {
                eprintln!("warning: no fixed-edge constraint; causal_M counts both members of every reversal pair");
            }
            print_json(&CountOut {
                n: t.edge_count(),
                size: 1u64 << t.edge_count(),
                acyclic_total: t.enumerate_acyclic(DEFAULT_ENUMERATION_BOUND)?.len(),
                causal: marked_count(&t, mode)?,
            })
        }
        Command::Synth { file, qasm, iterations, marker } => {
            let t = load_topology(file)?;
            let spec = synthesize_marker_with(&t, marker.mode())?;
            let r = match iterations {
                Iterations::Fixed(r) => r,
                Iterations::Auto => {
                    let plan = causalq::GroverPlan::new(
                        1u64 << t.edge_count(),
                        marked_count(&t, marker.mode())? as u64,
                        Iterations::Auto,
                    )?;
                    for w in &plan.warnings {
                        eprintln!("warning: {w}");
                    }
                    plan.iterations
                }
            };
            let circuit = build_grover(&spec, r, marker.qubit_limit)?;
            std::fs::write(&qasm, export_qasm(&circuit))
                .map_err(|e| format!("{}: {e}", qasm.display()))?;
            let layout = circuit.layout;
            print_json(&LayoutOut {
                n_e: layout.n_e,
                n_c: layout.n_c,
                n_a: layout.n_a,
                total: layout.total(),
                r,
                gates: circuit.gates().count(),
                qasm: qasm.display().to_string(),
            })
        }
        Command::Run { file, shots, seed, iterations, single_precision, no_timing, marker } => {
            let t = load_topology(file)?;
            let options = QueryOptions {
                shots,
                seed,
                iterations,
                precision: if single_precision { Precision::Single } else { Precision::Double },
                qubit_limit: marker.qubit_limit,
                fixed: marker.mode(),
            };
            let mut report = run_query(&t, &options)?;
            for w in &report.plan.warnings {
                eprintln!("warning: {w}");
            }
            if no_timing {
                report.wall_time_ms = 0;
            }
            print_json(&report)
        }
        Command::Verify { file, marker } => {
            let t = load_topology(file)?;
            let spec = synthesize_marker_with(&t, marker.mode())?;
            let report = verify_marker(&t, &spec, marker.qubit_limit)?;
            print_json(&report)?;
            if report.pass {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
    }
}
