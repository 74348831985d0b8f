use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use octof4_cli::commands;
use octof4_cli::pipeline::{self, DEFAULT_DEPTH};
use octof4_core::f4::Level as Sweep;
use octof4_core::frame::Frame;
use octof4_core::susy::Branch;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "octof4", version, about = "Exact verification of the octonionic F(4) deformed oscillator")]
struct Cli {
    /// Solution branch of the supercharge ansatz.
    #[arg(long, global = true, default_value = "second", value_parser = parse_branch)]
    branch: Branch,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Include per-stage wall-clock times (makes output run-dependent).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

impl From<LevelArg> for Sweep {
    fn from(l: LevelArg) -> Self {
        match l {
            LevelArg::Quick => Sweep::Quick,
            LevelArg::Full => Sweep::Full,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run every check and emit a report.
    Verify {
        #[arg(long, value_enum, default_value_t = LevelArg::Full)]
        level: LevelArg,
    },
    /// Closure residual counts, V(c) on both branches and the critical couplings.
    SolveClosure,
    /// Energy levels and degeneracies of the Hilbert tower.
    Spectrum {
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
    },
    /// The 8x16 lowest-weight exponent, energy and norm table.
    LowestWeights,
    /// Finite-difference cross-check of the per-component spectra.
    Numerics {
        /// 1-based component; all sixteen when omitted.
        #[arg(long)]
        component: Option<usize>,
        /// Interior grid points.
        #[arg(long, default_value_t = 2000)]
        grid: usize,
        #[arg(long, default_value_t = 12.0)]
        xmax: f64,
        #[arg(long, default_value_t = 6)]
        eigenvalues: usize,
    },
    /// Nonzero octonionic structure constants as JSON lines.
    DumpTensors,
    /// Both gamma-matrix families as JSON lines.
    DumpGammas,
    /// Write a full JSON report, with data, to a file.
    Report {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = LevelArg::Full)]
        level: LevelArg,
    },
}

fn parse_branch(s: &str) -> Result<Branch, String> {
    s.parse()
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn run(cli: Cli) -> Result<(String, bool), String> {
    let err = |e: octof4_core::CoreError| e.to_string();
    let table = matches!(cli.format, Format::Table);
    match cli.command {
        Command::Verify { level } => {
            let (report, _) = pipeline::verify(cli.branch, level.into(), DEFAULT_DEPTH, cli.timings);
            let text = if table { report.to_table() } else { json(&report) };
            Ok((text, report.passed()))
        }
        Command::SolveClosure => {
            let f = Frame::new().map_err(err)?;
            let rows = commands::solve_closure(&f).map_err(err)?;
            Ok((json(&rows), true))
        }
        Command::Spectrum { depth } => {
            let t = commands::spectrum(cli.branch, depth).map_err(err)?;
            let text = if table { commands::spectrum_table(&t) } else { json(&t) };
            Ok((text, true))
        }
        Command::LowestWeights => {
            let t = commands::lowest_weights(cli.branch).map_err(err)?;
            let text = if table { commands::lowest_weight_table(&t) } else { json(&t) };
            Ok((text, true))
        }
        Command::Numerics {
            component,
            grid,
            xmax,
            eigenvalues,
        } => {
            let ks: Vec<usize> = component.map_or_else(|| (1..=16).collect(), |k| vec![k]);
            let rows = commands::numerics(&ks, grid, xmax, eigenvalues).map_err(err)?;
            let ok = rows.iter().all(|r| r.passed);
            let text = if table { commands::numerics_table(&rows) } else { json(&rows) };
            Ok((text, ok))
        }
        Command::DumpTensors => Ok((commands::dump_tensors(&Frame::new().map_err(err)?), true)),
        Command::DumpGammas => Ok((commands::dump_gammas(&Frame::new().map_err(err)?), true)),
        Command::Report { out, level } => {
            let (mut report, art) = pipeline::verify(cli.branch, level.into(), DEFAULT_DEPTH, cli.timings);
            report.command = "report".into();
            let numerics = commands::numerics(&(1..=16).collect::<Vec<_>>(), 2000, 12.0, 6).map_err(err)?;
            let critical: Vec<_> = art.critical.values().map(|(sol, _)| sol).collect();
            report.data = Some(serde_json::json!({
                "critical": critical,
                "lowest_weights": art.lowest_weights,
                "spectrum": art.spectrum,
                "equivalence": art.equivalence,
                "numerics": numerics,
            }));
            std::fs::write(&out, json(&report)).map_err(|e| format!("{}: {e}", out.display()))?;
            Ok((report.to_table(), report.passed()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, ok)) => {
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
