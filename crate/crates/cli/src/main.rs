use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use stabc_cli::commands::{self, Format, PsiSource, SampleKind, SWEEP_AGREEMENT_TOL};
use stabc_cli::verify::{self, VerifyOptions};
use stabc_cli::{CliError, CliResult};

const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Parser)]
#[command(name = "stabc", version, about = "State complexity in the qudit stabilizer formalism")]
struct Cli {
    /// Master seed for every random draw.
    #[arg(long, global = true, env = "STABC_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    RhoP,
}

#[derive(Clone, Copy, ValueEnum)]
enum PsiArg {
    Stabilizer,
    Fiducial,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Pure,
    Mixed,
}

#[derive(Subcommand)]
enum Command {
    /// Complexity report for one state file.
    Compute {
        input: PathBuf,
        /// Include the per-operator I and J tables.
        #[arg(long)]
        tables: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run named verification suites.
    Verify {
        /// One of weyl, charfun, tradeoff, prop1, prop2-bounds, clifford,
        /// complementarity, qubit, rho-p, convexity, stabilizers, fiducials, all.
        suite: String,
        #[arg(long, value_delimiter = ',', default_values_t = [2usize, 3, 4, 5])]
        d: Vec<usize>,
        #[arg(long)]
        samples: Option<usize>,
        /// Plain table when omitted.
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate a state family.
    Sweep {
        #[arg(long, value_enum, default_value = "rho-p")]
        family: Family,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value = "stabilizer")]
        psi: PsiArg,
        #[arg(long, default_value_t = 101)]
        steps: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stabilizer and fiducial extremes for a prime dimension.
    Extremal {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write random states as state files.
    Sample {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        samples: usize,
        #[arg(long, value_enum, default_value = "pure")]
        kind: KindArg,
        /// Rank of mixed samples; full rank when omitted.
        #[arg(long)]
        rank: Option<usize>,
        /// Directory for `state-NNNN.json` files; a JSON array on stdout otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> CliResult<String> {
    let seed = cli.seed;
    match cli.command {
        Command::Compute { input, tables, format, out } => {
            let computed = commands::compute(&input, tables, format.into())?;
            for w in &computed.warnings {
                eprintln!("warning: {w}");
            }
            Ok(commands::emit(computed.text, out.as_deref())?.unwrap_or_default())
        }
        Command::Verify { suite, d, samples, format, out } => {
            let suites = verify::parse_suites(&suite)?;
            if let Some(&bad) = d.iter().find(|&&x| x < 2) {
                return Err(CliError::Usage(format!("--d values must be at least 2, got {bad}")));
            }
            let opts = VerifyOptions { dims: d, samples, seed };
            let mut checks = Vec::new();
            for s in suites {
                checks.extend(verify::run_suite(s, &opts)?);
            }
            let text = match format.map(Format::from) {
                None => verify::render_text(&checks),
                Some(Format::Json) => commands::to_json(&checks),
                Some(Format::Csv) => verify::render_csv(&checks),
            };
            let shown = commands::emit(text, out.as_deref())?.unwrap_or_default();
            let failed = checks.iter().filter(|c| c.failed()).count();
            if failed > 0 {
                print!("{shown}");
                return Err(CliError::ChecksFailed { failed, total: checks.len() });
            }
            Ok(shown)
        }
        Command::Sweep { family: Family::RhoP, d, psi, steps, format, out } => {
            let psi = match psi {
                PsiArg::Stabilizer => PsiSource::Stabilizer,
                PsiArg::Fiducial => PsiSource::Fiducial,
            };
            let sweep = commands::sweep_rho_p(d, psi, steps)?;
            let shown = commands::emit(commands::render_sweep(&sweep.rows, format.into()), out.as_deref())?;
            if sweep.max_gap > SWEEP_AGREEMENT_TOL {
                print!("{}", shown.unwrap_or_default());
                eprintln!("c_value and c_analytic differ by {:e}", sweep.max_gap);
                return Err(CliError::ChecksFailed { failed: 1, total: 1 });
            }
            Ok(shown.unwrap_or_default())
        }
        Command::Extremal { d, out } => {
            let summary = commands::extremal(d)?;
            Ok(commands::emit(commands::to_json(&summary), out.as_deref())?.unwrap_or_default())
        }
        Command::Sample { d, samples, kind, rank, out } => {
            let kind = match kind {
                KindArg::Pure => SampleKind::Pure,
                KindArg::Mixed => SampleKind::Mixed { rank },
            };
            let files = commands::sample_states(d, samples, kind, seed)?;
            match out {
                Some(dir) => {
                    let io = |source| CliError::Io { path: dir.clone(), source };
                    std::fs::create_dir_all(&dir).map_err(io)?;
                    for (i, f) in files.iter().enumerate() {
                        let path = dir.join(format!("state-{i:04}.json"));
                        commands::emit(f.to_json() + "\n", Some(&path))?;
                    }
                    Ok(String::new())
                }
                None => Ok(commands::to_json(&files)),
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
