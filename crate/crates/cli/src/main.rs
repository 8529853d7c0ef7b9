use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ricf_cli::report::{summary_line, write_csv, write_json};
use ricf_cli::{
    load_spec, load_suite, oracle, run_suite, spec_to_toml, CliError, Overrides, EXIT_USAGE,
};
use ricf_core::space::{list_builtins, GeneratorConfig, GeneratorMode};
use ricf_core::SpaceSpec;

#[derive(Parser)]
#[command(
    name = "ricf",
    version,
    about = "Weighted comparison-geometry checks on rotationally symmetric spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    FBounded,
    FSlope,
    NTensor,
}

#[derive(Subcommand)]
enum Command {
    /// Run a suite of checks against a space.
    Check {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        suite: PathBuf,
        /// Report file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Evaluate inequalities even when hypotheses are not certified.
        #[arg(long)]
        falsify: bool,
        /// Replace the seed of a generator space.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        grid: Option<usize>,
        /// Violation threshold for pointwise margins (<= 0).
        #[arg(long, allow_negative_numbers = true)]
        tol_margin: Option<f64>,
    },
    /// List the named closed-form spaces.
    ListBuiltins,
    /// Print a generator space file.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long = "H", allow_negative_numbers = true)]
        h: f64,
        #[arg(long, value_enum)]
        mode: Mode,
        /// k, a or N depending on the mode.
        #[arg(long)]
        param: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        closed: bool,
        #[arg(long)]
        r_cap: Option<f64>,
        #[arg(long, default_value = "generated")]
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the kernel cross-checks.
    Oracle {
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|source| {
            CliError::Io {
                path: p.clone(),
                source,
            }
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn io_err(out: &Option<PathBuf>) -> impl Fn(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: out.clone().unwrap_or_else(|| PathBuf::from("<stdout>")),
        source,
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Check {
            space,
            suite,
            out,
            format,
            falsify,
            seed,
            grid,
            tol_margin,
        } => {
            let mut spec = load_spec(&space)?;
            if let Some(s) = seed {
                if spec.generator.is_none() {
                    return Err(CliError::Usage(
                        "--seed applies only to generator spaces".into(),
                    ));
                }
                spec.seed = Some(s);
            }
            let built = spec.build().map_err(|source| CliError::Invalid {
                path: space.clone(),
                source,
            })?;
            let suite_cfg = load_suite(&suite)?;
            let overrides = Overrides {
                falsify,
                grid,
                tol_margin,
            };
            let reports = run_suite(&built, &suite_cfg, &overrides)?;
            let mut w = sink(&out)?;
            match format {
                Format::Csv => write_csv(&reports, &mut w),
                Format::Json => write_json(&reports, &mut w),
            }
            .and_then(|_| w.flush())
            .map_err(io_err(&out))?;
            for r in &reports {
                eprintln!("{}", summary_line(r));
            }
            Ok(ricf_cli::exit_code(&reports))
        }
        Command::ListBuiltins => {
            let mut w = io::stdout().lock();
            for b in list_builtins() {
                writeln!(
                    w,
                    "{:<20} params: {:<14} {}",
                    b.name,
                    b.params.join(","),
                    b.summary
                )
                .map_err(io_err(&None))?;
            }
            Ok(0)
        }
        Command::Gen {
            n,
            h,
            mode,
            param,
            seed,
            closed,
            r_cap,
            name,
            out,
        } => {
            let mode = match mode {
                Mode::FBounded => GeneratorMode::FBounded { k: param },
                Mode::FSlope => GeneratorMode::FSlope { a: param },
                Mode::NTensor => GeneratorMode::NTensor { n_param: param },
            };
            let mut cfg = GeneratorConfig::new(n, h, mode, seed);
            cfg.closed = closed;
            cfg.r_cap = r_cap;
            let spec = SpaceSpec::from_generator(&name, &cfg);
            // Fail here rather than on first use.
            spec.build()?;
            let mut w = sink(&out)?;
            w.write_all(spec_to_toml(&spec).as_bytes())
                .and_then(|_| w.flush())
                .map_err(io_err(&out))?;
            Ok(0)
        }
        Command::Oracle { format } => {
            let results = oracle::run_oracles()?;
            let mut w = io::stdout().lock();
            match format {
                Some(Format::Json) => {
                    serde_json::to_writer_pretty(&mut w, &results)
                        .map_err(io::Error::from)
                        .map_err(io_err(&None))?;
                    writeln!(w).map_err(io_err(&None))?;
                }
                _ => {
                    for o in &results {
                        writeln!(
                            w,
                            "{:<28} {:<5} computed={:.16e} reference={:.16e} error={:.3e} tol={:.0e}",
                            o.name,
                            if o.pass { "PASS" } else { "FAIL" },
                            o.computed,
                            o.reference,
                            o.error,
                            o.tolerance
                        )
                        .map_err(io_err(&None))?;
                    }
                }
            }
            Ok(if results.iter().all(|o| o.pass) { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
