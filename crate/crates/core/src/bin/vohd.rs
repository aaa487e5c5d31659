use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use vohd::cli::{
    emit_plot, exit_code, run_compare, run_eval, run_scenario, run_selftest, write_outputs, write_plot, Command,
    Format, Method, RunConfig, RunOptions, Scenario, QTOL_ENV,
};
use vohd::oracle::QuadratureConfig;
use vohd::{Error, Kind, Result, Side};

#[derive(Parser)]
#[command(name = "vohd", version, about = "Variable-order Caputo-Hadamard fractional derivatives")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate one operator on a uniform grid and print CSV.
    Eval(RunArgs),
    /// Compare expansions with a reference and check the error bounds.
    Compare(RunArgs),
    /// Render SVG panels from a CSV written by eval or compare.
    Plot {
        csv: PathBuf,
        /// Output stem; writes <stem>-values.svg and <stem>-errors.svg.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the built-in consistency checks.
    Selftest {
        /// Run only the group (specfun, oracle, collapse) or cases matching this text.
        filter: Option<String>,
        #[arg(long)]
        qtol: Option<f64>,
    },
    /// Reference run: ln t, left side, N = 10, 20, 30.
    #[command(name = "paper-left")]
    LeftReference(ScenarioArgs),
    /// Reference run: ln(5/t), right side, N = 2, 4, 6.
    #[command(name = "paper-right")]
    RightReference(ScenarioArgs),
}

#[derive(Args)]
struct RunArgs {
    /// left (memory from a) or right (memory from b) [default: left]
    #[arg(long)]
    side: Option<Side>,
    /// Operator type 1, 2 or 3 [default: 1]
    #[arg(long = "type")]
    kind: Option<Kind>,
    /// Function: lnt, logpow(γ), rlogpow(γ) or an expression in t.
    #[arg(long)]
    x: Option<String>,
    /// Order function α(t), an expression in t with values in (0, 1).
    #[arg(long)]
    alpha: Option<String>,
    /// Left end of the interval, > 0 [default: 1]
    #[arg(long)]
    a: Option<f64>,
    /// Right end of the interval [default: 5]
    #[arg(long)]
    b: Option<f64>,
    /// Number of grid points [default: 100]
    #[arg(long)]
    grid: Option<usize>,
    /// Number of x_k terms kept exactly [default: 1]
    #[arg(long = "n")]
    n: Option<usize>,
    /// Truncation order; repeat for several.
    #[arg(long = "N")]
    big_n: Vec<usize>,
    /// closed, oracle, expansion or all [default: all]
    #[arg(long)]
    method: Option<Method>,
    /// Output stem; without it CSV goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv, svg or both [default: csv]
    #[arg(long)]
    format: Option<Format>,
    /// Quadrature tolerance; overrides VOHD_QTOL and the config file [default: 1e-10]
    #[arg(long)]
    qtol: Option<f64>,
    /// key = value settings file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct ScenarioArgs {
    /// Directory for the CSV and SVG files.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long)]
    qtol: Option<f64>,
}

fn env_qtol() -> Option<String> {
    std::env::var(QTOL_ENV).ok()
}

fn resolve_qtol(flag: Option<f64>) -> Result<f64> {
    let tolerance = match (flag, env_qtol()) {
        (Some(q), _) => q,
        (None, Some(v)) => v
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("{QTOL_ENV} expects a number, got `{v}`")))?,
        (None, None) => QuadratureConfig::default().tolerance,
    };
    Ok(QuadratureConfig::with_tolerance(tolerance)?.tolerance)
}

fn resolve(command: Command, args: RunArgs) -> Result<RunConfig> {
    let file = match &args.config {
        Some(path) => RunOptions::from_config_file(path)?,
        None => RunOptions::default(),
    };
    let flags = RunOptions {
        side: args.side,
        kind: args.kind,
        x: args.x,
        alpha: args.alpha,
        a: args.a,
        b: args.b,
        grid: args.grid,
        n: args.n,
        big_n: args.big_n,
        method: args.method,
        out: args.out,
        format: args.format,
        qtol: args.qtol,
    };
    RunConfig::resolve(command, flags, file, env_qtol().as_deref())
}

fn emit(table: &vohd::cli::Table, config: &RunConfig) -> Result<()> {
    match &config.out {
        Some(out) => {
            for path in write_outputs(table, config.format, out)? {
                println!("wrote {}", path.display());
            }
        }
        None if config.format == Format::Csv => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(table.to_csv().as_bytes())
                .map_err(|e| Error::Io(e.to_string()))?;
        }
        None => return Err(Error::Config("SVG output needs --out".into())),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Cmd::Eval(args) => {
            let config = resolve(Command::Eval, args)?;
            emit(&run_eval(&config)?, &config)?;
        }
        Cmd::Compare(args) => {
            let config = resolve(Command::Compare, args)?;
            let comparison = run_compare(&config)?;
            emit(&comparison.table, &config)?;
            if config.out.is_some() {
                println!("{comparison}");
            } else {
                eprintln!("{comparison}");
            }
        }
        Cmd::Plot { csv, out } => {
            let text = std::fs::read_to_string(&csv).map_err(|e| Error::Io(format!("{}: {e}", csv.display())))?;
            for path in write_plot(&emit_plot(&text)?, &out)? {
                println!("wrote {}", path.display());
            }
        }
        Cmd::Selftest { filter, qtol } => {
            let cfg = QuadratureConfig { tolerance: resolve_qtol(qtol)?, ..Default::default() };
            let report = run_selftest(filter.as_deref(), &cfg);
            println!("{report}");
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Cmd::LeftReference(args) => scenario(Scenario::LeftReference, args)?,
        Cmd::RightReference(args) => scenario(Scenario::RightReference, args)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn scenario(which: Scenario, args: ScenarioArgs) -> Result<()> {
    let report = run_scenario(which, &args.out, resolve_qtol(args.qtol)?)?;
    for (kind, comparison) in &report.runs {
        println!("{} type {kind}", which.name());
        println!("{comparison}");
    }
    for path in &report.files {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
