//! Command-line front end: evaluation and comparison over a grid, plotting,
//! the self-test and the two built-in reference scenarios.
//!
//! Settings come from flags, an optional `key = value` file (flags win) and
//! the `VOHD_QTOL` environment variable, which overrides the quadrature
//! tolerance from the file but not an explicit `--qtol`.

mod selftest;
mod svg;
mod table;

pub use selftest::{run_selftest, CaseOutcome, SelftestReport};
pub use svg::{emit_plot, plot_table, Plot};
pub use table::{Columns, ComparisonRow, Table};

use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;

use crate::closedform::ScaledLogPower;
use crate::error::{Error, Result};
use crate::expansion::{self, build_moments, ApproxSpec, MomentTable};
use crate::expr::{FunctionModel, FunctionSource, OrderFunction};
use crate::oracle::{self, QuadratureConfig};
use crate::{Kind, Side};

pub const QTOL_ENV: &str = "VOHD_QTOL";

/// Absolute slack when checking observed error against a bound, so that
/// roundoff does not count as a violation of a zero bound.
pub const BOUND_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Eval,
    Compare,
    Plot,
    Selftest,
    LeftReference,
    RightReference,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Closed,
    Oracle,
    Expansion,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Svg,
    Both,
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(Method::Closed),
            "oracle" => Ok(Method::Oracle),
            "expansion" => Ok(Method::Expansion),
            "all" => Ok(Method::All),
            _ => Err(Error::Config(format!("method must be closed, oracle, expansion or all, got `{s}`"))),
        }
    }
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "svg" => Ok(Format::Svg),
            "both" => Ok(Format::Both),
            _ => Err(Error::Config(format!("format must be csv, svg or both, got `{s}`"))),
        }
    }
}

/// Settings as given, before defaults. Used for flags and for config files.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunOptions {
    pub side: Option<Side>,
    pub kind: Option<Kind>,
    pub x: Option<String>,
    pub alpha: Option<String>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub grid: Option<usize>,
    pub n: Option<usize>,
    pub big_n: Vec<usize>,
    pub method: Option<Method>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub qtol: Option<f64>,
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("`{key}` expects a number, got `{value}`")))
}

impl RunOptions {
    /// Parses `key = value` lines; `#` starts a comment. `N` may repeat or
    /// hold a comma-separated list.
    pub fn from_config_text(text: &str) -> Result<RunOptions> {
        let mut o = RunOptions::default();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("config line {}: expected key = value", no + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "side" => o.side = Some(value.parse()?),
                "type" => o.kind = Some(value.parse()?),
                "x" => o.x = Some(value.to_string()),
                "alpha" => o.alpha = Some(value.to_string()),
                "a" => o.a = Some(parse_num(key, value)?),
                "b" => o.b = Some(parse_num(key, value)?),
                "grid" => o.grid = Some(parse_num(key, value)?),
                "n" => o.n = Some(parse_num(key, value)?),
                "N" => {
                    for part in value.split(',') {
                        o.big_n.push(parse_num(key, part)?);
                    }
                }
                "method" => o.method = Some(value.parse()?),
                "out" => o.out = Some(PathBuf::from(value)),
                "format" => o.format = Some(value.parse()?),
                "qtol" => o.qtol = Some(parse_num(key, value)?),
                _ => return Err(Error::Config(format!("config line {}: unknown key `{key}`", no + 1))),
            }
        }
        Ok(o)
    }

    pub fn from_config_file(path: &Path) -> Result<RunOptions> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_config_text(&text)
    }
}

/// A fully resolved run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub side: Side,
    pub kind: Kind,
    pub x: String,
    pub alpha: String,
    pub a: f64,
    pub b: f64,
    pub grid: usize,
    pub n: usize,
    pub big_n: Vec<usize>,
    pub method: Method,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub qtol: f64,
}

impl RunConfig {
    /// Flags over environment (tolerance only) over file over defaults.
    pub fn resolve(command: Command, flags: RunOptions, file: RunOptions, env_qtol: Option<&str>) -> Result<RunConfig> {
        let env_qtol = match env_qtol {
            Some(v) => Some(parse_num::<f64>(QTOL_ENV, v)?),
            None => None,
        };
        let big_n = if !flags.big_n.is_empty() {
            flags.big_n
        } else if !file.big_n.is_empty() {
            file.big_n
        } else {
            vec![10, 20, 30]
        };
        let config = RunConfig {
            command,
            side: flags.side.or(file.side).unwrap_or(Side::Left),
            kind: flags.kind.or(file.kind).unwrap_or(Kind::Type1),
            x: flags.x.or(file.x).unwrap_or_else(|| "lnt".into()),
            alpha: flags.alpha.or(file.alpha).unwrap_or_else(|| "t/20".into()),
            a: flags.a.or(file.a).unwrap_or(1.0),
            b: flags.b.or(file.b).unwrap_or(5.0),
            grid: flags.grid.or(file.grid).unwrap_or(100),
            n: flags.n.or(file.n).unwrap_or(1),
            big_n,
            method: flags.method.or(file.method).unwrap_or(Method::All),
            out: flags.out.or(file.out),
            format: flags.format.or(file.format).unwrap_or(Format::Csv),
            qtol: flags.qtol.or(env_qtol).or(file.qtol).unwrap_or(QuadratureConfig::default().tolerance),
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a > 0.0 && self.a < self.b && self.b.is_finite()) {
            return Err(Error::Config("interval requires a < b".into()));
        }
        if self.grid < 2 {
            return Err(Error::Config("grid needs at least 2 points".into()));
        }
        if self.n < 1 {
            return Err(Error::Config("n must be at least 1".into()));
        }
        if self.big_n.is_empty() {
            return Err(Error::Config("at least one N is required".into()));
        }
        if let Some(&bad) = self.big_n.iter().find(|&&m| m < self.n) {
            return Err(Error::Config(format!("N = {bad} is below n = {}", self.n)));
        }
        self.quadrature()?;
        Ok(())
    }

    pub fn quadrature(&self) -> Result<QuadratureConfig> {
        QuadratureConfig { tolerance: self.qtol, ..Default::default() }.validated()
    }

    pub fn grid_points(&self) -> Vec<f64> {
        ApproxSpec::uniform_grid(self.side, self.a, self.b, self.grid)
    }
}

/// Exit status for a failed run: 3 for numerical trouble, 2 otherwise.
pub fn exit_code(err: &Error) -> i32 {
    if err.is_numerical() {
        3
    } else {
        2
    }
}

struct Problem {
    x: FunctionModel,
    order: OrderFunction,
    closed: Option<ScaledLogPower>,
    cfg: QuadratureConfig,
    grid: Vec<f64>,
}

impl Problem {
    fn new(config: &RunConfig) -> Result<Problem> {
        let source = FunctionSource::parse(&config.x)?;
        let depth = config.big_n.iter().copied().max().unwrap_or(config.n).max(config.n) + 1;
        let x = FunctionModel::from_source(&source, config.a, config.b, depth)?;
        let order = OrderFunction::parse(&config.alpha, config.a, config.b)?;
        let closed = match source {
            FunctionSource::Catalog(c) => ScaledLogPower::for_catalog(c, config.side, config.a, config.b),
            FunctionSource::Expression(_) => None,
        };
        Ok(Problem { x, order, closed, cfg: config.quadrature()?, grid: config.grid_points() })
    }
}

struct Plan {
    exact: bool,
    oracle: bool,
    expansion: bool,
    err: bool,
}

fn plan(config: &RunConfig, problem: &Problem, compare: bool) -> Result<Plan> {
    let has_closed = problem.closed.is_some();
    let plan = match config.method {
        Method::Closed if compare => return Err(Error::Config("nothing to compare: method `closed` gives one value source".into())),
        Method::Oracle if compare => return Err(Error::Config("nothing to compare: method `oracle` gives one value source".into())),
        Method::Closed => Plan { exact: true, oracle: false, expansion: false, err: false },
        Method::Oracle => Plan { exact: false, oracle: true, expansion: false, err: false },
        Method::Expansion if compare => Plan { exact: has_closed, oracle: !has_closed, expansion: true, err: true },
        Method::Expansion => Plan { exact: false, oracle: false, expansion: true, err: false },
        Method::All => Plan { exact: has_closed, oracle: true, expansion: true, err: true },
    };
    if config.method == Method::Closed && !has_closed {
        return Err(Error::Config(format!(
            "no closed form for x = `{}` on the {} side; closed forms cover lnt, logpow(γ) and rlogpow(γ)",
            config.x, config.side
        )));
    }
    Ok(plan)
}

fn not_evaluated(r: Result<f64>) -> Result<Option<f64>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::DegeneratePoint { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn build_table(config: &RunConfig, compare: bool) -> Result<Table> {
    let problem = Problem::new(config)?;
    let plan = plan(config, &problem, compare)?;
    let kind = config.kind;
    let expansions: Vec<(ApproxSpec, MomentTable)> = if plan.expansion {
        config
            .big_n
            .iter()
            .map(|&big_n| {
                let spec = ApproxSpec::new(config.side, kind, config.n, big_n, config.a, config.b, problem.grid.clone())?;
                let moments = build_moments(&problem.x, &spec)?;
                Ok((spec, moments))
            })
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };

    let rows: Vec<Result<ComparisonRow>> = (0..problem.grid.len())
        .into_par_iter()
        .map(|i| {
            let t = problem.grid[i];
            let at = |e: Error| e.at(t);
            let exact = match (&problem.closed, plan.exact) {
                (Some(c), true) => Some(c.eval(kind, &problem.order, t).map_err(at)?),
                _ => None,
            };
            let oracle = if plan.oracle {
                Some(oracle::evaluate(config.side, kind, &problem.x, &problem.order, t, &problem.cfg).map_err(at)?)
            } else {
                None
            };
            let reference = exact.or(oracle);
            let mut row = ComparisonRow { t, exact, oracle, ..Default::default() };
            for (spec, moments) in &expansions {
                let approx =
                    not_evaluated(expansion::approximate(kind, &problem.x, &problem.order, spec, moments, i)).map_err(at)?;
                let bound = expansion::error_bound(kind, &problem.x, &problem.order, spec, t).map_err(at)?.value;
                let err = match (plan.err, approx, reference) {
                    (true, Some(v), Some(r)) => Some((v - r).abs()),
                    _ => None,
                };
                row.approx.push(approx);
                row.err.push(err);
                row.bound.push(Some(bound));
            }
            Ok(row)
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let columns = Columns {
        exact: plan.exact,
        oracle: plan.oracle,
        ns: if plan.expansion { config.big_n.clone() } else { Vec::new() },
        approx: plan.expansion,
        err: plan.err,
        bound: plan.expansion,
    };
    Ok(Table { columns, rows })
}

/// One row per grid point with the requested value sources.
pub fn run_eval(config: &RunConfig) -> Result<Table> {
    build_table(config, false)
}

/// Per-N maxima over the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryLine {
    pub big_n: usize,
    pub max_err: f64,
    pub max_bound: f64,
    /// Points where an approximation was reported.
    pub evaluated: usize,
    /// Points where the observed error exceeds the bound.
    pub violations: usize,
}

impl SummaryLine {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub table: Table,
    pub summary: Vec<SummaryLine>,
}

impl Comparison {
    pub fn passed(&self) -> bool {
        self.summary.iter().all(SummaryLine::passed)
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for line in &self.summary {
            let _ = writeln!(
                s,
                "N={:<3} max_err={:.3e} max_bound={:.3e} points={} violations={} {}",
                line.big_n,
                line.max_err,
                line.max_bound,
                line.evaluated,
                line.violations,
                if line.passed() { "PASS" } else { "FAIL" }
            );
        }
        let _ = write!(s, "overall {}", if self.passed() { "PASS" } else { "FAIL" });
        f.write_str(&s)
    }
}

/// Comparison table plus per-N summary; error ≤ bound + [`BOUND_SLACK`] is
/// checked pointwise.
pub fn run_compare(config: &RunConfig) -> Result<Comparison> {
    let table = build_table(config, true)?;
    let summary = table
        .columns
        .ns
        .iter()
        .enumerate()
        .map(|(j, &big_n)| {
            let mut line = SummaryLine { big_n, max_err: 0.0, max_bound: 0.0, evaluated: 0, violations: 0 };
            for row in &table.rows {
                if let Some(b) = row.bound[j] {
                    line.max_bound = line.max_bound.max(b);
                }
                if let Some(e) = row.err[j] {
                    line.evaluated += 1;
                    line.max_err = line.max_err.max(e);
                    if row.bound[j].is_some_and(|b| !(e <= b + BOUND_SLACK)) {
                        line.violations += 1;
                    }
                }
            }
            line
        })
        .collect();
    Ok(Comparison { table, summary })
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn stem_path(out: &Path, suffix: &str) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}{suffix}"))
}

/// Writes `<stem>-values.svg` and, when the table has errors,
/// `<stem>-errors.svg` next to `out`.
pub fn write_plot(plot: &Plot, out: &Path) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    let values = stem_path(out, "-values.svg");
    write_file(&values, &plot.values)?;
    written.push(values);
    if let Some(errors) = &plot.errors {
        let path = stem_path(out, "-errors.svg");
        write_file(&path, errors)?;
        written.push(path);
    }
    Ok(written)
}

/// Writes the table as `<stem>.csv` and/or its plots, per `format`.
pub fn write_outputs(table: &Table, format: Format, out: &Path) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    if matches!(format, Format::Csv | Format::Both) {
        let path = stem_path(out, ".csv");
        write_file(&path, &table.to_csv())?;
        written.push(path);
    }
    if matches!(format, Format::Svg | Format::Both) {
        written.extend(write_plot(&plot_table(table), out)?);
    }
    Ok(written)
}

/// The two pinned reference runs on [1, 5] with α(t) = t/20 and n = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    /// ln t, left side, N ∈ {10, 20, 30}.
    LeftReference,
    /// ln(5/t), right side, N ∈ {2, 4, 6}.
    RightReference,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::LeftReference => "paper-left",
            Scenario::RightReference => "paper-right",
        }
    }

    pub fn config(self, kind: Kind, qtol: f64) -> RunConfig {
        let (command, side, x, big_n) = match self {
            Scenario::LeftReference => (Command::LeftReference, Side::Left, "lnt", vec![10, 20, 30]),
            Scenario::RightReference => (Command::RightReference, Side::Right, "rlogpow(1)", vec![2, 4, 6]),
        };
        RunConfig {
            command,
            side,
            kind,
            x: x.into(),
            alpha: "t/20".into(),
            a: 1.0,
            b: 5.0,
            grid: 100,
            n: 1,
            big_n,
            method: Method::All,
            out: None,
            format: Format::Both,
            qtol,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioReport {
    pub runs: Vec<(Kind, Comparison)>,
    pub files: Vec<PathBuf>,
}

/// Runs all three types and writes `<name>-type<k>.csv` plus both SVG
/// panels per type into `dir`.
pub fn run_scenario(scenario: Scenario, dir: &Path, qtol: f64) -> Result<ScenarioReport> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let mut report = ScenarioReport { runs: Vec::new(), files: Vec::new() };
    for kind in Kind::ALL {
        let config = scenario.config(kind, qtol);
        let comparison = run_compare(&config)?;
        let out = dir.join(format!("{}-type{}", scenario.name(), kind));
        report.files.extend(write_outputs(&comparison.table, Format::Both, &out)?);
        report.runs.push((kind, comparison));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(method: Method) -> RunConfig {
        let mut c = Scenario::LeftReference.config(Kind::Type2, 1e-10);
        c.command = Command::Eval;
        c.method = method;
        c.grid = 5;
        c
    }

    #[test]
    fn config_file_and_precedence() {
        let file = RunOptions::from_config_text("# demo\nside = right\nN = 2, 4\nN=6\nqtol = 1e-8\ngrid=7\n").unwrap();
        assert_eq!(file.big_n, vec![2, 4, 6]);
        let flags = RunOptions { grid: Some(9), ..Default::default() };
        let c = RunConfig::resolve(Command::Eval, flags.clone(), file.clone(), Some("1e-9")).unwrap();
        assert_eq!((c.side, c.grid, c.qtol), (Side::Right, 9, 1e-9));
        let c = RunConfig::resolve(Command::Eval, flags, file, None).unwrap();
        assert_eq!(c.qtol, 1e-8);
        assert!(RunOptions::from_config_text("bogus = 1").is_err());
        assert!(RunOptions::from_config_text("no equals sign").is_err());
    }

    #[test]
    fn validation_messages() {
        let flags = RunOptions { a: Some(5.0), b: Some(1.0), ..Default::default() };
        let err = RunConfig::resolve(Command::Eval, flags, RunOptions::default(), None).unwrap_err();
        assert_eq!(err.to_string(), "invalid configuration: interval requires a < b");
        assert_eq!(exit_code(&err), 2);
        let flags = RunOptions { big_n: vec![0], ..Default::default() };
        assert!(RunConfig::resolve(Command::Eval, flags, RunOptions::default(), None).is_err());
        let flags = RunOptions { grid: Some(1), ..Default::default() };
        assert!(RunConfig::resolve(Command::Eval, flags, RunOptions::default(), None).is_err());
    }

    #[test]
    fn closed_eval_has_exact_column_only() {
        let table = run_eval(&config(Method::Closed)).unwrap();
        assert_eq!(table.header(), vec!["t", "exact"]);
        assert_eq!(table.rows.len(), 5);
        assert_eq!(table.rows[4].t, 5.0);
    }

    #[test]
    fn compare_needs_two_sources() {
        assert!(run_compare(&config(Method::Closed)).is_err());
        assert!(run_compare(&config(Method::Oracle)).is_err());
        let c = run_compare(&config(Method::Expansion)).unwrap();
        assert_eq!(c.table.columns.exact, true);
        assert_eq!(c.table.columns.oracle, false);
        assert_eq!(c.summary.len(), 3);
    }

    #[test]
    fn expression_without_closed_form_uses_quadrature_reference() {
        let mut c = config(Method::Expansion);
        c.x = "exp(t/5)".into();
        let cmp = run_compare(&c).unwrap();
        assert!(cmp.table.columns.oracle && !cmp.table.columns.exact);
        let mut c = config(Method::Closed);
        c.x = "exp(t/5)".into();
        assert!(run_eval(&c).is_err());
    }

    #[test]
    fn numerical_failures_name_the_point() {
        let mut c = config(Method::Oracle);
        c.qtol = 1e-30;
        let err = run_eval(&c).unwrap_err();
        assert_eq!(exit_code(&err), 3);
        assert!(err.to_string().starts_with("at t = "));
    }

    #[test]
    fn compare_summary_reports_per_n() {
        let c = run_compare(&config(Method::All)).unwrap();
        let text = c.to_string();
        assert!(text.contains("N=10"));
        assert!(text.ends_with("PASS") || text.ends_with("FAIL"));
    }
}
