//! Built-in consistency checks: special-function identities, quadrature
//! against the log-power closed forms, and constant-order collapse.

use std::f64::consts::PI;
use std::fmt::{self, Write as _};

use crate::closedform::{exact_log_power, LogPowerSpec};
use crate::error::Result;
use crate::expansion::{approximate, build_moments, ApproxSpec};
use crate::expr::{parse, Catalog, FunctionModel, OrderFunction};
use crate::oracle::{self, QuadratureConfig};
use crate::specfun::{beta, digamma, gamma};
use crate::{Kind, Side};

#[derive(Debug, Clone, PartialEq)]
pub struct CaseOutcome {
    pub group: &'static str,
    pub name: String,
    /// Measured deviation, absent when the case errored.
    pub deviation: Option<f64>,
    pub tolerance: f64,
    pub error: Option<String>,
}

impl CaseOutcome {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.deviation.is_some_and(|d| d <= self.tolerance)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SelftestReport {
    pub cases: Vec<CaseOutcome>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        !self.cases.is_empty() && self.cases.iter().all(CaseOutcome::passed)
    }

    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| !c.passed()).count()
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        let _ = writeln!(s, "{:<10} {:<48} {:>11} {:>9}  result", "group", "case", "deviation", "tol");
        for c in &self.cases {
            let dev = c.deviation.map_or_else(|| "-".to_string(), |d| format!("{d:.3e}"));
            let _ = write!(
                s,
                "{:<10} {:<48} {:>11} {:>9.0e}  {}",
                c.group,
                c.name,
                dev,
                c.tolerance,
                if c.passed() { "PASS" } else { "FAIL" }
            );
            if let Some(e) = &c.error {
                let _ = write!(s, "  ({e})");
            }
            s.push('\n');
        }
        let _ = write!(
            s,
            "{} cases, {} failed: {}",
            self.cases.len(),
            self.failures(),
            if self.passed() { "PASS" } else { "FAIL" }
        );
        f.write_str(&s)
    }
}

type Check = Box<dyn Fn(&QuadratureConfig) -> Result<f64>>;

struct Case {
    group: &'static str,
    name: String,
    tolerance: f64,
    check: Check,
}

fn case(group: &'static str, name: String, tolerance: f64, check: impl Fn(&QuadratureConfig) -> Result<f64> + 'static) -> Case {
    Case { group, name, tolerance, check: Box::new(check) }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn specfun_cases(out: &mut Vec<Case>) {
    out.push(case("specfun", "gamma(x+1) = x gamma(x), x in (0.1, 50)".into(), 1e-12, |_| {
        let mut worst: f64 = 0.0;
        for i in 0..200 {
            let x = 0.1 + 49.9 * i as f64 / 199.0;
            worst = worst.max(rel(gamma(x + 1.0)?, x * gamma(x)?));
        }
        Ok(worst)
    }));
    out.push(case("specfun", "gamma reflection on (-4.5, 4.5)".into(), 1e-12, |_| {
        let mut worst: f64 = 0.0;
        for i in 0..90 {
            let x = -4.45 + 0.1 * i as f64;
            if (x - x.round()).abs() < 1e-9 {
                continue;
            }
            worst = worst.max(rel(gamma(x)? * gamma(1.0 - x)?, PI / (PI * x).sin()));
        }
        Ok(worst)
    }));
    out.push(case("specfun", "gamma(1/2) = sqrt(pi)".into(), 1e-15, |_| Ok(rel(gamma(0.5)?, PI.sqrt()))));
    out.push(case("specfun", "digamma(x+1) = digamma(x) + 1/x".into(), 1e-11, |_| {
        let mut worst: f64 = 0.0;
        for i in 0..200 {
            let x = 0.1 + 49.9 * i as f64 / 199.0;
            worst = worst.max((digamma(x + 1.0)? - digamma(x)? - 1.0 / x).abs());
        }
        Ok(worst)
    }));
    out.push(case("specfun", "digamma reflection".into(), 1e-11, |_| {
        let mut worst: f64 = 0.0;
        for i in 0..40 {
            let x = 0.05 + 0.0225 * i as f64;
            let lhs = digamma(1.0 - x)? - digamma(x)?;
            worst = worst.max((lhs - PI / (PI * x).tan()).abs());
        }
        Ok(worst)
    }));
    out.push(case("specfun", "beta(p,q) = gamma(p)gamma(q)/gamma(p+q)".into(), 1e-10, |_| {
        let mut worst: f64 = 0.0;
        for i in 0..20 {
            for j in 0..20 {
                let (p, q) = (0.1 + i as f64, 0.1 + j as f64 * 0.95);
                worst = worst.max(rel(beta(p, q)?, gamma(p)? * gamma(q)? / gamma(p + q)?));
            }
        }
        Ok(worst)
    }));
}

fn oracle_cases(out: &mut Vec<Case>) {
    for side in [Side::Left, Side::Right] {
        for gamma_exp in [0.5, 1.0, 2.0, 3.7] {
            for alpha in ["0.5", "t/20"] {
                for kind in Kind::ALL {
                    let name = format!("{side} type {kind}, log-power {gamma_exp}, alpha = {alpha}");
                    out.push(case("oracle", name, 1e-6, move |cfg| {
                        let catalog = match side {
                            Side::Left => Catalog::LogPow(gamma_exp),
                            Side::Right => Catalog::RLogPow(gamma_exp),
                        };
                        let x = FunctionModel::from_catalog(catalog, 1.0, 5.0, 2)?;
                        let order = OrderFunction::parse(alpha, 1.0, 5.0)?;
                        let spec = LogPowerSpec::new(side, gamma_exp, 1.0, 5.0)?;
                        let mut worst: f64 = 0.0;
                        for t in [1.5, 2.5, 3.5, 4.5] {
                            let got = oracle::evaluate(side, kind, &x, &order, t, cfg)?;
                            let want = exact_log_power(&spec, kind, &order, t)?;
                            worst = worst.max((got - want).abs());
                        }
                        Ok(worst)
                    }));
                }
            }
        }
    }
}

fn collapse_cases(out: &mut Vec<Case>) {
    for side in [Side::Left, Side::Right] {
        out.push(case("collapse", format!("{side} quadrature types agree, alpha = 0.35"), 1e-9, move |cfg| {
            let x = FunctionModel::new(parse("exp(t/3)+ln(t)")?, 1.0, 5.0, 2)?;
            let order = OrderFunction::constant(0.35, 1.0, 5.0)?;
            let mut worst: f64 = 0.0;
            for t in [1.5, 2.5, 3.5, 4.5] {
                let v1 = oracle::evaluate(side, Kind::Type1, &x, &order, t, cfg)?;
                for kind in [Kind::Type2, Kind::Type3] {
                    worst = worst.max((oracle::evaluate(side, kind, &x, &order, t, cfg)? - v1).abs());
                }
            }
            Ok(worst)
        }));
        out.push(case("collapse", format!("{side} expansion types agree, alpha = 0.35"), 1e-12, move |_| {
            let x = FunctionModel::new(parse("exp(t/3)+ln(t)")?, 1.0, 5.0, 11)?;
            let order = OrderFunction::constant(0.35, 1.0, 5.0)?;
            let grid = ApproxSpec::uniform_grid(side, 1.0, 5.0, 8);
            let spec = ApproxSpec::new(side, Kind::Type3, 1, 10, 1.0, 5.0, grid)?;
            let moments = build_moments(&x, &spec)?;
            let mut worst: f64 = 0.0;
            for i in 0..spec.grid.len() {
                let v1 = approximate(Kind::Type1, &x, &order, &spec, &moments, i)?;
                for kind in [Kind::Type2, Kind::Type3] {
                    worst = worst.max((approximate(kind, &x, &order, &spec, &moments, i)? - v1).abs());
                }
            }
            Ok(worst)
        }));
    }
}

/// Runs every case whose group equals `filter` or whose name contains it.
pub fn run_selftest(filter: Option<&str>, cfg: &QuadratureConfig) -> SelftestReport {
    let mut cases = Vec::new();
    specfun_cases(&mut cases);
    oracle_cases(&mut cases);
    collapse_cases(&mut cases);
    let selected = cases
        .into_iter()
        .filter(|c| filter.is_none_or(|f| c.group == f || c.name.contains(f)));
    let mut report = SelftestReport::default();
    for c in selected {
        let (deviation, error) = match (c.check)(cfg) {
            Ok(d) => (Some(d), None),
            Err(e) => (None, Some(e.to_string())),
        };
        report.cases.push(CaseOutcome { group: c.group, name: c.name, deviation, tolerance: c.tolerance, error });
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_run_passes() {
        let report = run_selftest(None, &QuadratureConfig::default());
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn filter_selects_group() {
        let report = run_selftest(Some("specfun"), &QuadratureConfig::default());
        assert!(!report.cases.is_empty());
        assert!(report.cases.iter().all(|c| c.group == "specfun"));
    }

    #[test]
    fn impossible_tolerance_fails() {
        let cfg = QuadratureConfig { tolerance: 1e-30, max_levels: 12 };
        let report = run_selftest(Some("oracle"), &cfg);
        assert!(!report.passed());
        assert!(report.to_string().ends_with("FAIL"));
    }

    #[test]
    fn empty_selection_is_not_a_pass() {
        assert!(!run_selftest(Some("nothing-matches"), &QuadratureConfig::default()).passed());
    }
}
