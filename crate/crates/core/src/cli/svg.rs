//! Static SVG 1.1 line charts: a value panel and a log-scale error panel.

use std::fmt::Write as _;

use super::table::Table;
use crate::error::Result;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const LEFT: f64 = 90.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 60.0;
const PALETTE: [&str; 7] = ["#000000", "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];
// errors at or below this are drawn on the axis floor
const LOG_FLOOR: f64 = 1e-17;

/// Both panels of one comparison table.
#[derive(Debug, Clone, PartialEq)]
pub struct Plot {
    pub values: String,
    /// Present when the table has error columns.
    pub errors: Option<String>,
}

struct Curve {
    label: String,
    points: Vec<(f64, f64)>,
}

fn curve(label: String, table: &Table, pick: impl Fn(usize) -> Option<f64>) -> Curve {
    let points = (0..table.rows.len())
        .filter_map(|i| pick(i).filter(|v| v.is_finite()).map(|v| (table.rows[i].t, v)))
        .collect();
    Curve { label, points }
}

fn nice_step(span: f64) -> f64 {
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let frac = raw / mag;
    let nice = if frac <= 1.0 {
        1.0
    } else if frac <= 2.0 {
        2.0
    } else if frac <= 5.0 {
        5.0
    } else {
        10.0
    };
    nice * mag
}

fn label(v: f64, step: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if step < 1e-3 || v.abs() >= 1e5 {
        return format!("{v:.2e}");
    }
    let digits = (-step.log10().floor()).max(0.0) as usize;
    format!("{v:.digits$}")
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 * lo.abs().max(1.0) {
        return (lo - 0.5, hi + 0.5);
    }
    (lo, hi)
}

/// Renders curves; `log_y` draws log10 of the values with decade ticks.
fn render(title: &str, y_label: &str, curves: &[Curve], log_y: bool) -> String {
    let tf = |v: f64| if log_y { v.max(LOG_FLOOR).log10() } else { v };
    let (x0, x1) = range(curves.iter().flat_map(|c| c.points.iter().map(|p| p.0)));
    let (mut y0, mut y1) = range(curves.iter().flat_map(|c| c.points.iter().map(|p| tf(p.1))));
    if log_y {
        y0 = y0.floor();
        y1 = y1.ceil().max(y0 + 1.0);
    } else {
        let pad = 0.05 * (y1 - y0);
        y0 -= pad;
        y1 += pad;
    }
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| TOP + (y1 - y) / (y1 - y0) * ph;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="30" font-family="sans-serif" font-size="18" text-anchor="middle">{title}</text>"#,
        WIDTH / 2.0
    );
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black" stroke-width="1"/>"#
    );

    // x ticks
    let step = nice_step(x1 - x0);
    let mut k = (x0 / step).ceil();
    while k * step <= x1 + 1e-9 * step {
        let x = k * step;
        let px = sx(x);
        let _ = writeln!(
            s,
            r#"<line x1="{px:.2}" y1="{:.2}" x2="{px:.2}" y2="{:.2}" stroke="black" stroke-width="1"/>"#,
            TOP + ph,
            TOP + ph + 6.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{px:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="middle">{}</text>"#,
            TOP + ph + 22.0,
            label(x, step)
        );
        k += 1.0;
    }
    // y ticks
    let ystep = if log_y { ((y1 - y0) / 8.0).ceil().max(1.0) } else { nice_step(y1 - y0) };
    let mut k = (y0 / ystep).ceil();
    while k * ystep <= y1 + 1e-9 * ystep {
        let y = k * ystep;
        let py = sy(y);
        let text = if log_y { format!("1e{}", y as i64) } else { label(y, ystep) };
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{LEFT}" y2="{py:.2}" stroke="black" stroke-width="1"/>"#,
            LEFT - 6.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="end">{text}</text>"#,
            LEFT - 9.0,
            py + 4.0
        );
        k += 1.0;
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="14" text-anchor="middle">t</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        s,
        r#"<text x="20" y="{:.2}" font-family="sans-serif" font-size="14" text-anchor="middle" transform="rotate(-90 20 {:.2})">{y_label}</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0
    );

    for (i, c) in curves.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let dash = if i == 0 { "" } else { r#" stroke-dasharray="6 3""# };
        let pts: Vec<String> = c.points.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(tf(y)))).collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash} points="{}"/>"#,
            pts.join(" ")
        );
        let ly = TOP + 18.0 + 18.0 * i as f64;
        let lx = LEFT + pw - 150.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="1.5"{dash}/>"#,
            lx + 30.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12">{}</text>"#,
            lx + 36.0,
            ly + 4.0,
            c.label
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Renders the panels of a CSV produced by `run_eval` or `run_compare`.
pub fn emit_plot(csv: &str) -> Result<Plot> {
    let table = Table::from_csv(csv)?;
    Ok(plot_table(&table))
}

pub fn plot_table(table: &Table) -> Plot {
    let c = &table.columns;
    let mut values = Vec::new();
    if c.exact {
        values.push(curve("exact".into(), table, |i| table.rows[i].exact));
    } else if c.oracle {
        values.push(curve("quadrature".into(), table, |i| table.rows[i].oracle));
    }
    if c.approx {
        for (j, n) in c.ns.iter().enumerate() {
            values.push(curve(format!("N = {n}"), table, |i| table.rows[i].approx[j]));
        }
    }
    let errors = c.err.then(|| {
        let curves: Vec<Curve> = c
            .ns
            .iter()
            .enumerate()
            .map(|(j, n)| curve(format!("N = {n}"), table, |i| table.rows[i].err[j]))
            .collect();
        render("Absolute error", "error (log scale)", &curves, true)
    });
    Plot { values: render("Fractional derivative", "value", &values, false), errors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::table::{ComparisonRow, Columns};

    fn table(ns: Vec<usize>) -> Table {
        let rows = (1..=5)
            .map(|i| {
                let t = i as f64;
                ComparisonRow {
                    t,
                    exact: Some(t.ln()),
                    oracle: None,
                    approx: ns.iter().map(|&n| Some(t.ln() + 1.0 / n as f64)).collect(),
                    err: ns.iter().map(|&n| Some(1.0 / n as f64)).collect(),
                    bound: vec![None; ns.len()],
                }
            })
            .collect();
        Table { columns: Columns { exact: true, oracle: false, ns, approx: true, err: true, bound: false }, rows }
    }

    #[test]
    fn polyline_counts() {
        let plot = plot_table(&table(vec![10, 20, 30]));
        assert_eq!(plot.values.matches("<polyline").count(), 4);
        assert_eq!(plot.errors.as_ref().unwrap().matches("<polyline").count(), 3);
        assert!(plot.values.contains(r#"viewBox="0 0 800 600""#));
    }

    #[test]
    fn deterministic_and_from_csv() {
        let t = table(vec![2, 4]);
        let a = emit_plot(&t.to_csv()).unwrap();
        let b = emit_plot(&t.to_csv()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, plot_table(&t));
    }

    #[test]
    fn no_rows_is_an_error() {
        let err = emit_plot("t,exact\n").unwrap_err();
        assert!(err.to_string().contains("no data rows"));
    }

    #[test]
    fn zero_errors_sit_on_the_floor() {
        let mut t = table(vec![3]);
        t.rows[0].err[0] = Some(0.0);
        let svg = plot_table(&t).errors.unwrap();
        let line = svg.lines().find(|l| l.starts_with("<polyline")).unwrap();
        // first point on the bottom edge of the plot area
        assert!(line.contains(&format!("points=\"{LEFT:.2},{:.2}", HEIGHT - BOTTOM)), "{line}");
    }
}
