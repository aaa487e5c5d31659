//! Comparison rows and their CSV form.
//!
//! Header: `t`, then `exact` and `oracle` when present, then for each N the
//! triple `approx_N{N},err_N{N},bound_N{N}` (or just the columns that were
//! computed). Reals use 17 significant digits; missing values are empty.

use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ComparisonRow {
    pub t: f64,
    pub exact: Option<f64>,
    pub oracle: Option<f64>,
    /// One entry per N, in the table's order.
    pub approx: Vec<Option<f64>>,
    pub err: Vec<Option<f64>>,
    pub bound: Vec<Option<f64>>,
}

/// Which columns a table carries.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Columns {
    pub exact: bool,
    pub oracle: bool,
    pub ns: Vec<usize>,
    pub approx: bool,
    pub err: bool,
    pub bound: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Columns,
    pub rows: Vec<ComparisonRow>,
}

fn cell(out: &mut String, v: Option<f64>) {
    out.push(',');
    if let Some(v) = v {
        let _ = write!(out, "{v:.16e}");
    }
}

#[derive(Clone, Copy)]
enum Field {
    T,
    Exact,
    Oracle,
    Approx(usize),
    Err(usize),
    Bound(usize),
}

impl Table {
    pub fn header(&self) -> Vec<String> {
        let c = &self.columns;
        let mut h = vec!["t".to_string()];
        if c.exact {
            h.push("exact".into());
        }
        if c.oracle {
            h.push("oracle".into());
        }
        for n in &c.ns {
            if c.approx {
                h.push(format!("approx_N{n}"));
            }
            if c.err {
                h.push(format!("err_N{n}"));
            }
            if c.bound {
                h.push(format!("bound_N{n}"));
            }
        }
        h
    }

    pub fn to_csv(&self) -> String {
        let c = &self.columns;
        let mut out = self.header().join(",");
        out.push('\n');
        for row in &self.rows {
            let _ = write!(out, "{:.16e}", row.t);
            if c.exact {
                cell(&mut out, row.exact);
            }
            if c.oracle {
                cell(&mut out, row.oracle);
            }
            for j in 0..c.ns.len() {
                if c.approx {
                    cell(&mut out, row.approx[j]);
                }
                if c.err {
                    cell(&mut out, row.err[j]);
                }
                if c.bound {
                    cell(&mut out, row.bound[j]);
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Table> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Csv("missing header".into()))?;
        let names: Vec<&str> = header.split(',').map(str::trim).collect();
        if names.first() != Some(&"t") {
            return Err(Error::Csv("first column must be `t`".into()));
        }
        let mut columns = Columns::default();
        let mut fields = Vec::with_capacity(names.len());
        for name in &names {
            let field = match *name {
                "t" if fields.is_empty() => Field::T,
                "exact" if !columns.exact => {
                    columns.exact = true;
                    Field::Exact
                }
                "oracle" if !columns.oracle => {
                    columns.oracle = true;
                    Field::Oracle
                }
                other => {
                    let (kind, n) = other
                        .split_once("_N")
                        .and_then(|(k, n)| Some((k, n.parse::<usize>().ok()?)))
                        .ok_or_else(|| Error::Csv(format!("unknown column `{other}`")))?;
                    let j = match columns.ns.iter().position(|&m| m == n) {
                        Some(j) => j,
                        None => {
                            columns.ns.push(n);
                            columns.ns.len() - 1
                        }
                    };
                    match kind {
                        "approx" => {
                            columns.approx = true;
                            Field::Approx(j)
                        }
                        "err" => {
                            columns.err = true;
                            Field::Err(j)
                        }
                        "bound" => {
                            columns.bound = true;
                            Field::Bound(j)
                        }
                        _ => return Err(Error::Csv(format!("unknown column `{other}`"))),
                    }
                }
            };
            fields.push(field);
        }
        let width = columns.ns.len();
        let mut rows = Vec::new();
        for (line_no, line) in lines.enumerate() {
            let cells: Vec<&str> = line.split(',').collect();
            if cells.len() != fields.len() {
                return Err(Error::Csv(format!(
                    "row {} has {} fields, header has {}",
                    line_no + 1,
                    cells.len(),
                    fields.len()
                )));
            }
            let mut row = ComparisonRow {
                approx: vec![None; width],
                err: vec![None; width],
                bound: vec![None; width],
                ..Default::default()
            };
            for (field, raw) in fields.iter().zip(cells) {
                let raw = raw.trim();
                let value = if raw.is_empty() {
                    None
                } else {
                    Some(raw.parse::<f64>().map_err(|_| {
                        Error::Csv(format!("row {}: `{raw}` is not a number", line_no + 1))
                    })?)
                };
                match *field {
                    Field::T => {
                        row.t = value.ok_or_else(|| Error::Csv(format!("row {}: empty t", line_no + 1)))?
                    }
                    Field::Exact => row.exact = value,
                    Field::Oracle => row.oracle = value,
                    Field::Approx(j) => row.approx[j] = value,
                    Field::Err(j) => row.err[j] = value,
                    Field::Bound(j) => row.bound[j] = value,
                }
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::Csv("no data rows".into()));
        }
        Ok(Table { columns, rows })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        Table {
            columns: Columns { exact: true, oracle: true, ns: vec![2, 4], approx: true, err: true, bound: true },
            rows: vec![
                ComparisonRow {
                    t: 1.0,
                    exact: Some(0.1),
                    oracle: Some(0.1 + 1e-17),
                    approx: vec![None, Some(-3.5e-300)],
                    err: vec![None, Some(1.0 / 3.0)],
                    bound: vec![Some(f64::MAX), Some(0.0)],
                },
                ComparisonRow {
                    t: 2.0,
                    exact: None,
                    oracle: Some(std::f64::consts::PI),
                    approx: vec![Some(1.0), Some(2.0)],
                    err: vec![Some(5e-324), Some(1e-5)],
                    bound: vec![Some(1.0), Some(2.0)],
                },
            ],
        }
    }

    #[test]
    fn round_trip_is_lossless() {
        let table = sample();
        let csv = table.to_csv();
        assert!(csv.starts_with("t,exact,oracle,approx_N2,err_N2,bound_N2,approx_N4,err_N4,bound_N4\n"));
        let back = Table::from_csv(&csv).unwrap();
        assert_eq!(back, table);
        assert_eq!(back.to_csv(), csv);
    }

    #[test]
    fn empty_cells_for_missing_values() {
        let csv = sample().to_csv();
        let first = csv.lines().nth(1).unwrap();
        assert!(first.contains(",,"));
    }

    #[test]
    fn malformed_inputs() {
        assert_eq!(Table::from_csv("t,exact\n").unwrap_err(), Error::Csv("no data rows".into()));
        assert!(Table::from_csv("").is_err());
        assert!(Table::from_csv("x,exact\n1,2\n").is_err());
        assert!(Table::from_csv("t,exact\n1\n").is_err());
        assert!(Table::from_csv("t,exact\n1,abc\n").is_err());
        assert!(Table::from_csv("t,weird_N3\n1,2\n").is_err());
    }
}
