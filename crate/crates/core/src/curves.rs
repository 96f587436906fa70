//! Tabulated bound curves:
//! `fig5` is `1 − S sin²(ε/2)` over `ε ∈ [0, π]` for several `S`;
//! `fig6` is `1 − f⁻¹(S_v)²` over `S_v ∈ [0, 1]`;
//! `fig7` is `1 − g⁻¹(S_v2)²` over `S_v2 ∈ [1, 2]`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::entropy::{f_inverse, g_inverse};
use crate::error::{Error, Result};
use crate::protocols::bound_purity;
use crate::state_file::format_sig17;

pub const DEFAULT_RESOLUTION: usize = 201;
pub const DEFAULT_S_VALUES: [f64; 5] = [0.2, 0.4, 0.6, 0.8, 1.0];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Figure {
    Fig5,
    Fig6,
    Fig7,
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig5" => Ok(Figure::Fig5),
            "fig6" => Ok(Figure::Fig6),
            "fig7" => Ok(Figure::Fig7),
            other => Err(Error::InvalidSpec(format!("unknown figure `{other}`"))),
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Figure::Fig5 => "fig5",
            Figure::Fig6 => "fig6",
            Figure::Fig7 => "fig7",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurveRequest {
    pub figure: Figure,
    pub resolution: usize,
    /// Only used by `fig5`.
    pub s_values: Vec<f64>,
}

impl CurveRequest {
    pub fn new(figure: Figure) -> Self {
        CurveRequest {
            figure,
            resolution: DEFAULT_RESOLUTION,
            s_values: DEFAULT_S_VALUES.to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurveTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl CurveTable {
    pub fn column(&self, k: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[k]).collect()
    }

    /// Header plus one line per row, comma separated, `\n` line endings.
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&x| format_sig17(x)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// `resolution` evenly spaced points from `lo` to `hi`, endpoints exact.
fn grid(lo: f64, hi: f64, resolution: usize) -> Vec<f64> {
    let last = resolution - 1;
    (0..resolution)
        .map(|k| {
            if k == last {
                hi
            } else {
                lo + (hi - lo) * k as f64 / last as f64
            }
        })
        .collect()
}

fn s_column_name(s: f64) -> String {
    format!("S={s}")
}

pub fn curve_table(request: &CurveRequest) -> Result<CurveTable> {
    if request.resolution < 2 {
        return Err(Error::InvalidSpec(format!(
            "grid resolution {} must be at least 2",
            request.resolution
        )));
    }
    match request.figure {
        Figure::Fig5 => {
            if request.s_values.is_empty() {
                return Err(Error::InvalidSpec("fig5 needs at least one S value".into()));
            }
            let mut header = vec!["epsilon".to_string()];
            header.extend(request.s_values.iter().map(|&s| s_column_name(s)));
            let rows = grid(0.0, PI, request.resolution)
                .into_iter()
                .map(|eps| {
                    let mut row = vec![eps];
                    for &s in &request.s_values {
                        row.push(bound_purity(s, eps)?);
                    }
                    Ok(row)
                })
                .collect::<Result<_>>()?;
            Ok(CurveTable { header, rows })
        }
        Figure::Fig6 => {
            let rows = grid(0.0, 1.0, request.resolution)
                .into_iter()
                .map(|s| Ok(vec![s, 1.0 - f_inverse(s)?.powi(2)]))
                .collect::<Result<_>>()?;
            Ok(CurveTable {
                header: vec!["s_v".into(), "one_minus_finv_sq".into()],
                rows,
            })
        }
        Figure::Fig7 => {
            let rows = grid(1.0, 2.0, request.resolution)
                .into_iter()
                .map(|s| Ok(vec![s, 1.0 - g_inverse(s)?.powi(2)]))
                .collect::<Result<_>>()?;
            Ok(CurveTable {
                header: vec!["s_v2".into(), "one_minus_ginv_sq".into()],
                rows,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fig5_endpoint_is_exact_zero() {
        let t = curve_table(&CurveRequest::new(Figure::Fig5)).unwrap();
        let last = t.rows.last().unwrap();
        assert_eq!(last[0], PI);
        assert_eq!(last[5], 0.0);
        assert_eq!(
            t.header,
            vec!["epsilon", "S=0.2", "S=0.4", "S=0.6", "S=0.8", "S=1"]
        );
    }

    #[test]
    fn fig6_fig7_endpoints() {
        let t6 = curve_table(&CurveRequest::new(Figure::Fig6)).unwrap();
        assert_eq!(t6.rows[0][1], 0.0);
        assert_eq!(t6.rows.last().unwrap()[1], 1.0);
        let t7 = curve_table(&CurveRequest::new(Figure::Fig7)).unwrap();
        assert_eq!(t7.rows[0][1], 0.0);
        assert_eq!(t7.rows.last().unwrap()[1], 1.0);
    }

    #[test]
    fn bad_grid_rejected() {
        let mut r = CurveRequest::new(Figure::Fig6);
        r.resolution = 1;
        assert!(curve_table(&r).is_err());
        let mut r = CurveRequest::new(Figure::Fig5);
        r.s_values = vec![1.5];
        assert!(curve_table(&r).is_err());
    }

    #[test]
    fn csv_is_dot_decimal_with_header() {
        let mut r = CurveRequest::new(Figure::Fig6);
        r.resolution = 3;
        let csv = curve_table(&r).unwrap().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "s_v,one_minus_finv_sq");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("0.0000000000000000e0,"));
        assert!(csv.ends_with('\n') && !csv.contains('\r'));
    }
}
