//! Reference tables of Berezin ranges, each cell evaluated three ways: from
//! the tabulated formula, from `predict_range`, and from a sampled grid.

use num_complex::Complex64;
use serde::Serialize;

use crate::closed_form::{range_report, RangeDescription};
use crate::error::{Error, Result};
use crate::geometry::{sample_range, SampleGrid};
use crate::kernel::SpaceParams;
use crate::operators::{OperatorSpec, Symbol};

use super::dsl::render;

pub const TABLES: &str = "table1, table2";

/// Inputs for `table1`; `table2` only reads `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TableInputs {
    pub gammas: Vec<f64>,
    pub n: u32,
    pub m: u32,
    pub a: Complex64,
}

impl Default for TableInputs {
    fn default() -> Self {
        Self { gammas: vec![1.0, 2.0], n: 2, m: 1, a: Complex64::new(0.5, 0.5) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub row: String,
    pub operator: String,
    pub gamma: f64,
    /// `hardy`, `bergman` or `weighted`: which column the cell formula came from.
    pub column: &'static str,
    pub cell: RangeDescription,
    pub predicted: RangeDescription,
    /// Interval top, disc radius or `∞`.
    pub closed_form: f64,
    pub predicted_value: f64,
    /// Largest `|B̃(λ) − center|` over the sampled grid.
    pub grid_value: f64,
    pub note: Option<String>,
}

fn difference(a: f64, b: f64) -> f64 {
    if a == b { 0.0 } else { a - b }
}

impl TableRow {
    pub fn closed_minus_predicted(&self) -> f64 {
        difference(self.closed_form, self.predicted_value)
    }

    pub fn closed_minus_grid(&self) -> f64 {
        difference(self.closed_form, self.grid_value)
    }

    /// Same shape and the extremal values agree to `tol`.
    pub fn cell_matches(&self, tol: f64) -> bool {
        std::mem::discriminant(&self.cell) == std::mem::discriminant(&self.predicted)
            && center(&self.cell) == center(&self.predicted)
            && self.closed_minus_predicted().abs() <= tol
    }
}

fn center(range: &RangeDescription) -> Complex64 {
    match range {
        RangeDescription::ClosedDisc { center, .. } | RangeDescription::OpenDisc { center, .. } => *center,
        _ => Complex64::new(0.0, 0.0),
    }
}

fn extent(range: &RangeDescription) -> f64 {
    match range {
        RangeDescription::ClosedInterval { hi, .. } | RangeDescription::LeftOpenInterval { hi, .. } => *hi,
        RangeDescription::HalfOpenInterval { hi_excluded, .. } => *hi_excluded,
        RangeDescription::Ray { .. } => f64::INFINITY,
        RangeDescription::ClosedDisc { radius, .. } | RangeDescription::OpenDisc { radius, .. } => *radius,
        other => other.sup_modulus(),
    }
}

fn table_grid() -> SampleGrid {
    SampleGrid::new(300, 48, 0.999).expect("valid grid")
}

fn build_row(row: &str, spec: OperatorSpec, params: SpaceParams, column: &'static str, cell: RangeDescription) -> Result<TableRow> {
    let report = range_report(&spec, params);
    let c = center(&cell);
    let cloud = sample_range(&spec, params, table_grid())?;
    let grid_value = cloud.points.iter().map(|p| (p.value - c).norm()).fold(0.0, f64::max);
    let note = report.notes.iter().find(|n| n.starts_with("discrepancy")).cloned();
    Ok(TableRow {
        row: row.to_string(),
        operator: render(&spec),
        gamma: params.gamma(),
        column,
        closed_form: extent(&cell),
        predicted_value: extent(&report.range),
        cell,
        predicted: report.range,
        grid_value,
        note,
    })
}

fn interval(hi: f64) -> RangeDescription {
    RangeDescription::ClosedInterval { lo: 0.0, hi }
}

fn disc(radius: f64) -> RangeDescription {
    RangeDescription::ClosedDisc { center: Complex64::new(0.0, 0.0), radius }
}

fn powi(x: f64, n: u32) -> f64 {
    x.powi(n as i32)
}

/// Rank-one and diagonal operators, at each requested weight. The cell
/// formula is taken from the Hardy column at `γ = 1`, the Bergman column at
/// `γ = 2`, and the general column otherwise.
pub fn table1(inputs: &TableInputs) -> Result<Vec<TableRow>> {
    let TableInputs { n, m, a, .. } = *inputs;
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument("table1 needs n, m >= 1".into()));
    }
    if a.norm() >= 1.0 {
        return Err(Error::InvalidOperator(format!("geometric row needs |a| < 1, got |a| = {}", a.norm())));
    }
    let a2 = a.norm_sqr();
    let mut rows = Vec::new();
    for &g in &inputs.gammas {
        let params = SpaceParams::new(g)?;
        let column = if g == 1.0 {
            "hardy"
        } else if g == 2.0 {
            "bergman"
        } else {
            "weighted"
        };
        let s = (m + n) as f64;
        let diag_top = |k: u32| -> f64 {
            let kf = k as f64;
            match column {
                "hardy" => powi(kf, k) / powi(kf + 1.0, k + 1),
                "bergman" => 4.0 * powi(kf, k) / powi(kf + 2.0, k + 2),
                _ => g.powf(g) * powi(kf, k) / (kf + g).powf(kf + g),
            }
        };

        rows.push(build_row(
            "<f,z>z",
            OperatorSpec::RankOneMonomial { m: 1, n: 1 },
            params,
            column,
            interval(match column {
                "hardy" => 0.25,
                "bergman" => 4.0 / 27.0,
                _ => g.powf(g) / (1.0 + g).powf(1.0 + g),
            }),
        )?);
        rows.push(build_row(
            "<f,z^n>z^n",
            OperatorSpec::RankOneMonomial { m: n, n },
            params,
            column,
            interval(diag_top(n)),
        )?);

        let mut coeffs = vec![Complex64::new(0.0, 0.0); n as usize];
        coeffs[n as usize - 1] = a;
        rows.push(build_row(
            "<f,az^n>az^n",
            OperatorSpec::DiagonalMonomialSum { coeffs },
            params,
            column,
            interval(a2 * diag_top(n)),
        )?);

        let geometric = match column {
            "hardy" => RangeDescription::HalfOpenInterval { lo: 0.0, hi_excluded: a2 },
            "bergman" => interval(a2 / 4.0),
            _ if g > 1.0 => interval(a2 * (g - 1.0).powf(g - 1.0) / g.powf(g)),
            _ => RangeDescription::Ray { lo: 0.0 },
        };
        rows.push(build_row("sum_n <f,az^n>az^n", OperatorSpec::GeometricDiagonal { a }, params, column, geometric)?);

        let mixed = if m == n {
            interval(diag_top(n))
        } else {
            disc(match column {
                "hardy" => 2.0 / (s + 2.0) * (s / (s + 2.0)).powf(s / 2.0),
                "bergman" => powi(4.0 / (s + 4.0), 2) * (s / (s + 4.0)).powf(s / 2.0),
                _ => (2.0 * g / (s + 2.0 * g)).powf(g) * (s / (s + 2.0 * g)).powf(s / 2.0),
            })
        };
        rows.push(build_row("<f,z^m>z^n", OperatorSpec::RankOneMonomial { m, n }, params, column, mixed)?);
    }
    Ok(rows)
}

/// Multiplication operators. The ranges do not depend on the weight; each
/// requested weight only changes the sampled column.
pub fn table2(inputs: &TableInputs) -> Result<Vec<TableRow>> {
    let n = inputs.n.max(1) as usize;
    let zero = Complex64::new(0.0, 0.0);
    let big_a = Complex64::new(1.0, -1.0);
    let big_b = Complex64::new(2.0, 1.0);
    let zeta = Complex64::new(2f64.sqrt(), 2f64.sqrt());
    let alpha = Complex64::new(1.0, -2.0) / 3.0;
    let monomial = |c: Complex64, b: Complex64| {
        let mut coeffs = vec![zero; n + 1];
        coeffs[0] = b;
        coeffs[n] = c;
        OperatorSpec::Multiplication { symbol: Symbol::Polynomial { coeffs } }
    };
    let open = |center: Complex64, radius: f64| RangeDescription::OpenDisc { center, radius };

    let mut rows = Vec::new();
    for &g in &inputs.gammas {
        let params = SpaceParams::new(g)?;
        rows.push(build_row("M_{z^n}", monomial(Complex64::new(1.0, 0.0), zero), params, "weighted", open(zero, 1.0))?);
        rows.push(build_row("M_{Az^n}", monomial(big_a, zero), params, "weighted", open(zero, big_a.norm()))?);
        rows.push(build_row("M_{Az^n+B}", monomial(big_a, big_b), params, "weighted", open(big_b, big_a.norm()))?);
        rows.push(build_row(
            "M_B (Blaschke product)",
            OperatorSpec::Multiplication {
                symbol: Symbol::BlaschkeProduct {
                    zeta: Complex64::new(1.0, 0.0),
                    m: 1,
                    zeros: vec![Complex64::new(0.5, 0.0), Complex64::new(0.0, -0.3)],
                },
            },
            params,
            "weighted",
            open(zero, 1.0),
        )?);
        rows.push(build_row(
            "M_phi (Blaschke factor)",
            OperatorSpec::Multiplication { symbol: Symbol::BlaschkeFactor { zeta, alpha } },
            params,
            "weighted",
            open(zero, zeta.norm()),
        )?);
    }
    Ok(rows)
}

pub fn table(name: &str, inputs: &TableInputs) -> Result<Vec<TableRow>> {
    match name {
        "table1" => table1(inputs),
        "table2" => table2(inputs),
        _ => Err(Error::Parse { pos: 0, msg: format!("unknown table '{name}'; available: {TABLES}") }),
    }
}

fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

pub const CSV_HEADER: &str =
    "row,operator,gamma,column,cell,predicted,closed_form,predicted_value,grid_value,closed_minus_predicted,closed_minus_grid,note";

pub fn to_csv(rows: &[TableRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let fields = [
            csv_field(&r.row),
            csv_field(&r.operator),
            r.gamma.to_string(),
            r.column.to_string(),
            csv_field(&r.cell.to_string()),
            csv_field(&r.predicted.to_string()),
            r.closed_form.to_string(),
            r.predicted_value.to_string(),
            r.grid_value.to_string(),
            r.closed_minus_predicted().to_string(),
            r.closed_minus_grid().to_string(),
            csv_field(r.note.as_deref().unwrap_or("")),
        ];
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}
