use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::catalog::{build_eta, EtaParams};
use crate::error::Result;

use super::bridge::solve_bridge_qubit_closed_form;
use super::layout::embed_pair;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanRow {
    pub theta: Angle,
    pub radians: f64,
    #[serde(with = "crate::float_serde")]
    pub residual: f64,
    pub pass: bool,
}

/// Symmetric lattice θ = kπ/(12m) over the admissible region π/6 ≤ |θ| ≤ 5π/6,
/// with the smallest m giving at least `min_points` points (16m + 2 in total).
/// Every lattice of this form contains ±π/4 and ±3π/4.
pub fn theta_grid(min_points: usize) -> Vec<Angle> {
    let m = min_points.saturating_sub(2).div_ceil(16).max(1) as i64;
    let den = 12 * m;
    let mut out: Vec<Angle> = (-10 * m..=-2 * m).chain(2 * m..=10 * m).map(|k| Angle::pi_frac(k, den)).collect();
    out.sort_by(|a, b| a.radians().total_cmp(&b.radians()));
    out
}

/// Closed-form bridge residual for η(θ) ⊗ η(θ) at every θ.
pub fn theta_scan(thetas: &[Angle], tol: f64) -> Result<Vec<ScanRow>> {
    let row = |theta: &Angle| -> Result<ScanRow> {
        let eta = build_eta(EtaParams::b3(*theta))?;
        let report = solve_bridge_qubit_closed_form(&embed_pair(&eta, &eta), tol)?;
        Ok(ScanRow { theta: *theta, radians: theta.radians(), residual: report.best_residual, pass: report.solved() })
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        thetas.par_iter().map(row).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        thetas.iter().map(row).collect()
    }
}

/// Tab-separated table with a header line.
pub fn scan_table(rows: &[ScanRow]) -> String {
    let mut s = String::from("theta\tradians\tresidual\tpass\n");
    for r in rows {
        s.push_str(&format!("{}\t{:.17e}\t{:.6e}\t{}\n", r.theta, r.radians, r.residual, r.pass));
    }
    s
}
