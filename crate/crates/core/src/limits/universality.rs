use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::catalog::eta_admissible;
use crate::error::{Error, Result};
use crate::linalg::C64;

pub const DEFAULT_MAX_ORDER: u64 = 1024;
const ANGLE_TOL: f64 = 1e-9;
const MAX_EXCEPTIONAL_N: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootOrder {
    Order(u64),
    NotRootOfUnity,
}

/// Smallest k ≤ `max_order` with |λᵏ − 1| ≤ `tol`, per value.
pub fn vafa_check(values: &[C64], max_order: u64, tol: f64) -> Vec<RootOrder> {
    values
        .iter()
        .map(|&z| {
            let z = z / z.norm();
            let mut p = z;
            for k in 1..=max_order {
                if (p - 1.0).norm() <= tol {
                    return RootOrder::Order(k);
                }
                p *= z;
            }
            RootOrder::NotRootOfUnity
        })
        .collect()
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Exact multiplicative order of e^{iα} for α a rational multiple of π.
pub fn root_order(alpha: &Angle) -> Option<u64> {
    let (num, den) = alpha.pi_fraction()?;
    // e^{iπ num/den} has order 2den / gcd(num, 2den)
    Some((2 * den / gcd(num, 2 * den)) as u64)
}

/// φ = 2θ − π wrapped to (−π, π], so that q = −e^{2iθ} = e^{iφ}.
pub fn q_angle_of_theta(theta: &Angle) -> Angle {
    let raw = match theta.times(2) {
        Angle::PiMultiple { num, den } => Angle::pi_frac(num - den, den),
        Angle::Radians(r) => Angle::Radians(r - PI),
    };
    wrap(raw)
}

fn wrap(a: Angle) -> Angle {
    match a {
        Angle::PiMultiple { num, den } => {
            let two = 2 * den;
            let mut n = num.rem_euclid(two);
            if n > den {
                n -= two;
            }
            Angle::pi_frac(n, den)
        }
        Angle::Radians(r) => {
            let mut x = (r + PI).rem_euclid(2.0 * PI) - PI;
            if x <= -PI + 1e-15 {
                x += 2.0 * PI;
            }
            Angle::Radians(x)
        }
    }
}

/// Freedman–Larsen–Wang: the Jones image at q = e^{±2πi/r} is dense iff
/// r ≥ 5 and r ∉ {6, 10}.
pub fn flw_dense(r: u64) -> bool {
    r >= 5 && r != 6 && r != 10
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", content = "n")]
pub enum Classification {
    DenseInSU2,
    ExceptionalAngle(u64),
    OrderTenRoot,
    DegenerateAbelian,
}

impl Classification {
    pub fn is_finite(&self) -> bool {
        !matches!(self, Classification::DenseInSU2)
    }
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Classification::ExceptionalAngle(n) => write!(f, "ExceptionalAngle({n})"),
            other => write!(f, "{other:?}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UniversalityVerdict {
    pub classification: Classification,
    /// Angle of q.
    pub phi: Angle,
    /// Order of q when it is a root of unity of order ≤ 1024.
    pub q_order: Option<u64>,
    /// r with q = e^{±2πi/r}, if any.
    pub flw_r: Option<u64>,
    /// Whether the FLW criterion agrees with the classification.
    pub flw_agrees: Option<bool>,
    pub details: String,
}

/// The integer n ≥ 3 with |φ| = π − 2π/n, if any.
fn exceptional_n(phi: &Angle) -> Option<u64> {
    match *phi {
        Angle::PiMultiple { num, den } => {
            // |num|/den = 1 − 2/n  ⇔  n = 2den / (den − |num|)
            let gap = den - num.abs();
            (gap > 0 && (2 * den) % gap == 0).then(|| (2 * den / gap) as u64).filter(|&n| n >= 3)
        }
        Angle::Radians(r) => {
            let gap = PI - r.abs();
            if gap <= ANGLE_TOL {
                return None;
            }
            let n = (2.0 * PI / gap).round();
            (n >= 3.0 && n <= MAX_EXCEPTIONAL_N as f64 && (PI - 2.0 * PI / n - r.abs()).abs() <= ANGLE_TOL).then_some(n as u64)
        }
    }
}

fn q_order_of(phi: &Angle) -> Option<u64> {
    match phi {
        Angle::PiMultiple { .. } => root_order(phi).filter(|&k| k <= DEFAULT_MAX_ORDER),
        Angle::Radians(r) => match vafa_check(&[crate::linalg::cis(*r)], DEFAULT_MAX_ORDER, ANGLE_TOL)[0] {
            RootOrder::Order(k) => Some(k),
            RootOrder::NotRootOfUnity => None,
        },
    }
}

/// Classifies the image of the two-dimensional B₃ representation with
/// parameter q = e^{iφ}.
pub fn universality_classify_q(phi: &Angle) -> UniversalityVerdict {
    let phi = wrap(*phi);
    let q_order = q_order_of(&phi);
    let classification = if matches!(q_order, Some(1) | Some(2)) {
        Classification::DegenerateAbelian
    } else if let Some(n) = exceptional_n(&phi) {
        Classification::ExceptionalAngle(n)
    } else if q_order == Some(10) {
        Classification::OrderTenRoot
    } else {
        Classification::DenseInSU2
    };
    // q = e^{±2πi/r} ⇔ q has order r and φ = ±2π/r
    let flw_r = q_order.filter(|&k| (phi.radians().abs() - 2.0 * PI / k as f64).abs() <= ANGLE_TOL && k >= 3);
    let flw_agrees = flw_r.map(|r| flw_dense(r) == (classification == Classification::DenseInSU2));
    let mut details = format!("q = e^(i*{phi})");
    if let Some(k) = q_order {
        details.push_str(&format!(", q has order {k}"));
    }
    match classification {
        Classification::ExceptionalAngle(n) => details.push_str(&format!(", |phi| = pi - 2pi/{n}")),
        Classification::OrderTenRoot => details.push_str(", q is a root of unity of order 10"),
        Classification::DegenerateAbelian => details.push_str(", q = +-1 gives an abelian image"),
        Classification::DenseInSU2 => {}
    }
    if let Some(r) = flw_r {
        details.push_str(&format!(", FLW r = {r}: {}", if flw_dense(r) { "dense" } else { "not dense" }));
    }
    UniversalityVerdict { classification, phi, q_order, flw_r, flw_agrees, details }
}

/// Classification of η(θ) through q = e^{i(2θ−π)}.
pub fn universality_classify(theta: &Angle) -> Result<UniversalityVerdict> {
    let adm = eta_admissible(theta);
    if !adm.admissible {
        return Err(Error::InadmissibleTheta { theta: theta.radians(), b_squared: adm.b_squared });
    }
    Ok(universality_classify_q(&q_angle_of_theta(theta)))
}
