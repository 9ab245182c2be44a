//! Explicit representation families.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::linalg::{self, cis, C64, CMat, I, ONE, ZERO};

use super::rep::Rep;

const UNIMODULAR_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharacterParams {
    pub phi: Angle,
}

/// τⱼ ↦ e^{iφ} for every j.
pub fn build_character(params: CharacterParams, strands: usize) -> Result<Rep> {
    if strands < 2 {
        return Err(Error::InvalidStrandCount(strands));
    }
    let g = CMat::from_element(1, 1, cis(params.phi.radians()));
    Rep::new(strands, vec![g; strands - 1], format!("character(phi={})", params.phi))?.verified()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Tau3Choice {
    SameAsTau1,
    ConjugateOfTau1,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EtaParams {
    pub theta: Angle,
    pub strands: usize,
    pub tau3: Tau3Choice,
}

impl EtaParams {
    pub fn b3(theta: Angle) -> Self {
        Self { theta, strands: 3, tau3: Tau3Choice::SameAsTau1 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Admissibility {
    pub admissible: bool,
    /// b² = 1 − 1/(2 − a² − ā²); −∞ when θ ≡ 0 mod π.
    pub b_squared: f64,
}

fn is_multiple_of_pi(theta: &Angle) -> bool {
    match theta.pi_fraction() {
        Some((_, den)) => den == 1,
        None => theta.radians().sin().abs() <= 1e-12,
    }
}

/// Admissibility of the two-dimensional B₃ family: b must be real and a ≠ ā.
/// The admissible set is {θ : cos 2θ ≤ 1/2, θ ≢ 0 mod π}.
pub fn eta_admissible(theta: &Angle) -> Admissibility {
    if is_multiple_of_pi(theta) {
        return Admissibility { admissible: false, b_squared: f64::NEG_INFINITY };
    }
    let t = theta.radians();
    let b_squared = 1.0 - 1.0 / (2.0 - 2.0 * (2.0 * t).cos());
    // cos 2θ = 1/2 exactly at the boundary; absorb rounding there
    Admissibility { admissible: b_squared >= -1e-12, b_squared: if b_squared.abs() < 1e-12 { 0.0 } else { b_squared } }
}

/// η(τ₁) = diag(a, ā), η(τ₂) = [[1/(a−a³), b], [−b, 1/(ā−ā³)]] with a = e^{iθ}.
///
/// For four strands η(τ₃) is η(τ₁) or its entrywise conjugate diag(ā, a); the
/// conjugate choice only satisfies the relations when a is a primitive 8th root
/// of unity.
pub fn build_eta(params: EtaParams) -> Result<Rep> {
    let EtaParams { theta, strands, tau3 } = params;
    if !(strands == 3 || strands == 4) {
        return Err(Error::InvalidParameter(format!("eta is defined for 3 or 4 strands, got {strands}")));
    }
    let adm = eta_admissible(&theta);
    if !adm.admissible {
        return Err(Error::InadmissibleTheta { theta: theta.radians(), b_squared: adm.b_squared });
    }
    let mut t = theta.radians();
    if strands == 4 && tau3 == Tau3Choice::ConjugateOfTau1 {
        if (2.0 * t).cos().abs() > 1e-8 {
            return Err(Error::EighthRootRequired { theta: t });
        }
        // snap onto the exact odd multiple of π/4
        t = ((t / (PI / 4.0) - 1.0) / 2.0).round() * (PI / 2.0) + PI / 4.0;
    }
    let (tau1, tau2) = eta_matrices(t, adm.b_squared.max(0.0).sqrt());
    let mut gens = vec![tau1.clone(), tau2];
    if strands == 4 {
        gens.push(match tau3 {
            Tau3Choice::SameAsTau1 => tau1,
            Tau3Choice::ConjugateOfTau1 => tau1.map(|z| z.conj()),
        });
    }
    let label = match (strands, tau3) {
        (3, _) => format!("eta(theta={theta})"),
        (_, Tau3Choice::SameAsTau1) => format!("eta(theta={theta},n=4,tau3=same)"),
        _ => format!("eta(theta={theta},n=4,tau3=conj)"),
    };
    Rep::new(strands, gens, label)?.verified()
}

fn eta_matrices(t: f64, b: f64) -> (CMat, CMat) {
    let a = cis(t);
    let ab = a.conj();
    let tau1 = linalg::diag(&[a, ab]);
    let tau2 = linalg::from_rows(&[&[ONE / (a - a * a * a), C64::from(b)], &[C64::from(-b), ONE / (ab - ab * ab * ab)]]);
    (tau1, tau2)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct JonesParams {
    pub r: u32,
    /// +1 or −1, selecting q = e^{±2πi/r}.
    pub sign: i8,
}

impl JonesParams {
    pub fn q(&self) -> C64 {
        cis(self.sign as f64 * 2.0 * PI / self.r as f64)
    }

    /// [3]_q = sin(3π/r)/sin(π/r), real for |q| = 1.
    pub fn quantum_three(&self) -> f64 {
        let r = self.r as f64;
        (3.0 * PI / r).sin() / (PI / r).sin()
    }
}

/// Two-dimensional Jones representation of B₃ at q = e^{±2πi/r}:
/// ρ(τ₁) = diag(q, −1), ρ(τ₂) = (1/(q+1))·[[−1, q√[3]_q], [q√[3]_q, q²]].
pub fn build_jones_b3(params: JonesParams) -> Result<Rep> {
    if params.r < 3 {
        return Err(Error::InvalidParameter(format!("Jones level r must be >= 3, got {}", params.r)));
    }
    if params.sign != 1 && params.sign != -1 {
        return Err(Error::InvalidParameter("Jones sign must be +1 or -1".into()));
    }
    let q = params.q();
    if (q + ONE).norm() < 1e-12 {
        return Err(Error::DegenerateQ);
    }
    let three = params.quantum_three();
    if three < -1e-12 {
        return Err(Error::InvalidParameter(format!("[3]_q = {three} is negative")));
    }
    let s = q * three.max(0.0).sqrt();
    let k = ONE / (q + ONE);
    let tau1 = linalg::diag(&[q, -ONE]);
    let tau2 = linalg::from_rows(&[&[-k, k * s], &[k * s, k * q * q]]);
    let sign = if params.sign > 0 { '+' } else { '-' };
    Rep::new(3, vec![tau1, tau2], format!("jones(r={},{sign})", params.r))?.verified()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BurauParams {
    pub z: C64,
    pub strands: usize,
}

fn check_unimodular(z: C64) -> Result<()> {
    if (z.norm() - 1.0).abs() > UNIMODULAR_TOL {
        return Err(Error::InvalidParameter(format!("|z| = {} but must be 1", z.norm())));
    }
    Ok(())
}

fn block_generator(n: usize, i: usize, block: [[C64; 2]; 2]) -> CMat {
    let mut m = linalg::identity(n);
    for r in 0..2 {
        for c in 0..2 {
            m[(i - 1 + r, i - 1 + c)] = block[r][c];
        }
    }
    m
}

fn describe_z(z: C64) -> String {
    format!("e^(i*{:.6})", z.arg())
}

/// Unreduced Burau: τᵢ ↦ I_{i−1} ⊕ [[1−z, z], [1, 0]] ⊕ I_{n−i−1}.
/// Rows sum to one, so the all-ones vector is fixed.
pub fn build_burau_unreduced(params: BurauParams) -> Result<Rep> {
    let BurauParams { z, strands: n } = params;
    if n < 2 {
        return Err(Error::InvalidStrandCount(n));
    }
    check_unimodular(z)?;
    let gens = (1..n).map(|i| block_generator(n, i, [[ONE - z, z], [ONE, ZERO]])).collect();
    Rep::new(n, gens, format!("burau(n={n},z={})", describe_z(z)))?.verified()
}

/// Standard-type monomial representation: τᵢ ↦ I_{i−1} ⊕ [[0, z], [1, 0]] ⊕ I_{n−i−1}.
pub fn build_standard_type(strands: usize, z: C64) -> Result<Rep> {
    if strands < 2 {
        return Err(Error::InvalidStrandCount(strands));
    }
    check_unimodular(z)?;
    if (z - ONE).norm() <= UNIMODULAR_TOL {
        return Err(Error::InvalidParameter("standard type needs z != 1".into()));
    }
    let gens = (1..strands).map(|i| block_generator(strands, i, [[ZERO, z], [ONE, ZERO]])).collect();
    Rep::new(strands, gens, format!("standard(n={strands},z={})", describe_z(z)))?.verified()
}

const PAULI_X: [[C64; 2]; 2] = [[ZERO, ONE], [ONE, ZERO]];
const PAULI_Y: [[C64; 2]; 2] = [[ZERO, C64::new(0.0, -1.0)], [I, ZERO]];
const PAULI_Z: [[C64; 2]; 2] = [[ONE, ZERO], [ZERO, C64::new(-1.0, 0.0)]];

fn two_by_two(m: [[C64; 2]; 2]) -> CMat {
    linalg::from_rows(&[&m[0], &m[1]])
}

fn kron_chain(factors: &[CMat]) -> CMat {
    factors.iter().skip(1).fold(factors[0].clone(), |acc, f| linalg::kron(&acc, f))
}

fn check_majorana_count(n: usize) -> Result<()> {
    if n % 2 == 1 {
        return Err(Error::OddStrandCount(n));
    }
    if !(2..=12).contains(&n) {
        return Err(Error::InvalidParameter(format!("Majorana construction supports 2..=12 strands, got {n}")));
    }
    Ok(())
}

/// Jordan–Wigner Majorana operators Γ₁…Γ_n on (C²)^{⊗ n/2}: Hermitian,
/// square to the identity and pairwise anticommute.
pub fn majorana_operators(n: usize) -> Result<Vec<CMat>> {
    check_majorana_count(n)?;
    let modes = n / 2;
    let (x, y, z, id) = (two_by_two(PAULI_X), two_by_two(PAULI_Y), two_by_two(PAULI_Z), linalg::identity(2));
    let mut out = Vec::with_capacity(n);
    for k in 0..modes {
        for p in [&x, &y] {
            let factors: Vec<CMat> =
                (0..modes).map(|j| if j < k { z.clone() } else if j == k { p.clone() } else { id.clone() }).collect();
            out.push(kron_chain(&factors));
        }
    }
    Ok(out)
}

/// Fermion parity Z⊗…⊗Z; +1 on the even sector.
pub fn majorana_parity(n: usize) -> Result<CMat> {
    check_majorana_count(n)?;
    let z = two_by_two(PAULI_Z);
    Ok(kron_chain(&vec![z; n / 2]))
}

/// τᵢ = exp(−(π/4)·Γᵢ₊₁Γᵢ) = (I − Γᵢ₊₁Γᵢ)/√2 on 2^{n/2} dimensions.
pub fn build_ising_majorana(n: usize) -> Result<Rep> {
    let gammas = majorana_operators(n)?;
    let d = gammas[0].nrows();
    let id = linalg::identity(d);
    let gens = (0..n - 1)
        .map(|i| (&id - &gammas[i + 1] * &gammas[i]).scale(FRAC_1_SQRT_2))
        .collect();
    Rep::new(n, gens, format!("ising(n={n})"))?.verified()
}
