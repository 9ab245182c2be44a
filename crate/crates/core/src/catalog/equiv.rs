//! Projective equivalence: ρ_B(τᵢ) ≈ c·S·ρ_A(τᵢ)·S⁻¹.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, C64, CMat};

use super::rep::Rep;

const EQUIV_SEED: u64 = 0x0e9_1a7e;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EquivalenceWitness {
    pub scalar: C64,
    /// Row-major similarity matrix S.
    #[serde(with = "crate::catalog::io::matrix_serde")]
    pub similarity: CMat,
    pub residual: f64,
    pub diagonal: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "result")]
pub enum Equivalence {
    Equivalent(EquivalenceWitness),
    NotEquivalent { best_residual: f64 },
}

impl Equivalence {
    pub fn witness(&self) -> Option<&EquivalenceWitness> {
        match self {
            Equivalence::Equivalent(w) => Some(w),
            Equivalence::NotEquivalent { .. } => None,
        }
    }

    pub fn residual(&self) -> f64 {
        match self {
            Equivalence::Equivalent(w) => w.residual,
            Equivalence::NotEquivalent { best_residual } => *best_residual,
        }
    }
}

/// max_i ‖B_i − c·S·A_i·S⁻¹‖_max, or ∞ for a singular S.
pub fn witness_residual(a: &Rep, b: &Rep, c: C64, s: &CMat) -> f64 {
    let Some(s_inv) = linalg::inverse(s) else { return f64::INFINITY };
    a.generators()
        .iter()
        .zip(b.generators())
        .map(|(ga, gb)| linalg::max_abs_diff(gb, &((s * ga * &s_inv) * c)))
        .fold(0.0, f64::max)
}

/// Candidate scalars c with c·spec(A₁) = spec(B₁), nearest to 1 first.
fn candidate_scalars(a: &Rep, b: &Rep, tol: f64) -> Vec<C64> {
    let sa = linalg::eigenvalues(a.generator(1));
    let sb = linalg::eigenvalues(b.generator(1));
    let mut out: Vec<C64> = Vec::new();
    for mu in &sb {
        let c = mu / sa[0];
        let scaled: Vec<C64> = sa.iter().map(|l| l * c).collect();
        if linalg::multisets_match(&scaled, &sb, tol) && !out.iter().any(|o| (o - c).norm() < tol) {
            out.push(c);
        }
    }
    out.sort_by(|x, y| (x - 1.0).norm().total_cmp(&(y - 1.0).norm()));
    out
}

/// Solves B_i S = c S A_i for S, optionally restricted to diagonal S.
/// Returns a normalized S from the (near-)null space.
fn intertwiner(a: &Rep, b: &Rep, c: C64, diagonal: bool, rel_tol: f64, rng: &mut ChaCha8Rng) -> CMat {
    let d = a.dim();
    let id = linalg::identity(d);
    let unknowns: Vec<usize> = if diagonal { (0..d).map(|k| k * d + k).collect() } else { (0..d * d).collect() };
    let mut sys = CMat::zeros(d * d * a.generators().len(), unknowns.len());
    for (i, (ga, gb)) in a.generators().iter().zip(b.generators()).enumerate() {
        let block = linalg::kron(&id, gb) - linalg::kron(&ga.transpose(), &id) * c;
        for (col, &u) in unknowns.iter().enumerate() {
            sys.view_mut((i * d * d, col), (d * d, 1)).copy_from(&block.column(u));
        }
    }
    let ns = linalg::null_space(&sys, rel_tol);
    let v: Vec<C64> = if ns.basis.ncols() == 0 {
        ns.best.iter().cloned().collect()
    } else {
        let mut v = vec![C64::new(0.0, 0.0); unknowns.len()];
        for k in 0..ns.basis.ncols() {
            let w = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            for (slot, x) in v.iter_mut().zip(ns.basis.column(k).iter()) {
                *slot += x * w;
            }
        }
        v
    };
    let mut s = CMat::zeros(d, d);
    for (&u, x) in unknowns.iter().zip(&v) {
        s[(u % d, u / d)] = *x;
    }
    let norm = linalg::frobenius_sq(&s).sqrt();
    if norm > 0.0 {
        s *= C64::from((d as f64).sqrt() / norm);
    }
    s
}

/// Searches for a scalar c and invertible S with ρ_B(τᵢ) ≈ c·S·ρ_A(τᵢ)·S⁻¹
/// for every generator, trying diagonal S before a general one.
pub fn projectively_equivalent(a: &Rep, b: &Rep, tol: f64) -> Result<Equivalence> {
    if a.strands() != b.strands() {
        return Err(Error::StrandMismatch { expected: a.strands(), found: b.strands() });
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    let rel_tol = a.tolerances().subspace_rank;
    let mut rng = ChaCha8Rng::seed_from_u64(EQUIV_SEED);
    let mut best = f64::INFINITY;
    for c in candidate_scalars(a, b, 1e-6) {
        for diagonal in [true, false] {
            let s = intertwiner(a, b, c, diagonal, rel_tol, &mut rng);
            let residual = witness_residual(a, b, c, &s);
            if residual <= tol {
                return Ok(Equivalence::Equivalent(EquivalenceWitness { scalar: c, similarity: s, residual, diagonal }));
            }
            best = best.min(residual);
        }
    }
    Ok(Equivalence::NotEquivalent { best_residual: best })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::Angle;
    use crate::catalog::builders::*;

    fn eta(num: i64, den: i64) -> Rep {
        build_eta(EtaParams::b3(Angle::pi_frac(num, den))).unwrap()
    }

    #[test]
    fn reflexive() {
        let r = eta(1, 3);
        let w = projectively_equivalent(&r, &r, 1e-10).unwrap();
        let w = w.witness().unwrap();
        assert!((w.scalar - 1.0).norm() < 1e-12);
        assert!(w.residual < 1e-12);
        assert!(w.diagonal);
    }

    #[test]
    fn eta_matches_jones_at_level_five() {
        let e = eta(3, 10);
        let j = build_jones_b3(JonesParams { r: 5, sign: -1 }).unwrap();
        let eq = projectively_equivalent(&e, &j, 1e-8).unwrap();
        let w = eq.witness().expect("equivalent");
        // scalar relating eta to Jones is -a up to inversion of direction
        let a = crate::linalg::cis(3.0 * std::f64::consts::PI / 10.0);
        assert!((w.scalar - (-a).inv()).norm() < 1e-8 || (w.scalar + a).norm() < 1e-8, "{}", w.scalar);
        let back = projectively_equivalent(&j, &e, 1e-8).unwrap();
        assert!(back.witness().is_some());
    }

    #[test]
    fn irreducible_vs_reducible() {
        let e = eta(1, 4);
        let chi = |num| build_character(CharacterParams { phi: Angle::pi_frac(num, 4) }, 3).unwrap();
        let sum = chi(1).direct_sum(&chi(-1)).unwrap();
        let eq = projectively_equivalent(&e, &sum, 1e-8).unwrap();
        assert!(eq.witness().is_none());
        assert!(eq.residual() > 1e-3);
    }

    #[test]
    fn dimension_mismatch() {
        let e = eta(1, 4);
        let chi = build_character(CharacterParams { phi: Angle::zero() }, 3).unwrap();
        assert!(matches!(projectively_equivalent(&e, &chi, 1e-8), Err(Error::DimensionMismatch { .. })));
    }
}
