//! Commutants, common invariant subspaces, composition factors and
//! unitarization of representations.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, C64, CMat, ONE};

use super::rep::Rep;

const FACTOR_SEED: u64 = 0x5eed_fac7;
/// Largest invariance defect accepted for a numerically found subspace.
const INVARIANCE_GUARD: f64 = 1e-6;

fn stack_rows(blocks: &[CMat]) -> CMat {
    let cols = blocks[0].ncols();
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = CMat::zeros(rows, cols);
    let mut r = 0;
    for b in blocks {
        out.view_mut((r, 0), (b.nrows(), cols)).copy_from(b);
        r += b.nrows();
    }
    out
}

fn stack_cols(blocks: &[CMat]) -> CMat {
    let rows = blocks[0].nrows();
    let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = CMat::zeros(rows, cols);
    let mut c = 0;
    for b in blocks {
        out.view_mut((0, c), (rows, b.ncols())).copy_from(b);
        c += b.ncols();
    }
    out
}

/// Basis of {X : XG = GX for every G}.
pub fn commutant(gens: &[CMat], rel_tol: f64) -> Vec<CMat> {
    let d = gens.first().map_or(0, |g| g.nrows());
    if gens.is_empty() {
        return (0..d * d).map(|k| {
            let mut m = CMat::zeros(d, d);
            m[(k % d, k / d)] = ONE;
            m
        }).collect();
    }
    let id = linalg::identity(d);
    let blocks: Vec<CMat> = gens.iter().map(|g| linalg::kron(&g.transpose(), &id) - linalg::kron(&id, g)).collect();
    let ns = linalg::null_space(&stack_rows(&blocks), rel_tol);
    (0..ns.basis.ncols()).map(|k| linalg::mat_of(ns.basis.column(k).as_slice(), d, d)).collect()
}

/// Hermitian matrices spanning the same real space as the Hermitian and
/// anti-Hermitian parts of `mats`, orthonormal for Re tr(A†B).
pub fn hermitian_basis(mats: &[CMat], rel_tol: f64) -> Vec<CMat> {
    let Some(first) = mats.first() else { return Vec::new() };
    let d = first.nrows();
    let mut parts = Vec::with_capacity(2 * mats.len());
    for m in mats {
        parts.push(linalg::hermitian_part(m));
        parts.push((m - m.adjoint()) * C64::new(0.0, -0.5));
    }
    // real coordinates: (Re, Im) of every entry
    let real = DMatrix::<f64>::from_fn(2 * d * d, parts.len(), |r, c| {
        let z = parts[c][(r / 2 % d, r / 2 / d)];
        if r % 2 == 0 { z.re } else { z.im }
    });
    let svd = real.svd(true, false);
    let u = svd.u.expect("requested U");
    let scale = svd.singular_values.iter().cloned().fold(1.0, f64::max);
    (0..svd.singular_values.len())
        .filter(|&k| svd.singular_values[k] > rel_tol * scale)
        .map(|k| {
            let col = u.column(k);
            let m = CMat::from_fn(d, d, |i, j| {
                let r = 2 * (j * d + i);
                C64::new(col[r], col[r + 1])
            });
            linalg::hermitian_part(&m)
        })
        .collect()
}

/// Smallest subspace containing the columns of `start` and invariant under `gens`.
pub fn spin(gens: &[CMat], start: &CMat, rel_tol: f64) -> CMat {
    let mut q = linalg::column_span(start, rel_tol);
    loop {
        let mut blocks = vec![q.clone()];
        blocks.extend(gens.iter().map(|g| g * &q));
        let next = linalg::column_span(&stack_cols(&blocks), rel_tol);
        if next.ncols() <= q.ncols() {
            return q;
        }
        q = next;
    }
}

/// max over generators of ‖(I − QQ†)·G·Q‖_max for orthonormal Q.
pub fn invariance_defect(gens: &[CMat], q: &CMat) -> f64 {
    if q.ncols() == 0 {
        return 0.0;
    }
    let proj = q * q.adjoint();
    gens.iter()
        .map(|g| {
            let gq = g * q;
            linalg::max_norm(&(&gq - &proj * &gq))
        })
        .fold(0.0, f64::max)
}

fn common_eigenspaces(gens: &[CMat], rel_tol: f64) -> Vec<CMat> {
    let d = gens[0].nrows();
    let id = linalg::identity(d);
    let mut out = Vec::new();
    for (mu, _) in linalg::cluster(&linalg::eigenvalues(&gens[0]), 1e-6) {
        let blocks: Vec<CMat> = gens.iter().map(|g| g - &id * mu).collect();
        let ns = linalg::null_space(&stack_rows(&blocks), rel_tol.max(1e-7));
        if ns.basis.ncols() > 0 {
            out.push(ns.basis);
        }
    }
    out
}

fn random_algebra_element(gens: &[CMat], rng: &mut ChaCha8Rng) -> CMat {
    let d = gens[0].nrows();
    let mut coef = || C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let mut a = linalg::identity(d) * coef();
    for g in gens {
        a += g * coef();
        for h in gens {
            a += g * h * coef();
        }
    }
    a
}

fn eigenvector_spins(gens: &[CMat], a: &CMat, rel_tol: f64) -> Vec<CMat> {
    let d = a.nrows();
    let id = linalg::identity(d);
    linalg::cluster(&linalg::eigenvalues(a), 1e-9)
        .into_iter()
        .map(|(lambda, _)| {
            let v = linalg::null_space(&(a - &id * lambda), rel_tol).best;
            spin(gens, &CMat::from_column_slice(d, 1, v.as_slice()), rel_tol)
        })
        .collect()
}

/// Proper nonzero common invariant subspaces found numerically, as
/// orthonormal column bases.
pub fn invariant_subspaces(rep: &Rep) -> Vec<CMat> {
    let d = rep.dim();
    let tol = rep.tolerances().subspace_rank;
    let gens = rep.generators();
    let adj: Vec<CMat> = gens.iter().map(|g| g.adjoint()).collect();
    let mut found: Vec<CMat> = Vec::new();
    let push = |v: CMat, found: &mut Vec<CMat>| {
        let k = v.ncols();
        if k == 0 || k >= d || invariance_defect(gens, &v) > INVARIANCE_GUARD {
            return;
        }
        let duplicate = found.iter().any(|f| {
            f.ncols() == k && linalg::max_abs_diff(&(f * f.adjoint()), &(&v * v.adjoint())) < 1e-6
        });
        if !duplicate {
            found.push(v);
        }
    };

    for v in common_eigenspaces(gens, tol) {
        push(v, &mut found);
    }
    for w in common_eigenspaces(&adj, tol) {
        push(linalg::orthogonal_complement(&w, tol), &mut found);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(FACTOR_SEED);
    for _ in 0..2 {
        let a = random_algebra_element(gens, &mut rng);
        for v in eigenvector_spins(gens, &a, tol) {
            push(v, &mut found);
        }
        for w in eigenvector_spins(&adj, &a.adjoint(), tol) {
            push(linalg::orthogonal_complement(&w, tol), &mut found);
        }
    }
    found
}

/// Restriction to V and quotient by V for an invariant subspace with
/// orthonormal basis `v`.
pub fn factor_pair(rep: &Rep, v: &CMat) -> Result<(Rep, Rep)> {
    let d = rep.dim();
    let k = v.ncols();
    if k == 0 || k >= d {
        return Err(Error::InvalidParameter(format!("subspace dimension {k} is not proper in dimension {d}")));
    }
    let perp = linalg::orthogonal_complement(v, rep.tolerances().subspace_rank);
    let u = stack_cols(&[v.clone(), perp]);
    let (mut sub, mut quot) = (Vec::new(), Vec::new());
    for g in rep.generators() {
        let t = u.adjoint() * g * &u;
        sub.push(t.view((0, 0), (k, k)).into_owned());
        quot.push(t.view((k, k), (d - k, d - k)).into_owned());
    }
    let tol = *rep.tolerances();
    let sub = Rep::new(rep.strands(), sub, format!("{}|sub{k}", rep.label()))?.with_tolerances(tol);
    let quot = Rep::new(rep.strands(), quot, format!("{}|quot{}", rep.label(), d - k))?.with_tolerances(tol);
    Ok((sub, quot))
}

/// Restriction to a subspace with orthonormal basis `v`, which must be
/// invariant under every generator.
pub fn restrict(rep: &Rep, v: &CMat) -> Result<Rep> {
    let defect = invariance_defect(rep.generators(), v);
    if defect > INVARIANCE_GUARD {
        return Err(Error::InvalidParameter(format!("subspace is not invariant (defect {defect:e})")));
    }
    let gens = rep.generators().iter().map(|g| v.adjoint() * g * v).collect();
    Ok(Rep::new(rep.strands(), gens, format!("{}|restricted{}", rep.label(), v.ncols()))?.with_tolerances(*rep.tolerances()))
}

/// The largest proper composition factor reachable through one invariant
/// subspace (restriction or quotient); ties go to the quotient.
pub fn composition_factor(rep: &Rep) -> Result<Rep> {
    let mut best: Option<Rep> = None;
    for v in invariant_subspaces(rep) {
        let (sub, quot) = factor_pair(rep, &v)?;
        for cand in [quot, sub] {
            if best.as_ref().map_or(true, |b| cand.dim() > b.dim()) {
                best = Some(cand);
            }
        }
    }
    best.ok_or(Error::NoProperInvariantSubspace)?.verified()
}

fn min_max_eigen(h: &CMat) -> (f64, f64) {
    let ev = SymmetricEigen::new(h.clone()).eigenvalues;
    let lo = ev.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = ev.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    (lo, hi)
}

fn positive_definite(h: &CMat) -> Option<CMat> {
    let (lo, hi) = min_max_eigen(h);
    let scale = lo.abs().max(hi.abs());
    if scale == 0.0 {
        return None;
    }
    if lo > 1e-6 * scale {
        Some(h.clone())
    } else if hi < -1e-6 * scale {
        Some(-h)
    } else {
        None
    }
}

/// Conjugates a representation into unitary form using a positive definite
/// invariant Hermitian form X (G†XG = X), when one exists.
pub fn unitarize(rep: &Rep) -> Result<Rep> {
    if rep.is_unitary() {
        return Ok(rep.clone());
    }
    let d = rep.dim();
    let id = linalg::identity(d * d);
    let blocks: Vec<CMat> =
        rep.generators().iter().map(|g| linalg::kron(&g.transpose(), &g.adjoint()) - &id).collect();
    let ns = linalg::null_space(&stack_rows(&blocks), rep.tolerances().subspace_rank);
    let forms: Vec<CMat> = (0..ns.basis.ncols()).map(|k| linalg::mat_of(ns.basis.column(k).as_slice(), d, d)).collect();
    let herm = hermitian_basis(&forms, rep.tolerances().subspace_rank);
    let mut x = herm.iter().find_map(positive_definite);
    if x.is_none() && herm.len() > 1 {
        let mut rng = ChaCha8Rng::seed_from_u64(FACTOR_SEED);
        for _ in 0..500 {
            let mut h = CMat::zeros(d, d);
            for b in &herm {
                h += b * C64::from(rng.gen_range(-1.0..1.0));
            }
            if let Some(p) = positive_definite(&h) {
                x = Some(p);
                break;
            }
        }
    }
    let x = x.ok_or(Error::NotUnitarizable)?;
    let s = linalg::sqrt_psd(&x);
    let out = rep.conjugate_by(&s)?.with_label(format!("{}|unitary", rep.label()));
    if !out.is_unitary() {
        return Err(Error::NotUnitarizable);
    }
    Ok(out)
}
