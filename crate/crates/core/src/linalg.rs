//! Small dense complex linear algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector, Schur, SymmetricEigen, SVD};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMat = DMatrix<Complex64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

#[inline]
pub fn cis(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

pub fn identity(d: usize) -> CMat {
    CMat::identity(d, d)
}

pub fn diag(values: &[C64]) -> CMat {
    CMat::from_diagonal(&DVector::from_column_slice(values))
}

/// Builds a matrix from rows given in reading order.
pub fn from_rows(rows: &[&[C64]]) -> CMat {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    CMat::from_fn(n, m, |i, j| rows[i][j])
}

/// Largest entry modulus.
pub fn max_norm(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    debug_assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn frobenius_sq(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum()
}

/// ‖M†M − I‖_max.
pub fn unitarity_defect(m: &CMat) -> f64 {
    let d = m.nrows();
    max_abs_diff(&(m.adjoint() * m), &identity(d))
}

pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Operator 2-norm (largest singular value).
pub fn spectral_norm(m: &CMat) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    let svd = SVD::new(m.clone(), false, false);
    svd.singular_values.iter().cloned().fold(0.0, f64::max)
}

/// Eigenvalues of a general square complex matrix, read off the complex Schur form.
pub fn eigenvalues(m: &CMat) -> Vec<C64> {
    let d = m.nrows();
    if d == 0 {
        return Vec::new();
    }
    if d == 1 {
        return vec![m[(0, 0)]];
    }
    let (_, t) = Schur::new(m.clone()).unpack();
    (0..d).map(|i| t[(i, i)]).collect()
}

pub fn determinant(m: &CMat) -> C64 {
    m.clone().determinant()
}

pub fn inverse(m: &CMat) -> Option<CMat> {
    m.clone().try_inverse()
}

/// Orthonormal basis (as columns) of the null space of `a`.
///
/// A singular value counts as zero when it is below `rel_tol * max(1, σ_max)`.
/// Also returns the smallest singular value and its right singular vector,
/// which is the least-squares best candidate when the null space is empty.
pub fn null_space(a: &CMat, rel_tol: f64) -> NullSpace {
    let n = a.ncols();
    if n == 0 {
        return NullSpace { basis: CMat::zeros(0, 0), smallest: 0.0, best: DVector::zeros(0) };
    }
    // nalgebra only returns a full V when rows >= cols.
    let padded;
    let src = if a.nrows() < n {
        padded = {
            let mut p = CMat::zeros(n, n);
            p.view_mut((0, 0), (a.nrows(), n)).copy_from(a);
            p
        };
        &padded
    } else {
        a
    };
    let svd = SVD::new(src.clone(), false, true);
    let v_t = svd.v_t.expect("requested V");
    let sv = &svd.singular_values;
    let scale = sv.iter().cloned().fold(1.0, f64::max);
    let cut = rel_tol * scale;
    let mut cols = Vec::new();
    for (k, &s) in sv.iter().enumerate() {
        if s <= cut {
            cols.push(v_t.row(k).adjoint());
        }
    }
    let k_min = (0..sv.len()).min_by(|&i, &j| sv[i].total_cmp(&sv[j])).unwrap();
    let best = v_t.row(k_min).adjoint();
    let basis = if cols.is_empty() { CMat::zeros(n, 0) } else { CMat::from_columns(&cols) };
    NullSpace { basis, smallest: sv[k_min], best }
}

pub struct NullSpace {
    pub basis: CMat,
    pub smallest: f64,
    pub best: DVector<C64>,
}

/// Orthonormal basis for the column span of `vectors`.
pub fn column_span(vectors: &CMat, rel_tol: f64) -> CMat {
    let d = vectors.nrows();
    if vectors.ncols() == 0 {
        return CMat::zeros(d, 0);
    }
    // Work with the Gram-free route: SVD of the matrix itself.
    let svd = SVD::new(vectors.clone(), true, false);
    let u = svd.u.expect("requested U");
    let sv = &svd.singular_values;
    let scale = sv.iter().cloned().fold(0.0, f64::max).max(1e-300);
    let cols: Vec<_> = (0..sv.len())
        .filter(|&k| sv[k] > rel_tol * scale.max(1.0))
        .map(|k| u.column(k).into_owned())
        .collect();
    if cols.is_empty() {
        CMat::zeros(d, 0)
    } else {
        CMat::from_columns(&cols)
    }
}

/// Orthonormal basis of the orthogonal complement of the span of `q`'s columns.
pub fn orthogonal_complement(q: &CMat, rel_tol: f64) -> CMat {
    let d = q.nrows();
    if q.ncols() == 0 {
        return identity(d);
    }
    null_space(&q.adjoint(), rel_tol).basis
}

/// exp(i·t·H) for Hermitian H.
pub fn expi_hermitian(h: &CMat, t: f64) -> CMat {
    let eig = SymmetricEigen::new(h.clone());
    let phases: Vec<C64> = eig.eigenvalues.iter().map(|&l| cis(t * l)).collect();
    let u = &eig.eigenvectors;
    u * diag(&phases) * u.adjoint()
}

/// Positive square root of a positive semidefinite Hermitian matrix.
pub fn sqrt_psd(h: &CMat) -> CMat {
    let eig = SymmetricEigen::new(h.clone());
    let roots: Vec<C64> = eig.eigenvalues.iter().map(|&l| C64::new(l.max(0.0).sqrt(), 0.0)).collect();
    let u = &eig.eigenvectors;
    u * diag(&roots) * u.adjoint()
}

/// Hermitian part (M + M†)/2.
pub fn hermitian_part(m: &CMat) -> CMat {
    (m + m.adjoint()).scale(0.5)
}

/// Groups nearly equal values: returns (representative, multiplicity) in order
/// of first appearance.
pub fn cluster(values: &[C64], tol: f64) -> Vec<(C64, usize)> {
    let mut out: Vec<(C64, usize, C64)> = Vec::new();
    for &v in values {
        match out.iter_mut().find(|(rep, _, _)| (rep - v).norm() <= tol) {
            Some(slot) => {
                slot.1 += 1;
                slot.2 += v;
            }
            None => out.push((v, 1, v)),
        }
    }
    out.into_iter().map(|(_, m, sum)| (sum / m as f64, m)).collect()
}

/// True when the two multisets agree within `tol` under a greedy matching.
pub fn multisets_match(a: &[C64], b: &[C64], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    for x in a {
        let best = (0..b.len())
            .filter(|&j| !used[j])
            .min_by(|&i, &j| (b[i] - x).norm().total_cmp(&(b[j] - x).norm()));
        match best {
            Some(j) if (b[j] - x).norm() <= tol => used[j] = true,
            _ => return false,
        }
    }
    true
}

/// Column-major vectorisation.
pub fn vec_of(m: &CMat) -> DVector<C64> {
    DVector::from_column_slice(m.as_slice())
}

pub fn mat_of(v: &[C64], rows: usize, cols: usize) -> CMat {
    CMat::from_column_slice(rows, cols, v)
}
