use nalgebra::SymmetricEigen;

use crate::braid::BraidWord;
use crate::catalog::{majorana_operators, majorana_parity, Rep};
use crate::error::{Error, Result};
use crate::linalg::{self, C64, CMat, I};

const PROJECTOR_TOL: f64 = 1e-10;

/// A computational subspace, given by its orthogonal projector.
#[derive(Clone, Debug)]
pub struct Subspace {
    projector: CMat,
    label: String,
}

impl Subspace {
    /// Checks P² = P and P† = P within 1e-10.
    pub fn new(projector: CMat, label: impl Into<String>) -> Result<Self> {
        let idem = linalg::max_abs_diff(&(&projector * &projector), &projector);
        let herm = linalg::max_abs_diff(&projector.adjoint(), &projector);
        if idem > PROJECTOR_TOL || herm > PROJECTOR_TOL {
            return Err(Error::InvalidParameter(format!(
                "not an orthogonal projector (|P^2-P| = {idem:e}, |P^+-P| = {herm:e})"
            )));
        }
        Ok(Self { projector, label: label.into() })
    }

    /// Projector onto the span of the columns of `basis`.
    pub fn from_basis(basis: &CMat, label: impl Into<String>) -> Result<Self> {
        let q = linalg::column_span(basis, 1e-10);
        Self::new(&q * q.adjoint(), label)
    }

    /// Projector onto the listed coordinate axes.
    pub fn coordinate(dim: usize, axes: &[usize], label: impl Into<String>) -> Result<Self> {
        let mut p = CMat::zeros(dim, dim);
        for &k in axes {
            if k >= dim {
                return Err(Error::DimensionMismatch { expected: dim, found: k + 1 });
            }
            p[(k, k)] = C64::from(1.0);
        }
        Self::new(p, label)
    }

    /// Eigenspace of a Hermitian operator for the eigenvalue `value`.
    pub fn eigenspace(h: &CMat, value: f64, label: impl Into<String>) -> Result<Self> {
        let eig = SymmetricEigen::new(linalg::hermitian_part(h));
        let cols: Vec<_> = (0..h.nrows())
            .filter(|&i| (eig.eigenvalues[i] - value).abs() < 1e-8)
            .map(|i| eig.eigenvectors.column(i).into_owned())
            .collect();
        if cols.is_empty() {
            return Err(Error::InvalidParameter(format!("{value} is not an eigenvalue")));
        }
        let v = CMat::from_columns(&cols);
        Self::new(&v * v.adjoint(), label)
    }

    pub fn projector(&self) -> &CMat {
        &self.projector
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.projector.nrows()
    }

    pub fn rank(&self) -> usize {
        self.projector.trace().re.round() as usize
    }
}

/// Even (+1) or odd (−1) fermion-parity sector of the Majorana construction.
pub fn parity_sector(n: usize, even: bool) -> Result<Subspace> {
    let label = if even { "parity-even" } else { "parity-odd" };
    Subspace::eigenspace(&majorana_parity(n)?, if even { 1.0 } else { -1.0 }, label)
}

/// +1 eigenspace of the charge i^{k(k−1)/2}·Γ₁⋯Γ_k of the first k Majorana
/// modes, i.e. a fixed total charge for the left group of k anyons.
pub fn left_charge_sector(n: usize, k: usize) -> Result<Subspace> {
    let gammas = majorana_operators(n)?;
    if k == 0 || k >= n {
        return Err(Error::InvalidParameter(format!("left group size {k} must be in 1..{n}")));
    }
    let mut q = linalg::identity(gammas[0].nrows());
    for g in &gammas[..k] {
        q *= g;
    }
    let phase = (0..(k * (k - 1) / 2) % 4).fold(C64::from(1.0), |acc, _| acc * I);
    Subspace::eigenspace(&(q * phase), 1.0, format!("left-charge-{k}"))
}

/// ‖(I − P)·U·P‖₂.
pub fn leakage_of_matrix(u: &CMat, p: &Subspace) -> f64 {
    let pm = p.projector();
    let id = linalg::identity(pm.nrows());
    linalg::spectral_norm(&((&id - pm) * u * pm))
}

pub fn leakage_of(rep: &Rep, p: &Subspace, w: &BraidWord) -> Result<f64> {
    if p.dim() != rep.dim() {
        return Err(Error::DimensionMismatch { expected: rep.dim(), found: p.dim() });
    }
    Ok(leakage_of_matrix(&rep.evaluate(w)?, p))
}

/// Leakage of U and of U†.
pub fn leakage_pair(rep: &Rep, p: &Subspace, w: &BraidWord) -> Result<(f64, f64)> {
    if p.dim() != rep.dim() {
        return Err(Error::DimensionMismatch { expected: rep.dim(), found: p.dim() });
    }
    let u = rep.evaluate(w)?;
    Ok((leakage_of_matrix(&u, p), leakage_of_matrix(&u.adjoint(), p)))
}
