//! Solving for the bridge generator of a two-qudit layout.

use nalgebra::SymmetricEigen;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::catalog::factor::{commutant, hermitian_basis};
use crate::catalog::io::matrix_serde;
use crate::error::{Error, Result};
use crate::limits::check_abelian;
use crate::linalg::{self, C64, CMat};

use super::layout::TwoQuditLayout;

pub const DEFAULT_BRIDGE_TOL: f64 = 1e-9;
pub const EVIDENCE_NOTE: &str = "numerical evidence consistent with the paper's classification result, not a proof";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BridgeSolution {
    #[serde(with = "matrix_serde")]
    pub matrix: CMat,
    #[serde(with = "crate::float_serde")]
    pub residual: f64,
    /// Eigenvalue assigned to each minimal projector of the commutant.
    pub arrangement: Vec<C64>,
    /// Whether the completed representation is abelian.
    pub abelian: bool,
}

impl BridgeSolution {
    fn new(layout: &TwoQuditLayout, matrix: CMat, residual: f64, arrangement: Vec<C64>) -> Self {
        let abelian = layout.complete(&matrix).map(|r| check_abelian(&r, 1e-9).abelian).unwrap_or(false);
        Self { matrix, residual, arrangement, abelian }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClosedFormCandidate {
    /// The x in diag(x, x̄, x̄, x).
    pub x: C64,
    #[serde(with = "crate::float_serde")]
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClosedFormReport {
    pub a: C64,
    pub candidates: Vec<ClosedFormCandidate>,
    /// Every candidate within tolerance; empty means no solution.
    pub solutions: Vec<BridgeSolution>,
    #[serde(with = "crate::float_serde")]
    pub best_residual: f64,
}

impl ClosedFormReport {
    pub fn solved(&self) -> bool {
        !self.solutions.is_empty()
    }
}

fn qubit_eigenvalue(g: &CMat) -> Option<C64> {
    let off = g[(0, 1)].norm().max(g[(1, 0)].norm());
    let a = g[(0, 0)];
    let conj_pair = (g[(1, 1)] - a.conj()).norm() < 1e-12 && (a.norm() - 1.0).abs() < 1e-12;
    (off < 1e-12 && conj_pair && (a - a.conj()).norm() > 1e-12).then_some(a)
}

/// Diagonal ansatz τ_bridge = diag(x, x̄, x̄, x), x ∈ {a, ā}, for two qubits
/// whose first generators are both diag(a, ā).
pub fn solve_bridge_qubit_closed_form(layout: &TwoQuditLayout, tol: f64) -> Result<ClosedFormReport> {
    if layout.d1 != 2 || layout.d2 != 2 {
        return Err(Error::NotAQubitLayout);
    }
    let a = qubit_eigenvalue(layout.left.generator(1)).ok_or(Error::NotAQubitLayout)?;
    match qubit_eigenvalue(layout.right.generator(1)) {
        Some(b) if (b - a).norm() < 1e-12 => {}
        _ => return Err(Error::NotAQubitLayout),
    }
    let mut candidates = Vec::new();
    let mut solutions = Vec::new();
    for x in [a, a.conj()] {
        let m = linalg::diag(&[x, x.conj(), x.conj(), x]);
        let residual = layout.bridge_residual(&m);
        candidates.push(ClosedFormCandidate { x, residual });
        if residual <= tol {
            solutions.push(BridgeSolution::new(layout, m, residual, vec![x, x.conj(), x.conj(), x]));
        }
    }
    let best_residual = candidates.iter().map(|c| c.residual).fold(f64::INFINITY, f64::min);
    Ok(ClosedFormReport { a, candidates, solutions, best_residual })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericOptions {
    /// Random restarts per eigenvalue arrangement.
    pub restarts: usize,
    pub seed: u64,
    pub tol: f64,
    pub max_iters: usize,
    /// Upper limit on enumerated arrangements.
    pub max_arrangements: usize,
}

impl Default for NumericOptions {
    fn default() -> Self {
        Self { restarts: 50, seed: 0, tol: DEFAULT_BRIDGE_TOL, max_iters: 400, max_arrangements: 5000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NumericStatus {
    Solved,
    BestEffort,
    /// No unitary in the commutant of the distant generators has a
    /// neighbour's spectrum.
    Infeasible,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NumericReport {
    pub status: NumericStatus,
    #[serde(with = "crate::float_serde")]
    pub residual: f64,
    pub best: Option<BridgeSolution>,
    pub commutant_dim: usize,
    pub projector_dims: Vec<usize>,
    pub arrangements: usize,
    pub restarts: usize,
    pub note: String,
}

struct Structure {
    herm: Vec<CMat>,
    /// Minimal projectors and the block (simple component) each belongs to.
    projectors: Vec<CMat>,
    block_of: Vec<usize>,
}

fn commutant_structure(layout: &TwoQuditLayout, rng: &mut ChaCha8Rng) -> Structure {
    let d = layout.dim();
    let distant: Vec<CMat> = layout.distant().into_iter().cloned().collect();
    let herm = hermitian_basis(&commutant(&distant, 1e-8), 1e-8);
    let mut r = CMat::zeros(d, d);
    for h in &herm {
        r += h * C64::from(rng.gen_range(-1.0..1.0));
    }
    let eig = SymmetricEigen::new(r);
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let spread = eig.eigenvalues.iter().map(|x| x.abs()).fold(1e-300, f64::max);
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match groups.last_mut() {
            Some(g) if (eig.eigenvalues[i] - eig.eigenvalues[*g.last().unwrap()]).abs() <= 1e-7 * spread => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    let projectors: Vec<CMat> = groups
        .iter()
        .map(|g| {
            let cols: Vec<_> = g.iter().map(|&i| eig.eigenvectors.column(i).into_owned()).collect();
            let v = CMat::from_columns(&cols);
            &v * v.adjoint()
        })
        .collect();
    // P_i and P_j share a simple component iff P_i·C·P_j ≠ 0
    let k = projectors.len();
    let mut block_of: Vec<usize> = (0..k).collect();
    for i in 0..k {
        for j in 0..i {
            let linked = herm.iter().any(|h| linalg::max_norm(&(&projectors[i] * h * &projectors[j])) > 1e-6);
            if linked {
                let (bi, bj) = (block_of[i], block_of[j]);
                for b in block_of.iter_mut() {
                    if *b == bi {
                        *b = bj;
                    }
                }
            }
        }
    }
    Structure { herm, projectors, block_of }
}

/// Assignments of spectrum values to blocks: within a block only the multiset
/// of values matters, since the commutant permutes its projectors.
fn arrangements(structure: &Structure, spectrum: &[(C64, usize)], cap: usize) -> Vec<Vec<usize>> {
    let mut blocks: Vec<(usize, Vec<usize>)> = Vec::new();
    for (p, &b) in structure.block_of.iter().enumerate() {
        match blocks.iter_mut().find(|(id, _)| *id == b) {
            Some((_, members)) => members.push(p),
            None => blocks.push((b, vec![p])),
        }
    }
    let dims: Vec<usize> = structure.projectors.iter().map(|p| p.trace().re.round() as usize).collect();
    let mut out = Vec::new();
    let mut current = vec![0usize; structure.projectors.len()];
    let mut remaining: Vec<usize> = spectrum.iter().map(|s| s.1).collect();
    fn rec(
        bi: usize,
        blocks: &[(usize, Vec<usize>)],
        dims: &[usize],
        remaining: &mut Vec<usize>,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) {
        if out.len() >= cap {
            return;
        }
        if bi == blocks.len() {
            if remaining.iter().all(|&r| r == 0) {
                out.push(current.clone());
            }
            return;
        }
        let members = &blocks[bi].1;
        let m = dims[members[0]];
        // non-decreasing value indices over the block's projectors
        fn fill(
            k: usize,
            min_v: usize,
            bi: usize,
            blocks: &[(usize, Vec<usize>)],
            dims: &[usize],
            m: usize,
            remaining: &mut Vec<usize>,
            current: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
            cap: usize,
        ) {
            let members = &blocks[bi].1;
            if k == members.len() {
                rec(bi + 1, blocks, dims, remaining, current, out, cap);
                return;
            }
            for v in min_v..remaining.len() {
                if remaining[v] >= m {
                    remaining[v] -= m;
                    current[members[k]] = v;
                    fill(k + 1, v, bi, blocks, dims, m, remaining, current, out, cap);
                    remaining[v] += m;
                }
            }
        }
        fill(0, 0, bi, blocks, dims, m, remaining, current, out, cap);
    }
    rec(0, &blocks, &dims, &mut remaining, &mut current, &mut out, cap);
    out
}

/// Σ over neighbours T of ‖TMT − MTM‖_F².
fn objective(neigh: &[CMat], m: &CMat) -> f64 {
    neigh.iter().map(|t| linalg::frobenius_sq(&(t * m * t - m * t * m))).sum()
}

/// Gradient coordinates along the Hermitian basis for M ↦ e^{iεH} M e^{−iεH}.
fn gradient(neigh: &[CMat], m: &CMat, herm: &[CMat]) -> Vec<f64> {
    let d = m.nrows();
    let mut gamma = CMat::zeros(d, d);
    for t in neigh {
        let r = t * m * t - m * t * m;
        let rh = r.adjoint();
        gamma += t * &rh * t - t * m * &rh - &rh * m * t;
    }
    let c = m * &gamma - &gamma * m;
    herm.iter().map(|h| -2.0 * (&c * h).trace().im).collect()
}

fn combine(herm: &[CMat], coef: &[f64]) -> CMat {
    let d = herm[0].nrows();
    let mut k = CMat::zeros(d, d);
    for (h, &c) in herm.iter().zip(coef) {
        k += h * C64::from(c);
    }
    k
}

fn conjugate(k: &CMat, t: f64, m: &CMat) -> CMat {
    let u = linalg::expi_hermitian(k, t);
    &u * m * u.adjoint()
}

/// Riemannian descent on the conjugation orbit of `m0` inside the commutant.
fn descend(layout: &TwoQuditLayout, neigh: &[CMat], herm: &[CMat], m0: CMat, opts: &NumericOptions) -> (CMat, f64) {
    let mut m = m0;
    let mut f = objective(neigh, &m);
    let mut step: f64 = 0.1;
    let target = (opts.tol * 1e-2).powi(2);
    for _ in 0..opts.max_iters {
        if f <= target {
            break;
        }
        let g = gradient(neigh, &m, herm);
        let gn2: f64 = g.iter().map(|x| x * x).sum();
        if gn2 < 1e-28 {
            break;
        }
        let k = combine(herm, &g.iter().map(|x| -x).collect::<Vec<_>>());
        let mut accepted = false;
        step = (step * 2.0).min(10.0);
        for _ in 0..40 {
            let trial = conjugate(&k, step, &m);
            let ft = objective(neigh, &trial);
            if ft <= f - 1e-4 * step * gn2 {
                m = trial;
                f = ft;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    if f.sqrt() < 1e-2 {
        m = polish(neigh, herm, m, 100);
    }
    let residual = layout.bridge_residual(&m);
    (m, residual)
}

/// Real residual vector of TMT − MTM over the neighbours.
fn yb_vector(neigh: &[CMat], m: &CMat) -> Vec<f64> {
    neigh.iter().flat_map(|t| (t * m * t - m * t * m).iter().flat_map(|z| [z.re, z.im]).collect::<Vec<_>>()).collect()
}

/// Levenberg–Marquardt on the conjugation orbit, for starts already close to
/// a zero; plain descent crawls near degenerate minima.
fn polish(neigh: &[CMat], herm: &[CMat], m0: CMat, iters: usize) -> CMat {
    let mut m = m0;
    let mut r = yb_vector(neigh, &m);
    let mut f: f64 = r.iter().map(|x| x * x).sum();
    let mut damping = 1e-6;
    let k = herm.len();
    for _ in 0..iters {
        if f < 1e-30 {
            break;
        }
        // dM = i[H, M]
        let mut jac = nalgebra::DMatrix::<f64>::zeros(r.len(), k);
        for (c, h) in herm.iter().enumerate() {
            let dm = (h * &m - &m * h) * linalg::I;
            let col: Vec<f64> = neigh
                .iter()
                .flat_map(|t| (t * &dm * t - &dm * t * &m - &m * t * &dm).iter().flat_map(|z| [z.re, z.im]).collect::<Vec<_>>())
                .collect();
            for (row, v) in col.into_iter().enumerate() {
                jac[(row, c)] = v;
            }
        }
        let jt = jac.transpose();
        let jtj = &jt * &jac;
        let g = &jt * nalgebra::DVector::from_vec(r.clone());
        let mut improved = false;
        for _ in 0..20 {
            let mut a = jtj.clone();
            for i in 0..k {
                a[(i, i)] += damping * (1.0 + jtj[(i, i)]);
            }
            let Some(step) = a.lu().solve(&(-&g)) else {
                damping *= 10.0;
                continue;
            };
            let trial = conjugate(&combine(herm, step.as_slice()), 1.0, &m);
            let rt = yb_vector(neigh, &trial);
            let ft: f64 = rt.iter().map(|x| x * x).sum();
            if ft < f {
                (m, r, f) = (trial, rt, ft);
                damping = (damping * 0.3).max(1e-15);
                improved = true;
                break;
            }
            damping *= 10.0;
        }
        if !improved {
            break;
        }
    }
    m
}

fn task_seed(seed: u64, arrangement: usize, restart: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (arrangement as u64).wrapping_mul(0xBF58_476D_1CE4_E5B9)
        ^ (restart as u64).wrapping_mul(0x94D0_49BB_1331_11EB)
}

#[cfg(feature = "parallel")]
fn map_tasks<T: Send, F: Fn(usize) -> T + Sync + Send>(n: usize, f: F) -> Vec<T> {
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_tasks<T, F: Fn(usize) -> T>(n: usize, f: F) -> Vec<T> {
    (0..n).map(f).collect()
}

/// Searches for a unitary bridge with a neighbour's spectrum that commutes
/// with the distant generators, minimizing the Yang–Baxter residual with the
/// neighbours over every eigenvalue arrangement and random restarts.
pub fn solve_bridge_numeric(layout: &TwoQuditLayout, opts: &NumericOptions) -> NumericReport {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let structure = commutant_structure(layout, &mut rng);
    let neigh: Vec<CMat> = layout.neighbours().into_iter().cloned().collect();
    let mut spectra: Vec<Vec<(C64, usize)>> = Vec::new();
    for t in &neigh {
        let s = linalg::cluster(&linalg::eigenvalues(t), 1e-6);
        let same = spectra.iter().any(|o| {
            let flat = |v: &Vec<(C64, usize)>| v.iter().flat_map(|(z, m)| std::iter::repeat(*z).take(*m)).collect::<Vec<_>>();
            linalg::multisets_match(&flat(o), &flat(&s), 1e-6)
        });
        if !same {
            spectra.push(s);
        }
    }
    let mut tasks: Vec<Vec<C64>> = Vec::new();
    for spec in &spectra {
        for arr in arrangements(&structure, spec, opts.max_arrangements.saturating_sub(tasks.len())) {
            tasks.push(arr.iter().map(|&v| spec[v].0).collect());
        }
    }
    let projector_dims: Vec<usize> = structure.projectors.iter().map(|p| p.trace().re.round() as usize).collect();
    let base = NumericReport {
        status: NumericStatus::Infeasible,
        residual: f64::INFINITY,
        best: None,
        commutant_dim: structure.herm.len(),
        projector_dims,
        arrangements: tasks.len(),
        restarts: 0,
        note: EVIDENCE_NOTE.to_string(),
    };
    if tasks.is_empty() {
        return base;
    }
    let d = layout.dim();
    let diag_of = |values: &[C64]| {
        let mut m = CMat::zeros(d, d);
        for (p, v) in structure.projectors.iter().zip(values) {
            m += p * *v;
        }
        m
    };
    // An abelian commutant leaves no freedom beyond the arrangement.
    let abelian = structure.herm.len() == structure.projectors.len();
    let restarts = if abelian { 1 } else { opts.restarts.max(1) };
    let results = map_tasks(tasks.len() * restarts, |job| {
        let (a, r) = (job / restarts, job % restarts);
        let m0 = diag_of(&tasks[a]);
        if abelian {
            let res = layout.bridge_residual(&m0);
            return (m0, res);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(task_seed(opts.seed, a, r));
        let coef: Vec<f64> = structure.herm.iter().map(|_| rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI)).collect();
        let start = conjugate(&combine(&structure.herm, &coef), 1.0, &m0);
        descend(layout, &neigh, &structure.herm, start, opts)
    });
    let (best_job, (m, residual)) = results
        .into_iter()
        .enumerate()
        .min_by(|(i, (_, x)), (j, (_, y))| x.total_cmp(y).then(i.cmp(j)))
        .expect("at least one task");
    let arrangement = tasks[best_job / restarts].clone();
    let status = if residual <= opts.tol { NumericStatus::Solved } else { NumericStatus::BestEffort };
    NumericReport {
        status,
        residual,
        best: Some(BridgeSolution::new(layout, m, residual, arrangement)),
        restarts,
        ..base
    }
}
