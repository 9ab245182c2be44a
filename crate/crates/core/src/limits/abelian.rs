use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::catalog::Rep;
use crate::linalg::{self, C64, CMat};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AbelianWitness {
    pub abelian: bool,
    /// Largest max-norm commutator over generator pairs.
    pub max_commutator: f64,
    /// 1-based generator indices attaining it.
    pub pair: Option<(usize, usize)>,
}

fn abelian_witness(gens: &[CMat], tol: f64) -> AbelianWitness {
    let mut best = (0.0, None);
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let c = linalg::max_norm(&linalg::commutator(&gens[i], &gens[j]));
            if best.1.is_none() || c > best.0 {
                best = (c, Some((i + 1, j + 1)));
            }
        }
    }
    AbelianWitness { abelian: best.0 <= tol, max_commutator: best.0, pair: best.1 }
}

/// Whether all generator matrices commute pairwise within `tol`.
pub fn check_abelian(rep: &Rep, tol: f64) -> AbelianWitness {
    abelian_witness(rep.generators(), tol)
}

/// Two-dimensional representations of B_n are forced abelian exactly when
/// n ≥ 5: with τ₁ diagonal and distinct eigenvalues, τ₃ and τ₄ commute with τ₁
/// and are diagonal, so YB between them forces τ₃ = τ₄, and the collapse
/// propagates to every generator.
pub fn forced_abelian_2d(n: usize) -> bool {
    n >= 5
}

/// Max-norm residual of the B_n relations for raw generator matrices.
fn relation_residual(gens: &[CMat]) -> f64 {
    let mut r: f64 = 0.0;
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let (a, b) = (&gens[i], &gens[j]);
            let d = if j == i + 1 { a * b * a - b * a * b } else { a * b - b * a };
            r = r.max(linalg::max_norm(&d));
        }
    }
    r
}

/// For a tuple of 2×2 matrices satisfying the B_n relations (n ≥ 5) within
/// `rel_tol`, the commutation check. `None` when the relations fail.
pub fn check_forced_abelian(gens: &[CMat], rel_tol: f64, tol: f64) -> Option<AbelianWitness> {
    if gens.iter().any(|g| g.shape() != (2, 2)) || relation_residual(gens) > rel_tol {
        return None;
    }
    // the relations also admit singular tuples, which are not representations
    if gens.iter().any(|g| linalg::determinant(g).norm() < 1e-6) {
        return None;
    }
    Some(abelian_witness(gens, tol))
}

#[derive(Clone, Debug)]
pub struct B5Sample {
    pub generators: Vec<CMat>,
    pub residual: f64,
}

/// Real residual vector of the B₅ relations (6 relations × 4 complex entries)
/// followed by det τᵢ − `det`, which keeps the tuple away from singular ones.
fn residual_vector(gens: &[CMat], det: C64) -> Vec<f64> {
    let mut out = Vec::with_capacity(56);
    for i in 0..4 {
        for j in i + 1..4 {
            let (a, b) = (&gens[i], &gens[j]);
            let d = if j == i + 1 { a * b * a - b * a * b } else { a * b - b * a };
            for z in d.iter() {
                out.push(z.re);
                out.push(z.im);
            }
        }
    }
    for g in gens {
        let e = g[(0, 0)] * g[(1, 1)] - g[(0, 1)] * g[(1, 0)] - det;
        out.push(e.re);
        out.push(e.im);
    }
    out
}

/// Derivative of `residual_vector` along a change `dg` of the generators.
fn residual_derivative(gens: &[CMat], dg: &[CMat]) -> Vec<f64> {
    let mut out = Vec::with_capacity(48);
    for i in 0..4 {
        for j in i + 1..4 {
            let (a, b, da, db) = (&gens[i], &gens[j], &dg[i], &dg[j]);
            let d = if j == i + 1 {
                da * b * a + a * db * a + a * b * da - (db * a * b + b * da * b + b * a * db)
            } else {
                da * b + a * db - db * a - b * da
            };
            for z in d.iter() {
                out.push(z.re);
                out.push(z.im);
            }
        }
    }
    for (g, h) in gens.iter().zip(dg) {
        let e = h[(0, 0)] * g[(1, 1)] + g[(0, 0)] * h[(1, 1)] - h[(0, 1)] * g[(1, 0)] - g[(0, 1)] * h[(1, 0)];
        out.push(e.re);
        out.push(e.im);
    }
    out
}

fn unpack(x: &[f64]) -> Vec<CMat> {
    (0..4).map(|g| CMat::from_fn(2, 2, |r, c| C64::new(x[g * 8 + (c * 2 + r) * 2], x[g * 8 + (c * 2 + r) * 2 + 1]))).collect()
}

fn pack(gens: &[CMat]) -> Vec<f64> {
    gens.iter().flat_map(|g| g.iter().flat_map(|z| [z.re, z.im]).collect::<Vec<_>>()).collect()
}

/// Perturb-and-project sampler: starts from a random diagonal solution
/// τᵢ = diag(λ, μ), adds a random perturbation of size `perturbation` to every
/// generator and pulls the tuple back onto the B₅ relation variety, with
/// det τᵢ = λμ held fixed, by Levenberg–Marquardt. `None` when the projection does not converge to 1e−12.
pub fn sample_b5_qubit_tuple<R: Rng>(rng: &mut R, perturbation: f64) -> Option<B5Sample> {
    let tau = std::f64::consts::TAU;
    let lambda = linalg::cis(rng.gen_range(0.0..tau));
    let mu = linalg::cis(rng.gen_range(0.0..tau));
    let d = linalg::diag(&[lambda, mu]);
    let start: Vec<CMat> = (0..4)
        .map(|_| {
            let e = CMat::from_fn(2, 2, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            &d + e * C64::from(perturbation)
        })
        .collect();
    let mut x = pack(&start);
    let norm2 = |v: &[f64]| v.iter().map(|t| t * t).sum::<f64>();
    let mut r = residual_vector(&unpack(&x), lambda * mu);
    let mut f = norm2(&r);
    let mut damping = 1e-3;
    for _ in 0..200 {
        if f.sqrt() < 1e-13 {
            break;
        }
        let gens = unpack(&x);
        let mut jac = DMatrix::<f64>::zeros(r.len(), x.len());
        for k in 0..x.len() {
            let mut e = vec![0.0; x.len()];
            e[k] = 1.0;
            let col = residual_derivative(&gens, &unpack(&e));
            for (row, v) in col.into_iter().enumerate() {
                jac[(row, k)] = v;
            }
        }
        let jt = jac.transpose();
        let jtj = &jt * &jac;
        let g = &jt * nalgebra::DVector::from_vec(r.clone());
        let mut improved = false;
        for _ in 0..30 {
            let mut a = jtj.clone();
            for k in 0..x.len() {
                a[(k, k)] += damping * (1.0 + jtj[(k, k)]);
            }
            let Some(step) = a.lu().solve(&(-&g)) else {
                damping *= 10.0;
                continue;
            };
            let trial: Vec<f64> = x.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
            let rt = residual_vector(&unpack(&trial), lambda * mu);
            let ft = norm2(&rt);
            if ft < f {
                x = trial;
                r = rt;
                f = ft;
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
    let generators = unpack(&x);
    let residual = relation_residual(&generators);
    (residual <= 1e-12).then_some(B5Sample { generators, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::Angle;
    use crate::catalog::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn spec_examples() {
        let chi = |num| build_character(CharacterParams { phi: Angle::pi_frac(num, 5) }, 6).unwrap();
        assert!(check_abelian(&chi(1).direct_sum(&chi(2)).unwrap(), 1e-12).abelian);
        let eta = build_eta(EtaParams::b3(Angle::pi_frac(1, 4))).unwrap();
        let w = check_abelian(&eta, 1e-9);
        assert!(!w.abelian);
        assert_eq!(w.pair, Some((1, 2)));
        assert!(w.max_commutator > 0.5);
        let b2 = Rep::new(2, vec![eta.generator(1).clone()], "b2").unwrap();
        assert!(check_abelian(&b2, 1e-12).abelian);
        assert!(!forced_abelian_2d(3) && !forced_abelian_2d(4) && forced_abelian_2d(5) && forced_abelian_2d(9));
    }

    #[test]
    fn eta_b4_is_a_two_dimensional_non_abelian_witness() {
        let eta = build_eta(EtaParams { theta: Angle::pi_frac(1, 3), strands: 4, tau3: Tau3Choice::SameAsTau1 }).unwrap();
        assert!(eta.verify_relations().pass);
        assert!(!check_abelian(&eta, 1e-9).abelian);
    }

    #[test]
    fn sampler_projects_onto_relations() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut got = 0;
        for _ in 0..50 {
            if let Some(s) = sample_b5_qubit_tuple(&mut rng, 0.2) {
                let w = check_forced_abelian(&s.generators, 1e-10, 1e-8).unwrap();
                assert!(w.abelian, "{}", w.max_commutator);
                got += 1;
            }
        }
        assert!(got >= 45);
    }

    #[test]
    fn checker_rejects_non_solutions() {
        let eta = build_eta(EtaParams::b3(Angle::pi_frac(1, 4))).unwrap();
        let g = eta.generators();
        assert!(check_forced_abelian(&[g[0].clone(), g[1].clone(), g[0].clone(), g[1].clone()], 1e-9, 1e-9).is_none());
    }
}
