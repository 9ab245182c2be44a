use crate::braid::relation_instances;
use crate::catalog::Rep;
use crate::error::{Error, Result};
use crate::linalg::{self, CMat};

/// Two qudits side by side: B_{n1} acting on the left factor, B_{n2} on the
/// right, and an unknown bridge generator τ_{n1} coupling them.
#[derive(Clone, Debug)]
pub struct TwoQuditLayout {
    pub n1: usize,
    pub n2: usize,
    pub d1: usize,
    pub d2: usize,
    pub left: Rep,
    pub right: Rep,
    /// τ₁…τ_{n−1}; `None` at the bridge slot.
    embedded: Vec<Option<CMat>>,
}

/// ρ(τᵢ) = ρ₁(τᵢ) ⊗ I for i < n1 and ρ(τᵢ) = I ⊗ ρ₂(τ_{n−i}) for i > n1.
///
/// The right qudit is written mirrored, so its outermost exchange τ_{n−1}
/// carries ρ₂(τ₁). Mirroring is conjugation by the half twist, i.e. a change
/// of basis on the right factor, and puts two η qubits in the block form with
/// diagonal τ₁ and τ_{n−1}.
pub fn embed_pair(left: &Rep, right: &Rep) -> TwoQuditLayout {
    let (d1, d2) = (left.dim(), right.dim());
    let (i1, i2) = (linalg::identity(d1), linalg::identity(d2));
    let mut embedded: Vec<Option<CMat>> = left.generators().iter().map(|g| Some(linalg::kron(g, &i2))).collect();
    embedded.push(None);
    embedded.extend(right.generators().iter().rev().map(|g| Some(linalg::kron(&i1, g))));
    TwoQuditLayout { n1: left.strands(), n2: right.strands(), d1, d2, left: left.clone(), right: right.clone(), embedded }
}

impl TwoQuditLayout {
    pub fn strands(&self) -> usize {
        self.n1 + self.n2
    }

    pub fn dim(&self) -> usize {
        self.d1 * self.d2
    }

    /// Index of the bridge generator, τ_{n1}.
    pub fn bridge_index(&self) -> usize {
        self.n1
    }

    /// Embedded τᵢ (1-based), `None` for the bridge.
    pub fn generator(&self, i: usize) -> Option<&CMat> {
        self.embedded[i - 1].as_ref()
    }

    /// Generators adjacent to the bridge (one or two).
    pub fn neighbours(&self) -> Vec<&CMat> {
        let b = self.bridge_index();
        [b.checked_sub(1), Some(b + 1)]
            .into_iter()
            .flatten()
            .filter(|&i| i >= 1 && i < self.strands())
            .filter_map(|i| self.generator(i))
            .collect()
    }

    /// Generators at distance ≥ 2 from the bridge; the bridge must commute with these.
    pub fn distant(&self) -> Vec<&CMat> {
        let b = self.bridge_index();
        (1..self.strands()).filter(|&i| i.abs_diff(b) >= 2).filter_map(|i| self.generator(i)).collect()
    }

    /// The full B_n representation with `bridge` in the bridge slot (relations not checked).
    pub fn complete(&self, bridge: &CMat) -> Result<Rep> {
        if bridge.nrows() != self.dim() || bridge.ncols() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: bridge.nrows() });
        }
        let gens = self.embedded.iter().map(|g| g.clone().unwrap_or_else(|| bridge.clone())).collect();
        Rep::new(self.strands(), gens, format!("[{}]x[{}]", self.left.label(), self.right.label()))
    }

    /// Max-norm residual over every defining relation that involves the bridge.
    pub fn bridge_residual(&self, bridge: &CMat) -> f64 {
        let Ok(rep) = self.complete(bridge) else { return f64::INFINITY };
        let b = self.bridge_index();
        relation_instances(self.strands())
            .expect("at least four strands")
            .iter()
            .filter(|r| r.lhs.uses_generator(b))
            .map(|r| {
                let l = rep.evaluate(&r.lhs).expect("same strands");
                let rr = rep.evaluate(&r.rhs).expect("same strands");
                linalg::max_abs_diff(&l, &rr)
            })
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::Angle;
    use crate::catalog::*;
    use crate::linalg::{cis, C64, ONE, ZERO};

    #[test]
    fn eta_pair_matches_block_form() {
        let eta = build_eta(EtaParams::b3(Angle::pi_frac(1, 4))).unwrap();
        let l = embed_pair(&eta, &eta);
        assert_eq!((l.strands(), l.dim(), l.bridge_index()), (6, 4, 3));
        let a = cis(std::f64::consts::FRAC_PI_4);
        let ab = a.conj();
        assert!(linalg::max_abs_diff(l.generator(1).unwrap(), &linalg::diag(&[a, a, ab, ab])) < 1e-15);
        assert!(linalg::max_abs_diff(l.generator(5).unwrap(), &linalg::diag(&[a, ab, a, ab])) < 1e-15);
        let s = C64::from(std::f64::consts::FRAC_1_SQRT_2);
        let t2 = linalg::from_rows(&[&[s, ZERO, s, ZERO], &[ZERO, s, ZERO, s], &[-s, ZERO, s, ZERO], &[ZERO, -s, ZERO, s]]);
        assert!(linalg::max_abs_diff(l.generator(2).unwrap(), &t2) < 1e-12);
        let t4 = linalg::from_rows(&[&[s, s, ZERO, ZERO], &[-s, s, ZERO, ZERO], &[ZERO, ZERO, s, s], &[ZERO, ZERO, -s, s]]);
        assert!(linalg::max_abs_diff(l.generator(4).unwrap(), &t4) < 1e-12);
        assert!(l.generator(3).is_none());
        // far-apart embedded generators commute exactly
        for (i, j) in [(1, 4), (1, 5), (2, 4), (2, 5)] {
            let c = linalg::commutator(l.generator(i).unwrap(), l.generator(j).unwrap());
            assert_eq!(linalg::max_norm(&c), 0.0);
        }
        assert_eq!(l.distant().len(), 2);
        assert_eq!(l.neighbours().len(), 2);
    }

    #[test]
    fn character_pair_is_one_dimensional() {
        let chi = |n| build_character(CharacterParams { phi: Angle::pi_frac(1, 5) }, n).unwrap();
        let l = embed_pair(&chi(3), &chi(4));
        assert_eq!((l.dim(), l.strands()), (1, 7));
        let m = CMat::from_element(1, 1, cis(std::f64::consts::PI / 5.0));
        assert!(l.bridge_residual(&m) < 1e-15);
        assert!(l.bridge_residual(&CMat::from_element(1, 1, ONE)) > 0.1);
    }
}
