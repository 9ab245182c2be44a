use serde::{Deserialize, Serialize};

use crate::braid::{relation_instances, BraidWord, RelationKind};
use crate::error::{Error, Result};
use crate::linalg::{self, cis, CMat};

/// Numerical tolerances attached to a representation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Max-norm residual allowed on a braid relation.
    pub relation: f64,
    /// Max-norm allowed on M†M − I.
    pub unitarity: f64,
    /// Relative singular value cutoff for ranks and null spaces.
    pub subspace_rank: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { relation: 1e-9, unitarity: 1e-9, subspace_rank: 1e-8 }
    }
}

/// A finite-dimensional matrix representation of B_n: one d×d matrix per
/// generator τ₁…τ_{n−1}.
#[derive(Clone, Debug)]
pub struct Rep {
    strands: usize,
    dim: usize,
    generators: Vec<CMat>,
    inverses: Vec<CMat>,
    label: String,
    tolerances: Tolerances,
}

impl Rep {
    /// Wraps raw matrices. Shapes and invertibility are checked; braid
    /// relations are not (see [`Rep::verified`]).
    pub fn new(strands: usize, generators: Vec<CMat>, label: impl Into<String>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::InvalidStrandCount(strands));
        }
        if generators.len() != strands - 1 {
            return Err(Error::InvalidParameter(format!(
                "B_{strands} needs {} generator matrices, got {}",
                strands - 1,
                generators.len()
            )));
        }
        let dim = generators[0].nrows();
        if dim == 0 {
            return Err(Error::InvalidParameter("zero-dimensional representation".into()));
        }
        for g in &generators {
            if g.nrows() != dim || g.ncols() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: g.nrows().max(g.ncols()) });
            }
        }
        let tolerances = Tolerances::default();
        let inverses = generators
            .iter()
            .map(|g| {
                if linalg::unitarity_defect(g) <= tolerances.unitarity {
                    Ok(g.adjoint())
                } else {
                    linalg::inverse(g).ok_or_else(|| Error::InvalidParameter("singular generator matrix".into()))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { strands, dim, generators, inverses, label: label.into(), tolerances })
    }

    /// Fails with `RelationsViolated` unless every defining relation holds.
    pub fn verified(self) -> Result<Self> {
        let report = self.verify_relations();
        if report.pass {
            Ok(self)
        } else {
            Err(Error::RelationsViolated { label: self.label.clone(), residual: report.max_residual })
        }
    }

    pub fn with_tolerances(mut self, tolerances: Tolerances) -> Self {
        self.tolerances = tolerances;
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tolerances
    }

    pub fn generators(&self) -> &[CMat] {
        &self.generators
    }

    /// Matrix of τᵢ (1-based).
    pub fn generator(&self, i: usize) -> &CMat {
        &self.generators[i - 1]
    }

    /// Matrix of a signed letter.
    pub fn letter(&self, l: i32) -> &CMat {
        let k = l.unsigned_abs() as usize - 1;
        if l > 0 {
            &self.generators[k]
        } else {
            &self.inverses[k]
        }
    }

    pub fn unitarity_defect(&self) -> f64 {
        self.generators.iter().map(linalg::unitarity_defect).fold(0.0, f64::max)
    }

    pub fn is_unitary(&self) -> bool {
        self.unitarity_defect() <= self.tolerances.unitarity
    }

    /// Product of the letters' matrices in reading order.
    pub fn evaluate(&self, w: &BraidWord) -> Result<CMat> {
        if w.strands() != self.strands {
            return Err(Error::StrandMismatch { expected: self.strands, found: w.strands() });
        }
        let mut m = linalg::identity(self.dim);
        for &l in w.letters() {
            m *= self.letter(l);
        }
        Ok(m)
    }

    pub fn verify_relations(&self) -> RelationReport {
        let mut instances = Vec::new();
        // strands >= 2 is enforced by the constructor
        for rel in relation_instances(self.strands).expect("valid strand count") {
            let l = self.evaluate(&rel.lhs).expect("same strands");
            let r = self.evaluate(&rel.rhs).expect("same strands");
            instances.push(InstanceResidual {
                kind: rel.kind,
                lhs: rel.lhs.to_string(),
                rhs: rel.rhs.to_string(),
                residual: linalg::max_abs_diff(&l, &r),
            });
        }
        let max_residual = instances.iter().map(|i| i.residual).fold(0.0, f64::max);
        RelationReport {
            label: self.label.clone(),
            strands: self.strands,
            dim: self.dim,
            max_residual,
            tolerance: self.tolerances.relation,
            pass: max_residual <= self.tolerances.relation,
            unitarity_defect: self.unitarity_defect(),
            instances,
        }
    }

    /// χ_φ ⊗ ρ: every generator multiplied by e^{iφ}.
    pub fn twist(&self, phi: f64) -> Rep {
        let s = cis(phi);
        self.map_generators(|g| g * s, format!("{}*chi({phi})", self.label))
    }

    /// S·ρ·S⁻¹.
    pub fn conjugate_by(&self, s: &CMat) -> Result<Rep> {
        let s_inv = linalg::inverse(s).ok_or_else(|| Error::InvalidParameter("singular similarity".into()))?;
        Ok(self.map_generators(|g| s * g * &s_inv, self.label.clone()))
    }

    pub fn direct_sum(&self, other: &Rep) -> Result<Rep> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch { expected: self.strands, found: other.strands });
        }
        let (a, b) = (self.dim, other.dim);
        let gens = self
            .generators
            .iter()
            .zip(&other.generators)
            .map(|(x, y)| {
                let mut m = CMat::zeros(a + b, a + b);
                m.view_mut((0, 0), (a, a)).copy_from(x);
                m.view_mut((a, a), (b, b)).copy_from(y);
                m
            })
            .collect();
        Ok(Rep::new(self.strands, gens, format!("{} + {}", self.label, other.label))?.with_tolerances(self.tolerances))
    }

    fn map_generators(&self, f: impl Fn(&CMat) -> CMat, label: String) -> Rep {
        Rep::new(self.strands, self.generators.iter().map(f).collect(), label)
            .expect("shape preserved")
            .with_tolerances(self.tolerances)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceResidual {
    pub kind: RelationKind,
    pub lhs: String,
    pub rhs: String,
    pub residual: f64,
}

/// Per-relation max-norm residuals of a representation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RelationReport {
    pub label: String,
    pub strands: usize,
    pub dim: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub unitarity_defect: f64,
    pub instances: Vec<InstanceResidual>,
}

pub fn verify_relations(rep: &Rep) -> RelationReport {
    rep.verify_relations()
}

pub fn evaluate(rep: &Rep, w: &BraidWord) -> Result<CMat> {
    rep.evaluate(w)
}
