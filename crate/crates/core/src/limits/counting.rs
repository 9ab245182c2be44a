use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::C64;

/// Eigenvalues λ̄ with multiplicities m̄.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenSpec {
    values: Vec<C64>,
    multiplicities: Vec<usize>,
}

impl EigenSpec {
    pub fn new(values: Vec<C64>, multiplicities: Vec<usize>) -> Result<Self> {
        if values.len() != multiplicities.len() || values.is_empty() {
            return Err(Error::InvalidParameter("values and multiplicities must be nonempty and of equal length".into()));
        }
        if multiplicities.contains(&0) {
            return Err(Error::InvalidParameter("multiplicities must be positive".into()));
        }
        if values.iter().any(|v| (v.norm() - 1.0).abs() > 1e-9) {
            return Err(Error::InvalidParameter("eigenvalues must be unimodular".into()));
        }
        for i in 0..values.len() {
            for j in 0..i {
                if (values[i] - values[j]).norm() <= 1e-8 {
                    return Err(Error::InvalidParameter(format!("eigenvalues {i} and {j} coincide")));
                }
            }
        }
        Ok(Self { values, multiplicities })
    }

    /// Spec with the given multiplicities and distinct placeholder values
    /// e^{2πik/p}; counting only depends on m̄.
    pub fn from_multiplicities(multiplicities: &[usize]) -> Result<Self> {
        let p = multiplicities.len();
        let values = (0..p).map(|k| crate::linalg::cis(std::f64::consts::TAU * k as f64 / p.max(1) as f64)).collect();
        Self::new(values, multiplicities.to_vec())
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn d(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    pub fn p(&self) -> usize {
        self.values.len()
    }
}

/// Multinomial d!/(m₁!⋯m_p!).
pub fn arrangement_count(spec: &EigenSpec) -> u128 {
    let mut total = 0u128;
    let mut out = 1u128;
    for &m in spec.multiplicities() {
        for k in 1..=m as u128 {
            total += 1;
            // running binomial: out · total / k stays integral
            out = out * total / k;
        }
    }
    out
}

/// Distinct diagonal orderings of the multiset, by explicit enumeration.
pub fn brute_force_arrangements(multiplicities: &[usize]) -> usize {
    let mut items: Vec<usize> = multiplicities.iter().enumerate().flat_map(|(i, &m)| std::iter::repeat(i).take(m)).collect();
    let mut seen = BTreeSet::new();
    fn permute(k: usize, items: &mut Vec<usize>, seen: &mut BTreeSet<Vec<usize>>) {
        if k == items.len() {
            seen.insert(items.clone());
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permute(k + 1, items, seen);
            items.swap(k, i);
        }
    }
    permute(0, &mut items, &mut seen);
    seen.len()
}

/// Largest n with ⌈(n−1)/2⌉ ≤ arrangement_count, i.e. 2·count + 1.
pub fn crude_anyon_bound(spec: &EigenSpec) -> Result<u128> {
    if spec.p() == 1 {
        return Err(Error::AbelianForced);
    }
    Ok(2 * arrangement_count(spec) + 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LimitQuery {
    /// N(d)
    Dimension { d: usize },
    /// N(d, p)
    DistinctEigenvalues { d: usize, p: usize },
    /// N(d, m̄)
    Multiplicities { d: usize, m: Vec<usize> },
}

impl std::fmt::Display for LimitQuery {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LimitQuery::Dimension { d } => write!(f, "N({d})"),
            LimitQuery::DistinctEigenvalues { d, p } => write!(f, "N({d},{p})"),
            LimitQuery::Multiplicities { d, m } => {
                let m: Vec<String> = m.iter().map(|x| x.to_string()).collect();
                write!(f, "N({d},({}))", m.join(","))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Theorem,
    KnownValue,
    ArrangementCount,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitResult {
    pub query: LimitQuery,
    /// Exact value, or an upper bound when `provenance` is `ArrangementCount`.
    pub value: u128,
    pub provenance: Provenance,
    /// Known exact value reported next to a crude bound.
    pub refined: Option<u128>,
    /// Related known values, e.g. N(3,2) next to N(3).
    pub table: Vec<(String, u128)>,
}

impl std::fmt::Display for LimitResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.provenance {
            Provenance::ArrangementCount => {
                write!(f, "{} <= {}", self.query, self.value)?;
                if let Some(r) = self.refined {
                    write!(f, " (refined: {r})")?;
                }
                Ok(())
            }
            _ => write!(f, "{}={}", self.query, self.value),
        }
    }
}

/// Exact values known for the query, if any.
pub fn known_refinement(query: &LimitQuery) -> Option<u128> {
    match query {
        LimitQuery::Dimension { d } if *d >= 2 => Some(*d as u128 + 2),
        LimitQuery::DistinctEigenvalues { d, p } if *d >= 2 => match *p {
            2 => Some(*d as u128 + 2),
            p if p == *d => Some(4),
            _ => None,
        },
        LimitQuery::Multiplicities { d, m } => {
            let mut sorted = m.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            match (*d, sorted.as_slice()) {
                (2, [1, 1]) => Some(4),
                (3, [2, 1]) => Some(5),
                (d, s) if d >= 2 && s.len() == d => Some(4),
                _ => None,
            }
        }
        _ => None,
    }
}

/// N(d) = d + 2 together with the related known values.
pub fn formanek_n(d: usize) -> Result<LimitResult> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("N(d) needs d >= 2, got {d}")));
    }
    let mut related = vec![LimitQuery::DistinctEigenvalues { d, p: 2 }, LimitQuery::DistinctEigenvalues { d, p: d }];
    if d == 3 {
        related.push(LimitQuery::Multiplicities { d, m: vec![2, 1] });
    }
    let mut table: Vec<(String, u128)> = Vec::new();
    for q in related {
        let name = q.to_string();
        if let Some(v) = known_refinement(&q) {
            if !table.iter().any(|(n, _)| *n == name) {
                table.push((name, v));
            }
        }
    }
    Ok(LimitResult { query: LimitQuery::Dimension { d }, value: d as u128 + 2, provenance: Provenance::Theorem, refined: None, table })
}

/// Crude arrangement bound for N(d, m̄), cross-reported with a known value.
pub fn formanek_n_bound(multiplicities: &[usize]) -> Result<LimitResult> {
    let spec = EigenSpec::from_multiplicities(multiplicities)?;
    let query = LimitQuery::Multiplicities { d: spec.d(), m: multiplicities.to_vec() };
    let value = crude_anyon_bound(&spec)?;
    let refined = known_refinement(&query);
    Ok(LimitResult { query, value, provenance: Provenance::ArrangementCount, refined, table: Vec::new() })
}
