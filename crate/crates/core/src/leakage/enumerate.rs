//! Enumeration of the leakage-free subgroup inside a ball of the image.

use serde::{Deserialize, Serialize};

use crate::ball::{all_letters, enumerate_ball, Ball, BallOptions, MatrixSet, DEFAULT_EPSILON, DEFAULT_MAX_ELEMENTS};
use crate::catalog::Rep;
use crate::error::{Error, Result};
use crate::linalg::CMat;

use super::subspace::{leakage_of_matrix, Subspace};

pub const MAX_LEN_CAP: usize = 10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnumOptions {
    pub max_len: usize,
    pub epsilon: f64,
    pub max_elements: usize,
    /// Leakage above this counts as leaking.
    pub leak_tol: f64,
    /// Letters acting inside single qudits; when set, every element is also
    /// tagged with membership in the subgroup they generate.
    pub in_qudit_letters: Option<Vec<i32>>,
    /// Upper limit on products examined by the closure check.
    pub closure_budget: usize,
}

impl EnumOptions {
    pub fn new(max_len: usize) -> Self {
        Self {
            max_len,
            epsilon: DEFAULT_EPSILON,
            max_elements: DEFAULT_MAX_ELEMENTS,
            leak_tol: 1e-8,
            in_qudit_letters: None,
            closure_budget: 2_000_000,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LeakageEntry {
    pub word: String,
    pub radius: usize,
    pub leakage: f64,
    pub leaks: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_qudit: Option<bool>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ClosureCheck {
    pub products_checked: usize,
    /// Products of two leakage-free elements that landed on a leaking element.
    pub violations: usize,
    /// Leakage-free elements whose inverse is missing from the ball or leaks.
    pub inverse_violations: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InQuditSummary {
    pub letters: Vec<i32>,
    /// Size of the in-qudit subgroup image.
    pub subgroup_size: usize,
    pub subgroup_saturated: bool,
    pub in_qudit_elements: usize,
    pub in_qudit_leaking: usize,
    pub max_in_qudit_leakage: f64,
    pub outside_elements: usize,
    pub outside_leakage_free: usize,
    #[serde(with = "crate::float_serde")]
    pub min_outside_leakage: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LeakageReport {
    pub rep: String,
    pub subspace: String,
    pub max_len: usize,
    pub epsilon: f64,
    pub elements: usize,
    pub leakage_free: usize,
    pub leaking: usize,
    pub saturated: bool,
    pub new_per_radius: Vec<usize>,
    /// Leakage-free words generating the leakage-free set within the ball.
    pub generating_set: Vec<String>,
    pub closure: ClosureCheck,
    pub in_qudit: Option<InQuditSummary>,
    pub entries: Vec<LeakageEntry>,
}

/// Greedy generating set: walk the leakage-free elements by radius and keep
/// each one not already reached from earlier picks inside the ball.
fn generating_set(ball: &Ball, free: &[usize], epsilon: f64) -> Vec<usize> {
    let dim = ball.elements[0].matrix.nrows();
    let mut reached = MatrixSet::new(dim, epsilon, true);
    let mut members: Vec<CMat> = Vec::new();
    reached.insert(&ball.elements[0].matrix);
    members.push(ball.elements[0].matrix.clone());
    let mut gens: Vec<usize> = Vec::new();
    for &f in free {
        let m = &ball.elements[f].matrix;
        if reached.find(m).is_some() {
            continue;
        }
        gens.push(f);
        // re-close under all chosen generators and their inverses
        let moves: Vec<CMat> =
            gens.iter().flat_map(|&g| [ball.elements[g].matrix.clone(), ball.elements[g].matrix.adjoint()]).collect();
        let mut queue: Vec<CMat> = members.clone();
        while let Some(x) = queue.pop() {
            for mv in &moves {
                let y = &x * mv;
                if ball.position(&y).is_some() && reached.insert(&y).1 {
                    members.push(y.clone());
                    queue.push(y);
                }
            }
        }
    }
    gens
}

/// BFS over all letters up to `max_len`, classifying every distinct element
/// (up to phase) as leakage-free or leaking against `p`.
pub fn enumerate_leakage_free(rep: &Rep, p: &Subspace, opts: &EnumOptions) -> Result<LeakageReport> {
    if opts.max_len > MAX_LEN_CAP {
        return Err(Error::InvalidParameter(format!("max_len {} exceeds the cap {MAX_LEN_CAP}", opts.max_len)));
    }
    if p.dim() != rep.dim() {
        return Err(Error::DimensionMismatch { expected: rep.dim(), found: p.dim() });
    }
    if !rep.is_unitary() {
        return Err(Error::InvalidParameter("leakage enumeration needs a unitary representation".into()));
    }
    let ball_opts = BallOptions { max_len: opts.max_len, epsilon: opts.epsilon, max_elements: opts.max_elements, projective: true };
    let ball = enumerate_ball(rep, &all_letters(rep.strands()), &ball_opts)?;
    let leakage: Vec<f64> = ball.elements.iter().map(|e| leakage_of_matrix(&e.matrix, p)).collect();
    let leaks: Vec<bool> = leakage.iter().map(|&l| l > opts.leak_tol).collect();
    let free: Vec<usize> = (0..ball.len()).filter(|&i| !leaks[i]).collect();

    let mut closure = ClosureCheck::default();
    for &f in &free {
        let inv = ball.elements[f].matrix.adjoint();
        match ball.position(&inv) {
            Some(i) if !leaks[i] => {}
            _ => closure.inverse_violations += 1,
        }
    }
    let partners: Vec<usize> = if free.len().saturating_mul(free.len()) <= opts.closure_budget {
        free.clone()
    } else {
        free.iter().copied().take((opts.closure_budget / free.len().max(1)).max(1)).collect()
    };
    for &f in &free {
        for &g in &partners {
            let prod = &ball.elements[f].matrix * &ball.elements[g].matrix;
            closure.products_checked += 1;
            if let Some(i) = ball.position(&prod) {
                if leaks[i] {
                    closure.violations += 1;
                }
            }
        }
    }

    let gens = generating_set(&ball, &free, opts.epsilon);

    let mut in_flags: Option<Vec<bool>> = None;
    let in_qudit = match &opts.in_qudit_letters {
        None => None,
        Some(letters) => {
            let sub_opts = BallOptions { max_len: 4 * opts.max_len.max(1), ..ball_opts };
            let sub = enumerate_ball(rep, letters, &sub_opts)?;
            let flags: Vec<bool> = ball.elements.iter().map(|e| sub.position(&e.matrix).is_some()).collect();
            let inside: Vec<usize> = (0..ball.len()).filter(|&i| flags[i]).collect();
            let outside: Vec<usize> = (0..ball.len()).filter(|&i| !flags[i]).collect();
            let summary = InQuditSummary {
                letters: letters.clone(),
                subgroup_size: sub.len(),
                subgroup_saturated: sub.saturated,
                in_qudit_elements: inside.len(),
                in_qudit_leaking: inside.iter().filter(|&&i| leaks[i]).count(),
                max_in_qudit_leakage: inside.iter().map(|&i| leakage[i]).fold(0.0, f64::max),
                outside_elements: outside.len(),
                outside_leakage_free: outside.iter().filter(|&&i| !leaks[i]).count(),
                min_outside_leakage: outside.iter().map(|&i| leakage[i]).fold(f64::INFINITY, f64::min),
            };
            in_flags = Some(flags);
            Some(summary)
        }
    };

    let entries = ball
        .elements
        .iter()
        .enumerate()
        .map(|(i, e)| LeakageEntry {
            word: e.word.to_string(),
            radius: e.radius,
            leakage: leakage[i],
            leaks: leaks[i],
            in_qudit: in_flags.as_ref().map(|f| f[i]),
        })
        .collect();

    Ok(LeakageReport {
        rep: rep.label().to_string(),
        subspace: p.label().to_string(),
        max_len: opts.max_len,
        epsilon: opts.epsilon,
        elements: ball.len(),
        leakage_free: free.len(),
        leaking: ball.len() - free.len(),
        saturated: ball.saturated,
        new_per_radius: ball.new_per_radius.clone(),
        generating_set: gens.iter().map(|&g| ball.elements[g].word.to_string()).collect(),
        closure,
        in_qudit,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::Angle;
    use crate::catalog::*;
    use crate::leakage::subspace::left_charge_sector;

    #[test]
    fn abelian_rep_never_leaks() {
        let chi = |num| build_character(CharacterParams { phi: Angle::pi_frac(num, 7) }, 4).unwrap();
        let r = chi(1).direct_sum(&chi(3)).unwrap().direct_sum(&chi(-2)).unwrap();
        let p = Subspace::coordinate(3, &[0, 2], "axes-0-2").unwrap();
        let rep = enumerate_leakage_free(&r, &p, &EnumOptions::new(5)).unwrap();
        assert_eq!(rep.leaking, 0);
        assert_eq!(rep.closure.violations, 0);
        assert_eq!(rep.closure.inverse_violations, 0);
    }

    #[test]
    fn left_charge_counterexample() {
        let r = build_ising_majorana(6).unwrap();
        let p = left_charge_sector(6, 3).unwrap();
        let opts = EnumOptions { in_qudit_letters: Some(vec![1, -1, 2, -2, 4, -4, 5, -5]), ..EnumOptions::new(4) };
        let rep = enumerate_leakage_free(&r, &p, &opts).unwrap();
        let s = rep.in_qudit.as_ref().unwrap();
        assert!(s.subgroup_saturated);
        assert_eq!(s.in_qudit_leaking, 0);
        assert_eq!(s.outside_leakage_free, 0);
        assert!(s.min_outside_leakage > 1e-3);
        assert!(rep.leaking > 0);
        assert_eq!(rep.closure.violations, 0);
        assert!(rep.generating_set.iter().all(|w| !w.split(' ').any(|t| t == "3" || t == "-3")));
    }

    #[test]
    fn cap_is_enforced() {
        let r = build_ising_majorana(4).unwrap();
        let p = crate::leakage::subspace::parity_sector(4, true).unwrap();
        assert!(enumerate_leakage_free(&r, &p, &EnumOptions::new(11)).is_err());
    }
}
