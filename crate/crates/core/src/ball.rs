//! Breadth-first enumeration of the image of a representation, deduplicated
//! up to global phase (or exactly, in linear mode).

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::catalog::Rep;
use crate::error::{Error, Result};
use crate::linalg::{self, C64, CMat};

pub const DEFAULT_EPSILON: f64 = 1e-6;
pub const DEFAULT_MAX_ELEMENTS: usize = 500_000;
/// Entries below this modulus are skipped when choosing the phase reference.
const PHASE_REF_MIN: f64 = 1e-4;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BallOptions {
    pub max_len: usize,
    /// Max-norm distance under which two phase-aligned matrices are identified.
    pub epsilon: f64,
    pub max_elements: usize,
    /// Identify matrices differing by a global phase (the default).
    pub projective: bool,
}

impl BallOptions {
    pub fn new(max_len: usize) -> Self {
        Self { max_len, epsilon: DEFAULT_EPSILON, max_elements: DEFAULT_MAX_ELEMENTS, projective: true }
    }
}

/// Divides by the phase of the first entry (column-major) of modulus above
/// 1e-4.
pub fn phase_normalize(m: &CMat) -> CMat {
    match m.iter().find(|z| z.norm() > PHASE_REF_MIN) {
        Some(z) => m * (z.conj() / z.norm()),
        None => m.clone(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Key(f64);

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Set of matrices with ε-approximate lookup, optionally up to global phase.
///
/// Matrices are keyed by a fixed linear functional f(M) = Σ Re(w_k M_k) with
/// |w_k| = 1, so ε-close matrices have keys within ε·Σ|w_k|.
#[derive(Clone, Debug)]
pub struct MatrixSet {
    epsilon: f64,
    projective: bool,
    weights: Vec<C64>,
    index: BTreeMap<Key, Vec<usize>>,
    mats: Vec<CMat>,
}

impl MatrixSet {
    pub fn new(dim: usize, epsilon: f64, projective: bool) -> Self {
        let weights = (0..dim * dim).map(|k| linalg::cis(2.399_963_229_728_653 * (k as f64 + 1.0))).collect();
        Self { epsilon, projective, weights, index: BTreeMap::new(), mats: Vec::new() }
    }

    fn normalize(&self, m: &CMat) -> CMat {
        if self.projective {
            phase_normalize(m)
        } else {
            m.clone()
        }
    }

    fn key(&self, m: &CMat) -> f64 {
        m.iter().zip(&self.weights).map(|(z, w)| (z * w).re).sum()
    }

    /// Index of an element equal to `normalized` within ε, if any.
    pub fn find_normalized(&self, normalized: &CMat) -> Option<usize> {
        let k = self.key(normalized);
        let delta = self.epsilon * self.weights.len() as f64 * (1.0 + 1e-9);
        self.index
            .range(Key(k - delta)..=Key(k + delta))
            .flat_map(|(_, ids)| ids.iter())
            .copied()
            .find(|&i| linalg::max_abs_diff(&self.mats[i], normalized) <= self.epsilon)
    }

    pub fn find(&self, m: &CMat) -> Option<usize> {
        self.find_normalized(&self.normalize(m))
    }

    /// Inserts unless already present; returns (index, inserted).
    pub fn insert(&mut self, m: &CMat) -> (usize, bool) {
        let n = self.normalize(m);
        if let Some(i) = self.find_normalized(&n) {
            return (i, false);
        }
        let i = self.mats.len();
        self.index.entry(Key(self.key(&n))).or_default().push(i);
        self.mats.push(n);
        (i, true)
    }

    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }

    pub fn get(&self, i: usize) -> &CMat {
        &self.mats[i]
    }
}

#[derive(Clone, Debug)]
pub struct BallElement {
    /// A shortest word (within the enumeration) reaching the element.
    pub word: BraidWord,
    /// The matrix exactly as evaluated along `word` (not phase-normalized).
    pub matrix: CMat,
    pub radius: usize,
}

#[derive(Clone, Debug)]
pub struct Ball {
    pub elements: Vec<BallElement>,
    /// New distinct elements found at each radius, starting with radius 0.
    pub new_per_radius: Vec<usize>,
    /// True when some radius produced nothing new: the image is finite and
    /// fully enumerated.
    pub saturated: bool,
    pub set: MatrixSet,
}

impl Ball {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Cumulative ball sizes per radius.
    pub fn cumulative(&self) -> Vec<usize> {
        self.new_per_radius
            .iter()
            .scan(0, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .collect()
    }

    pub fn position(&self, m: &CMat) -> Option<usize> {
        self.set.find(m)
    }
}

/// All signed letters of B_n.
pub fn all_letters(strands: usize) -> Vec<i32> {
    let g = strands as i32 - 1;
    (1..=g).flat_map(|i| [i, -i]).collect()
}

/// Enumerates distinct images of words over `letters` up to
/// length `opts.max_len`. Extensions skip the inverse of the last letter.
pub fn enumerate_ball(rep: &Rep, letters: &[i32], opts: &BallOptions) -> Result<Ball> {
    for &l in letters {
        if l == 0 || l.unsigned_abs() as usize >= rep.strands() {
            return Err(Error::GeneratorOutOfRange { letter: l, strands: rep.strands() });
        }
    }
    let id = linalg::identity(rep.dim());
    let mut set = MatrixSet::new(rep.dim(), opts.epsilon, opts.projective);
    set.insert(&id);
    let mut elements = vec![BallElement { word: BraidWord::identity(rep.strands())?, matrix: id, radius: 0 }];
    let mut new_per_radius = vec![1];
    let mut frontier = vec![0usize];
    let mut saturated = false;
    for radius in 1..=opts.max_len {
        let mut next = Vec::new();
        for &e in &frontier {
            let last = elements[e].word.letters().last().copied();
            for &l in letters {
                if last == Some(-l) {
                    continue;
                }
                let m = &elements[e].matrix * rep.letter(l);
                let (_, inserted) = set.insert(&m);
                if inserted {
                    if set.len() > opts.max_elements {
                        return Err(Error::BallTooLarge { limit: opts.max_elements });
                    }
                    let mut word = elements[e].word.clone();
                    word.push(l)?;
                    next.push(elements.len());
                    elements.push(BallElement { word, matrix: m, radius });
                }
            }
        }
        new_per_radius.push(next.len());
        if next.is_empty() {
            saturated = true;
            break;
        }
        frontier = next;
    }
    Ok(Ball { elements, new_per_radius, saturated, set })
}
