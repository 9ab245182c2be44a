//! Braid words and the defining relations of B_n.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A word in the generators τ₁…τ_{n−1} of B_n.
///
/// Letter `i > 0` is τᵢ, letter `-i` is τᵢ⁻¹. The empty word is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    letters: Vec<i32>,
    strands: usize,
}

fn check_strands(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidStrandCount(n));
    }
    Ok(())
}

impl BraidWord {
    pub fn new(letters: Vec<i32>, strands: usize) -> Result<Self> {
        check_strands(strands)?;
        for &l in &letters {
            if l == 0 {
                return Err(Error::MalformedToken("0".into()));
            }
            if l.unsigned_abs() as usize >= strands {
                return Err(Error::GeneratorOutOfRange { letter: l, strands });
            }
        }
        Ok(Self { letters, strands })
    }

    pub fn identity(strands: usize) -> Result<Self> {
        Self::new(Vec::new(), strands)
    }

    pub fn generator(i: i32, strands: usize) -> Result<Self> {
        Self::new(vec![i], strands)
    }

    /// Parses whitespace-separated signed integers, e.g. `"1 -2 1"`.
    pub fn parse(text: &str, strands: usize) -> Result<Self> {
        let letters = text
            .split_whitespace()
            .map(|tok| match tok.parse::<i32>() {
                Ok(0) | Err(_) => Err(Error::MalformedToken(tok.to_string())),
                Ok(v) => Ok(v),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(letters, strands)
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Cancels adjacent `i, -i` pairs until none remain.
    pub fn free_reduce(&self) -> BraidWord {
        let mut stack: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if stack.last() == Some(&-l) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        BraidWord { letters: stack, strands: self.strands }
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord { letters: self.letters.iter().rev().map(|l| -l).collect(), strands: self.strands }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch { expected: self.strands, found: other.strands });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { letters, strands: self.strands })
    }

    pub fn push(&mut self, letter: i32) -> Result<()> {
        if letter == 0 || letter.unsigned_abs() as usize >= self.strands {
            return Err(Error::GeneratorOutOfRange { letter, strands: self.strands });
        }
        self.letters.push(letter);
        Ok(())
    }

    /// Whether τ_g or its inverse occurs.
    pub fn uses_generator(&self, g: usize) -> bool {
        self.letters.iter().any(|l| l.unsigned_abs() as usize == g)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.letters {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}

pub fn parse_word(text: &str, strands: usize) -> Result<BraidWord> {
    BraidWord::parse(text, strands)
}

pub fn free_reduce(w: &BraidWord) -> BraidWord {
    w.free_reduce()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RelationKind {
    FarCommutation,
    YangBaxter,
}

/// One defining relation `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationInstance {
    pub lhs: BraidWord,
    pub rhs: BraidWord,
    pub kind: RelationKind,
}

/// Every defining relation of B_n: τᵢτⱼ = τⱼτᵢ for |i−j| ≥ 2 (i < j) and
/// τᵢτᵢ₊₁τᵢ = τᵢ₊₁τᵢτᵢ₊₁.
pub fn relation_instances(n: usize) -> Result<Vec<RelationInstance>> {
    check_strands(n)?;
    let g = (n - 1) as i32;
    let mut out = Vec::new();
    for i in 1..g {
        out.push(RelationInstance {
            lhs: BraidWord { letters: vec![i, i + 1, i], strands: n },
            rhs: BraidWord { letters: vec![i + 1, i, i + 1], strands: n },
            kind: RelationKind::YangBaxter,
        });
    }
    for i in 1..=g {
        for j in (i + 2)..=g {
            out.push(RelationInstance {
                lhs: BraidWord { letters: vec![i, j], strands: n },
                rhs: BraidWord { letters: vec![j, i], strands: n },
                kind: RelationKind::FarCommutation,
            });
        }
    }
    Ok(out)
}
