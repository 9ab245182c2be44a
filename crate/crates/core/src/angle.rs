//! Angles given either as exact rational multiples of π or as raw radians.
//!
//! Text syntax: `p/qpi`, `ppi`, `pi`, `-3/4pi`, `0`, or `rad:<float>`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Angle {
    /// `num/den · π`, always stored reduced with `den > 0`.
    PiMultiple { num: i64, den: i64 },
    Radians(f64),
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Angle {
    pub fn pi_frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den).max(1);
        let s = den.signum();
        Angle::PiMultiple { num: s * num / g, den: s * den / g }
    }

    pub const fn zero() -> Self {
        Angle::PiMultiple { num: 0, den: 1 }
    }

    pub fn radians(&self) -> f64 {
        match *self {
            Angle::PiMultiple { num, den } => PI * num as f64 / den as f64,
            Angle::Radians(r) => r,
        }
    }

    pub fn pi_fraction(&self) -> Option<(i64, i64)> {
        match *self {
            Angle::PiMultiple { num, den } => Some((num, den)),
            Angle::Radians(_) => None,
        }
    }

    /// Angle scaled by an integer, staying exact where possible.
    pub fn times(&self, k: i64) -> Angle {
        match *self {
            Angle::PiMultiple { num, den } => Angle::pi_frac(num * k, den),
            Angle::Radians(r) => Angle::Radians(r * k as f64),
        }
    }

    pub fn neg(&self) -> Angle {
        self.times(-1)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Angle::PiMultiple { num: 0, .. } => write!(f, "0"),
            Angle::PiMultiple { num, den: 1 } => match num {
                1 => write!(f, "pi"),
                -1 => write!(f, "-pi"),
                _ => write!(f, "{num}pi"),
            },
            Angle::PiMultiple { num, den } => write!(f, "{num}/{den}pi"),
            Angle::Radians(r) => write!(f, "rad:{r}"),
        }
    }
}

impl FromStr for Angle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::Parse(format!("bad angle `{s}` (use p/qpi or rad:<x>)"));
        if let Some(r) = t.strip_prefix("rad:") {
            let v: f64 = r.trim().parse().map_err(|_| bad())?;
            if !v.is_finite() {
                return Err(bad());
            }
            return Ok(Angle::Radians(v));
        }
        if t == "0" {
            return Ok(Angle::zero());
        }
        let body = t.strip_suffix("pi").ok_or_else(bad)?.trim_end_matches('*');
        let (num, den) = match body {
            "" | "+" => (1, 1),
            "-" => (-1, 1),
            _ => match body.split_once('/') {
                Some((p, q)) => (
                    p.parse::<i64>().map_err(|_| bad())?,
                    q.parse::<i64>().map_err(|_| bad())?,
                ),
                None => (body.parse::<i64>().map_err(|_| bad())?, 1),
            },
        };
        if den == 0 {
            return Err(bad());
        }
        Ok(Angle::pi_frac(num, den))
    }
}

impl From<Angle> for String {
    fn from(a: Angle) -> String {
        a.to_string()
    }
}

impl TryFrom<String> for Angle {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}
