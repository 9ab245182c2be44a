//! Compact text descriptions of catalog representations, e.g. `eta:1/4pi`,
//! `jones:r=5:-`, `burau:n=4:z=2/5pi:reduce=1:unitary`, `ising6`.
//!
//! Fields are separated by `:`. Each field is either `key=value` or a bare
//! positional value (the angle for `eta`/`character`, the sign for `jones`)
//! or a flag (`conj` for `eta`, `unitary` for `burau`).
//!
//! Specs joined by `+` build a direct sum, e.g. `eta:3/10pi+character:3/10pi`.

use std::collections::BTreeMap;

use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::linalg::cis;

use super::builders::*;
use super::factor::{composition_factor, unitarize};
use super::rep::Rep;

struct Fields {
    family: String,
    keys: BTreeMap<String, String>,
    bare: Vec<String>,
}

fn split(text: &str) -> Result<Fields> {
    let mut parts = text.trim().split(':');
    let family = parts.next().unwrap_or_default().to_ascii_lowercase();
    if family.is_empty() {
        return Err(Error::Parse("empty representation spec".into()));
    }
    let mut keys = BTreeMap::new();
    let mut bare = Vec::new();
    for p in parts {
        match p.split_once('=') {
            Some((k, v)) => {
                keys.insert(k.trim().to_ascii_lowercase(), v.trim().to_string());
            }
            None => bare.push(p.trim().to_string()),
        }
    }
    Ok(Fields { family, keys, bare })
}

impl Fields {
    fn usize(&self, key: &str, default: Option<usize>) -> Result<usize> {
        match self.keys.get(key) {
            Some(v) => v.parse().map_err(|_| Error::Parse(format!("`{key}` must be an integer, got `{v}`"))),
            None => default.ok_or_else(|| Error::Parse(format!("`{}` needs `{key}=`", self.family))),
        }
    }

    fn angle(&self, key: &str) -> Result<Angle> {
        let raw = self
            .keys
            .get(key)
            .or_else(|| self.bare.iter().find(|b| b.parse::<Angle>().is_ok()))
            .ok_or_else(|| Error::Parse(format!("`{}` needs an angle (`{key}=p/qpi`)", self.family)))?;
        raw.parse()
    }

    fn flag(&self, name: &str) -> bool {
        self.bare.iter().any(|b| b.eq_ignore_ascii_case(name))
    }
}

/// Builds the representation described by `text`.
pub fn build_from_spec(text: &str) -> Result<Rep> {
    let mut parts = text.split('+');
    let first = build_single(parts.next().unwrap_or_default())?;
    parts.try_fold(first, |acc, p| acc.direct_sum(&build_single(p)?))
}

fn build_single(text: &str) -> Result<Rep> {
    let f = split(text)?;
    let family = f.family.as_str();
    if let Some(digits) = family.strip_prefix("ising").filter(|d| !d.is_empty()) {
        let n = digits.parse().map_err(|_| Error::Parse(format!("bad Ising strand count `{digits}`")))?;
        return build_ising_majorana(n);
    }
    match family {
        "character" | "chi" => build_character(CharacterParams { phi: f.angle("phi")? }, f.usize("n", Some(3))?),
        "eta" => {
            let strands = f.usize("n", Some(3))?;
            let conj = f.flag("conj") || f.keys.get("tau3").is_some_and(|v| v == "conj");
            let tau3 = if conj { Tau3Choice::ConjugateOfTau1 } else { Tau3Choice::SameAsTau1 };
            build_eta(EtaParams { theta: f.angle("theta")?, strands, tau3 })
        }
        "jones" => {
            let r = f.usize("r", None)? as u32;
            let sign = match f.keys.get("sign").map(String::as_str).or(f.bare.first().map(String::as_str)) {
                None | Some("+") | Some("+1") | Some("1") => 1,
                Some("-") | Some("-1") => -1,
                Some(other) => return Err(Error::Parse(format!("bad Jones sign `{other}`"))),
            };
            build_jones_b3(JonesParams { r, sign })
        }
        "burau" => {
            let strands = f.usize("n", None)?;
            let z = cis(f.angle("z")?.radians());
            let mut rep = build_burau_unreduced(BurauParams { z, strands })?;
            for _ in 0..f.usize("reduce", Some(0))? {
                rep = composition_factor(&rep)?;
            }
            if f.flag("unitary") {
                rep = unitarize(&rep)?;
            }
            Ok(rep)
        }
        "standard" => build_standard_type(f.usize("n", None)?, cis(f.angle("z")?.radians())),
        "ising" => build_ising_majorana(f.usize("n", None)?),
        other => Err(Error::Parse(format!("unknown representation family `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_family() {
        assert_eq!(build_from_spec("eta:1/4pi").unwrap().dim(), 2);
        assert_eq!(build_from_spec("eta:theta=1/4pi:n=4:conj").unwrap().strands(), 4);
        assert_eq!(build_from_spec("jones:r=5").unwrap().label(), "jones(r=5,+)");
        assert_eq!(build_from_spec("jones:r=7:-").unwrap().label(), "jones(r=7,-)");
        assert_eq!(build_from_spec("character:1/3pi:n=5").unwrap().strands(), 5);
        assert_eq!(build_from_spec("standard:n=3:z=1/2pi").unwrap().dim(), 3);
        assert_eq!(build_from_spec("ising6").unwrap().dim(), 8);
        assert_eq!(build_from_spec("ising:n=4").unwrap().dim(), 4);
        let b = build_from_spec("burau:n=4:z=2/5pi:reduce=1:unitary").unwrap();
        assert!(b.dim() == 3 && b.is_unitary());
        let s = build_from_spec("eta:3/10pi+character:3/10pi").unwrap();
        assert!(s.dim() == 3 && s.verify_relations().pass);
    }

    #[test]
    fn rejects_bad_specs() {
        for s in ["", "nope", "eta", "jones:r=x", "burau:z=1/2pi", "eta:1/12pi", "ising3", "eta:1/4pi+character:1/3pi:n=4"] {
            assert!(build_from_spec(s).is_err(), "{s}");
        }
    }
}
