//! Rep files: JSON with fields `n`, `d`, `label` and `generators`, each
//! generator a list of rows of `[re, im]` pairs. Writers emit 17 significant
//! digits.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{C64, CMat};

use super::rep::Rep;

#[derive(Serialize, Deserialize)]
struct RepFile {
    n: usize,
    d: usize,
    label: String,
    generators: Vec<Vec<Vec<[f64; 2]>>>,
}

fn rows_of(m: &CMat) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect()
}

fn mat_from_rows(rows: &[Vec<[f64; 2]>], d: usize) -> Result<CMat> {
    if rows.len() != d || rows.iter().any(|r| r.len() != d) {
        return Err(Error::DimensionMismatch { expected: d, found: rows.iter().map(|r| r.len()).max().unwrap_or(0).max(rows.len()) });
    }
    Ok(CMat::from_fn(d, d, |i, j| C64::new(rows[i][j][0], rows[i][j][1])))
}

fn num(x: f64) -> String {
    if x == 0.0 {
        "0.0".into()
    } else {
        format!("{x:.16e}")
    }
}

/// Serializes a representation with 17 significant digits per component.
pub fn write_rep(rep: &Rep) -> String {
    let mut s = String::new();
    s.push_str("{\n");
    let _ = writeln!(s, "  \"n\": {},", rep.strands());
    let _ = writeln!(s, "  \"d\": {},", rep.dim());
    let _ = writeln!(s, "  \"label\": {},", serde_json::to_string(rep.label()).expect("string"));
    s.push_str("  \"generators\": [\n");
    let gens = rep.generators();
    for (k, g) in gens.iter().enumerate() {
        s.push_str("    [\n");
        for i in 0..g.nrows() {
            let row: Vec<String> =
                (0..g.ncols()).map(|j| format!("[{}, {}]", num(g[(i, j)].re), num(g[(i, j)].im))).collect();
            let _ = writeln!(s, "      [{}]{}", row.join(", "), if i + 1 < g.nrows() { "," } else { "" });
        }
        let _ = writeln!(s, "    ]{}", if k + 1 < gens.len() { "," } else { "" });
    }
    s.push_str("  ]\n}\n");
    s
}

/// Parses a Rep file. Shapes are checked; braid relations are left to the caller.
pub fn read_rep(text: &str) -> Result<Rep> {
    let f: RepFile = serde_json::from_str(text)?;
    let gens = f.generators.iter().map(|g| mat_from_rows(g, f.d)).collect::<Result<Vec<_>>>()?;
    if gens.iter().flat_map(|g| g.iter()).any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Parse("non-finite matrix entry".into()));
    }
    Rep::new(f.n, gens, f.label)
}

/// Serde adapter storing a matrix as rows of `[re, im]` pairs.
pub mod matrix_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &CMat, s: S) -> std::result::Result<S::Ok, S::Error> {
        rows_of(m).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<CMat, D::Error> {
        let rows: Vec<Vec<[f64; 2]>> = Vec::deserialize(d)?;
        let n = rows.len();
        mat_from_rows(&rows, n).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::Angle;
    use crate::catalog::builders::*;

    #[test]
    fn round_trip_is_exact() {
        let r = build_eta(EtaParams::b3(Angle::pi_frac(3, 10))).unwrap();
        let text = write_rep(&r);
        let back = read_rep(&text).unwrap();
        assert_eq!(back.generators(), r.generators());
        assert_eq!(back.label(), r.label());
        assert_eq!(write_rep(&back), text);
    }

    #[test]
    fn corrupted_entry_fails_relations() {
        let r = build_eta(EtaParams::b3(Angle::pi_frac(1, 4))).unwrap();
        let mut f: serde_json::Value = serde_json::from_str(&write_rep(&r)).unwrap();
        f["generators"][1][0][0][0] = serde_json::json!(0.5);
        let bad = read_rep(&f.to_string()).unwrap();
        assert!(!bad.verify_relations().pass);
    }

    #[test]
    fn shape_errors() {
        let text = r#"{"n":3,"d":2,"label":"x","generators":[[[[1,0]]],[[[1,0]]]]}"#;
        assert!(read_rep(text).is_err());
        assert!(read_rep("not json").is_err());
    }
}
