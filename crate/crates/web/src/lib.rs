//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each export returns a JSON string. The `*_json` functions hold the logic
//! and are plain Rust so they can be tested natively.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use braidlab::ball::BallOptions;
use braidlab::catalog::{build_from_spec, eta_admissible};
use braidlab::leakage::{theta_grid, theta_scan, DEFAULT_BRIDGE_TOL};
use braidlab::limits::{image_growth, universality_classify};
use braidlab::linalg::CMat;
use braidlab::Angle;

/// Largest ball radius the page may request; the dense cases grow quickly.
pub const MAX_GROWTH_LEN: usize = 10;

fn matrix(m: &CMat) -> Value {
    let rows: Vec<Vec<[f64; 2]>> = (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect()).collect();
    json!(rows)
}

fn angle(theta: &str) -> Result<Angle, String> {
    theta.trim().parse::<Angle>().map_err(|e| e.to_string())
}

/// Generators, relation residual and admissibility of η(θ).
pub fn eta_json(theta: &str) -> Result<String, String> {
    let t = angle(theta)?;
    let adm = eta_admissible(&t);
    if !adm.admissible {
        return Ok(json!({ "theta": t.to_string(), "admissible": false, "b_squared": adm.b_squared }).to_string());
    }
    let rep = build_from_spec(&format!("eta:{t}")).map_err(|e| e.to_string())?;
    let report = rep.verify_relations();
    Ok(json!({
        "theta": t.to_string(),
        "admissible": true,
        "b_squared": adm.b_squared,
        "label": rep.label(),
        "generators": rep.generators().iter().map(matrix).collect::<Vec<_>>(),
        "relation_residual": report.max_residual,
        "unitarity_defect": report.unitarity_defect,
        "pass": report.pass,
    })
    .to_string())
}

/// Closed-form bridge residual for η(θ) ⊗ η(θ) over a θ grid.
pub fn scan_json(min_points: usize) -> Result<String, String> {
    let rows = theta_scan(&theta_grid(min_points.clamp(2, 2000)), DEFAULT_BRIDGE_TOL).map_err(|e| e.to_string())?;
    serde_json::to_string(&rows).map_err(|e| e.to_string())
}

/// Universality verdict for η(θ) together with the ball growth of its image.
pub fn classify_json(theta: &str, max_len: usize) -> Result<String, String> {
    let t = angle(theta)?;
    let verdict = universality_classify(&t).map_err(|e| e.to_string())?;
    let rep = build_from_spec(&format!("eta:{t}")).map_err(|e| e.to_string())?;
    let growth = image_growth(&rep, &BallOptions::new(max_len.clamp(1, MAX_GROWTH_LEN))).map_err(|e| e.to_string())?;
    Ok(json!({ "verdict": verdict, "growth": growth }).to_string())
}

fn js<T>(r: Result<T, String>) -> Result<T, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn eta(theta: &str) -> Result<String, JsValue> {
    js(eta_json(theta))
}

#[wasm_bindgen]
pub fn scan(min_points: usize) -> Result<String, JsValue> {
    js(scan_json(min_points))
}

#[wasm_bindgen]
pub fn classify(theta: &str, max_len: usize) -> Result<String, JsValue> {
    js(classify_json(theta, max_len))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: Result<String, String>) -> Value {
        serde_json::from_str(&s.unwrap()).unwrap()
    }

    #[test]
    fn eta_reports_matrices() {
        let v = parse(eta_json("1/4pi"));
        assert_eq!(v["pass"], true);
        assert_eq!(v["generators"].as_array().unwrap().len(), 2);
        assert_eq!(v["generators"][0].as_array().unwrap().len(), 2);
        let v = parse(eta_json("1/12pi"));
        assert_eq!(v["admissible"], false);
        assert!(eta_json("pi/4").is_err());
    }

    #[test]
    fn scan_passes_at_eighth_roots() {
        let v = parse(scan_json(181));
        let passing: Vec<&str> =
            v.as_array().unwrap().iter().filter(|r| r["pass"] == true).map(|r| r["theta"].as_str().unwrap()).collect();
        assert_eq!(passing, ["-3/4pi", "-1/4pi", "1/4pi", "3/4pi"]);
    }

    #[test]
    fn classify_combines_verdict_and_growth() {
        let v = parse(classify_json("1/4pi", 8));
        assert_eq!(v["verdict"]["classification"], json!({ "class": "ExceptionalAngle", "n": 4 }));
        assert_eq!(v["growth"]["classification"], json!({ "class": "SaturatedFinite", "size": 24 }));
        let v = parse(classify_json("3/10pi", 99));
        assert_eq!(v["growth"]["max_len"], MAX_GROWTH_LEN);
    }
}
