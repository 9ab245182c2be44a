use std::path::{Path, PathBuf};

use serde::Deserialize;

/// Settings read from an optional TOML file; command-line flags win.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub tolerances: TolConfig,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub max_len: Option<usize>,
    pub max_elements: Option<usize>,
    pub restarts: Option<usize>,
    /// Explicit θ list for `leakage scan`, e.g. `["1/4pi", "rad:0.7"]`.
    pub thetas: Option<Vec<String>>,
    pub grid: Option<usize>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TolConfig {
    pub relation: Option<f64>,
    pub unitarity: Option<f64>,
    pub dedup: Option<f64>,
    pub solver: Option<f64>,
}

/// Effective tolerances after merging defaults, config and flags.
#[derive(Clone, Copy, Debug)]
pub struct Tols {
    pub relation: f64,
    pub unitarity: f64,
    pub dedup: f64,
    pub solver: f64,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
    }
}

pub fn positive(name: &str, v: f64) -> Result<f64, String> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{name} must be a positive number, got {v}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_partial_config() {
        let c: RunConfig = toml::from_str("seed = 3\n[tolerances]\nrelation = 1e-10\n").unwrap();
        assert_eq!(c.seed, Some(3));
        assert_eq!(c.tolerances.relation, Some(1e-10));
        assert!(c.tolerances.dedup.is_none());
        assert!(toml::from_str::<RunConfig>("bogus = 1").is_err());
    }

    #[test]
    fn rejects_non_positive() {
        assert!(positive("x", 0.0).is_err());
        assert!(positive("x", f64::NAN).is_err());
        assert_eq!(positive("x", 1e-3), Ok(1e-3));
    }
}
