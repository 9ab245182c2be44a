use serde::{Deserialize, Serialize};

use crate::ball::{all_letters, enumerate_ball, BallOptions};
use crate::catalog::Rep;
use crate::error::{Error, Result};

pub const GROWTH_LEN_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", content = "size")]
pub enum GrowthClass {
    SaturatedFinite(usize),
    /// New elements appeared at every radius; evidence only.
    Growing,
}

impl std::fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GrowthClass::SaturatedFinite(n) => write!(f, "SaturatedFinite({n})"),
            GrowthClass::Growing => write!(f, "Growing"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub rep: String,
    pub max_len: usize,
    pub epsilon: f64,
    pub projective: bool,
    pub new_per_radius: Vec<usize>,
    pub cumulative: Vec<usize>,
    pub classification: GrowthClass,
}

/// Ball sizes per radius. A radius adding nothing means the ball is closed
/// under the generators, hence the whole (finite) image.
pub fn image_growth(rep: &Rep, opts: &BallOptions) -> Result<GrowthReport> {
    if opts.max_len > GROWTH_LEN_CAP {
        return Err(Error::InvalidParameter(format!("max_len {} exceeds the cap {GROWTH_LEN_CAP}", opts.max_len)));
    }
    if !rep.is_unitary() {
        return Err(Error::InvalidParameter("image growth needs a unitary representation".into()));
    }
    let ball = enumerate_ball(rep, &all_letters(rep.strands()), opts)?;
    let classification = if ball.saturated { GrowthClass::SaturatedFinite(ball.len()) } else { GrowthClass::Growing };
    Ok(GrowthReport {
        rep: rep.label().to_string(),
        max_len: opts.max_len,
        epsilon: opts.epsilon,
        projective: opts.projective,
        cumulative: ball.cumulative(),
        new_per_radius: ball.new_per_radius,
        classification,
    })
}

/// Tab-separated radius / new / cumulative table.
pub fn growth_table(report: &GrowthReport) -> String {
    let mut s = String::from("radius\tnew\tcumulative\n");
    for (r, (n, c)) in report.new_per_radius.iter().zip(&report.cumulative).enumerate() {
        s.push_str(&format!("{r}\t{n}\t{c}\n"));
    }
    s
}
