//! Braid group representations for topological qudits: construction,
//! relation checking, leakage analysis and design limits.

pub mod angle;
pub mod ball;
pub mod braid;
pub mod catalog;
pub mod error;
pub mod float_serde;
pub mod leakage;
pub mod limits;
pub mod linalg;

pub use angle::Angle;
pub use braid::{parse_word, BraidWord, RelationInstance, RelationKind};
pub use catalog::Rep;
pub use error::{Error, Result};
