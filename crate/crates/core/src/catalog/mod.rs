//! Representation families, relation checking, composition factors and
//! projective equivalence.

pub mod builders;
pub mod equiv;
pub mod factor;
pub mod io;
pub mod rep;
pub mod spec;

pub use builders::*;
pub use equiv::{projectively_equivalent, Equivalence, EquivalenceWitness};
pub use factor::{commutant, composition_factor, restrict, unitarize};
pub use io::{read_rep, write_rep};
pub use rep::{evaluate, verify_relations, InstanceResidual, RelationReport, Rep, Tolerances};
pub use spec::build_from_spec;
