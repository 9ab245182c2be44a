//! Two-qudit embeddings, bridge solving and leakage measurement.

pub mod bridge;
pub mod enumerate;
pub mod layout;
pub mod scan;
pub mod subspace;

pub use bridge::{
    solve_bridge_numeric, solve_bridge_qubit_closed_form, BridgeSolution, ClosedFormCandidate, ClosedFormReport,
    NumericOptions, NumericReport, NumericStatus, DEFAULT_BRIDGE_TOL, EVIDENCE_NOTE,
};
pub use enumerate::{enumerate_leakage_free, ClosureCheck, EnumOptions, InQuditSummary, LeakageEntry, LeakageReport, MAX_LEN_CAP};
pub use layout::{embed_pair, TwoQuditLayout};
pub use scan::{scan_table, theta_grid, theta_scan, ScanRow};
pub use subspace::{leakage_of, leakage_of_matrix, leakage_pair, left_charge_sector, parity_sector, Subspace};
