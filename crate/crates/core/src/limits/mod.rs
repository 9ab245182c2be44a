//! Bounds and classifications: abelian forcing, eigenvalue arrangements,
//! the N(d) family, root-of-unity checks, universality and image growth.

pub mod abelian;
pub mod counting;
pub mod growth;
pub mod universality;

pub use abelian::{check_abelian, check_forced_abelian, forced_abelian_2d, sample_b5_qubit_tuple, AbelianWitness, B5Sample};
pub use counting::{
    arrangement_count, brute_force_arrangements, crude_anyon_bound, formanek_n, formanek_n_bound, known_refinement,
    EigenSpec, LimitQuery, LimitResult, Provenance,
};
pub use growth::{growth_table, image_growth, GrowthClass, GrowthReport, GROWTH_LEN_CAP};
pub use universality::{
    flw_dense, q_angle_of_theta, root_order, universality_classify, universality_classify_q, vafa_check, Classification,
    RootOrder, UniversalityVerdict, DEFAULT_MAX_ORDER,
};
