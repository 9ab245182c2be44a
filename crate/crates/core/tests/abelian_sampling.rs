//! Two-dimensional B₅ representations are abelian: 10⁴ random
//! relation-satisfying tuples, produced by perturb-and-project, all commute.

use braidlab::limits::{check_forced_abelian, forced_abelian_2d, sample_b5_qubit_tuple};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn ten_thousand_b5_qubit_tuples_are_abelian() {
    assert!(forced_abelian_2d(5));
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut accepted, mut attempts) = (0, 0);
    let mut worst: f64 = 0.0;
    while accepted < 10_000 {
        attempts += 1;
        assert!(attempts < 20_000, "projection failed too often");
        let Some(s) = sample_b5_qubit_tuple(&mut rng, 0.3) else { continue };
        let w = check_forced_abelian(&s.generators, 1e-10, 1e-7).expect("sampled tuple satisfies the relations");
        assert!(w.abelian, "commutator {:e} at {:?}", w.max_commutator, w.pair);
        worst = worst.max(w.max_commutator);
        accepted += 1;
    }
    println!("{accepted} tuples from {attempts} attempts, max commutator {worst:.2e}");
}
