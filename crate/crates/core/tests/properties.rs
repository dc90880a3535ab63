mod support;

use conelab::{Cone, Vector};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use support::*;

fn cone_in(n: usize) -> impl Strategy<Value = Cone> {
    (prop::collection::vec(prop::collection::vec(-3i64..=3, n), 1..=12), any::<bool>()).prop_map(move |(rows, line)| {
        let mut rays: Vec<Vector> = rows.iter().map(|r| Vector::from_ints(r)).collect();
        let lineality = if line && n > 2 && rays.len() > 1 { vec![rays.pop().unwrap()] } else { Vec::new() };
        Cone::from_generators(rays, lineality, n).unwrap()
    })
}

fn cone_pair() -> impl Strategy<Value = (Cone, Cone)> {
    (2usize..=6).prop_flat_map(|n| (cone_in(n), cone_in(n)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn dual_is_an_involution((k, _) in cone_pair()) {
        prop_assert_eq!(check_dual_involution(&k), Ok(()));
    }

    #[test]
    fn dual_of_intersection_is_sum_of_duals((k1, k2) in cone_pair()) {
        prop_assert_eq!(check_dual_of_intersection(&k1, &k2), Ok(()));
    }

    #[test]
    fn tangent_directions_are_feasible_directions((k, _) in cone_pair(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(check_tangent_vs_feasible(&k, &mut rng, 4), Ok(()));
    }

    #[test]
    fn normal_cone_is_polar_of_tangent((k, _) in cone_pair()) {
        prop_assert_eq!(check_normal_is_polar_of_tangent(&k), Ok(()));
    }

    #[test]
    fn depth_at_most_dimension((k, _) in cone_pair()) {
        prop_assert_eq!(check_depth_bound(&k), Ok(()));
    }

    #[test]
    fn polyhedral_cones_are_fdc((k, _) in cone_pair()) {
        prop_assert_eq!(check_fdc(&k), Ok(()));
    }

    #[test]
    fn implication_chain_holds((k, _) in cone_pair()) {
        prop_assert_eq!(check_implications(&k), Ok(()));
    }
}

#[test]
fn seeded_suite() {
    let start = std::time::Instant::now();
    assert_eq!(run_suite(200), Ok(()));
    assert!(start.elapsed().as_secs() <= 60, "took {:?}", start.elapsed());
}
