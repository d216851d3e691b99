mod common;

use std::collections::HashSet;

use common::{naive_closure, random_schema_graph};
use oced_forge::rdf::Triple;
use oced_forge::vocab::rdfs_closure;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn matches_naive_fixpoint(seed in any::<u64>()) {
        let g = random_schema_graph(&mut StdRng::seed_from_u64(seed), 120);
        let fast: HashSet<Triple> = rdfs_closure(&g).iter().collect();
        prop_assert_eq!(fast, naive_closure(&g));
    }

    #[test]
    fn closure_is_idempotent_and_monotone(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random_schema_graph(&mut rng, 80);
        let c = rdfs_closure(&g);
        prop_assert_eq!(rdfs_closure(&c), c.clone());
        let mut bigger = g.clone();
        bigger.extend_from(&random_schema_graph(&mut rng, 20));
        let cb = rdfs_closure(&bigger);
        prop_assert!(c.iter().all(|t| cb.contains_triple(&t)));
    }
}
