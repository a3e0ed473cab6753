//! Property tests over random elements of the two reference systems. The
//! acceptance harness runs the same checks at larger case counts.

mod common;

use common::props::{self, Check};
use common::*;
use ctfuchs::telescope::Frames;
use proptest::prelude::*;

fn run(name: &str, seed: u64, check: fn(&Frames, &mut Gen) -> Check) -> Result<(), TestCaseError> {
    let p = fixture(name);
    let with_t = p.module.action().is_some();
    let factors = if with_t {
        t_system_factors()
    } else {
        plain_factors()
    };
    let fr = Frames::new(&p.w, &p.vinf, seed).unwrap();
    let mut g = Gen::new(seed, with_t, factors);
    check(&fr, &mut g).map_err(TestCaseError::fail)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn hermite_residual_vanishes(seed in any::<u64>()) {
        run("integrability", seed, props::hermite_residual)?;
        run("hermite_example", seed, props::hermite_residual)?;
    }

    #[test]
    fn decomposition_residual_vanishes(seed in any::<u64>()) {
        run("integrability", seed, props::decomposition_residual)?;
        run("telescoping_local", seed, props::decomposition_residual)?;
    }

    #[test]
    fn phi_identity_holds(seed in any::<u64>()) {
        run("integrability", seed, props::phi_identity)?;
        run("telescoping_local", seed, props::phi_identity)?;
    }

    #[test]
    fn reductions_are_linear(seed in any::<u64>()) {
        run("integrability", seed, props::linearity)?;
    }

    #[test]
    fn integrability_criteria_agree(seed in any::<u64>()) {
        for name in ["integrability", "hermite_example"] {
            let p = fixture(name);
            let fr = Frames::new(&p.w, &p.vinf, seed).unwrap();
            let mut g = Gen::new(seed, false, plain_factors());
            props::integrability_equivalence(&fr, &mut g).map_err(TestCaseError::fail)?;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 4, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn derivations_commute(seed in any::<u64>()) {
        run("telescoping_local", seed, props::commutation)?;
    }

    #[test]
    fn telescoper_order_within_bound(seed in any::<u64>()) {
        run("telescoping_local", seed, props::order_bound)?;
    }
}
