mod common;

use std::sync::Arc;

use smpkit::catalog::{self, CATALOG};
use smpkit::dispatch::{
    inapplicable, select_method, solve_auto, Method, SolveOptions, SolveWitness,
};
use smpkit::solvers::commutative::verify_exponent_witness;
use smpkit::structure::classify;
use smpkit::{builtin, Error, SmpInstance, Tup};

use common::rng;

#[test]
fn cross_checked_catalog_runs() {
    let mut rng = rng(31);
    for s in catalog::load(CATALOG) {
        for _ in 0..200 {
            let inst = catalog::random_small_instance(&s, 4, 4, &mut rng).unwrap();
            let options = SolveOptions {
                method: None,
                cross_check: Some(true),
            };
            let report = solve_auto(&inst, options).unwrap();
            assert_eq!(report.cross_checked, Some(report.answer));
            match &report.witness {
                Some(SolveWitness::Word(w)) => assert!(inst.verifies(w)),
                Some(SolveWitness::Exponents(e)) => {
                    assert!(verify_exponent_witness(&inst, e).unwrap())
                }
                None => {}
            }
        }
    }
}

#[test]
fn polynomial_method_tracks_classification() {
    for s in catalog::load(CATALOG) {
        let report = classify(&s);
        let method = select_method(&s, &report);
        let tractable = report.is_group
            || report.is_clifford
            || report.cond1
            || s.origin() == Some(&smpkit::Builtin::Transformation(2));
        assert_eq!(method.is_polynomial(), tractable, "{:?}", s.origin());
        if report.is_commutative {
            assert_eq!(
                method.is_polynomial(),
                report.dichotomy == smpkit::structure::Dichotomy::P
            );
        }
    }
}

#[test]
fn every_override_is_checked() {
    for s in catalog::load(CATALOG) {
        let report = classify(&s);
        let x = s.elem(0).unwrap();
        let inst = SmpInstance::new(s.clone(), vec![Tup::new(vec![x])], Tup::new(vec![x])).unwrap();
        for m in Method::ALL {
            let options = SolveOptions {
                method: Some(m),
                cross_check: Some(true),
            };
            match (inapplicable(m, &s, &report), solve_auto(&inst, options)) {
                (None, Ok(r)) => assert!(r.answer && r.method == m),
                (Some(_), Err(Error::MethodNotApplicable { .. })) => {}
                (reason, other) => panic!(
                    "{m} on {:?}: {reason:?} vs {:?}",
                    s.origin(),
                    other.map(|r| r.answer)
                ),
            }
        }
    }
}

#[test]
fn default_cross_check_threshold() {
    let s = Arc::new(builtin("cyclic_group(2)").unwrap());
    let one = s.elem_by_name("1").unwrap();
    let run = |n| {
        let t = Tup::constant(one, n);
        let inst = SmpInstance::new(s.clone(), vec![t.clone()], t).unwrap();
        solve_auto(&inst, SolveOptions::default())
            .unwrap()
            .cross_checked
    };
    assert_eq!(run(19), Some(true));
    assert_eq!(run(20), None);
}
