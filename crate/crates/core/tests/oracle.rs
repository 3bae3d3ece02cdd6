//! Interpolation oracle against dimensions predicted from (-1)-curves.
//!
//! On at most 8 points the prediction is exact: peel off every (-1)-curve
//! the system meets negatively, then the residual system is nef and its
//! dimension is the expected one.

use blowup_positivity::interpolation::{
    curve_class_effective, is_special, minimal_report, OracleConfig,
};
use blowup_positivity::weyl::enumerate_exceptional_classes;
use blowup_positivity::DivisorClass;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(s: &str) -> DivisorClass {
    s.parse().unwrap()
}

fn predicted_dimension(system: &DivisorClass) -> i64 {
    let r = system.r();
    let mut curves = enumerate_exceptional_classes(r, None).unwrap();
    if r == 1 {
        curves.push(c("1; 1"));
    }
    let mut l = system.clone();
    loop {
        if l.degree() < 0 {
            return -1;
        }
        let Some((curve, t)) = curves
            .iter()
            .map(|cv| (cv, l.intersect(cv).unwrap()))
            .find(|(_, t)| *t < 0)
        else {
            break;
        };
        l = l.combine(curve, t).unwrap();
    }
    l.profile().expected_dim as i64
}

#[test]
fn oracle_matches_prediction_on_random_systems() {
    let cfg = OracleConfig { seed: 3, ..OracleConfig::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut specials = 0;
    for _ in 0..150 {
        let r = rng.gen_range(1..=8);
        let e = rng.gen_range(1..=15);
        let mults = (0..r).map(|_| rng.gen_range(0..=11.min(e))).collect();
        let system = DivisorClass::new(e, mults).unwrap();
        let report = minimal_report(&system, &cfg).unwrap();
        let predicted = predicted_dimension(&system);
        assert_eq!(report.actual_dim, predicted, "{system}");
        assert_eq!(report.special, predicted > report.expected_dim, "{system}");
        specials += usize::from(report.special);
    }
    assert!(specials > 0, "no special system drawn");
}

#[test]
fn exceptional_curves_are_rigid() {
    let cfg = OracleConfig::default();
    for r in 1..=8 {
        for cl in enumerate_exceptional_classes(r, None).unwrap() {
            if cl.degree() > 0 {
                let report = minimal_report(&cl, &cfg).unwrap();
                assert_eq!(report.actual_dim, 0, "{cl}");
            }
        }
    }
}

#[test]
fn named_systems() {
    let cfg = OracleConfig::default();
    assert!(is_special(&c("2; 2 2"), &cfg).unwrap());
    assert!(!is_special(&c("3; 2 1 1 1 1 1 1"), &cfg).unwrap());
    assert!(!is_special(&c("1; 1 1"), &cfg).unwrap());
    assert!(curve_class_effective(&c("6; 3 2 2 2 2 2 2 2"), &cfg).unwrap());
    assert!(!curve_class_effective(&c("4; 2 1 1 1 1 1 1 1 1 1 1 1 1 1"), &cfg).unwrap());
    // a double (-1)-curve in the base locus: 2 x (conic through 5 points)
    let report = minimal_report(&c("4; 2 2 2 2 2"), &cfg).unwrap();
    assert_eq!((report.expected_dim, report.actual_dim), (-1, 0));
}
