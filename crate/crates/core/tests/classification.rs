//! Exhaustive checks over the reduced reflexive weight systems of
//! dimensions 2 to 4.

use std::collections::BTreeSet;

use hlspec_core::fanbox::Fan;
use hlspec_core::lefschetz::{
    hl_box_criterion, hl_necessary_condition, hl_weight_criterion, kkp_check,
};
use hlspec_core::spectrum::{
    alpha_slices, hibi_inequalities, is_polynomial, is_symmetric, is_unimodal, spectrum_box,
    spectrum_direct,
};
use hlspec_core::weights::{
    construct_simplex, enumerate_reflexive, spectrum_formula, weight_of_simplex,
};
use hlspec_core::{Int, WeightSystem};

fn ws(q: &[u64]) -> WeightSystem {
    WeightSystem::new(q.to_vec()).unwrap()
}

fn hl_set(n: usize) -> BTreeSet<WeightSystem> {
    enumerate_reflexive(n)
        .unwrap()
        .into_iter()
        .filter(|w| hl_weight_criterion(w).unwrap().holds)
        .collect()
}

#[test]
fn counts() {
    assert_eq!(enumerate_reflexive(2).unwrap().len(), 3);
    assert_eq!(enumerate_reflexive(3).unwrap().len(), 14);
    assert_eq!(enumerate_reflexive(4).unwrap().len(), 147);
}

#[test]
fn hl_sublists() {
    assert_eq!(hl_set(2).len(), 3);
    assert_eq!(
        hl_set(3),
        [ws(&[1, 1, 1, 1]), ws(&[1, 1, 2, 2])].into_iter().collect()
    );
    assert_eq!(
        hl_set(4),
        [
            ws(&[1, 1, 1, 1, 1]),
            ws(&[1, 1, 1, 1, 2]),
            ws(&[1, 1, 2, 2, 2]),
            ws(&[1, 2, 3, 3, 3]),
            ws(&[1, 2, 2, 3, 4]),
        ]
        .into_iter()
        .collect()
    );
}

#[test]
fn every_enumerated_system() {
    for n in 2..=4 {
        for w in enumerate_reflexive(n).unwrap() {
            let p = construct_simplex(&w).unwrap();
            assert_eq!(weight_of_simplex(&p).unwrap(), w);
            assert!(p.is_reflexive(), "{w}");
            assert_eq!(p.normalized_volume(), Int::from(w.mu()));

            let direct = spectrum_direct(&p).unwrap();
            let formula = spectrum_formula(&w).unwrap();
            assert_eq!(direct, formula, "{w}");
            assert_eq!(spectrum_box(&p).unwrap(), direct, "{w}");
            assert!(is_symmetric(&direct, n as u64));
            assert!(is_polynomial(&direct));
            assert_eq!(direct.eval_one() as u64, w.mu());

            let coeffs = direct.integer_coeffs().unwrap();
            let delta: Vec<i64> = p
                .delta_vector()
                .entries()
                .iter()
                .map(|x| i64::try_from(x.clone()).unwrap())
                .collect();
            assert_eq!(coeffs, delta, "{w}");
            assert!(hibi_inequalities(&direct, n as u64).unwrap());
            assert!(is_unimodal(&coeffs));

            let box_verdict = hl_box_criterion(&p).unwrap();
            let weight_verdict = hl_weight_criterion(&w).unwrap();
            assert_eq!(box_verdict.holds, weight_verdict.holds, "{w}");
            assert_eq!(kkp_check(&w).unwrap(), weight_verdict.holds);
            if weight_verdict.holds && w.max_weight() >= 2 {
                assert!(hl_necessary_condition(&w).unwrap(), "{w}");
            }
            if weight_verdict.holds {
                for slice in alpha_slices(&direct).unwrap().values() {
                    assert!(is_unimodal(slice));
                }
            }

            let fan = Fan::new(&p);
            for cone in fan.cones() {
                assert_eq!(Int::from(fan.box_elements(cone).len()), cone.index);
            }
            for pair in fan.age_pairs().unwrap() {
                assert!(pair.age.is_integer(), "reflexive ages are integral");
            }
        }
    }
}

#[test]
fn snf_box_matches_scan_up_to_dim_three() {
    for n in 2..=3 {
        for w in enumerate_reflexive(n).unwrap() {
            let p = construct_simplex(&w).unwrap();
            let fan = Fan::new(&p);
            for cone in fan.cones() {
                assert_eq!(fan.box_elements(cone), fan.box_elements_scan(cone), "{w}");
            }
        }
    }
}

#[test]
fn non_reflexive_simplices() {
    // criteria agree away from the reflexive case too
    for q in [
        &[1, 1, 3][..],
        &[1, 2, 2, 3],
        &[1, 2, 3, 5],
        &[2, 3, 5, 7],
        &[1, 1, 2, 3],
        &[1, 3, 4, 5, 7],
    ] {
        let w = ws(q);
        let p = construct_simplex(&w).unwrap();
        assert!(!p.is_reflexive());
        let direct = spectrum_direct(&p).unwrap();
        assert_eq!(direct, spectrum_formula(&w).unwrap(), "{w}");
        assert_eq!(spectrum_box(&p).unwrap(), direct, "{w}");
        assert!(!is_polynomial(&direct));
        assert_eq!(
            hl_box_criterion(&p).unwrap().holds,
            hl_weight_criterion(&w).unwrap().holds,
            "{w}"
        );
    }
}
