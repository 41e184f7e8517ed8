mod common;

use common::strategies::{dialgebra, F3};
use dias::actor::{inequality_families, split_extension_report};
use dias::definition::DefinitionFile;
use dias::fixtures::d2;
use dias::{
    action_data_to_hom, annihilator, canonical_morphism, center, check_conditions, check_crossed_module,
    check_xmod_action_data, hom_to_action_data, semidirect_xmod, verify_center_is_kernel, Action, CrossedModule,
    Dialgebra, Field, Rational, XModActionData,
};
use proptest::prelude::*;

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");

fn family(d: &Dialgebra<F3>) -> Vec<CrossedModule<F3>> {
    let mut out = vec![CrossedModule::identity(d), CrossedModule::zero_over(d)];
    let ann = annihilator(d);
    if !ann.is_zero() && !ann.is_full() {
        out.push(CrossedModule::from_ideal(d, &ann).unwrap());
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn conditions_are_consistent(d in dialgebra(3)) {
        for xm in family(&d) {
            let c = check_conditions(&xm);
            if c.con1 && c.con3 {
                prop_assert!(c.con2 && c.con4);
            }
            prop_assert_eq!(c.con1, c.ann_l.is_zero() && c.ann_d.is_zero());
            prop_assert_eq!(c.any(), !c.holding().is_empty());
        }
    }

    #[test]
    fn conjugation_round_trip(d in dialgebra(2)) {
        for xm in family(&d) {
            let data = XModActionData::conjugation(&xm);
            prop_assert!(check_xmod_action_data(&data).is_empty());
            let hom = action_data_to_hom(&data).unwrap();
            let canon = canonical_morphism(&xm).unwrap();
            prop_assert_eq!(&hom.phi, &canon.phi);
            prop_assert_eq!(&hom.psi, &canon.psi);
            let back = hom_to_action_data(&hom.phi, &hom.psi, &xm, &hom.actor).unwrap();
            prop_assert_eq!(back, data);
        }
    }

    #[test]
    fn semidirect_splits(d in dialgebra(2)) {
        for xm in family(&d) {
            let data = XModActionData::conjugation(&xm);
            let s = semidirect_xmod(&data).unwrap();
            prop_assert!(check_crossed_module(&s.xmod).unwrap().is_empty());
            prop_assert!(split_extension_report(&s, &data).unwrap().is_empty());
            prop_assert!(inequality_families(&data).is_empty());
        }
    }

    #[test]
    fn kernel_matches_center(d in dialgebra(3)) {
        for xm in family(&d) {
            let check = verify_center_is_kernel(&xm).unwrap();
            prop_assert!(check.report.is_empty(), "{:?}", check.report.labels());
            prop_assert_eq!(check.report.advisory, !check.conditions.any());
            prop_assert_eq!(&check.center, &center(&xm));
        }
    }
}

#[test]
fn zero_source_data_from_an_ideal() {
    let d = d2::<Rational>();
    let e2 = common::span(2, vec![vec![Rational::zero(), Rational::one()]]);
    let target = CrossedModule::from_ideal(&d, &e2).unwrap();
    let data = XModActionData::from_zero_source(&d, &target, target.action.clone(), Action::by_products(&d)).unwrap();
    assert!(check_xmod_action_data(&data).is_empty());
    let hom = action_data_to_hom(&data).unwrap();
    assert!(hom.report.is_empty());
    let s = semidirect_xmod(&data).unwrap();
    assert!(split_extension_report(&s, &data).unwrap().is_empty());
}

#[test]
fn literal_identity_on_ideal_is_rejected() {
    let file = DefinitionFile::read(std::path::Path::new(&format!("{FIXTURES}/invalid_action_data.json"))).unwrap();
    let model = file.build::<Rational>().unwrap();
    let data = model.data("id_on_e2").unwrap();
    let report = check_xmod_action_data(data).sorted();
    assert_eq!(report.violations.len(), 35);
    assert_eq!(report.violations[0].label, "DiM1a");
    assert_eq!(report.violations[0].witness, [0, 0]);
    assert!(report.labels().iter().all(|l| l.starts_with("DiM")));
    assert!(semidirect_xmod(data).is_err());
}

#[test]
fn no_condition_is_advisory() {
    let a2 = Dialgebra::<Rational>::abelian(2);
    let xm = CrossedModule::zero_map(&a2, &a2, Action::trivial(2, 2)).unwrap();
    let check = verify_center_is_kernel(&xm).unwrap();
    assert!(!check.conditions.any());
    assert!(check.report.advisory);
    assert!(check.center.l_fixed.is_full() && check.center.d_center.is_full());
}
