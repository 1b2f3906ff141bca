use std::path::PathBuf;

use cckit::catalog::{all, get_example, names};
use cckit::exterior::{exterior_derivative, schouten};
use cckit::io::StructureFile;
use cckit::structures::{classify, dualize, regularity_density, second_pair, verify_duality, DualPair, StructureClass};
use cckit::{DiffForm, Error, Scalar};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.json"))
}

#[test]
fn mandatory_entries_are_present() {
    for name in ["cosym3", "contact3", "contact5", "acc3", "singular3"] {
        assert!(names().contains(&name), "{name}");
    }
    assert!(matches!(get_example("nope"), Err(Error::UnknownExample(_))));
}

#[test]
fn fixtures_match_the_catalog() {
    for entry in all() {
        let text = std::fs::read_to_string(fixture(entry.name)).unwrap();
        let (chart, cov) = StructureFile::from_json(&text).unwrap().to_structure().unwrap();
        assert_eq!(chart, entry.chart, "{}", entry.name);
        assert_eq!(cov, entry.cov, "{}", entry.name);
    }
}

#[test]
fn classification_matches_expectation() {
    for entry in all() {
        assert_eq!(classify(&entry.cov), entry.expected_class, "{}", entry.name);
        if entry.expected_class != StructureClass::NotRegular {
            let con = dualize(&entry.cov).unwrap();
            assert!(verify_duality(&entry.cov, &con).unwrap().pass(), "{}", entry.name);
        }
    }
    assert_eq!(get_example("cosym3").unwrap().expected_class, StructureClass::Cosymplectic);
    assert_eq!(get_example("contact5").unwrap().expected_class, StructureClass::Contact);
}

#[test]
fn acc3_is_genuinely_mixed() {
    let e = get_example("acc3").unwrap();
    let d_omega = exterior_derivative(e.cov.omega());
    assert!(!d_omega.is_zero());
    assert_ne!(e.cov.two_form(), &d_omega);
    assert!(exterior_derivative(e.cov.two_form()).is_zero());
    assert_eq!(regularity_density(&e.cov), e.chart.parse("1 + y").unwrap());
}

#[test]
fn acc3_second_pair_is_regular_again() {
    let e = get_example("acc3").unwrap();
    let second = second_pair(&e.cov);
    let dx = DiffForm::coordinate(3, 0);
    let dy = DiffForm::coordinate(3, 1);
    let dz = DiffForm::coordinate(3, 2);
    assert_eq!(second.two_form(), &(&(&dx + &dz).wedge(&dy) + &dx.wedge(&dy)));
    assert_eq!(regularity_density(&second), e.chart.parse("2 + y").unwrap());
    assert_eq!(classify(&second), StructureClass::AlmostCosymplecticContact);
}

#[test]
fn contact_lambda_squares_to_reeb_wedge_lambda() {
    for name in ["contact3", "contact5"] {
        let dp = DualPair::new(get_example(name).unwrap().cov).unwrap();
        let lhs = schouten(dp.lambda(), dp.lambda()).unwrap();
        assert_eq!(lhs, dp.reeb().wedge(dp.lambda()).scale(&Scalar::from_int(-2)), "{name}");
        assert!(schouten(dp.reeb(), dp.lambda()).unwrap().is_zero());
    }
}
