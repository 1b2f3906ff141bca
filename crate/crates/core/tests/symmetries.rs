use cckit::catalog::get_example;
use cckit::exterior::{differential, vector_action};
use cckit::random::Sampler;
use cckit::report::Residual;
use cckit::structures::{CovariantPair, DualPair};
use cckit::symmetries::labels;
use cckit::symmetries::{
    antisymmetrization_identity, canonical_pair, check_generator_conditions, check_symmetry_direct,
    closure_check_two_form, contact_lift_bracket, cosymplectic_bracket, derivation_check_d, derivation_check_lx,
    find_generators, hamilton_jacobi_lift, leibniz_defect, lie_derivative_pair, musical_commutation_check,
    musical_commutation_iff, pair_bracket, pair_bracket_with_sign, pair_to_vector, pairs_equivalent,
    poisson_bracket, reduced_bracket, theorem_equivalence_check, BracketMode, CrossTermSign, GeneratorPair,
    SymmetryTarget,
};
use cckit::{Chart, DiffForm, Error, Multivector, Scalar};

fn xyz() -> Chart {
    Chart::new(&["x", "y", "z"]).unwrap()
}

fn dual_pair(name: &str) -> DualPair {
    DualPair::new(get_example(name).unwrap().cov).unwrap()
}

fn form(c: &Chart, comps: &[&str]) -> DiffForm {
    DiffForm::from_vec(comps.iter().map(|s| c.parse(s).unwrap()).collect())
}

fn pair(c: &Chart, alpha: &[&str], h: &str) -> GeneratorPair {
    GeneratorPair::new(form(c, alpha), c.parse(h).unwrap()).unwrap()
}

/// `[X, Y]ⁱ = Xᵏ∂ₖYⁱ − Yᵏ∂ₖXⁱ`, independent of the Schouten engine.
fn lie_bracket(x: &Multivector, y: &Multivector) -> Multivector {
    let (xv, yv) = (x.to_vec(), y.to_vec());
    let n = xv.len();
    Multivector::from_vec(
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|k| &(&xv[k] * &yv[i].partial_derivative(k)) - &(&yv[k] * &xv[i].partial_derivative(k)))
                    .sum()
            })
            .collect(),
    )
}

#[test]
fn pair_to_vector_basics() {
    let c = xyz();
    for name in ["cosym3", "contact3", "acc3"] {
        let dp = dual_pair(name);
        assert_eq!(&pair_to_vector(&dp, &pair(&c, &["0", "0", "0"], "1")), dp.reeb());
        let omega = GeneratorPair::new(dp.omega().clone(), Scalar::zero()).unwrap();
        assert!(pair_to_vector(&dp, &omega).is_zero());
    }
    let dp = dual_pair("cosym3");
    assert_eq!(pair_to_vector(&dp, &pair(&c, &["1", "0", "0"], "x")), Multivector::from_vec(vec![
        Scalar::zero(),
        -Scalar::one(),
        c.parse("x").unwrap(),
    ]));
}

#[test]
fn bracket_is_compatible_with_the_vector_field_bracket() {
    for name in ["cosym3", "contact3", "contact5", "acc3"] {
        let dp = dual_pair(name);
        let mut s = Sampler::new(3, dp.dim(), 2);
        for _ in 0..5 {
            let (g1, g2) = (s.pair(dp.dim()), s.pair(dp.dim()));
            let b = pair_bracket(&dp, &g1, &g2).unwrap();
            let expected = lie_bracket(&pair_to_vector(&dp, &g1), &pair_to_vector(&dp, &g2));
            assert_eq!(pair_to_vector(&dp, &b), expected, "{name}");
            let back = pair_bracket(&dp, &g2, &g1).unwrap();
            assert!(pair_to_vector(&dp, &(&b + &back)).is_zero());
            assert_eq!(b.h, -back.h);
        }
    }
}

#[test]
fn opposite_cross_term_sign_breaks_compatibility() {
    let dp = dual_pair("acc3");
    let mut s = Sampler::new(11, 3, 2);
    let broken = (0..10).any(|_| {
        let (g1, g2) = (s.pair(3), s.pair(3));
        let b = pair_bracket_with_sign(&dp, &g1, &g2, CrossTermSign::Minus).unwrap();
        pair_to_vector(&dp, &b) != lie_bracket(&pair_to_vector(&dp, &g1), &pair_to_vector(&dp, &g2))
    });
    assert!(broken);
}

#[test]
fn bracket_with_zero_and_self() {
    let dp = dual_pair("acc3");
    let mut s = Sampler::new(5, 3, 2);
    let g = s.pair(3);
    let zero = GeneratorPair::zero(3);
    assert!(pairs_equivalent(&dp, &pair_bracket(&dp, &zero, &g).unwrap(), &zero));
    assert!(pair_to_vector(&dp, &pair_bracket(&dp, &g, &g).unwrap()).is_zero());
}

#[test]
fn bracket_needs_a_closed_two_form() {
    let c = xyz();
    let omega = form(&c, &["0", "0", "1"]);
    let two_form = DiffForm::from_components(3, 2, [(vec![0, 1], Scalar::one()), (vec![1, 2], c.parse("x").unwrap())])
        .unwrap();
    let dp = DualPair::new(CovariantPair::new(omega, two_form).unwrap()).unwrap();
    assert!(!dp.class().is_almost_cosymplectic_contact());
    let g = GeneratorPair::zero(3);
    assert!(matches!(pair_bracket(&dp, &g, &g), Err(Error::NotAlmostCosymplecticContact)));
    assert!(theorem_equivalence_check(&dp, &g).is_err());
}

#[test]
fn direct_checks_on_catalog_fields() {
    let c = xyz();
    let cosym = dual_pair("cosym3");
    for t in SymmetryTarget::ALL {
        assert!(check_symmetry_direct(&cosym, cosym.reeb(), t).pass(), "{t}");
    }
    let dy = Multivector::coordinate(3, 1);
    assert!(check_symmetry_direct(&cosym, &dy, SymmetryTarget::CovPair).pass());

    let acc = dual_pair("acc3");
    let report = check_symmetry_direct(&acc, acc.reeb(), SymmetryTarget::OneForm);
    assert!(!report.pass());
    let entry = report.entry(labels::LIE_ONE_FORM).unwrap();
    assert_eq!(entry.residual, Residual::Form(form(&c, &["0", "-1/(1+y)", "0"])));
}

#[test]
fn reeb_pair_is_a_generator_exactly_when_reeb_preserves_omega() {
    let c = xyz();
    let reeb = pair(&c, &["0", "0", "0"], "1");
    for name in ["cosym3", "contact3"] {
        let dp = dual_pair(name);
        assert!(check_generator_conditions(&dp, &reeb, SymmetryTarget::CovPair).pass(), "{name}");
        assert!(theorem_equivalence_check(&dp, &reeb).unwrap().direct);
    }
    let acc = dual_pair("acc3");
    let report = check_generator_conditions(&acc, &reeb, SymmetryTarget::OneForm);
    let entry = report.entry(labels::ONE_FORM).unwrap();
    assert!(!entry.pass);
    assert_eq!(entry.residual, Residual::Form(form(&c, &["0", "-1/(1+y)", "0"])));
}

#[test]
fn cosymplectic_one_form_condition_reduces_to_dh() {
    let dp = dual_pair("cosym3");
    let mut s = Sampler::new(21, 3, 2);
    for _ in 0..5 {
        let g = s.pair(3);
        let report = check_generator_conditions(&dp, &g, SymmetryTarget::OneForm);
        let entry = report.entry(labels::ONE_FORM).unwrap();
        assert_eq!(entry.residual, Residual::Form(differential(3, &g.h)));
    }
}

#[test]
fn contact_one_form_condition_reduces_to_alpha_plus_dh() {
    let dp = dual_pair("contact3");
    let mut s = Sampler::new(22, 3, 2);
    for _ in 0..5 {
        let g = canonical_pair(&dp, &s.pair(3));
        let report = check_generator_conditions(&dp, &g, SymmetryTarget::OneForm);
        let entry = report.entry(labels::ONE_FORM).unwrap();
        assert_eq!(entry.residual, Residual::Form(&g.alpha + &differential(3, &g.h)));
    }
}

#[test]
fn hamilton_jacobi_lifts_on_contact3() {
    let c = xyz();
    let dp = dual_pair("contact3");
    let (one, flag) = hamilton_jacobi_lift(&dp, &Scalar::one());
    assert!(flag);
    assert_eq!(one, pair(&c, &["0", "0", "0"], "-1"));
    let (gz, flag) = hamilton_jacobi_lift(&dp, &c.parse("z").unwrap());
    assert!(!flag);
    assert!(!check_generator_conditions(&dp, &gz, SymmetryTarget::CovPair).pass());

    let hs: Vec<Scalar> = ["x", "y", "x*y", "x^2 - y^2"].iter().map(|t| c.parse(t).unwrap()).collect();
    for h in &hs {
        let (g, flag) = hamilton_jacobi_lift(&dp, h);
        assert!(flag);
        assert!(check_generator_conditions(&dp, &g, SymmetryTarget::CovPair).pass());
        let eq = theorem_equivalence_check(&dp, &g).unwrap();
        assert!(eq.agree() && eq.direct);
        assert_eq!(pair_to_vector(&dp, &g), &dp.sharp(&differential(3, h)) - &dp.reeb().scale(h));
    }
    for h1 in &hs {
        for h2 in &hs {
            let (g1, _) = hamilton_jacobi_lift(&dp, h1);
            let (g2, _) = hamilton_jacobi_lift(&dp, h2);
            let full = pair_bracket(&dp, &g1, &g2).unwrap();
            assert!(pairs_equivalent(&dp, &full, &contact_lift_bracket(&dp, h1, h2)));
            let reduced = reduced_bracket(&dp, &g1, &g2, BracketMode::FullSym).unwrap();
            assert!(reduced.report.pass());
            assert!(antisymmetrization_identity(&dp, &g1, &g2).unwrap().pass());
        }
    }
}

#[test]
fn poisson_bracket_of_coordinates() {
    let c = xyz();
    let dp = dual_pair("contact3");
    let (x, y) = (c.parse("x").unwrap(), c.parse("y").unwrap());
    assert_eq!(poisson_bracket(&dp, &x, &y), dp.lambda().component(&[0, 1]));
    assert_eq!(poisson_bracket(&dp, &y, &x), -dp.lambda().component(&[0, 1]));
}

#[test]
fn cosymplectic_bracket_of_constant_generators() {
    let c = xyz();
    let dp = dual_pair("cosym3");
    let g1 = pair(&c, &["1", "0", "0"], "2");
    let g2 = pair(&c, &["0", "1", "0"], "-3");
    let reduced = reduced_bracket(&dp, &g1, &g2, BracketMode::FullSym).unwrap();
    assert!(reduced.report.pass());
    assert_eq!(reduced.value(), &GeneratorPair::zero(3));
    assert_eq!(cosymplectic_bracket(&dp, &g1, &g2), GeneratorPair::zero(3));
    assert!(pairs_equivalent(&dp, &pair_bracket(&dp, &g1, &g2).unwrap(), &GeneratorPair::zero(3)));
}

#[test]
fn two_form_generators_with_closed_kernel_forms() {
    let c = xyz();
    let cosym = dual_pair("cosym3");
    let g = pair(&c, &["1", "0", "0"], "x*y + z^2");
    assert!(check_generator_conditions(&cosym, &g, SymmetryTarget::TwoForm).pass());
    assert!(check_symmetry_direct(&cosym, &pair_to_vector(&cosym, &g), SymmetryTarget::TwoForm).pass());

    let g1 = pair(&c, &["1", "0", "0"], "x + z");
    let g2 = pair(&c, &["0", "1", "0"], "y^2");
    assert!(closure_check_two_form(&cosym, &g1, &g2).unwrap().pass());

    let acc = dual_pair("acc3");
    let g1 = pair(&acc_chart(), &["1", "0", "1"], "x*z");
    let g2 = pair(&acc_chart(), &["0", "1", "0"], "y");
    assert!(closure_check_two_form(&acc, &g1, &g2).unwrap().pass());

    let not_closed = pair(&c, &["y", "0", "0"], "0");
    assert!(matches!(closure_check_two_form(&cosym, &not_closed, &g2), Err(Error::Precondition(_))));
}

fn acc_chart() -> Chart {
    get_example("acc3").unwrap().chart
}

#[test]
fn reduced_bracket_rejects_non_generators() {
    let c = xyz();
    let dp = dual_pair("acc3");
    let reeb = pair(&c, &["0", "0", "0"], "1");
    let err = reduced_bracket(&dp, &reeb, &reeb, BracketMode::OneFormSym).unwrap_err();
    match err {
        Error::Precondition(labels) => assert!(labels.iter().any(|l| l.starts_with("g1: "))),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn reduced_brackets_agree_with_the_full_bracket_on_found_generators() {
    let dp = dual_pair("acc3");
    let mut s = Sampler::new(9, 3, 1);
    for mode in [BracketMode::OneFormSym, BracketMode::TwoFormSym, BracketMode::ReebSym, BracketMode::FullSym] {
        let basis = find_generators(&dp, mode.target(), 1).unwrap();
        assert!(!basis.is_empty(), "{}", mode.as_str());
        let pick = |s: &mut Sampler| {
            basis.iter().fold(GeneratorPair::zero(3), |acc, b| &acc + &b.scale(&Scalar::from_int(s.int(-2, 2))))
        };
        let (g1, g2) = (pick(&mut s), pick(&mut s));
        let out = reduced_bracket(&dp, &g1, &g2, mode).unwrap();
        assert!(out.report.pass(), "{}: {:?}", mode.as_str(), out.report.failing_labels());
    }
}

#[test]
fn found_generators_pass_their_conditions_and_direct_checks() {
    for name in ["cosym3", "contact3", "acc3"] {
        let dp = dual_pair(name);
        for t in SymmetryTarget::ALL {
            for g in find_generators(&dp, t, 1).unwrap() {
                let rep = if t.requires_kernel_representative() { canonical_pair(&dp, &g) } else { g.clone() };
                assert!(check_generator_conditions(&dp, &rep, t).pass(), "{name} {t}");
                assert!(check_symmetry_direct(&dp, &pair_to_vector(&dp, &g), t).pass(), "{name} {t}");
            }
        }
    }
}

#[test]
fn random_pairs_fail_all_three_verdicts_together() {
    let dp = dual_pair("acc3");
    let mut s = Sampler::new(31, 3, 2);
    for _ in 0..5 {
        let eq = theorem_equivalence_check(&dp, &s.pair(3)).unwrap();
        assert!(eq.agree());
        assert!(!eq.direct);
    }
}

#[test]
fn leibniz_defect_vanishes_under_the_anchor() {
    let c = xyz();
    let dp = dual_pair("cosym3");
    let g1 = pair(&c, &["1", "0", "0"], "0");
    let g2 = pair(&c, &["0", "1", "0"], "0");
    let lz = leibniz_defect(&dp, &g1, &g2, &c.parse("x").unwrap()).unwrap();
    assert!(lz.anchored_leibniz_holds());
    // the extra term Lambda(dx, dy) dx has nonzero sharp, so it cannot also equal the defect
    assert!(!dp.sharp(&lz.stated_term.alpha).is_zero());
    assert!(!lz.stated_formula_holds());

    let acc = dual_pair("acc3");
    let mut s = Sampler::new(41, 3, 2);
    for _ in 0..5 {
        let (g1, g2, f) = (s.pair(3), s.pair(3), s.scalar());
        assert!(leibniz_defect(&acc, &g1, &g2, &f).unwrap().anchored_leibniz_holds());
        let constant = leibniz_defect(&acc, &g1, &g2, &Scalar::from_int(3)).unwrap();
        assert!(constant.anchored_leibniz_holds() && constant.stated_formula_holds());
    }
}

#[test]
fn lie_derivative_of_pairs() {
    let c = xyz();
    let g = pair(&c, &["1", "0", "0"], "x");
    let dz = Multivector::coordinate(3, 2);
    assert_eq!(lie_derivative_pair(&dz, &g).unwrap(), GeneratorPair::zero(3));
    assert_eq!(lie_derivative_pair(&Multivector::zero(3, 1), &g).unwrap(), GeneratorPair::zero(3));
    let dx = Multivector::coordinate(3, 0);
    assert_eq!(lie_derivative_pair(&dx, &g).unwrap().h, vector_action(&dx, &g.h));
}

#[test]
fn derivation_identities_on_generators() {
    for name in ["cosym3", "contact3", "acc3"] {
        let dp = dual_pair(name);
        let mut s = Sampler::new(51, 3, 1);
        let omega_basis = find_generators(&dp, SymmetryTarget::TwoForm, 1).unwrap();
        let cov_basis = find_generators(&dp, SymmetryTarget::CovPair, 1).unwrap();
        let pick = |s: &mut Sampler, basis: &[GeneratorPair]| {
            basis.iter().fold(GeneratorPair::zero(3), |acc, b| &acc + &b.scale(&Scalar::from_int(s.int(-2, 2))))
        };
        let (a, b, c) = (pick(&mut s, &omega_basis), pick(&mut s, &omega_basis), pick(&mut s, &omega_basis));
        assert!(derivation_check_d(&dp, &a, &b, &c).unwrap().pass(), "{name}");
        assert!(derivation_check_d(&dp, &a, &a, &a).unwrap().pass(), "{name}");

        let (g1, g2) = (pick(&mut s, &cov_basis), pick(&mut s, &cov_basis));
        let x1 = pair_to_vector(&dp, &g1);
        assert!(derivation_check_lx(&dp, &x1, &g1, &g2).unwrap().pass(), "{name}");
        assert!(antisymmetrization_identity(&dp, &g1, &g2).unwrap().pass(), "{name}");
        assert!(antisymmetrization_identity(&dp, &g1, &g1).unwrap().pass(), "{name}");
    }
    let cosym = dual_pair("cosym3");
    let c = xyz();
    let (g1, g2) = (pair(&c, &["1", "0", "0"], "1"), pair(&c, &["0", "1", "0"], "2"));
    assert!(derivation_check_lx(&cosym, cosym.reeb(), &g1, &g2).unwrap().pass());
}

#[test]
fn derivation_checks_report_failed_preconditions() {
    let c = xyz();
    let dp = dual_pair("acc3");
    let g = pair(&c, &["y", "0", "0"], "0");
    assert!(matches!(derivation_check_d(&dp, &g, &g, &g), Err(Error::Precondition(_))));
    let x = Multivector::coordinate(3, 1);
    match derivation_check_lx(&dp, &x, &g, &g) {
        Err(Error::Precondition(labels)) => {
            assert!(labels.iter().any(|l| l.starts_with("X: ")));
            assert!(labels.iter().any(|l| l.starts_with("g1: ")));
        }
        other => panic!("unexpected {other:?}"),
    }
    assert!(matches!(antisymmetrization_identity(&dp, &g, &g), Err(Error::Precondition(_))));
}

#[test]
fn musical_commutation_examples() {
    let c = xyz();
    let cosym = dual_pair("cosym3");
    let dz = Multivector::coordinate(3, 2);
    assert!(musical_commutation_check(&cosym, &dz, &DiffForm::coordinate(3, 0)).unwrap().pass());
    let scaling = Multivector::from_vec(vec![c.parse("x").unwrap(), Scalar::zero(), Scalar::zero()]);
    let m = musical_commutation_iff(&cosym, &scaling).unwrap();
    assert!(!m.preserves_lambda && !m.commutes_on_basis && m.agree());

    let acc = dual_pair("acc3");
    for g in find_generators(&acc, SymmetryTarget::Lambda, 1).unwrap() {
        let x = pair_to_vector(&acc, &g);
        let m = musical_commutation_iff(&acc, &x).unwrap();
        assert!(m.preserves_lambda && m.commutes_on_basis);
        assert!(musical_commutation_check(&acc, &x, acc.omega()).unwrap().pass());
    }
    let mut s = Sampler::new(61, 3, 2);
    for _ in 0..5 {
        let x: Multivector = s.alternating(3, 1);
        assert!(musical_commutation_iff(&acc, &x).unwrap().agree());
    }
}
