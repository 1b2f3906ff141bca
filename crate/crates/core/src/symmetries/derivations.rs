//! Lie derivatives of generator pairs and the derivation identities they satisfy.

use super::conditions::check_generator_conditions;
use super::{check_symmetry_direct, pair_bracket, pair_difference, pair_to_vector, GeneratorPair, SymmetryTarget};
use crate::algebra::Scalar;
use crate::error::{Error, Result};
use crate::exterior::{lie_derivative_form, schouten, vector_action, DiffForm, Multivector};
use crate::report::{ConditionReport, Residual};
use crate::structures::DualPair;

/// `L_X(α, h) = (L_X α, X.h)`.
pub fn lie_derivative_pair(x: &Multivector, g: &GeneratorPair) -> Result<GeneratorPair> {
    Ok(GeneratorPair { alpha: lie_derivative_form(x, &g.alpha)?, h: vector_action(x, &g.h) })
}

fn require_generators(dp: &DualPair, target: SymmetryTarget, gs: &[&GeneratorPair]) -> Vec<String> {
    let mut failing = Vec::new();
    for (k, g) in gs.iter().enumerate() {
        for label in check_generator_conditions(dp, g, target).failing_labels() {
            failing.push(format!("g{}: {label}", k + 1));
        }
    }
    failing
}

fn precondition(failing: Vec<String>) -> Result<()> {
    if failing.is_empty() {
        Ok(())
    } else {
        Err(Error::Precondition(failing))
    }
}

/// `⟦g₁; ⟦g₂; g₃⟧⟧ = ⟦⟦g₁; g₂⟧; g₃⟧ + ⟦g₂; ⟦g₁; g₃⟧⟧` for generators of symmetries of `Ω`.
pub fn derivation_check_d(
    dp: &DualPair,
    g1: &GeneratorPair,
    g2: &GeneratorPair,
    g3: &GeneratorPair,
) -> Result<ConditionReport> {
    dp.require_almost_cosymplectic_contact()?;
    precondition(require_generators(dp, SymmetryTarget::TwoForm, &[g1, g2, g3]))?;
    let lhs = pair_bracket(dp, g1, &pair_bracket(dp, g2, g3)?)?;
    let rhs = &pair_bracket(dp, &pair_bracket(dp, g1, g2)?, g3)? + &pair_bracket(dp, g2, &pair_bracket(dp, g1, g3)?)?;
    let mut r = ConditionReport::new("bracket derivation");
    r.push("[[g1; [[g2; g3]]]] = [[ [[g1; g2]]; g3]] + [[g2; [[g1; g3]]]] (mod omega)", pair_difference(dp, &lhs, &rhs));
    Ok(r)
}

/// For a symmetry `X` of `(ω, Ω)`: `L_X gᵢ` are generators again and
/// `L_X⟦g₁; g₂⟧ = ⟦L_X g₁; g₂⟧ + ⟦g₁; L_X g₂⟧`.
pub fn derivation_check_lx(
    dp: &DualPair,
    x: &Multivector,
    g1: &GeneratorPair,
    g2: &GeneratorPair,
) -> Result<ConditionReport> {
    dp.require_almost_cosymplectic_contact()?;
    let mut failing: Vec<String> = check_symmetry_direct(dp, x, SymmetryTarget::CovPair)
        .failing_labels()
        .into_iter()
        .map(|l| format!("X: {l}"))
        .collect();
    failing.extend(require_generators(dp, SymmetryTarget::CovPair, &[g1, g2]));
    precondition(failing)?;

    let l1 = lie_derivative_pair(x, g1)?;
    let l2 = lie_derivative_pair(x, g2)?;
    let lhs = lie_derivative_pair(x, &pair_bracket(dp, g1, g2)?)?;
    let rhs = &pair_bracket(dp, &l1, g2)? + &pair_bracket(dp, g1, &l2)?;
    let mut r = ConditionReport::new("Lie derivative derivation");
    r.absorb("L_X g1", check_generator_conditions(dp, &l1, SymmetryTarget::CovPair));
    r.absorb("L_X g2", check_generator_conditions(dp, &l2, SymmetryTarget::CovPair));
    r.push("L_X [[g1; g2]] = [[L_X g1; g2]] + [[g1; L_X g2]] (mod omega)", pair_difference(dp, &lhs, &rhs));
    Ok(r)
}

/// `⟦g₁; g₂⟧ = ½(L_{X₁} g₂ − L_{X₂} g₁)` for generators of symmetries of `(ω, Ω)`.
pub fn antisymmetrization_identity(dp: &DualPair, g1: &GeneratorPair, g2: &GeneratorPair) -> Result<ConditionReport> {
    dp.require_almost_cosymplectic_contact()?;
    precondition(require_generators(dp, SymmetryTarget::CovPair, &[g1, g2]))?;
    let x1 = pair_to_vector(dp, g1);
    let x2 = pair_to_vector(dp, g2);
    let half = Scalar::from_rational(num_rational::BigRational::new(1.into(), 2.into()));
    let rhs = (&lie_derivative_pair(&x1, g2)? - &lie_derivative_pair(&x2, g1)?).scale(&half);
    let lhs = pair_bracket(dp, g1, g2)?;
    let mut r = ConditionReport::new("bracket antisymmetrization");
    r.push("[[g1; g2]] = (L_X1 g2 - L_X2 g1)/2 (mod omega)", pair_difference(dp, &lhs, &rhs));
    Ok(r)
}

pub const LABEL_MUSICAL: &str = "L_X(beta#) - (L_X beta)# = 0";

fn musical_residual(dp: &DualPair, x: &Multivector, beta: &DiffForm) -> Result<Multivector> {
    let lhs = schouten(x, &dp.sharp(beta))?;
    let rhs = dp.sharp(&lie_derivative_form(x, beta)?);
    Ok(&lhs - &rhs)
}

/// `L_X(β♯) − (L_X β)♯`.
pub fn musical_commutation_check(dp: &DualPair, x: &Multivector, beta: &DiffForm) -> Result<ConditionReport> {
    let mut r = ConditionReport::new("musical commutation");
    r.push(LABEL_MUSICAL, Residual::Multivector(musical_residual(dp, x, beta)?));
    Ok(r)
}

/// Whether `♯` commutes with `L_X` on every coordinate 1-form, and whether `[X, Λ] = 0`.
#[derive(Clone, Debug)]
pub struct MusicalCommutation {
    pub commutes_on_basis: bool,
    pub preserves_lambda: bool,
    pub report: ConditionReport,
}

impl MusicalCommutation {
    pub fn agree(&self) -> bool {
        self.commutes_on_basis == self.preserves_lambda
    }
}

pub fn musical_commutation_iff(dp: &DualPair, x: &Multivector) -> Result<MusicalCommutation> {
    let d = dp.dim();
    let mut basis = ConditionReport::new("musical commutation on basis");
    for j in 0..d {
        let res = musical_residual(dp, x, &DiffForm::coordinate(d, j))?;
        basis.push(format!("{LABEL_MUSICAL} for beta = dx{j}"), Residual::Multivector(res));
    }
    let commutes_on_basis = basis.pass();
    let preserves_lambda = schouten(x, dp.lambda())?.is_zero();
    let mut report = ConditionReport::new("musical commutation criterion");
    report.push_verdict(
        "L_X commutes with # on every basis 1-form iff [X, Lambda] = 0",
        commutes_on_basis == preserves_lambda,
        format!("commutes: {commutes_on_basis}, [X, Lambda] = 0: {preserves_lambda}"),
    );
    Ok(MusicalCommutation { commutes_on_basis, preserves_lambda, report })
}
