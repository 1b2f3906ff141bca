//! Condition sets characterizing generators of each symmetry target, and the direct checks
//! they are equivalent to.
//!
//! Conditions quantified over arbitrary 1-forms are materialized on the coordinate basis:
//! `β ↦ R(β♯)` becomes the vector field with components `R((dxʲ)♯)`, and likewise for two
//! arguments. Such a tensor vanishes exactly when the quantified statement holds.

use super::{canonical_pair, pair_to_vector, BasicField, GeneratorPair, SymmetryTarget};
use crate::algebra::Scalar;
use crate::error::Result;
use crate::exterior::{
    differential, exterior_derivative, increasing_indices, interior_product, lie_derivative_form, schouten,
    vector_action, DiffForm, Multivector,
};
use crate::report::{ConditionReport, Residual};
use crate::structures::DualPair;

pub mod labels {
    pub const ONE_FORM: &str = "i_{alpha#} d omega + h i_E d omega + dh = 0";
    pub const CLOSED: &str = "d alpha = 0";
    pub const KERNEL: &str = "alpha(E) = 0";
    pub const REEB_H: &str = "E.h + Lambda(L_E omega, alpha) = 0";
    pub const FORALL_BETA: &str = "d omega(alpha#, beta#) + h d omega(E, beta#) + dh(beta#) = 0 for all beta";
    pub const FORALL_BETA_GAMMA: &str =
        "alpha(E) d omega(beta#, gamma#) - d alpha(beta#, gamma#) = 0 for all beta, gamma";
    pub const REEB_ALPHA: &str = "(L_E alpha - alpha(E) L_E omega)# = 0";
    pub const REEB_ALPHA_FORALL: &str = "(L_E alpha)(beta#) - alpha(E) (L_E omega)(beta#) = 0 for all beta";
    pub const LAMBDA: &str = "[alpha#, Lambda] - E ^ (dh + h L_E omega)# = 0";

    pub const LIE_ONE_FORM: &str = "L_X omega = 0";
    pub const LIE_TWO_FORM: &str = "L_X Omega = 0";
    pub const LIE_REEB: &str = "[X, E] = 0";
    pub const LIE_LAMBDA: &str = "[X, Lambda] = 0";
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Condition {
    OneForm,
    Closed,
    Kernel,
    ReebH,
    ForallBeta,
    ForallBetaGamma,
    ReebAlpha,
    ReebAlphaForall,
    Lambda,
}

impl Condition {
    fn label(self) -> &'static str {
        match self {
            Condition::OneForm => labels::ONE_FORM,
            Condition::Closed => labels::CLOSED,
            Condition::Kernel => labels::KERNEL,
            Condition::ReebH => labels::REEB_H,
            Condition::ForallBeta => labels::FORALL_BETA,
            Condition::ForallBetaGamma => labels::FORALL_BETA_GAMMA,
            Condition::ReebAlpha => labels::REEB_ALPHA,
            Condition::ReebAlphaForall => labels::REEB_ALPHA_FORALL,
            Condition::Lambda => labels::LAMBDA,
        }
    }
}

fn target_conditions(target: SymmetryTarget) -> &'static [Condition] {
    use Condition as C;
    match target {
        SymmetryTarget::OneForm => &[C::OneForm],
        SymmetryTarget::TwoForm => &[C::Closed, C::Kernel],
        SymmetryTarget::Reeb => &[C::ReebAlpha, C::ReebH],
        SymmetryTarget::Lambda => &[C::Lambda],
        SymmetryTarget::CovPair => &[C::Closed, C::Kernel, C::ReebH, C::ForallBeta],
        SymmetryTarget::ContraPair => &[C::ReebAlphaForall, C::ReebH, C::ForallBeta, C::ForallBetaGamma],
        SymmetryTarget::ReebTwoForm => &[C::Closed, C::Kernel, C::ReebH],
        SymmetryTarget::LambdaTwoForm => &[C::Closed, C::Kernel, C::ForallBeta],
        SymmetryTarget::ReebOneForm => &[C::ReebAlphaForall, C::ReebH, C::ForallBeta],
        SymmetryTarget::LambdaOneForm => &[C::ReebH, C::ForallBeta, C::ForallBetaGamma],
    }
}

fn basis_sharps(dp: &DualPair) -> Vec<Multivector> {
    let d = dp.dim();
    (0..d).map(|j| dp.sharp(&DiffForm::coordinate(d, j))).collect()
}

/// `β ↦ R(β♯)` on the coordinate basis.
fn forall_one(dp: &DualPair, r: &DiffForm) -> Multivector {
    let comps = basis_sharps(dp).iter().map(|b| dp.eval(r, b)).collect();
    Multivector::from_vec(comps)
}

/// `(β, γ) ↦ R(β♯, γ♯)` on the coordinate basis.
fn forall_two(dp: &DualPair, r: &DiffForm) -> Multivector {
    let sharps = basis_sharps(dp);
    Multivector::from_components(
        dp.dim(),
        2,
        increasing_indices(dp.dim(), 2).into_iter().map(|jk| {
            let v = dp.eval2(r, &sharps[jk[0]], &sharps[jk[1]]);
            (jk, v)
        }),
    )
    .expect("increasing indices are valid")
}

/// `i_{α♯}dω + h i_E dω + dh`.
fn one_form_residual(dp: &DualPair, g: &GeneratorPair) -> DiffForm {
    let s = dp.sharp(&g.alpha);
    let i_s = interior_product(&s, dp.d_omega()).expect("vector into 2-form");
    let i_e = interior_product(dp.reeb(), dp.d_omega()).expect("vector into 2-form");
    &(&i_s + &i_e.scale(&g.h)) + &differential(dp.dim(), &g.h)
}

fn reeb_alpha_form(dp: &DualPair, g: &GeneratorPair) -> DiffForm {
    let ae = dp.eval(&g.alpha, dp.reeb());
    let le_a = lie_derivative_form(dp.reeb(), &g.alpha).expect("vector field and form on one chart");
    &le_a - &dp.lie_e_omega().scale(&ae)
}

fn condition_residual(dp: &DualPair, g: &GeneratorPair, c: Condition) -> Residual {
    match c {
        Condition::OneForm => Residual::Form(one_form_residual(dp, g)),
        Condition::Closed => Residual::Form(exterior_derivative(&g.alpha)),
        Condition::Kernel => Residual::Scalar(dp.eval(&g.alpha, dp.reeb())),
        Condition::ReebH => {
            Residual::Scalar(&vector_action(dp.reeb(), &g.h) + &dp.lambda_of(dp.lie_e_omega(), &g.alpha))
        }
        Condition::ForallBeta => {
            // dω(α♯, β♯) + h dω(E, β♯) + dh(β♯) is the one-form residual evaluated on β♯
            Residual::Multivector(forall_one(dp, &one_form_residual(dp, g)))
        }
        Condition::ForallBetaGamma => {
            let ae = dp.eval(&g.alpha, dp.reeb());
            let r = &dp.d_omega().scale(&ae) - &exterior_derivative(&g.alpha);
            Residual::Multivector(forall_two(dp, &r))
        }
        Condition::ReebAlpha => Residual::Multivector(dp.sharp(&reeb_alpha_form(dp, g))),
        Condition::ReebAlphaForall => Residual::Multivector(forall_one(dp, &reeb_alpha_form(dp, g))),
        Condition::Lambda => {
            let s = dp.sharp(&g.alpha);
            let lhs = schouten(&s, dp.lambda()).expect("vector field and bivector");
            let dh_term = &differential(dp.dim(), &g.h) + &dp.lie_e_omega().scale(&g.h);
            let rhs = dp.reeb().wedge(&dp.sharp(&dh_term));
            Residual::Multivector(&lhs - &rhs)
        }
    }
}

fn report_for(dp: &DualPair, g: &GeneratorPair, title: &str, conds: &[Condition]) -> ConditionReport {
    let mut r = ConditionReport::new(title);
    for &c in conds {
        r.push(c.label(), condition_residual(dp, g, c));
    }
    r
}

/// Evaluates the condition set characterizing generators of `target` on the given pair.
///
/// The conditions `d alpha = 0` and `alpha(E) = 0` constrain the representative as well as the
/// vector field; use [`canonical_pair`] first to ask about the vector field alone.
pub fn check_generator_conditions(dp: &DualPair, g: &GeneratorPair, target: SymmetryTarget) -> ConditionReport {
    let mut r = report_for(dp, g, "generator conditions", target_conditions(target));
    r.target = Some(target);
    r
}

/// The one-form condition split along `TM = im Λ♯ ⊕ ⟨E⟩`: its value on `E` and on every `β♯`.
pub fn omega_split_conditions(dp: &DualPair, g: &GeneratorPair) -> ConditionReport {
    let mut r = report_for(dp, g, "generator conditions (split)", &[Condition::ReebH, Condition::ForallBeta]);
    r.target = Some(SymmetryTarget::OneForm);
    r
}

/// The bivector condition evaluated on `(ω, β)` and `(β, γ)`.
pub fn lambda_split_conditions(dp: &DualPair, g: &GeneratorPair) -> ConditionReport {
    let mut r =
        report_for(dp, g, "generator conditions (split)", &[Condition::ForallBeta, Condition::ForallBetaGamma]);
    r.target = Some(SymmetryTarget::Lambda);
    r
}

fn direct_residual(dp: &DualPair, x: &Multivector, field: BasicField) -> (&'static str, Residual) {
    let lie = |b: &DiffForm| lie_derivative_form(x, b).expect("vector field and form on one chart");
    let br = |p: &Multivector| schouten(x, p).expect("vector field bracket");
    match field {
        BasicField::OneForm => (labels::LIE_ONE_FORM, Residual::Form(lie(dp.omega()))),
        BasicField::TwoForm => (labels::LIE_TWO_FORM, Residual::Form(lie(dp.two_form()))),
        BasicField::Reeb => (labels::LIE_REEB, Residual::Multivector(br(dp.reeb()))),
        BasicField::Lambda => (labels::LIE_LAMBDA, Residual::Multivector(br(dp.lambda()))),
    }
}

/// Lie derivatives of the target's tensors along `X`.
pub fn check_symmetry_direct(dp: &DualPair, x: &Multivector, target: SymmetryTarget) -> ConditionReport {
    let mut r = ConditionReport::for_target("direct Lie derivatives", target);
    for &f in target.fields() {
        let (label, res) = direct_residual(dp, x, f);
        r.push(label, res);
    }
    r
}

/// Verdicts of the covariant-pair conditions, the contravariant-pair conditions and the four
/// direct Lie derivatives for one vector field.
#[derive(Clone, Debug)]
pub struct TheoremEquivalence {
    pub covariant_conditions: bool,
    pub contravariant_conditions: bool,
    pub direct: bool,
    pub report: ConditionReport,
}

impl TheoremEquivalence {
    pub fn agree(&self) -> bool {
        self.covariant_conditions == self.contravariant_conditions && self.contravariant_conditions == self.direct
    }
}

/// Evaluated on the representative with `α(E) = 0`, since the statements concern `X_(α,h)`.
pub fn theorem_equivalence_check(dp: &DualPair, g: &GeneratorPair) -> Result<TheoremEquivalence> {
    dp.require_almost_cosymplectic_contact()?;
    let g = canonical_pair(dp, g);
    let cov = check_generator_conditions(dp, &g, SymmetryTarget::CovPair);
    let contra = check_generator_conditions(dp, &g, SymmetryTarget::ContraPair);
    let x = pair_to_vector(dp, &g);
    let mut direct = check_symmetry_direct(dp, &x, SymmetryTarget::CovPair);
    direct.absorb("", check_symmetry_direct(dp, &x, SymmetryTarget::ContraPair));

    let (a, b, c) = (cov.pass(), contra.pass(), direct.pass());
    let show = |v: bool| if v { "symmetry" } else { "not a symmetry" };
    let mut report = ConditionReport::new("structure-pair equivalence");
    report.push_verdict(
        "covariant-pair conditions agree with contravariant-pair conditions",
        a == b,
        format!("{} vs {}", show(a), show(b)),
    );
    report.push_verdict(
        "covariant-pair conditions agree with direct Lie derivatives",
        a == c,
        format!("{} vs {}", show(a), show(c)),
    );
    report.push_verdict(
        "contravariant-pair conditions agree with direct Lie derivatives",
        b == c,
        format!("{} vs {}", show(b), show(c)),
    );
    Ok(TheoremEquivalence { covariant_conditions: a, contravariant_conditions: b, direct: c, report })
}

/// Residuals of every condition for `target`, flattened, used by the generator search.
pub(super) fn condition_residuals(dp: &DualPair, g: &GeneratorPair, target: SymmetryTarget) -> Vec<Residual> {
    target_conditions(target).iter().map(|&c| condition_residual(dp, g, c)).collect()
}

pub(super) fn flatten(res: &Residual, dim: usize) -> Vec<Scalar> {
    match res {
        Residual::Scalar(s) => vec![s.clone()],
        Residual::Form(f) => increasing_indices(dim, f.degree()).iter().map(|i| f.component(i)).collect(),
        Residual::Multivector(m) => increasing_indices(dim, m.degree()).iter().map(|i| m.component(i)).collect(),
        Residual::Matrix(rows) => rows.iter().flatten().cloned().collect(),
        Residual::Pair { sharp, h } => {
            let mut v = sharp.to_vec();
            v.push(h.clone());
            v
        }
        Residual::Verdict { .. } => Vec::new(),
    }
}
