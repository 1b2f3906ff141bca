//! Reduced forms of the pair bracket on generator subalgebras, and related bracket identities.

use super::conditions::check_generator_conditions;
use super::{pair_bracket, pair_difference, pair_to_vector, GeneratorPair, SymmetryTarget};
use crate::algebra::Scalar;
use crate::error::{Error, Result};
use crate::exterior::{
    differential, exterior_derivative, interior_product, lie_derivative_form, vector_action, DiffForm,
};
use crate::report::{ConditionReport, Residual};
use crate::structures::DualPair;

/// Which generator subalgebra the reduced bracket is taken on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketMode {
    /// Generators of symmetries of `ω`.
    OneFormSym,
    /// Generators of symmetries of `Ω`.
    TwoFormSym,
    /// Generators of symmetries of `E`.
    ReebSym,
    /// Generators of symmetries of `(ω, Ω)`.
    FullSym,
}

impl BracketMode {
    pub fn target(self) -> SymmetryTarget {
        match self {
            BracketMode::OneFormSym => SymmetryTarget::OneForm,
            BracketMode::TwoFormSym => SymmetryTarget::TwoForm,
            BracketMode::ReebSym => SymmetryTarget::Reeb,
            BracketMode::FullSym => SymmetryTarget::CovPair,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BracketMode::OneFormSym => "omega_sym",
            BracketMode::TwoFormSym => "Omega_sym",
            BracketMode::ReebSym => "E_sym",
            BracketMode::FullSym => "full_sym",
        }
    }
}

/// Every displayed form of a reduced bracket, with its comparison against the full bracket.
#[derive(Clone, Debug)]
pub struct ReducedBracket {
    pub mode: BracketMode,
    pub expressions: Vec<GeneratorPair>,
    pub report: ConditionReport,
}

impl ReducedBracket {
    pub fn value(&self) -> &GeneratorPair {
        &self.expressions[0]
    }
}

struct Terms<'a> {
    dp: &'a DualPair,
    g1: &'a GeneratorPair,
    g2: &'a GeneratorPair,
    s1: crate::exterior::Multivector,
    s2: crate::exterior::Multivector,
    a1e: Scalar,
    a2e: Scalar,
}

impl<'a> Terms<'a> {
    fn new(dp: &'a DualPair, g1: &'a GeneratorPair, g2: &'a GeneratorPair) -> Self {
        Terms {
            dp,
            g1,
            g2,
            s1: dp.sharp(&g1.alpha),
            s2: dp.sharp(&g2.alpha),
            a1e: dp.eval(&g1.alpha, dp.reeb()),
            a2e: dp.eval(&g2.alpha, dp.reeb()),
        }
    }

    fn d_lambda(&self) -> DiffForm {
        differential(self.dp.dim(), &self.dp.lambda_of(&self.g1.alpha, &self.g2.alpha))
    }

    fn i(&self, x: &crate::exterior::Multivector, b: &DiffForm) -> DiffForm {
        interior_product(x, b).expect("vector into 2-form")
    }

    fn lie(&self, x: &crate::exterior::Multivector, b: &DiffForm) -> DiffForm {
        lie_derivative_form(x, b).expect("vector field and form on one chart")
    }

    /// `dΛ(α₁,α₂) − i_{α₂♯}dα₁ + i_{α₁♯}dα₂ + α₁(E) i_{α₂♯}dω − α₂(E) i_{α₁♯}dω`
    fn vector_part(&self) -> DiffForm {
        let dw = self.dp.d_omega();
        let mut a = self.d_lambda();
        a = &a - &self.i(&self.s2, &exterior_derivative(&self.g1.alpha));
        a = &a + &self.i(&self.s1, &exterior_derivative(&self.g2.alpha));
        a = &a + &self.i(&self.s2, dw).scale(&self.a1e);
        &a - &self.i(&self.s1, dw).scale(&self.a2e)
    }

    /// `α₁♯.h₂ − α₂♯.h₁ − dω(α₁♯, α₂♯)`
    fn h_core(&self) -> Scalar {
        let dw = self.dp.d_omega();
        &(&vector_action(&self.s1, &self.g2.h) - &vector_action(&self.s2, &self.g1.h))
            - &self.dp.eval2(dw, &self.s1, &self.s2)
    }

    fn dw_sharps(&self) -> Scalar {
        self.dp.eval2(self.dp.d_omega(), &self.s1, &self.s2)
    }

    fn reeb_h(&self, g: &GeneratorPair) -> Scalar {
        &vector_action(self.dp.reeb(), &g.h) + &self.dp.lambda_of(self.dp.lie_e_omega(), &g.alpha)
    }
}

fn require(dp: &DualPair, target: SymmetryTarget, gs: &[&GeneratorPair]) -> Result<()> {
    let mut failing = Vec::new();
    for (k, g) in gs.iter().enumerate() {
        for label in check_generator_conditions(dp, g, target).failing_labels() {
            failing.push(format!("g{}: {label}", k + 1));
        }
    }
    if failing.is_empty() {
        Ok(())
    } else {
        Err(Error::Precondition(failing))
    }
}

/// Evaluates every displayed form of the reduced bracket for `mode` and compares each with the
/// full pair bracket under `≡`.
pub fn reduced_bracket(
    dp: &DualPair,
    g1: &GeneratorPair,
    g2: &GeneratorPair,
    mode: BracketMode,
) -> Result<ReducedBracket> {
    dp.require_almost_cosymplectic_contact()?;
    require(dp, mode.target(), &[g1, g2])?;
    let t = Terms::new(dp, g1, g2);
    let (h1, h2) = (&g1.h, &g2.h);
    let e = dp.reeb();
    let pair = |alpha: DiffForm, h: Scalar| GeneratorPair { alpha, h };

    let expressions = match mode {
        BracketMode::OneFormSym => {
            let le_w = dp.lie_e_omega();
            let reeb_term = |g: &GeneratorPair, ae: &Scalar| &t.lie(e, &g.alpha) - &le_w.scale(ae);
            let alpha1 = &(&t.vector_part() + &reeb_term(g2, &t.a2e).scale(h1)) - &reeb_term(g1, &t.a1e).scale(h2);
            let dim = dp.dim();
            let mut alpha2 = t.d_lambda();
            alpha2 = &alpha2 - &t.i(&t.s2, &exterior_derivative(&g1.alpha));
            alpha2 = &alpha2 + &t.i(&t.s1, &exterior_derivative(&g2.alpha));
            alpha2 = &alpha2 - &differential(dim, h2).scale(&t.a1e);
            alpha2 = &alpha2 + &differential(dim, h1).scale(&t.a2e);
            alpha2 = &alpha2 + &t.lie(e, &g2.alpha).scale(h1);
            alpha2 = &alpha2 - &t.lie(e, &g1.alpha).scale(h2);
            let i_e_dw = |s: &crate::exterior::Multivector| dp.eval2(dp.d_omega(), e, s);
            let h_second = &(&t.dw_sharps() + &(h1 * &i_e_dw(&t.s2))) - &(h2 * &i_e_dw(&t.s1));
            vec![pair(alpha1, t.h_core()), pair(alpha2, h_second)]
        }
        BracketMode::TwoFormSym => {
            let h = &(&t.h_core() + &(h1 * &t.reeb_h(g2))) - &(h2 * &t.reeb_h(g1));
            vec![pair(t.d_lambda(), h)]
        }
        BracketMode::ReebSym => {
            let w = dp.omega();
            let mut alpha2 = -t.d_lambda();
            alpha2 = &alpha2 - &t.lie(&t.s2, &g1.alpha);
            alpha2 = &alpha2 + &t.lie(&t.s1, &g2.alpha);
            alpha2 = &alpha2 + &t.lie(&t.s2, w).scale(&t.a1e);
            alpha2 = &alpha2 - &t.lie(&t.s1, w).scale(&t.a2e);
            vec![pair(t.vector_part(), t.h_core()), pair(alpha2, t.h_core())]
        }
        BracketMode::FullSym => {
            let le_w = dp.lie_e_omega();
            let second = &(&t.dw_sharps() + &(h2 * &dp.lambda_of(le_w, &g1.alpha)))
                - &(h1 * &dp.lambda_of(le_w, &g2.alpha));
            let third =
                &(&t.dw_sharps() + &(h1 * &vector_action(e, h2))) - &(h2 * &vector_action(e, h1));
            vec![pair(t.d_lambda(), t.h_core()), pair(t.d_lambda(), second), pair(t.d_lambda(), third)]
        }
    };

    let full = pair_bracket(dp, g1, g2)?;
    let mut report = ConditionReport::new(format!("reduced bracket ({})", mode.as_str()));
    for (k, ex) in expressions.iter().enumerate() {
        report.push(format!("reduced form {} = full bracket (mod omega)", k + 1), pair_difference(dp, ex, &full));
    }
    if mode == BracketMode::FullSym {
        for (k, ex) in expressions.iter().enumerate().skip(1) {
            report.push(
                format!("reduced form {} = reduced form 1 (exact)", k + 1),
                Residual::Pair { sharp: pair_to_vector(dp, &(ex - &expressions[0])), h: &ex.h - &expressions[0].h },
            );
        }
    }
    Ok(ReducedBracket { mode, expressions, report })
}

/// `(dΛ(α₁, α₂); 0)`, the bracket of cosymplectic generators.
pub fn cosymplectic_bracket(dp: &DualPair, g1: &GeneratorPair, g2: &GeneratorPair) -> GeneratorPair {
    GeneratorPair { alpha: differential(dp.dim(), &dp.lambda_of(&g1.alpha, &g2.alpha)), h: Scalar::zero() }
}

/// `{h₁, h₂} = Λ(dh₁, dh₂)`.
pub fn poisson_bracket(dp: &DualPair, h1: &Scalar, h2: &Scalar) -> Scalar {
    let d = dp.dim();
    dp.lambda_of(&differential(d, h1), &differential(d, h2))
}

/// `(d{h₁,h₂}, −{h₁,h₂})`, the bracket of two Hamilton–Jacobi lifts on a contact structure.
pub fn contact_lift_bracket(dp: &DualPair, h1: &Scalar, h2: &Scalar) -> GeneratorPair {
    let p = poisson_bracket(dp, h1, h2);
    GeneratorPair { alpha: differential(dp.dim(), &p), h: -p }
}

/// `(dh, −h)` together with whether `E.h = 0`.
pub fn hamilton_jacobi_lift(dp: &DualPair, h: &Scalar) -> (GeneratorPair, bool) {
    let g = GeneratorPair { alpha: differential(dp.dim(), h), h: -h.clone() };
    let annihilated = vector_action(dp.reeb(), h).is_zero();
    (g, annihilated)
}

/// Closure of `Ker_cl(E) × C^∞` under the reduced bracket for symmetries of `Ω`.
pub fn closure_check_two_form(dp: &DualPair, g1: &GeneratorPair, g2: &GeneratorPair) -> Result<ConditionReport> {
    dp.require_almost_cosymplectic_contact()?;
    require(dp, SymmetryTarget::TwoForm, &[g1, g2])?;
    let d_lambda = differential(dp.dim(), &dp.lambda_of(&g1.alpha, &g2.alpha));
    let out = reduced_bracket(dp, g1, g2, BracketMode::TwoFormSym)?;
    let mut r = ConditionReport::new("closure of kernel generators");
    r.push("d Lambda(alpha1, alpha2)(E) = 0", Residual::Scalar(dp.eval(&d_lambda, dp.reeb())));
    r.absorb("bracket", check_generator_conditions(dp, out.value(), SymmetryTarget::TwoForm));
    r.absorb("", out.report);
    Ok(r)
}

/// `⟦g₁; f g₂⟧ − f⟦g₁; g₂⟧ − (X_{g₁}.f) g₂`, compared with the stated term `(Λ(α₁,α₂) df, 0)`
/// and with zero.
#[derive(Clone, Debug)]
pub struct LeibnizDefect {
    pub defect: GeneratorPair,
    pub stated_term: GeneratorPair,
    pub report: ConditionReport,
}

pub const LABEL_LEIBNIZ_STATED: &str = "defect = (Lambda(alpha1, alpha2) df, 0) (mod omega)";
pub const LABEL_LEIBNIZ_ANCHORED: &str = "defect = 0 (mod omega)";

impl LeibnizDefect {
    /// Whether the defect matches `(Λ(α₁,α₂) df, 0)` under `≡`.
    pub fn stated_formula_holds(&self) -> bool {
        self.report.entry(LABEL_LEIBNIZ_STATED).is_some_and(|e| e.pass)
    }

    /// Whether the anchored Leibniz rule `⟦g₁; f g₂⟧ ≡ f⟦g₁; g₂⟧ + (X_{g₁}.f) g₂` holds.
    pub fn anchored_leibniz_holds(&self) -> bool {
        self.report.entry(LABEL_LEIBNIZ_ANCHORED).is_some_and(|e| e.pass)
    }
}

pub fn leibniz_defect(
    dp: &DualPair,
    g1: &GeneratorPair,
    g2: &GeneratorPair,
    f: &Scalar,
) -> Result<LeibnizDefect> {
    let lhs = pair_bracket(dp, g1, &g2.scale(f))?;
    let base = pair_bracket(dp, g1, g2)?;
    let x1f = vector_action(&pair_to_vector(dp, g1), f);
    let defect = &(&lhs - &base.scale(f)) - &g2.scale(&x1f);
    let stated_term = GeneratorPair {
        alpha: differential(dp.dim(), f).scale(&dp.lambda_of(&g1.alpha, &g2.alpha)),
        h: Scalar::zero(),
    };
    let mut report = ConditionReport::new("Leibniz defect");
    report.push(LABEL_LEIBNIZ_STATED, pair_difference(dp, &defect, &stated_term));
    report.push(LABEL_LEIBNIZ_ANCHORED, pair_difference(dp, &defect, &GeneratorPair::zero(dp.dim())));
    Ok(LeibnizDefect { defect, stated_term, report })
}
