//! Generator pairs `(α, h)`, their Lie bracket, and certified infinitesimal-symmetry checks.
//!
//! A pair represents the vector field `X_(α,h) = α♯ + hE`. Pairs whose 1-forms differ by a
//! multiple of `ω` represent the same field, so bracket identities are compared with
//! `(α₁, h₁) ≡ (α₂, h₂) ⟺ α₁♯ = α₂♯ and h₁ = h₂`.

mod brackets;
mod conditions;
mod derivations;
mod search;

pub use brackets::{
    closure_check_two_form, contact_lift_bracket, cosymplectic_bracket, hamilton_jacobi_lift, leibniz_defect,
    poisson_bracket, reduced_bracket, BracketMode, LeibnizDefect, ReducedBracket,
};
pub use conditions::{
    check_generator_conditions, check_symmetry_direct, labels, lambda_split_conditions, omega_split_conditions,
    theorem_equivalence_check, TheoremEquivalence,
};
pub use derivations::{
    antisymmetrization_identity, derivation_check_d, derivation_check_lx, lie_derivative_pair,
    musical_commutation_check, musical_commutation_iff, MusicalCommutation, LABEL_MUSICAL,
};
pub use search::find_generators;

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use crate::algebra::Scalar;
use crate::error::{Error, Result};
use crate::exterior::{differential, exterior_derivative, interior_product, lie_derivative_form, vector_action};
use crate::exterior::{DiffForm, Multivector};
use crate::report::Residual;
use crate::structures::DualPair;

/// A 1-form and a function on the same chart.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorPair {
    pub alpha: DiffForm,
    pub h: Scalar,
}

impl GeneratorPair {
    pub fn new(alpha: DiffForm, h: Scalar) -> Result<Self> {
        if alpha.degree() != 1 {
            return Err(Error::Degree(format!("generator needs a 1-form, got degree {}", alpha.degree())));
        }
        Ok(GeneratorPair { alpha, h })
    }

    pub fn zero(dim: usize) -> Self {
        GeneratorPair { alpha: DiffForm::zero(dim, 1), h: Scalar::zero() }
    }

    pub fn dim(&self) -> usize {
        self.alpha.dim()
    }

    pub fn scale(&self, f: &Scalar) -> Self {
        GeneratorPair { alpha: self.alpha.scale(f), h: &self.h * f }
    }
}

impl Add for &GeneratorPair {
    type Output = GeneratorPair;
    fn add(self, rhs: &GeneratorPair) -> GeneratorPair {
        GeneratorPair { alpha: &self.alpha + &rhs.alpha, h: &self.h + &rhs.h }
    }
}

impl Sub for &GeneratorPair {
    type Output = GeneratorPair;
    fn sub(self, rhs: &GeneratorPair) -> GeneratorPair {
        GeneratorPair { alpha: &self.alpha - &rhs.alpha, h: &self.h - &rhs.h }
    }
}

impl Neg for &GeneratorPair {
    type Output = GeneratorPair;
    fn neg(self) -> GeneratorPair {
        GeneratorPair { alpha: -&self.alpha, h: -&self.h }
    }
}

/// The symmetry targets: single basic fields, the two structure pairs, and the four mixed pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymmetryTarget {
    /// `ω`
    OneForm,
    /// `Ω`
    TwoForm,
    /// `E`
    Reeb,
    /// `Λ`
    Lambda,
    /// `(ω, Ω)`
    CovPair,
    /// `(E, Λ)`
    ContraPair,
    /// `(E, Ω)`
    ReebTwoForm,
    /// `(Λ, Ω)`
    LambdaTwoForm,
    /// `(E, ω)`
    ReebOneForm,
    /// `(Λ, ω)`
    LambdaOneForm,
}

/// The four tensors a symmetry may preserve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasicField {
    OneForm,
    TwoForm,
    Reeb,
    Lambda,
}

impl SymmetryTarget {
    pub const ALL: [SymmetryTarget; 10] = [
        SymmetryTarget::OneForm,
        SymmetryTarget::TwoForm,
        SymmetryTarget::Reeb,
        SymmetryTarget::Lambda,
        SymmetryTarget::CovPair,
        SymmetryTarget::ContraPair,
        SymmetryTarget::ReebTwoForm,
        SymmetryTarget::LambdaTwoForm,
        SymmetryTarget::ReebOneForm,
        SymmetryTarget::LambdaOneForm,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SymmetryTarget::OneForm => "omega",
            SymmetryTarget::TwoForm => "Omega",
            SymmetryTarget::Reeb => "E",
            SymmetryTarget::Lambda => "Lambda",
            SymmetryTarget::CovPair => "cov_pair",
            SymmetryTarget::ContraPair => "contra_pair",
            SymmetryTarget::ReebTwoForm => "E_Omega",
            SymmetryTarget::LambdaTwoForm => "Lambda_Omega",
            SymmetryTarget::ReebOneForm => "E_omega",
            SymmetryTarget::LambdaOneForm => "Lambda_omega",
        }
    }

    /// The tensors whose Lie derivative must vanish.
    pub fn fields(self) -> &'static [BasicField] {
        use BasicField as F;
        match self {
            SymmetryTarget::OneForm => &[F::OneForm],
            SymmetryTarget::TwoForm => &[F::TwoForm],
            SymmetryTarget::Reeb => &[F::Reeb],
            SymmetryTarget::Lambda => &[F::Lambda],
            SymmetryTarget::CovPair => &[F::OneForm, F::TwoForm],
            SymmetryTarget::ContraPair => &[F::Reeb, F::Lambda],
            SymmetryTarget::ReebTwoForm => &[F::Reeb, F::TwoForm],
            SymmetryTarget::LambdaTwoForm => &[F::Lambda, F::TwoForm],
            SymmetryTarget::ReebOneForm => &[F::Reeb, F::OneForm],
            SymmetryTarget::LambdaOneForm => &[F::Lambda, F::OneForm],
        }
    }

    /// Targets whose conditions pin the representative via `α(E) = 0`.
    pub fn requires_kernel_representative(self) -> bool {
        matches!(
            self,
            SymmetryTarget::TwoForm
                | SymmetryTarget::CovPair
                | SymmetryTarget::ReebTwoForm
                | SymmetryTarget::LambdaTwoForm
        )
    }

    pub fn is_pair(self) -> bool {
        self.fields().len() == 2
    }
}

impl fmt::Display for SymmetryTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SymmetryTarget {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SymmetryTarget::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::Parse { pos: 0, msg: format!("unknown symmetry target `{s}`") })
    }
}

/// `X_(α,h) = α♯ + hE`.
pub fn pair_to_vector(dp: &DualPair, g: &GeneratorPair) -> Multivector {
    dp.reconstruct_vector(&g.alpha, &g.h)
}

/// The representative `(q₁α, h)`, the unique one with `α(E) = 0`.
pub fn canonical_pair(dp: &DualPair, g: &GeneratorPair) -> GeneratorPair {
    let alpha = &g.alpha - &dp.omega().scale(&dp.eval(&g.alpha, dp.reeb()));
    GeneratorPair { alpha, h: g.h.clone() }
}

/// `((α₁ − α₂)♯, h₁ − h₂)`, zero iff the pairs represent the same vector field.
pub fn pair_difference(dp: &DualPair, g1: &GeneratorPair, g2: &GeneratorPair) -> Residual {
    Residual::Pair { sharp: dp.sharp(&(&g1.alpha - &g2.alpha)), h: &g1.h - &g2.h }
}

pub fn pairs_equivalent(dp: &DualPair, g1: &GeneratorPair, g2: &GeneratorPair) -> bool {
    pair_difference(dp, g1, g2).is_zero()
}

/// Sign of the `α₁(E) i_{α₂♯}dω − α₂(E) i_{α₁♯}dω` terms of the pair bracket.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrossTermSign {
    /// `+α₁(E) i_{α₂♯}dω − α₂(E) i_{α₁♯}dω`; compatible with the vector-field bracket.
    Plus,
    /// `−α₁(E) i_{α₂♯}dω + α₂(E) i_{α₁♯}dω`.
    Minus,
}

/// The pair bracket `⟦g₁; g₂⟧`, satisfying `X_⟦g₁;g₂⟧ = [X_{g₁}, X_{g₂}]`.
pub fn pair_bracket(dp: &DualPair, g1: &GeneratorPair, g2: &GeneratorPair) -> Result<GeneratorPair> {
    pair_bracket_with_sign(dp, g1, g2, CrossTermSign::Plus)
}

pub fn pair_bracket_with_sign(
    dp: &DualPair,
    g1: &GeneratorPair,
    g2: &GeneratorPair,
    sign: CrossTermSign,
) -> Result<GeneratorPair> {
    dp.require_almost_cosymplectic_contact()?;
    let dim = dp.dim();
    let (a1, a2) = (&g1.alpha, &g2.alpha);
    let (h1, h2) = (&g1.h, &g2.h);
    let e = dp.reeb();
    let dw = dp.d_omega();
    let le_w = dp.lie_e_omega();
    let (s1, s2) = (dp.sharp(a1), dp.sharp(a2));
    let (a1e, a2e) = (dp.eval(a1, e), dp.eval(a2, e));
    let i_s = |x: &Multivector, b: &DiffForm| interior_product(x, b).expect("vector into 2-form");

    let cross = &i_s(&s2, dw).scale(&a1e) - &i_s(&s1, dw).scale(&a2e);
    let cross = match sign {
        CrossTermSign::Plus => cross,
        CrossTermSign::Minus => -cross,
    };
    let reeb_part = |a: &DiffForm, ae: &Scalar| -> Result<DiffForm> {
        Ok(&lie_derivative_form(e, a)? - &le_w.scale(ae))
    };
    let alpha = [
        differential(dim, &dp.lambda_of(a1, a2)),
        -i_s(&s2, &exterior_derivative(a1)),
        i_s(&s1, &exterior_derivative(a2)),
        cross,
        reeb_part(a2, &a2e)?.scale(h1),
        -reeb_part(a1, &a1e)?.scale(h2),
    ]
    .into_iter()
    .fold(DiffForm::zero(dim, 1), |acc, t| &acc + &t);

    let h = [
        vector_action(&s1, h2),
        -vector_action(&s2, h1),
        -dp.eval2(dw, &s1, &s2),
        h1 * &(&vector_action(e, h2) + &dp.lambda_of(le_w, a2)),
        -(h2 * &(&vector_action(e, h1) + &dp.lambda_of(le_w, a1))),
    ]
    .into_iter()
    .sum();
    Ok(GeneratorPair { alpha, h })
}
