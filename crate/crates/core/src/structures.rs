//! Pre-cosymplectic pairs `(ω, Ω)`, their dual pairs `(E, Λ)`, musical maps and the splitting
//! `TM = im Λ♯ ⊕ ⟨E⟩`, `T*M = im Ω♭ ⊕ ⟨ω⟩`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::Scalar;
use crate::error::{Error, Result};
use crate::exterior::{
    contract, evaluate_multivector, exterior_derivative, increasing_indices, interior_product, lie_derivative_form,
    schouten, DiffForm, Multivector,
};
use crate::linalg::{solve, Pivoting};
use crate::report::{ConditionEntry, ConditionReport, Residual};

/// The covariant face `(ω, Ω)`: a 1-form and a 2-form on the same chart.
#[derive(Clone, Debug, PartialEq)]
pub struct CovariantPair {
    omega: DiffForm,
    two_form: DiffForm,
}

impl CovariantPair {
    pub fn new(omega: DiffForm, two_form: DiffForm) -> Result<Self> {
        if omega.degree() != 1 || two_form.degree() != 2 {
            return Err(Error::Degree(format!(
                "expected a 1-form and a 2-form, got degrees {} and {}",
                omega.degree(),
                two_form.degree()
            )));
        }
        omega.same_chart(two_form.dim())?;
        let dim = omega.dim();
        if dim < 3 || dim.is_multiple_of(2) {
            return Err(Error::InvalidChart(format!("dimension {dim} is not odd and at least 3")));
        }
        Ok(CovariantPair { omega, two_form })
    }

    pub fn omega(&self) -> &DiffForm {
        &self.omega
    }

    pub fn two_form(&self) -> &DiffForm {
        &self.two_form
    }

    pub fn dim(&self) -> usize {
        self.omega.dim()
    }
}

/// The contravariant face `(E, Λ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ContravariantPair {
    reeb: Multivector,
    lambda: Multivector,
}

impl ContravariantPair {
    pub fn new(reeb: Multivector, lambda: Multivector) -> Result<Self> {
        if reeb.degree() != 1 || lambda.degree() != 2 {
            return Err(Error::Degree(format!(
                "expected a vector field and a bivector, got degrees {} and {}",
                reeb.degree(),
                lambda.degree()
            )));
        }
        reeb.same_chart(lambda.dim())?;
        Ok(ContravariantPair { reeb, lambda })
    }

    pub fn reeb(&self) -> &Multivector {
        &self.reeb
    }

    pub fn lambda(&self) -> &Multivector {
        &self.lambda
    }

    pub fn dim(&self) -> usize {
        self.reeb.dim()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureClass {
    Cosymplectic,
    Contact,
    AlmostCosymplecticContact,
    PreCosymplecticOnly,
    NotRegular,
}

impl StructureClass {
    pub fn as_str(self) -> &'static str {
        match self {
            StructureClass::Cosymplectic => "cosymplectic",
            StructureClass::Contact => "contact",
            StructureClass::AlmostCosymplecticContact => "almost_cosymplectic_contact",
            StructureClass::PreCosymplecticOnly => "pre_cosymplectic_only",
            StructureClass::NotRegular => "not_regular",
        }
    }

    /// Regular with `dΩ = 0`; cosymplectic and contact pairs are special cases.
    pub fn is_almost_cosymplectic_contact(self) -> bool {
        matches!(
            self,
            StructureClass::Cosymplectic | StructureClass::Contact | StructureClass::AlmostCosymplecticContact
        )
    }
}

impl fmt::Display for StructureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Coefficient of `ω ∧ Ωⁿ` on `dx⁰ ∧ … ∧ dx^{2n}`.
pub fn regularity_density(pair: &CovariantPair) -> Scalar {
    let n = pair.dim() / 2;
    let top = pair.omega.wedge(&pair.two_form.wedge_power(n));
    let idx: Vec<usize> = (0..pair.dim()).collect();
    top.component(&idx)
}

pub fn classify(pair: &CovariantPair) -> StructureClass {
    if regularity_density(pair).is_zero() {
        return StructureClass::NotRegular;
    }
    let d_omega = exterior_derivative(&pair.omega);
    let closed = exterior_derivative(&pair.two_form).is_zero();
    if closed && d_omega.is_zero() {
        StructureClass::Cosymplectic
    } else if pair.two_form == d_omega {
        StructureClass::Contact
    } else if closed {
        StructureClass::AlmostCosymplecticContact
    } else {
        StructureClass::PreCosymplecticOnly
    }
}

/// `(ω, Ω + dω)`; regularity must be re-checked by the caller.
pub fn second_pair(pair: &CovariantPair) -> CovariantPair {
    CovariantPair { omega: pair.omega.clone(), two_form: &pair.two_form + &exterior_derivative(&pair.omega) }
}

pub fn dualize(pair: &CovariantPair) -> Result<ContravariantPair> {
    dualize_with(pair, Pivoting::LowestWeight)
}

/// Solves `[Ω; ωᵀ] E = e_last` for the Reeb field, then `[Ω; ωᵀ] L = [I − ω Eᵀ; 0]` for `Λ^{jk} = L[j][k]`.
pub fn dualize_with(pair: &CovariantPair, pivoting: Pivoting) -> Result<ContravariantPair> {
    if regularity_density(pair).is_zero() {
        return Err(Error::NotRegular);
    }
    let d = pair.dim();
    let omega = pair.omega.to_vec();
    let internal = |e: Error| Error::Internal(format!("duality solve failed on a regular pair: {e}"));

    // i_E Ω = 0 reads Σ_j E^j Ω_{jk} = 0, i.e. Σ_j Ω_{kj} E^j = 0.
    let mut m: Vec<Vec<Scalar>> =
        (0..d).map(|i| (0..d).map(|j| pair.two_form.component(&[i, j])).collect()).collect();
    m.push(omega.clone());

    let mut rhs_e = vec![vec![Scalar::zero()]; d];
    rhs_e.push(vec![Scalar::one()]);
    let e: Vec<Scalar> = solve(&m, &rhs_e, pivoting).map_err(internal)?.into_iter().map(|r| r[0].clone()).collect();

    let mut rhs_l: Vec<Vec<Scalar>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|k| {
                    let delta = if i == k { Scalar::one() } else { Scalar::zero() };
                    &delta - &(&omega[i] * &e[k])
                })
                .collect()
        })
        .collect();
    rhs_l.push(vec![Scalar::zero(); d]);
    let l = solve(&m, &rhs_l, pivoting).map_err(internal)?;

    for (j, row) in l.iter().enumerate() {
        for (k, entry) in row.iter().enumerate().skip(j) {
            if !(entry + &l[k][j]).is_zero() {
                return Err(Error::Internal(format!("solved Λ is not antisymmetric at ({j}, {k})")));
            }
        }
    }
    let reeb = Multivector::from_vec(e);
    let lambda = Multivector::from_components(
        d,
        2,
        increasing_indices(d, 2).into_iter().map(|jk| {
            let v = l[jk[0]][jk[1]].clone();
            (jk, v)
        }),
    )?;
    ContravariantPair::new(reeb, lambda)
}

/// Residuals of the four duality conditions plus the regularity density.
#[derive(Clone, Debug, PartialEq)]
pub struct DualityCertificate {
    pub density: Scalar,
    pub entries: Vec<ConditionEntry>,
}

impl DualityCertificate {
    pub fn pass(&self) -> bool {
        !self.density.is_zero() && self.entries.iter().all(|e| e.pass)
    }

    pub fn failing_labels(&self) -> Vec<String> {
        let mut out: Vec<String> = self.entries.iter().filter(|e| !e.pass).map(|e| e.label.clone()).collect();
        if self.density.is_zero() {
            out.insert(0, "omega ^ Omega^n != 0".into());
        }
        out
    }

    pub fn to_report(&self) -> ConditionReport {
        let mut r = ConditionReport::new("duality");
        r.entries = self.entries.clone();
        r
    }
}

pub const LABEL_REEB_NORMALIZED: &str = "i_E omega = 1";
pub const LABEL_REEB_IN_KERNEL: &str = "i_E Omega = 0";
pub const LABEL_OMEGA_SHARP: &str = "i_omega Lambda = 0";
pub const LABEL_INVERSE_ON_IMAGE: &str = "Lambda# o Omega_flat = p1 and Omega_flat o Lambda# = q1";

pub fn verify_duality(cov: &CovariantPair, con: &ContravariantPair) -> Result<DualityCertificate> {
    cov.omega.same_chart(con.dim())?;
    let d = cov.dim();
    let (e, lam) = (&con.reeb, &con.lambda);
    let omega_e = interior_product(e, &cov.omega)?.as_scalar();
    let e_flat = interior_product(e, &cov.two_form)?;
    let omega_sharp = contract(&cov.omega, lam)?;

    let mut rows = Vec::with_capacity(2 * d);
    for i in 0..d {
        let y = Multivector::coordinate(d, i);
        let lhs = contract(&interior_product(&y, &cov.two_form)?, lam)?;
        let p1 = &y - &e.scale(&cov.omega.component(&[i]));
        rows.push((&lhs - &p1).to_vec());
    }
    for i in 0..d {
        let beta = DiffForm::coordinate(d, i);
        let lhs = interior_product(&contract(&beta, lam)?, &cov.two_form)?;
        let q1 = &beta - &cov.omega.scale(&e.component(&[i]));
        rows.push((&lhs - &q1).to_vec());
    }

    Ok(DualityCertificate {
        density: regularity_density(cov),
        entries: vec![
            ConditionEntry::new(LABEL_REEB_NORMALIZED, Residual::Scalar(&omega_e - &Scalar::one())),
            ConditionEntry::new(LABEL_REEB_IN_KERNEL, Residual::Form(e_flat)),
            ConditionEntry::new(LABEL_OMEGA_SHARP, Residual::Multivector(omega_sharp)),
            ConditionEntry::new(LABEL_INVERSE_ON_IMAGE, Residual::Matrix(rows)),
        ],
    })
}

/// `α♯ = i_α Λ`, componentwise `(α♯)^k = Σ_j α_j Λ^{jk}`.
pub fn sharp(con: &ContravariantPair, alpha: &DiffForm) -> Multivector {
    contract(alpha, &con.lambda).expect("sharp takes a 1-form on the same chart")
}

/// `Y♭ = i_Y Ω`.
pub fn flat(cov: &CovariantPair, y: &Multivector) -> DiffForm {
    interior_product(y, &cov.two_form).expect("flat takes a vector field on the same chart")
}

/// Which projection of the splitting to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Projection {
    /// `X ↦ X − ω(X) E`
    P1,
    /// `X ↦ ω(X) E`
    P2,
    /// `β ↦ β − β(E) ω`
    Q1,
    /// `β ↦ β(E) ω`
    Q2,
}

/// A vector field or a 1-form, the two inputs of [`project`].
#[derive(Clone, Debug, PartialEq)]
pub enum Tangent {
    Vector(Multivector),
    Covector(DiffForm),
}

/// A dual pair with the derived tensors every symmetry computation needs.
#[derive(Clone, Debug)]
pub struct DualPair {
    cov: CovariantPair,
    con: ContravariantPair,
    class: StructureClass,
    density: Scalar,
    d_omega: DiffForm,
    lie_e_omega: DiffForm,
}

impl DualPair {
    /// Dualizes `cov` and certifies the result.
    pub fn new(cov: CovariantPair) -> Result<Self> {
        let con = dualize(&cov)?;
        Self::from_parts(cov, con)
    }

    /// Accepts a contravariant pair only if it passes every duality condition.
    pub fn from_parts(cov: CovariantPair, con: ContravariantPair) -> Result<Self> {
        let cert = verify_duality(&cov, &con)?;
        if !cert.pass() {
            return Err(Error::DualityFailed(cert.failing_labels().join(", ")));
        }
        let class = classify(&cov);
        let d_omega = exterior_derivative(&cov.omega);
        let lie_e_omega = lie_derivative_form(&con.reeb, &cov.omega)?;
        Ok(DualPair { density: cert.density, cov, con, class, d_omega, lie_e_omega })
    }

    pub fn cov(&self) -> &CovariantPair {
        &self.cov
    }

    pub fn con(&self) -> &ContravariantPair {
        &self.con
    }

    pub fn dim(&self) -> usize {
        self.cov.dim()
    }

    pub fn omega(&self) -> &DiffForm {
        &self.cov.omega
    }

    pub fn two_form(&self) -> &DiffForm {
        &self.cov.two_form
    }

    pub fn reeb(&self) -> &Multivector {
        &self.con.reeb
    }

    pub fn lambda(&self) -> &Multivector {
        &self.con.lambda
    }

    pub fn class(&self) -> StructureClass {
        self.class
    }

    pub fn density(&self) -> &Scalar {
        &self.density
    }

    pub fn d_omega(&self) -> &DiffForm {
        &self.d_omega
    }

    /// `L_E ω`, which equals `i_E dω` since `ω(E) = 1`.
    pub fn lie_e_omega(&self) -> &DiffForm {
        &self.lie_e_omega
    }

    pub fn require_almost_cosymplectic_contact(&self) -> Result<()> {
        if self.class.is_almost_cosymplectic_contact() {
            Ok(())
        } else {
            Err(Error::NotAlmostCosymplecticContact)
        }
    }

    pub fn sharp(&self, alpha: &DiffForm) -> Multivector {
        sharp(&self.con, alpha)
    }

    pub fn flat(&self, y: &Multivector) -> DiffForm {
        flat(&self.cov, y)
    }

    /// `Λ(α, β)`.
    pub fn lambda_of(&self, alpha: &DiffForm, beta: &DiffForm) -> Scalar {
        evaluate_multivector(&self.con.lambda, &[alpha, beta]).expect("Λ evaluated on two 1-forms")
    }

    /// `β(X)` for a 1-form and a vector field.
    pub fn eval(&self, beta: &DiffForm, x: &Multivector) -> Scalar {
        interior_product(x, beta).expect("1-form evaluated on a vector field").as_scalar()
    }

    /// `β(X, Y)` for a 2-form.
    pub fn eval2(&self, beta: &DiffForm, x: &Multivector, y: &Multivector) -> Scalar {
        interior_product(&x.wedge(y), beta).expect("2-form evaluated on two vector fields").as_scalar()
    }

    pub fn project_vector(&self, x: &Multivector, which: Projection) -> Result<Multivector> {
        let p2 = self.con.reeb.scale(&self.eval(&self.cov.omega, x));
        match which {
            Projection::P1 => Ok(x - &p2),
            Projection::P2 => Ok(p2),
            _ => Err(Error::Degree("q-projections act on 1-forms".into())),
        }
    }

    pub fn project_form(&self, beta: &DiffForm, which: Projection) -> Result<DiffForm> {
        let q2 = self.cov.omega.scale(&self.eval(beta, &self.con.reeb));
        match which {
            Projection::Q1 => Ok(beta - &q2),
            Projection::Q2 => Ok(q2),
            _ => Err(Error::Degree("p-projections act on vector fields".into())),
        }
    }

    pub fn project(&self, object: &Tangent, which: Projection) -> Result<Tangent> {
        match object {
            Tangent::Vector(x) => {
                if x.degree() != 1 {
                    return Err(Error::Degree("projection of a non-vector multivector".into()));
                }
                self.project_vector(x, which).map(Tangent::Vector)
            }
            Tangent::Covector(b) => {
                if b.degree() != 1 {
                    return Err(Error::Degree("projection of a form of degree other than 1".into()));
                }
                self.project_form(b, which).map(Tangent::Covector)
            }
        }
    }

    /// `X = α♯ + hE` with `h = ω(X)` and the representative `α = Ω♭(p₁X)`, for which `α(E) = 0`.
    pub fn decompose_vector(&self, x: &Multivector) -> (DiffForm, Scalar) {
        let h = self.eval(&self.cov.omega, x);
        let p1 = x - &self.con.reeb.scale(&h);
        (self.flat(&p1), h)
    }

    pub fn reconstruct_vector(&self, alpha: &DiffForm, h: &Scalar) -> Multivector {
        &self.sharp(alpha) + &self.con.reeb.scale(h)
    }

    /// `β = Y♭ + fω` with `f = β(E)` and the representative `Y = β♯`, for which `ω(Y) = 0`.
    pub fn decompose_form(&self, beta: &DiffForm) -> (Multivector, Scalar) {
        (self.sharp(beta), self.eval(beta, &self.con.reeb))
    }

    pub fn reconstruct_form(&self, y: &Multivector, f: &Scalar) -> DiffForm {
        &self.flat(y) + &self.cov.omega.scale(f)
    }

    /// The bivector `(β, γ) ↦ dω(β♯, γ♯)`.
    pub fn sharp_sharp_d_omega(&self) -> Multivector {
        let d = self.dim();
        let sharps: Vec<Multivector> = (0..d).map(|j| self.sharp(&DiffForm::coordinate(d, j))).collect();
        Multivector::from_components(
            d,
            2,
            increasing_indices(d, 2).into_iter().map(|jk| {
                let v = self.eval2(&self.d_omega, &sharps[jk[0]], &sharps[jk[1]]);
                (jk, v)
            }),
        )
        .expect("increasing indices are valid")
    }
}

pub const LABEL_E_LAMBDA: &str = "[E,Lambda] = -E ^ Lambda#(L_E omega)";
pub const LABEL_LAMBDA_LAMBDA: &str = "[Lambda,Lambda] = 2 E ^ (Lambda# x Lambda#)(d omega)";

/// Both Schouten identities of an almost-coPoisson-Jacobi pair, plus the cosymplectic or
/// contact specializations when the class applies.
pub fn verify_contravariant_identities(dp: &DualPair) -> Result<ConditionReport> {
    let e = dp.reeb();
    let lam = dp.lambda();
    let e_lam = schouten(e, lam)?;
    let lam_lam = schouten(lam, lam)?;
    let rhs1 = -e.wedge(&dp.sharp(dp.lie_e_omega()));
    let rhs2 = e.wedge(&dp.sharp_sharp_d_omega()).scale(&Scalar::from_int(2));

    let mut r = ConditionReport::new("contravariant identities");
    r.push(LABEL_E_LAMBDA, Residual::Multivector(&e_lam - &rhs1));
    r.push(LABEL_LAMBDA_LAMBDA, Residual::Multivector(&lam_lam - &rhs2));
    match dp.class() {
        StructureClass::Cosymplectic => {
            r.push("[E,Lambda] = 0", Residual::Multivector(e_lam));
            r.push("[Lambda,Lambda] = 0", Residual::Multivector(lam_lam));
        }
        StructureClass::Contact => {
            let jacobi = e.wedge(lam).scale(&Scalar::from_int(-2));
            r.push("[E,Lambda] = 0", Residual::Multivector(e_lam));
            r.push("[Lambda,Lambda] = -2 E ^ Lambda", Residual::Multivector(&lam_lam - &jacobi));
        }
        _ => {}
    }
    Ok(r)
}
