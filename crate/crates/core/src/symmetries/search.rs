//! Polynomial generators of a symmetry target, found as the rational nullspace of its linear conditions.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;

use super::conditions::{condition_residuals, flatten};
use super::{GeneratorPair, SymmetryTarget};
use crate::algebra::{lcm, Monomial, Poly, Scalar};
use crate::error::Result;
use crate::exterior::DiffForm;
use crate::linalg::nullspace;
use crate::structures::DualPair;

fn monomials_up_to(vars: usize, degree: u32) -> Vec<Monomial> {
    let mut out = vec![Vec::new()];
    for _ in 0..vars {
        out = out
            .into_iter()
            .flat_map(|e: Vec<u32>| {
                let used: u32 = e.iter().sum();
                (0..=degree - used).map(move |k| {
                    let mut next = e.clone();
                    next.push(k);
                    next
                })
            })
            .collect();
    }
    let mut ms: Vec<Monomial> = out.into_iter().map(Monomial::new).collect();
    ms.sort();
    ms
}

fn unknowns(dim: usize, degree: u32) -> Vec<GeneratorPair> {
    let ms = monomials_up_to(dim, degree);
    let mono = |m: &Monomial| Scalar::from_poly(Poly::term(BigRational::from_integer(1.into()), m.clone()));
    let mut out = Vec::new();
    for i in 0..dim {
        for m in &ms {
            out.push(GeneratorPair { alpha: DiffForm::coordinate(dim, i).scale(&mono(m)), h: Scalar::zero() });
        }
    }
    for m in &ms {
        out.push(GeneratorPair { alpha: DiffForm::zero(dim, 1), h: mono(m) });
    }
    out
}

/// A basis of the pairs `(α, h)` with polynomial coefficients of total degree at most `degree`
/// satisfying the target's generator conditions, taken literally (including any representative
/// constraint such as `α(E) = 0`).
pub fn find_generators(dp: &DualPair, target: SymmetryTarget, degree: u32) -> Result<Vec<GeneratorPair>> {
    dp.require_almost_cosymplectic_contact()?;
    let dim = dp.dim();
    let basis = unknowns(dim, degree);
    let columns: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|u| condition_residuals(dp, u, target).iter().flat_map(|r| flatten(r, dim)).collect())
        .collect();
    let slots = columns.first().map_or(0, Vec::len);

    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for s in 0..slots {
        let common = columns.iter().fold(Poly::one(), |acc, c| lcm(&acc, c[s].denominator()));
        let numerators: Vec<Poly> = columns
            .iter()
            .map(|c| {
                let factor = common.div_exact(c[s].denominator()).expect("lcm is divisible by each denominator");
                c[s].numerator() * &factor
            })
            .collect();
        let monos: BTreeSet<Monomial> = numerators.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
        for m in &monos {
            rows.push(numerators.iter().map(|p| p.coefficient(m)).collect());
        }
    }

    let null = nullspace(&rows, basis.len());
    Ok(null
        .into_iter()
        .map(|v| {
            v.iter().zip(&basis).filter(|(c, _)| !c.is_zero()).fold(GeneratorPair::zero(dim), |acc, (c, u)| {
                &acc + &u.scale(&Scalar::from_rational(c.clone()))
            })
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_up_to(3, 0).len(), 1);
        assert_eq!(monomials_up_to(3, 1).len(), 4);
        assert_eq!(monomials_up_to(3, 2).len(), 10);
        assert_eq!(monomials_up_to(5, 2).len(), 21);
    }
}
