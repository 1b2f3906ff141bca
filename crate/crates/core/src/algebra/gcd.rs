//! Multivariate polynomial gcd over ℚ via recursive primitive remainder sequences.
//!
//! A polynomial in `v` is treated as univariate with coefficients in ℚ[other vars];
//! contents are computed recursively, so every call strictly reduces the set of
//! variables in play.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::poly::{Monomial, Poly};

/// Monic gcd of `a` and `b`; `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.monic();
    }
    // single-term inputs: the gcd is a monomial
    if a.len() == 1 || b.len() == 1 {
        let m = a.monomial_content().gcd(&b.monomial_content());
        return Poly::term(num_traits::One::one(), m);
    }
    // variables are the only irreducibles dividing a monomial
    let (ma, mb) = (a.monomial_content(), b.monomial_content());
    if !ma.is_one() || !mb.is_one() {
        let rest = gcd(&a.div_monomial(&ma), &b.div_monomial(&mb));
        return (&rest * &Poly::term(num_traits::One::one(), ma.gcd(&mb))).monic();
    }
    let nvars = a.num_vars().max(b.num_vars());
    if certified_coprime(a, b, nvars) {
        return Poly::one();
    }
    let Some(v) = (0..nvars).find(|&v| a.contains_var(v) || b.contains_var(v)) else {
        return Poly::one();
    };
    if !b.contains_var(v) {
        return gcd_with_coefficients(b, a, v);
    }
    if !a.contains_var(v) {
        return gcd_with_coefficients(a, b, v);
    }
    let ca = content(a, v);
    let cb = content(b, v);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let c = gcd(&ca, &cb);
    let g = primitive_prs(pa, pb, v);
    (&c * &g).monic()
}

/// `p` with every variable except `v` replaced by the matching entry of `point`.
fn univariate_image(p: &Poly, v: usize, point: &[BigRational]) -> Poly {
    let mut exps = vec![0u32; v + 1];
    p.coefficients_in(v)
        .iter()
        .enumerate()
        .map(|(k, c)| {
            exps[v] = k as u32;
            Poly::term(c.evaluate(point), Monomial::new(exps.clone()))
        })
        .fold(Poly::zero(), |acc, t| &acc + &t)
}

/// Proves `gcd(a, b) = 1` by specialization, or returns false when inconclusive.
///
/// Any common factor `g` survives specializing the other variables at a point where the
/// leading coefficients in `v` do not vanish, with its degree in `v` intact. So if every such
/// univariate image pair is coprime, `g` has degree 0 in every variable.
fn certified_coprime(a: &Poly, b: &Poly, nvars: usize) -> bool {
    let shared: Vec<usize> = (0..nvars).filter(|&v| a.contains_var(v) && b.contains_var(v)).collect();
    let in_play = (0..nvars).filter(|&v| a.contains_var(v) || b.contains_var(v)).count();
    if in_play < 2 {
        return false;
    }
    shared.iter().all(|&v| {
        let (la, lb) = (a.coefficient_in(v, a.degree_in(v)), b.coefficient_in(v, b.degree_in(v)));
        (0..4i64).any(|attempt| {
            let point: Vec<BigRational> = (0..nvars)
                .map(|i| BigRational::from_integer(BigInt::from((i as i64 * 5 + attempt * 11 + 3) % 17 - 8)))
                .collect();
            if la.evaluate(&point).is_zero() || lb.evaluate(&point).is_zero() {
                return false;
            }
            gcd(&univariate_image(a, v, &point), &univariate_image(b, v, &point)).is_constant()
        })
    })
}

/// gcd(free, p) where `free` does not involve `v`: it must divide every coefficient of `p` in `v`.
fn gcd_with_coefficients(free: &Poly, p: &Poly, v: usize) -> Poly {
    let mut g = free.monic();
    for coeff in p.coefficients_in(v) {
        if coeff.is_zero() {
            continue;
        }
        g = gcd(&g, &coeff);
        if g.is_constant() {
            return Poly::one();
        }
    }
    g
}

/// Content of `p` with respect to `v`: the monic gcd of its coefficients in ℚ[other vars].
pub fn content(p: &Poly, v: usize) -> Poly {
    let mut g = Poly::zero();
    for coeff in p.coefficients_in(v) {
        if coeff.is_zero() {
            continue;
        }
        g = gcd(&g, &coeff);
        if g.is_constant() {
            return Poly::one();
        }
    }
    if g.is_zero() {
        Poly::one()
    } else {
        g
    }
}

fn primitive_part(p: &Poly, v: usize) -> Poly {
    let c = content(p, v);
    p.div_exact(&c).expect("content divides").monic()
}

/// Pseudo-remainder of `a` by `b` as polynomials in `v`.
fn pseudo_remainder(a: &Poly, b: &Poly, v: usize) -> Poly {
    let n = b.degree_in(v);
    let lead_b = b.coefficient_in(v, n);
    let mut r = a.clone();
    while !r.is_zero() && r.contains_var(v) && r.degree_in(v) >= n {
        let m = r.degree_in(v);
        let lead_r = r.coefficient_in(v, m);
        r = &(&lead_b * &r) - &(&lead_r * &b.shift(v, m - n));
    }
    r
}

fn primitive_prs(a: Poly, b: Poly, v: usize) -> Poly {
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) { (a, b) } else { (b, a) };
    loop {
        if b.is_zero() {
            return primitive_part(&a, v);
        }
        if !b.contains_var(v) {
            // b is a nonzero element of the coefficient ring and both inputs are primitive
            return Poly::one();
        }
        let r = pseudo_remainder(&a, &b, v);
        a = b;
        b = if r.is_zero() { r } else { primitive_part(&r, v) };
    }
}

/// Least common multiple, monic.
pub fn lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let g = gcd(a, b);
    (a.div_exact(&g).expect("gcd divides") * b).monic()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var(0)
    }
    fn y() -> Poly {
        Poly::var(1)
    }
    fn z() -> Poly {
        Poly::var(2)
    }

    #[test]
    fn gcd_of_products() {
        let f = &(&x() + &y()) + &Poly::one();
        let g = &(&x() * &z()) - &y();
        let h = &(&y() * &y()) + &Poly::from_int(2);
        let a = &(&f * &f) * &g;
        let b = &(&f * &h) * &Poly::from_int(6);
        assert_eq!(gcd(&a, &b), f.monic());
        assert_eq!(gcd(&g, &h), Poly::one());
    }

    #[test]
    fn gcd_with_monomials_and_constants() {
        let a = &(&x() * &x()) * &y();
        let b = &(&x() * &y()) * &z();
        assert_eq!(gcd(&a, &b), &x() * &y());
        assert_eq!(gcd(&a, &Poly::from_int(3)), Poly::one());
        assert_eq!(gcd(&Poly::zero(), &a.scale(&num_rational::BigRational::from_integer(4.into()))), a);
    }

    #[test]
    fn gcd_when_variable_missing_from_one_side() {
        // (1+y)(x+1) and (1+y)^2
        let a = &(&Poly::one() + &y()) * &(&x() + &Poly::one());
        let b = (&Poly::one() + &y()).pow(2);
        assert_eq!(gcd(&a, &b), &Poly::one() + &y());
    }

    #[test]
    fn lcm_basic() {
        let a = &x() - &y();
        let b = &(&x() * &x()) - &(&y() * &y());
        assert_eq!(lcm(&a, &b), b.monic());
    }
}
