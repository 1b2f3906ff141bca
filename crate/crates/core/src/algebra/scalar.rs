use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::Poly;
use crate::error::{Error, Result};

/// A rational function `num / den` over ℚ.
///
/// Values are kept reduced: `gcd(num, den) = 1` and `den` is monic under the
/// graded-lex order, with zero represented as `0 / 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Scalar { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_poly(Poly::from_int(n))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Scalar::from_poly(Poly::constant(c))
    }

    pub fn from_poly(num: Poly) -> Self {
        Scalar { num, den: Poly::one() }
    }

    pub fn var(i: usize) -> Self {
        Scalar::from_poly(Poly::var(i))
    }

    /// Builds `num / den`, reducing to lowest terms.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        if let Some(c) = den.as_constant() {
            if c.is_one() {
                return Scalar { num, den };
            }
            return Scalar { num: num.scale(&c.recip()), den: Poly::one() };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        Scalar::normalize_sign(num, den)
    }

    /// `num / (g * rest)` where any common factor of numerator and denominator divides `g`.
    fn cancel_against(num: Poly, g: &Poly, rest: Poly) -> Self {
        let h = gcd(&num, g);
        if h.is_one() {
            return Scalar::normalize_sign(num, g * &rest);
        }
        let num = num.div_exact(&h).expect("gcd divides");
        let g = g.div_exact(&h).expect("gcd divides");
        Scalar::normalize_sign(num, &g * &rest)
    }

    fn normalize_sign(num: Poly, den: Poly) -> Self {
        let lc = den.leading_coefficient();
        if lc.is_one() {
            return Scalar { num, den };
        }
        let inv = lc.recip();
        Scalar { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    /// True iff the numerator is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Cost estimate used to choose pivots: total degree of numerator and denominator.
    pub fn weight(&self) -> u32 {
        self.num.total_degree() + self.den.total_degree()
    }

    /// Total number of stored terms (numerator plus denominator).
    pub fn size(&self) -> usize {
        self.num.len() + self.den.len()
    }

    pub fn recip(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::normalize_sign(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self * &rhs.recip()?)
    }

    pub fn scale(&self, c: &BigRational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        Scalar { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// `∂f/∂x_i` by the quotient rule.
    pub fn partial_derivative(&self, i: usize) -> Scalar {
        let dn = self.num.partial_derivative(i);
        if self.den.is_one() {
            return Scalar::from_poly(dn);
        }
        let dd = self.den.partial_derivative(i);
        if dd.is_zero() {
            return Scalar::reduced(dn, self.den.clone());
        }
        // with d = g e and d' = g f, the result (n' e - n f) / (g e^2) can only lose factors of g
        let g = gcd(&self.den, &dd);
        let e = self.den.div_exact(&g).expect("gcd divides");
        let f = dd.div_exact(&g).expect("gcd divides");
        let num = &(&dn * &e) - &(&self.num * &f);
        if num.is_zero() {
            return Scalar::zero();
        }
        Scalar::cancel_against(num, &g, e.pow(2))
    }

    /// Exact value at a rational point.
    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational> {
        let d = self.den.evaluate(point);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.num.evaluate(point) / d)
    }

    pub fn evaluate_ints(&self, point: &[i64]) -> Result<BigRational> {
        let p: Vec<BigRational> =
            point.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect();
        self.evaluate(&p)
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> ScalarDisplay<'a> {
        ScalarDisplay { scalar: self, names }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<Poly> for Scalar {
    fn from(p: Poly) -> Self {
        Scalar::from_poly(p)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return Scalar::reduced(&self.num + &rhs.num, self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        if g.is_one() {
            // coprime denominators leave nothing to cancel
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            if num.is_zero() {
                return Scalar::zero();
            }
            return Scalar::normalize_sign(num, &self.den * &rhs.den);
        }
        // only factors of g can cancel against the numerator
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d2) + &(&rhs.num * &d1);
        if num.is_zero() {
            return Scalar::zero();
        }
        Scalar::cancel_against(num, &g, &d1 * &d2)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(&self.num * &rhs.num);
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        Scalar::normalize_sign(&n1 * &n2, &d1 * &d2)
    }
}

/// Panics on division by the zero scalar; use [`Scalar::checked_div`] when the divisor may vanish.
impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by the zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, s| &acc + &s)
    }
}

pub struct ScalarDisplay<'a> {
    scalar: &'a Scalar,
    names: &'a [String],
}

impl fmt::Display for ScalarDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.scalar.num.display_with(self.names);
        if self.scalar.den.is_one() {
            return write!(f, "{num}");
        }
        write!(f, "({num})/({})", self.scalar.den.display_with(self.names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Scalar {
        Scalar::var(0)
    }
    fn y() -> Scalar {
        Scalar::var(1)
    }

    #[test]
    fn additive_and_multiplicative_inverse() {
        assert!((&x() + &(-x())).is_zero());
        let one_plus_y = &Scalar::one() + &y();
        let inv = Scalar::one() / one_plus_y.clone();
        assert!((&inv * &one_plus_y).is_one());
    }

    #[test]
    fn difference_of_squares_divides() {
        let a = &(&x() * &x()) - &(&y() * &y());
        let b = &x() - &y();
        let q = &a / &b;
        assert_eq!(q, &x() + &y());
        assert!(q.is_polynomial());
    }

    #[test]
    fn quotient_rule() {
        let f = Scalar::one() / (&Scalar::one() + &y());
        let expected = -(Scalar::one() / (&Scalar::one() + &y()).pow(2));
        assert_eq!(f.partial_derivative(1), expected);
        assert_eq!((&x() * &y()).partial_derivative(0), y());
    }

    #[test]
    fn evaluation_and_pole() {
        assert_eq!((&x() + &y()).evaluate_ints(&[1, 2, 0]).unwrap(), BigRational::from_integer(3.into()));
        assert_eq!(Scalar::zero().evaluate_ints(&[5, -7, 1]).unwrap(), BigRational::zero());
        let f = Scalar::one() / (&Scalar::one() + &y());
        assert!(matches!(f.evaluate_ints(&[0, -1, 0]), Err(Error::Pole)));
    }

    #[test]
    fn reduction_keeps_denominator_monic() {
        let two_y = Scalar::from_poly(Poly::from_int(2) * Poly::var(1));
        let r = &x() / &(&two_y + &Scalar::from_int(2));
        assert_eq!(r.denominator().leading_coefficient(), BigRational::one());
        assert!(Scalar::one().checked_div(&Scalar::zero()).is_err());
    }
}
