//! Sparse multivariate polynomials over ℚ.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic, so the last entry is always the leading term.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Upper bound on the number of terms any polynomial may carry; 0 disables the check.
static MAX_TERMS: AtomicUsize = AtomicUsize::new(0);

/// Panic payload raised when a polynomial outgrows the configured term cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TermLimitExceeded {
    pub terms: usize,
    pub limit: usize,
}

impl fmt::Display for TermLimitExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "polynomial grew to {} terms (limit {})", self.terms, self.limit)
    }
}

/// Sets the global term cap. `0` means unlimited.
pub fn set_term_limit(limit: usize) {
    MAX_TERMS.store(limit, AtomicOrdering::Relaxed);
}

pub fn term_limit() -> usize {
    MAX_TERMS.load(AtomicOrdering::Relaxed)
}

/// Exponent vector with trailing zeros trimmed, so `x*y^0` and `x` share one key.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let e = (0..n).map(|i| self.exponent(i) + other.exponent(i)).collect();
        Monomial::new(e)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut e = self.0.clone();
        for (i, &b) in other.0.iter().enumerate() {
            if e[i] < b {
                return None;
            }
            e[i] -= b;
        }
        Some(Monomial::new(e))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().min(other.0.len());
        Monomial::new((0..n).map(|i| self.0[i].min(other.0[i])).collect())
    }

    fn with_exponent(&self, i: usize, e: u32) -> Monomial {
        let mut v = self.0.clone();
        if v.len() <= i {
            v.resize(i + 1, 0);
        }
        v[i] = e;
        Monomial::new(v)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // graded lex: total degree first, then x0 > x1 > ...
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigRational>,
}

fn check_size(p: Poly) -> Poly {
    let limit = term_limit();
    if limit > 0 && p.terms.len() > limit {
        std::panic::panic_any(TermLimitExceeded { terms: p.terms.len(), limit });
    }
    p
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn from_int(c: i64) -> Self {
        Poly::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn var(i: usize) -> Self {
        Poly::term(BigRational::one(), Monomial::var(i))
    }

    pub fn term(c: BigRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// Builds a polynomial from arbitrary (possibly repeated or zero) terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(iter: I) -> Self {
        let mut terms: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in iter {
            accumulate(&mut terms, m, c);
        }
        check_size(Poly { terms })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().map(|(m, c)| m.is_one() && c.is_one()) == Some(true)
    }

    /// Constant term if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, Monomial::total_degree)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.leading_term().map_or_else(BigRational::zero, |(_, c)| c.clone())
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Number of variable slots actually used (one past the highest variable index).
    pub fn num_vars(&self) -> usize {
        self.terms.keys().map(|m| m.0.len()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        check_size(Poly { terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect() })
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Makes the leading coefficient 1; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> Poly {
        let lc = self.leading_coefficient();
        if lc.is_zero() || lc.is_one() {
            return self.clone();
        }
        self.scale(&lc.recip())
    }

    pub fn partial_derivative(&self, i: usize) -> Poly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            let coeff = c * BigRational::from_integer(BigInt::from(e));
            accumulate(&mut terms, m.with_exponent(i, e - 1), coeff);
        }
        Poly { terms }
    }

    pub fn evaluate(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let x = point.get(i).cloned().unwrap_or_else(BigRational::zero);
                t *= num_traits::pow(x, e as usize);
            }
            acc += t;
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (lm, lc) = divisor.leading_term()?;
        if divisor.len() == 1 {
            let inv = lc.recip();
            let mut terms = BTreeMap::new();
            for (m, c) in &self.terms {
                terms.insert(m.div(lm)?, c * &inv);
            }
            return Some(Poly { terms });
        }
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quotient: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(lm)?;
            let qc = c / lc;
            rem = &rem - &divisor.mul_monomial(&qm, &qc);
            accumulate(&mut quotient, qm, qc);
        }
        Some(Poly { terms: quotient })
    }

    /// Highest power of variable `v` present.
    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn contains_var(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    /// Coefficients of `self` viewed as a polynomial in `v`; entry `k` multiplies `v^k`
    /// and is free of `v`.
    pub fn coefficients_in(&self, v: usize) -> Vec<Poly> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![BTreeMap::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(v) as usize;
            out[e].insert(m.with_exponent(v, 0), c.clone());
        }
        out.into_iter().map(|terms| Poly { terms }).collect()
    }

    /// Coefficient of `v^k` (free of `v`).
    pub fn coefficient_in(&self, v: usize, k: u32) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(v) == k)
            .map(|(m, c)| (m.with_exponent(v, 0), c.clone()))
            .collect();
        Poly { terms }
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, v: usize, k: u32) -> Poly {
        if k == 0 {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.with_exponent(v, m.exponent(v) + k), c.clone()))
            .collect();
        check_size(Poly { terms })
    }

    /// Gcd of the monomials of all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return Monomial::one() };
        it.fold(first.clone(), |g, m| g.gcd(m))
    }

    /// Divides every term by `m`, which must divide each of them.
    pub fn div_monomial(&self, m: &Monomial) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (k.div(m).expect("monomial divides every term"), c.clone()))
            .collect();
        Poly { terms }
    }

    /// Lowest total degree of any term.
    pub fn min_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).min().unwrap_or(0)
    }

    /// Renders the polynomial with the given variable names (graded-lex descending).
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

fn accumulate(terms: &mut BTreeMap<Monomial, BigRational>, m: Monomial, c: BigRational) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut terms = big.terms.clone();
        for (m, c) in &small.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        check_size(Poly { terms })
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            accumulate(&mut terms, m.clone(), -c.clone());
        }
        check_size(Poly { terms })
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                accumulate(&mut terms, m1.mul(m2), c1 * c2);
            }
        }
        check_size(Poly { terms })
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a [String],
}

pub(crate) fn write_rational(f: &mut fmt::Formatter<'_>, c: &BigRational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write_rational(f, &abs)?;
                continue;
            }
            if !abs.is_one() {
                write_rational(f, &abs)?;
                f.write_str("*")?;
            }
            let mut first = true;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                match self.names.get(i) {
                    Some(name) => f.write_str(name)?,
                    None => write!(f, "x{i}")?,
                }
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}
