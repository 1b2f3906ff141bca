//! Seeded random polynomial data for identity suites.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Monomial, Poly, Scalar};
use crate::exterior::{increasing_indices, Alternating, Variance};
use crate::symmetries::GeneratorPair;

/// Polynomials of total degree at most `degree` with integer coefficients in `[-3, 3]`.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
    vars: usize,
    degree: u32,
    terms: usize,
}

impl Sampler {
    pub fn new(seed: u64, vars: usize, degree: u32) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), vars, degree, terms: 3 }
    }

    /// Caps the number of terms drawn per polynomial.
    pub fn with_terms(mut self, terms: usize) -> Self {
        self.terms = terms.max(1);
        self
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    fn monomial(&mut self) -> Monomial {
        let mut exps = vec![0u32; self.vars];
        let total = self.rng.gen_range(0..=self.degree);
        for _ in 0..total {
            let v = self.rng.gen_range(0..self.vars);
            exps[v] += 1;
        }
        Monomial::new(exps)
    }

    pub fn poly(&mut self) -> Poly {
        let n = self.rng.gen_range(0..=self.terms);
        Poly::from_terms((0..n).map(|_| {
            let m = self.monomial();
            (m, BigRational::from_integer(self.int(-3, 3).into()))
        }))
    }

    pub fn nonzero_poly(&mut self) -> Poly {
        loop {
            let p = self.poly();
            if !p.is_zero() {
                return p;
            }
        }
    }

    pub fn scalar(&mut self) -> Scalar {
        Scalar::from_poly(self.poly())
    }

    /// A polynomial-coefficient form or multivector of the given degree.
    pub fn alternating<V: Variance>(&mut self, dim: usize, degree: usize) -> Alternating<V> {
        let entries: Vec<(Vec<usize>, Scalar)> =
            increasing_indices(dim, degree).into_iter().map(|idx| (idx, self.scalar())).collect();
        Alternating::from_components(dim, degree, entries).expect("increasing indices are valid")
    }

    pub fn pair(&mut self, dim: usize) -> GeneratorPair {
        GeneratorPair { alpha: self.alternating(dim, 1), h: self.scalar() }
    }
}
