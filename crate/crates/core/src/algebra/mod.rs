//! Exact polynomials and rational functions over ℚ, plus the expression grammar.

mod gcd;
mod parse;
mod poly;
mod scalar;

pub use gcd::{content, gcd, lcm};
pub use parse::parse_scalar;
pub use poly::{set_term_limit, term_limit, Monomial, Poly, PolyDisplay, TermLimitExceeded};
pub use scalar::{Scalar, ScalarDisplay};

use crate::error::{Error, Result};

/// A coordinate chart of odd dimension `2n + 1 ≥ 3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chart {
    names: Vec<String>,
}

impl Chart {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let dim = names.len();
        if dim < 3 || dim.is_multiple_of(2) {
            return Err(Error::InvalidChart(format!("dimension {dim} is not odd and at least 3")));
        }
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::InvalidChart(format!("`{name}` is not a valid coordinate name")));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidChart(format!("duplicate coordinate `{name}`")));
            }
        }
        Ok(Chart { names })
    }

    /// `x0, x1, ...` for the given dimension.
    pub fn standard(dim: usize) -> Result<Self> {
        let names: Vec<String> = (0..dim).map(|i| format!("x{i}")).collect();
        Chart::new(&names)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    /// `n` in `dim = 2n + 1`.
    pub fn half_dim(&self) -> usize {
        self.names.len() / 2
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn coord(&self, i: usize) -> Scalar {
        Scalar::var(i)
    }

    pub fn parse(&self, text: &str) -> Result<Scalar> {
        parse_scalar(text, self)
    }

    pub fn show(&self, s: &Scalar) -> String {
        s.display_with(&self.names).to_string()
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
