//! Differential forms and multivector fields on a chart, with the Schouten–Nijenhuis bracket.
//!
//! Components live on strictly increasing multi-indices; any other ordering is
//! resolved with its permutation sign when read.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Neg, Sub};

use crate::algebra::Scalar;
use crate::error::{Error, Result};

/// Marker for covariant (form) indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Covariant;

/// Marker for contravariant (multivector) indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Contravariant;

pub trait Variance: Clone + Copy + fmt::Debug + PartialEq + Eq + Default + 'static {
    type Dual: Variance<Dual = Self>;
    const BASIS_PREFIX: &'static str;
}

impl Variance for Covariant {
    type Dual = Contravariant;
    const BASIS_PREFIX: &'static str = "d";
}

impl Variance for Contravariant {
    type Dual = Covariant;
    const BASIS_PREFIX: &'static str = "∂";
}

/// A totally antisymmetric tensor field of fixed degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alternating<V> {
    dim: usize,
    degree: usize,
    comps: BTreeMap<Vec<usize>, Scalar>,
    kind: PhantomData<V>,
}

pub type DiffForm = Alternating<Covariant>;
pub type Multivector = Alternating<Contravariant>;

/// Sorts `idx`, returning the sorted tuple and whether the permutation was odd.
/// `None` when an index repeats.
pub fn sort_with_sign(idx: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = idx.to_vec();
    let mut odd = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, odd))
}

/// Merges two increasing tuples, returning the union and the parity of `a ++ b`.
fn merge(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut inversions = 0usize;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            // b[j] jumps over the remaining elements of a
            inversions += a.len() - i;
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((out, inversions % 2 == 1))
}

/// Splits increasing `big` into `small` and its complement, with the parity of `small ++ rest`.
fn complement(small: &[usize], big: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut rest = Vec::with_capacity(big.len().saturating_sub(small.len()));
    let mut inversions = 0usize;
    let mut si = 0;
    for &k in big {
        if si < small.len() && small[si] == k {
            // k moves left past every rest element already seen
            inversions += rest.len();
            si += 1;
        } else {
            rest.push(k);
        }
    }
    if si != small.len() {
        return None;
    }
    Some((rest, inversions % 2 == 1))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// All strictly increasing multi-indices of length `k` below `n`, in lexicographic order.
pub fn increasing_indices(n: usize, k: usize) -> Vec<Vec<usize>> {
    combinations(n, k)
}

impl<V: Variance> Alternating<V> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Alternating { dim, degree, comps: BTreeMap::new(), kind: PhantomData }
    }

    /// A degree-0 element.
    pub fn scalar(dim: usize, f: Scalar) -> Self {
        let mut out = Self::zero(dim, 0);
        out.accumulate(Vec::new(), f);
        out
    }

    /// `dx^i` or `∂_i`.
    pub fn coordinate(dim: usize, i: usize) -> Self {
        assert!(i < dim, "coordinate index {i} out of range for dimension {dim}");
        let mut out = Self::zero(dim, 1);
        out.accumulate(vec![i], Scalar::one());
        out
    }

    /// Degree-1 element from its component vector.
    pub fn from_vec(comps: Vec<Scalar>) -> Self {
        let mut out = Self::zero(comps.len(), 1);
        for (i, c) in comps.into_iter().enumerate() {
            out.accumulate(vec![i], c);
        }
        out
    }

    /// Builds an element from components on arbitrary distinct index tuples; entries are
    /// re-sorted with their permutation sign and summed.
    pub fn from_components<I>(dim: usize, degree: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Scalar)>,
    {
        let mut out = Self::zero(dim, degree);
        for (idx, value) in entries {
            if idx.len() != degree {
                return Err(Error::Index { indices: idx, reason: format!("expected length {degree}") });
            }
            if let Some(&bad) = idx.iter().find(|&&i| i >= dim) {
                return Err(Error::Index {
                    indices: idx,
                    reason: format!("index {bad} out of range for dimension {dim}"),
                });
            }
            let Some((sorted, odd)) = sort_with_sign(&idx) else {
                return Err(Error::Index { indices: idx, reason: "repeated index".into() });
            };
            out.accumulate(sorted, if odd { -value } else { value });
        }
        Ok(out)
    }

    fn accumulate(&mut self, idx: Vec<usize>, value: Scalar) {
        if value.is_zero() {
            return;
        }
        match self.comps.entry(idx) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(value);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &value;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Number of nonzero stored components.
    pub fn nnz(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.comps.iter()
    }

    /// Component on any index tuple, with the antisymmetry sign applied.
    pub fn component(&self, idx: &[usize]) -> Scalar {
        match sort_with_sign(idx) {
            None => Scalar::zero(),
            Some((sorted, odd)) => {
                let v = self.comps.get(&sorted).cloned().unwrap_or_default();
                if odd {
                    -v
                } else {
                    v
                }
            }
        }
    }

    /// The value of a degree-0 element.
    pub fn as_scalar(&self) -> Scalar {
        assert_eq!(self.degree, 0, "as_scalar on degree {}", self.degree);
        self.component(&[])
    }

    /// Component vector of a degree-1 element.
    pub fn to_vec(&self) -> Vec<Scalar> {
        assert_eq!(self.degree, 1, "to_vec on degree {}", self.degree);
        (0..self.dim).map(|i| self.component(&[i])).collect()
    }

    pub fn scale(&self, f: &Scalar) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        if f.is_zero() {
            return out;
        }
        for (k, v) in &self.comps {
            out.accumulate(k.clone(), v * f);
        }
        out
    }

    pub fn map_components(&self, mut f: impl FnMut(&Scalar) -> Scalar) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (k, v) in &self.comps {
            out.accumulate(k.clone(), f(v));
        }
        out
    }

    /// Total term count across all component numerators and denominators.
    pub fn size(&self) -> usize {
        self.comps.values().map(Scalar::size).sum()
    }

    pub fn same_chart(&self, other_dim: usize) -> Result<()> {
        if self.dim != other_dim {
            return Err(Error::ChartMismatch { left: self.dim, right: other_dim });
        }
        Ok(())
    }

    fn assert_compatible(&self, other: &Self) {
        assert_eq!(self.dim, other.dim, "chart dimension mismatch");
        assert_eq!(self.degree, other.degree, "degree mismatch");
    }

    /// Exterior product. Panics on a chart mismatch; see [`Alternating::try_wedge`].
    pub fn wedge(&self, other: &Self) -> Self {
        self.try_wedge(other).expect("wedge of elements on different charts")
    }

    pub fn try_wedge(&self, other: &Self) -> Result<Self> {
        self.same_chart(other.dim)?;
        let mut out = Self::zero(self.dim, self.degree + other.degree);
        if self.degree + other.degree > self.dim {
            return Ok(out);
        }
        for (a, fa) in &self.comps {
            for (b, fb) in &other.comps {
                if let Some((idx, odd)) = merge(a, b) {
                    let v = fa * fb;
                    out.accumulate(idx, if odd { -v } else { v });
                }
            }
        }
        Ok(out)
    }

    /// `self ∧ self ∧ … ∧ self` with `k` factors; `k = 0` gives the constant 1.
    pub fn wedge_power(&self, k: usize) -> Self {
        let mut acc = Self::scalar(self.dim, Scalar::one());
        for _ in 0..k {
            acc = acc.wedge(self);
        }
        acc
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> AlternatingDisplay<'a, V> {
        AlternatingDisplay { value: self, names }
    }
}

impl<V: Variance> Add for &Alternating<V> {
    type Output = Alternating<V>;
    fn add(self, rhs: &Alternating<V>) -> Alternating<V> {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (k, v) in &rhs.comps {
            out.accumulate(k.clone(), v.clone());
        }
        out
    }
}

impl<V: Variance> Sub for &Alternating<V> {
    type Output = Alternating<V>;
    fn sub(self, rhs: &Alternating<V>) -> Alternating<V> {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (k, v) in &rhs.comps {
            out.accumulate(k.clone(), -v);
        }
        out
    }
}

impl<V: Variance> Neg for &Alternating<V> {
    type Output = Alternating<V>;
    fn neg(self) -> Alternating<V> {
        self.map_components(|v| -v)
    }
}

impl<V: Variance> Add for Alternating<V> {
    type Output = Alternating<V>;
    fn add(self, rhs: Alternating<V>) -> Alternating<V> {
        &self + &rhs
    }
}

impl<V: Variance> Sub for Alternating<V> {
    type Output = Alternating<V>;
    fn sub(self, rhs: Alternating<V>) -> Alternating<V> {
        &self - &rhs
    }
}

impl<V: Variance> Neg for Alternating<V> {
    type Output = Alternating<V>;
    fn neg(self) -> Alternating<V> {
        -&self
    }
}

pub struct AlternatingDisplay<'a, V> {
    value: &'a Alternating<V>,
    names: &'a [String],
}

impl<V: Variance> fmt::Display for AlternatingDisplay<'_, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.value.is_zero() {
            return f.write_str("0");
        }
        for (n, (idx, c)) in self.value.comps.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({})", c.display_with(self.names))?;
            for (k, &i) in idx.iter().enumerate() {
                f.write_str(if k == 0 { " " } else { "∧" })?;
                match self.names.get(i) {
                    Some(name) => write!(f, "{}{name}", V::BASIS_PREFIX)?,
                    None => write!(f, "{}x{i}", V::BASIS_PREFIX)?,
                }
            }
        }
        Ok(())
    }
}

/// `(i_A B)_J = Σ_I A_I · sign(I ++ J) · B_{I ∪ J}`; zero when `deg A > deg B`.
fn contract_raw<A: Variance, B: Variance>(small: &Alternating<A>, big: &Alternating<B>) -> Alternating<B> {
    assert_eq!(small.dim, big.dim, "chart dimension mismatch");
    let mut out = Alternating::zero(big.dim, big.degree.saturating_sub(small.degree));
    if small.degree > big.degree {
        return out;
    }
    for (i, a) in &small.comps {
        for (k, b) in &big.comps {
            if let Some((rest, odd)) = complement(i, k) {
                let v = a * b;
                out.accumulate(rest, if odd { -v } else { v });
            }
        }
    }
    out
}

/// `i_P β`; on decomposables the first factor of `P` fills the first slot of `β`.
pub fn interior_product(p: &Multivector, beta: &DiffForm) -> Result<DiffForm> {
    p.same_chart(beta.dim)?;
    if p.degree > beta.degree {
        return Err(Error::Degree(format!(
            "interior product of a degree-{} multivector into a {}-form",
            p.degree, beta.degree
        )));
    }
    Ok(contract_raw(p, beta))
}

/// `i_α P`: contraction of a form into the leading slots of a multivector.
pub fn contract(alpha: &DiffForm, p: &Multivector) -> Result<Multivector> {
    alpha.same_chart(p.dim)?;
    if alpha.degree > p.degree {
        return Err(Error::Degree(format!(
            "contraction of a {}-form into a degree-{} multivector",
            alpha.degree, p.degree
        )));
    }
    Ok(contract_raw(alpha, p))
}

/// `β(X₁, …, X_p)`.
pub fn pairing(beta: &DiffForm, vectors: &[&Multivector]) -> Result<Scalar> {
    if vectors.len() != beta.degree {
        return Err(Error::Degree(format!("{}-form evaluated on {} vectors", beta.degree, vectors.len())));
    }
    let mut acc = Multivector::scalar(beta.dim, Scalar::one());
    for x in vectors {
        if x.degree != 1 {
            return Err(Error::Degree("pairing arguments must be vector fields".into()));
        }
        acc = acc.try_wedge(x)?;
    }
    Ok(interior_product(&acc, beta)?.as_scalar())
}

/// `P(β₁, …, β_p)`.
pub fn evaluate_multivector(p: &Multivector, forms: &[&DiffForm]) -> Result<Scalar> {
    if forms.len() != p.degree {
        return Err(Error::Degree(format!("degree-{} multivector evaluated on {} forms", p.degree, forms.len())));
    }
    let mut acc = DiffForm::scalar(p.dim, Scalar::one());
    for b in forms {
        if b.degree != 1 {
            return Err(Error::Degree("multivector arguments must be 1-forms".into()));
        }
        acc = acc.try_wedge(b)?;
    }
    Ok(contract(&acc, p)?.as_scalar())
}

/// Exterior derivative; a top-degree form maps to the zero form of degree `dim + 1`.
pub fn exterior_derivative(beta: &DiffForm) -> DiffForm {
    let mut out = DiffForm::zero(beta.dim, beta.degree + 1);
    if beta.degree >= beta.dim {
        return out;
    }
    for (idx, f) in &beta.comps {
        for k in 0..beta.dim {
            if idx.contains(&k) {
                continue;
            }
            let df = f.partial_derivative(k);
            if df.is_zero() {
                continue;
            }
            let pos = idx.iter().filter(|&&i| i < k).count();
            let mut merged = idx.clone();
            merged.insert(pos, k);
            out.accumulate(merged, if pos % 2 == 1 { -df } else { df });
        }
    }
    out
}

/// `df` as a 1-form.
pub fn differential(dim: usize, f: &Scalar) -> DiffForm {
    exterior_derivative(&DiffForm::scalar(dim, f.clone()))
}

/// `X.f = Σ Xᵏ ∂ₖ f`.
pub fn vector_action(x: &Multivector, f: &Scalar) -> Scalar {
    assert_eq!(x.degree, 1, "vector_action needs a vector field");
    x.comps.iter().map(|(k, xk)| xk * &f.partial_derivative(k[0])).sum()
}

/// `L_X β = i_X dβ + d i_X β`.
pub fn lie_derivative_form(x: &Multivector, beta: &DiffForm) -> Result<DiffForm> {
    x.same_chart(beta.dim)?;
    if x.degree != 1 {
        return Err(Error::Degree("Lie derivative along a non-vector multivector".into()));
    }
    let first = contract_raw(x, &exterior_derivative(beta));
    if beta.degree == 0 {
        return Ok(first);
    }
    Ok(&first + &exterior_derivative(&contract_raw(x, beta)))
}

fn sign_pow(e: usize) -> bool {
    e % 2 == 1
}

/// Right-hand side of the defining identity of the Schouten–Nijenhuis bracket:
/// `(−1)^{q(p+1)} i_P d i_Q β + (−1)^p i_Q d i_P β − i_{P∧Q} dβ` for a `(p+q−1)`-form `β`.
pub fn schouten_rhs(p: &Multivector, q: &Multivector, beta: &DiffForm) -> Result<Scalar> {
    p.same_chart(q.dim)?;
    p.same_chart(beta.dim)?;
    let (dp, dq) = (p.degree, q.degree);
    if dp + dq == 0 || beta.degree + 1 != dp + dq {
        return Err(Error::Degree(format!(
            "bracket of degrees {dp} and {dq} pairs with a {}-form, got degree {}",
            (dp + dq).saturating_sub(1),
            beta.degree
        )));
    }
    let t1 = contract_raw(p, &exterior_derivative(&contract_raw(q, beta)));
    let t2 = contract_raw(q, &exterior_derivative(&contract_raw(p, beta)));
    let t3 = contract_raw(&p.wedge(q), &exterior_derivative(beta));
    let mut acc = if sign_pow(dq * (dp + 1)) { -t1.as_scalar() } else { t1.as_scalar() };
    let s2 = t2.as_scalar();
    acc = if sign_pow(dp) { &acc - &s2 } else { &acc + &s2 };
    Ok(&acc - &t3.as_scalar())
}

/// Schouten–Nijenhuis bracket, with components read off the defining identity on basis forms.
pub fn schouten(p: &Multivector, q: &Multivector) -> Result<Multivector> {
    p.same_chart(q.dim)?;
    let (dp, dq) = (p.degree, q.degree);
    if dp + dq == 0 {
        return Err(Error::Degree("bracket of two functions".into()));
    }
    let r = dp + dq - 1;
    if r > p.dim {
        return Err(Error::Degree(format!("bracket degree {r} exceeds dimension {}", p.dim)));
    }
    let mut out = Multivector::zero(p.dim, r);
    if p.is_zero() || q.is_zero() {
        return Ok(out);
    }
    for j in combinations(p.dim, r) {
        let basis = DiffForm::from_components(p.dim, r, [(j.clone(), Scalar::one())])?;
        let value = schouten_rhs(p, q, &basis)?;
        out.accumulate(j, value);
    }
    Ok(out)
}

/// `L_X P = [X, P]`.
pub fn lie_derivative_multivector(x: &Multivector, p: &Multivector) -> Result<Multivector> {
    if x.degree != 1 {
        return Err(Error::Degree("Lie derivative along a non-vector multivector".into()));
    }
    schouten(x, p)
}
