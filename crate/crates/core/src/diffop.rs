//! Matrix differential operators: entries are finite sums `q x^m d^k` in
//! normal order (powers of `x` to the left of derivatives).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{CoreError, Result};
use crate::linalg::SparseVec;
use crate::matrix::Matrix;
use crate::poly::{Generator, ParamPoly};
use crate::scalar::{GaussRational, Rational};
use crate::wave::WaveVector;

/// Hard cap on the derivative order of any normal-ordered term.
pub const ORDER_CAP: u32 = 8;

/// Key `(m, k)` of the monomial `x^m d^k`.
pub type Term = (i32, u32);

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// `m (m-1) ... (m-j+1)`, valid for negative `m`.
fn falling(m: i32, j: u32) -> i64 {
    (0..j as i64).fold(1i64, |acc, i| acc * (m as i64 - i))
}

/// A scalar differential polynomial in `x`, `1/x` and `d/dx`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct DiffPoly {
    terms: BTreeMap<Term, ParamPoly>,
}

impl DiffPoly {
    pub fn monomial(m: i32, k: u32, coef: ParamPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert((m, k), coef);
        }
        Self { terms }
    }

    pub fn constant(coef: ParamPoly) -> Self {
        Self::monomial(0, 0, coef)
    }

    /// `x^m`.
    pub fn x_pow(m: i32) -> Self {
        Self::monomial(m, 0, ParamPoly::one())
    }

    /// `d^k`.
    pub fn d(k: u32) -> Self {
        Self::monomial(0, k, ParamPoly::one())
    }

    pub fn terms(&self) -> &BTreeMap<Term, ParamPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: i32, k: u32) -> ParamPoly {
        self.terms.get(&(m, k)).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, key: Term, coef: ParamPoly) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &coef;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, s: &ParamPoly) -> Result<Self> {
        let mut out = Self::default();
        for (k, c) in &self.terms {
            out.add_term(*k, c.try_mul(s)?);
        }
        Ok(out)
    }

    pub fn scale_scalar(&self, s: &GaussRational) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, c.scale(s)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Operator product with normal reordering via
    /// `d^k x^n = sum_j C(k,j) n(n-1)..(n-j+1) x^(n-j) d^(k-j)`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let mut out = Self::default();
        for (&(m1, k1), c1) in &self.terms {
            for (&(m2, k2), c2) in &other.terms {
                let c = c1.try_mul(c2)?;
                for j in 0..=k1 {
                    let f = falling(m2, j);
                    if f == 0 {
                        continue;
                    }
                    let order = k1 - j + k2;
                    if order > ORDER_CAP {
                        return Err(CoreError::OrderOverflow(order));
                    }
                    let w = GaussRational::from_int(binomial(k1, j) * f);
                    out.add_term((m1 + m2 - j as i32, order), c.scale(&w));
                }
            }
        }
        Ok(out)
    }

    /// Formal adjoint: `(q x^m d^k)^+ = conj(q) (-d)^k x^m`.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::default();
        for (&(m, k), c) in &self.terms {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            for j in 0..=k {
                let f = falling(m, j);
                if f == 0 {
                    continue;
                }
                let w = GaussRational::from_int(sign * binomial(k, j) * f);
                out.add_term((m - j as i32, k - j), c.conj().scale(&w));
            }
        }
        out
    }

    pub fn map_coefficients(&self, f: impl Fn(&ParamPoly) -> Result<ParamPoly>) -> Result<Self> {
        let mut out = Self::default();
        for (k, c) in &self.terms {
            out.add_term(*k, f(c)?);
        }
        Ok(out)
    }

    pub fn max_order(&self) -> u32 {
        self.terms.keys().map(|&(_, k)| k).max().unwrap_or(0)
    }
}

impl<'a> Add<&'a DiffPoly> for &DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: &'a DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a DiffPoly> for &DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: &'a DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c);
        }
        out
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(m, k), c)| term_string(c, m, k))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn term_string(c: &ParamPoly, m: i32, k: u32) -> String {
    let mut s = format!("({c})");
    if m != 0 {
        s.push_str(&format!("·x^{m}"));
    }
    if k != 0 {
        s.push_str(&format!("·∂^{k}"));
    }
    s
}

impl fmt::Debug for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grading {
    Even,
    Odd,
}

/// Square matrix of [`DiffPoly`] entries. The first half of the indices is
/// bosonic, the second half fermionic.
#[derive(Clone, PartialEq, Eq)]
pub struct OperatorMatrix {
    n: usize,
    entries: Vec<DiffPoly>,
}

impl OperatorMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![DiffPoly::default(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &DiffPoly::constant(ParamPoly::one()))
    }

    /// `p` times the identity matrix.
    pub fn scalar(n: usize, p: &DiffPoly) -> Self {
        let mut out = Self::zeros(n);
        for i in 0..n {
            out.entries[i * n + i] = p.clone();
        }
        out
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> DiffPoly) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                entries.push(f(r, c));
            }
        }
        Self { n, entries }
    }

    /// Constant matrix times the scalar operator `p`.
    pub fn from_matrix(m: &Matrix<Rational>, p: &DiffPoly) -> Self {
        Self::from_fn(m.rows(), |r, c| {
            let v = m.get(r, c);
            if v.is_zero() {
                DiffPoly::default()
            } else {
                p.scale_scalar(&GaussRational::real(v.clone()))
            }
        })
    }

    pub fn from_exact(m: &Matrix<ParamPoly>, p: &DiffPoly) -> Result<Self> {
        let mut out = Self::zeros(m.rows());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                out.entries[r * m.rows() + c] = p.scale(m.get(r, c))?;
            }
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &DiffPoly {
        &self.entries[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: DiffPoly) {
        self.entries[r * self.n + c] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(DiffPoly::is_zero)
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(CoreError::Dimension(format!("{} vs {}", self.n, other.n)));
        }
        let n = self.n;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = &self.entries[r * n + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = &other.entries[k * n + c];
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.compose(b)?;
                    let slot = &mut out.entries[r * n + c];
                    *slot = &*slot + &prod;
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        Ok(&self.compose(other)? - &other.compose(self)?)
    }

    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        Ok(&self.compose(other)? + &other.compose(self)?)
    }

    /// Block structure: even if only diagonal blocks are populated, odd if only
    /// off-diagonal blocks are. The zero operator counts as even.
    pub fn grading(&self) -> Result<Grading> {
        let half = self.n / 2;
        let mut diag = false;
        let mut anti = false;
        for r in 0..self.n {
            for c in 0..self.n {
                if !self.get(r, c).is_zero() {
                    if (r < half) == (c < half) {
                        diag = true;
                    } else {
                        anti = true;
                    }
                }
            }
        }
        match (diag, anti) {
            (true, true) => Err(CoreError::IndefiniteGrading),
            (false, true) => Ok(Grading::Odd),
            _ => Ok(Grading::Even),
        }
    }

    /// Anticommutator for two odd operands, commutator otherwise.
    pub fn graded_bracket(&self, other: &Self) -> Result<Self> {
        match (self.grading()?, other.grading()?) {
            (Grading::Odd, Grading::Odd) => self.anticommutator(other),
            _ => self.commutator(other),
        }
    }

    /// Conjugate transpose with each entry replaced by its formal adjoint.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |r, c| self.get(c, r).adjoint())
    }

    pub fn scale(&self, s: &GaussRational) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().map(|e| e.scale_scalar(s)).collect(),
        }
    }

    pub fn scale_poly(&self, s: &ParamPoly) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.scale(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n: self.n, entries })
    }

    pub fn map_coefficients(&self, f: impl Fn(&ParamPoly) -> Result<ParamPoly>) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.map_coefficients(&f))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n: self.n, entries })
    }

    /// Replaces a parameter by a polynomial in the others.
    pub fn substitute(&self, g: Generator, value: &ParamPoly) -> Result<Self> {
        self.map_coefficients(|c| c.substitute(g, value))
    }

    pub fn substitute_values(&self, assignment: &BTreeMap<Generator, Rational>) -> Self {
        self.map_coefficients(|c| Ok(c.substitute_values(assignment)))
            .expect("value substitution cannot overflow")
    }

    /// Every nonzero parameter polynomial appearing as a coefficient.
    pub fn coefficients(&self) -> Vec<ParamPoly> {
        self.entries
            .iter()
            .flat_map(|e| e.terms().values().cloned())
            .collect()
    }

    /// True when no entry carries `x` or a derivative.
    pub fn is_constant(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.terms().keys().all(|&(m, k)| m == 0 && k == 0))
    }

    /// The constant matrix if [`Self::is_constant`] holds.
    pub fn constant_part(&self) -> Option<Matrix<ParamPoly>> {
        if !self.is_constant() {
            return None;
        }
        Some(Matrix::from_fn(self.n, self.n, |r, c| {
            self.get(r, c).coefficient(0, 0)
        }))
    }

    /// Coordinates keyed by `(row, col, m, k)`; coefficients must be constant.
    pub fn to_sparse(&self) -> Result<SparseVec<(usize, usize, i32, u32)>> {
        let mut v = SparseVec::new();
        for r in 0..self.n {
            for c in 0..self.n {
                for (&(m, k), q) in self.get(r, c).terms() {
                    let val = q
                        .as_constant()
                        .ok_or_else(|| CoreError::NotConstant(q.to_string()))?;
                    v.insert((r, c, m, k), val);
                }
            }
        }
        Ok(v)
    }

    pub fn from_sparse(n: usize, v: &SparseVec<(usize, usize, i32, u32)>) -> Self {
        let mut out = Self::zeros(n);
        for (&(r, c, m, k), val) in v {
            let idx = r * n + c;
            out.entries[idx].add_term((m, k), ParamPoly::constant(val.clone()));
        }
        out
    }

    pub fn apply(&self, psi: &WaveVector) -> Result<WaveVector> {
        psi.apply_operator(self)
    }

    pub fn entry_strings(&self) -> Vec<String> {
        let mut out = Vec::new();
        for r in 0..self.n {
            for c in 0..self.n {
                for (&(m, k), q) in self.get(r, c).terms() {
                    out.push(format!("{}·E[{},{}]", term_string(q, m, k), r + 1, c + 1));
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a OperatorMatrix> for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn add(self, rhs: &'a OperatorMatrix) -> OperatorMatrix {
        assert_eq!(self.n, rhs.n, "operator dimension mismatch");
        OperatorMatrix {
            n: self.n,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a OperatorMatrix> for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn sub(self, rhs: &'a OperatorMatrix) -> OperatorMatrix {
        assert_eq!(self.n, rhs.n, "operator dimension mismatch");
        OperatorMatrix {
            n: self.n,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn neg(self) -> OperatorMatrix {
        OperatorMatrix {
            n: self.n,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }
}

/// Panics on cap overflow; use [`OperatorMatrix::compose`] to handle it.
impl<'a> Mul<&'a OperatorMatrix> for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, rhs: &'a OperatorMatrix) -> OperatorMatrix {
        self.compose(rhs).expect("operator composition overflow")
    }
}

impl fmt::Display for OperatorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.entry_strings();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for OperatorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
