//! Vector wavefunctions whose components are finite sums `q x^beta e^(-x^2/2)`
//! with rational exponents.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::diffop::OperatorMatrix;
use crate::error::{CoreError, Result};
use crate::linalg::SparseVec;
use crate::scalar::{int, GaussRational, Rational};

type Component = BTreeMap<Rational, GaussRational>;

fn add_into(c: &mut Component, beta: Rational, q: GaussRational) {
    if q.is_zero() {
        return;
    }
    let slot = c.entry(beta.clone()).or_default();
    *slot += &q;
    if slot.is_zero() {
        c.remove(&beta);
    }
}

/// `d/dx` on `q x^b e^(-x^2/2)` gives `q b x^(b-1) e - q x^(b+1) e`.
fn differentiate(c: &Component) -> Component {
    let mut out = Component::new();
    for (b, q) in c {
        add_into(&mut out, b - int(1), q.scale(b));
        add_into(&mut out, b + int(1), -q);
    }
    out
}

/// The Gaussian factor `e^(-x^2/2)` is implicit in every term.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WaveVector {
    components: Vec<Component>,
}

impl WaveVector {
    pub fn zero(n: usize) -> Self {
        Self {
            components: vec![Component::new(); n],
        }
    }

    /// `coef x^beta e^(-x^2/2)` in slot `k` (0-based), zero elsewhere.
    pub fn single(n: usize, k: usize, beta: Rational, coef: GaussRational) -> Self {
        let mut out = Self::zero(n);
        add_into(&mut out.components[k], beta, coef);
        out
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, k: usize) -> &BTreeMap<Rational, GaussRational> {
        &self.components[k]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(BTreeMap::is_empty)
    }

    /// Slots with a nonzero component.
    pub fn support(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&k| !self.components[k].is_empty())
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, comp) in other.components.iter().enumerate() {
            for (b, q) in comp {
                add_into(&mut out.components[k], b.clone(), q.clone());
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&GaussRational::from_int(-1)))
    }

    pub fn scale(&self, s: &GaussRational) -> Self {
        let mut out = Self::zero(self.dim());
        for (k, comp) in self.components.iter().enumerate() {
            for (b, q) in comp {
                add_into(&mut out.components[k], b.clone(), q * s);
            }
        }
        out
    }

    /// Smallest exponent over all nonzero terms.
    pub fn min_exponent(&self) -> Option<Rational> {
        self.components
            .iter()
            .filter_map(|c| c.keys().next().cloned())
            .min()
    }

    /// Every component's exponents lie in a single `beta_0 + Z` coset.
    pub fn check_lattice(&self) -> Result<()> {
        for (k, comp) in self.components.iter().enumerate() {
            if let Some(first) = comp.keys().next() {
                for b in comp.keys() {
                    if !(b - first).is_integer() {
                        return Err(CoreError::Lattice(format!("slot {}: {} vs {}", k + 1, b, first)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn apply_operator(&self, op: &OperatorMatrix) -> Result<WaveVector> {
        if op.dim() != self.dim() {
            return Err(CoreError::Dimension(format!("{} vs {}", op.dim(), self.dim())));
        }
        self.check_lattice()?;
        let n = self.dim();
        // derivatives of each input component, computed lazily per order
        let mut derivs: Vec<Vec<Component>> = self.components.iter().map(|c| vec![c.clone()]).collect();
        let mut out = Self::zero(n);
        for r in 0..n {
            for c in 0..n {
                if self.components[c].is_empty() {
                    continue;
                }
                for (&(m, k), q) in op.get(r, c).terms() {
                    let coef = q
                        .as_constant()
                        .ok_or_else(|| CoreError::NotConstant(q.to_string()))?;
                    while derivs[c].len() <= k as usize {
                        let next = differentiate(derivs[c].last().expect("nonempty"));
                        derivs[c].push(next);
                    }
                    for (b, val) in &derivs[c][k as usize] {
                        add_into(&mut out.components[r], b + int(m as i64), val * &coef);
                    }
                }
            }
        }
        out.check_lattice()?;
        Ok(out)
    }

    /// `lambda` with `other = lambda * self`, if one exists.
    pub fn ratio_of(&self, other: &Self) -> Option<GaussRational> {
        let mut lambda: Option<GaussRational> = None;
        if self.is_zero() {
            return None;
        }
        for (a, b) in self.components.iter().zip(&other.components) {
            for (beta, qa) in a {
                let qb = b.get(beta).cloned().unwrap_or_default();
                let l = qb.checked_div(qa).ok()?;
                match &lambda {
                    None => lambda = Some(l),
                    Some(prev) if *prev != l => return None,
                    _ => {}
                }
            }
            for beta in b.keys() {
                if !a.contains_key(beta) {
                    return None;
                }
            }
        }
        lambda
    }

    pub fn to_sparse(&self) -> SparseVec<(usize, Rational)> {
        let mut v = SparseVec::new();
        for (k, comp) in self.components.iter().enumerate() {
            for (b, q) in comp {
                v.insert((k, b.clone()), q.clone());
            }
        }
        v
    }

    /// Terms as `(slot, exponent, coefficient)`, slot 1-based.
    pub fn terms(&self) -> Vec<(usize, Rational, GaussRational)> {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(k, comp)| comp.iter().map(move |(b, q)| (k + 1, b.clone(), q.clone())))
            .collect()
    }
}

impl fmt::Display for WaveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms()
            .into_iter()
            .map(|(k, b, q)| format!("({q})·x^({b})·e[{k}]"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for WaveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffop::DiffPoly;
    use crate::poly::ParamPoly;
    use crate::scalar::rat;

    #[test]
    fn euler_operator_on_gaussian_power() {
        let psi = WaveVector::single(1, 0, rat(1, 6), GaussRational::from_int(1));
        let xd = OperatorMatrix::scalar(1, &DiffPoly::monomial(1, 1, ParamPoly::from_rational(int(1))));
        let out = psi.apply_operator(&xd).unwrap();
        let mut expected = WaveVector::single(1, 0, rat(1, 6), GaussRational::from_ratio(1, 6));
        expected = expected.add(&WaveVector::single(1, 0, rat(13, 6), GaussRational::from_int(-1)));
        assert_eq!(out, expected);
    }

    #[test]
    fn lattice_violation_detected() {
        let psi = WaveVector::single(1, 0, rat(1, 6), GaussRational::from_int(1))
            .add(&WaveVector::single(1, 0, rat(1, 2), GaussRational::from_int(1)));
        assert!(matches!(psi.check_lattice(), Err(CoreError::Lattice(_))));
    }

    #[test]
    fn ratio() {
        let psi = WaveVector::single(2, 1, rat(7, 6), GaussRational::from_int(3));
        let scaled = psi.scale(&GaussRational::from_ratio(5, 3));
        assert_eq!(psi.ratio_of(&scaled), Some(GaussRational::from_ratio(5, 3)));
        assert_eq!(psi.ratio_of(&WaveVector::zero(2)), Some(GaussRational::zero()));
        let other = WaveVector::single(2, 0, rat(7, 6), GaussRational::from_int(1));
        assert_eq!(psi.ratio_of(&other), None);
    }
}
