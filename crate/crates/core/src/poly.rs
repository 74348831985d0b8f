//! Sparse polynomials in the five ansatz parameters `a, b, c, d, e` with
//! Gaussian-rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{CoreError, Result};
use crate::scalar::{GaussRational, Rational};

/// Hard cap on total degree; anything beyond signals a runaway expression.
pub const DEGREE_CAP: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Generator {
    A,
    B,
    C,
    D,
    E,
}

impl Generator {
    pub const ALL: [Generator; 5] = [
        Generator::A,
        Generator::B,
        Generator::C,
        Generator::D,
        Generator::E,
    ];

    fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["a", "b", "c", "d", "e"][self.index()]
    }
}

/// Exponent tuple over `(a, b, c, d, e)`, ordered graded-lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u8; 5]);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = [0u8; 5];
        for (o, (a, b)) in out.iter_mut().zip(self.0.iter().zip(other.0.iter())) {
            *o = a + b;
        }
        Monomial(out)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in the ansatz parameters. Terms are kept sorted by monomial
/// and never carry a zero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    terms: Vec<(Monomial, GaussRational)>,
}

impl ParamPoly {
    pub fn constant(c: GaussRational) -> Self {
        if c.is_zero() {
            Self::default()
        } else {
            Self {
                terms: vec![(Monomial::default(), c)],
            }
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::constant(GaussRational::real(r))
    }

    pub fn generator(g: Generator) -> Self {
        let mut m = [0u8; 5];
        m[g.index()] = 1;
        Self {
            terms: vec![(Monomial(m), GaussRational::one())],
        }
    }

    fn from_map(map: BTreeMap<Monomial, GaussRational>) -> Self {
        Self {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[(Monomial, GaussRational)] {
        &self.terms
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// The value if the polynomial has no generator dependence.
    pub fn as_constant(&self) -> Option<GaussRational> {
        match self.terms.as_slice() {
            [] => Some(GaussRational::zero()),
            [(m, c)] if m.degree() == 0 => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn scale(&self, s: &GaussRational) -> Self {
        if s.is_zero() {
            return Self::default();
        }
        Self {
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (*m, c.conj())).collect(),
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.terms.is_empty() || other.terms.is_empty() {
            return Ok(Self::default());
        }
        if let [(m, c)] = self.terms.as_slice() {
            if m.degree() == 0 {
                return Ok(other.scale(c));
            }
        }
        if let [(m, c)] = other.terms.as_slice() {
            if m.degree() == 0 {
                return Ok(self.scale(c));
            }
        }
        let mut acc: BTreeMap<Monomial, GaussRational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                if m.degree() > DEGREE_CAP {
                    return Err(CoreError::DegreeOverflow(m.degree()));
                }
                *acc.entry(m).or_default() += &(ca * cb);
            }
        }
        Ok(Self::from_map(acc))
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let (m, c) = &other.terms[j];
                    out.push((*m, if negate { -c } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &self.terms[i].1 - &other.terms[j].1
                    } else {
                        &self.terms[i].1 + &other.terms[j].1
                    };
                    if !c.is_zero() {
                        out.push((self.terms[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Self { terms: out }
    }

    fn pow(&self, n: u8) -> Result<Self> {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// Replaces generator `g` by the polynomial `value`.
    pub fn substitute(&self, g: Generator, value: &ParamPoly) -> Result<Self> {
        let mut acc = Self::default();
        for (m, c) in &self.terms {
            let e = m.0[g.index()];
            let mut rest = *m;
            rest.0[g.index()] = 0;
            let base = Self {
                terms: vec![(rest, c.clone())],
            };
            acc = &acc + &base.try_mul(&value.pow(e)?)?;
        }
        Ok(acc)
    }

    /// Substitutes rational values for some (possibly none) of the generators.
    pub fn substitute_values(&self, assignment: &BTreeMap<Generator, Rational>) -> Self {
        let mut acc: BTreeMap<Monomial, GaussRational> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut rest = *m;
            let mut factor = Rational::one();
            for (g, v) in assignment {
                let e = rest.0[g.index()];
                if e > 0 {
                    factor *= num_traits::pow(v.clone(), e as usize);
                    rest.0[g.index()] = 0;
                }
            }
            *acc.entry(rest).or_default() += &c.scale(&factor);
        }
        Self::from_map(acc)
    }

    /// Generators with a nonzero exponent somewhere in the polynomial.
    pub fn generators(&self) -> Vec<Generator> {
        Generator::ALL
            .into_iter()
            .filter(|g| self.terms.iter().any(|(m, _)| m.0[g.index()] > 0))
            .collect()
    }

    /// Coefficients `[c_0, c_1, ...]` in the single generator `g`; fails if any
    /// other generator appears.
    pub fn univariate_coefficients(&self, g: Generator) -> Result<Vec<GaussRational>> {
        let mut coeffs = vec![GaussRational::zero(); self.degree() as usize + 1];
        for (m, c) in &self.terms {
            if m.degree() != m.0[g.index()] as u32 {
                return Err(CoreError::NotUnivariate(self.to_string()));
            }
            coeffs[m.0[g.index()] as usize] = c.clone();
        }
        Ok(coeffs)
    }
}

impl Zero for ParamPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for ParamPoly {
    fn one() -> Self {
        Self::constant(GaussRational::one())
    }
}

impl From<GaussRational> for ParamPoly {
    fn from(c: GaussRational) -> Self {
        Self::constant(c)
    }
}

impl From<Rational> for ParamPoly {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl<'a> Add<&'a ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &'a ParamPoly) -> ParamPoly {
        self.combine(rhs, false)
    }
}

impl Add for ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: ParamPoly) -> ParamPoly {
        self.combine(&rhs, false)
    }
}

impl<'a> Sub<&'a ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &'a ParamPoly) -> ParamPoly {
        self.combine(rhs, true)
    }
}

impl Sub for ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: ParamPoly) -> ParamPoly {
        self.combine(&rhs, true)
    }
}

/// Panics on degree-cap overflow; use [`ParamPoly::try_mul`] to handle it.
impl<'a> Mul<&'a ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &'a ParamPoly) -> ParamPoly {
        self.try_mul(rhs).expect("parameter polynomial degree cap exceeded")
    }
}

impl Mul for ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: ParamPoly) -> ParamPoly {
        &self * &rhs
    }
}

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        -self.clone()
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let negative_real = c.im.is_zero() && c.re.is_negative();
            let c = &if n > 0 && negative_real {
                write!(f, " - ")?;
                -c.clone()
            } else {
                if n > 0 {
                    write!(f, " + ")?;
                }
                c.clone()
            };
            let needs_parens = !c.re.is_zero() && !c.im.is_zero();
            if needs_parens {
                write!(f, "({c})")?;
            } else {
                write!(f, "{c}")?;
            }
            for g in Generator::ALL {
                match m.0[g.index()] {
                    0 => {}
                    1 => write!(f, "*{}", g.name())?,
                    e => write!(f, "*{}^{}", g.name(), e)?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn gen(g: Generator) -> ParamPoly {
        ParamPoly::generator(g)
    }

    fn k(num: i64, den: i64) -> ParamPoly {
        ParamPoly::from_rational(rat(num, den))
    }

    #[test]
    fn branch_relation_substitution() {
        // 3d - c with d = c/3
        let p = &(&k(3, 1) * &gen(Generator::D)) - &gen(Generator::C);
        let q = p
            .substitute(Generator::D, &(&k(1, 3) * &gen(Generator::C)))
            .unwrap();
        assert!(q.is_zero());
    }

    #[test]
    fn empty_assignment_is_identity() {
        let p = &(&gen(Generator::A) * &gen(Generator::C)) + &k(2, 7);
        assert_eq!(p.substitute_values(&BTreeMap::new()), p);
    }

    #[test]
    fn critical_c_kills_e() {
        let e = &k(-1, 2) + &(&k(6, 1) * &gen(Generator::C));
        let mut asg = BTreeMap::new();
        asg.insert(Generator::C, rat(1, 12));
        assert!(e.substitute_values(&asg).is_zero());
    }

    #[test]
    fn partial_assignment_keeps_other_generators() {
        let p = &gen(Generator::A) * &gen(Generator::C);
        let mut asg = BTreeMap::new();
        asg.insert(Generator::C, int(3));
        assert_eq!(p.substitute_values(&asg), &k(3, 1) * &gen(Generator::A));
    }

    #[test]
    fn degree_cap_is_enforced() {
        let c4 = gen(Generator::C).pow(4).unwrap();
        let c8 = c4.try_mul(&c4).unwrap();
        assert_eq!(c8.degree(), 8);
        assert_eq!(c8.try_mul(&gen(Generator::A)), Err(CoreError::DegreeOverflow(9)));
    }

    #[test]
    fn graded_lex_order_puts_constants_first() {
        let p = &(&gen(Generator::C) * &gen(Generator::C)) + &(&gen(Generator::A) + &k(1, 1));
        let degs: Vec<u32> = p.terms().iter().map(|(m, _)| m.degree()).collect();
        assert_eq!(degs, vec![0, 1, 2]);
        assert_eq!(p.to_string(), "1 + 1*a + 1*c^2");
    }
}
