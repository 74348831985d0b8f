//! Exact scalars: arbitrary-precision rationals and Gaussian rationals `a + b i`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{CoreError, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for the rational `num/den`. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn checked_div(a: &Rational, b: &Rational) -> Result<Rational> {
    if b.is_zero() {
        return Err(CoreError::DivisionByZero);
    }
    Ok(a / b)
}

/// Complex number with rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(int(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::real(rat(num, den))
    }

    pub fn i() -> Self {
        Self {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `|z|^2`, always a non-negative rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        Ok(Self {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self {
            re: &self.re * r,
            im: &self.im * r,
        }
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        Self {
            re: -self.im.clone(),
            im: self.re.clone(),
        }
    }
}

impl Zero for GaussRational {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRational {
    fn one() -> Self {
        Self::real(Rational::one())
    }
}

impl From<Rational> for GaussRational {
    fn from(r: Rational) -> Self {
        Self::real(r)
    }
}

impl From<i64> for GaussRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<'a> Add<&'a GaussRational> for &GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: &'a GaussRational) -> GaussRational {
        GaussRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Add for GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: GaussRational) -> GaussRational {
        &self + &rhs
    }
}

impl AddAssign<&GaussRational> for GaussRational {
    fn add_assign(&mut self, rhs: &GaussRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussRational> for GaussRational {
    fn sub_assign(&mut self, rhs: &GaussRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl<'a> Sub<&'a GaussRational> for &GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: &'a GaussRational) -> GaussRational {
        GaussRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Sub for GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: GaussRational) -> GaussRational {
        &self - &rhs
    }
}

impl<'a> Mul<&'a GaussRational> for &GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: &'a GaussRational) -> GaussRational {
        // Most factors in this engine are purely real or purely imaginary.
        match (self.im.is_zero(), rhs.im.is_zero()) {
            (true, true) => GaussRational::real(&self.re * &rhs.re),
            (true, false) => GaussRational {
                re: &self.re * &rhs.re,
                im: &self.re * &rhs.im,
            },
            (false, true) => GaussRational {
                re: &self.re * &rhs.re,
                im: &self.im * &rhs.re,
            },
            (false, false) => GaussRational {
                re: &self.re * &rhs.re - &self.im * &rhs.im,
                im: &self.re * &rhs.im + &self.im * &rhs.re,
            },
        }
    }
}

impl Mul for GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: GaussRational) -> GaussRational {
        &self * &rhs
    }
}

impl Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        -self.clone()
    }
}

/// Renders as `p/q`, `r/s*i`, or `p/q+r/s*i`.
impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}*i", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "{}{}{}*i", self.re, sign, self.im.abs())
            }
        }
    }
}

impl fmt::Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serde helpers writing rationals as `"p/q"` strings.
pub mod as_string {
    use super::Rational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn seq<S: Serializer>(rs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(rs.iter().map(ToString::to_string))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sum() {
        assert_eq!(rat(1, 2) + rat(1, 3), rat(5, 6));
    }

    #[test]
    fn i_squared() {
        let i = GaussRational::i();
        assert_eq!(&i * &i, GaussRational::from_int(-1));
    }

    #[test]
    fn supertrace_combination() {
        let v = rat(91, 72) + int(7) * rat(-5, 72) - int(8) * rat(7, 72);
        assert!(v.is_zero());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(checked_div(&rat(1, 2), &int(0)), Err(CoreError::DivisionByZero));
        assert_eq!(GaussRational::zero().inv(), Err(CoreError::DivisionByZero));
    }

    #[test]
    fn gauss_inverse() {
        let z = GaussRational::new(rat(1, 2), rat(-3, 4));
        assert_eq!(&z * &z.inv().unwrap(), GaussRational::one());
        assert_eq!(z.conj().conj(), z);
    }

    #[test]
    fn rendering() {
        assert_eq!(GaussRational::from_ratio(91, 72).to_string(), "91/72");
        assert_eq!(GaussRational::new(rat(1, 2), rat(-1, 3)).to_string(), "1/2-1/3*i");
        assert_eq!(GaussRational::new(rat(-1, 2), rat(1, 3)).to_string(), "-1/2+1/3*i");
        assert_eq!(GaussRational::i().to_string(), "1*i");
        assert_eq!(GaussRational::zero().to_string(), "0");
    }
}
