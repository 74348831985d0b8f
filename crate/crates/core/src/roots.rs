//! Rational-root enumeration for univariate parameter polynomials.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{CoreError, Result};
use crate::poly::{Generator, ParamPoly};
use crate::scalar::{GaussRational, Rational};

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn eval(coeffs: &[GaussRational], x: &Rational) -> GaussRational {
    let x = GaussRational::real(x.clone());
    coeffs
        .iter()
        .rev()
        .fold(GaussRational::zero(), |acc, c| &(&acc * &x) + c)
}

/// Integer coefficients of `coeffs` scaled by the lcm of their denominators.
fn primitive_integer_form(coeffs: &[Rational]) -> Vec<BigInt> {
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

/// All rational roots of a polynomial in one generator, ascending.
///
/// Complex coefficients are allowed; a root must then annihilate both the real
/// and imaginary parts. Every returned root is checked by substitution.
pub fn rational_roots(p: &ParamPoly) -> Result<Vec<Rational>> {
    if p.is_zero() {
        return Err(CoreError::IdenticallyZero);
    }
    let gens = p.generators();
    let g = match gens.as_slice() {
        [] => return Ok(Vec::new()),
        [g] => *g,
        _ => return Err(CoreError::NotUnivariate(p.to_string())),
    };
    let coeffs = p.univariate_coefficients(g)?;
    let re: Vec<Rational> = coeffs.iter().map(|c| c.re.clone()).collect();
    let part = if re.iter().all(Zero::is_zero) {
        coeffs.iter().map(|c| c.im.clone()).collect()
    } else {
        re
    };
    let ints = primitive_integer_form(&part);
    let lowest = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let highest = ints.iter().rposition(|c| !c.is_zero()).unwrap_or(0);

    let mut roots = Vec::new();
    if lowest > 0 {
        roots.push(Rational::zero());
    }
    if highest > lowest {
        let leading = &ints[highest];
        let trailing = &ints[lowest];
        for num in divisors(trailing) {
            for den in divisors(leading) {
                for sign in [1, -1] {
                    let cand = Rational::new(&num * sign, den.clone());
                    if eval(&coeffs, &cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots.retain(|r| eval(&coeffs, r).is_zero());
    Ok(roots)
}

/// Evaluates a univariate polynomial at a rational point of its generator.
pub fn substitute_root(p: &ParamPoly, g: Generator, value: &Rational) -> ParamPoly {
    let mut asg = BTreeMap::new();
    asg.insert(g, value.clone());
    p.substitute_values(&asg)
}
