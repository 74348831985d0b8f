//! The octonionic-covariant, scale-invariant N=8 supercharge ansatz, its
//! closure conditions, solution branches and diagonal potentials.
//!
//! Supercharges are stored multiplied by `sqrt 2`, so `q_I = sqrt 2 Q_I` and
//! every bilinear relation picks up a factor `1/2`: `{Q_I, Q_J} = {q_I, q_J}/2`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::diffop::{DiffPoly, OperatorMatrix};
use crate::error::{CoreError, Result};
use crate::frame::{Frame, DIM};
use crate::matrix::ExactMatrix;
use crate::poly::{Generator, ParamPoly};
use crate::scalar::{rat, GaussRational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    First,
    Second,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::First, Branch::Second];

    /// `+1` for the first branch, `-1` for the second.
    fn sign(self) -> i64 {
        match self {
            Branch::First => 1,
            Branch::Second => -1,
        }
    }

    /// `d = +-c/3`.
    pub fn d_of_c(self) -> ParamPoly {
        c().scale(&GaussRational::from_ratio(self.sign(), 3))
    }

    /// `e = -+1/2 + 6c`.
    pub fn e_of_c(self) -> ParamPoly {
        &k(-self.sign(), 2) + &c().scale(&GaussRational::from_int(6))
    }

    pub fn name(self) -> &'static str {
        match self {
            Branch::First => "first",
            Branch::Second => "second",
        }
    }
}

impl std::str::FromStr for Branch {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "first" => Ok(Branch::First),
            "second" => Ok(Branch::Second),
            other => Err(format!("unknown branch `{other}` (expected first|second)")),
        }
    }
}

fn c() -> ParamPoly {
    ParamPoly::generator(Generator::C)
}

fn k(n: i64, d: i64) -> ParamPoly {
    ParamPoly::from_rational(rat(n, d))
}

/// Values of `a, b, c, d, e`: formal generators, polynomials in `c`, or rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnsatzParams {
    pub a: ParamPoly,
    pub b: ParamPoly,
    pub c: ParamPoly,
    pub d: ParamPoly,
    pub e: ParamPoly,
}

impl AnsatzParams {
    pub fn formal() -> Self {
        Self {
            a: ParamPoly::generator(Generator::A),
            b: ParamPoly::generator(Generator::B),
            c: c(),
            d: ParamPoly::generator(Generator::D),
            e: ParamPoly::generator(Generator::E),
        }
    }

    /// `d` and `e` fixed by the branch; `a, b, c` formal.
    pub fn on_branch(br: Branch) -> Self {
        Self {
            d: br.d_of_c(),
            e: br.e_of_c(),
            ..Self::formal()
        }
    }

    /// Branch relations plus `a = -c/3`, `b = e`: everything is a polynomial in `c`.
    pub fn n8(br: Branch) -> Self {
        let e = br.e_of_c();
        Self {
            a: c().scale(&GaussRational::from_ratio(-1, 3)),
            b: e.clone(),
            c: c(),
            d: br.d_of_c(),
            e,
        }
    }

    pub fn values(a: Rational, b: Rational, c: Rational, d: Rational, e: Rational) -> Self {
        Self {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
            e: e.into(),
        }
    }

    /// Substitutes a rational value for `c`.
    pub fn at_c(&self, value: &Rational) -> Self {
        let mut asg = BTreeMap::new();
        asg.insert(Generator::C, value.clone());
        let s = |p: &ParamPoly| p.substitute_values(&asg);
        Self {
            a: s(&self.a),
            b: s(&self.b),
            c: s(&self.c),
            d: s(&self.d),
            e: s(&self.e),
        }
    }

    /// The five values, if all are rational constants.
    pub fn as_rationals(&self) -> Option<[Rational; 5]> {
        let r = |p: &ParamPoly| p.as_constant().filter(GaussRational::is_real).map(|g| g.re);
        Some([r(&self.a)?, r(&self.b)?, r(&self.c)?, r(&self.d)?, r(&self.e)?])
    }
}

/// The eight `q_I = sqrt 2 Q_I` together with their potential parts `E_I`.
#[derive(Debug, Clone)]
pub struct Supercharges {
    q: Vec<OperatorMatrix>,
    e: Vec<ExactMatrix>,
}

impl Supercharges {
    /// `q_I`, `I = 1..=8`.
    pub fn q(&self, i: usize) -> &OperatorMatrix {
        &self.q[i - 1]
    }

    /// `q_Ibar` with `0 -> 8`.
    pub fn q_bar(&self, ibar: usize) -> &OperatorMatrix {
        self.q(if ibar == 0 { 8 } else { ibar })
    }

    /// `E_I`, `I = 1..=8`.
    pub fn e(&self, i: usize) -> &ExactMatrix {
        &self.e[i - 1]
    }

    pub fn e_bar(&self, ibar: usize) -> &ExactMatrix {
        self.e(if ibar == 0 { 8 } else { ibar })
    }

    pub fn all(&self) -> &[OperatorMatrix] {
        &self.q
    }

    /// `q_i -> -q_i`, `E_i -> -E_i`.
    pub fn negate(&self, i: usize) -> Self {
        let mut out = self.clone();
        out.q[i - 1] = -&out.q[i - 1];
        out.e[i - 1] = -&out.e[i - 1];
        out
    }

    pub fn substitute_values(&self, asg: &BTreeMap<Generator, Rational>) -> Self {
        Self {
            q: self.q.iter().map(|q| q.substitute_values(asg)).collect(),
            e: self
                .e
                .iter()
                .map(|m| m.map(|p| p.substitute_values(asg)))
                .collect(),
        }
    }
}

fn exact(m: &crate::clifford::RealMatrix) -> ExactMatrix {
    m.map(|x| ParamPoly::from_rational(x.clone()))
}

/// `E_8 = a C_ijk G_i G_j G_k G_9 + b G_8` and
/// `E_i = c C_ijk G_j G_k G_8 G_9 + d C_ijkl G_j G_k G_l G_9 + e G_i`.
pub fn potential_matrices(p: &AnsatzParams, f: &Frame) -> Vec<ExactMatrix> {
    let t = &f.tensors;
    let zero = crate::clifford::RealMatrix::zeros(DIM, DIM);
    let mut out = Vec::with_capacity(8);
    for i in 1..=7 {
        let mut cterm = zero.clone();
        let mut dterm = zero.clone();
        for j in 1..=7 {
            for kk in 1..=7 {
                let s = t.c3(i, j, kk);
                if s != 0 {
                    let m = f.product(&[j, kk, 8, 9]);
                    cterm = &cterm + &m.scale(&Rational::from_integer(s.into()));
                }
                for l in 1..=7 {
                    let s = t.c4(i, j, kk, l);
                    if s != 0 {
                        let m = f.product(&[j, kk, l, 9]);
                        dterm = &dterm + &m.scale(&Rational::from_integer(s.into()));
                    }
                }
            }
        }
        let e = &(&exact(&cterm).scale(&p.c) + &exact(&dterm).scale(&p.d))
            + &exact(f.gamma(i)).scale(&p.e);
        out.push(e);
    }
    let mut aterm = zero;
    for i in 1..=7 {
        for j in 1..=7 {
            for kk in 1..=7 {
                let s = t.c3(i, j, kk);
                if s != 0 {
                    let m = f.product(&[i, j, kk, 9]);
                    aterm = &aterm + &m.scale(&Rational::from_integer(s.into()));
                }
            }
        }
    }
    out.push(&exact(&aterm).scale(&p.a) + &exact(f.gamma(8)).scale(&p.b));
    out
}

/// `q_I = G_I G_9 d + E_I / x`.
pub fn build_supercharges(p: &AnsatzParams, f: &Frame) -> Result<Supercharges> {
    let e = potential_matrices(p, f);
    let mut q = Vec::with_capacity(8);
    for (idx, ei) in e.iter().enumerate() {
        let i = idx + 1;
        let kinetic = f.op(&[i, 9], &DiffPoly::d(1));
        let potential = OperatorMatrix::from_exact(ei, &DiffPoly::x_pow(-1))?;
        q.push(&kinetic + &potential);
    }
    Ok(Supercharges { q, e })
}

fn nonzero_coefficients(op: &OperatorMatrix) -> Vec<ParamPoly> {
    op.coefficients().into_iter().filter(|c| !c.is_zero()).collect()
}

#[derive(Debug, Clone)]
pub struct ClosureConstraints {
    /// Coefficients of `{q_i, q_j}`, `i != j` in `1..=7`.
    pub off_diagonal: Vec<ParamPoly>,
    /// Coefficients of `{q_i, q_i} - {q_1, q_1}` and of the parts of
    /// `{q_1, q_1}` not of the form `-2 d^2 I + 4 V / x^2` with `V` diagonal.
    pub hamiltonian_shape: Vec<ParamPoly>,
}

impl ClosureConstraints {
    pub fn all(&self) -> impl Iterator<Item = &ParamPoly> {
        self.off_diagonal.iter().chain(&self.hamiltonian_shape)
    }
}

fn non_hamiltonian_part(sq: &OperatorMatrix) -> OperatorMatrix {
    let mut rest = sq.clone();
    for r in 0..DIM {
        let mut entry = rest.get(r, r).clone();
        let v = entry.coefficient(-2, 0);
        entry = &entry - &DiffPoly::monomial(-2, 0, v);
        entry = &entry + &DiffPoly::monomial(0, 2, k(2, 1));
        rest.set(r, r, entry);
    }
    rest
}

/// Vanishing conditions from `{Q_i, Q_j} = 2 delta_ij H` among the seven `Q_i`.
pub fn closure_constraints(q: &Supercharges) -> Result<ClosureConstraints> {
    let mut off_diagonal = Vec::new();
    for i in 1..=7 {
        for j in i + 1..=7 {
            off_diagonal.extend(nonzero_coefficients(&q.q(i).anticommutator(q.q(j))?));
        }
    }
    let sq1 = q.q(1).anticommutator(q.q(1))?;
    let mut hamiltonian_shape = nonzero_coefficients(&non_hamiltonian_part(&sq1));
    for i in 2..=7 {
        let sq = q.q(i).anticommutator(q.q(i))?;
        hamiltonian_shape.extend(nonzero_coefficients(&(&sq - &sq1)));
    }
    Ok(ClosureConstraints {
        off_diagonal,
        hamiltonian_shape,
    })
}

/// Diagonal of `V` in `H = -d^2/2 + V/x^2`, possibly polynomial in the parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PotentialVector {
    pub v: Vec<ParamPoly>,
}

impl PotentialVector {
    pub fn as_rationals(&self) -> Option<Vec<Rational>> {
        self.v
            .iter()
            .map(|p| p.as_constant().filter(GaussRational::is_real).map(|g| g.re))
            .collect()
    }

    pub fn at_c(&self, value: &Rational) -> Self {
        let mut asg = BTreeMap::new();
        asg.insert(Generator::C, value.clone());
        Self {
            v: self.v.iter().map(|p| p.substitute_values(&asg)).collect(),
        }
    }

    /// Bosonic sum minus fermionic sum.
    pub fn supertrace(&self) -> ParamPoly {
        let half = self.v.len() / 2;
        self.v
            .iter()
            .enumerate()
            .fold(ParamPoly::zero(), |acc, (r, p)| if r < half { &acc + p } else { &acc - p })
    }

    pub fn matrix(&self) -> ExactMatrix {
        ExactMatrix::diagonal(&self.v)
    }
}

/// Reads `V` off `H = {q, q}/4 = -d^2/2 + V/x^2`.
pub fn hamiltonian_potential(sq: &OperatorMatrix) -> Result<PotentialVector> {
    let mut v = Vec::with_capacity(DIM);
    for r in 0..DIM {
        for c in 0..DIM {
            let entry = sq.get(r, c);
            if r != c {
                if !entry.is_zero() {
                    return Err(CoreError::Construction(format!(
                        "off-diagonal entry ({},{}) in {{q,q}}: {entry}",
                        r + 1,
                        c + 1
                    )));
                }
                continue;
            }
            let lap = entry.coefficient(0, 2);
            let pot = entry.coefficient(-2, 0);
            let rest = &(entry - &DiffPoly::monomial(0, 2, lap.clone())) - &DiffPoly::monomial(-2, 0, pot.clone());
            if lap != k(-2, 1) || !rest.is_zero() {
                return Err(CoreError::Construction(format!(
                    "diagonal entry {} of {{q,q}} is not -2 d^2 + w/x^2: {entry}",
                    r + 1
                )));
            }
            v.push(pot.scale(&GaussRational::from_ratio(1, 4)));
        }
    }
    Ok(PotentialVector { v })
}

/// `V(c)` on a branch, read from `{Q_1, Q_1} = 2H`.
pub fn potential_from_branch(br: Branch, f: &Frame) -> Result<PotentialVector> {
    let q = build_supercharges(&AnsatzParams::on_branch(br), f)?;
    hamiltonian_potential(&q.q(1).anticommutator(q.q(1))?)
}

/// The closed-form potential `V(c)` on each branch, for comparison.
pub fn expected_potential(br: Branch) -> PotentialVector {
    let c = c();
    let c2 = &c * &c;
    let base = &k(-1, 8) + &c2.scale(&GaussRational::from_int(32));
    let plus = &(&k(3, 8) + &c.scale(&GaussRational::from_int(8))) + &c2.scale(&GaussRational::from_int(32));
    let minus = &(&k(3, 8) - &c.scale(&GaussRational::from_int(8))) + &c2.scale(&GaussRational::from_int(32));
    let mut v = Vec::with_capacity(DIM);
    match br {
        Branch::First => {
            v.extend(std::iter::repeat_n(base, 8));
            v.push(plus);
            v.extend(std::iter::repeat_n(minus, 7));
        }
        Branch::Second => {
            v.push(minus);
            v.extend(std::iter::repeat_n(plus, 7));
            v.extend(std::iter::repeat_n(base, 8));
        }
    }
    PotentialVector { v }
}

#[derive(Debug, Clone)]
pub struct N8Check {
    pub params: AnsatzParams,
    pub supercharges: Supercharges,
    pub residuals: Vec<ParamPoly>,
    pub hamiltonian_agrees: bool,
}

/// Imposes `a = -c/3`, `b = e` and checks `{Q_8, Q_i} = 0`, `{Q_8, Q_8} = {Q_1, Q_1}`.
pub fn impose_n8(br: Branch, f: &Frame) -> Result<N8Check> {
    let params = AnsatzParams::n8(br);
    let q = build_supercharges(&params, f)?;
    let mut residuals = Vec::new();
    for i in 1..=7 {
        residuals.extend(nonzero_coefficients(&q.q(8).anticommutator(q.q(i))?));
    }
    let sq8 = q.q(8).anticommutator(q.q(8))?;
    let sq1 = q.q(1).anticommutator(q.q(1))?;
    let hamiltonian_agrees = sq8 == sq1;
    if !residuals.is_empty() || !hamiltonian_agrees {
        return Err(CoreError::Construction(format!(
            "N=8 closure fails on branch {}: {} residuals",
            br.name(),
            residuals.len()
        )));
    }
    Ok(N8Check {
        params,
        supercharges: q,
        residuals,
        hamiltonian_agrees,
    })
}

/// `H = -d^2/2 + V/x^2` as an operator.
pub fn hamiltonian_from_potential(v: &PotentialVector) -> Result<OperatorMatrix> {
    let mut h = OperatorMatrix::scalar(DIM, &DiffPoly::monomial(0, 2, k(-1, 2)));
    for (r, p) in v.v.iter().enumerate() {
        let entry = h.get(r, r) + &DiffPoly::monomial(-2, 0, p.clone());
        h.set(r, r, entry);
    }
    Ok(h)
}

pub fn one() -> ParamPoly {
    ParamPoly::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn frame() -> Frame {
        Frame::new().unwrap()
    }

    #[test]
    fn e8_reduces_to_gamma8() {
        let f = frame();
        let p = AnsatzParams::values(int(0), int(1), int(0), int(0), int(0));
        let e = potential_matrices(&p, &f);
        assert_eq!(e[7], exact(f.gamma(8)));
    }

    #[test]
    fn supercharges_are_odd_and_hermitian() {
        let f = frame();
        let p = AnsatzParams::values(rat(1, 5), rat(-2, 3), rat(3, 7), rat(1, 11), rat(5, 2));
        let q = build_supercharges(&p, &f).unwrap();
        for i in 1..=8 {
            assert_eq!(q.q(i).grading().unwrap(), crate::diffop::Grading::Odd);
            assert_eq!(q.q(i).adjoint(), *q.q(i), "Q_{i}");
        }
    }

    #[test]
    fn branches_solve_off_diagonal_closure() {
        let f = frame();
        for br in Branch::BOTH {
            let q = build_supercharges(&AnsatzParams::on_branch(br), &f).unwrap();
            let cons = closure_constraints(&q).unwrap();
            assert!(cons.off_diagonal.is_empty(), "{br:?}: {:?}", cons.off_diagonal.first());
        }
    }

    #[test]
    fn generic_parameters_leave_residuals() {
        let f = frame();
        let p = AnsatzParams::values(int(1), int(1), int(1), int(1), int(1));
        let q = build_supercharges(&p, &f).unwrap();
        assert!(!q.q(1).anticommutator(q.q(2)).unwrap().is_zero());
    }

    #[test]
    fn branch_potentials_match_closed_forms() {
        let f = frame();
        for br in Branch::BOTH {
            assert_eq!(potential_from_branch(br, &f).unwrap(), expected_potential(br));
        }
        let v = potential_from_branch(Branch::First, &f).unwrap().at_c(&int(0));
        assert_eq!(v.as_rationals().unwrap()[8], rat(3, 8));
    }

    #[test]
    fn n8_condition() {
        let f = frame();
        for br in Branch::BOTH {
            let check = impose_n8(br, &f).unwrap();
            assert!(check.residuals.is_empty());
            assert!(check.hamiltonian_agrees);
        }
        // without a = -c/3, b = e the Q_8 / Q_1 bracket survives at c = 1
        let p = AnsatzParams::on_branch(Branch::Second).at_c(&int(1));
        let q = build_supercharges(&p, &f).unwrap();
        let br = q.q(8).anticommutator(q.q(1)).unwrap();
        assert!(!br.is_zero());
    }
}
