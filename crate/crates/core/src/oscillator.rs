//! The deformed oscillator `H + K`, its eight ladder pairs, lowest-weight
//! states, norms, the physical (7;8;1) basis and the intertwiners `U_i`.
//!
//! Ladder operators are stored as `sqrt 2 a` and `sqrt 2 a^+`, consistent
//! with the supercharges. States built with them are defined up to powers of
//! `sqrt 2`, which is immaterial since states are only fixed up to scale.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::check::Check;
use crate::clifford::RealMatrix;
use crate::diffop::{DiffPoly, OperatorMatrix};
use crate::error::{CoreError, Result};
use crate::f4::SuperconformalSet;
use crate::frame::{Frame, DIM};
use crate::matrix::{ExactMatrix, Matrix};
use crate::poly::ParamPoly;
use crate::scalar::{int, rat, GaussRational, Rational};
use crate::susy::PotentialVector;
use crate::wave::WaveVector;

/// Index `0..=7` used for the ladder family, where `0` stands for 8.
fn unbar(ibar: usize) -> usize {
    if ibar == 0 {
        8
    } else {
        ibar
    }
}

fn k(n: i64, d: i64) -> ParamPoly {
    ParamPoly::from_rational(rat(n, d))
}

/// `H_eps = -d^2/2 + eps x^2/2 + V/x^2`.
pub fn build_hamiltonian(eps: u8, v: &PotentialVector) -> OperatorMatrix {
    let n = v.v.len();
    let mut scalar = DiffPoly::monomial(0, 2, k(-1, 2));
    if eps != 0 {
        scalar = &scalar + &DiffPoly::monomial(2, 0, k(i64::from(eps), 2));
    }
    let mut h = OperatorMatrix::scalar(n, &scalar);
    for (r, p) in v.v.iter().enumerate() {
        let entry = h.get(r, r) + &DiffPoly::monomial(-2, 0, p.clone());
        h.set(r, r, entry);
    }
    h
}

/// Ladder operators for `Ibar = 0..=7`, all at the critical coupling.
#[derive(Debug, Clone)]
pub struct LadderSet {
    a: Vec<OperatorMatrix>,
    adag: Vec<OperatorMatrix>,
    y: Vec<Vec<Rational>>,
    e: Vec<ExactMatrix>,
    /// `H_{eps=1}`.
    pub h1: OperatorMatrix,
    pub potential: PotentialVector,
    /// `Z = {a^+, a^+}/2`, the same for every `Ibar`.
    pub z: OperatorMatrix,
}

impl LadderSet {
    /// `sqrt 2 a_Ibar`.
    pub fn a(&self, ibar: usize) -> &OperatorMatrix {
        &self.a[ibar]
    }

    /// `sqrt 2 a_Ibar^+`.
    pub fn adag(&self, ibar: usize) -> &OperatorMatrix {
        &self.adag[ibar]
    }

    /// Diagonal of `Y_Ibar`.
    pub fn y(&self, ibar: usize) -> &[Rational] {
        &self.y[ibar]
    }

    pub fn e(&self, ibar: usize) -> &ExactMatrix {
        &self.e[ibar]
    }
}

fn rational_diagonal(m: &ExactMatrix) -> Option<Vec<Rational>> {
    if !m.is_diagonal() {
        return None;
    }
    m.diagonal_entries()
        .iter()
        .map(|p| p.as_constant().filter(GaussRational::is_real).map(|g| g.re))
        .collect()
}

/// `sqrt 2 a = G G_9 d + E/x + x G G_9`, `sqrt 2 a^+ = G G_9 d + E/x - x G G_9`,
/// `Y = -[E, G G_9]`.
pub fn build_ladder(s: &SuperconformalSet, f: &Frame) -> Result<LadderSet> {
    let potential = crate::susy::hamiltonian_potential(&s.h.scale(&GaussRational::from_int(4)))?;
    let h1 = build_hamiltonian(1, &potential);
    let mut a = Vec::with_capacity(8);
    let mut adag = Vec::with_capacity(8);
    let mut y = Vec::with_capacity(8);
    let mut e = Vec::with_capacity(8);
    for ibar in 0..8 {
        let idx = unbar(ibar);
        let q = s.q(idx);
        let x_term = f.op(&[idx, 9], &DiffPoly::x_pow(1));
        a.push(q + &x_term);
        adag.push(q - &x_term);
        let ei = s.q.e(idx).clone();
        let g9 = f.product(&[idx, 9]).map(|v| ParamPoly::from_rational(v.clone()));
        let ym = -&ei.commutator(&g9);
        let diag = rational_diagonal(&ym)
            .ok_or_else(|| CoreError::Construction(format!("Y_{ibar} is not a rational diagonal matrix")))?;
        y.push(diag);
        e.push(ei);
    }
    let z = adag[0].anticommutator(&adag[0])?.scale(&GaussRational::from_ratio(1, 4));
    Ok(LadderSet {
        a,
        adag,
        y,
        e,
        h1,
        potential,
        z,
    })
}

/// Closed form of `Y_Ibar`: `(-7/3, 1/3 x7, -1/3 + 8/3 delta_{Jbar Ibar})`.
pub fn expected_y(ibar: usize) -> Vec<Rational> {
    let mut out = vec![rat(-7, 3)];
    out.extend(std::iter::repeat_n(rat(1, 3), 7));
    for jbar in 0..8 {
        out.push(if jbar == ibar { rat(7, 3) } else { rat(-1, 3) });
    }
    out
}

/// Every ladder identity, for all eight `Ibar`.
pub fn verify_ladder(l: &LadderSet) -> Result<Vec<Check>> {
    let n = DIM;
    let ident = OperatorMatrix::identity(n);
    let mut fails: [Option<String>; 7] = Default::default();
    for ibar in 0..8 {
        let (a, ad) = (l.a(ibar), l.adag(ibar));
        let ymat = ExactMatrix::diagonal(&l.y(ibar).iter().map(|v| ParamPoly::from_rational(v.clone())).collect::<Vec<_>>());
        let yop = OperatorMatrix::from_exact(&ymat, &DiffPoly::x_pow(0))?;
        let conds = [
            a.anticommutator(ad)?.scale(&GaussRational::from_ratio(1, 4)) == l.h1,
            a.commutator(ad)?.scale(&GaussRational::from_ratio(1, 2)) == &ident + &yop,
            l.y(ibar) == expected_y(ibar).as_slice(),
            a.anticommutator(&yop)?.is_zero() && ad.anticommutator(&yop)?.is_zero(),
            l.h1.commutator(ad)? == *ad && l.h1.commutator(a)? == -a,
            ad.anticommutator(ad)?.scale(&GaussRational::from_ratio(1, 4)) == l.z,
            l.z.commutator(ad)?.is_zero(),
        ];
        for (slot, ok) in fails.iter_mut().zip(conds) {
            if !ok && slot.is_none() {
                *slot = Some(format!("Ibar = {ibar}"));
            }
        }
    }
    let mut cross = None;
    'outer: for i in 0..8 {
        for j in i + 1..8 {
            if !l.adag(i).anticommutator(l.adag(j))?.is_zero() {
                cross = Some(format!("{{a_{i}^+, a_{j}^+}} != 0"));
                break 'outer;
            }
        }
    }
    let names = [
        "{a, a^+}/2 = H(eps=1)",
        "[a, a^+] = I + Y",
        "Y diagonal matches closed form",
        "{a, Y} = {a^+, Y} = 0",
        "[H, a^+] = a^+ and [H, a] = -a",
        "Z = {a^+, a^+}/2 independent of Ibar",
        "[Z, a^+] = 0",
    ];
    let mut out: Vec<Check> = names
        .iter()
        .zip(fails)
        .map(|(n, f)| Check::from_failure(*n, 8, f))
        .collect();
    out.push(Check::from_failure("{a_I^+, a_J^+} = 0 for I != J", 28, cross));
    Ok(out)
}

/// One entry of the 8x16 lowest-weight table.
#[derive(Debug, Clone, Serialize)]
pub struct LowestWeight {
    pub ibar: usize,
    /// 1-based component index.
    pub slot: usize,
    #[serde(serialize_with = "crate::scalar::as_string::serialize")]
    pub beta: Rational,
    #[serde(serialize_with = "crate::scalar::as_string::serialize")]
    pub energy: Rational,
    pub norm: NormVerdict,
    #[serde(skip)]
    pub psi: WaveVector,
}

/// Solves `a_Ibar (x^beta e^(-x^2/2) e_k) = 0` for `beta`, slot by slot.
///
/// On that ansatz the derivative and `x` terms of `a` cancel up to
/// `beta x^(beta-1) G G_9 e_k`, so column `k` of `beta G G_9 + E` must vanish.
pub fn solve_lowest_weights(l: &LadderSet, f: &Frame) -> Result<Vec<Vec<LowestWeight>>> {
    (0..8)
        .into_par_iter()
        .map(|ibar| {
            let g = f.product(&[unbar(ibar), 9]);
            let e = l.e(ibar);
            (0..DIM)
                .map(|col| {
                    let beta = column_root(&g, e, col).ok_or_else(|| {
                        CoreError::Construction(format!("no single-power lowest weight at Ibar={ibar}, slot {}", col + 1))
                    })?;
                    let psi = WaveVector::single(DIM, col, beta.clone(), GaussRational::one());
                    if !l.a(ibar).apply(&psi)?.is_zero() {
                        return Err(CoreError::Construction(format!("a_{ibar} does not annihilate slot {}", col + 1)));
                    }
                    let energy = energy_of(l, ibar, col, &psi)?;
                    Ok(LowestWeight {
                        ibar,
                        slot: col + 1,
                        beta,
                        energy,
                        norm: norm_verdict(&psi),
                        psi,
                    })
                })
                .collect()
        })
        .collect()
}

fn column_root(g: &RealMatrix, e: &ExactMatrix, col: usize) -> Option<Rational> {
    let mut beta: Option<Rational> = None;
    for r in 0..DIM {
        let gv = g.get(r, col);
        if !gv.is_zero() {
            let ev = e.get(r, col).as_constant()?;
            if !ev.is_real() {
                return None;
            }
            beta = Some(-(ev.re / gv));
        }
    }
    let beta = beta?;
    for r in 0..DIM {
        let ev = e.get(r, col).as_constant()?.re;
        if !(&beta * g.get(r, col) + ev).is_zero() {
            return None;
        }
    }
    Some(beta)
}

/// Energy from `1/2 + y_k/2`, cross-checked against `H_1 psi = E psi`.
fn energy_of(l: &LadderSet, ibar: usize, col: usize, psi: &WaveVector) -> Result<Rational> {
    let from_y = (int(1) + &l.y(ibar)[col]) / int(2);
    let direct = psi
        .ratio_of(&l.h1.apply(psi)?)
        .filter(GaussRational::is_real)
        .map(|g| g.re)
        .ok_or_else(|| CoreError::Construction(format!("lowest weight ({ibar}, {}) is not an eigenvector", col + 1)))?;
    if direct != from_y {
        return Err(CoreError::Construction(format!(
            "energy mismatch at ({ibar}, {}): {from_y} vs {direct}",
            col + 1
        )));
    }
    Ok(from_y)
}

/// Number of distinct states in the table.
pub fn distinct_states(table: &[Vec<LowestWeight>]) -> usize {
    table.iter().flatten().map(|lw| lw.psi.clone()).collect::<std::collections::HashSet<_>>().len()
}

/// Sign of `Gamma(z)` for rational `z`; `None` at a pole.
pub fn gamma_sign(z: &Rational) -> Option<i8> {
    if z.is_integer() && !z.is_positive() {
        return None;
    }
    // Gamma(z) = Gamma(z + n) / (z (z+1) ... (z+n-1)), one sign flip per negative factor
    let mut sign = 1i8;
    let mut w = z.clone();
    while w.is_negative() {
        sign = -sign;
        w += int(1);
    }
    Some(sign)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormSign {
    Positive,
    /// Divergent integral whose continued value is positive.
    DivergentPositive,
    Negative,
    /// A continued Gamma factor sits on a pole.
    Pole,
    /// Mixed signs across terms; not decided exactly.
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NormVerdict {
    pub square_integrable: bool,
    pub regularized_sign: NormSign,
}

/// Square integrability from the smallest exponent, and the sign of the
/// norm continued through `int x^(2 beta) e^(-x^2) dx = Gamma(beta + 1/2)`.
pub fn norm_verdict(psi: &WaveVector) -> NormVerdict {
    let square_integrable = psi.min_exponent().is_none_or(|b| b * int(2) > int(-1));
    if square_integrable {
        return NormVerdict {
            square_integrable,
            regularized_sign: NormSign::Positive,
        };
    }
    let mut signs = BTreeSet::new();
    for k in psi.support() {
        let comp = psi.component(k);
        if comp.len() != 1 {
            return NormVerdict {
                square_integrable,
                regularized_sign: NormSign::Indeterminate,
            };
        }
        let beta = comp.keys().next().expect("one term");
        match gamma_sign(&(beta + rat(1, 2))) {
            None => {
                return NormVerdict {
                    square_integrable,
                    regularized_sign: NormSign::Pole,
                }
            }
            Some(s) => {
                signs.insert(s);
            }
        }
    }
    let regularized_sign = match signs.into_iter().collect::<Vec<_>>().as_slice() {
        [1] => NormSign::DivergentPositive,
        [-1] => NormSign::Negative,
        _ => NormSign::Indeterminate,
    };
    NormVerdict {
        square_integrable,
        regularized_sign,
    }
}

/// A labelled physical state.
#[derive(Debug, Clone, Serialize)]
pub struct NamedState {
    pub label: String,
    #[serde(serialize_with = "crate::scalar::as_string::serialize")]
    pub energy: Rational,
    #[serde(skip)]
    pub psi: WaveVector,
}

/// `w_1..w_16 = b_1..b_7, f_0, f_1..f_7, g_0`.
#[derive(Debug, Clone)]
pub struct HilbertBasis {
    pub states: Vec<NamedState>,
}

impl HilbertBasis {
    pub fn get(&self, label: &str) -> Option<&NamedState> {
        self.states.iter().find(|s| s.label == label)
    }
}

fn eigenvalue(h: &OperatorMatrix, psi: &WaveVector) -> Result<Rational> {
    psi.ratio_of(&h.apply(psi)?)
        .filter(GaussRational::is_real)
        .map(|g| g.re)
        .ok_or_else(|| CoreError::Construction(format!("not an eigenvector: {psi}")))
}

/// `b_i = lambda_(i+1)`, `f_i = a_0^+ b_i`, `f_0 = -a_i^+ b_i`, `g_0 = a_0^+ f_0`.
pub fn build_hilbert_basis(l: &LadderSet, f: &Frame) -> Result<HilbertBasis> {
    let t = &f.tensors;
    let b: Vec<WaveVector> = (1..=7)
        .map(|i| WaveVector::single(DIM, i, rat(1, 6), GaussRational::one()))
        .collect();
    for (i, bi) in b.iter().enumerate() {
        for ibar in 0..8 {
            if !l.a(ibar).apply(bi)?.is_zero() {
                return Err(CoreError::Construction(format!("b_{} is not a lowest weight of a_{ibar}", i + 1)));
            }
        }
    }
    let fi: Vec<WaveVector> = b.iter().map(|bi| l.adag(0).apply(bi)).collect::<Result<_>>()?;
    let f0 = l.adag(1).apply(&b[0])?.scale(&GaussRational::from_int(-1));
    for i in 2..=7 {
        let other = l.adag(i).apply(&b[i - 1])?.scale(&GaussRational::from_int(-1));
        if other != f0 {
            return Err(CoreError::Construction(format!("f_0 from i=1 differs from f_0 from i={i}")));
        }
    }
    for i in 1..=7 {
        for j in 1..=7 {
            if i == j {
                continue;
            }
            let lhs = l.adag(i).apply(&b[j - 1])?;
            let mut rhs = WaveVector::zero(DIM);
            for kk in 1..=7 {
                let c = t.c3(i, j, kk);
                if c != 0 {
                    rhs = rhs.add(&fi[kk - 1].scale(&GaussRational::from_int(c.into())));
                }
            }
            if lhs != rhs {
                return Err(CoreError::Construction(format!("a_{i}^+ b_{j} != C_{i}{j}k f_k")));
            }
        }
    }
    let g0 = l.adag(0).apply(&f0)?;
    let mut states = Vec::with_capacity(16);
    let mut push = |label: String, psi: WaveVector| -> Result<()> {
        let energy = eigenvalue(&l.h1, &psi)?;
        states.push(NamedState { label, energy, psi });
        Ok(())
    };
    for (i, bi) in b.into_iter().enumerate() {
        push(format!("b_{}", i + 1), bi)?;
    }
    push("f_0".into(), f0)?;
    for (i, v) in fi.into_iter().enumerate() {
        push(format!("f_{}", i + 1), v)?;
    }
    push("g_0".into(), g0)?;
    Ok(HilbertBasis { states })
}

/// Signed-permutation intertwiners `U_i` mapping the `i`-th ladder onto the `0`-th.
#[derive(Debug, Clone)]
pub struct Intertwiners {
    /// Chosen `U_i`, `i = 1..=7`.
    pub u: Vec<RealMatrix>,
    /// Number of solutions found for each `i`.
    pub solution_counts: Vec<usize>,
}

/// The reference `U_1`, as `(row, col, sign)` 1-based.
pub const REFERENCE_U1: [(usize, usize, i8); 16] = [
    (1, 1, 1),
    (2, 2, 1),
    (3, 3, 1),
    (4, 4, 1),
    (5, 8, -1),
    (6, 7, 1),
    (7, 6, -1),
    (8, 5, 1),
    (9, 10, 1),
    (10, 9, -1),
    (11, 12, 1),
    (12, 11, -1),
    (13, 13, 1),
    (14, 14, 1),
    (15, 15, 1),
    (16, 16, 1),
];

pub fn reference_u1() -> RealMatrix {
    let mut m = RealMatrix::zeros(DIM, DIM);
    for (r, c, s) in REFERENCE_U1 {
        m[(r - 1, c - 1)] = Rational::from_integer(s.into());
    }
    m
}

fn block(m: &ExactMatrix, r0: usize, c0: usize) -> Matrix<Rational> {
    Matrix::from_fn(8, 8, |r, c| m.get(r0 + r, c0 + c).as_constant().expect("constant").re)
}

/// Integer rescaling of two rational matrices by their common denominator.
fn integer_pair(m: &Matrix<Rational>, t: &Matrix<Rational>) -> Result<(Vec<i64>, Vec<i64>)> {
    let den = m
        .entries()
        .iter()
        .chain(t.entries())
        .fold(num_bigint::BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
    let scale = |x: &Rational| -> Result<i64> {
        let v = x * Rational::from_integer(den.clone());
        i64::try_from(v.to_integer()).map_err(|_| CoreError::Construction("intertwiner block too large".into()))
    };
    let conv = |a: &Matrix<Rational>| a.entries().iter().map(scale).collect::<Result<Vec<_>>>();
    Ok((conv(m)?, conv(t)?))
}

/// Signed permutations `A` (column `r` sent to row `perm[r]` with sign
/// `signs[r]`) satisfying `A M A^T = T`, with slot 0 fixed up to sign as
/// `[U, V] = 0` requires. Returns the solution count and the first solution.
fn search_blocks(m: &[i64], t: &[i64]) -> (usize, Option<([usize; 8], [i64; 8])>) {
    struct State<'a> {
        m: &'a [i64],
        t: &'a [i64],
        perm: [usize; 8],
        signs: [i64; 8],
        used: [bool; 8],
        count: usize,
        first: Option<([usize; 8], [i64; 8])>,
    }
    fn consistent(s: &State, r: usize) -> bool {
        (0..=r).all(|c| {
            let sg = s.signs[r] * s.signs[c];
            s.m[r * 8 + c] * sg == s.t[s.perm[r] * 8 + s.perm[c]] && s.m[c * 8 + r] * sg == s.t[s.perm[c] * 8 + s.perm[r]]
        })
    }
    fn go(s: &mut State, r: usize) {
        if r == 8 {
            s.count += 1;
            if s.first.is_none() {
                s.first = Some((s.perm, s.signs));
            }
            return;
        }
        let range = if r == 0 { 0..1 } else { 1..8 };
        for p in range {
            if s.used[p] {
                continue;
            }
            for sg in [1, -1] {
                s.perm[r] = p;
                s.signs[r] = sg;
                if consistent(s, r) {
                    s.used[p] = true;
                    go(s, r + 1);
                    s.used[p] = false;
                }
            }
        }
    }
    let mut st = State {
        m,
        t,
        perm: [0; 8],
        signs: [0; 8],
        used: [false; 8],
        count: 0,
        first: None,
    };
    go(&mut st, 0);
    (st.count, st.first)
}

/// `U = diag(A, A g_i)` from the bosonic block `A`.
fn assemble(a: &Matrix<Rational>, gi: &RealMatrix) -> RealMatrix {
    let b = a * gi;
    Matrix::from_fn(DIM, DIM, |r, c| match (r < 8, c < 8) {
        (true, true) => a.get(r, c).clone(),
        (false, false) => b.get(r - 8, c - 8).clone(),
        _ => Rational::zero(),
    })
}

/// Searches block-diagonal signed permutations `U = diag(A, B)`.
///
/// `U G_i U^T = G_8` forces `B = A g_i`, and `E` is block-antidiagonal, so
/// `U E_i U^T = E_8` reduces to `A (e_i g_i^T) A^T = e_8` on the upper-right
/// blocks. The search counts every `A` meeting that and the `V` constraint;
/// the chosen `U_i` is then checked against all conditions on the full
/// matrices. For `i = 1` the reference matrix is chosen if it qualifies.
pub fn build_intertwiners(l: &LadderSet, f: &Frame) -> Result<Intertwiners> {
    let v = ExactMatrix::diagonal(&l.potential.v);
    let target = block(l.e(0), 0, 8);
    let results: Vec<Result<(RealMatrix, usize)>> = (1..=7)
        .into_par_iter()
        .map(|i| {
            let gi = f.small.get(i);
            let m = &block(l.e(i), 0, 8) * &gi.transpose();
            let (mi, ti) = integer_pair(&m, &target)?;
            let (count, first) = search_blocks(&mi, &ti);
            let reference = reference_u1();
            let reference_block = block(&exact_of(&reference), 0, 0);
            let (ri, _) = integer_pair(&(&(&reference_block * &m) * &reference_block.transpose()), &target)?;
            let chosen = if i == 1 && ri == ti && assemble(&reference_block, gi) == reference {
                reference
            } else {
                let (perm, signs) = first.ok_or_else(|| CoreError::Construction(format!("no intertwiner for i={i}")))?;
                let a = Matrix::from_fn(8, 8, |r, c| {
                    if perm[c] == r {
                        Rational::from_integer(signs[c].into())
                    } else {
                        Rational::zero()
                    }
                });
                assemble(&a, gi)
            };
            if !intertwines(&chosen, l, f, i, &v)? {
                return Err(CoreError::Construction(format!("U_{i} fails the full conditions")));
            }
            Ok((chosen, count))
        })
        .collect();
    let mut u = Vec::new();
    let mut solution_counts = Vec::new();
    for r in results {
        let (m, c) = r?;
        u.push(m);
        solution_counts.push(c);
    }
    Ok(Intertwiners { u, solution_counts })
}

fn exact_of(m: &RealMatrix) -> ExactMatrix {
    m.map(|x| ParamPoly::from_rational(x.clone()))
}

/// `U G_i U^T = G_8`, `U E_i U^T = E_8`, `U Y_i U^T = Y_8`, `[U, V] = 0`, `U U^T = I`.
pub fn intertwines(u: &RealMatrix, l: &LadderSet, f: &Frame, i: usize, v: &ExactMatrix) -> Result<bool> {
    let ut = u.transpose();
    let conj = |m: &RealMatrix| &(u * m) * &ut;
    if conj(f.gamma(i)) != *f.gamma(8) || &(u * &ut) != &RealMatrix::identity(DIM) {
        return Ok(false);
    }
    let ue = exact_of(u);
    let uet = exact_of(&ut);
    let conj_e = |m: &ExactMatrix| &(&ue * m) * &uet;
    let y = |ibar: usize| ExactMatrix::diagonal(&l.y(ibar).iter().map(|x| ParamPoly::from_rational(x.clone())).collect::<Vec<_>>());
    Ok(conj_e(l.e(i)) == *l.e(0) && conj_e(&y(i)) == y(0) && ue.commutator(v).is_zero())
}

/// `U_i a_i U_i^+ = a_0` and `U_i a_i^+ U_i^+ = a_0^+`.
pub fn verify_intertwiner_action(u: &RealMatrix, l: &LadderSet, i: usize) -> Result<bool> {
    let uo = OperatorMatrix::from_matrix(u, &DiffPoly::x_pow(0));
    let uto = OperatorMatrix::from_matrix(&u.transpose(), &DiffPoly::x_pow(0));
    let a = uo.compose(l.a(i))?.compose(&uto)?;
    let ad = uo.compose(l.adag(i))?.compose(&uto)?;
    Ok(a == *l.a(0) && ad == *l.adag(0))
}
