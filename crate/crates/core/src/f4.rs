//! Superconformal extension: `Qt_I`, `D`, `K`, the R-symmetry generators,
//! the critical coupling and the full set of structure relations.
//!
//! Odd generators are stored scaled by `sqrt 2` (see [`crate::susy`]). Even
//! generators are stored unscaled, so `{Q_I, Qt_J} = {q_I, qt_J} / 2`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::check::Check;
use crate::clifford::RealMatrix;
use crate::diffop::{DiffPoly, OperatorMatrix};
use crate::error::{CoreError, Result};
use crate::frame::{Frame, DIM};
use crate::linalg::{rank, SparseVec, SpanSolver};
use crate::matrix::ExactMatrix;
use crate::poly::{Generator, ParamPoly};
use crate::roots::rational_roots;
use crate::scalar::{rat, GaussRational, Rational};
use crate::susy::{build_supercharges, AnsatzParams, Branch, Supercharges};

fn half() -> GaussRational {
    GaussRational::from_ratio(1, 2)
}

fn i_times(n: i64, d: i64) -> GaussRational {
    GaussRational::new(Rational::zero(), rat(n, d))
}

fn exact(m: &RealMatrix) -> ExactMatrix {
    m.map(|x| ParamPoly::from_rational(x.clone()))
}

fn constant_op(m: &ExactMatrix) -> OperatorMatrix {
    OperatorMatrix::from_exact(m, &DiffPoly::x_pow(0)).expect("constant scaling cannot overflow")
}

/// `H, D, K`, eight `q_I = sqrt 2 Q_I`, eight `qt_I = sqrt 2 Qt_I`, and `R_IJ`.
#[derive(Debug, Clone)]
pub struct SuperconformalSet {
    pub branch: Branch,
    pub params: AnsatzParams,
    pub h: OperatorMatrix,
    pub d: OperatorMatrix,
    pub k: OperatorMatrix,
    pub q: Supercharges,
    qt: Vec<OperatorMatrix>,
    r: Vec<ExactMatrix>,
}

impl SuperconformalSet {
    pub fn q(&self, i: usize) -> &OperatorMatrix {
        self.q.q(i)
    }

    pub fn qt(&self, i: usize) -> &OperatorMatrix {
        &self.qt[i - 1]
    }

    /// `R_IJ` as a constant matrix, `I, J = 1..=8`, with `R_II = 0`.
    pub fn r(&self, i: usize, j: usize) -> &ExactMatrix {
        &self.r[(i - 1) * 8 + (j - 1)]
    }

    pub fn r_op(&self, i: usize, j: usize) -> OperatorMatrix {
        constant_op(self.r(i, j))
    }

    /// The automorphism `Q_8 -> -Q_8`, `Qt_8 -> -Qt_8`, `R_i8 -> -R_i8`.
    pub fn reflect_index8(&self) -> Self {
        let mut out = self.clone();
        out.q = self.q.negate(8);
        out.qt[7] = -&self.qt[7];
        for i in 1..=7 {
            for (a, b) in [(i, 8), (8, i)] {
                let slot = (a - 1) * 8 + (b - 1);
                out.r[slot] = -&self.r[slot];
            }
        }
        out
    }
}

/// `qt_I = i x G_I G_9`.
pub fn build_qtilde(f: &Frame, i: usize) -> OperatorMatrix {
    f.op(&[i, 9], &DiffPoly::monomial(1, 0, ParamPoly::constant(GaussRational::i())))
}

/// Assembles every generator and checks the defining anticommutators.
pub fn build_superconformal(params: &AnsatzParams, branch: Branch, f: &Frame) -> Result<SuperconformalSet> {
    let q = build_supercharges(params, f)?;
    let qt: Vec<OperatorMatrix> = (1..=8).map(|i| build_qtilde(f, i)).collect();
    let fail = |msg: String| Err(CoreError::Construction(msg));

    let quarter = GaussRational::from_ratio(1, 4);
    let h = q.q(1).anticommutator(q.q(1))?.scale(&quarter);
    let k = qt[0].anticommutator(&qt[0])?.scale(&quarter);
    let d = q.q(1).anticommutator(&qt[0])?.scale(&half());

    let k_expected = OperatorMatrix::scalar(DIM, &DiffPoly::monomial(2, 0, ParamPoly::from_rational(rat(1, 2))));
    if k != k_expected {
        return fail(format!("K is not x^2/2: {k}"));
    }
    let d_expected = OperatorMatrix::scalar(
        DIM,
        &(&DiffPoly::monomial(1, 1, ParamPoly::constant(i_times(-1, 1))) + &DiffPoly::constant(ParamPoly::constant(i_times(-1, 2)))),
    );
    if d != d_expected {
        return fail(format!("D is not -i(x d + 1/2): {d}"));
    }

    let mut r = Vec::with_capacity(64);
    for a in 1..=8 {
        for b in 1..=8 {
            let tt = qt[a - 1].anticommutator(&qt[b - 1])?;
            let expected = if a == b { k.scale(&GaussRational::from_int(4)) } else { OperatorMatrix::zeros(DIM) };
            if tt != expected {
                return fail(format!("{{Qt_{a}, Qt_{b}}} != 2 delta K"));
            }
            let qq = q.q(a).anticommutator(q.q(b))?;
            let expected = if a == b { h.scale(&GaussRational::from_int(4)) } else { OperatorMatrix::zeros(DIM) };
            if qq != expected {
                return fail(format!("{{Q_{a}, Q_{b}}} != 2 delta H"));
            }
            let mixed = q.q(a).anticommutator(&qt[b - 1])?.scale(&half());
            if a == b {
                if mixed != d {
                    return fail(format!("{{Q_{a}, Qt_{a}}} != D"));
                }
                r.push(ExactMatrix::zeros(DIM, DIM));
                continue;
            }
            let Some(rm) = mixed.constant_part() else {
                return fail(format!("R_{a}{b} is not a constant matrix: {mixed}"));
            };
            // (i/2)(-G_a G_b + {E_a, G_b G_9})
            let gb9 = exact(&f.product(&[b, 9]));
            let formula = (&(-&exact(&f.product(&[a, b]))) + &q.e(a).anticommutator(&gb9))
                .scale(&ParamPoly::constant(i_times(1, 2)));
            if rm != formula {
                return fail(format!("R_{a}{b} differs from its closed form"));
            }
            r.push(rm);
        }
    }
    for a in 1..=8 {
        for b in 1..=8 {
            let sum = &r[(a - 1) * 8 + b - 1] + &r[(b - 1) * 8 + a - 1];
            if !sum.is_zero() {
                return fail(format!("R_{a}{b} + R_{b}{a} != 0"));
            }
        }
    }
    Ok(SuperconformalSet {
        branch,
        params: params.clone(),
        h,
        d,
        k,
        q,
        qt,
        r,
    })
}

/// Residuals of `[R_IJ, Q_K]` against its orthogonal projection onto span{Q_L}.
///
/// The derivative part of each `q_L` is the signed permutation `G_L G_9`, and
/// these are Frobenius-orthogonal with squared norm 16, so the projection
/// coefficients are traces.
pub fn rq_span_residuals(s: &SuperconformalSet, f: &Frame) -> Result<Vec<ParamPoly>> {
    let kin: Vec<RealMatrix> = (1..=8).map(|l| f.product(&[l, 9])).collect();
    let inv16 = GaussRational::from_ratio(1, 16);
    let pairs: Vec<(usize, usize, usize)> = (1..=8)
        .flat_map(|i| (i + 1..=8).flat_map(move |j| (1..=8).map(move |k| (i, j, k))))
        .collect();
    let chunks: Vec<Result<Vec<ParamPoly>>> = pairs
        .par_iter()
        .map(|&(i, j, k)| {
            let br = s.r_op(i, j).commutator(s.q(k))?;
            let mut rest = br.clone();
            for (l, g) in kin.iter().enumerate() {
                let mut alpha = ParamPoly::zero();
                for r in 0..DIM {
                    for c in 0..DIM {
                        let gv = g.get(r, c);
                        if !gv.is_zero() {
                            let entry = br.get(r, c).coefficient(0, 1);
                            alpha = &alpha + &entry.scale(&GaussRational::real(gv.clone()));
                        }
                    }
                }
                if alpha.is_zero() {
                    continue;
                }
                let alpha = alpha.scale(&inv16);
                rest = &rest - &s.q(l + 1).scale_poly(&alpha)?;
            }
            Ok(rest.coefficients())
        })
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for chunk in chunks {
        for p in chunk? {
            if seen.insert(p.to_string()) {
                out.push(p);
            }
        }
    }
    Ok(out)
}

fn r_basis_vectors(s: &SuperconformalSet, upper: usize) -> Vec<SparseVec<(usize, usize)>> {
    let mut out = Vec::new();
    for i in 1..=upper {
        for j in i + 1..=upper {
            out.push(matrix_sparse(s.r(i, j)));
        }
    }
    out
}

fn matrix_sparse(m: &ExactMatrix) -> SparseVec<(usize, usize)> {
    let mut v = SparseVec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let e = m.get(r, c);
            if !e.is_zero() {
                v.insert((r, c), e.as_constant().expect("R evaluated at a rational coupling"));
            }
        }
    }
    v
}

/// Rank of the 28 `R_IJ` (I < J) in the 256-dimensional matrix space.
pub fn r_rank(s: &SuperconformalSet) -> usize {
    rank(&r_basis_vectors(s, 8))
}

/// First `[R_IJ, R_KL]` outside span{R}, if any.
pub fn r_closure_failure(s: &SuperconformalSet) -> Option<String> {
    let vecs = r_basis_vectors(s, 8);
    let solver = SpanSolver::new(&vecs);
    let labels: Vec<(usize, usize)> = (1..=8).flat_map(|i| (i + 1..=8).map(move |j| (i, j))).collect();
    for (x, &(i, j)) in labels.iter().enumerate() {
        for &(k, l) in &labels[x + 1..] {
            let br = s.r(i, j).commutator(s.r(k, l));
            if !solver.contains(&matrix_sparse(&br)) {
                return Some(format!("[R_{i}{j}, R_{k}{l}]"));
            }
        }
    }
    None
}

#[derive(Debug, Clone, Serialize)]
pub struct CriticalSolution {
    pub branch: Branch,
    #[serde(serialize_with = "crate::scalar::as_string::serialize")]
    pub c: Rational,
    /// `(a, b, c, d, e)`.
    #[serde(serialize_with = "crate::scalar::as_string::seq")]
    pub params: [Rational; 5],
    #[serde(serialize_with = "crate::scalar::as_string::seq")]
    pub potential: Vec<Rational>,
    /// Distinct nonzero residual polynomials from `[R, Q] in span{Q}`.
    pub residual_count: usize,
    /// Rational roots common to all residuals, before the R-closure filter.
    #[serde(serialize_with = "crate::scalar::as_string::seq")]
    pub candidates: Vec<Rational>,
}

impl CriticalSolution {
    pub fn ansatz(&self) -> AnsatzParams {
        let [a, b, c, d, e] = self.params.clone();
        AnsatzParams::values(a, b, c, d, e)
    }
}

/// Common rational roots of `residuals`; roots of the lowest-degree one are
/// the candidates.
pub fn common_rational_roots(residuals: &[ParamPoly]) -> Result<Vec<Rational>> {
    let Some(seed) = residuals.iter().filter(|p| !p.is_zero()).min_by_key(|p| p.degree()) else {
        return Err(CoreError::IdenticallyZero);
    };
    if seed.is_constant() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for root in rational_roots(seed)? {
        let mut asg = BTreeMap::new();
        asg.insert(Generator::C, root.clone());
        if residuals.iter().all(|p| p.substitute_values(&asg).is_zero()) {
            out.push(root);
        }
    }
    Ok(out)
}

/// Fixes `c` on a branch by demanding `[R, Q] in span{Q}` and closure of span{R}.
pub fn find_critical_c(br: Branch, f: &Frame) -> Result<CriticalSolution> {
    let formal = AnsatzParams::n8(br);
    let s = build_superconformal(&formal, br, f)?;
    let residuals = rq_span_residuals(&s, f)?;
    let candidates = common_rational_roots(&residuals)?;
    let mut accepted = Vec::new();
    for c in &candidates {
        let at = build_superconformal(&formal.at_c(c), br, f)?;
        if r_closure_failure(&at).is_none() {
            accepted.push((c.clone(), at));
        }
    }
    if accepted.len() != 1 {
        return Err(CoreError::Construction(format!(
            "expected a single critical coupling on branch {}, found {:?}",
            br.name(),
            accepted.iter().map(|(c, _)| c.to_string()).collect::<Vec<_>>()
        )));
    }
    let (c, at) = accepted.pop().expect("one element");
    let params = at.params.as_rationals().expect("rational at a fixed coupling");
    let pot = crate::susy::hamiltonian_potential(&at.h.scale(&GaussRational::from_int(4)))?;
    Ok(CriticalSolution {
        branch: br,
        c,
        params,
        potential: pot.as_rationals().expect("rational potential"),
        residual_count: residuals.len(),
        candidates,
    })
}

/// The critical generator set on a branch.
pub fn critical_set(br: Branch, f: &Frame) -> Result<(CriticalSolution, SuperconformalSet)> {
    let sol = find_critical_c(br, f)?;
    let set = build_superconformal(&sol.ansatz(), br, f)?;
    Ok((sol, set))
}

/// `2 R_i8 + C_ijk R_jk = 0` for `i = 1..7` and `rank{R} = 21`.
pub fn verify_seven_constraints(s: &SuperconformalSet, f: &Frame) -> Vec<Check> {
    let t = &f.tensors;
    let mut first = None;
    for i in 1..=7 {
        let mut m = s.r(i, 8).scale(&ParamPoly::from_rational(rat(2, 1)));
        for j in 1..=7 {
            for k in 1..=7 {
                let c = t.c3(i, j, k);
                if c != 0 {
                    m = &m + &s.r(j, k).scale(&ParamPoly::from_rational(Rational::from_integer(c.into())));
                }
            }
        }
        if !m.is_zero() && first.is_none() {
            first = Some(format!("constraint i={i} is nonzero"));
        }
    }
    let rk = r_rank(s);
    vec![
        Check::from_failure("seven R constraints", 7, first),
        Check::from_failure("rank of R_IJ is 21", 28, (rk != 21).then(|| format!("rank {rk}"))),
    ]
}

fn combo(terms: &[(GaussRational, &OperatorMatrix)]) -> OperatorMatrix {
    let mut out = OperatorMatrix::zeros(DIM);
    for (c, op) in terms {
        if !c.is_zero() {
            out = &out + &op.scale(c);
        }
    }
    out
}

/// Right-hand side of `[R_ij, X_k]` for the vector family `X` (either `q` or `qt`).
fn rx_expected(f: &Frame, i: usize, j: usize, k: usize, x: &dyn Fn(usize) -> OperatorMatrix) -> OperatorMatrix {
    let t = &f.tensors;
    let third = |n: i8| GaussRational::new(Rational::zero(), rat(n.into(), 3));
    let xs: Vec<OperatorMatrix> = (1..=8).map(x).collect();
    if k == 8 {
        let terms: Vec<(GaussRational, &OperatorMatrix)> = (1..=7).map(|m| (third(t.c3(i, j, m)), &xs[m - 1])).collect();
        return combo(&terms);
    }
    let mut terms: Vec<(GaussRational, &OperatorMatrix)> = vec![(third(-t.c3(i, j, k)), &xs[7])];
    for l in 1..=7 {
        terms.push((third(t.c4(i, j, k, l)), &xs[l - 1]));
    }
    if i == k {
        terms.push((i_times(1, 1), &xs[j - 1]));
    }
    if j == k {
        terms.push((i_times(-1, 1), &xs[i - 1]));
    }
    combo(&terms)
}

/// Coefficients of `[R_ij, R_kl]` on `R_mn` (m < n, all in `1..=7`).
fn rr_coefficients(f: &Frame, i: usize, j: usize, k: usize, l: usize) -> BTreeMap<(usize, usize), GaussRational> {
    let t = &f.tensors;
    let mut out: BTreeMap<(usize, usize), GaussRational> = BTreeMap::new();
    let mut add = |m: usize, n: usize, c: GaussRational| {
        if m == n || c.is_zero() {
            return;
        }
        let (key, c) = if m < n { ((m, n), c) } else { ((n, m), -c) };
        let e = out.entry(key).or_default();
        *e += &c;
    };
    let dl = |a: usize, b: usize| i64::from(a == b);
    // i(d_ik R_jl - d_il R_jk - d_jk R_il + d_jl R_ik)
    add(j, l, i_times(dl(i, k), 1));
    add(j, k, i_times(-dl(i, l), 1));
    add(i, l, i_times(-dl(j, k), 1));
    add(i, k, i_times(dl(j, l), 1));
    for m in 1..=7 {
        for n in 1..=7 {
            let c4 = |a, b| i64::from(t.c4(a, b, m, n));
            let w = dl(i, k) * c4(j, l) - dl(i, l) * c4(j, k) - dl(j, k) * c4(i, l) + dl(j, l) * c4(i, k);
            add(m, n, i_times(-w, 6));
            add(m, n, i_times(i64::from(t.c3(i, j, m)) * i64::from(t.c3(k, l, n)), 3));
        }
        add(m, l, i_times(t.c4(i, j, k, m).into(), 3));
        add(m, k, i_times((-t.c4(i, j, l, m)).into(), 3));
        add(m, j, i_times((-t.c4(k, l, i, m)).into(), 3));
        add(m, i, i_times(t.c4(k, l, j, m).into(), 3));
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Which relations a sweep covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

/// `[R, Q]`, `[R, Qt]` and `[R, R]` against their closed forms.
pub fn verify_structure_relations(s: &SuperconformalSet, f: &Frame, level: Level) -> Vec<Check> {
    let mut checks = Vec::new();
    let pairs: Vec<(usize, usize)> = (1..=7).flat_map(|i| (i + 1..=7).map(move |j| (i, j))).collect();
    let rops: BTreeMap<(usize, usize), OperatorMatrix> = pairs.iter().map(|&(i, j)| ((i, j), s.r_op(i, j))).collect();

    for (name, family) in [("[R,Q] relations", false), ("[R,Qt] relations", true)] {
        let x = |k: usize| if family { s.qt(k).clone() } else { s.q(k).clone() };
        let items: Vec<(usize, usize, usize)> = pairs.iter().flat_map(|&(i, j)| (1..=8).map(move |k| (i, j, k))).collect();
        let failures: Vec<Option<String>> = items
            .par_iter()
            .map(|&(i, j, k)| {
                let lhs = rops[&(i, j)].commutator(&x(k)).ok()?;
                let rhs = rx_expected(f, i, j, k, &x);
                (lhs != rhs).then(|| format!("(i,j,k)=({i},{j},{k})"))
            })
            .collect();
        let first = failures.into_iter().flatten().next();
        checks.push(Check::from_failure(name, items.len(), first));
    }

    let tuples: Vec<(usize, usize, usize, usize)> = (1..=7)
        .flat_map(|i| (1..=7).flat_map(move |j| (1..=7).flat_map(move |k| (1..=7).map(move |l| (i, j, k, l)))))
        .filter(|&(i, _, _, _)| level == Level::Full || i == 1)
        .collect();
    let failures: Vec<Option<String>> = tuples
        .par_iter()
        .map(|&(i, j, k, l)| {
            let lhs = s.r(i, j).commutator(s.r(k, l));
            let mut rhs = ExactMatrix::zeros(DIM, DIM);
            for ((m, n), c) in rr_coefficients(f, i, j, k, l) {
                rhs = &rhs + &s.r(m, n).scale(&ParamPoly::constant(c));
            }
            (lhs != rhs).then(|| format!("(i,j,k,l)=({i},{j},{k},{l})"))
        })
        .collect();
    let first = failures.into_iter().flatten().next();
    checks.push(Check::from_failure("[R,R] relations", tuples.len(), first));
    checks
}

/// A named generator with its parity.
#[derive(Debug, Clone)]
pub struct BasisElement {
    pub name: String,
    pub odd: bool,
    pub op: OperatorMatrix,
}

/// `H, D, K, Q_1..Q_8, Qt_1..Qt_8, R_ij (1 <= i < j <= 7)`: 40 elements.
pub fn generator_basis(s: &SuperconformalSet) -> Vec<BasisElement> {
    let even = |name: String, op: &OperatorMatrix| BasisElement { name, odd: false, op: op.clone() };
    let mut out = vec![even("H".into(), &s.h), even("D".into(), &s.d), even("K".into(), &s.k)];
    for i in 1..=8 {
        out.push(BasisElement { name: format!("Q_{i}"), odd: true, op: s.q(i).clone() });
    }
    for i in 1..=8 {
        out.push(BasisElement { name: format!("Qt_{i}"), odd: true, op: s.qt(i).clone() });
    }
    for i in 1..=7 {
        for j in i + 1..=7 {
            out.push(even(format!("R_{i}{j}"), &s.r_op(i, j)));
        }
    }
    out
}

fn bracket(a: &BasisElement, b: &BasisElement) -> Result<OperatorMatrix> {
    if a.odd && b.odd {
        a.op.anticommutator(&b.op)
    } else {
        a.op.commutator(&b.op)
    }
}

type Sparse = Vec<(usize, GaussRational)>;

/// `[G_a, G_b] = sum_c f[a][b][c] G_c` for the stored (scaled) generators.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    pub names: Vec<String>,
    pub odd: Vec<bool>,
    pub f: Vec<Vec<Sparse>>,
}

impl StructureConstants {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Expansion of `[G_a, G_b]` in the physical normalization, where a
    /// bracket of two odd generators carries an extra `1/2`.
    pub fn physical(&self, a: usize, b: usize) -> Sparse {
        let scale = if self.odd[a] && self.odd[b] { half() } else { GaussRational::one() };
        self.f[a][b].iter().map(|(c, v)| (*c, v * &scale)).collect()
    }

    pub fn render(&self, a: usize, b: usize) -> String {
        let (l, r) = if self.odd[a] && self.odd[b] { ("{", "}") } else { ("[", "]") };
        let terms: Vec<String> = self.physical(a, b).iter().map(|(c, v)| format!("({v})·{}", self.names[*c])).collect();
        let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        format!("{l}{}, {}{r} = {rhs}", self.names[a], self.names[b])
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Expands every bracket of the basis in the basis, verifying membership exactly.
pub fn structure_constants(basis: &[BasisElement]) -> Result<StructureConstants> {
    let vecs = basis.iter().map(|b| b.op.to_sparse()).collect::<Result<Vec<_>>>()?;
    let solver = SpanSolver::new(&vecs);
    if solver.rank() != basis.len() {
        return Err(CoreError::Construction(format!("generator basis has rank {}", solver.rank())));
    }
    let n = basis.len();
    let rows: Vec<Result<Vec<Sparse>>> = (0..n)
        .into_par_iter()
        .map(|a| {
            (0..n)
                .map(|b| {
                    let br = bracket(&basis[a], &basis[b])?.to_sparse()?;
                    let coeffs = solver.solve(&br).ok_or_else(|| {
                        CoreError::Construction(format!("[{}, {}] leaves the span", basis[a].name, basis[b].name))
                    })?;
                    Ok(coeffs.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect())
                })
                .collect()
        })
        .collect();
    Ok(StructureConstants {
        names: basis.iter().map(|b| b.name.clone()).collect(),
        odd: basis.iter().map(|b| b.odd).collect(),
        f: rows.into_iter().collect::<Result<_>>()?,
    })
}

fn sign(odd_x: bool, odd_y: bool) -> GaussRational {
    GaussRational::from_int(if odd_x && odd_y { -1 } else { 1 })
}

/// Graded Jacobi sum for `(a, b, c)` computed from the structure constants.
pub fn jacobi_residual(sc: &StructureConstants, a: usize, b: usize, c: usize) -> BTreeMap<usize, GaussRational> {
    let mut acc: BTreeMap<usize, GaussRational> = BTreeMap::new();
    let o = &sc.odd;
    for (x, y, z, s) in [(a, b, c, sign(o[a], o[c])), (b, c, a, sign(o[b], o[a])), (c, a, b, sign(o[c], o[b]))] {
        for (d, fyz) in &sc.f[y][z] {
            let w = fyz * &s;
            for (e, fxd) in &sc.f[x][*d] {
                let slot = acc.entry(*e).or_default();
                *slot += &(&w * fxd);
            }
        }
    }
    acc.retain(|_, v| !v.is_zero());
    acc
}

/// Graded Jacobi identity over every ordered triple.
pub fn verify_jacobi_sweep(sc: &StructureConstants) -> Check {
    let n = sc.len();
    let failures: Vec<Option<String>> = (0..n)
        .into_par_iter()
        .map(|a| {
            for b in 0..n {
                for c in 0..n {
                    if !jacobi_residual(sc, a, b, c).is_empty() {
                        return Some(format!("({}, {}, {})", sc.names[a], sc.names[b], sc.names[c]));
                    }
                }
            }
            None
        })
        .collect();
    Check::from_failure("graded Jacobi identity (all triples)", n * n * n, failures.into_iter().flatten().next())
}

/// Graded Jacobi sum evaluated directly on operators.
pub fn jacobi_direct(a: &BasisElement, b: &BasisElement, c: &BasisElement) -> Result<OperatorMatrix> {
    let wrap = |x: &BasisElement, op: OperatorMatrix, odd: bool| BasisElement { name: x.name.clone(), odd, op };
    let term = |x: &BasisElement, y: &BasisElement, z: &BasisElement| -> Result<OperatorMatrix> {
        let inner = wrap(y, bracket(y, z)?, y.odd ^ z.odd);
        Ok(bracket(x, &inner)?.scale(&sign(x.odd, z.odd)))
    };
    Ok(&(&term(a, b, c)? + &term(b, c, a)?) + &term(c, a, b)?)
}

/// The fixed sample of triples checked directly at operator level.
pub const DIRECT_TRIPLES: [[&str; 3]; 5] = [
    ["H", "D", "K"],
    ["Q_1", "Q_1", "Qt_2"],
    ["Q_8", "Qt_3", "R_12"],
    ["R_12", "R_34", "Q_5"],
    ["D", "Qt_7", "Q_7"],
];

pub fn verify_jacobi_direct(basis: &[BasisElement]) -> Result<Check> {
    let find = |n: &str| basis.iter().find(|b| b.name == n).ok_or_else(|| CoreError::Construction(format!("no generator {n}")));
    let mut first = None;
    for [a, b, c] in DIRECT_TRIPLES {
        if !jacobi_direct(find(a)?, find(b)?, find(c)?)?.is_zero() && first.is_none() {
            first = Some(format!("({a}, {b}, {c})"));
        }
    }
    Ok(Check::from_failure("graded Jacobi identity (direct sample)", DIRECT_TRIPLES.len(), first))
}

/// Brackets among `H, D, K` and between them and one supercharge of each kind,
/// in the physical normalization.
pub fn record_sl2_brackets(sc: &StructureConstants) -> Vec<String> {
    let pairs = [
        ("H", "D"),
        ("H", "K"),
        ("D", "K"),
        ("D", "Q_1"),
        ("K", "Q_1"),
        ("H", "Qt_1"),
        ("D", "Qt_1"),
        ("Q_1", "Q_1"),
        ("Qt_1", "Qt_1"),
        ("Q_1", "Qt_1"),
    ];
    pairs
        .iter()
        .filter_map(|(a, b)| Some(sc.render(sc.index(a)?, sc.index(b)?)))
        .collect()
}

/// How `G_8 g G_8` compares with the other branch's generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Correspondence {
    Equal,
    Negated,
    Mismatch,
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceEntry {
    pub generator: String,
    pub correspondence: Correspondence,
}

fn all_generators(s: &SuperconformalSet) -> Vec<(String, OperatorMatrix)> {
    let mut out = vec![("H".to_string(), s.h.clone()), ("D".into(), s.d.clone()), ("K".into(), s.k.clone())];
    for i in 1..=8 {
        out.push((format!("Q_{i}"), s.q(i).clone()));
    }
    for i in 1..=8 {
        out.push((format!("Qt_{i}"), s.qt(i).clone()));
    }
    for i in 1..=8 {
        for j in i + 1..=8 {
            out.push((format!("R_{i}{j}"), s.r_op(i, j)));
        }
    }
    out
}

/// Conjugates every generator of `first` by `G_8` and compares with `second`.
pub fn branch_correspondence(first: &SuperconformalSet, second: &SuperconformalSet, f: &Frame) -> Result<Vec<EquivalenceEntry>> {
    let g8 = f.constant(f.gamma(8));
    let mut out = Vec::new();
    for ((name, g1), (_, g2)) in all_generators(first).into_iter().zip(all_generators(second)) {
        let conj = g8.compose(&g1)?.compose(&g8)?;
        let correspondence = if conj == g2 {
            Correspondence::Equal
        } else if conj == -&g2 {
            Correspondence::Negated
        } else {
            Correspondence::Mismatch
        };
        out.push(EquivalenceEntry { generator: name, correspondence });
    }
    Ok(out)
}

/// Expected outcome of [`branch_correspondence`]: the index-8 reflection `Q_8 -> -Q_8`,
/// which maps `Qt_8 -> -Qt_8`, `R_i8 -> -R_i8` and fixes everything else.
pub fn reflected_sign(name: &str) -> Correspondence {
    let touches_8 = match name {
        "Q_8" | "Qt_8" => true,
        n if n.starts_with("R_") => n.ends_with('8'),
        _ => false,
    };
    if touches_8 {
        Correspondence::Negated
    } else {
        Correspondence::Equal
    }
}
