//! Gamma matrices of `Cl(0,7)` (8x8, from octonionic left multiplication) and
//! `Cl(9,0)` (16x16), plus the classification of the 256 products.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{CoreError, Result};
use crate::linalg::{rank, SparseVec};
use crate::matrix::Matrix;
use crate::octonion::{Octonion, OctonionTensors};
use crate::scalar::{int, GaussRational, Rational};

pub type RealMatrix = Matrix<Rational>;

/// The seven 8x8 `gamma_i`, indexed `1..=7`.
#[derive(Clone, Debug)]
pub struct GammaSmall {
    gamma: Vec<RealMatrix>,
}

impl GammaSmall {
    /// `(gamma_i)_{0m} = delta_im`, `(gamma_i)_{l0} = -delta_il`,
    /// `(gamma_i)_{lm} = C_ilm`, cross-checked against `x -> e_i x`.
    pub fn build(t: &OctonionTensors) -> Result<Self> {
        let mut gamma = Vec::with_capacity(7);
        for i in 1..=7 {
            let g = RealMatrix::from_fn(8, 8, |l, m| match (l, m) {
                (0, 0) => int(0),
                (0, m) => int((m == i) as i64),
                (l, 0) => int(-((l == i) as i64)),
                (l, m) => int(t.c3(i, l, m) as i64),
            });
            let map = Self::left_multiplication(i, t);
            if map != -&g {
                return Err(CoreError::Construction(format!(
                    "gamma_{i} disagrees with left multiplication by e_{i}"
                )));
            }
            gamma.push(g);
        }
        Ok(Self { gamma })
    }

    /// Matrix of `x -> e_i x` on the basis `(e_0, e_1, ..., e_7)`.
    pub fn left_multiplication(i: usize, t: &OctonionTensors) -> RealMatrix {
        let ei = Octonion::unit(i);
        let cols: Vec<Octonion> = (0..8).map(|m| ei.mul_with(&Octonion::unit(m), t)).collect();
        RealMatrix::from_fn(8, 8, |l, m| cols[m].coeffs[l].clone())
    }

    pub fn get(&self, i: usize) -> &RealMatrix {
        &self.gamma[i - 1]
    }
}

/// The nine 16x16 `Gamma_A`, indexed `1..=9`.
#[derive(Clone, Debug)]
pub struct GammaBig {
    gamma: Vec<RealMatrix>,
}

fn blocks(tl: &RealMatrix, tr: &RealMatrix, bl: &RealMatrix, br: &RealMatrix) -> RealMatrix {
    RealMatrix::from_fn(16, 16, |r, c| {
        let src = match (r < 8, c < 8) {
            (true, true) => tl,
            (true, false) => tr,
            (false, true) => bl,
            (false, false) => br,
        };
        src.get(r % 8, c % 8).clone()
    })
}

impl GammaBig {
    pub fn build(small: &GammaSmall) -> Self {
        let zero = RealMatrix::zeros(8, 8);
        let one = RealMatrix::identity(8);
        let mut gamma: Vec<RealMatrix> = (1..=7)
            .map(|i| blocks(&zero, small.get(i), &-small.get(i), &zero))
            .collect();
        gamma.push(blocks(&zero, &one, &one, &zero));
        gamma.push(blocks(&one, &zero, &zero, &-&one));
        Self { gamma }
    }

    pub fn get(&self, a: usize) -> &RealMatrix {
        &self.gamma[a - 1]
    }

    /// `Gamma_{Ibar}` with the convention `Gamma_0 := Gamma_8`.
    pub fn bar(&self, ibar: usize) -> &RealMatrix {
        if ibar == 0 {
            self.get(8)
        } else {
            self.get(ibar)
        }
    }

    /// Ordered product `Gamma_{A_1} ... Gamma_{A_n}`.
    pub fn product(&self, indices: &[usize]) -> RealMatrix {
        indices
            .iter()
            .fold(RealMatrix::identity(16), |acc, &a| &acc * self.get(a))
    }
}

/// Checks `{g_a, g_b} = 2 sign delta_ab I` over all pairs.
pub fn verify_clifford(gammas: &[&RealMatrix], sign: i64) -> std::result::Result<usize, (usize, usize)> {
    let n = gammas[0].rows();
    let mut checked = 0;
    for (a, ga) in gammas.iter().enumerate() {
        for (b, gb) in gammas.iter().enumerate() {
            let expected = if a == b {
                RealMatrix::identity(n).scale(&int(2 * sign))
            } else {
                RealMatrix::zeros(n, n)
            };
            if ga.anticommutator(gb) != expected {
                return Err((a + 1, b + 1));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// A matrix with exactly one `+-1` per row and column.
#[derive(Clone, Debug, PartialEq, Eq)]
struct SignedPerm {
    col: Vec<usize>,
    sign: Vec<i8>,
}

impl SignedPerm {
    fn from_matrix(m: &RealMatrix) -> Option<Self> {
        let n = m.rows();
        let mut col = Vec::with_capacity(n);
        let mut sign = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for r in 0..n {
            let nz: Vec<usize> = (0..n).filter(|&c| !m.get(r, c).is_zero()).collect();
            let [c] = nz.as_slice() else { return None };
            let v = m.get(r, *c);
            let s = if v.is_one() {
                1
            } else if *v == -Rational::one() {
                -1
            } else {
                return None;
            };
            if std::mem::replace(&mut seen[*c], true) {
                return None;
            }
            col.push(*c);
            sign.push(s);
        }
        Some(Self { col, sign })
    }

    fn frobenius(&self, other: &Self) -> i64 {
        (0..self.col.len())
            .filter(|&r| self.col[r] == other.col[r])
            .map(|r| (self.sign[r] * other.sign[r]) as i64)
            .sum()
    }

    fn is_block_diagonal(&self) -> Option<bool> {
        let half = self.col.len() / 2;
        let diag = (0..self.col.len()).all(|r| (r < half) == (self.col[r] < half));
        let anti = (0..self.col.len()).all(|r| (r < half) != (self.col[r] < half));
        match (diag, anti) {
            (true, _) => Some(true),
            (_, true) => Some(false),
            _ => None,
        }
    }

    /// `Some(true)` symmetric, `Some(false)` antisymmetric.
    fn symmetry(&self) -> Option<bool> {
        let n = self.col.len();
        let mut sym = true;
        let mut anti = true;
        for r in 0..n {
            let c = self.col[r];
            // transpose entry (c, r) must exist
            if self.col[c] != r {
                return None;
            }
            if self.sign[c] != self.sign[r] {
                sym = false;
            }
            if self.sign[c] != -self.sign[r] || c == r {
                anti = false;
            }
        }
        match (sym, anti) {
            (true, false) => Some(true),
            (false, true) => Some(false),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRow {
    pub label: String,
    pub block_diagonal: bool,
    pub symmetric: bool,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisClassification {
    pub rows: Vec<ClassRow>,
    pub total: usize,
    pub symmetric_total: usize,
    pub antisymmetric_total: usize,
    pub linearly_independent: bool,
    pub hodge_duality: bool,
}

/// `(rank in 1..7, has Gamma_8, has Gamma_9)` in table order.
const CLASS_ORDER: [(usize, bool, bool); 16] = [
    (0, false, false),
    (1, false, false),
    (0, true, false),
    (0, false, true),
    (2, false, false),
    (1, true, false),
    (1, false, true),
    (0, true, true),
    (3, false, false),
    (2, true, false),
    (2, false, true),
    (1, true, true),
    (4, false, false),
    (3, true, false),
    (3, false, true),
    (2, true, true),
];

fn class_label(r: usize, g8: bool, g9: bool) -> String {
    let mut s = String::new();
    if r > 0 {
        s.push_str(&format!("Gamma^({r})"));
    }
    if g8 {
        s.push_str("Gamma_8");
    }
    if g9 {
        s.push_str("Gamma_9");
    }
    if s.is_empty() {
        s.push('I');
    }
    s
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Enumerates all rank-0..4 products of the `Gamma_A` under the 7+1+1 split.
pub fn classify_basis(g: &GammaBig) -> Result<BasisClassification> {
    let mut rows = Vec::new();
    let mut all: Vec<SignedPerm> = Vec::new();
    let mut hodge = true;
    for (r, g8, g9) in CLASS_ORDER {
        let mut flags: Option<(bool, bool)> = None;
        let mut count = 0;
        for sub in subsets(7, r) {
            let mut idx = sub.clone();
            if g8 {
                idx.push(8);
            }
            if g9 {
                idx.push(9);
            }
            let m = g.product(&idx);
            let sp = SignedPerm::from_matrix(&m).ok_or_else(|| {
                CoreError::Construction(format!("product {idx:?} is not a signed permutation"))
            })?;
            let diag = sp.is_block_diagonal().ok_or_else(|| {
                CoreError::Construction(format!("product {idx:?} mixes the grading"))
            })?;
            let sym = sp.symmetry().ok_or_else(|| {
                CoreError::Construction(format!("product {idx:?} has no definite symmetry"))
            })?;
            match flags {
                None => flags = Some((diag, sym)),
                Some(f) if f != (diag, sym) => {
                    return Err(CoreError::Construction(format!(
                        "class {} is not homogeneous",
                        class_label(r, g8, g9)
                    )))
                }
                _ => {}
            }
            let comp: Vec<usize> = (1..=9).filter(|a| !idx.contains(a)).collect();
            let dual = SignedPerm::from_matrix(&g.product(&comp));
            hodge &= dual.is_some_and(|d| d.frobenius(&sp).abs() == 16);
            all.push(sp);
            count += 1;
        }
        let (block_diagonal, symmetric) = flags.expect("nonempty class");
        rows.push(ClassRow {
            label: class_label(r, g8, g9),
            block_diagonal,
            symmetric,
            count,
        });
    }
    // Distinct basis elements are Frobenius-orthogonal, which forces independence.
    let mut independent = true;
    for a in 0..all.len() {
        for b in a..all.len() {
            let ip = all[a].frobenius(&all[b]);
            if (a == b && ip != 16) || (a != b && ip != 0) {
                independent = false;
            }
        }
    }
    let total = rows.iter().map(|r| r.count).sum();
    let symmetric_total = rows.iter().filter(|r| r.symmetric).map(|r| r.count).sum();
    Ok(BasisClassification {
        total,
        symmetric_total,
        antisymmetric_total: total - symmetric_total,
        rows,
        linearly_independent: independent,
        hodge_duality: hodge,
    })
}

fn as_vector(m: &RealMatrix) -> SparseVec<(usize, usize)> {
    let mut v = SparseVec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let x = m.get(r, c);
            if !x.is_zero() {
                v.insert((r, c), GaussRational::real(x.clone()));
            }
        }
    }
    v
}

/// Ranks of the spans of `{gamma^(0), gamma^(3)}` and `{gamma^(1), gamma^(2)}`,
/// and whether each family is symmetric/antisymmetric respectively.
pub fn small_basis_split(g: &GammaSmall) -> (usize, bool, usize, bool) {
    let product = |idx: &[usize]| {
        idx.iter()
            .fold(RealMatrix::identity(8), |acc, &i| &acc * g.get(i))
    };
    let mut sym = Vec::new();
    let mut anti = Vec::new();
    for r in 0..=3 {
        for sub in subsets(7, r) {
            let m = product(&sub);
            if r == 0 || r == 3 {
                sym.push(m);
            } else {
                anti.push(m);
            }
        }
    }
    let sym_ok = sym.iter().all(|m| m.transpose() == *m);
    let anti_ok = anti.iter().all(|m| m.transpose() == -m);
    let sv: Vec<_> = sym.iter().map(as_vector).collect();
    let av: Vec<_> = anti.iter().map(as_vector).collect();
    (rank(&sv), sym_ok, rank(&av), anti_ok)
}

/// `gamma_S` equals `+-gamma_{S^c}` for every subset of `1..=7`.
pub fn small_hodge_duality(g: &GammaSmall) -> bool {
    let product = |idx: &[usize]| {
        idx.iter()
            .fold(RealMatrix::identity(8), |acc, &i| &acc * g.get(i))
    };
    (0..=7).all(|r| {
        subsets(7, r).into_iter().all(|sub| {
            let comp: Vec<usize> = (1..=7).filter(|i| !sub.contains(i)).collect();
            let a = product(&sub);
            let b = product(&comp);
            a == b || a == -&b
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (GammaSmall, GammaBig) {
        let t = OctonionTensors::build();
        let s = GammaSmall::build(&t).unwrap();
        let b = GammaBig::build(&s);
        (s, b)
    }

    #[test]
    fn small_gamma_entries() {
        let (s, _) = setup();
        // octonionic block indices 2,3 are matrix indices 2,3 (0 is the real unit)
        assert_eq!(*s.get(1).get(2, 3), int(1));
        assert_eq!(&*s.get(1) * s.get(1), -&RealMatrix::identity(8));
        assert!(s.get(1).anticommutator(s.get(2)).is_zero());
        for i in 1..=7 {
            assert_eq!(s.get(i).transpose(), -s.get(i));
        }
    }

    #[test]
    fn big_gamma_blocks() {
        let (_, b) = setup();
        let mut diag = vec![int(1); 8];
        diag.extend(vec![int(-1); 8]);
        assert_eq!(*b.get(9), RealMatrix::diagonal(&diag));
        assert_eq!(b.get(8) * b.get(8), RealMatrix::identity(16));
        assert!(b.get(3).anticommutator(b.get(7)).is_zero());
    }

    #[test]
    fn clifford_sweeps() {
        let (s, b) = setup();
        let small: Vec<&RealMatrix> = (1..=7).map(|i| s.get(i)).collect();
        assert_eq!(verify_clifford(&small, -1), Ok(49));
        let big: Vec<&RealMatrix> = (1..=9).map(|a| b.get(a)).collect();
        assert_eq!(verify_clifford(&big, 1), Ok(81));
    }

    #[test]
    fn small_basis_spans() {
        let (s, _) = setup();
        assert_eq!(small_basis_split(&s), (36, true, 28, true));
        assert!(small_hodge_duality(&s));
    }

    #[test]
    fn classification_rows() {
        let (_, b) = setup();
        let c = classify_basis(&b).unwrap();
        let two = c.rows.iter().find(|r| r.label == "Gamma^(2)").unwrap();
        assert_eq!((two.count, two.block_diagonal, two.symmetric), (21, true, false));
        let three = c.rows.iter().find(|r| r.label == "Gamma^(3)").unwrap();
        assert_eq!((three.count, three.block_diagonal, three.symmetric), (35, false, false));
        let three8 = c.rows.iter().find(|r| r.label == "Gamma^(3)Gamma_8").unwrap();
        assert_eq!((three8.count, three8.block_diagonal, three8.symmetric), (35, true, true));
        assert_eq!(c.total, 256);
        assert_eq!((c.symmetric_total, c.antisymmetric_total), (136, 120));
        assert!(c.linearly_independent);
        assert!(c.hodge_duality);
    }
}
