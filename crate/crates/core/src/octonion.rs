//! Octonion structure constants and the octonion product.
//!
//! Indices are 1-based (`1..=7`) in the public API.

use num_traits::Zero;
use serde::Serialize;

use crate::scalar::Rational;

const LINES: [[usize; 3]; 7] = [
    [1, 2, 3],
    [1, 4, 7],
    [1, 6, 5],
    [2, 4, 6],
    [2, 5, 7],
    [3, 5, 4],
    [3, 6, 7],
];

const QUADRUPLES: [[usize; 4]; 7] = [
    [4, 5, 6, 7],
    [2, 3, 5, 6],
    [2, 4, 3, 7],
    [1, 3, 5, 7],
    [1, 3, 4, 6],
    [1, 2, 7, 6],
    [1, 2, 4, 5],
];

/// Sign of the permutation sorting `idx`, or 0 if an index repeats.
pub fn permutation_sign(idx: &[usize]) -> i8 {
    let mut sign = 1i8;
    for a in 0..idx.len() {
        for b in a + 1..idx.len() {
            match idx[a].cmp(&idx[b]) {
                std::cmp::Ordering::Equal => return 0,
                std::cmp::Ordering::Greater => sign = -sign,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    sign
}

fn permutations<const N: usize>(seed: [usize; N]) -> Vec<([usize; N], i8)> {
    let mut out = Vec::new();
    let mut order = [0usize; N];
    fn rec<const N: usize>(
        depth: usize,
        used: &mut [bool; N],
        order: &mut [usize; N],
        seed: &[usize; N],
        out: &mut Vec<([usize; N], i8)>,
    ) {
        if depth == N {
            let perm = order.map(|p| seed[p]);
            out.push((perm, permutation_sign(order)));
            return;
        }
        for p in 0..N {
            if !used[p] {
                used[p] = true;
                order[depth] = p;
                rec(depth + 1, used, order, seed, out);
                used[p] = false;
            }
        }
    }
    rec(0, &mut [false; N], &mut order, &seed, &mut out);
    out
}

/// The totally antisymmetric rank-3, rank-4 and rank-7 octonionic tensors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OctonionTensors {
    c3: [[[i8; 7]; 7]; 7],
    c4: [[[[i8; 7]; 7]; 7]; 7],
}

impl Default for OctonionTensors {
    fn default() -> Self {
        Self::build()
    }
}

impl OctonionTensors {
    pub fn build() -> Self {
        let mut c3 = [[[0i8; 7]; 7]; 7];
        for line in LINES {
            for (p, s) in permutations(line) {
                c3[p[0] - 1][p[1] - 1][p[2] - 1] = s;
            }
        }
        let mut c4 = [[[[0i8; 7]; 7]; 7]; 7];
        for quad in QUADRUPLES {
            for (p, s) in permutations(quad) {
                c4[p[0] - 1][p[1] - 1][p[2] - 1][p[3] - 1] = s;
            }
        }
        Self { c3, c4 }
    }

    pub fn c3(&self, i: usize, j: usize, k: usize) -> i8 {
        self.c3[i - 1][j - 1][k - 1]
    }

    pub fn c4(&self, i: usize, j: usize, k: usize, l: usize) -> i8 {
        self.c4[i - 1][j - 1][k - 1][l - 1]
    }

    /// Levi-Civita symbol with `eps(1,2,...,7) = 1`.
    pub fn eps(&self, idx: [usize; 7]) -> i8 {
        permutation_sign(&idx)
    }

    /// Overwrites a single `C_ijkl` entry without restoring antisymmetry.
    /// Only useful for fault injection.
    pub fn set_c4_raw(&mut self, idx: [usize; 4], value: i8) {
        self.c4[idx[0] - 1][idx[1] - 1][idx[2] - 1][idx[3] - 1] = value;
    }

    /// The unique `k` with `C_ijk != 0`, together with the sign.
    pub fn third(&self, i: usize, j: usize) -> Option<(usize, i8)> {
        (1..=7)
            .map(|k| (k, self.c3(i, j, k)))
            .find(|&(_, s)| s != 0)
    }

    /// Independent nonzero `C_ijk` (ascending indices).
    pub fn lines(&self) -> Vec<([usize; 3], i8)> {
        let mut out = Vec::new();
        for i in 1..=7 {
            for j in i + 1..=7 {
                for k in j + 1..=7 {
                    let v = self.c3(i, j, k);
                    if v != 0 {
                        out.push(([i, j, k], v));
                    }
                }
            }
        }
        out
    }

    /// Independent nonzero `C_ijkl` (ascending indices).
    pub fn quadruples(&self) -> Vec<([usize; 4], i8)> {
        let mut out = Vec::new();
        for i in 1..=7 {
            for j in i + 1..=7 {
                for k in j + 1..=7 {
                    for l in k + 1..=7 {
                        let v = self.c4(i, j, k, l);
                        if v != 0 {
                            out.push(([i, j, k, l], v));
                        }
                    }
                }
            }
        }
        out
    }

    /// Every nonzero entry of the rank-3 tensor, in index order.
    pub fn c3_entries(&self) -> Vec<([usize; 3], i8)> {
        let mut out = Vec::new();
        for i in 1..=7 {
            for j in 1..=7 {
                for k in 1..=7 {
                    let v = self.c3(i, j, k);
                    if v != 0 {
                        out.push(([i, j, k], v));
                    }
                }
            }
        }
        out
    }

    /// Every nonzero entry of the rank-4 tensor, in index order.
    pub fn c4_entries(&self) -> Vec<([usize; 4], i8)> {
        let mut out = Vec::new();
        for i in 1..=7 {
            for j in 1..=7 {
                for k in 1..=7 {
                    for l in 1..=7 {
                        let v = self.c4(i, j, k, l);
                        if v != 0 {
                            out.push(([i, j, k, l], v));
                        }
                    }
                }
            }
        }
        out
    }

    /// Checks `6 C_ijkl = eps_ijklmnp C_mnp` over all `7^4` index tuples.
    pub fn verify_duality(&self) -> DualityReport {
        let mut checked = 0;
        for i in 1..=7 {
            for j in 1..=7 {
                for k in 1..=7 {
                    for l in 1..=7 {
                        checked += 1;
                        let lhs = 6 * self.c4(i, j, k, l) as i32;
                        let mut rhs = 0i32;
                        if permutation_sign(&[i, j, k, l]) != 0 {
                            for m in 1..=7 {
                                for n in 1..=7 {
                                    for p in 1..=7 {
                                        let e = self.eps([i, j, k, l, m, n, p]);
                                        if e != 0 {
                                            rhs += e as i32 * self.c3(m, n, p) as i32;
                                        }
                                    }
                                }
                            }
                        }
                        if lhs != rhs {
                            return DualityReport {
                                passed: false,
                                checked,
                                counterexample: Some(DualityCounterexample {
                                    indices: [i, j, k, l],
                                    lhs,
                                    rhs,
                                }),
                            };
                        }
                    }
                }
            }
        }
        DualityReport {
            passed: true,
            checked,
            counterexample: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityCounterexample {
    pub indices: [usize; 4],
    pub lhs: i32,
    pub rhs: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub passed: bool,
    pub checked: usize,
    pub counterexample: Option<DualityCounterexample>,
}

/// A real octonion `x0 + x_j e_j`; `coeffs[0]` is the real part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Octonion {
    pub coeffs: [Rational; 8],
}

impl Octonion {
    pub fn new(coeffs: [Rational; 8]) -> Self {
        Self { coeffs }
    }

    pub fn unit(index: usize) -> Self {
        let mut coeffs: [Rational; 8] = Default::default();
        coeffs[index] = Rational::from_integer(1.into());
        Self { coeffs }
    }

    pub fn norm(&self) -> Rational {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// `e_i e_j = -delta_ij + C_ijk e_k`, with `e_0` the unit.
    pub fn mul_with(&self, other: &Octonion, t: &OctonionTensors) -> Octonion {
        let x = &self.coeffs;
        let y = &other.coeffs;
        let mut out: [Rational; 8] = Default::default();
        out[0] = &x[0] * &y[0];
        for j in 1..8 {
            out[0] -= &x[j] * &y[j];
            out[j] += &x[0] * &y[j] + &x[j] * &y[0];
        }
        for i in 1..8 {
            if x[i].is_zero() {
                continue;
            }
            for j in 1..8 {
                if y[j].is_zero() || i == j {
                    continue;
                }
                if let Some((k, s)) = t.third(i, j) {
                    let p = &x[i] * &y[j];
                    if s > 0 {
                        out[k] += p;
                    } else {
                        out[k] -= p;
                    }
                }
            }
        }
        Octonion { coeffs: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn e(i: usize) -> Octonion {
        Octonion::unit(i)
    }

    fn neg(o: Octonion) -> Octonion {
        Octonion::new(o.coeffs.map(|c| -c))
    }

    #[test]
    fn seed_values() {
        let t = OctonionTensors::build();
        assert_eq!(t.c3(1, 2, 3), 1);
        assert_eq!(t.c3(2, 1, 3), -1);
        assert_eq!(t.c3(1, 5, 6), -1);
        assert_eq!(t.c4(4, 5, 6, 7), 1);
        assert_eq!(t.c4(1, 2, 6, 7), -1);
        assert_eq!(t.eps([1, 2, 3, 4, 5, 6, 7]), 1);
        assert_eq!(t.eps([2, 1, 3, 4, 5, 6, 7]), -1);
    }

    #[test]
    fn products_of_units() {
        let t = OctonionTensors::build();
        assert_eq!(e(1).mul_with(&e(2), &t), e(3));
        assert_eq!(e(5).mul_with(&e(5), &t), neg(e(0)));
        let left = e(1).mul_with(&e(2), &t).mul_with(&e(4), &t);
        let right = e(1).mul_with(&e(2).mul_with(&e(4), &t), &t);
        assert_eq!(left, neg(e(5)));
        assert_eq!(right, e(5));
    }

    #[test]
    fn duality_holds() {
        let r = OctonionTensors::build().verify_duality();
        assert!(r.passed);
        assert_eq!(r.checked, 7usize.pow(4));
    }

    #[test]
    fn tampered_duality_fails_at_the_tampered_tuple() {
        let mut t = OctonionTensors::build();
        t.set_c4_raw([4, 5, 6, 7], -1);
        let r = t.verify_duality();
        assert!(!r.passed);
        assert_eq!(r.counterexample.unwrap().indices, [4, 5, 6, 7]);
    }

    #[test]
    fn repeated_index_is_zero_on_both_sides() {
        let t = OctonionTensors::build();
        assert_eq!(t.c4(1, 1, 2, 3), 0);
        assert_eq!(t.eps([1, 1, 2, 3, 4, 5, 6]), 0);
    }

    #[test]
    fn fano_counts() {
        let t = OctonionTensors::build();
        assert_eq!(t.lines().len(), 7);
        assert_eq!(t.quadruples().len(), 7);
        // Each quadruple is the complement of a line.
        for (line, _) in t.lines() {
            let comp: Vec<usize> = (1..=7).filter(|i| !line.contains(i)).collect();
            assert_ne!(t.c4(comp[0], comp[1], comp[2], comp[3]), 0);
        }
        assert_eq!(t.c3_entries().len(), 42);
        assert_eq!(t.c4_entries().len(), 168);
        assert_eq!(e(3).norm(), int(1));
    }
}
