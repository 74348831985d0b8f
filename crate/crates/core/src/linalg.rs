//! Exact linear algebra on sparse vectors over the Gaussian rationals.
//!
//! Vectors are keyed maps so the same elimination serves matrix spaces,
//! operator spaces and wavefunction coefficient spaces.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::scalar::GaussRational;

pub type SparseVec<K> = BTreeMap<K, GaussRational>;

fn axpy<K: Ord + Clone>(y: &mut SparseVec<K>, alpha: &GaussRational, x: &SparseVec<K>) {
    for (k, v) in x {
        let entry = y.entry(k.clone()).or_default();
        *entry += &(alpha * v);
        if entry.is_zero() {
            y.remove(k);
        }
    }
}

/// Incremental row echelon form of a list of vectors, keeping track of how
/// each reduced row is combined from the originals.
#[derive(Clone, Debug)]
pub struct SpanSolver<K: Ord + Clone> {
    count: usize,
    // (pivot key, reduced row normalized to 1 at pivot, combination of originals)
    rows: Vec<(K, SparseVec<K>, Vec<GaussRational>)>,
}

impl<K: Ord + Clone> SpanSolver<K> {
    pub fn new(vectors: &[SparseVec<K>]) -> Self {
        let mut solver = Self {
            count: 0,
            rows: Vec::new(),
        };
        for v in vectors {
            solver.push(v);
        }
        solver
    }

    /// Adds a vector; returns `true` if it enlarged the span.
    pub fn push(&mut self, v: &SparseVec<K>) -> bool {
        let idx = self.count;
        self.count += 1;
        for row in &mut self.rows {
            row.2.push(GaussRational::zero());
        }
        let mut combo = vec![GaussRational::zero(); self.count];
        combo[idx] = GaussRational::from_int(1);
        let mut rest = v.clone();
        self.reduce(&mut rest, &mut combo);
        let Some((pivot, lead)) = rest.iter().next().map(|(k, v)| (k.clone(), v.clone())) else {
            return false;
        };
        let inv = lead.inv().expect("nonzero pivot");
        for val in rest.values_mut() {
            *val = &*val * &inv;
        }
        for c in combo.iter_mut() {
            *c = &*c * &inv;
        }
        self.rows.push((pivot, rest, combo));
        true
    }

    fn reduce(&self, v: &mut SparseVec<K>, combo: &mut [GaussRational]) {
        for (pivot, row, rc) in &self.rows {
            let Some(coef) = v.get(pivot).cloned() else {
                continue;
            };
            let neg = -coef;
            axpy(v, &neg, row);
            for (c, r) in combo.iter_mut().zip(rc) {
                *c += &(&neg * r);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Coefficients `x` with `target = sum_l x_l v_l`, or `None` if outside the span.
    pub fn solve(&self, target: &SparseVec<K>) -> Option<Vec<GaussRational>> {
        let mut rest = target.clone();
        let mut combo = vec![GaussRational::zero(); self.count];
        self.reduce(&mut rest, &mut combo);
        if !rest.is_empty() {
            return None;
        }
        Some(combo.into_iter().map(|c| -c).collect())
    }

    pub fn contains(&self, target: &SparseVec<K>) -> bool {
        let mut rest = target.clone();
        let mut combo = vec![GaussRational::zero(); self.count];
        self.reduce(&mut rest, &mut combo);
        rest.is_empty()
    }
}

pub fn rank<K: Ord + Clone>(vectors: &[SparseVec<K>]) -> usize {
    SpanSolver::new(vectors).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(u32, i64)]) -> SparseVec<u32> {
        entries
            .iter()
            .filter(|(_, x)| *x != 0)
            .map(|&(k, x)| (k, GaussRational::from_int(x)))
            .collect()
    }

    #[test]
    fn rank_and_solve() {
        let basis = vec![v(&[(0, 1), (1, 2)]), v(&[(1, 1), (2, 1)]), v(&[(0, 1), (1, 3), (2, 1)])];
        let s = SpanSolver::new(&basis);
        assert_eq!(s.rank(), 2);
        let target = v(&[(0, 2), (1, 5), (2, 1)]);
        let x = s.solve(&target).unwrap();
        let mut recon = SparseVec::new();
        for (c, b) in x.iter().zip(&basis) {
            axpy(&mut recon, c, b);
        }
        assert_eq!(recon, target);
        assert!(s.solve(&v(&[(3, 1)])).is_none());
    }

    #[test]
    fn complex_pivots() {
        let i = GaussRational::i();
        let a: SparseVec<u32> = [(0, i.clone()), (1, GaussRational::from_int(1))].into();
        let b: SparseVec<u32> = [(0, GaussRational::from_int(-1)), (1, i.clone())].into();
        // b = i * a, so the rank is one.
        assert_eq!(rank(&[a, b]), 1);
    }
}
