//! The degenerate tower `Z^n w_r` of the deformed oscillator and the
//! octonionic formula for the critical potential.

use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::check::Check;
use crate::clifford::RealMatrix;
use crate::diffop::{DiffPoly, OperatorMatrix};
use crate::error::{CoreError, Result};
use crate::f4::SuperconformalSet;
use crate::frame::{Frame, DIM};
use crate::linalg::{rank, SparseVec, SpanSolver};
use crate::oscillator::{norm_verdict, HilbertBasis, LadderSet, NamedState};
use crate::scalar::{int, rat, GaussRational, Rational};
use crate::wave::WaveVector;

/// `Z^n w_r`, `r` 1-based.
#[derive(Debug, Clone, Serialize)]
pub struct TowerState {
    pub n: usize,
    pub r: usize,
    pub name: String,
    #[serde(skip)]
    pub psi: WaveVector,
}

#[derive(Debug, Clone, Serialize)]
pub struct Level {
    #[serde(serialize_with = "crate::scalar::as_string::serialize")]
    pub energy: Rational,
    pub degeneracy: usize,
    pub states: Vec<TowerState>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumTable {
    pub levels: Vec<Level>,
}

impl SpectrumTable {
    pub fn energies(&self) -> Vec<Rational> {
        self.levels.iter().map(|l| l.energy.clone()).collect()
    }

    pub fn degeneracies(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.degeneracy).collect()
    }
}

fn sparse(psi: &WaveVector) -> SparseVec<(usize, Rational)> {
    psi.to_sparse()
}

/// Levels `E_0 + n` for `n = 0..=depth`, where `E_0` is the lowest basis energy.
///
/// Each `Z^n w_r` is generated by exact application, checked to be an
/// `H_1` eigenvector with energy `2n + E_r` and square-integrable. Degeneracy
/// is the rank of the level's states.
pub fn build_spectrum(l: &LadderSet, basis: &HilbertBasis, depth: usize) -> Result<SpectrumTable> {
    let ground = basis
        .states
        .iter()
        .map(|s| s.energy.clone())
        .min()
        .ok_or_else(|| CoreError::Construction("empty basis".into()))?;
    let top = &ground + int(depth as i64);
    let chains: Vec<Result<Vec<TowerState>>> = basis
        .states
        .par_iter()
        .enumerate()
        .map(|(r, w)| tower_chain(l, w, r + 1, &top))
        .collect();
    let mut levels: Vec<Level> = (0..=depth)
        .map(|n| Level {
            energy: &ground + int(n as i64),
            degeneracy: 0,
            states: Vec::new(),
        })
        .collect();
    for chain in chains {
        for st in chain? {
            let e = basis.states[st.r - 1].energy.clone() + int(2 * st.n as i64);
            let offset = &e - &ground;
            let idx = offset
                .is_integer()
                .then(|| offset.to_integer().to_usize())
                .flatten()
                .filter(|&i| i < levels.len())
                .ok_or_else(|| CoreError::Construction(format!("energy {e} off the ladder")))?;
            if e != levels[idx].energy {
                return Err(CoreError::Construction(format!("energy {e} off the ladder")));
            }
            levels[idx].states.push(st);
        }
    }
    for lvl in &mut levels {
        let vecs: Vec<_> = lvl.states.iter().map(|s| sparse(&s.psi)).collect();
        lvl.degeneracy = rank(&vecs);
    }
    Ok(SpectrumTable { levels })
}

fn tower_chain(l: &LadderSet, w: &NamedState, r: usize, top: &Rational) -> Result<Vec<TowerState>> {
    let mut out = Vec::new();
    let mut psi = w.psi.clone();
    let mut n = 0usize;
    loop {
        let e = &w.energy + int(2 * n as i64);
        if &e > top {
            break;
        }
        let got = psi.ratio_of(&l.h1.apply(&psi)?);
        if got != Some(GaussRational::real(e.clone())) {
            return Err(CoreError::Construction(format!("Z^{n} {} is not an eigenvector with E = {e}", w.label)));
        }
        if !norm_verdict(&psi).square_integrable {
            return Err(CoreError::Construction(format!("Z^{n} {} is not square-integrable", w.label)));
        }
        let name = if n == 0 { w.label.clone() } else { format!("Z^{n} {}", w.label) };
        out.push(TowerState {
            n,
            r,
            name,
            psi: psi.clone(),
        });
        psi = l.z.apply(&psi)?;
        n += 1;
    }
    Ok(out)
}

/// Every `a_Ibar^+` maps level `l` into the span of level `l + 1`.
pub fn verify_raising(l: &LadderSet, table: &SpectrumTable) -> Result<Check> {
    let mut checked = 0;
    for pair in table.levels.windows(2) {
        let next: Vec<_> = pair[1].states.iter().map(|s| sparse(&s.psi)).collect();
        let solver = SpanSolver::new(&next);
        for st in &pair[0].states {
            for ibar in 0..8 {
                checked += 1;
                let img = l.adag(ibar).apply(&st.psi)?;
                if !solver.contains(&sparse(&img)) {
                    return Ok(Check::fail(
                        "a^+ raises one level",
                        checked,
                        format!("a_{ibar}^+ ({}) leaves level {}", st.name, pair[1].energy),
                    ));
                }
            }
        }
    }
    Ok(Check::pass("a^+ raises one level", checked))
}

/// Every `R_ij` maps each level into itself.
pub fn verify_r_invariance(s: &SuperconformalSet, table: &SpectrumTable) -> Result<Check> {
    let rs: Vec<(String, OperatorMatrix)> = (1..=8)
        .flat_map(|i| (i + 1..=8).map(move |j| (i, j)))
        .map(|(i, j)| (format!("R_{i}{j}"), s.r_op(i, j)))
        .collect();
    let mut checked = 0;
    for lvl in &table.levels {
        let vecs: Vec<_> = lvl.states.iter().map(|s| sparse(&s.psi)).collect();
        let solver = SpanSolver::new(&vecs);
        for st in &lvl.states {
            for (name, r) in &rs {
                checked += 1;
                let img = r.apply(&st.psi)?;
                if !solver.contains(&sparse(&img)) {
                    return Ok(Check::fail(
                        "levels are R-invariant",
                        checked,
                        format!("{name} ({}) leaves level {}", st.name, lvl.energy),
                    ));
                }
            }
        }
    }
    Ok(Check::pass("levels are R-invariant", checked))
}

/// Carries a basis to the other branch by `psi -> G_8 psi`.
pub fn conjugate_basis(basis: &HilbertBasis, f: &Frame) -> Result<HilbertBasis> {
    let g8 = OperatorMatrix::from_matrix(f.gamma(8), &DiffPoly::x_pow(0));
    let states = basis
        .states
        .iter()
        .map(|s| {
            Ok(NamedState {
                label: s.label.clone(),
                energy: s.energy.clone(),
                psi: g8.apply(&s.psi)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(HilbertBasis { states })
}

/// `(1/72)(G_8 - (1/36) C_ijk G_i G_j G_k) C_lmn G_l G_m G_n`.
pub fn v_formula(f: &Frame) -> RealMatrix {
    let mut cubic = RealMatrix::zeros(DIM, DIM);
    for ([i, j, k], c) in f.tensors.c3_entries() {
        cubic = &cubic + &f.product(&[i, j, k]).scale(&Rational::from_integer(c.into()));
    }
    let left = f.gamma(8) - &cubic.scale(&rat(1, 36));
    (&left * &cubic).scale(&rat(1, 72))
}

/// Supertrace: bosonic minus fermionic diagonal sum.
pub fn supertrace(v: &[Rational]) -> Rational {
    let half = v.len() / 2;
    v.iter()
        .enumerate()
        .fold(Rational::zero(), |acc, (i, x)| if i < half { acc + x } else { acc - x })
}

pub fn verify_v_formula(f: &Frame, v: &[Rational]) -> Vec<Check> {
    let m = v_formula(f);
    let diagonal = m.is_diagonal();
    let entries = m.diagonal_entries();
    let first = (0..DIM).find(|&r| entries[r] != v[r]);
    let st = supertrace(&entries);
    vec![
        Check::from_failure("octonionic formula is diagonal", DIM * DIM, (!diagonal).then(|| "off-diagonal entry".to_string())),
        Check::from_failure(
            "octonionic formula reproduces V",
            DIM,
            first.map(|r| format!("entry {}: {} vs {}", r + 1, entries[r], v[r])),
        ),
        Check::from_failure("str V = 0", 1, (!st.is_zero()).then(|| format!("str V = {st}"))),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f4::critical_set;
    use crate::oscillator::{build_hilbert_basis, build_ladder};
    use crate::susy::Branch;
    use std::sync::OnceLock;

    struct Fx {
        f: Frame,
        s: SuperconformalSet,
        l: LadderSet,
        hb: HilbertBasis,
    }

    fn fx() -> &'static Fx {
        static F: OnceLock<Fx> = OnceLock::new();
        F.get_or_init(|| {
            let f = Frame::new().unwrap();
            let (_, s) = critical_set(Branch::Second, &f).unwrap();
            let l = build_ladder(&s, &f).unwrap();
            let hb = build_hilbert_basis(&l, &f).unwrap();
            Fx { f, s, l, hb }
        })
    }

    #[test]
    fn depth_three() {
        let x = fx();
        let t = build_spectrum(&x.l, &x.hb, 3).unwrap();
        assert_eq!(t.energies(), vec![rat(2, 3), rat(5, 3), rat(8, 3), rat(11, 3)]);
        assert_eq!(t.degeneracies(), vec![7, 8, 8, 8]);
        let ground: Vec<&str> = t.levels[0].states.iter().map(|s| s.name.as_str()).collect();
        assert_eq!(ground, ["b_1", "b_2", "b_3", "b_4", "b_5", "b_6", "b_7"]);
        let first: Vec<&str> = t.levels[1].states.iter().map(|s| s.name.as_str()).collect();
        assert_eq!(first, ["f_0", "f_1", "f_2", "f_3", "f_4", "f_5", "f_6", "f_7"]);
    }

    #[test]
    fn raising_and_r_invariance() {
        let x = fx();
        let t = build_spectrum(&x.l, &x.hb, 3).unwrap();
        assert!(verify_raising(&x.l, &t).unwrap().passed);
        assert!(verify_r_invariance(&x.s, &t).unwrap().passed);
    }

    #[test]
    fn branch_swap_invariance() {
        let x = fx();
        let (_, s1) = critical_set(Branch::First, &x.f).unwrap();
        let l1 = build_ladder(&s1, &x.f).unwrap();
        let hb1 = conjugate_basis(&x.hb, &x.f).unwrap();
        let t1 = build_spectrum(&l1, &hb1, 2).unwrap();
        let t2 = build_spectrum(&x.l, &x.hb, 2).unwrap();
        assert_eq!(t1.energies(), t2.energies());
        assert_eq!(t1.degeneracies(), t2.degeneracies());
    }

    #[test]
    fn v_formula_and_supertrace() {
        let x = fx();
        let mut v = vec![rat(91, 72)];
        v.extend(std::iter::repeat_n(rat(-5, 72), 7));
        v.extend(std::iter::repeat_n(rat(7, 72), 8));
        for c in verify_v_formula(&x.f, &v) {
            assert!(c.passed, "{c:?}");
        }
        assert!(supertrace(&v).is_zero());
    }
}
