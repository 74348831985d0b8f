//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines are always printed. The process
//! fails if any criterion fails unexpectedly; criterion 14 is a known deviation
//! whose exact failure pattern is itself asserted.

use std::time::{Duration, Instant};

use num_traits::{Signed, ToPrimitive, Zero};
use octof4_core::clifford::{classify_basis, verify_clifford, RealMatrix};
use octof4_core::diffop::OperatorMatrix;
use octof4_core::f4::{
    branch_correspondence, build_superconformal, find_critical_c, generator_basis, r_rank, structure_constants,
    verify_jacobi_direct, verify_jacobi_sweep, verify_seven_constraints, verify_structure_relations, Correspondence,
    CriticalSolution, Level, SuperconformalSet,
};
use octof4_core::frame::Frame;
use octof4_core::oscillator::{
    build_hilbert_basis, build_intertwiners, build_ladder, distinct_states, intertwines, solve_lowest_weights,
    verify_intertwiner_action, verify_ladder, LadderSet, NormSign,
};
use octof4_core::poly::{Generator, ParamPoly};
use octof4_core::scalar::{int, rat, GaussRational, Rational};
use octof4_core::spectrum::{build_spectrum, verify_v_formula};
use octof4_core::susy::{build_supercharges, closure_constraints, potential_from_branch, AnsatzParams, Branch};
use octof4_core::wave::WaveVector;
use octof4_numerics::{diagonalize_component, GridSpec, Scheme};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn ints(m: &RealMatrix) -> Vec<Vec<i64>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c).to_integer().to_i64().unwrap()).collect())
        .collect()
}

fn int_anticommutator(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = vec![vec![0; n]; n];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, slot) in row.iter_mut().enumerate() {
            *slot = (0..n).map(|k| a[r][k] * b[k][c] + b[r][k] * a[k][c]).sum();
        }
    }
    out
}

fn clifford_oracle(gs: &[Vec<Vec<i64>>], sign: i64) -> bool {
    let n = gs[0].len();
    gs.iter().enumerate().all(|(a, ga)| {
        gs.iter().enumerate().all(|(b, gb)| {
            let ac = int_anticommutator(ga, gb);
            (0..n).all(|r| (0..n).all(|c| ac[r][c] == if a == b && r == c { 2 * sign } else { 0 }))
        })
    })
}

fn c1(f: &Frame) -> Outcome {
    let small: Vec<&RealMatrix> = (1..=7).map(|i| f.small.get(i)).collect();
    let big: Vec<&RealMatrix> = (1..=9).map(|a| f.gamma(a)).collect();
    let start = Instant::now();
    let (s, b) = (verify_clifford(&small, -1), verify_clifford(&big, 1));
    let elapsed = start.elapsed();
    let oracle = clifford_oracle(&small.iter().map(|m| ints(m)).collect::<Vec<_>>(), -1)
        && clifford_oracle(&big.iter().map(|m| ints(m)).collect::<Vec<_>>(), 1);
    outcome(
        s == Ok(49) && b == Ok(81) && oracle && elapsed < Duration::from_secs(1),
        format!("{s:?} / {b:?} pairs, integer oracle {oracle}, {elapsed:.2?}"),
    )
}

fn parity(idx: &[usize]) -> i32 {
    for i in 0..idx.len() {
        for j in i + 1..idx.len() {
            if idx[i] == idx[j] {
                return 0;
            }
        }
    }
    let inversions = (0..idx.len()).flat_map(|i| (i + 1..idx.len()).map(move |j| (i, j))).filter(|&(i, j)| idx[i] > idx[j]).count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn c2(f: &Frame) -> Outcome {
    let t = &f.tensors;
    let report = t.verify_duality();
    let mut bad = 0;
    for i in 1..=7 {
        for j in 1..=7 {
            for k in 1..=7 {
                for l in 1..=7 {
                    let mut rhs = 0;
                    for m in 1..=7 {
                        for n in 1..=7 {
                            for p in 1..=7 {
                                rhs += parity(&[i, j, k, l, m, n, p]) * t.c3(m, n, p) as i32;
                            }
                        }
                    }
                    if 6 * t.c4(i, j, k, l) as i32 != rhs {
                        bad += 1;
                    }
                }
            }
        }
    }
    outcome(
        report.passed && report.checked == 2401 && bad == 0,
        format!("{} tuples, independent recount mismatches {bad}", report.checked),
    )
}

const TABLE: [(bool, bool, usize); 16] = [
    (true, true, 1),
    (false, true, 7),
    (false, true, 1),
    (true, true, 1),
    (true, false, 21),
    (true, false, 7),
    (false, false, 7),
    (false, false, 1),
    (false, false, 35),
    (false, false, 21),
    (true, false, 21),
    (true, false, 7),
    (true, true, 35),
    (true, true, 35),
    (false, true, 35),
    (false, true, 21),
];

fn c3(f: &Frame) -> Outcome {
    let c = match classify_basis(&f.big) {
        Ok(c) => c,
        Err(e) => return outcome(false, e.to_string()),
    };
    let rows: Vec<(bool, bool, usize)> = c.rows.iter().map(|r| (r.block_diagonal, r.symmetric, r.count)).collect();
    let by_rank: Vec<usize> = [0..1, 1..4, 4..8, 8..12, 12..16]
        .into_iter()
        .map(|r| rows[r].iter().map(|x| x.2).sum())
        .collect();
    outcome(
        rows == TABLE && by_rank == [1, 9, 36, 84, 126] && c.total == 256,
        format!("rank totals {by_rank:?}, total {}", c.total),
    )
}

fn poly(constant: Rational, linear: i64, quadratic: i64) -> ParamPoly {
    let c = ParamPoly::generator(Generator::C);
    let c2 = &c * &c;
    &(&ParamPoly::from_rational(constant) + &c.scale(&GaussRational::from_int(linear))) + &c2.scale(&GaussRational::from_int(quadratic))
}

fn c4(f: &Frame) -> Outcome {
    let mut detail = Vec::new();
    let mut ok = true;
    for br in Branch::BOTH {
        let base = poly(rat(-1, 8), 0, 32);
        let plus = poly(rat(3, 8), 8, 32);
        let minus = poly(rat(3, 8), -8, 32);
        let want: Vec<ParamPoly> = match br {
            Branch::First => std::iter::repeat_n(base, 8).chain([plus]).chain(std::iter::repeat_n(minus, 7)).collect(),
            Branch::Second => std::iter::once(minus).chain(std::iter::repeat_n(plus, 7)).chain(std::iter::repeat_n(base, 8)).collect(),
        };
        let residuals = build_supercharges(&AnsatzParams::on_branch(br), f)
            .and_then(|q| closure_constraints(&q))
            .map(|c| c.off_diagonal.iter().filter(|p| !p.is_zero()).count());
        let v = potential_from_branch(br, f).map(|v| v.v);
        let branch_ok = residuals.as_ref().is_ok_and(|n| *n == 0) && v.as_ref().is_ok_and(|v| *v == want);
        ok &= branch_ok;
        detail.push(format!("{}: residuals {:?}, V(c) {}", br.name(), residuals.ok(), if branch_ok { "ok" } else { "differs" }));
    }
    outcome(ok, detail.join("; "))
}

fn c5(sols: &[(Branch, CriticalSolution)]) -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for (br, sol) in sols {
        let (c, params, v): (Rational, [Rational; 5], Vec<Rational>) = match br {
            Branch::First => (
                rat(1, 12),
                [rat(-1, 36), int(0), rat(1, 12), rat(1, 36), int(0)],
                std::iter::repeat_n(rat(7, 72), 8).chain([rat(91, 72)]).chain(std::iter::repeat_n(rat(-5, 72), 7)).collect(),
            ),
            Branch::Second => (
                rat(-1, 12),
                [rat(1, 36), int(0), rat(-1, 12), rat(1, 36), int(0)],
                std::iter::once(rat(91, 72)).chain(std::iter::repeat_n(rat(-5, 72), 7)).chain(std::iter::repeat_n(rat(7, 72), 8)).collect(),
            ),
        };
        ok &= sol.c == c && sol.params == params && sol.potential == v;
        detail.push(format!("{}: c = {}", br.name(), sol.c));
    }
    outcome(ok, detail.join(", "))
}

fn c6(s: &SuperconformalSet, f: &Frame) -> Outcome {
    let checks = verify_seven_constraints(s, f);
    let probe = build_superconformal(&AnsatzParams::n8(Branch::Second).at_c(&int(1)), Branch::Second, f);
    let probe_rank = probe.as_ref().map(r_rank).unwrap_or(0);
    let rank = r_rank(s);
    outcome(
        checks.iter().all(|c| c.passed) && rank == 21 && probe_rank > 21,
        format!("rank {rank} at criticality, {probe_rank} at c = 1"),
    )
}

fn c7(s: &SuperconformalSet, f: &Frame) -> Outcome {
    let start = Instant::now();
    let mut checks = verify_structure_relations(s, f, Level::Full);
    let basis = generator_basis(s);
    let sweep = structure_constants(&basis).map(|sc| verify_jacobi_sweep(&sc));
    let full = start.elapsed();
    let start = Instant::now();
    let quick = verify_structure_relations(s, f, Level::Quick);
    let direct = verify_jacobi_direct(&basis);
    let quick_time = start.elapsed();
    let quick_ok = quick.iter().all(|c| c.passed) && direct.as_ref().is_ok_and(|c| c.passed);
    let sweep_checked = sweep.as_ref().map(|c| c.checked).unwrap_or(0);
    match sweep {
        Ok(c) => checks.push(c),
        Err(e) => return outcome(false, e.to_string()),
    }
    outcome(
        checks.iter().all(|c| c.passed)
            && sweep_checked == 40 * 40 * 40
            && quick_ok
            && full < Duration::from_secs(600)
            && quick_time < Duration::from_secs(10),
        format!("{sweep_checked} Jacobi triples, full {full:.2?}, quick {quick_time:.2?}"),
    )
}

fn expected_y(ibar: usize) -> Vec<Rational> {
    let mut y = vec![rat(-7, 3)];
    y.extend(std::iter::repeat_n(rat(1, 3), 7));
    y.extend((0..8).map(|j| if j == ibar { rat(7, 3) } else { rat(-1, 3) }));
    y
}

fn c8(l: &LadderSet) -> Outcome {
    let checks = match verify_ladder(l) {
        Ok(c) => c,
        Err(e) => return outcome(false, e.to_string()),
    };
    let y_ok = (0..8).all(|i| l.y(i) == expected_y(i).as_slice());
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    outcome(failed.is_empty() && y_ok, format!("{} identities x 8, Y table {}, failed {failed:?}", checks.len(), y_ok))
}

fn c9(l: &LadderSet, f: &Frame) -> Outcome {
    let t = match solve_lowest_weights(l, f) {
        Ok(t) => t,
        Err(e) => return outcome(false, e.to_string()),
    };
    let mut ok = true;
    for (ibar, row) in t.iter().enumerate() {
        for (k, w) in row.iter().enumerate() {
            let (beta, energy) = match k {
                0 => (rat(-7, 6), rat(-2, 3)),
                1..=7 => (rat(1, 6), rat(2, 3)),
                _ if k - 8 == ibar => (rat(7, 6), rat(5, 3)),
                _ => (rat(-1, 6), rat(1, 3)),
            };
            ok &= w.beta == beta && w.energy == energy;
        }
    }
    let distinct = distinct_states(&t);
    let lambda1 = t[0][0].norm;
    let negative = !lambda1.square_integrable && lambda1.regularized_sign == NormSign::Negative;
    let small_ok = t
        .iter()
        .flatten()
        .filter(|w| w.beta == rat(-1, 6))
        .all(|w| w.norm.square_integrable && w.norm.regularized_sign == NormSign::Positive);
    outcome(
        ok && distinct == 24 && negative && small_ok,
        format!("tables {ok}, {distinct} distinct, lambda_1 {:?}, x^(-1/6) positive {small_ok}", lambda1.regularized_sign),
    )
}

fn c10(l: &LadderSet, f: &Frame) -> Outcome {
    let basis = match build_hilbert_basis(l, f) {
        Ok(b) => b,
        Err(e) => return outcome(false, e.to_string()),
    };
    let spectrum = build_spectrum(l, &basis, 6);
    let (energies, degeneracies) = match &spectrum {
        Ok(s) => (s.energies(), s.degeneracies()),
        Err(e) => return outcome(false, e.to_string()),
    };
    let want_e: Vec<Rational> = (0..=6).map(|n| rat(2, 3) + int(n)).collect();
    let get = |label: &str| basis.get(label).unwrap().psi.clone();
    let mut covariant = true;
    for i in 1..=7 {
        for j in (1..=7).filter(|&j| j != i) {
            let lhs = l.adag(i).apply(&get(&format!("b_{j}"))).unwrap();
            let mut rhs = WaveVector::zero(16);
            for k in 1..=7 {
                let c = f.tensors.c3(i, j, k);
                if c != 0 {
                    rhs = rhs.add(&get(&format!("f_{k}")).scale(&GaussRational::from_int(c.into())));
                }
            }
            covariant &= lhs == rhs;
        }
    }
    let quarter = GaussRational::from_ratio(1, 4);
    let zs: Vec<OperatorMatrix> = (0..8).map(|i| l.adag(i).anticommutator(l.adag(i)).unwrap().scale(&quarter)).collect();
    let z_same = zs.iter().all(|z| *z == zs[0]);
    outcome(
        energies == want_e && degeneracies == [7, 8, 8, 8, 8, 8, 8] && covariant && z_same,
        format!("degeneracies {degeneracies:?}, covariant {covariant}, Z independent {z_same}"),
    )
}

fn c11(f: &Frame, v: &[Rational]) -> Outcome {
    let checks = verify_v_formula(f, v);
    let str_v: Rational = v[..8].iter().cloned().sum::<Rational>() - v[8..].iter().cloned().sum::<Rational>();
    outcome(
        checks.iter().all(|c| c.passed) && str_v.is_zero(),
        format!("{} checks, str V = {str_v}", checks.len()),
    )
}

/// The explicit `U_1`, as `(row, col, sign)`, 1-based.
const U1: [(usize, usize, i64); 16] = [
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

fn is_signed_permutation(m: &RealMatrix) -> bool {
    let nonzero = |r: usize, c: usize| !m.get(r, c).is_zero();
    (0..16).all(|r| {
        (0..16).filter(|&c| nonzero(r, c)).count() == 1
            && (0..16).filter(|&c| nonzero(c, r)).count() == 1
            && (0..16).all(|c| !nonzero(r, c) || m.get(r, c).abs() == int(1))
    })
}

fn c12(l: &LadderSet, f: &Frame) -> Outcome {
    let iw = match build_intertwiners(l, f) {
        Ok(i) => i,
        Err(e) => return outcome(false, e.to_string()),
    };
    let explicit = RealMatrix::from_fn(16, 16, |r, c| {
        U1.iter().find(|&&(rr, cc, _)| rr == r + 1 && cc == c + 1).map_or(int(0), |&(_, _, s)| int(s))
    });
    let v = octof4_core::matrix::ExactMatrix::diagonal(&l.potential.v);
    let all_ok = iw.u.iter().enumerate().all(|(n, u)| {
        is_signed_permutation(u)
            && intertwines(u, l, f, n + 1, &v).unwrap_or(false)
            && verify_intertwiner_action(u, l, n + 1).unwrap_or(false)
    });
    outcome(
        iw.u[0] == explicit && iw.u.len() == 7 && all_ok,
        format!("U_1 matches {}, U_1..U_7 verified {all_ok}", iw.u[0] == explicit),
    )
}

fn oracle_ladder(a: f64, m: usize) -> Vec<f64> {
    (0..m).map(|n| 2.0 * n as f64 + a + 0.5).collect()
}

fn c13(v: &[Rational]) -> Outcome {
    let start = Instant::now();
    let central = GridSpec::default();
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for (k, vk) in v.iter().enumerate() {
        let vf = vk.to_f64().unwrap();
        let larger = 0.5 + (0.25 + 2.0 * vf).sqrt();
        let mut runs = vec![(central, larger)];
        // the physical tower uses the smaller root where both are normalizable and it is above -1/2
        if vf < 0.0 {
            let smaller = 0.5 - (0.25 + 2.0 * vf).sqrt();
            runs.push((GridSpec::new(2000, 12.0, Scheme::Factored { exponent: smaller }).unwrap(), smaller));
        }
        for (grid, a) in runs {
            let tol = if a >= 2.0 { 2e-3 } else { 2e-2 };
            let s = match diagonalize_component(k + 1, vf, &grid, 6) {
                Ok(s) => s,
                Err(_) => return outcome(false, format!("component {} failed", k + 1)),
            };
            for (got, want) in s.computed.iter().zip(oracle_ladder(a, 3)) {
                let rel = (got - want).abs() / want;
                worst = worst.max(rel / tol);
                ok &= rel <= tol;
            }
            for w in s.computed[..3].windows(2) {
                ok &= ((w[1] - w[0]) - 2.0).abs() / 2.0 <= tol;
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        ok && elapsed < Duration::from_secs(30),
        format!("worst error/tolerance {worst:.3}, {elapsed:.2?} for 16 components"),
    )
}

fn negated_by_reflection(name: &str) -> bool {
    name == "Q_8" || name == "Qt_8" || (name.starts_with("R_") && name.ends_with('8'))
}

/// Literal check, plus whether the failure has exactly the index-8 reflection pattern.
fn c14(s1: &SuperconformalSet, s2: &SuperconformalSet, f: &Frame) -> (Outcome, bool) {
    let entries = match branch_correspondence(s1, s2, f) {
        Ok(e) => e,
        Err(e) => return (outcome(false, e.to_string()), false),
    };
    let literal = entries.iter().all(|e| e.correspondence == Correspondence::Equal);
    let pattern = entries.len() == 47
        && entries.iter().all(|e| {
            e.correspondence
                == if negated_by_reflection(&e.generator) {
                    Correspondence::Negated
                } else {
                    Correspondence::Equal
                }
        });
    let negated = entries.iter().filter(|e| e.correspondence == Correspondence::Negated).count();
    (
        outcome(literal, format!("{} of 47 equal, {negated} negated (Q_8, Qt_8, R_i8)", 47 - negated)),
        pattern,
    )
}

fn main() {
    let f = Frame::new().expect("frame");
    let mut lines: Vec<(u8, &str, Outcome)> = vec![
        (1, "Clifford sweeps", c1(&f)),
        (2, "octonionic duality", c2(&f)),
        (3, "basis classification", c3(&f)),
        (4, "closure branches and V(c)", c4(&f)),
    ];
    let sols: Vec<(Branch, CriticalSolution)> = Branch::BOTH.iter().map(|&b| (b, find_critical_c(b, &f).expect("critical coupling"))).collect();
    lines.push((5, "critical coupling", c5(&sols)));
    let sets: Vec<SuperconformalSet> = sols.iter().map(|(b, s)| build_superconformal(&s.ansatz(), *b, &f).expect("generators")).collect();
    let (s1, s2) = (&sets[0], &sets[1]);
    lines.push((6, "seven constraints and rank", c6(s2, &f)));
    lines.push((7, "structure relations and Jacobi", c7(s2, &f)));
    let l = build_ladder(s2, &f).expect("ladder");
    lines.push((8, "ladder algebra", c8(&l)));
    lines.push((9, "lowest weights", c9(&l, &f)));
    lines.push((10, "Hilbert tower", c10(&l, &f)));
    lines.push((11, "quasi-nonassociativity", c11(&f, &sols[1].1.potential)));
    lines.push((12, "intertwiners", c12(&l, &f)));
    lines.push((13, "numerics oracle", c13(&sols[1].1.potential)));
    let (o14, pattern) = c14(s1, s2, &f);
    lines.push((14, "branch equivalence", o14));

    let mut unexpected = Vec::new();
    for (n, title, o) in &lines {
        let status = if o.passed { "PASS" } else { "FAIL" };
        let known = *n == 14 && !o.passed && pattern;
        let suffix = if known { " (known deviation: exact up to the index-8 reflection Q_8 -> -Q_8)" } else { "" };
        println!("criterion {n:>2}: {status}  {title}: {}{suffix}", o.detail);
        if !o.passed && !known {
            unexpected.push(*n);
        }
        if *n == 14 && o.passed {
            unexpected.push(14);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
