//! The full verification run and the artifacts it produces.

use std::collections::BTreeMap;

use num_traits::Zero;

use octof4_core::check::Check;
use octof4_core::clifford::{classify_basis, small_basis_split, small_hodge_duality, verify_clifford, RealMatrix};
use octof4_core::f4::{
    branch_correspondence, build_superconformal, critical_set, generator_basis, r_closure_failure, r_rank,
    record_sl2_brackets, reflected_sign, structure_constants, verify_jacobi_direct, verify_jacobi_sweep,
    verify_seven_constraints, verify_structure_relations, Correspondence, CriticalSolution, EquivalenceEntry,
    Level as Sweep, SuperconformalSet,
};
use octof4_core::frame::{Frame, DIM};
use octof4_core::oscillator::{
    build_hilbert_basis, build_intertwiners, build_ladder, distinct_states, reference_u1, solve_lowest_weights,
    verify_intertwiner_action, verify_ladder, HilbertBasis, LadderSet, LowestWeight, NormSign,
};
use octof4_core::scalar::{int, Rational};
use octof4_core::spectrum::{build_spectrum, conjugate_basis, verify_r_invariance, verify_raising, verify_v_formula, SpectrumTable};
use octof4_core::susy::{
    build_supercharges, closure_constraints, expected_potential, impose_n8, potential_from_branch, AnsatzParams, Branch,
};
use octof4_core::Result;

use crate::reference;
use crate::report::{stage, Report};

pub const DEFAULT_DEPTH: usize = 6;

/// Everything a verification run builds, kept for reports and other subcommands.
#[derive(Default)]
pub struct Artifacts {
    pub critical: BTreeMap<Branch, (CriticalSolution, SuperconformalSet)>,
    pub ladder: Option<LadderSet>,
    pub lowest_weights: Option<Vec<Vec<LowestWeight>>>,
    pub basis: Option<HilbertBasis>,
    pub spectrum: Option<SpectrumTable>,
    pub equivalence: Option<Vec<EquivalenceEntry>>,
}

pub fn octonion_checks(f: &Frame) -> Vec<Check> {
    let d = f.tensors.verify_duality();
    vec![Check::from_failure(
        "6 C_ijkl = eps_ijklmnp C_mnp",
        d.checked,
        d.counterexample.map(|c| format!("{:?}: {} vs {}", c.indices, c.lhs, c.rhs)),
    )]
}

pub fn clifford_checks(f: &Frame) -> Result<Vec<Check>> {
    let small: Vec<&RealMatrix> = (1..=7).map(|i| f.small.get(i)).collect();
    let big: Vec<&RealMatrix> = (1..=9).map(|a| f.gamma(a)).collect();
    let sweep = |name: &str, r: std::result::Result<usize, (usize, usize)>, total: usize| match r {
        Ok(n) => Check::pass(name, n),
        Err((a, b)) => Check::fail(name, total, format!("pair ({a}, {b})")),
    };
    let mut out = vec![
        sweep("{gamma_i, gamma_j} = -2 delta_ij I_8", verify_clifford(&small, -1), 49),
        sweep("{Gamma_A, Gamma_B} = 2 delta_AB I_16", verify_clifford(&big, 1), 81),
    ];
    let (sym_rank, sym_ok, anti_rank, anti_ok) = small_basis_split(&f.small);
    out.push(Check::from_failure(
        "8x8 split 36 symmetric + 28 antisymmetric",
        64,
        (!(sym_rank == 36 && sym_ok && anti_rank == 28 && anti_ok)).then(|| format!("ranks {sym_rank}, {anti_rank}")),
    ));
    out.push(Check::from_failure(
        "8x8 products are Hodge dual",
        128,
        (!small_hodge_duality(&f.small)).then(|| "duality fails".to_string()),
    ));
    let c = classify_basis(&f.big)?;
    let mismatch = reference::CLASS_TABLE.iter().zip(&c.rows).find_map(|(&(label, dg, sym, n), row)| {
        (row.label != label || row.block_diagonal != dg || row.symmetric != sym || row.count != n)
            .then(|| format!("{} ({}, {}, {})", row.label, row.block_diagonal, row.symmetric, row.count))
    });
    out.push(Check::from_failure("16x16 classification table", 16, mismatch));
    out.push(Check::from_failure(
        "256 = 136 symmetric + 120 antisymmetric",
        256,
        (!(c.total == 256 && c.symmetric_total == 136 && c.antisymmetric_total == 120))
            .then(|| format!("{} = {} + {}", c.total, c.symmetric_total, c.antisymmetric_total)),
    ));
    out.push(Check::from_failure(
        "products are linearly independent",
        256 * 257 / 2,
        (!c.linearly_independent).then(|| "dependent products".to_string()),
    ));
    out.push(Check::from_failure(
        "16x16 products are Hodge dual",
        256,
        (!c.hodge_duality).then(|| "duality fails".to_string()),
    ));
    Ok(out)
}

pub fn closure_checks(f: &Frame, br: Branch) -> Result<Vec<Check>> {
    let q = build_supercharges(&AnsatzParams::on_branch(br), f)?;
    let cons = closure_constraints(&q)?;
    let first_nonzero = |v: &[octof4_core::poly::ParamPoly]| v.iter().find(|p| !p.is_zero()).map(|p| p.to_string());
    let v = potential_from_branch(br, f)?;
    let expected = expected_potential(br);
    let mismatch = (0..DIM).find(|&k| v.v[k] != expected.v[k]).map(|k| format!("slot {}: {}", k + 1, v.v[k]));
    let n8 = impose_n8(br, f);
    Ok(vec![
        Check::from_failure(
            format!("{{Q_i, Q_j}} = 0 for i != j ({})", br.name()),
            21,
            first_nonzero(&cons.off_diagonal),
        ),
        Check::from_failure(
            format!("{{Q_i, Q_i}} = 2H with diagonal V ({})", br.name()),
            7,
            first_nonzero(&cons.hamiltonian_shape),
        ),
        Check::from_failure(format!("V(c) matches closed form ({})", br.name()), DIM, mismatch),
        Check::from_failure(format!("N=8 extension closes ({})", br.name()), 8, n8.err().map(|e| e.to_string())),
    ])
}

pub fn critical_checks(sol: &CriticalSolution) -> Vec<Check> {
    let br = sol.branch;
    let want_c = reference::critical_c(br);
    let want_p = reference::critical_params(br);
    let want_v = reference::critical_potential(br);
    vec![
        Check::from_failure(
            format!("critical c ({})", br.name()),
            1,
            (sol.c != want_c).then(|| format!("c = {}", sol.c)),
        ),
        Check::from_failure(
            format!("critical (a, b, c, d, e) ({})", br.name()),
            5,
            (sol.params != want_p).then(|| strings(&sol.params).join(", ")),
        ),
        Check::from_failure(
            format!("critical V ({})", br.name()),
            DIM,
            (sol.potential != want_v).then(|| strings(&sol.potential).join(", ")),
        ),
    ]
}

pub fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn f4_checks(s: &SuperconformalSet, f: &Frame, level: Sweep, notes: &mut Vec<String>) -> Result<Vec<Check>> {
    let mut out = verify_seven_constraints(s, f);
    let probe = build_superconformal(&AnsatzParams::n8(s.branch).at_c(&int(1)), s.branch, f)?;
    let rank = r_rank(&probe);
    out.push(Check::from_failure(
        "rank of R_IJ exceeds 21 at c = 1",
        28,
        (rank <= reference::R_RANK).then(|| format!("rank {rank}")),
    ));
    out.push(Check::from_failure(
        "span{R_IJ} closes only at criticality",
        2,
        match (r_closure_failure(s), r_closure_failure(&probe)) {
            (None, Some(_)) => None,
            (Some(w), _) => Some(format!("fails at criticality: {w}")),
            (None, None) => Some("also closes at c = 1".into()),
        },
    ));
    out.extend(verify_structure_relations(s, f, level));
    let basis = generator_basis(s);
    if level == Sweep::Full {
        let sc = structure_constants(&basis)?;
        out.push(verify_jacobi_sweep(&sc));
        notes.extend(record_sl2_brackets(&sc));
    }
    out.push(verify_jacobi_direct(&basis)?);
    Ok(out)
}

pub fn equivalence_check(entries: &[EquivalenceEntry]) -> Check {
    let off = entries
        .iter()
        .find(|e| e.correspondence != reflected_sign(&e.generator))
        .map(|e| format!("{} is {:?}", e.generator, e.correspondence));
    Check::from_failure("G_8 conjugation matches branches up to index-8 reflection", entries.len(), off)
}

/// Summary of the literal generator-by-generator comparison.
pub fn equivalence_note(entries: &[EquivalenceEntry]) -> String {
    let negated: Vec<&str> = entries
        .iter()
        .filter(|e| e.correspondence == Correspondence::Negated)
        .map(|e| e.generator.as_str())
        .collect();
    let equal = entries.iter().filter(|e| e.correspondence == Correspondence::Equal).count();
    format!(
        "literal G_8 conjugation: {equal} of {} generators equal, negated: {}",
        entries.len(),
        negated.join(" ")
    )
}

pub fn lowest_weight_checks(table: &[Vec<LowestWeight>]) -> Vec<Check> {
    let exps = (0..8).find(|&i| table[i].iter().map(|w| w.beta.clone()).collect::<Vec<_>>() != reference::lowest_weight_exponents(i));
    let ens = (0..8).find(|&i| table[i].iter().map(|w| w.energy.clone()).collect::<Vec<_>>() != reference::lowest_weight_energies(i));
    let distinct = distinct_states(table);
    let bosonic = (1..8).find(|&i| (0..8).any(|k| table[i][k].psi != table[0][k].psi));
    let lambda1 = &table[0][0].norm;
    let small = table
        .iter()
        .flatten()
        .filter(|w| w.beta == octof4_core::scalar::rat(-1, 6))
        .find(|w| !(w.norm.square_integrable && w.norm.regularized_sign == NormSign::Positive));
    vec![
        Check::from_failure("lowest-weight exponents", 128, exps.map(|i| format!("row Ibar = {i}"))),
        Check::from_failure("lowest-weight energies", 128, ens.map(|i| format!("row Ibar = {i}"))),
        Check::from_failure(
            "24 distinct lowest weights",
            128,
            (distinct != reference::DISTINCT_LOWEST_WEIGHTS).then(|| format!("{distinct} distinct")),
        ),
        Check::from_failure("bosonic lowest weights independent of Ibar", 64, bosonic.map(|i| format!("Ibar = {i}"))),
        Check::from_failure(
            "lambda_1 has negative regularized norm",
            1,
            (lambda1.square_integrable || lambda1.regularized_sign != NormSign::Negative).then(|| format!("{lambda1:?}")),
        ),
        Check::from_failure(
            "x^(-1/6) states are square-integrable with positive norm",
            56,
            small.map(|w| format!("Ibar = {}, slot {}", w.ibar, w.slot)),
        ),
    ]
}

pub fn spectrum_checks(table: &SpectrumTable, depth: usize) -> Vec<Check> {
    let want_e: Vec<Rational> = (0..=depth).map(|n| reference::ground_energy() + int(n as i64)).collect();
    let want_d = reference::degeneracies(depth);
    vec![
        Check::from_failure(
            "energies 2/3 + n",
            depth + 1,
            (table.energies() != want_e).then(|| strings(&table.energies()).join(", ")),
        ),
        Check::from_failure(
            "degeneracies 7, 8, 8, ...",
            depth + 1,
            (table.degeneracies() != want_d).then(|| format!("{:?}", table.degeneracies())),
        ),
    ]
}

pub fn intertwiner_checks(l: &LadderSet, f: &Frame, notes: &mut Vec<String>) -> Result<Vec<Check>> {
    let iw = build_intertwiners(l, f)?;
    notes.push(format!("signed-permutation intertwiners per i: {:?}", iw.solution_counts));
    let mut bad = None;
    for (n, u) in iw.u.iter().enumerate() {
        if !verify_intertwiner_action(u, l, n + 1)? {
            bad.get_or_insert(format!("i = {}", n + 1));
        }
    }
    Ok(vec![
        Check::from_failure("U_1 equals the explicit matrix", 1, (iw.u[0] != reference_u1()).then(|| "differs".to_string())),
        Check::from_failure("U_i a_i U_i^+ = a_0 for i = 1..7", 7, bad),
    ])
}

/// The second-branch Hilbert space and, when available, its first-branch image.
pub fn hilbert_stages(report: &mut Report, art: &mut Artifacts, f: &Frame, depth: usize, timings: bool) {
    let Some((_, s2)) = art.critical.get(&Branch::Second) else {
        report.push("oscillator", Check::fail("critical set available", 0, "second branch missing"), None);
        return;
    };
    stage(report, "oscillator", timings, || {
        let l = build_ladder(s2, f)?;
        let checks = verify_ladder(&l)?;
        art.ladder = Some(l);
        Ok(checks)
    });
    let Some(l) = art.ladder.as_ref() else { return };
    stage(report, "lowest-weights", timings, || {
        let t = solve_lowest_weights(l, f)?;
        let checks = lowest_weight_checks(&t);
        art.lowest_weights = Some(t);
        Ok(checks)
    });
    stage(report, "hilbert", timings, || {
        let b = build_hilbert_basis(l, f)?;
        art.basis = Some(b);
        Ok(vec![Check::pass("f_0 consistent and a_i^+ b_j = C_ijk f_k", 49)])
    });
    let Some(basis) = art.basis.as_ref() else { return };
    stage(report, "spectrum", timings, || {
        let t = build_spectrum(l, basis, depth)?;
        let mut checks = spectrum_checks(&t, depth);
        checks.push(verify_raising(l, &t)?);
        checks.push(verify_r_invariance(s2, &t)?);
        art.spectrum = Some(t);
        Ok(checks)
    });
    if let (Some((_, s1)), Some(t2)) = (art.critical.get(&Branch::First), art.spectrum.as_ref()) {
        stage(report, "spectrum", timings, || {
            let l1 = build_ladder(s1, f)?;
            let t1 = build_spectrum(&l1, &conjugate_basis(basis, f)?, depth.min(2))?;
            let same = t1.levels.iter().zip(&t2.levels).all(|(a, b)| a.energy == b.energy && a.degeneracy == b.degeneracy);
            Ok(vec![Check::from_failure(
                "spectrum invariant under branch swap",
                t1.levels.len(),
                (!same).then(|| format!("{:?}", t1.degeneracies())),
            )])
        });
    }
    let mut notes = Vec::new();
    stage(report, "intertwiners", timings, || intertwiner_checks(l, f, &mut notes));
    report.notes.extend(notes);
    stage(report, "nonassociativity", timings, || {
        Ok(verify_v_formula(f, &reference::critical_potential(Branch::Second)))
    });
}

/// Runs every check; `level` controls the two long sweeps.
pub fn verify(branch: Branch, level: Sweep, depth: usize, timings: bool) -> (Report, Artifacts) {
    let level_name = match level {
        Sweep::Quick => "quick",
        Sweep::Full => "full",
    };
    let mut report = Report::new("verify", branch, Some(level_name));
    let mut art = Artifacts::default();
    let frame = match Frame::new() {
        Ok(f) => f,
        Err(e) => {
            report.push("frame", Check::fail("octonionic frame", 0, e.to_string()), None);
            return (report, art);
        }
    };
    let f = &frame;
    stage(&mut report, "octonion", timings, || Ok(octonion_checks(f)));
    stage(&mut report, "clifford", timings, || clifford_checks(f));
    for br in Branch::BOTH {
        stage(&mut report, "closure", timings, || closure_checks(f, br));
    }
    for br in Branch::BOTH {
        stage(&mut report, "critical", timings, || {
            let (sol, s) = critical_set(br, f)?;
            let checks = critical_checks(&sol);
            art.critical.insert(br, (sol, s));
            Ok(checks)
        });
    }
    if let Some((sol, s)) = art.critical.get(&branch) {
        report.parameters = strings(&sol.params);
        let mut notes = Vec::new();
        let reflected;
        let s = if branch == Branch::First {
            notes.push("first-branch relations are checked after Q_8 -> -Q_8 (index-8 reflection)".into());
            reflected = s.reflect_index8();
            &reflected
        } else {
            s
        };
        stage(&mut report, "f4", timings, || f4_checks(s, f, level, &mut notes));
        report.notes.extend(notes);
    }
    if let (Some((_, s1)), Some((_, s2))) = (art.critical.get(&Branch::First), art.critical.get(&Branch::Second)) {
        let mut entries = None;
        stage(&mut report, "equivalence", timings, || {
            let e = branch_correspondence(s1, s2, f)?;
            let check = equivalence_check(&e);
            entries = Some(e);
            let reflected = branch_correspondence(&s1.reflect_index8(), s2, f)?;
            let off = reflected
                .iter()
                .find(|e| e.correspondence != Correspondence::Equal)
                .map(|e| e.generator.clone());
            Ok(vec![
                check,
                Check::from_failure("G_8 conjugation of the reflected first branch is exact", reflected.len(), off),
            ])
        });
        if let Some(e) = &entries {
            report.notes.push(equivalence_note(e));
        }
        art.equivalence = entries;
    }
    hilbert_stages(&mut report, &mut art, f, depth, timings);
    (report, art)
}
