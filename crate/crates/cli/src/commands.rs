//! Data-producing subcommands.

use num_traits::{ToPrimitive, Zero};
use octof4_core::clifford::RealMatrix;
use octof4_core::f4::{critical_set, CriticalSolution, SuperconformalSet};
use octof4_core::frame::{Frame, DIM};
use octof4_core::oscillator::{build_hilbert_basis, build_ladder, solve_lowest_weights, HilbertBasis, LowestWeight};
use octof4_core::scalar::Rational;
use octof4_core::spectrum::{build_spectrum, conjugate_basis, SpectrumTable};
use octof4_core::susy::{build_supercharges, closure_constraints, potential_from_branch, AnsatzParams, Branch};
use octof4_core::{CoreError, Result};
use octof4_numerics::{diagonalize_component, indicial_exponents, ComponentSpectrum, GridSpec, Scheme};
use serde::Serialize;
use serde_json::{json, Value};

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().expect("small rational")
}

#[derive(Serialize)]
pub struct BranchClosure {
    pub branch: Branch,
    pub d: String,
    pub e: String,
    /// Nonzero coefficients of `{Q_i, Q_j}`, `i != j`, for the unconstrained ansatz.
    pub formal_off_diagonal: usize,
    /// Nonzero coefficients of `{Q_i, Q_i} - 2H` shape conditions for the unconstrained ansatz.
    pub formal_hamiltonian_shape: usize,
    /// The same counts after substituting the branch.
    pub branch_off_diagonal: usize,
    pub branch_hamiltonian_shape: usize,
    pub potential: Vec<String>,
    pub critical: CriticalSolution,
}

pub fn solve_closure(f: &Frame) -> Result<Vec<BranchClosure>> {
    let formal = closure_constraints(&build_supercharges(&AnsatzParams::formal(), f)?)?;
    Branch::BOTH
        .iter()
        .map(|&br| {
            let on = closure_constraints(&build_supercharges(&AnsatzParams::on_branch(br), f)?)?;
            let v = potential_from_branch(br, f)?;
            let (critical, _) = critical_set(br, f)?;
            Ok(BranchClosure {
                branch: br,
                d: br.d_of_c().to_string(),
                e: br.e_of_c().to_string(),
                formal_off_diagonal: formal.off_diagonal.len(),
                formal_hamiltonian_shape: formal.hamiltonian_shape.len(),
                branch_off_diagonal: on.off_diagonal.iter().filter(|p| !p.is_zero()).count(),
                branch_hamiltonian_shape: on.hamiltonian_shape.iter().filter(|p| !p.is_zero()).count(),
                potential: v.v.iter().map(|p| p.to_string()).collect(),
                critical,
            })
        })
        .collect()
}

/// Critical sets and the second-branch Hilbert basis.
pub struct HilbertSetup {
    pub frame: Frame,
    pub second: SuperconformalSet,
    pub basis: HilbertBasis,
    pub potential: Vec<Rational>,
}

pub fn hilbert_setup() -> Result<HilbertSetup> {
    let frame = Frame::new()?;
    let (sol, second) = critical_set(Branch::Second, &frame)?;
    let basis = build_hilbert_basis(&build_ladder(&second, &frame)?, &frame)?;
    Ok(HilbertSetup {
        frame,
        second,
        basis,
        potential: sol.potential,
    })
}

/// Spectrum in the realisation of `branch`; the first branch uses the
/// `G_8`-conjugated second-branch basis.
pub fn spectrum(branch: Branch, depth: usize) -> Result<SpectrumTable> {
    let h = hilbert_setup()?;
    match branch {
        Branch::Second => build_spectrum(&build_ladder(&h.second, &h.frame)?, &h.basis, depth),
        Branch::First => {
            let (_, first) = critical_set(Branch::First, &h.frame)?;
            build_spectrum(&build_ladder(&first, &h.frame)?, &conjugate_basis(&h.basis, &h.frame)?, depth)
        }
    }
}

pub fn spectrum_table(t: &SpectrumTable) -> String {
    let mut out = format!("{:>8}  {:>10}  states\n", "energy", "degeneracy");
    for l in &t.levels {
        let names: Vec<&str> = l.states.iter().map(|s| s.name.as_str()).collect();
        out.push_str(&format!("{:>8}  {:>10}  {}\n", l.energy.to_string(), l.degeneracy, names.join(", ")));
    }
    out
}

pub fn lowest_weights(branch: Branch) -> Result<Vec<Vec<LowestWeight>>> {
    let f = Frame::new()?;
    let (_, s) = critical_set(branch, &f)?;
    solve_lowest_weights(&build_ladder(&s, &f)?, &f)
}

pub fn lowest_weight_table(t: &[Vec<LowestWeight>]) -> String {
    let mut out = String::new();
    for (title, pick) in [("exponents", 0), ("energies", 1)] {
        out.push_str(&format!("{title}\nIbar"));
        for k in 1..=DIM {
            out.push_str(&format!(" {k:>5}"));
        }
        out.push('\n');
        for row in t {
            out.push_str(&format!("{:>4}", row[0].ibar));
            for w in row {
                let v = if pick == 0 { &w.beta } else { &w.energy };
                out.push_str(&format!(" {:>5}", v.to_string()));
            }
            out.push('\n');
        }
    }
    out.push_str("norms (square-integrable / regularized sign)\n");
    for w in &t[0] {
        out.push_str(&format!(
            "slot {:>2}: {} / {:?}\n",
            w.slot, w.norm.square_integrable, w.norm.regularized_sign
        ));
    }
    out
}

/// Smallest exponent of the Hilbert basis in each slot: the behaviour `x^a` of
/// the physical tower there.
pub fn tower_exponents(basis: &HilbertBasis) -> Vec<Option<Rational>> {
    (0..DIM)
        .map(|k| {
            basis
                .states
                .iter()
                .filter_map(|s| s.psi.component(k).keys().next().cloned())
                .min()
        })
        .collect()
}

#[derive(Serialize)]
pub struct NumericsComponent {
    pub component: usize,
    pub coupling: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tower_exponent: Option<String>,
    /// Central scheme; selects the larger indicial exponent.
    pub central: ComponentSpectrum,
    /// Factored scheme at the tower exponent, when that is the smaller root.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tower: Option<ComponentSpectrum>,
    pub passed: bool,
}

pub fn numerics(components: &[usize], n_points: usize, x_max: f64, m: usize) -> Result<Vec<NumericsComponent>> {
    let h = hilbert_setup()?;
    let tower = tower_exponents(&h.basis);
    let bad = |e: octof4_numerics::NumericsError| CoreError::Construction(e.to_string());
    let central = GridSpec::new(n_points, x_max, Scheme::Central).map_err(bad)?;
    components
        .iter()
        .map(|&k| {
            if !(1..=DIM).contains(&k) {
                return Err(CoreError::Construction(format!("component {k} outside 1..=16")));
            }
            let v = &h.potential[k - 1];
            let vf = to_f64(v);
            let c = diagonalize_component(k, vf, &central, m).map_err(bad)?;
            let a = tower[k - 1].clone();
            let larger = indicial_exponents(vf).map_err(bad)?[0];
            let t = match &a {
                Some(a) if (to_f64(a) - larger).abs() > 1e-9 => {
                    let g = GridSpec::new(n_points, x_max, Scheme::Factored { exponent: to_f64(a) }).map_err(bad)?;
                    Some(diagonalize_component(k, vf, &g, m).map_err(bad)?)
                }
                _ => None,
            };
            let passed = c.selected().within_tolerance && t.as_ref().is_none_or(|t| t.selected().within_tolerance);
            Ok(NumericsComponent {
                component: k,
                coupling: v.to_string(),
                tower_exponent: a.map(|a| a.to_string()),
                central: c,
                tower: t,
                passed,
            })
        })
        .collect()
}

pub fn numerics_table(rows: &[NumericsComponent]) -> String {
    let mut out = format!(
        "{:>2} {:>7} {:>9} {:>7}  {:>10} {:>10} {:>10}  {}\n",
        "k", "v", "scheme", "a", "computed", "reference", "rel.err", "ok"
    );
    for r in rows {
        for (scheme, s) in std::iter::once(("central", &r.central)).chain(r.tower.as_ref().map(|t| ("factored", t))) {
            let l = s.selected();
            for n in 0..octof4_numerics::COMPARED_LEVELS.min(s.computed.len()) {
                out.push_str(&format!(
                    "{:>2} {:>7} {:>9} {:>7.4}  {:>10.6} {:>10.6} {:>10.2e}  {}\n",
                    r.component,
                    r.coupling,
                    scheme,
                    l.exponent,
                    s.computed[n],
                    l.reference[n],
                    l.rel_error[n],
                    if l.within_tolerance { "yes" } else { "no" }
                ));
            }
        }
    }
    out
}

/// Nonzero tensor entries, one JSON object per line.
pub fn dump_tensors(f: &Frame) -> String {
    let t = &f.tensors;
    let c3 = t.c3_entries().into_iter().map(|(i, v)| json!({"tensor": "C3", "indices": i, "value": v}));
    let c4 = t.c4_entries().into_iter().map(|(i, v)| json!({"tensor": "C4", "indices": i, "value": v}));
    c3.chain(c4).map(|v| format!("{v}\n")).collect()
}

fn integer_rows(m: &RealMatrix) -> Value {
    let rows: Vec<Vec<i64>> = (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c).to_integer().to_i64().expect("integer entry")).collect())
        .collect();
    json!(rows)
}

/// Both gamma families as integer matrices, one JSON object per line.
pub fn dump_gammas(f: &Frame) -> String {
    let small = (1..=7).map(|i| json!({"family": "gamma", "size": 8, "index": i, "matrix": integer_rows(f.small.get(i))}));
    let big = (1..=9).map(|a| json!({"family": "Gamma", "size": 16, "index": a, "matrix": integer_rows(f.gamma(a))}));
    small.chain(big).map(|v| format!("{v}\n")).collect()
}
