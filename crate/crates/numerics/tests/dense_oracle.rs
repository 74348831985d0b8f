use nalgebra::DMatrix;
use octof4_numerics::{assemble, lowest_eigenvalues, GridSpec, Scheme};
use proptest::prelude::*;

fn dense_lowest(diag: &[f64], off: &[f64], m: usize) -> Vec<f64> {
    let n = diag.len();
    let a = DMatrix::from_fn(n, n, |r, c| match r.abs_diff(c) {
        0 => diag[r],
        1 => off[r.min(c)],
        _ => 0.0,
    });
    let mut ev: Vec<f64> = a.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev.truncate(m);
    ev
}

proptest! {
    #[test]
    fn bisection_matches_dense_solver(
        entries in prop::collection::vec((-10.0f64..10.0, -4.0f64..4.0), 2..60),
        m in 1usize..8,
    ) {
        let diag: Vec<f64> = entries.iter().map(|e| e.0).collect();
        let off: Vec<f64> = entries[1..].iter().map(|e| e.1).collect();
        let m = m.min(diag.len());
        let got = lowest_eigenvalues(&diag, &off, m).unwrap();
        for (g, w) in got.iter().zip(dense_lowest(&diag, &off, m)) {
            prop_assert!((g - w).abs() < 1e-9 * (1.0 + w.abs()), "{g} vs {w}");
        }
    }
}

#[test]
fn assembled_operators_match_dense_solver() {
    for scheme in [Scheme::Central, Scheme::Factored { exponent: 1.0 / 6.0 }] {
        let grid = GridSpec::new(300, 10.0, scheme).unwrap();
        let (diag, off) = assemble(-5.0 / 72.0, &grid);
        let got = lowest_eigenvalues(&diag, &off, 5).unwrap();
        for (g, w) in got.iter().zip(dense_lowest(&diag, &off, 5)) {
            assert!((g - w).abs() < 1e-8, "{g} vs {w}");
        }
    }
}
