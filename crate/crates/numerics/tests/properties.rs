use octof4_numerics::tridiag::count_below;
use octof4_numerics::{indicial_exponents, lowest_eigenvalues, reference_ladder};
use proptest::prelude::*;

fn toeplitz_oracle(d: f64, t: f64, n: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (1..=n)
        .map(|k| d + 2.0 * t * (k as f64 * std::f64::consts::PI / (n + 1) as f64).cos())
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

proptest! {
    #[test]
    fn toeplitz_matches_closed_form(d in -5.0f64..5.0, t in -3.0f64..3.0, n in 2usize..40) {
        let got = lowest_eigenvalues(&vec![d; n], &vec![t; n - 1], n).unwrap();
        for (g, w) in got.iter().zip(toeplitz_oracle(d, t, n)) {
            prop_assert!((g - w).abs() < 1e-10, "{g} vs {w}");
        }
    }

    #[test]
    fn full_spectrum_sums_to_trace(
        diag in prop::collection::vec(-10.0f64..10.0, 2..30),
        seed in prop::collection::vec(-4.0f64..4.0, 29),
    ) {
        let off = &seed[..diag.len() - 1];
        let ev = lowest_eigenvalues(&diag, off, diag.len()).unwrap();
        let trace: f64 = diag.iter().sum();
        prop_assert!((ev.iter().sum::<f64>() - trace).abs() < 1e-8 * (1.0 + trace.abs()));
        prop_assert!(ev.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn sturm_count_is_monotone(
        diag in prop::collection::vec(-10.0f64..10.0, 2..20),
        a in -20.0f64..20.0,
        b in -20.0f64..20.0,
    ) {
        let off = vec![1.0; diag.len() - 1];
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(count_below(&diag, &off, lo) <= count_below(&diag, &off, hi));
    }

    #[test]
    fn indicial_roots_solve_their_equation(v in -0.125f64..10.0) {
        for a in indicial_exponents(v).unwrap() {
            prop_assert!((a * (a - 1.0) / 2.0 - v).abs() < 1e-9);
        }
    }

    #[test]
    fn reference_ladder_spacing_is_two(a in -0.5f64..5.0, m in 2usize..10) {
        let l = reference_ladder(a, m);
        prop_assert!(l.windows(2).all(|w| (w[1] - w[0] - 2.0).abs() < 1e-12));
    }
}
