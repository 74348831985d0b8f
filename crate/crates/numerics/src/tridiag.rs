//! Lowest eigenvalues of a real symmetric tridiagonal matrix by Sturm-sequence bisection.

use crate::NumericsError;

/// Number of eigenvalues strictly below `lambda`.
pub fn count_below(diag: &[f64], off: &[f64], lambda: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0f64;
    for i in 0..diag.len() {
        let coupling = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        q = diag[i] - lambda - if i == 0 { 0.0 } else { coupling / q };
        if q == 0.0 {
            q = -f64::EPSILON * (diag[i].abs() + lambda.abs()).max(f64::MIN_POSITIVE);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn gershgorin(diag: &[f64], off: &[f64]) -> (f64, f64) {
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { off[i - 1].abs() } else { 0.0 } + if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    (lo, hi)
}

/// The `m` smallest eigenvalues in ascending order.
pub fn lowest_eigenvalues(diag: &[f64], off: &[f64], m: usize) -> Result<Vec<f64>, NumericsError> {
    let n = diag.len();
    if off.len() + 1 != n {
        return Err(NumericsError::Shape { diag: n, off: off.len() });
    }
    if m > n {
        return Err(NumericsError::TooManyEigenvalues { requested: m, size: n });
    }
    if diag.iter().chain(off).any(|x| !x.is_finite()) {
        return Err(NumericsError::NonFinite);
    }
    let (lo, hi) = gershgorin(diag, off);
    let mut out = Vec::with_capacity(m);
    for k in 0..m {
        let (mut a, mut b) = (lo, hi);
        let mut iterations = 0;
        while b - a > 4.0 * f64::EPSILON * a.abs().max(b.abs()).max(1.0) {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if count_below(diag, off, mid) > k {
                b = mid;
            } else {
                a = mid;
            }
            iterations += 1;
            if iterations > 200 {
                return Err(NumericsError::NoConvergence { index: k });
            }
        }
        out.push(0.5 * (a + b));
    }
    Ok(out)
}
