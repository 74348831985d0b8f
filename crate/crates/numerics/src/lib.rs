//! Finite-difference cross-check of the per-component spectra of
//! `-1/2 d^2 + x^2/2 + v/x^2` on the half-line.
//!
//! This crate works in `f64` only and has no knowledge of the exact engine; the
//! caller supplies the couplings.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub mod tridiag;

pub use tridiag::lowest_eigenvalues;

#[derive(Debug, Error, PartialEq)]
pub enum NumericsError {
    #[error("grid needs at least 100 interior points, got {0}")]
    TooFewPoints(usize),
    #[error("x_max must be positive and finite, got {0}")]
    BadExtent(f64),
    #[error("coupling {0} lies below the Hardy bound -1/8; no real indicial exponent")]
    BelowHardyBound(f64),
    #[error("factored exponent {0} must exceed -1/2")]
    BadExponent(f64),
    #[error("diagonal has {diag} entries but off-diagonal has {off}")]
    Shape { diag: usize, off: usize },
    #[error("requested {requested} eigenvalues from a matrix of size {size}")]
    TooManyEigenvalues { requested: usize, size: usize },
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("bisection did not converge for eigenvalue {index}")]
    NoConvergence { index: usize },
    #[error("convergence study needs at least 3 grids, got {0}")]
    TooFewGrids(usize),
    #[error("error grows under refinement: {0:?}")]
    Diverging(Vec<f64>),
}

pub type Result<T> = std::result::Result<T, NumericsError>;

/// How the operator is discretised.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Scheme {
    /// Second-order central differences for `psi` with `psi(0) = 0`. Selects
    /// the larger indicial exponent (the Friedrichs extension).
    Central,
    /// `psi = x^a phi` with `phi` regular: a weighted finite-volume scheme for
    /// `-1/2 x^(-2a) (x^(2a) phi')' + x^2/2 phi`. Selects exponent `a`.
    Factored { exponent: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub n_points: usize,
    pub x_max: f64,
    pub scheme: Scheme,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            n_points: 2000,
            x_max: 12.0,
            scheme: Scheme::Central,
        }
    }
}

impl GridSpec {
    pub fn new(n_points: usize, x_max: f64, scheme: Scheme) -> Result<Self> {
        if n_points < 100 {
            return Err(NumericsError::TooFewPoints(n_points));
        }
        if !(x_max.is_finite() && x_max > 0.0) {
            return Err(NumericsError::BadExtent(x_max));
        }
        if let Scheme::Factored { exponent } = scheme {
            if exponent.is_nan() || exponent <= -0.5 {
                return Err(NumericsError::BadExponent(exponent));
            }
        }
        Ok(Self { n_points, x_max, scheme })
    }

    pub fn h(&self) -> f64 {
        self.x_max / (self.n_points + 1) as f64
    }
}

/// Roots of `a (a - 1) / 2 = v`, larger first.
pub fn indicial_exponents(v: f64) -> Result<[f64; 2]> {
    let disc = 0.25 + 2.0 * v;
    if disc < 0.0 {
        return Err(NumericsError::BelowHardyBound(v));
    }
    let s = disc.sqrt();
    Ok([0.5 + s, 0.5 - s])
}

/// `2n + a + 1/2`, `n = 0..m`.
pub fn reference_ladder(a: f64, m: usize) -> Vec<f64> {
    (0..m).map(|n| 2.0 * n as f64 + a + 0.5).collect()
}

/// Relative tolerance for a ladder: tight when `psi ~ x^a` is at least `C^1`
/// with a bounded second derivative, loose for cusped behaviour at the origin.
pub fn ladder_tolerance(a: f64) -> f64 {
    if a >= 2.0 {
        2e-3
    } else {
        2e-2
    }
}

/// Symmetric tridiagonal matrix `(diag, off)` for coupling `v`.
pub fn assemble(v: f64, grid: &GridSpec) -> (Vec<f64>, Vec<f64>) {
    let h = grid.h();
    let n = grid.n_points;
    match grid.scheme {
        Scheme::Central => {
            let diag = (1..=n)
                .map(|j| {
                    let x = j as f64 * h;
                    1.0 / (h * h) + 0.5 * x * x + v / (x * x)
                })
                .collect();
            (diag, vec![-0.5 / (h * h); n - 1])
        }
        Scheme::Factored { exponent: a } => {
            // nodes x_j = j h, j = 0..=n; cells [x_j - h/2, x_j + h/2] clipped at 0
            let p = 2.0 * a + 1.0;
            let moment = |lo: f64, hi: f64, q: f64| (hi.powf(q) - lo.powf(q)) / q;
            let cell = |j: usize| {
                let x = j as f64 * h;
                ((x - 0.5 * h).max(0.0), x + 0.5 * h)
            };
            let mass: Vec<f64> = (0..=n)
                .map(|j| {
                    let (lo, hi) = cell(j);
                    moment(lo, hi, p)
                })
                .collect();
            let flux = |j: usize| ((j as f64 + 0.5) * h).powf(2.0 * a) / h;
            let diag = (0..=n)
                .map(|j| {
                    let (lo, hi) = cell(j);
                    let left = if j == 0 { 0.0 } else { flux(j - 1) };
                    let a_jj = 0.5 * (left + flux(j)) + 0.5 * moment(lo, hi, p + 2.0);
                    a_jj / mass[j]
                })
                .collect();
            let off = (0..n)
                .map(|j| -0.5 * flux(j) / (mass[j] * mass[j + 1]).sqrt())
                .collect();
            (diag, off)
        }
    }
}

/// Comparison of the computed eigenvalues with one indicial ladder.
#[derive(Debug, Clone, Serialize)]
pub struct LadderComparison {
    pub exponent: f64,
    /// The ladder the scheme's boundary behaviour selects.
    pub selected: bool,
    pub reference: Vec<f64>,
    pub abs_error: Vec<f64>,
    pub rel_error: Vec<f64>,
    /// `E_(n+1) - E_n` from the computed values.
    pub spacing: Vec<f64>,
    pub tolerance: f64,
    pub within_tolerance: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentSpectrum {
    /// 1-based component index.
    pub component: usize,
    pub coupling: f64,
    pub grid: GridSpec,
    pub computed: Vec<f64>,
    pub ladders: Vec<LadderComparison>,
}

impl ComponentSpectrum {
    pub fn selected(&self) -> &LadderComparison {
        self.ladders.iter().find(|l| l.selected).expect("one ladder is always selected")
    }
}

/// Number of levels compared against the reference.
pub const COMPARED_LEVELS: usize = 3;

/// Diagonalises one component and compares with both indicial ladders.
pub fn diagonalize_component(component: usize, v: f64, grid: &GridSpec, m: usize) -> Result<ComponentSpectrum> {
    let roots = indicial_exponents(v)?;
    let selected_a = match grid.scheme {
        Scheme::Central => roots[0],
        Scheme::Factored { exponent } => exponent,
    };
    let (diag, off) = assemble(v, grid);
    let computed = lowest_eigenvalues(&diag, &off, m)?;
    let levels = COMPARED_LEVELS.min(m);
    let mut ladders = Vec::new();
    let mut exps = vec![selected_a];
    for r in roots {
        if (r - selected_a).abs() > 1e-12 && r > -0.5 {
            exps.push(r);
        }
    }
    for (idx, a) in exps.into_iter().enumerate() {
        let reference = reference_ladder(a, m);
        let tolerance = ladder_tolerance(a);
        let selected = idx == 0;
        let (abs_error, rel_error, spacing, within) = if selected {
            let abs: Vec<f64> = computed.iter().zip(&reference).map(|(c, r)| (c - r).abs()).collect();
            let rel: Vec<f64> = abs.iter().zip(&reference).map(|(e, r)| e / r.abs()).collect();
            let spacing: Vec<f64> = computed.windows(2).map(|w| w[1] - w[0]).collect();
            let ok = rel[..levels].iter().all(|e| *e <= tolerance)
                && spacing[..levels.saturating_sub(1)].iter().all(|s| ((s - 2.0) / 2.0).abs() <= tolerance);
            (abs, rel, spacing, ok)
        } else {
            (Vec::new(), Vec::new(), Vec::new(), false)
        };
        ladders.push(LadderComparison {
            exponent: a,
            selected,
            reference,
            abs_error,
            rel_error,
            spacing,
            tolerance,
            within_tolerance: within,
        });
    }
    Ok(ComponentSpectrum {
        component,
        coupling: v,
        grid: *grid,
        computed,
        ladders,
    })
}

/// All components at once, in parallel.
pub fn diagonalize_all(couplings: &[f64], grid: &GridSpec, m: usize) -> Result<Vec<ComponentSpectrum>> {
    couplings
        .par_iter()
        .enumerate()
        .map(|(k, &v)| diagonalize_component(k + 1, v, grid, m))
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergencePoint {
    pub n_points: usize,
    pub h: f64,
    pub lowest: f64,
    pub error: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceReport {
    pub coupling: f64,
    pub exponent: f64,
    pub reference: f64,
    pub points: Vec<ConvergencePoint>,
    /// `log2(e_k / e_(k+1))` between successive grids.
    pub orders: Vec<f64>,
    /// Nominal order of the scheme (2); lower values are expected when `a < 2`.
    pub nominal_order: f64,
    pub cusped: bool,
}

/// Empirical convergence order of the lowest eigenvalue over successively refined grids.
pub fn convergence_study(v: f64, grids: &[GridSpec]) -> Result<ConvergenceReport> {
    if grids.len() < 3 {
        return Err(NumericsError::TooFewGrids(grids.len()));
    }
    let exponent = match grids[0].scheme {
        Scheme::Central => indicial_exponents(v)?[0],
        Scheme::Factored { exponent } => exponent,
    };
    let reference = exponent + 0.5;
    let points = grids
        .iter()
        .map(|g| {
            let (d, o) = assemble(v, g);
            let lowest = lowest_eigenvalues(&d, &o, 1)?[0];
            Ok(ConvergencePoint {
                n_points: g.n_points,
                h: g.h(),
                lowest,
                error: (lowest - reference).abs(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let errors: Vec<f64> = points.iter().map(|p| p.error).collect();
    if errors.last() > errors.first() {
        return Err(NumericsError::Diverging(errors));
    }
    let orders = points
        .windows(2)
        .map(|w| (w[0].error / w[1].error).ln() / (w[0].h / w[1].h).ln())
        .collect();
    Ok(ConvergenceReport {
        coupling: v,
        exponent,
        reference,
        points,
        orders,
        nominal_order: 2.0,
        cusped: exponent < 2.0,
    })
}
