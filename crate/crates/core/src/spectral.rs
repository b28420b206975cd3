//! Numerical spectral checks for `-Δ`: Rayleigh quotients, positivity and a
//! power-iteration estimate of the operator norm on Dirichlet-truncated
//! windows.
//!
//! On all of ℓ²(ℤ²) the spectrum is `[0, 8]` and `‖-Δ‖ = 8`. A window of
//! half-width `n` with zero exterior has top eigenvalue
//! `4 + 4 cos(π / (2n + 2))`, which increases to 8 as the windows are nested.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cochain::{Cochain, Degree, Window};
use crate::exec::Execution;
use crate::operators::laplacian;
use crate::stencil;
use crate::C64;

/// Allowed imaginary part of `(-Δa, a)` relative to `(a, a)`.
pub const SELF_ADJOINT_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum SpectralError {
    #[error("Rayleigh quotient of the zero form is undefined")]
    ZeroForm,
    #[error("(-Δa, a) has imaginary part {imag:e} against (a, a) = {norm_sqr:e}")]
    NotSelfAdjoint { imag: f64, norm_sqr: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}

/// Outcome of a power iteration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralEstimate {
    /// Last Rayleigh quotient, an estimate of the largest eigenvalue.
    pub estimate: f64,
    pub iterations: usize,
    /// `|q_i - q_{i-1}|` at the last step.
    pub final_increment: f64,
    pub tol: f64,
}

impl SpectralEstimate {
    pub fn converged(&self) -> bool {
        self.final_increment <= self.tol
    }
}

/// `(-Δa, a)`.
pub fn quadratic_form(form: &Cochain) -> C64 {
    laplacian(form).inner_product(form).expect("same degree")
}

/// `Re(-Δa, a) / (a, a)`, failing if the imaginary part exceeds
/// [`SELF_ADJOINT_TOL`]` · (a, a)`.
pub fn rayleigh_quotient(form: &Cochain) -> Result<f64, SpectralError> {
    let norm_sqr = form.norm_sqr();
    if norm_sqr == 0.0 {
        return Err(SpectralError::ZeroForm);
    }
    let q = quadratic_form(form);
    if q.im.abs() > SELF_ADJOINT_TOL * norm_sqr {
        return Err(SpectralError::NotSelfAdjoint { imag: q.im, norm_sqr });
    }
    Ok(q.re / norm_sqr)
}

/// The checkerboard `(-1)^{k+s}`, normalized, on every component.
///
/// The all-ones vector would be a poor start: the top Dirichlet mode
/// oscillates, and the checkerboard is its nearest sign pattern.
pub fn checkerboard_start(degree: Degree, window: Window) -> Vec<Vec<C64>> {
    let count = degree.component_count();
    let scale = 1.0 / ((window.len() * count) as f64).sqrt();
    let board: Vec<C64> = window
        .sites()
        .map(|i| C64::new(if (i.k + i.s).rem_euclid(2) == 0 { scale } else { -scale }, 0.0))
        .collect();
    vec![board; count]
}

fn dot(a: &[Vec<C64>], b: &[Vec<C64>]) -> C64 {
    a.iter()
        .zip(b)
        .flat_map(|(x, y)| x.iter().zip(y))
        .fold(C64::new(0.0, 0.0), |acc, (x, y)| acc + x * y.conj())
}

/// Power iteration for the largest eigenvalue of `-Δ` on a window of
/// half-width `n` with zero exterior. Stops once successive Rayleigh
/// quotients differ by at most `tol`; running out of iterations is reported
/// through [`SpectralEstimate::converged`], not as an error.
pub fn operator_norm_estimate(degree: Degree, n: usize, max_iter: usize, tol: f64) -> Result<SpectralEstimate, SpectralError> {
    operator_norm_estimate_with(degree, n, max_iter, tol, Execution::default())
}

pub fn operator_norm_estimate_with(
    degree: Degree,
    n: usize,
    max_iter: usize,
    tol: f64,
    exec: Execution,
) -> Result<SpectralEstimate, SpectralError> {
    if n < 1 {
        return Err(SpectralError::InvalidParameter("window half-width must be at least 1"));
    }
    if max_iter < 1 {
        return Err(SpectralError::InvalidParameter("max_iter must be at least 1"));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(SpectralError::InvalidParameter("tol must be positive"));
    }
    let window = Window::new(n);
    let center = C64::new(4.0, 0.0);
    let mut x = checkerboard_start(degree, window);
    let mut y = x.clone();
    let mut previous = f64::NAN;
    let mut estimate = 0.0;
    let mut increment = f64::INFINITY;
    let mut iterations = 0;
    while iterations < max_iter {
        for (src, dst) in x.iter().zip(y.iter_mut()) {
            stencil::apply_into(src, window, dst, window, center, exec);
        }
        iterations += 1;
        // x is unit length, so the quotient is (Ax, x).
        estimate = dot(&y, &x).re;
        if previous.is_finite() {
            increment = (estimate - previous).abs();
        }
        let norm = dot(&y, &y).re.sqrt();
        for (dst, src) in x.iter_mut().zip(&y) {
            for (a, b) in dst.iter_mut().zip(src) {
                *a = b / norm;
            }
        }
        if increment <= tol {
            break;
        }
        previous = estimate;
    }
    Ok(SpectralEstimate { estimate, iterations, final_increment: increment, tol })
}

/// Summary of a positivity sweep over random forms.
#[derive(Clone, Debug, PartialEq)]
pub struct PositivityReport {
    pub samples: usize,
    pub min_quotient: f64,
    pub max_quotient: f64,
    /// Largest `|Im(-Δa, a)| / (a, a)` seen.
    pub max_imag_ratio: f64,
    /// Degree and sample index of the smallest quotient.
    pub min_at: (Degree, usize),
}

impl PositivityReport {
    pub fn all_positive(&self) -> bool {
        self.min_quotient > 0.0
    }
}

/// A random nonzero form on a window of half-width `n`: random support radius,
/// coefficients uniform in the unit square of ℂ.
pub fn random_form(rng: &mut impl Rng, degree: Degree, n: usize) -> Cochain {
    let radius = rng.random_range(0..=n);
    loop {
        let form = Cochain::from_fn(degree, Window::new(radius), |_, _| {
            C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        })
        .expect("finite samples");
        if form.norm_sqr() > 0.0 {
            return form.on_window(Window::new(n));
        }
    }
}

/// Sample `samples` random forms of every degree and record the Rayleigh
/// quotients `Re(-Δa, a)/(a, a)` and the self-adjointness witness.
pub fn positivity_check(samples: usize, n: usize, seed: u64) -> Result<PositivityReport, SpectralError> {
    positivity_check_with(samples, n, seed, Execution::default())
}

pub fn positivity_check_with(samples: usize, n: usize, seed: u64, exec: Execution) -> Result<PositivityReport, SpectralError> {
    if samples < 1 {
        return Err(SpectralError::InvalidParameter("samples must be at least 1"));
    }
    let jobs: Vec<(Degree, usize)> = Degree::ALL.iter().flat_map(|&d| (0..samples).map(move |i| (d, i))).collect();
    let results = exec.map_indices(jobs.len(), |j| {
        let (degree, i) = jobs[j];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(j as u64);
        let form = random_form(&mut rng, degree, n);
        let norm_sqr = form.norm_sqr();
        let q = quadratic_form(&form);
        (degree, i, q.re / norm_sqr, q.im.abs() / norm_sqr)
    });
    let mut report = PositivityReport {
        samples: results.len(),
        min_quotient: f64::INFINITY,
        max_quotient: f64::NEG_INFINITY,
        max_imag_ratio: 0.0,
        min_at: (Degree::Zero, 0),
    };
    for (degree, i, q, imag) in results {
        if q < report.min_quotient {
            report.min_quotient = q;
            report.min_at = (degree, i);
        }
        report.max_quotient = report.max_quotient.max(q);
        report.max_imag_ratio = report.max_imag_ratio.max(imag);
    }
    Ok(report)
}
