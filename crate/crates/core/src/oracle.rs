//! Reference computations of the lattice Green function
//! `G(a, b; λ) = ((-Δ - λ)⁻¹ δ^{0,0})_{a,b}`, independent of the closed form.
//!
//! * [`truncated_resolvent_solve`] solves `(-Δ - λ)u = δ^{site}` on a window
//!   with zero exterior, doubling the window until the solution has decayed
//!   at the edge.
//! * [`fourier_green`] / [`fourier_green_grid`] evaluate the torus integral
//!
//!   ```text
//!   G(a, b; λ) = (2π)⁻² ∬ e^{i(aθ + bφ)} / (4 - 2cos θ - 2cos φ - λ) dθ dφ
//!   ```
//!
//!   by the trapezoid rule, doubling the node count until successive values
//!   settle.
//!
//! The two have unrelated error sources (truncation vs. aliasing), so their
//! mutual agreement is what admits them as ground truth in
//! [`compare_kernels`].

use std::f64::consts::PI;
use std::fmt::Write as _;

use thiserror::Error;

use crate::cochain::{Cochain, Degree, GridIndex, Window};
use crate::exec::Execution;
use crate::green::{spectrum_distance, strictly_off_axis, GreenKernel, ResidualGrid, ResolventContext, SPECTRUM_BAND};
use crate::stencil;
use crate::C64;

/// Edge values of a truncated solve must be below this fraction of the
/// value at the source.
pub const EDGE_RATIO: f64 = 1e-10;

/// Successive quadrature refinements must agree to this absolute level.
pub const QUADRATURE_TOL: f64 = 1e-10;

/// Required agreement `|solve - fourier| ≤ ORACLE_AGREEMENT · (1 + |fourier|)`.
pub const ORACLE_AGREEMENT: f64 = 1e-8;

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("invalid oracle configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("λ = {lambda} is within {distance:e} of the spectrum [0, 8]")]
    OnSpectrum { lambda: C64, distance: f64 },
    #[error("site {site} must lie within half of the truncation window (half-width {n})")]
    SiteOutsideWindow { site: GridIndex, n: usize },
    #[error("linear solve stopped after {iterations} iterations with relative residual {residual:e}")]
    SolverDiverged { iterations: usize, residual: f64 },
    #[error("truncation cap {n} reached with edge/source ratio {edge_ratio:e}")]
    TruncationCap { n: usize, edge_ratio: f64 },
    #[error("quadrature did not settle at {points} nodes per axis (last change {last_change:e})")]
    QuadratureCap { points: usize, last_change: f64 },
    #[error("oracles disagree by {gap:e} at offset ({k}, {s})")]
    Disagreement { k: i64, s: i64, gap: f64 },
}

/// Truncation, quadrature and solver settings.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleConfig {
    /// Starting half-width of the truncation window.
    pub n_trunc: usize,
    /// Starting trapezoid nodes per axis.
    pub quadrature_points: usize,
    /// Relative residual target `‖r‖₂ ≤ tol·‖b‖₂` of the iterative solve.
    pub solver_tol: f64,
    pub max_solver_iter: usize,
    /// Largest half-width the window may be doubled to.
    pub max_n_trunc: usize,
    /// Largest node count the quadrature may be doubled to.
    pub max_quadrature_points: usize,
    pub exec: Execution,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            n_trunc: 64,
            quadrature_points: 64,
            solver_tol: 1e-12,
            max_solver_iter: 20_000,
            max_n_trunc: 512,
            max_quadrature_points: 4096,
            exec: Execution::default(),
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<(), OracleError> {
        if self.n_trunc < 8 {
            return Err(OracleError::InvalidConfig("n_trunc must be at least 8"));
        }
        if self.quadrature_points < 64 {
            return Err(OracleError::InvalidConfig("quadrature_points must be at least 64"));
        }
        if self.solver_tol.is_nan() || self.solver_tol <= 0.0 {
            return Err(OracleError::InvalidConfig("solver_tol must be positive"));
        }
        if self.max_solver_iter == 0 {
            return Err(OracleError::InvalidConfig("max_solver_iter must be positive"));
        }
        Ok(())
    }
}

fn check_lambda(lambda: C64) -> Result<(), OracleError> {
    let distance = spectrum_distance(lambda);
    if !lambda.is_finite() || distance <= SPECTRUM_BAND {
        return Err(OracleError::OnSpectrum { lambda, distance });
    }
    Ok(())
}

/// Solution of the truncated problem `(-Δ - λ)u = δ^{site}` on a window.
#[derive(Clone, Debug, PartialEq)]
pub struct GreenColumn {
    pub site: GridIndex,
    pub lambda: C64,
    /// `u` on the final truncation window.
    pub values: Cochain,
    pub iterations: usize,
    /// Max-norm of `(-Δ - λ)u - δ` on the truncation window, recomputed
    /// after the solve.
    pub residual: f64,
    /// `max_edge |u| / |u(site)|`.
    pub edge_ratio: f64,
    /// Values from the previous (half-size) window, when a doubling happened.
    pub previous: Option<Cochain>,
}

impl GreenColumn {
    pub fn window(&self) -> Window {
        self.values.window()
    }

    pub fn value(&self, idx: GridIndex) -> C64 {
        self.values.at(0, idx)
    }

    /// `u(site + (dk, ds))`.
    pub fn offset_value(&self, dk: i64, ds: i64) -> C64 {
        self.value(self.site.shifted(dk, ds))
    }

    /// Absolute size of the truncation error to expect at interior sites:
    /// the largest value on the window edge.
    pub fn truncation_bound(&self) -> f64 {
        self.edge_ratio * self.value(self.site).norm()
    }
}

fn dot_t(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).fold(C64::new(0.0, 0.0), |acc, (x, y)| acc + x * y)
}

fn norm2(a: &[C64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Conjugate orthogonal CG for the complex symmetric system
/// `(stencil - λ) x = b` on `window`. Reduces to plain CG for real `λ`.
fn cocg(window: Window, lambda: C64, b: &[C64], config: &OracleConfig) -> Result<(Vec<C64>, usize), OracleError> {
    let center = C64::new(4.0, 0.0) - lambda;
    let len = window.len();
    let b_norm = norm2(b);
    let mut x = vec![C64::new(0.0, 0.0); len];
    let mut r = b.to_vec();
    let mut p = r.clone();
    let mut q = vec![C64::new(0.0, 0.0); len];
    let mut rho = dot_t(&r, &r);
    let mut residual = 1.0;
    for iteration in 1..=config.max_solver_iter {
        stencil::apply_into(&p, window, &mut q, window, center, config.exec);
        let pq = dot_t(&p, &q);
        if pq.norm() == 0.0 || !pq.is_finite() {
            return Err(OracleError::SolverDiverged { iterations: iteration, residual });
        }
        let alpha = rho / pq;
        for ((xi, ri), (pi, qi)) in x.iter_mut().zip(r.iter_mut()).zip(p.iter().zip(&q)) {
            *xi += alpha * pi;
            *ri -= alpha * qi;
        }
        residual = norm2(&r) / b_norm;
        if residual <= config.solver_tol {
            return Ok((x, iteration));
        }
        let rho_next = dot_t(&r, &r);
        let beta = rho_next / rho;
        rho = rho_next;
        for (pi, ri) in p.iter_mut().zip(&r) {
            *pi = ri + beta * *pi;
        }
    }
    Err(OracleError::SolverDiverged { iterations: config.max_solver_iter, residual })
}

fn solve_on(window: Window, site: GridIndex, lambda: C64, config: &OracleConfig) -> Result<(Cochain, usize, f64, f64), OracleError> {
    let mut b = vec![C64::new(0.0, 0.0); window.len()];
    b[window.offset(site).expect("site inside window")] = C64::new(1.0, 0.0);
    let (x, iterations) = cocg(window, lambda, &b, config)?;
    let ax = stencil::apply(&x, window, window, C64::new(4.0, 0.0) - lambda, config.exec);
    let residual = ax.iter().zip(&b).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    let source = x[window.offset(site).unwrap()].norm();
    let edge = window
        .sites()
        .zip(&x)
        .filter(|(i, _)| window.on_edge(*i))
        .map(|(_, z)| z.norm())
        .fold(0.0, f64::max);
    let values = Cochain::from_components(Degree::Zero, window, vec![x]).expect("finite solve");
    Ok((values, iterations, residual, edge / source))
}

/// Green column at `site` from a Dirichlet-truncated solve.
///
/// The window starts at `config.n_trunc` and doubles (up to
/// `config.max_n_trunc`) until the edge values fall below [`EDGE_RATIO`]
/// times the value at the site.
pub fn truncated_resolvent_solve(site: GridIndex, ctx: &ResolventContext, config: &OracleConfig) -> Result<GreenColumn, OracleError> {
    config.validate()?;
    check_lambda(ctx.lambda())?;
    if 2 * site.radius() > config.n_trunc {
        return Err(OracleError::SiteOutsideWindow { site, n: config.n_trunc });
    }
    let mut n = config.n_trunc;
    let mut previous = None;
    loop {
        let (values, iterations, residual, edge_ratio) = solve_on(Window::new(n), site, ctx.lambda(), config)?;
        if edge_ratio < EDGE_RATIO {
            return Ok(GreenColumn { site, lambda: ctx.lambda(), values, iterations, residual, edge_ratio, previous });
        }
        if 2 * n > config.max_n_trunc {
            return Err(OracleError::TruncationCap { n, edge_ratio });
        }
        previous = Some(values);
        n *= 2;
    }
}

/// A single quadrature value with its refinement history.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierValue {
    pub value: C64,
    /// Node count per axis of the accepted value.
    pub points: usize,
    /// `|G_{2M} - G_M|` for each doubling, in order.
    pub refinement: Vec<f64>,
}

/// Values of the quadrature on `|a|, |b| ≤ w`, with refinement history
/// (max over the grid of the change per doubling).
#[derive(Clone, Debug, PartialEq)]
pub struct FourierGrid {
    pub lambda: C64,
    pub window: Window,
    pub values: Vec<C64>,
    pub points: usize,
    pub refinement: Vec<f64>,
}

impl FourierGrid {
    pub fn at(&self, a: i64, b: i64) -> C64 {
        self.values[self.window.offset(GridIndex::new(a, b)).expect("offset inside grid")]
    }
}

/// `e^{2πij/M}` for `j = 0..M`.
fn roots_of_unity(m: usize) -> Vec<C64> {
    (0..m).map(|j| C64::from_polar(1.0, 2.0 * PI * j as f64 / m as f64)).collect()
}

/// `1 / (4 - 2cos θ_j - 2cos θ_l - λ)` on the `m × m` torus grid.
fn symbol_inverse(m: usize, lambda: C64) -> Vec<C64> {
    let cos: Vec<f64> = (0..m).map(|j| (2.0 * PI * j as f64 / m as f64).cos()).collect();
    let mut out = Vec::with_capacity(m * m);
    for cj in &cos {
        for cl in &cos {
            out.push(C64::new(1.0, 0.0) / (C64::new(4.0 - 2.0 * cj - 2.0 * cl, 0.0) - lambda));
        }
    }
    out
}

fn trapezoid_point(a: i64, b: i64, m: usize, lambda: C64) -> C64 {
    let roots = roots_of_unity(m);
    let f = symbol_inverse(m, lambda);
    let mi = m as i64;
    let mut acc = C64::new(0.0, 0.0);
    for j in 0..m {
        let ea = roots[(a * j as i64).rem_euclid(mi) as usize];
        let mut row = C64::new(0.0, 0.0);
        for l in 0..m {
            row += roots[(b * l as i64).rem_euclid(mi) as usize] * f[j * m + l];
        }
        acc += ea * row;
    }
    acc / (m * m) as f64
}

/// Trapezoid-rule value of the Fourier integral at offset `(a, b)`.
pub fn fourier_green(a: i64, b: i64, lambda: C64, config: &OracleConfig) -> Result<FourierValue, OracleError> {
    config.validate()?;
    check_lambda(lambda)?;
    let mut m = config.quadrature_points;
    let mut value = trapezoid_point(a, b, m, lambda);
    let mut refinement = Vec::new();
    loop {
        if 2 * m > config.max_quadrature_points {
            return Err(OracleError::QuadratureCap { points: m, last_change: refinement.last().copied().unwrap_or(f64::INFINITY) });
        }
        m *= 2;
        let next = trapezoid_point(a, b, m, lambda);
        let change = (next - value).norm();
        refinement.push(change);
        value = next;
        if change < QUADRATURE_TOL {
            return Ok(FourierValue { value, points: m, refinement });
        }
    }
}

fn trapezoid_grid(w: usize, m: usize, lambda: C64, exec: Execution) -> Vec<C64> {
    let roots = roots_of_unity(m);
    let f = symbol_inverse(m, lambda);
    let window = Window::new(w);
    let side = window.side();
    let n = w as i64;
    let mi = m as i64;
    // h[j][b] = Σ_l e^{i b θ_l} f(θ_j, θ_l)
    let mut h = vec![C64::new(0.0, 0.0); m * side];
    exec.fill_rows(&mut h, side, |j, row| {
        for (col, slot) in row.iter_mut().enumerate() {
            let b = col as i64 - n;
            let mut acc = C64::new(0.0, 0.0);
            for l in 0..m {
                acc += roots[(b * l as i64).rem_euclid(mi) as usize] * f[j * m + l];
            }
            *slot = acc;
        }
    });
    let scale = 1.0 / (m * m) as f64;
    let mut out = vec![C64::new(0.0, 0.0); window.len()];
    exec.fill_rows(&mut out, side, |row, chunk| {
        let a = row as i64 - n;
        for (col, slot) in chunk.iter_mut().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..m {
                acc += roots[(a * j as i64).rem_euclid(mi) as usize] * h[j * side + col];
            }
            *slot = acc * scale;
        }
    });
    out
}

/// Trapezoid values on the whole offset grid `|a|, |b| ≤ w`, refined until
/// the largest change over the grid is below [`QUADRATURE_TOL`].
pub fn fourier_green_grid(w: usize, lambda: C64, config: &OracleConfig) -> Result<FourierGrid, OracleError> {
    config.validate()?;
    check_lambda(lambda)?;
    let mut m = config.quadrature_points;
    let mut values = trapezoid_grid(w, m, lambda, config.exec);
    let mut refinement = Vec::new();
    loop {
        if 2 * m > config.max_quadrature_points {
            return Err(OracleError::QuadratureCap { points: m, last_change: refinement.last().copied().unwrap_or(f64::INFINITY) });
        }
        m *= 2;
        let next = trapezoid_grid(w, m, lambda, config.exec);
        let change = next.iter().zip(&values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        refinement.push(change);
        values = next;
        if change < QUADRATURE_TOL {
            return Ok(FourierGrid { lambda, window: Window::new(w), values, points: m, refinement });
        }
    }
}

/// One offset of a [`ResidualReport`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OffsetRecord {
    pub k: i64,
    pub s: i64,
    pub closed_form: C64,
    pub solve: C64,
    pub fourier: C64,
    /// Closed-form stencil defect `4μG - ΣG_neighbors - δ`.
    pub residual: C64,
    /// Closed form within `tol` of both oracles.
    pub agree: bool,
}

/// Audit of the closed-form kernel against both oracles, source at the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    pub lambda: C64,
    pub w: usize,
    pub tol: f64,
    pub config: OracleConfig,
    /// Truncation window actually used by the solve.
    pub n_trunc_used: usize,
    /// Quadrature nodes per axis actually used.
    pub quadrature_points_used: usize,
    pub residual_grid: ResidualGrid,
    pub max_abs: f64,
    /// Largest `|solve - fourier| / (1 + |fourier|)` over the grid.
    pub max_oracle_gap: f64,
    /// Largest stencil defect of the solve column on the grid.
    pub oracle_residual: f64,
    pub records: Vec<OffsetRecord>,
}

impl ResidualReport {
    pub fn agreement_mask(&self) -> Vec<bool> {
        self.records.iter().map(|r| r.agree).collect()
    }

    pub fn record(&self, k: i64, s: i64) -> Option<&OffsetRecord> {
        self.residual_grid.window.offset(GridIndex::new(k, s)).map(|o| &self.records[o])
    }

    /// Largest closed-form residual relative to `|G|` over strictly
    /// off-axis offsets.
    pub fn max_relative_off_axis_residual(&self) -> f64 {
        self.records
            .iter()
            .filter(|r| strictly_off_axis(r.k, r.s))
            .map(|r| r.residual.norm() / r.closed_form.norm())
            .fold(0.0, f64::max)
    }

    /// JSON document with a fixed field order and 17 significant digits.
    pub fn to_json(&self) -> String {
        let mut out = String::new();
        let c = |z: C64| format!("[{}, {}]", num(z.re), num(z.im));
        out.push_str("{\n");
        let _ = writeln!(out, "  \"lambda\": {},", c(self.lambda));
        let _ = writeln!(out, "  \"w\": {},", self.w);
        let _ = writeln!(out, "  \"tol\": {},", num(self.tol));
        let _ = writeln!(out, "  \"oracle_agreement_tol\": {},", num(ORACLE_AGREEMENT));
        let _ = writeln!(out, "  \"n_trunc\": {},", self.config.n_trunc);
        let _ = writeln!(out, "  \"n_trunc_used\": {},", self.n_trunc_used);
        let _ = writeln!(out, "  \"quadrature_points\": {},", self.config.quadrature_points);
        let _ = writeln!(out, "  \"quadrature_points_used\": {},", self.quadrature_points_used);
        let _ = writeln!(out, "  \"solver_tol\": {},", num(self.config.solver_tol));
        let _ = writeln!(out, "  \"max_abs\": {},", num(self.max_abs));
        let _ = writeln!(out, "  \"max_oracle_gap\": {},", num(self.max_oracle_gap));
        let _ = writeln!(out, "  \"oracle_residual\": {},", num(self.oracle_residual));
        out.push_str("  \"records\": [\n");
        for (i, r) in self.records.iter().enumerate() {
            let _ = write!(
                out,
                "    {{\"k\": {}, \"s\": {}, \"closed_form\": {}, \"solve\": {}, \"fourier\": {}, \"residual\": {}, \"agree\": {}}}",
                r.k,
                r.s,
                c(r.closed_form),
                c(r.solve),
                c(r.fourier),
                c(r.residual),
                r.agree
            );
            out.push_str(if i + 1 < self.records.len() { ",\n" } else { "\n" });
        }
        out.push_str("  ]\n}\n");
        out
    }

    /// Plot-ready grid: `k,s,abs_residual,agree`, one row per offset.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,s,abs_residual,agree\n");
        for r in &self.records {
            let _ = writeln!(out, "{},{},{},{}", r.k, r.s, num(r.residual.norm()), r.agree);
        }
        out
    }
}

/// 17 significant digits.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Tabulate closed form, solve and quadrature on `|k|, |s| ≤ w` and measure
/// the closed form's stencil defect.
///
/// Fails with [`OracleError::Disagreement`] if the two oracles differ by
/// more than [`ORACLE_AGREEMENT`] anywhere: that is a configuration problem,
/// not a verdict on the closed form.
pub fn compare_kernels(ctx: &ResolventContext, w: usize, tol: f64, config: &OracleConfig) -> Result<ResidualReport, OracleError> {
    config.validate()?;
    let solve_config = OracleConfig { n_trunc: config.n_trunc.max(4 * (w + 1)), ..config.clone() };
    let column = truncated_resolvent_solve(GridIndex::ORIGIN, ctx, &solve_config)?;
    let fourier = fourier_green_grid(w, ctx.lambda(), config)?;
    let kernel = GreenKernel::new(*ctx);
    let residual_grid = crate::green::stencil_residual(&kernel, w);
    let oracle_residual = crate::green::stencil_residual_of(ctx.lambda(), w, config.exec, |k, s| column.offset_value(k, s)).max_abs();

    let window = Window::new(w);
    let mut records = Vec::with_capacity(window.len());
    let mut max_oracle_gap: f64 = 0.0;
    let mut worst = (0, 0, 0.0);
    for (off, idx) in window.sites().enumerate() {
        let closed_form = kernel.component(idx.k, idx.s, 0, 0);
        let solve = column.offset_value(idx.k, idx.s);
        let fourier_value = fourier.values[off];
        let gap = (solve - fourier_value).norm() / (1.0 + fourier_value.norm());
        if gap > max_oracle_gap {
            max_oracle_gap = gap;
            worst = (idx.k, idx.s, gap);
        }
        let agree = (closed_form - solve).norm() <= tol * (1.0 + solve.norm())
            && (closed_form - fourier_value).norm() <= tol * (1.0 + fourier_value.norm());
        records.push(OffsetRecord {
            k: idx.k,
            s: idx.s,
            closed_form,
            solve,
            fourier: fourier_value,
            residual: residual_grid.values[off],
            agree,
        });
    }
    if max_oracle_gap > ORACLE_AGREEMENT {
        return Err(OracleError::Disagreement { k: worst.0, s: worst.1, gap: worst.2 });
    }
    Ok(ResidualReport {
        lambda: ctx.lambda(),
        w,
        tol,
        config: config.clone(),
        n_trunc_used: column.window().half_width(),
        quadrature_points_used: fourier.points,
        max_abs: residual_grid.max_abs(),
        residual_grid,
        max_oracle_gap,
        oracle_residual,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::green::make_context;

    fn small_config() -> OracleConfig {
        OracleConfig { n_trunc: 32, ..OracleConfig::default() }
    }

    #[test]
    fn config_validation() {
        assert!(OracleConfig::default().validate().is_ok());
        assert!(OracleConfig { n_trunc: 7, ..OracleConfig::default() }.validate().is_err());
        assert!(OracleConfig { quadrature_points: 32, ..OracleConfig::default() }.validate().is_err());
        assert!(OracleConfig { solver_tol: 0.0, ..OracleConfig::default() }.validate().is_err());
    }

    #[test]
    fn site_must_be_central() {
        let ctx = make_context(C64::new(-4.0, 0.0)).unwrap();
        let err = truncated_resolvent_solve(GridIndex::new(20, 0), &ctx, &small_config()).unwrap_err();
        assert!(matches!(err, OracleError::SiteOutsideWindow { .. }));
    }

    #[test]
    fn spectrum_rejected() {
        assert!(matches!(fourier_green(0, 0, C64::new(2.0, 0.0), &small_config()), Err(OracleError::OnSpectrum { .. })));
    }

    #[test]
    fn truncation_cap_near_spectrum() {
        let ctx = make_context(C64::new(-1e-6, 0.0)).unwrap();
        let config = OracleConfig { n_trunc: 8, max_n_trunc: 16, ..OracleConfig::default() };
        assert!(matches!(truncated_resolvent_solve(GridIndex::ORIGIN, &ctx, &config), Err(OracleError::TruncationCap { .. })));
    }

    #[test]
    fn solve_column_symmetries() {
        let ctx = make_context(C64::new(-4.0, 0.0)).unwrap();
        let col = truncated_resolvent_solve(GridIndex::ORIGIN, &ctx, &small_config()).unwrap();
        for k in -5..=5 {
            for s in -5..=5 {
                let v = col.offset_value(k, s);
                assert!((v - col.offset_value(-k, s)).norm() <= 1e-12);
                assert!((v - col.offset_value(s, k)).norm() <= 1e-12);
            }
        }
        assert!(col.residual <= 10.0 * small_config().solver_tol);
    }

    #[test]
    fn quadrature_point_and_grid_agree() {
        let lambda = C64::new(-2.0, 3.0);
        let config = small_config();
        let grid = fourier_green_grid(3, lambda, &config).unwrap();
        for (a, b) in [(0, 0), (1, 0), (-2, 3), (3, -3)] {
            let single = fourier_green(a, b, lambda, &config).unwrap();
            assert!((single.value - grid.at(a, b)).norm() < 1e-12);
        }
    }
}
