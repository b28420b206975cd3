//! Invariant suites behind `verify`.

use lattice_dec::green::{homogeneous_residual, phi_solution, root_identity, strictly_off_axis};
use lattice_dec::operators::{
    coboundary, codifferential, codifferential_by_star, cup, green_boundary_sums, greens_formula_residual, laplacian,
    star, star_inverse,
};
use lattice_dec::oracle::{compare_kernels, ORACLE_AGREEMENT};
use lattice_dec::spectral::{operator_norm_estimate, positivity_check};
use lattice_dec::{make_context, Cochain, Degree, GridIndex, OracleConfig, ResolventContext, Sign, Window, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::CliError;

pub const CALCULUS_TOL: f64 = 1e-13;
pub const SPECTRAL_TOL: f64 = 1e-12;
pub const NORM_CEILING_TOL: f64 = 1e-9;
pub const SEPARABLE_TOL: f64 = 1e-12;
pub const ROOT_TOL: f64 = 1e-13;
pub const OFF_AXIS_TOL: f64 = 1e-12;

/// One asserted property: `value <= bound` or `value >= bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub property: String,
    pub value: f64,
    pub relation: &'static str,
    pub bound: f64,
    pub pass: bool,
}

impl Check {
    pub fn at_most(property: impl Into<String>, value: f64, bound: f64) -> Self {
        Self { property: property.into(), value, relation: "<=", bound, pass: value <= bound }
    }

    pub fn at_least(property: impl Into<String>, value: f64, bound: f64) -> Self {
        Self { property: property.into(), value, relation: ">=", bound, pass: value >= bound }
    }

    /// Amount by which the bound is violated, zero when it holds.
    pub fn excess(&self) -> f64 {
        if self.relation == "<=" { (self.value - self.bound).max(0.0) } else { (self.bound - self.value).max(0.0) }
    }

    fn to_json(&self) -> Value {
        json!({
            "property": self.property,
            "residual": self.value,
            "relation": self.relation,
            "tolerance": self.bound,
            "pass": self.pass,
        })
    }
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}={:.3e} {} {:.3e}", self.property, self.value, self.relation, self.bound)
    }
}

/// Outcome of a suite: assertions plus unasserted measurements.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub parameters: Value,
    pub checks: Vec<Check>,
    pub measurements: Value,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "parameters": self.parameters,
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
            "measurements": self.measurements,
            "pass": self.passed(),
        })
    }
}

fn random_full(rng: &mut ChaCha8Rng, degree: Degree, n: usize) -> Cochain {
    Cochain::from_fn(degree, Window::new(n), |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .expect("finite samples")
}

fn rel(diff: f64, scale: f64) -> f64 {
    diff / scale.max(f64::MIN_POSITIVE)
}

fn max_diff(a: &Cochain, b: &Cochain) -> f64 {
    a.max_abs_diff(b).expect("same degree").0
}

fn sign_of(degree: Degree) -> C64 {
    C64::new(if degree == Degree::One { -1.0 } else { 1.0 }, 0.0)
}

/// Relative residuals of `dd = 0`, Leibniz, the two codifferential paths
/// and adjointness over `samples` random forms per degree.
pub fn calculus_residuals(n: usize, seed: u64, samples: usize) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dd: f64 = 0.0;
    let mut leibniz: f64 = 0.0;
    let mut delta_paths: f64 = 0.0;
    let mut adjoint: f64 = 0.0;
    for _ in 0..samples {
        let forms: Vec<Cochain> = Degree::ALL.iter().map(|&d| random_full(&mut rng, d, n)).collect();
        let partners: Vec<Cochain> = Degree::ALL.iter().map(|&d| random_full(&mut rng, d, n)).collect();
        for a in &forms {
            let scale = a.max_abs();
            dd = dd.max(rel(coboundary(&coboundary(a)).max_abs(), scale));
            dd = dd.max(rel(codifferential(&codifferential(a)).max_abs(), scale));
            delta_paths = delta_paths.max(rel(max_diff(&codifferential(a), &codifferential_by_star(a)), scale));
        }
        for (a, b) in [(&forms[0], &partners[0]), (&forms[0], &partners[1]), (&forms[1], &partners[0])] {
            let lhs = coboundary(&cup(a, b).expect("degree ≤ 1"));
            let rhs = cup(&coboundary(a), b)
                .and_then(|x| x.add(&cup(a, &coboundary(b))?.scale(sign_of(a.degree()))))
                .expect("degree ≤ 2");
            leibniz = leibniz.max(rel(max_diff(&lhs, &rhs), a.max_abs() * b.max_abs()));
        }
        for (a, b) in [(&forms[0], &partners[1]), (&forms[1], &partners[2])] {
            let lhs = coboundary(a).inner_product(b).expect("degrees");
            let rhs = a.inner_product(&codifferential(b)).expect("degrees");
            adjoint = adjoint.max(rel((lhs - rhs).norm(), a.norm() * b.norm()));
        }
    }
    vec![
        Check::at_most("coboundary_and_codifferential_nilpotent", dd, CALCULUS_TOL),
        Check::at_most("leibniz_rule", leibniz, CALCULUS_TOL),
        Check::at_most("codifferential_two_paths", delta_paths, CALCULUS_TOL),
        Check::at_most("compact_support_adjointness", adjoint, CALCULUS_TOL),
    ]
}

/// `⋆⋆ = (-1)^{r(2-r)} · shift(1, 1)` and `⋆⁻¹⋆ = id` on every basis element
/// with `|k|, |s| ≤ radius`; exact.
pub fn star_structure(radius: usize) -> Vec<Check> {
    let mut double: f64 = 0.0;
    let mut inverse: f64 = 0.0;
    for degree in Degree::ALL {
        let sign = sign_of(degree);
        for &component in degree.components() {
            for idx in Window::new(radius).sites() {
                let e = Cochain::basis(degree, component, idx).expect("valid component");
                let shifted = Cochain::basis(degree, component, idx.shifted(1, 1)).expect("valid component").scale(sign);
                double = double.max(max_diff(&star(&star(&e)), &shifted));
                inverse = inverse.max(max_diff(&star_inverse(&star(&e)), &e));
            }
        }
    }
    vec![
        Check::at_most("star_squared_is_signed_shift", double, 0.0),
        Check::at_most("star_inverse_star_is_identity", inverse, 0.0),
    ]
}

/// `-Δ` of a basis element at the origin against the 5-point pattern, exact.
pub fn laplacian_pattern() -> Vec<Check> {
    let mut worst: f64 = 0.0;
    for degree in Degree::ALL {
        for &component in degree.components() {
            let e = Cochain::basis(degree, component, GridIndex::ORIGIN).expect("valid component");
            let expected = Cochain::from_fn(degree, Window::new(1), |c, i| {
                let w = match (i.k, i.s) {
                    (0, 0) => 4.0,
                    (0, _) | (_, 0) => -1.0,
                    _ => 0.0,
                };
                if c == component { C64::new(w, 0.0) } else { C64::new(0.0, 0.0) }
            })
            .expect("finite");
            worst = worst.max(max_diff(&laplacian(&e), &expected));
        }
    }
    vec![Check::at_most("laplacian_five_point_pattern", worst, 0.0)]
}

/// Green formula on random pairs: equals the explicit boundary sums when the
/// supports cross the boundary, vanishes when they are interior.
pub fn green_formula(seed: u64, samples: usize) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut boundary: f64 = 0.0;
    let mut interior: f64 = 0.0;
    for _ in 0..samples {
        let support = rng.random_range(1..=6usize);
        let phi = random_full(&mut rng, Degree::Zero, support);
        let omega = random_full(&mut rng, Degree::One, support);
        let scale = phi.norm() * omega.norm();
        let touching = rng.random_range(0..support);
        let residual = greens_formula_residual(&phi, &omega, touching).expect("degrees");
        let sums = green_boundary_sums(&phi, &omega, touching).expect("degrees");
        boundary = boundary.max(rel((residual - sums).norm(), scale));
        let clear = support + 1 + rng.random_range(0..3usize);
        interior = interior.max(rel(greens_formula_residual(&phi, &omega, clear).expect("degrees").norm(), scale));
    }
    vec![
        Check::at_most("green_formula_boundary_sums", boundary, CALCULUS_TOL),
        Check::at_most("green_formula_interior_vanishes", interior, CALCULUS_TOL),
    ]
}

pub fn calculus_suite(n: usize, seed: u64, samples: usize) -> SuiteReport {
    let mut checks = calculus_residuals(n, seed, samples);
    checks.extend(star_structure(4));
    checks.extend(laplacian_pattern());
    checks.extend(green_formula(seed, samples));
    SuiteReport {
        suite: "calculus",
        parameters: json!({ "n": n, "seed": seed, "samples": samples, "tolerance": CALCULUS_TOL }),
        checks,
        measurements: json!({}),
    }
}

/// Largest Dirichlet eigenvalue of `-Δ` on a window of half-width `n`.
pub fn dirichlet_top(n: usize) -> f64 {
    4.0 + 4.0 * (std::f64::consts::PI / (2 * n + 2) as f64).cos()
}

pub fn spectral_suite(n: usize, seed: u64, samples: usize, max_iter: usize, tol: f64) -> Result<SuiteReport, CliError> {
    let positivity = positivity_check(samples, n.min(16), seed)?;
    let estimate = operator_norm_estimate(Degree::Zero, n, max_iter, tol)?;
    let mut checks = vec![
        Check::at_least("rayleigh_quotient_lower", positivity.min_quotient, -SPECTRAL_TOL),
        Check::at_most("rayleigh_quotient_upper", positivity.max_quotient - 8.0, SPECTRAL_TOL),
        Check::at_least("positivity", positivity.min_quotient, f64::MIN_POSITIVE),
        Check::at_most("self_adjointness_witness", positivity.max_imag_ratio, SPECTRAL_TOL),
        Check::at_most("norm_estimate_below_eight", estimate.estimate - 8.0, NORM_CEILING_TOL),
    ];
    if n >= 100 {
        checks.push(Check::at_least("norm_estimate_at_least_7.995", estimate.estimate, 7.995));
    } else if estimate.converged() {
        checks.push(Check::at_most("norm_estimate_dirichlet_value", (estimate.estimate - dirichlet_top(n)).abs(), 1e-6));
    }
    Ok(SuiteReport {
        suite: "spectral",
        parameters: json!({ "n": n, "seed": seed, "samples": samples, "max_iter": max_iter, "tol": tol }),
        checks,
        measurements: json!({
            "min_quotient": positivity.min_quotient,
            "max_quotient": positivity.max_quotient,
            "norm_estimate": estimate.estimate,
            "iterations": estimate.iterations,
            "final_increment": estimate.final_increment,
            "converged": estimate.converged(),
            "dirichlet_top": dirichlet_top(n),
        }),
    })
}

/// `|p² - 2μp + 1|` for both roots and `|p|` for a context.
pub fn root_checks(ctx: &ResolventContext) -> (f64, f64) {
    let identity = Sign::BOTH.iter().map(|&s| root_identity(s, ctx).norm()).fold(0.0, f64::max);
    (identity, ctx.p().norm())
}

/// Largest separable-family residual relative to the stencil magnitude, over
/// `sites` random sites with `|k|, |s| ≤ 10`.
pub fn separable_residual(ctx: &ResolventContext, rng: &mut ChaCha8Rng, sites: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for _ in 0..sites {
        let (k, s) = (rng.random_range(-10..=10i64), rng.random_range(-10..=10i64));
        for a in Sign::BOTH {
            for b in Sign::BOTH {
                let scale = [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)]
                    .iter()
                    .map(|(dk, ds)| (phi_solution(k + dk, a, ctx) * phi_solution(s + ds, b, ctx)).norm())
                    .fold(0.0, f64::max);
                worst = worst.max(rel(homogeneous_residual(k, s, ctx, (a, b)).norm(), scale));
            }
        }
    }
    worst
}

pub fn green_suite(lambda: C64, w: usize, seed: u64, config: &OracleConfig) -> Result<SuiteReport, CliError> {
    let ctx = make_context(lambda)?;
    let (identity, p_abs) = root_checks(&ctx);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let separable = separable_residual(&ctx, &mut rng, 50);
    let report = compare_kernels(&ctx, w, ORACLE_AGREEMENT, config)?;
    let axis_max = report.records.iter().filter(|r| !strictly_off_axis(r.k, r.s)).map(|r| r.residual.norm()).fold(0.0, f64::max);
    let checks = vec![
        Check::at_most("root_identity", identity, ROOT_TOL),
        Check::at_most("decaying_root_modulus", p_abs, 1.0 - f64::EPSILON),
        Check::at_most("separable_solutions", separable, SEPARABLE_TOL),
        Check::at_most("oracle_mutual_agreement", report.max_oracle_gap, ORACLE_AGREEMENT),
        Check::at_most("oracle_stencil_inversion", report.oracle_residual, 10.0 * config.solver_tol),
        Check::at_most("closed_form_off_axis_residual", report.max_relative_off_axis_residual(), OFF_AXIS_TOL),
    ];
    let source = report.record(0, 0).expect("origin in grid");
    Ok(SuiteReport {
        suite: "green",
        parameters: json!({ "lambda": [lambda.re, lambda.im], "w": w, "seed": seed, "n_trunc": config.n_trunc, "quadrature_points": config.quadrature_points, "solver_tol": config.solver_tol }),
        checks,
        measurements: json!({
            "p": [ctx.p().re, ctx.p().im],
            "branch_swapped": ctx.branch_swapped(),
            "closed_form_max_residual": report.max_abs,
            "closed_form_axis_max_residual": axis_max,
            "closed_form_source_residual": [source.residual.re, source.residual.im],
            "closed_form_agreeing_offsets": report.records.iter().filter(|r| r.agree).count(),
            "offsets": report.records.len(),
        }),
    })
}
