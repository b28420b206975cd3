//! Coboundary, cup product, Hodge star, codifferential and the Laplace-Beltrami
//! operator on lattice cochains.
//!
//! Basis conventions, with `τk = k + 1`:
//!
//! ```text
//! d:  u_{k,s} = φ_{τk,s} - φ_{k,s},  v_{k,s} = φ_{k,τs} - φ_{k,s}
//!     η_{k,s} = (v_{τk,s} - v_{k,s}) - (u_{k,τs} - u_{k,s})
//! ⋆:  x^{k,s} → Ω^{k,s},  e₁^{k,s} → e₂^{τk,s},  e₂^{k,s} → -e₁^{k,τs},  Ω^{k,s} → x^{τk,τs}
//! ```
//!
//! Difference operators return a form on a window one wider than the input,
//! so nothing in the support of the result is cut off. Targets of degree 3
//! or -1 are returned as [`Cochain::structural_zero`].

use crate::cochain::{Cochain, CochainError, Component, Degree, GridIndex, Result, Window};
use crate::exec::Execution;
use crate::stencil;
use crate::C64;

/// Largest coefficient discrepancy between two forms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OperatorReport {
    pub max_abs_residual: f64,
    pub location: GridIndex,
    pub component: Component,
}

impl OperatorReport {
    pub fn compare(a: &Cochain, b: &Cochain) -> Result<Self> {
        let (max_abs_residual, location, component) = a.max_abs_diff(b)?;
        Ok(Self { max_abs_residual, location, component })
    }
}

/// Assemble a form on `window` from a per-coefficient rule.
fn assemble<F>(degree: Degree, window: Window, exec: Execution, rule: F) -> Cochain
where
    F: Fn(usize, GridIndex) -> C64 + Sync + Send,
{
    let side = window.side();
    let n = window.half_width() as i64;
    let components = (0..degree.component_count())
        .map(|slot| {
            let mut values = vec![C64::new(0.0, 0.0); window.len()];
            exec.fill_rows(&mut values, side, |row, chunk| {
                let k = row as i64 - n;
                for (j, z) in chunk.iter_mut().enumerate() {
                    *z = rule(slot, GridIndex::new(k, j as i64 - n));
                }
            });
            values
        })
        .collect();
    Cochain::from_parts(degree, window, components)
}

const U: usize = 0;
const V: usize = 1;

/// Coboundary `d`: `K^r → K^{r+1}`.
pub fn coboundary(form: &Cochain) -> Cochain {
    coboundary_with(form, Execution::default())
}

pub fn coboundary_with(form: &Cochain, exec: Execution) -> Cochain {
    if form.is_structural_zero() {
        // d of the (-1)-degree zero is the ordinary zero 0-form.
        return match form.degree() {
            Degree::Zero => Cochain::zeros(Degree::Zero, Window::new(0)),
            _ => Cochain::structural_zero(Degree::Two),
        };
    }
    let window = form.window().grown(1);
    match form.degree() {
        Degree::Zero => assemble(Degree::One, window, exec, |slot, i| {
            let here = form.at(0, i);
            if slot == U {
                form.at(0, i.shifted(1, 0)) - here
            } else {
                form.at(0, i.shifted(0, 1)) - here
            }
        }),
        Degree::One => assemble(Degree::Two, window, exec, |_, i| {
            (form.at(V, i.shifted(1, 0)) - form.at(V, i)) - (form.at(U, i.shifted(0, 1)) - form.at(U, i))
        }),
        Degree::Two => Cochain::structural_zero(Degree::Two),
    }
}

/// Codifferential `δ`: `K^r → K^{r-1}`, by the explicit backward differences
///
/// ```text
/// δω:  φ_{k,s} = -(u_{k,s} - u_{σk,s}) - (v_{k,s} - v_{k,σs})
/// δη:  u_{k,s} = η_{k,s} - η_{k,σs},   v_{k,s} = -(η_{k,s} - η_{σk,s})
/// ```
pub fn codifferential(form: &Cochain) -> Cochain {
    codifferential_with(form, Execution::default())
}

pub fn codifferential_with(form: &Cochain, exec: Execution) -> Cochain {
    if form.is_structural_zero() {
        return match form.degree() {
            Degree::Two => Cochain::zeros(Degree::Two, Window::new(0)),
            _ => Cochain::structural_zero(Degree::Zero),
        };
    }
    let window = form.window().grown(1);
    match form.degree() {
        Degree::Zero => Cochain::structural_zero(Degree::Zero),
        Degree::One => assemble(Degree::Zero, window, exec, |_, i| {
            -(form.at(U, i) - form.at(U, i.shifted(-1, 0))) - (form.at(V, i) - form.at(V, i.shifted(0, -1)))
        }),
        Degree::Two => assemble(Degree::One, window, exec, |slot, i| {
            let here = form.at(0, i);
            if slot == U {
                here - form.at(0, i.shifted(0, -1))
            } else {
                -(here - form.at(0, i.shifted(-1, 0)))
            }
        }),
    }
}

/// Hodge star `⋆`: `K^r → K^{2-r}`.
pub fn star(form: &Cochain) -> Cochain {
    if form.is_structural_zero() {
        return Cochain::structural_zero(form.degree().dual());
    }
    let exec = Execution::default();
    match form.degree() {
        Degree::Zero => Cochain::from_parts(Degree::Two, form.window(), form.components().to_vec()),
        Degree::One => assemble(Degree::One, form.window().grown(1), exec, |slot, i| {
            if slot == U {
                -form.at(V, i.shifted(0, -1))
            } else {
                form.at(U, i.shifted(-1, 0))
            }
        }),
        Degree::Two => assemble(Degree::Zero, form.window().grown(1), exec, |_, i| form.at(0, i.shifted(-1, -1))),
    }
}

/// Inverse of [`star`], read off the basis table row by row.
pub fn star_inverse(form: &Cochain) -> Cochain {
    if form.is_structural_zero() {
        return Cochain::structural_zero(form.degree().dual());
    }
    let exec = Execution::default();
    match form.degree() {
        Degree::Two => Cochain::from_parts(Degree::Zero, form.window(), form.components().to_vec()),
        Degree::One => assemble(Degree::One, form.window().grown(1), exec, |slot, i| {
            if slot == U {
                form.at(V, i.shifted(1, 0))
            } else {
                -form.at(U, i.shifted(0, 1))
            }
        }),
        Degree::Zero => assemble(Degree::Two, form.window().grown(1), exec, |_, i| form.at(0, i.shifted(1, 1))),
    }
}

/// The codifferential through the Hodge star, `(-1)^r ⋆⁻¹ d ⋆` with `r` the
/// degree of the input. Used as an independent check on [`codifferential`].
pub fn codifferential_by_star(form: &Cochain) -> Cochain {
    if form.degree() == Degree::Zero || form.is_structural_zero() {
        return codifferential(form);
    }
    let image = star_inverse(&coboundary(&star(form)));
    if form.degree() == Degree::One {
        image.scale(C64::new(-1.0, 0.0))
    } else {
        image
    }
}

/// Cup product, the bilinear extension of
///
/// ```text
/// x^{k,s} ∪ x^{k,s} = x^{k,s}
/// x^{k,s} ∪ e₁^{k,s} = e₁^{k,s} ∪ x^{τk,s} = e₁^{k,s}
/// x^{k,s} ∪ e₂^{k,s} = e₂^{k,s} ∪ x^{k,τs} = e₂^{k,s}
/// x^{k,s} ∪ Ω^{k,s} = Ω^{k,s} ∪ x^{τk,τs} = e₁^{k,s} ∪ e₂^{τk,s} = Ω^{k,s}
/// e₂^{k,s} ∪ e₁^{k,τs} = -Ω^{k,s}
/// ```
///
/// with every other product of basis elements zero. The result lives on
/// the left factor's window: each product term carries the left factor's
/// coefficient at the output site.
pub fn cup(a: &Cochain, b: &Cochain) -> Result<Cochain> {
    let total = a.degree().as_int() + b.degree().as_int();
    if total > 2 {
        return Err(CochainError::CupDegree { left: a.degree(), right: b.degree() });
    }
    let degree = Degree::from_int(total)?;
    if a.is_structural_zero() || b.is_structural_zero() {
        return Ok(Cochain::structural_zero(degree));
    }
    let window = a.window();
    let exec = Execution::default();
    let out = match (a.degree(), b.degree()) {
        (Degree::Zero, _) => assemble(degree, window, exec, |slot, i| a.at(0, i) * b.at(slot, i)),
        (Degree::One, Degree::Zero) => assemble(degree, window, exec, |slot, i| {
            let shifted = if slot == U { i.shifted(1, 0) } else { i.shifted(0, 1) };
            a.at(slot, i) * b.at(0, shifted)
        }),
        (Degree::Two, Degree::Zero) => assemble(degree, window, exec, |_, i| a.at(0, i) * b.at(0, i.shifted(1, 1))),
        (Degree::One, Degree::One) => assemble(degree, window, exec, |_, i| {
            a.at(U, i) * b.at(V, i.shifted(1, 0)) - a.at(V, i) * b.at(U, i.shifted(0, 1))
        }),
        _ => unreachable!("degree sum checked above"),
    };
    Ok(out)
}

/// Laplace-Beltrami operator `-Δ = δd + dδ`, evaluated as the five-point
/// stencil `4c_{k,s} - c_{τk,s} - c_{k,τs} - c_{σk,s} - c_{k,σs}` on every
/// component.
pub fn laplacian(form: &Cochain) -> Cochain {
    laplacian_with(form, Execution::default())
}

pub fn laplacian_with(form: &Cochain, exec: Execution) -> Cochain {
    if form.is_structural_zero() {
        return form.clone();
    }
    let window = form.window().grown(1);
    let components = form
        .components()
        .iter()
        .map(|values| stencil::apply(values, form.window(), window, C64::new(4.0, 0.0), exec))
        .collect();
    Cochain::from_parts(form.degree(), window, components)
}

/// `δd + dδ` composed from the primitive operators.
pub fn laplacian_by_composition(form: &Cochain) -> Cochain {
    let dd = codifferential(&coboundary(form));
    let dd2 = coboundary(&codifferential(form));
    dd.add(&dd2).expect("both terms have the input degree")
}

/// `(d a, b)_N - (a, δ b)_N` over the window of half-width `n`.
///
/// Vanishes when both forms are supported well inside the window; otherwise
/// it is the boundary term of the discrete Green formula.
pub fn greens_formula_residual(a: &Cochain, b: &Cochain, n: usize) -> Result<C64> {
    match a.degree().next() {
        Some(next) if next == b.degree() => {}
        _ => {
            return Err(CochainError::DegreeMismatch { left: a.degree(), right: b.degree() });
        }
    }
    let window = Window::new(n);
    let lhs = coboundary(a).inner_product_on(b, window)?;
    let rhs = a.inner_product_on(&codifferential(b), window)?;
    Ok(lhs - rhs)
}

/// Boundary sums of the Green formula for a 0-form `φ` and 1-form `ω = (u, v)`:
///
/// ```text
/// Σ_k (φ_{k,N+1} v̄_{k,N} - φ_{k,-N} v̄_{k,-N-1}) + Σ_s (φ_{N+1,s} ū_{N,s} - φ_{-N,s} ū_{-N-1,s})
/// ```
///
/// with `k, s` running over `-N..=N`.
pub fn green_boundary_sums(phi: &Cochain, omega: &Cochain, n: usize) -> Result<C64> {
    if phi.degree() != Degree::Zero || omega.degree() != Degree::One {
        return Err(CochainError::DegreeMismatch { left: phi.degree(), right: omega.degree() });
    }
    let n = n as i64;
    let mut acc = C64::new(0.0, 0.0);
    for k in -n..=n {
        acc += phi.at(0, GridIndex::new(k, n + 1)) * omega.at(V, GridIndex::new(k, n)).conj()
            - phi.at(0, GridIndex::new(k, -n)) * omega.at(V, GridIndex::new(k, -n - 1)).conj();
    }
    for s in -n..=n {
        acc += phi.at(0, GridIndex::new(n + 1, s)) * omega.at(U, GridIndex::new(n, s)).conj()
            - phi.at(0, GridIndex::new(-n, s)) * omega.at(U, GridIndex::new(-n - 1, s)).conj();
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn random_form(rng: &mut ChaCha8Rng, degree: Degree, n: usize) -> Cochain {
        Cochain::from_fn(degree, Window::new(n), |_, _| {
            C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        })
        .unwrap()
    }

    fn basis(degree: Degree, comp: Component, k: i64, s: i64) -> Cochain {
        Cochain::basis(degree, comp, GridIndex::new(k, s)).unwrap()
    }

    fn assert_same(a: &Cochain, b: &Cochain) {
        assert_eq!(a.degree(), b.degree());
        let (d, at, comp) = a.max_abs_diff(b).unwrap();
        assert_eq!(d, 0.0, "differ at {at} {comp:?}");
    }

    #[test]
    fn coboundary_of_delta() {
        let d = coboundary(&Cochain::delta(GridIndex::ORIGIN, Window::new(0)));
        assert_eq!(d.degree(), Degree::One);
        assert_eq!(d.window(), Window::new(1));
        let mut expected = Cochain::zeros(Degree::One, Window::new(1));
        expected = expected.add(&basis(Degree::One, Component::U, -1, 0)).unwrap();
        expected = expected.sub(&basis(Degree::One, Component::U, 0, 0)).unwrap();
        expected = expected.add(&basis(Degree::One, Component::V, 0, -1)).unwrap();
        expected = expected.sub(&basis(Degree::One, Component::V, 0, 0)).unwrap();
        assert_same(&d, &expected);
    }

    #[test]
    fn coboundary_of_constant_vanishes_inside() {
        let one = Cochain::constant(Degree::Zero, Window::new(4), c(1.0)).unwrap();
        let d = coboundary(&one);
        for idx in Window::new(4).sites() {
            if idx.k < 4 {
                assert_eq!(d.get(Component::U, idx).unwrap(), c(0.0));
            }
            if idx.s < 4 {
                assert_eq!(d.get(Component::V, idx).unwrap(), c(0.0));
            }
        }
    }

    #[test]
    fn dd_is_zero_and_top_degree_is_structural() {
        let dd = coboundary(&coboundary(&Cochain::delta(GridIndex::ORIGIN, Window::new(0))));
        assert_eq!(dd.degree(), Degree::Two);
        assert!(dd.is_zero());
        let top = coboundary(&basis(Degree::Two, Component::Scalar, 0, 0));
        assert!(top.is_structural_zero());
        assert_eq!(top.degree(), Degree::Two);
        let bottom = codifferential(&Cochain::delta(GridIndex::ORIGIN, Window::new(2)));
        assert!(bottom.is_structural_zero());
        assert_eq!(bottom.degree(), Degree::Zero);
    }

    #[test]
    fn cup_table_entries() {
        let x = basis(Degree::Zero, Component::Scalar, 0, 0);
        let e1 = basis(Degree::One, Component::U, 0, 0);
        let e2 = basis(Degree::One, Component::V, 0, 0);
        let e1_up = basis(Degree::One, Component::U, 0, 1);
        let omega = basis(Degree::Two, Component::Scalar, 0, 0);
        let neg_omega = omega.scale(c(-1.0));

        assert_same(&cup(&x, &e1).unwrap(), &e1);
        assert_same(&cup(&x, &x).unwrap(), &x);
        assert_same(&cup(&e2, &e1_up).unwrap(), &neg_omega);
        assert!(cup(&e1, &e2).unwrap().is_zero());
        assert_same(&cup(&e1, &basis(Degree::One, Component::V, 1, 0)).unwrap(), &omega);
        assert_same(&cup(&e1, &basis(Degree::Zero, Component::Scalar, 1, 0)).unwrap(), &e1);
        assert!(cup(&e1, &x).unwrap().is_zero());
        assert_same(&cup(&e2, &basis(Degree::Zero, Component::Scalar, 0, 1)).unwrap(), &e2);
        assert_same(&cup(&x, &omega).unwrap(), &omega);
        assert_same(&cup(&omega, &basis(Degree::Zero, Component::Scalar, 1, 1)).unwrap(), &omega);
        assert!(cup(&omega, &x).unwrap().is_zero());
        assert!(matches!(cup(&omega, &e1), Err(CochainError::CupDegree { .. })));
    }

    #[test]
    fn star_table() {
        let x = basis(Degree::Zero, Component::Scalar, 0, 0);
        assert_same(&star(&x), &basis(Degree::Two, Component::Scalar, 0, 0));
        let e2 = basis(Degree::One, Component::V, 0, 0);
        assert_same(&star(&e2), &basis(Degree::One, Component::U, 0, 1).scale(c(-1.0)));
        let e1 = basis(Degree::One, Component::U, 0, 0);
        assert_same(&star(&e1), &basis(Degree::One, Component::V, 1, 0));
        assert_same(&star(&star(&e1)), &basis(Degree::One, Component::U, 1, 1).scale(c(-1.0)));
        assert_same(&star(&basis(Degree::Two, Component::Scalar, 0, 0)), &basis(Degree::Zero, Component::Scalar, 1, 1));
    }

    #[test]
    fn star_inverse_table() {
        assert_same(
            &star_inverse(&basis(Degree::Two, Component::Scalar, 0, 0)),
            &basis(Degree::Zero, Component::Scalar, 0, 0),
        );
        let neg = basis(Degree::One, Component::U, 0, 1).scale(c(-1.0));
        assert_same(&star_inverse(&neg), &basis(Degree::One, Component::V, 0, 0));
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for degree in Degree::ALL {
            let f = random_form(&mut rng, degree, 3);
            assert_same(&star(&star_inverse(&f)), &f);
            assert_same(&star_inverse(&star(&f)), &f);
        }
    }

    #[test]
    fn codifferential_examples() {
        let phi = Cochain::delta(GridIndex::ORIGIN, Window::new(0));
        let lap = codifferential(&coboundary(&phi));
        assert_eq!(lap.get(Component::Scalar, GridIndex::ORIGIN).unwrap(), c(4.0));

        let eta = basis(Degree::Two, Component::Scalar, 0, 0);
        let d = codifferential(&eta);
        assert_eq!(d.get(Component::U, GridIndex::new(0, 0)).unwrap(), c(1.0));
        assert_eq!(d.get(Component::U, GridIndex::new(0, 1)).unwrap(), c(-1.0));
        assert_eq!(d.get(Component::V, GridIndex::new(0, 0)).unwrap(), c(-1.0));
        assert_eq!(d.get(Component::V, GridIndex::new(1, 0)).unwrap(), c(1.0));
        assert_eq!(d.norm_sqr(), 4.0);
        assert_same(&d, &codifferential_by_star(&eta));
    }

    #[test]
    fn codifferential_is_adjoint_of_coboundary() {
        // Direct check of the defining identity on basis pairs, independent of
        // the star path.
        for (r, comps) in [(Degree::Zero, [Component::Scalar].as_slice()), (Degree::One, &[Component::U, Component::V])] {
            let next = r.next().unwrap();
            for &ca in comps {
                for &cb in next.components() {
                    for (k, s) in [(0, 0), (1, 0), (0, -1), (1, 1)] {
                        let a = Cochain::basis_on(r, ca, GridIndex::ORIGIN, Window::new(3)).unwrap();
                        let b = Cochain::basis_on(next, cb, GridIndex::new(k, s), Window::new(3)).unwrap();
                        let lhs = coboundary(&a).inner_product(&b).unwrap();
                        let rhs = a.inner_product(&codifferential(&b)).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn laplacian_stencil_pattern() {
        for degree in Degree::ALL {
            for &comp in degree.components() {
                let f = Cochain::basis(degree, comp, GridIndex::ORIGIN).unwrap();
                let lap = laplacian(&f);
                for idx in lap.window().sites() {
                    let expected = match (idx.k, idx.s) {
                        (0, 0) => 4.0,
                        (0, 1) | (0, -1) | (1, 0) | (-1, 0) => -1.0,
                        _ => 0.0,
                    };
                    assert_eq!(lap.get(comp, idx).unwrap(), c(expected));
                    for &other in degree.components() {
                        if other != comp {
                            assert_eq!(lap.get(other, idx).unwrap(), c(0.0));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn laplacian_annihilates_constants_inside() {
        let one = Cochain::constant(Degree::Zero, Window::new(5), c(1.0)).unwrap();
        let lap = laplacian(&one);
        for idx in Window::new(4).sites() {
            assert_eq!(lap.at(0, idx), c(0.0));
        }
    }

    #[test]
    fn laplacian_matches_composition() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for degree in Degree::ALL {
            let f = random_form(&mut rng, degree, 4);
            let (d, _, _) = laplacian(&f).max_abs_diff(&laplacian_by_composition(&f)).unwrap();
            assert!(d <= 1e-13, "{degree}: {d}");
        }
    }

    #[test]
    fn greens_formula_boundary_terms() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let phi = random_form(&mut rng, Degree::Zero, 4);
        let omega = random_form(&mut rng, Degree::One, 4);
        let n = 3;
        let res = greens_formula_residual(&phi, &omega, n).unwrap();
        let sums = green_boundary_sums(&phi, &omega, n).unwrap();
        assert!(res.norm() > 1e-3);
        assert!((res - sums).norm() <= 1e-13, "{res} vs {sums}");

        let inner_phi = random_form(&mut rng, Degree::Zero, 1);
        let inner_omega = random_form(&mut rng, Degree::One, 1);
        assert!(greens_formula_residual(&inner_phi, &inner_omega, 3).unwrap().norm() <= 1e-13);
        let zero = Cochain::zeros(Degree::Zero, Window::new(3));
        assert_eq!(greens_formula_residual(&zero, &omega, 3).unwrap(), c(0.0));
        assert!(greens_formula_residual(&omega, &phi, 3).is_err());
    }
}
