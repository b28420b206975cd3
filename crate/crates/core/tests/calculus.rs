use lattice_dec::operators::{
    coboundary, codifferential, codifferential_by_star, cup, green_boundary_sums, greens_formula_residual, laplacian,
    laplacian_by_composition, star, star_inverse,
};
use lattice_dec::{Cochain, Degree, GridIndex, Window, C64};
use proptest::prelude::*;

fn degree() -> impl Strategy<Value = Degree> {
    prop_oneof![Just(Degree::Zero), Just(Degree::One), Just(Degree::Two)]
}

fn coefficient() -> impl Strategy<Value = C64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| C64::new(re, im))
}

fn form_of(degree: Degree, n: usize) -> impl Strategy<Value = Cochain> {
    let len = Window::new(n).len();
    prop::collection::vec(prop::collection::vec(coefficient(), len), degree.component_count())
        .prop_map(move |c| Cochain::from_components(degree, Window::new(n), c).unwrap())
}

fn any_form() -> impl Strategy<Value = Cochain> {
    (degree(), 0usize..5).prop_flat_map(|(d, n)| form_of(d, n))
}

fn scale(form: &Cochain) -> f64 {
    1.0 + form.max_abs()
}

fn diff(a: &Cochain, b: &Cochain) -> f64 {
    a.max_abs_diff(b).unwrap().0
}

fn sign(r: Degree) -> f64 {
    if r == Degree::One { -1.0 } else { 1.0 }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn coboundary_is_nilpotent(form in any_form()) {
        let dd = coboundary(&coboundary(&form));
        prop_assert!(dd.max_abs() <= 1e-14 * scale(&form));
    }

    #[test]
    fn codifferential_is_nilpotent(form in any_form()) {
        let dd = codifferential(&codifferential(&form));
        prop_assert!(dd.max_abs() <= 1e-14 * scale(&form));
    }

    #[test]
    fn codifferential_paths_agree(form in any_form()) {
        let a = codifferential(&form);
        let b = codifferential_by_star(&form);
        prop_assert_eq!(a.degree(), b.degree());
        prop_assert!(diff(&a, &b) <= 1e-14 * scale(&form));
    }

    #[test]
    fn adjointness_on_compact_support(
        (a, b) in (0usize..2, 0usize..5, 0usize..5)
            .prop_flat_map(|(r, n, m)| {
                let lo = Degree::ALL[r];
                (form_of(lo, n), form_of(lo.next().unwrap(), m))
            })
    ) {
        let lhs = coboundary(&a).inner_product(&b).unwrap();
        let rhs = a.inner_product(&codifferential(&b)).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-13 * (1.0 + lhs.norm()));
    }

    #[test]
    fn leibniz_rule(
        (a, b) in (0usize..3, 0usize..3, 0usize..4)
            .prop_filter("product degree ≤ 1", |(r, q, _)| r + q <= 1)
            .prop_flat_map(|(r, q, n)| (form_of(Degree::ALL[r], n), form_of(Degree::ALL[q], n)))
    ) {
        let lhs = coboundary(&cup(&a, &b).unwrap());
        let first = cup(&coboundary(&a), &b).unwrap();
        let second = cup(&a, &coboundary(&b)).unwrap().scale(C64::new(sign(a.degree()), 0.0));
        let rhs = first.add(&second).unwrap();
        prop_assert!(diff(&lhs, &rhs) <= 1e-13 * (1.0 + lhs.max_abs()));
    }

    #[test]
    fn star_squares_to_signed_shift(form in any_form()) {
        let twice = star(&star(&form));
        let r = form.degree();
        let expected_sign = if r == Degree::One { -1.0 } else { 1.0 };
        for (slot, comp) in r.components().iter().enumerate() {
            for idx in twice.window().sites() {
                let shifted = form.at(slot, idx.shifted(-1, -1)) * expected_sign;
                prop_assert_eq!(twice.get(*comp, idx).unwrap(), shifted);
            }
        }
    }

    #[test]
    fn star_inverse_inverts(form in any_form()) {
        let back = star_inverse(&star(&form));
        prop_assert_eq!(diff(&back, &form), 0.0);
        let forth = star(&star_inverse(&form));
        prop_assert_eq!(diff(&forth, &form), 0.0);
    }

    #[test]
    fn laplacian_is_both_compositions(form in any_form()) {
        let a = laplacian(&form);
        let b = laplacian_by_composition(&form);
        prop_assert!(diff(&a, &b) <= 1e-14 * scale(&form));
    }

    #[test]
    fn laplacian_commutes_with_coboundary(form in any_form()) {
        if form.degree() == Degree::Two {
            return Ok(());
        }
        let a = laplacian(&coboundary(&form));
        let b = coboundary(&laplacian(&form));
        prop_assert!(diff(&a, &b) <= 1e-13 * scale(&form));
    }

    #[test]
    fn green_formula_boundary_terms(
        phi in form_of(Degree::Zero, 5),
        omega in form_of(Degree::One, 5),
        n in 0usize..6,
    ) {
        let residual = greens_formula_residual(&phi, &omega, n).unwrap();
        let sums = green_boundary_sums(&phi, &omega, n).unwrap();
        prop_assert!((residual - sums).norm() <= 1e-13 * (1.0 + sums.norm()));
    }
}

#[test]
fn green_formula_vanishes_for_interior_support() {
    let phi = Cochain::from_fn(Degree::Zero, Window::new(3), |_, i| C64::new((i.k - i.s) as f64, 0.5)).unwrap();
    let omega = Cochain::from_fn(Degree::One, Window::new(3), |_, i| C64::new(1.0, (i.k * i.s) as f64)).unwrap();
    for n in 5..8 {
        assert_eq!(greens_formula_residual(&phi, &omega, n).unwrap(), C64::new(0.0, 0.0));
    }
}

#[test]
fn cup_of_top_degrees_rejected() {
    let a = Cochain::basis(Degree::One, lattice_dec::Component::U, GridIndex::ORIGIN).unwrap();
    let b = Cochain::basis(Degree::Two, lattice_dec::Component::Scalar, GridIndex::ORIGIN).unwrap();
    assert!(cup(&a, &b).is_err());
    assert!(cup(&b, &b).is_err());
}
