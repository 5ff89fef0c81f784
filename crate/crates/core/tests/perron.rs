//! Perron kernel quadrature against closed forms and its own envelope.

use std::f64::consts::PI;

use num_complex::Complex64;

use pnt_core::perron::{
    dirichlet_perron_check, lemma1_error_bound, main_term, perron_integral, perron_integral_full_range,
    perron_integral_with, DirichletPolynomial,
};
use pnt_core::quadrature::QuadratureConfig;
use pnt_core::Error;

#[test]
fn first_order_examples() {
    let r = perron_integral(2.0, 1.0, 1e3, 1).unwrap();
    assert!((r.numeric.re - 0.5).abs() <= 2.0 / 1e3);
    assert!(r.numeric.im.abs() <= 1e-8 * (1.0 + r.numeric.norm()));
    let r = perron_integral(0.5, 1.0, 1e3, 1).unwrap();
    assert!(r.gap() <= r.bound + r.quadrature_error_estimate);
    let r = perron_integral(1.0, 1.0, 100.0, 1).unwrap();
    assert!((r.numeric.re - 0.0031831).abs() < 1e-6);
}

#[test]
fn unit_argument_closed_form() {
    // (1/π)(arctan(T/b) − arctan(T/(b+1))) exactly.
    let cfg = QuadratureConfig { abs_tol: 1e-14, ..Default::default() };
    for b in [0.5, 1.0, 2.0] {
        for t in [10.0, 100.0, 1e3] {
            let r = perron_integral_with(1.0, b, t, 1, &cfg).unwrap();
            let exact = ((t / b).atan() - (t / (b + 1.0)).atan()) / PI;
            assert!((r.numeric.re - exact).abs() < 1e-13, "b={b} T={t}");
        }
    }
}

#[test]
fn envelope_over_grid() {
    for a in [1.01, 1.5, 2.0, 5.0, 0.99, 0.5, 0.1] {
        for b in [0.5, 1.0, 2.0] {
            for t in [1e2, 1e3] {
                for k in 1..=3 {
                    let r = perron_integral(a, b, t, k).unwrap();
                    assert!(r.gap() <= 4.0 * r.bound, "a={a} b={b} T={t} k={k}: {}", r.ratio());
                    assert!(r.gap() <= r.bound + r.quadrature_error_estimate);
                }
            }
        }
    }
}

#[test]
fn residue_sums_for_higher_orders() {
    for k in 1..=6 {
        assert_eq!(main_term(0.5, 10.0, k), 0.0);
        assert!((main_term(3.0, 10.0, k) - (2.0f64 / 3.0).powi(k as i32)).abs() < 1e-15);
    }
    // Far along the segment the kernel integral has essentially converged.
    let r = perron_integral(3.0, 1.0, 1e3, 4).unwrap();
    assert!((r.numeric.re - (2.0f64 / 3.0).powi(4)).abs() < 1e-6);
}

#[test]
fn half_range_matches_full_range() {
    let cfg = QuadratureConfig { abs_tol: 1e-13, ..Default::default() };
    for &(a, b, t, k) in &[(2.0, 1.0, 300.0, 1), (0.3, 0.5, 100.0, 2), (1.0, 1.0, 50.0, 1), (7.0, 2.0, 80.0, 3)] {
        let half = perron_integral_with(a, b, t, k, &cfg).unwrap();
        let full = perron_integral_full_range(a, b, t, k, &cfg).unwrap();
        assert!((half.numeric - full.value).norm() <= 1e-12, "a={a}");
        assert!(full.value.im.abs() <= 1e-12);
    }
}

#[test]
fn argument_errors() {
    assert!(matches!(perron_integral(0.0, 1.0, 10.0, 1), Err(Error::InvalidArgument(_))));
    assert!(matches!(perron_integral(-2.0, 1.0, 10.0, 1), Err(Error::InvalidArgument(_))));
    assert!(perron_integral(2.0, 0.0, 10.0, 1).is_err());
    assert!(perron_integral(2.0, 1.0, 10.0, 7).is_err());
    assert!(lemma1_error_bound(1.0, 1.0, 10.0).is_err());
    let e = std::f64::consts::E;
    assert!((lemma1_error_bound(e, 0.5, 100.0).unwrap() - e.sqrt() * 1e-4).abs() < 1e-15);
    assert!((lemma1_error_bound(1.0 + 1e-9, 1.0, 100.0).unwrap() - 0.01).abs() < 1e-9);
}

#[test]
fn tight_tolerance_is_reported() {
    // Far below the rounding floor of the sum: unreachable.
    let cfg = QuadratureConfig { abs_tol: 1e-18, rel_tol: 0.0, max_subdivisions: 50 };
    match perron_integral_with(5.0, 1.0, 1e4, 1, &cfg) {
        Err(Error::NumericFailure(d)) => assert!(d.error_estimate > d.tolerance),
        other => panic!("expected a numeric failure, got {other:?}"),
    }
}

#[test]
fn dirichlet_examples() {
    let s0 = Complex64::new(0.0, 0.0);
    let one = DirichletPolynomial::from_real([(1, 1.0)]).unwrap();
    assert_eq!(one.summatory(5, s0), Complex64::new(5.0, 0.0));
    let c = dirichlet_perron_check(&one, s0, 1.0, 1e3, 5).unwrap();
    assert!(c.gap < 0.05, "{}", c.gap);

    let two = DirichletPolynomial::from_real([(2, 1.0)]).unwrap();
    let lhs = two.summatory(3, Complex64::new(1.0, 0.0));
    assert!((lhs - Complex64::new(1.0, 0.0)).norm() < 1e-15);

    assert!(DirichletPolynomial::from_real([(0, 1.0)]).is_err());
    assert!(dirichlet_perron_check(&one, Complex64::new(-2.0, 0.0), 1.0, 10.0, 5).is_err());
}

#[test]
fn dirichlet_gap_shrinks_like_one_over_t() {
    let table = pnt_core::sieve::LambdaTable::build(50).unwrap();
    let poly = pnt_core::check::lambda_polynomial(&table, 50).unwrap();
    let s0 = Complex64::new(0.0, 0.0);
    let g: Vec<f64> = [1e2, 1e3]
        .iter()
        .map(|&t| dirichlet_perron_check(&poly, s0, 1.0, t, 30).unwrap().gap)
        .collect();
    assert!(g[0] / g[1] >= 5.0, "{g:?}");
    // Complex s0 takes the full-segment path.
    let c = dirichlet_perron_check(&poly, Complex64::new(0.5, 3.0), 1.0, 1e3, 30).unwrap();
    assert!(c.gap < 0.1 * c.lhs.norm(), "{c:?}");
}
