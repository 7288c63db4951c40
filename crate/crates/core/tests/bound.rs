mod common;

use std::f64::consts::PI;

use framelet_core::analysis::{
    a_function, bspline_lowpass, d_a, optimal_pointwise, separation_report, xy,
};
use framelet_core::catalog::Lowpass;

#[test]
fn stable_form_matches_definition() {
    for lp in Lowpass::ALL {
        let a = lp.filter();
        for i in 0..=1024 {
            let xi = PI * i as f64 / 1024.0;
            let v = a_function(&a, xi).unwrap();
            assert!((v - common::bound_direct(&a, xi)).abs() < 1e-7, "{:?} {}", lp, xi);
        }
    }
}

#[test]
fn pointwise_optimum_on_every_filter() {
    for lp in Lowpass::ALL {
        let a = lp.filter();
        for i in 0..=1024 {
            let xi = PI * i as f64 / 1024.0;
            let o = optimal_pointwise(&a, xi).unwrap();
            let v = a_function(&a, xi).unwrap();
            assert!((o.b_value() - v).abs() <= 1e-10, "{:?} {}", lp, xi);
            assert!(o.tightness_residual(&a, xi) <= 1e-10, "{:?} {}", lp, xi);
        }
    }
}

#[test]
fn sandwich_for_bsplines() {
    for m in 1..=6 {
        let a = bspline_lowpass(m).unwrap();
        for i in 0..1024 {
            let xi = PI * i as f64 / 1024.0;
            let (x, y) = xy(&a, xi);
            let v = a_function(&a, xi).unwrap();
            assert!(x * y / 2.0 - 1e-10 <= v && v <= 2.0 * x * y + 1e-10);
        }
    }
}

#[test]
fn bound_integral_is_below_every_bank() {
    for lp in Lowpass::REDUNDANT {
        let bank = lp.initial_bank();
        let rep = separation_report(&bank, 1024).unwrap();
        assert!(rep.max_bound_violation <= 1e-9);
        assert!(rep.d_a <= rep.d_b + 1e-9);
        assert!(rep.d_a_error < 1e-8);
        let (coarse, _) = d_a(&bank.a, 256).unwrap();
        assert!((coarse - rep.d_a).abs() < 1e-6);
    }
}
