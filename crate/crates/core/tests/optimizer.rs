mod common;

use std::f64::consts::PI;

use framelet_core::analysis::{det_relation_check, verify_tight};
use framelet_core::catalog::Lowpass;
use framelet_core::optimize::{optimize_bank, rotate, LatticeColumn, OptimizeOptions};
use framelet_core::LaurentPoly;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `d_B` of `((u + iv)/√2, (u − iv)/√2)` for real `u = cb₁ − sb₂`,
/// `v = ±(sb₁ + cb₂)`: a trigonometric quadratic `α + β cos 2θ + γ sin 2θ`,
/// fitted from three quadrature values.
fn fitted_curve(b1: &LaurentPoly, b2: &LaurentPoly, sign: f64) -> impl Fn(f64) -> f64 {
    let eval = |t: f64| {
        let (s, c) = t.sin_cos();
        let u = &b1.scale_real(c) - &b2.scale_real(s);
        let v = (&b1.scale_real(s) + &b2.scale_real(c)).scale_real(sign);
        let i = framelet_core::Complex64::new(0.0, 1.0);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let bp = (&u + &v.scale(i)).scale_real(r);
        let bn = (&u - &v.scale(i)).scale_real(r);
        common::d_b_quadrature(&bp, &bn, 4096)
    };
    let (f0, f1, f2) = (eval(0.0), eval(PI / 4.0), eval(PI / 2.0));
    let alpha = (f0 + f2) / 2.0;
    let beta = (f0 - f2) / 2.0;
    let gamma = f1 - alpha;
    move |t: f64| alpha + beta * (2.0 * t).cos() + gamma * (2.0 * t).sin()
}

#[test]
fn degree_zero_matches_grid_search() {
    let bank = Lowpass::Bspline2.initial_bank();
    let (b1, b2) = bank.pair().unwrap();
    let curves = [fitted_curve(b1, b2, 1.0), fitted_curve(b1, b2, -1.0)];
    let n = 1_000_000;
    let mut brute = f64::INFINITY;
    for i in 0..n {
        let t = 2.0 * PI * i as f64 / n as f64;
        for f in &curves {
            brute = brute.min(f(t));
        }
    }
    let opts = OptimizeOptions {
        order: 0,
        real_mode: Some(true),
        starts: 32,
        seed: 7,
    };
    let r = optimize_bank(&bank, &opts).unwrap();
    assert!((r.d_b - brute).abs() < 1e-4, "{} vs {}", r.d_b, brute);
    assert!((r.d_b - common::d_b_quadrature(&r.bp, &r.bn, 4096)).abs() < 1e-10);
    assert!(r.bp.coeffs().iter().zip(r.bn.coeffs()).all(|(p, q)| (p - q.conj()).norm() < 1e-12));
}

#[test]
fn known_optimum_is_reached() {
    let bank = Lowpass::Bspline2.initial_bank();
    let r = optimize_bank(&bank, &OptimizeOptions::default()).unwrap();
    let best = framelet_core::catalog::bspline2_optimal_pair();
    let (bp, bn) = best.pair().unwrap();
    assert!(r.d_b <= framelet_core::analysis::d_b(bp, bn) + 1e-9);
}

#[test]
fn degree_one_family_contains_degree_zero() {
    let bank = Lowpass::Bspline2.initial_bank();
    let r = optimize_bank(&bank, &OptimizeOptions::default()).unwrap();
    let mut lat = LatticeColumn::real(vec![0.0, r.lattice.theta[0]]);
    lat.reflect = r.lattice.reflect;
    let out = rotate(&bank, &lat, true).unwrap();
    let (bp, bn) = out.pair().unwrap();
    assert!((framelet_core::analysis::d_b(bp, bn) - r.d_b).abs() < 1e-12);
}

#[test]
fn degree_two_beats_degree_zero() {
    let bank = Lowpass::Bspline2.initial_bank();
    let opts = OptimizeOptions {
        order: 2,
        starts: 32,
        ..Default::default()
    };
    let r = optimize_bank(&bank, &opts).unwrap();
    assert!(r.d_b < 0.3);
    assert!(verify_tight(&r.bank(&bank.a), 1e-9).ok);
    assert!(common::worst_bound_gap(&r.bank(&bank.a), 1024) <= 1e-9);
}

#[test]
fn random_lattices_preserve_tightness() {
    let bank = Lowpass::Bspline2.initial_bank();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for order in 0..=3usize {
        for _ in 0..200 {
            let theta: Vec<f64> = (0..=order).map(|_| rng.random_range(0.0..2.0 * PI)).collect();
            let phi: Vec<f64> = (0..=order).map(|_| rng.random_range(0.0..2.0 * PI)).collect();
            let lat = LatticeColumn::complex(theta, phi, rng.random_range(0.0..2.0 * PI));
            let out = rotate(&bank, &lat, false).unwrap();
            let t = verify_tight(&out, 1e-9);
            assert!(t.ok, "N={}: {}", order, t.residual);
            let rel = det_relation_check(&bank, &out, 1e-9).unwrap();
            assert!(rel.ok, "N={}: {:?}", order, rel);
            assert!((rel.lambda.norm() - 1.0).abs() <= 1e-9);
            assert!(common::worst_bound_gap(&out, 1024) <= 1e-9);
        }
    }
}

#[test]
fn real_mode_needs_real_bank() {
    let bank = framelet_core::catalog::bspline2_optimal_pair();
    let opts = OptimizeOptions {
        real_mode: Some(true),
        ..Default::default()
    };
    assert!(optimize_bank(&bank, &opts).is_err());
}
