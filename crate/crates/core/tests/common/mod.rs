#![allow(dead_code)]

use std::f64::consts::PI;

use framelet_core::{Complex64, FilterBank, LaurentPoly};

/// Naive symbol `Σ u(k) e^{−ikξ}`.
pub fn symbol(u: &LaurentPoly, xi: f64) -> Complex64 {
    u.terms()
        .map(|(k, c)| c * Complex64::from_polar(1.0, -(k as f64) * xi))
        .sum()
}

/// The bound from its defining expression, `(2 − x − y − √C)/2`.
pub fn bound_direct(a: &LaurentPoly, xi: f64) -> f64 {
    let x = symbol(a, xi).norm_sqr();
    let y = symbol(a, xi + PI).norm_sqr();
    let c = 4.0 * (1.0 - x - y) + (x - y) * (x - y);
    (2.0 - x - y - c.max(0.0).sqrt()) / 2.0
}

pub fn b_direct(bp: &LaurentPoly, bn: &LaurentPoly, xi: f64) -> f64 {
    symbol(bp, xi + PI).norm_sqr() + symbol(bn, xi).norm_sqr()
}

/// Composite Simpson of `∫₀^π B` on `n` intervals.
pub fn d_b_quadrature(bp: &LaurentPoly, bn: &LaurentPoly, n: usize) -> f64 {
    let h = PI / n as f64;
    let mut acc = 0.0;
    for i in 0..=n {
        let w = if i == 0 || i == n { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * b_direct(bp, bn, i as f64 * h);
    }
    acc * h / 3.0
}

/// Largest `A − B` over `n + 1` points of `[0, π]`.
pub fn worst_bound_gap(bank: &FilterBank, n: usize) -> f64 {
    let (bp, bn) = (&bank.highpass[0], &bank.highpass[1]);
    (0..=n)
        .map(|i| {
            let xi = PI * i as f64 / n as f64;
            bound_direct(&bank.a, xi) - b_direct(bp, bn, xi)
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Tightness on the unit circle at `n` points, without polynomial products.
pub fn pointwise_tightness(bank: &FilterBank, n: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let xi = 2.0 * PI * i as f64 / n as f64;
        let a0 = symbol(&bank.a, xi);
        let a1 = symbol(&bank.a, xi + PI);
        let mut e1 = a0.norm_sqr() - 1.0;
        let mut e2 = a0 * a1.conj();
        for b in &bank.highpass {
            let (b0, b1) = (symbol(b, xi), symbol(b, xi + PI));
            e1 += b0.norm_sqr();
            e2 += b0 * b1.conj();
        }
        worst = worst.max(e1.abs()).max(e2.norm());
    }
    worst
}
