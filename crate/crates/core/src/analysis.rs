//! Tightness, the frequency-separation bound and the directionality report.
//!
//! With `x = |â(ξ)|²` and `y = |â(ξ+π)|²` the bound is
//! `A(ξ) = [2 − x − y − √C(ξ)]/2` where `C = 4(1 − x − y) + (x − y)²`, and
//! every tight bank `{a; bp, bn}` satisfies
//! `B(ξ) = |b̂p(ξ+π)|² + |b̂n(ξ)|² ≥ A(ξ)`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Slack allowed in `x + y ≤ 1`.
pub const CONDITION_TOL: f64 = 1e-9;
/// Radicand values in `[-RADICAND_CLAMP, 0)` are treated as round-off.
pub const RADICAND_CLAMP: f64 = 1e-12;
/// Default number of Simpson intervals on `[0, π]`.
/// Below this `√C` the split between the two optima is left even.
pub const DEGENERATE_ROOT: f64 = 1e-12;
pub const DEFAULT_GRID: usize = 2048;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    pub fn as_str(self) -> &'static str {
        match self {
            Field::Real => "real",
            Field::Complex => "complex",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FilterBank {
    pub a: LaurentPoly,
    pub highpass: Vec<LaurentPoly>,
    pub field: Field,
}

impl FilterBank {
    /// Builds a bank whose field tag is `Real` exactly when every
    /// coefficient is real.
    pub fn new(a: LaurentPoly, highpass: Vec<LaurentPoly>) -> Self {
        let field = if a.is_real() && highpass.iter().all(LaurentPoly::is_real) {
            Field::Real
        } else {
            Field::Complex
        };
        FilterBank { a, highpass, field }
    }

    /// The two high-pass filters as `(bp, bn)`.
    pub fn pair(&self) -> Result<(&LaurentPoly, &LaurentPoly)> {
        match self.highpass.as_slice() {
            [p, n] => Ok((p, n)),
            other => Err(Error::WrongArity(other.len())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TightCheck {
    pub ok: bool,
    pub residual: f64,
}

/// Largest coefficient deviation in `aa* + Σ bb* = 1` and
/// `a(z)a*(−z) + Σ b(z)b*(−z) = 0`.
pub fn tightness_residual(a: &LaurentPoly, highpass: &[LaurentPoly]) -> f64 {
    let mut e1 = &(a * &a.star()) - &LaurentPoly::one();
    let mut e2 = a * &a.alternate().star();
    for b in highpass {
        e1 = &e1 + &(b * &b.star());
        e2 = &e2 + &(b * &b.alternate().star());
    }
    e1.max_abs().max(e2.max_abs())
}

pub fn verify_tight(bank: &FilterBank, tol: f64) -> TightCheck {
    let residual = tightness_residual(&bank.a, &bank.highpass);
    TightCheck {
        ok: residual <= tol,
        residual,
    }
}

/// Largest coefficient deviation in `aa* + a(−z)a*(−z) = 1`.
pub fn orthogonality_residual(a: &LaurentPoly) -> f64 {
    let aa = a * &a.star();
    (&(&aa + &aa.alternate()) - &LaurentPoly::one()).max_abs()
}

/// `(x, y) = (|â(ξ)|², |â(ξ+π)|²)`.
pub fn xy(a: &LaurentPoly, xi: f64) -> (f64, f64) {
    (a.eval_unit(xi).norm_sqr(), a.eval_unit(xi + PI).norm_sqr())
}

/// `C` from `g = 1 − x − y` and `δ = x − y`, clamped at 0.
fn radicand(gap: f64, delta: f64, xi: f64) -> Result<f64> {
    if -gap > CONDITION_TOL {
        return Err(Error::ConditionViolated { xi, excess: -gap });
    }
    let c = 4.0 * gap + delta * delta;
    if c < -RADICAND_CLAMP {
        return Err(Error::ConditionViolated { xi, excess: -c });
    }
    Ok(c.max(0.0))
}

/// `A` as a function of `(x, y)`, in the cancellation-free form
/// `2xy / (2 − x − y + √C)`.
pub fn a_from_xy(x: f64, y: f64) -> Result<f64> {
    let c = radicand(1.0 - x - y, x - y, f64::NAN)?;
    Ok(2.0 * x * y / ((2.0 - x - y) + c.sqrt()))
}

/// Evaluates `A(ξ)` and the pointwise optimum of one low-pass filter.
///
/// `1 − x − y` and `x − y` are symbols of the Laurent polynomials
/// `1 − 𝖺𝖺* − 𝖺(−z)𝖺*(−z)` and `𝖺𝖺* − 𝖺(−z)𝖺*(−z)`, formed exactly once.
/// For orthogonal filters with dyadic coefficients the first is then
/// identically zero instead of a rounding residue, which matters because
/// `A` depends on `√C`.
#[derive(Clone, Debug)]
pub struct SeparationBound {
    a: LaurentPoly,
    gap: LaurentPoly,
    diff: LaurentPoly,
}

#[derive(Clone, Copy)]
struct Parts {
    x: f64,
    y: f64,
    gap: f64,
    delta: f64,
    c: f64,
}

impl SeparationBound {
    pub fn new(a: &LaurentPoly) -> Self {
        let aa = a * &a.star();
        let alt = aa.alternate();
        SeparationBound {
            a: a.clone(),
            gap: &(&LaurentPoly::one() - &aa) - &alt,
            diff: &aa - &alt,
        }
    }

    fn parts(&self, xi: f64) -> Result<Parts> {
        // |â|² directly keeps relative accuracy near the zeros of â
        let x = self.a.eval_unit(xi).norm_sqr();
        let y = self.a.eval_unit(xi + PI).norm_sqr();
        let gap = self.gap.eval_unit(xi).re;
        let delta = self.diff.eval_unit(xi).re;
        let c = radicand(gap, delta, xi)?;
        Ok(Parts { x, y, gap, delta, c })
    }

    /// `A(ξ)`.
    pub fn value(&self, xi: f64) -> Result<f64> {
        let p = self.parts(xi)?;
        Ok(2.0 * p.x * p.y / ((1.0 + p.gap) + p.c.sqrt()))
    }

    /// Symbol values at `ξ` and `ξ + π` of a tight pair attaining
    /// `B(ξ) = A(ξ)`.
    pub fn optimum(&self, xi: f64) -> Result<PointwiseOptimum> {
        let p = self.parts(xi)?;
        let sc = p.c.sqrt();
        let big_a = 2.0 * p.x * p.y / ((1.0 + p.gap) + sc);
        let (p_pi, n_0) = if sc == 0.0 {
            (0.5, 0.5)
        } else if sc <= DEGENERATE_ROOT {
            // t = δ/√C is undetermined here, split evenly
            let h = (0.5 * big_a).sqrt();
            (h, h)
        } else {
            // (√C − δ)(√C + δ) = 4g, so take the non-cancelling factor
            let (minus, plus) = if p.delta >= 0.0 {
                (4.0 * p.gap.max(0.0) / (sc + p.delta), sc + p.delta)
            } else {
                (sc - p.delta, 4.0 * p.gap.max(0.0) / (sc - p.delta))
            };
            (
                (0.5 * big_a * minus / sc).max(0.0).sqrt(),
                (0.5 * big_a * plus / sc).max(0.0).sqrt(),
            )
        };
        let prod = self.a.eval_unit(xi) * self.a.eval_unit(xi + PI).conj();
        let beta = if prod.is_zero() { 0.0 } else { prod.arg() };
        let e = Complex64::from_polar(1.0, beta);
        // 1 − x = gap + y and 1 − y = gap + x
        let p_0 = (p.gap + p.y - n_0 * n_0).max(0.0).sqrt();
        let n_pi = (p.gap + p.x - p_pi * p_pi).max(0.0).sqrt();
        Ok(PointwiseOptimum {
            bp_xi: -e * p_0,
            bp_xi_pi: Complex64::new(p_pi, 0.0),
            bn_xi: Complex64::new(n_0, 0.0),
            bn_xi_pi: -e.conj() * n_pi,
            beta,
        })
    }
}

/// The separation bound `A(ξ)` of the low-pass filter `a`.
pub fn a_function(a: &LaurentPoly, xi: f64) -> Result<f64> {
    SeparationBound::new(a).value(xi)
}

/// `B(ξ) = |b̂p(ξ+π)|² + |b̂n(ξ)|²`.
pub fn b_function(bp: &LaurentPoly, bn: &LaurentPoly, xi: f64) -> f64 {
    bp.eval_unit(xi + PI).norm_sqr() + bn.eval_unit(xi).norm_sqr()
}

/// Symbol values of a pointwise-optimal pair at `ξ` and `ξ + π`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointwiseOptimum {
    pub bp_xi: Complex64,
    pub bp_xi_pi: Complex64,
    pub bn_xi: Complex64,
    pub bn_xi_pi: Complex64,
    pub beta: f64,
}

impl PointwiseOptimum {
    /// Largest deviation in the three tightness equations at `ξ`.
    pub fn tightness_residual(&self, a: &LaurentPoly, xi: f64) -> f64 {
        let a0 = a.eval_unit(xi);
        let a1 = a.eval_unit(xi + PI);
        let e1 = a0.norm_sqr() + self.bp_xi.norm_sqr() + self.bn_xi.norm_sqr() - 1.0;
        let e2 = a1.norm_sqr() + self.bp_xi_pi.norm_sqr() + self.bn_xi_pi.norm_sqr() - 1.0;
        let e3 = a0 * a1.conj() + self.bp_xi * self.bp_xi_pi.conj() + self.bn_xi * self.bn_xi_pi.conj();
        e1.abs().max(e2.abs()).max(e3.norm())
    }

    /// `|bp(ξ+π)|² + |bn(ξ)|²`.
    pub fn b_value(&self) -> f64 {
        self.bp_xi_pi.norm_sqr() + self.bn_xi.norm_sqr()
    }
}

/// Symbol values at `ξ` and `ξ + π` of a tight pair attaining `B(ξ) = A(ξ)`.
pub fn optimal_pointwise(a: &LaurentPoly, xi: f64) -> Result<PointwiseOptimum> {
    SeparationBound::new(a).optimum(xi)
}

/// `d_R = ½∫₀^π [2 − |â(ξ)|² − |â(ξ+π)|²] dξ`, exact.
pub fn d_real(a: &LaurentPoly) -> f64 {
    let aa = a * &a.star();
    let two = LaurentPoly::constant(Complex64::new(2.0, 0.0));
    let integrand = &(&two - &aa) - &aa.alternate();
    0.5 * integrand.integrate_halfcircle().re
}

/// `d_B = ∫₀^π B(ξ) dξ`, exact.
pub fn d_b(bp: &LaurentPoly, bn: &LaurentPoly) -> f64 {
    let ap = bp.alternate();
    let integrand = &(&ap * &ap.star()) + &(bn * &bn.star());
    integrand.integrate_halfcircle().re
}

fn simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len() - 1;
    let mut acc = values[0] + values[n];
    for (i, v) in values.iter().enumerate().take(n).skip(1) {
        acc += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    acc * h / 3.0
}

fn a_samples(bound: &SeparationBound, n: usize) -> Result<Vec<f64>> {
    let h = PI / n as f64;
    (0..=n).map(|i| bound.value(i as f64 * h)).collect()
}

/// `d_A = ∫₀^π A(ξ) dξ` by composite Simpson on `grid_n` intervals and on
/// the doubled grid. Returns the fine value and the difference of the two.
pub fn d_a(a: &LaurentPoly, grid_n: usize) -> Result<(f64, f64)> {
    let n = even(grid_n);
    let a = &SeparationBound::new(a);
    let coarse = simpson(&a_samples(a, n)?, PI / n as f64);
    let fine = simpson(&a_samples(a, 2 * n)?, PI / (2 * n) as f64);
    Ok((fine, (fine - coarse).abs()))
}

fn even(n: usize) -> usize {
    let n = n.max(2);
    n + n % 2
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeparationReport {
    pub d_r: f64,
    pub d_a: f64,
    /// `|d_A(n) − d_A(2n)|`, the quadrature certificate.
    pub d_a_error: f64,
    pub d_b: f64,
    /// Samples `(ξ, A(ξ), B(ξ))` on `[0, π]`.
    pub grid: Vec<(f64, f64, f64)>,
    /// `max(A(ξ) − B(ξ))` over the grid.
    pub max_bound_violation: f64,
}

/// Directionality quantities of `{a; bp, bn}` with `bp`, `bn` the first and
/// second high-pass filter.
pub fn separation_report(bank: &FilterBank, grid_n: usize) -> Result<SeparationReport> {
    let (bp, bn) = bank.pair()?;
    let n = even(grid_n);
    let h = PI / n as f64;
    let mut grid = Vec::with_capacity(n + 1);
    let mut worst = f64::NEG_INFINITY;
    let bound = SeparationBound::new(&bank.a);
    for i in 0..=n {
        let xi = i as f64 * h;
        let av = bound.value(xi)?;
        let bv = b_function(bp, bn, xi);
        worst = worst.max(av - bv);
        grid.push((xi, av, bv));
    }
    let (d_a, d_a_error) = d_a(&bank.a, n)?;
    Ok(SeparationReport {
        d_r: d_real(&bank.a),
        d_a,
        d_a_error,
        d_b: d_b(bp, bn),
        grid,
        max_bound_violation: worst,
    })
}

/// Largest `x + y − 1` over `n` unit-circle samples, with its location.
pub fn condition_excess(a: &LaurentPoly, n: usize) -> (f64, f64) {
    (0..n)
        .map(|i| {
            let xi = 2.0 * PI * i as f64 / n as f64;
            let (x, y) = xy(a, xi);
            (x + y - 1.0, xi)
        })
        .fold((f64::NEG_INFINITY, 0.0), |m, v| if v.0 > m.0 { v } else { m })
}

/// `b₁(z)b₂(−z) − b₁(−z)b₂(z)`.
pub fn det_poly(b1: &LaurentPoly, b2: &LaurentPoly) -> LaurentPoly {
    &(b1 * &b2.alternate()) - &(&b1.alternate() * b2)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DetRelation {
    pub ok: bool,
    /// `det₂ = λ z^{2k} det₁`.
    pub lambda: Complex64,
    pub k: i64,
}

/// Tests whether the high-pass pairs of two banks over the same low-pass
/// filter are related by a paraunitary factor, via their determinants.
pub fn det_relation_check(bank1: &FilterBank, bank2: &FilterBank, tol: f64) -> Result<DetRelation> {
    if (&bank1.a - &bank2.a).max_abs() > tol {
        return Err(Error::MismatchedLowpass);
    }
    let (p1, n1) = bank1.pair()?;
    let (p2, n2) = bank2.pair()?;
    let d1 = det_poly(p1, n1);
    let d2 = det_poly(p2, n2);
    let scale = d1.max_abs().max(d2.max_abs());
    let d1 = d1.trimmed(1e-12 * scale.max(1.0));
    let d2 = d2.trimmed(1e-12 * scale.max(1.0));
    let fail = DetRelation {
        ok: false,
        lambda: Complex64::zero(),
        k: 0,
    };
    match (d1.is_zero(), d2.is_zero()) {
        (true, true) => {
            return Ok(DetRelation {
                ok: true,
                lambda: Complex64::new(1.0, 0.0),
                k: 0,
            })
        }
        (false, false) => {}
        _ => return Ok(fail),
    }
    let shift = d2.lo() - d1.lo();
    let i = d1
        .coeffs()
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))
        .map(|(i, _)| i as i64)
        .unwrap();
    let lambda = d2.coeff(d1.lo() + i + shift) / d1.coeff(d1.lo() + i);
    let mismatch = (&d2 - &d1.scale(lambda).shift(shift)).max_abs();
    let ok = shift % 2 == 0 && (lambda.norm() - 1.0).abs() <= tol && mismatch <= tol * scale.max(1.0);
    Ok(DetRelation {
        ok,
        lambda,
        k: shift.div_euclid(2),
    })
}

/// The filter with symbol `((1 + e^{−iξ})/2)^m`, shifted by `−⌊m/2⌋`.
pub fn bspline_lowpass(m: i64) -> Result<LaurentPoly> {
    if m < 1 {
        return Err(Error::BadOrder(m));
    }
    let mut row = alloc::vec![1.0f64];
    for _ in 0..m {
        let mut next = alloc::vec![0.0; row.len() + 1];
        for (i, &v) in row.iter().enumerate() {
            next[i] += v * 0.5;
            next[i + 1] += v * 0.5;
        }
        row = next;
    }
    Ok(LaurentPoly::from_real(-(m / 2), &row))
}
