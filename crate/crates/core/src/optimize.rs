//! Lattice rotation of a tight bank to minimize the separation integral.
//!
//! A column `(u₁, u₂)` with `|u₁|² + |u₂|² = 1` on the unit circle maps a
//! tight bank `{a; b₁, b₂}` to another tight bank `{a; bp, bn}` with
//! `bp = b₁u₁(z²) + b₂u₂(z²)` and `bn = z^{2m}[b₂u₁*(z²) − b₁u₂*(z²)]`.
//! The column is a lattice product of constant unitary stages and delays,
//! so every parameter value is feasible.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{d_b, tightness_residual, verify_tight, Field, FilterBank};
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, TRIM_TOL};

/// Tightness required of input and output banks.
pub const OPT_TOL: f64 = 1e-9;
/// Paraunitary residual accepted by [`apply_column`].
pub const COLUMN_TOL: f64 = 1e-10;

const TAU: f64 = 2.0 * PI;

#[derive(Clone, Debug, PartialEq)]
pub struct LatticeColumn {
    /// Stage angles `θ₀, …, θ_N`.
    pub theta: Vec<f64>,
    /// Stage phases `φ₀, …, φ_N`; all zero for real columns.
    pub phi: Vec<f64>,
    /// Global phase.
    pub phase: f64,
    /// Negate `bn` after rotation. This is the determinant `−1` branch of
    /// the real completions, which [`realify`] does not reach otherwise.
    pub reflect: bool,
}

impl LatticeColumn {
    pub fn real(theta: Vec<f64>) -> Self {
        let n = theta.len();
        LatticeColumn {
            theta,
            phi: vec![0.0; n],
            phase: 0.0,
            reflect: false,
        }
    }

    pub fn complex(theta: Vec<f64>, phi: Vec<f64>, phase: f64) -> Self {
        assert_eq!(theta.len(), phi.len(), "one phase per stage");
        LatticeColumn {
            theta,
            phi,
            phase,
            reflect: false,
        }
    }

    /// The degree bound `N`.
    pub fn order(&self) -> usize {
        self.theta.len().saturating_sub(1)
    }

    pub fn is_real(&self) -> bool {
        self.phase == 0.0 && self.phi.iter().all(|&p| p == 0.0)
    }
}

/// The column `R_N·diag(1,z)·R_{N−1}···diag(1,z)·R₀·(1,0)ᵀ` with stages
/// `R(θ,φ) = [[cos θ, −sin θ·e^{−iφ}], [sin θ·e^{iφ}, cos θ]]`.
pub fn realize_column(lat: &LatticeColumn) -> (LaurentPoly, LaurentPoly) {
    let Some((&t0, rest)) = lat.theta.split_first() else {
        return (LaurentPoly::one(), LaurentPoly::zero());
    };
    let g = Complex64::from_polar(1.0, lat.phase);
    let mut u1 = LaurentPoly::constant(g * t0.cos());
    let mut u2 = LaurentPoly::constant(g * Complex64::from_polar(t0.sin(), lat.phi[0]));
    for (k, &t) in rest.iter().enumerate() {
        let e = Complex64::from_polar(1.0, lat.phi[k + 1]);
        let (c, s) = (t.cos(), t.sin());
        let z2 = u2.shift(1);
        let n1 = &u1.scale_real(c) - &z2.scale(e.conj() * s);
        let n2 = &u1.scale(e * s) + &z2.scale_real(c);
        u1 = n1;
        u2 = n2;
    }
    (u1, u2)
}

/// Coefficient residual of `u₁u₁* + u₂u₂* = 1`.
pub fn column_residual(u1: &LaurentPoly, u2: &LaurentPoly) -> f64 {
    (&(&(u1 * &u1.star()) + &(u2 * &u2.star())) - &LaurentPoly::one()).max_abs()
}

/// Rotates `{a; b₁, b₂}` by the column `(u₁, u₂)`. Returns `(bp, bn, m)`
/// with `m` bringing the support centers of `bp` and `bn` together.
pub fn apply_column(
    bank: &FilterBank,
    u1: &LaurentPoly,
    u2: &LaurentPoly,
) -> Result<(LaurentPoly, LaurentPoly, i64)> {
    let res = column_residual(u1, u2);
    if res > COLUMN_TOL {
        return Err(Error::ConstraintViolated(res));
    }
    let (b1, b2) = bank.pair()?;
    let bp = &(b1 * &u1.upsample_two()) + &(b2 * &u2.upsample_two());
    let bn0 = &(b2 * &u1.star().upsample_two()) - &(b1 * &u2.star().upsample_two());
    let bp = bp.trimmed(TRIM_TOL);
    let bn0 = bn0.trimmed(TRIM_TOL);
    let m = match (bp.center(), bn0.center()) {
        (Some(cp), Some(cn)) => {
            let t = (cp - cn) / 2.0;
            let (f, c) = (t.floor(), t.ceil());
            // ties go to the smaller shift
            if (t - f) <= (c - t) {
                f as i64
            } else {
                c as i64
            }
        }
        _ => 0,
    };
    Ok((bp, bn0.shift(2 * m), m))
}

/// `((bp + i·bn)/√2, (bp − i·bn)/√2)`.
pub fn realify(bp: &LaurentPoly, bn: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    let ibn = bn.scale(Complex64::new(0.0, FRAC_1_SQRT_2));
    let p = bp.scale_real(FRAC_1_SQRT_2);
    (&p + &ibn, &p - &ibn)
}

/// The separation integral `∫₀^π |b̂p(ξ+π)|² + |b̂n(ξ)|² dξ`, exact.
pub fn objective_db(bp: &LaurentPoly, bn: &LaurentPoly) -> f64 {
    d_b(bp, bn)
}

/// Rotates the bank by `lat` (including its reflection flag) and, in real
/// mode, mixes the result with [`realify`].
pub fn rotate(bank: &FilterBank, lat: &LatticeColumn, real_mode: bool) -> Result<FilterBank> {
    let (u1, u2) = realize_column(lat);
    let (bp, mut bn, _) = apply_column(bank, &u1, &u2)?;
    if lat.reflect {
        bn = -bn;
    }
    let (bp, bn) = if real_mode { realify(&bp, &bn) } else { (bp, bn) };
    Ok(FilterBank::new(bank.a.clone(), vec![bp, bn]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OptimizeOptions {
    /// Lattice degree `N`.
    pub order: usize,
    /// Real lattice followed by [`realify`]. `None` picks real mode for
    /// real banks.
    pub real_mode: Option<bool>,
    pub starts: usize,
    pub seed: u64,
}

impl Default for OptimizeOptions {
    fn default() -> Self {
        OptimizeOptions {
            order: 0,
            real_mode: None,
            starts: 64,
            seed: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OptimizeResult {
    pub bp: LaurentPoly,
    pub bn: LaurentPoly,
    pub lattice: LatticeColumn,
    pub d_b: f64,
    /// Index of the start that produced the result.
    pub start: usize,
    pub real_mode: bool,
}

impl OptimizeResult {
    pub fn bank(&self, a: &LaurentPoly) -> FilterBank {
        FilterBank::new(a.clone(), vec![self.bp.clone(), self.bn.clone()])
    }
}

fn lattice_from(x: &[f64], order: usize, real_mode: bool, reflect: bool) -> LatticeColumn {
    let mut lat = if real_mode {
        LatticeColumn::real(x.to_vec())
    } else {
        LatticeColumn::complex(x[..=order].to_vec(), x[order + 1..].to_vec(), 0.0)
    };
    lat.reflect = reflect;
    lat
}

/// Multi-start minimization of `d_B` over lattice columns of degree `N`.
///
/// Starts are drawn in sequence from one seeded stream, so a run with more
/// starts extends the run with fewer. In real mode each start is tried with
/// and without reflection.
pub fn optimize_bank(bank: &FilterBank, opts: &OptimizeOptions) -> Result<OptimizeResult> {
    let check = verify_tight(bank, OPT_TOL);
    if !check.ok {
        return Err(Error::NotTight(check.residual));
    }
    bank.pair()?;
    if opts.starts == 0 {
        return Err(Error::InvalidParameter("starts must be at least 1"));
    }
    let real_mode = opts.real_mode.unwrap_or(bank.field == Field::Real);
    if real_mode && bank.field != Field::Real {
        return Err(Error::InvalidParameter("real mode needs a real bank"));
    }
    let n = opts.order;
    let dim = if real_mode { n + 1 } else { 2 * n + 2 };
    let orientations: &[bool] = if real_mode { &[false, true] } else { &[false] };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut best: Option<(f64, usize, Vec<f64>, bool)> = None;
    for start in 0..opts.starts {
        let x0: Vec<f64> = (0..dim).map(|_| rng.random_range(0.0..TAU)).collect();
        for &reflect in orientations {
            let f = |x: &[f64]| -> f64 {
                rotate(bank, &lattice_from(x, n, real_mode, reflect), real_mode)
                    .and_then(|b| b.pair().map(|(p, q)| objective_db(p, q)))
                    .unwrap_or(f64::INFINITY)
            };
            let (x, v) = local_search(&f, x0.clone());
            if best.as_ref().map_or(true, |b| v < b.0) {
                best = Some((v, start, x, reflect));
            }
        }
    }
    let (_, start, x, reflect) = best.expect("at least one start");
    let lattice = lattice_from(&x, n, real_mode, reflect);
    let out = rotate(bank, &lattice, real_mode)?;
    let (bp, bn) = out.pair()?;
    let res = tightness_residual(&bank.a, &out.highpass);
    if res > OPT_TOL {
        return Err(Error::NotTight(res));
    }
    Ok(OptimizeResult {
        d_b: objective_db(bp, bn),
        bp: bp.clone(),
        bn: bn.clone(),
        lattice,
        start,
        real_mode,
    })
}

/// Coordinate sweeps with a coarse scan and golden-section refinement per
/// angle, followed by a Nelder–Mead polish.
fn local_search(f: &impl Fn(&[f64]) -> f64, mut x: Vec<f64>) -> (Vec<f64>, f64) {
    let mut fx = f(&x);
    for _ in 0..3 {
        let before = fx;
        for i in 0..x.len() {
            let (xi, v) = coordinate_min(f, &mut x, i, fx);
            x[i] = xi;
            fx = v;
        }
        if before - fx <= 1e-12 {
            break;
        }
    }
    nelder_mead(f, x, fx)
}

fn coordinate_min(f: &impl Fn(&[f64]) -> f64, x: &mut [f64], i: usize, fx: f64) -> (f64, f64) {
    const SCAN: usize = 16;
    let orig = x[i];
    let h = TAU / SCAN as f64;
    let mut eval = |t: f64| {
        x[i] = t;
        f(x)
    };
    let mut best = (orig, fx);
    for k in 1..SCAN {
        let t = orig + k as f64 * h;
        let v = eval(t);
        if v < best.1 {
            best = (t, v);
        }
    }
    // golden section on [t - h, t + h]
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (best.0 - h, best.0 + h);
    let mut c = hi - g * (hi - lo);
    let mut d = lo + g * (hi - lo);
    let mut fc = eval(c);
    let mut fd = eval(d);
    while hi - lo > 1e-10 {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - g * (hi - lo);
            fc = eval(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + g * (hi - lo);
            fd = eval(d);
        }
    }
    for (t, v) in [(c, fc), (d, fd)] {
        if v < best.1 {
            best = (t, v);
        }
    }
    x[i] = best.0;
    best
}

fn nelder_mead(f: &impl Fn(&[f64]) -> f64, x0: Vec<f64>, f0: f64) -> (Vec<f64>, f64) {
    let n = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = vec![(x0.clone(), f0)];
    for i in 0..n {
        let mut x = x0.clone();
        x[i] += 0.05;
        let v = f(&x);
        simplex.push((x, v));
    }
    let max_iter = 400 * (n + 1);
    for _ in 0..max_iter {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[n].1 - simplex[0].1;
        let size = simplex[1..]
            .iter()
            .flat_map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if spread <= 1e-15 && size <= 1e-9 {
            break;
        }
        let centroid: Vec<f64> = (0..n)
            .map(|j| simplex[..n].iter().map(|(x, _)| x[j]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[n].0)
                .map(|(c, w)| c + t * (w - c))
                .collect()
        };
        let xr = along(-1.0);
        let fr = f(&xr);
        if fr < simplex[0].1 {
            let xe = along(-2.0);
            let fe = f(&xe);
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
        } else {
            let (xc, fc) = if fr < simplex[n].1 {
                let xc = along(-0.5);
                let fc = f(&xc);
                (xc, fc)
            } else {
                let xc = along(0.5);
                let fc = f(&xc);
                (xc, fc)
            };
            if fc < simplex[n].1.min(fr) {
                simplex[n] = (xc, fc);
            } else {
                let best = simplex[0].0.clone();
                for (x, v) in simplex.iter_mut().skip(1) {
                    for (xj, bj) in x.iter_mut().zip(&best) {
                        *xj = bj + 0.5 * (*xj - bj);
                    }
                    *v = f(x);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex.swap_remove(0)
}
