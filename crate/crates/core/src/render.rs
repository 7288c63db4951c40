//! Cascade evaluation of refinable functions and wavelets on dyadic grids,
//! and the real-valued 2D tensor generators built from them.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::SQRT_2;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

pub const DEFAULT_LEVEL: u32 = 8;
pub const DEFAULT_ITERS: usize = 24;
/// Sup-difference at which the cascade stops early.
pub const CASCADE_TOL: f64 = 1e-8;

/// Samples at the points `(start + j)·2^{-level}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CascadeGrid {
    pub level: u32,
    pub start: i64,
    pub values: Vec<Complex64>,
}

impl CascadeGrid {
    pub fn step(&self) -> f64 {
        (-(self.level as f64)).exp2()
    }

    /// Left endpoint.
    pub fn origin(&self) -> f64 {
        self.start as f64 * self.step()
    }

    pub fn x(&self, j: usize) -> f64 {
        (self.start + j as i64) as f64 * self.step()
    }

    /// Sample at grid index `i` (absolute), zero outside the stored range.
    pub fn at(&self, i: i64) -> Complex64 {
        let j = i - self.start;
        if j < 0 || j >= self.values.len() as i64 {
            Complex64::zero()
        } else {
            self.values[j as usize]
        }
    }

    /// One past the last absolute index.
    pub fn end(&self) -> i64 {
        self.start + self.values.len() as i64
    }

    /// Samples over `[start, end)` with zero extension.
    pub fn resample(&self, start: i64, end: i64) -> Vec<Complex64> {
        (start..end).map(|i| self.at(i)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CascadeStatus {
    /// Sup-difference fell below [`CASCADE_TOL`].
    Converged,
    /// The iteration budget ran out while the difference was still shrinking.
    IterationLimit,
    /// The sup-difference did not decrease over the last three iterations.
    NonConvergent,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cascade {
    pub grid: CascadeGrid,
    pub iterations: usize,
    /// Sup-difference of the last two iterates.
    pub sup_diff: f64,
    pub status: CascadeStatus,
}

/// Iterates `φ ↦ 2Σ_k a(k)φ(2· − k)` on the level-`K` grid, starting from
/// the hat function (the piecewise-linear interpolant of the delta).
pub fn cascade_phi(a: &LaurentPoly, level: u32, iters: usize) -> Result<Cascade> {
    let a0 = a.eval_unit(0.0);
    if (a0 - Complex64::new(1.0, 0.0)).norm() > 1e-10 {
        return Err(Error::BadLowpass(a0.re));
    }
    if level == 0 || level > 20 {
        return Err(Error::InvalidParameter("level must be in 1..=20"));
    }
    let (lo, hi) = a.support().expect("nonzero low-pass");
    let scale = 1i64 << level;
    let start = lo.min(-1) * scale;
    let end = hi.max(1) * scale + 1;
    let mut cur: Vec<Complex64> = (start..end)
        .map(|i| Complex64::new((1.0 - (i as f64 / scale as f64).abs()).max(0.0), 0.0))
        .collect();
    let mut diffs: Vec<f64> = Vec::new();
    let mut status = CascadeStatus::IterationLimit;
    let mut done = 0;
    for _ in 0..iters {
        let next: Vec<Complex64> = (start..end)
            .map(|i| {
                let mut acc = Complex64::zero();
                for (k, c) in a.terms() {
                    let idx = 2 * i - k * scale - start;
                    if idx >= 0 && (idx as usize) < cur.len() {
                        acc += c * cur[idx as usize];
                    }
                }
                acc * 2.0
            })
            .collect();
        let d = next
            .iter()
            .zip(&cur)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max);
        cur = next;
        diffs.push(d);
        done += 1;
        if d < CASCADE_TOL {
            status = CascadeStatus::Converged;
            break;
        }
    }
    if status != CascadeStatus::Converged && diffs.len() >= 4 {
        let t = &diffs[diffs.len() - 4..];
        if t[1] >= t[0] && t[2] >= t[1] && t[3] >= t[2] {
            status = CascadeStatus::NonConvergent;
        }
    }
    Ok(Cascade {
        grid: CascadeGrid {
            level,
            start,
            values: cur,
        },
        iterations: done,
        sup_diff: diffs.last().copied().unwrap_or(f64::INFINITY),
        status,
    })
}

/// `ψ(x) = 2Σ_k b(k)φ(2x − k)` on the grid of `phi`.
pub fn wavelet_from_phi(phi: &CascadeGrid, b: &LaurentPoly) -> CascadeGrid {
    let Some((blo, bhi)) = b.support() else {
        return CascadeGrid {
            level: phi.level,
            start: 0,
            values: Vec::new(),
        };
    };
    let scale = 1i64 << phi.level;
    let start = (phi.start + blo * scale).div_euclid(2);
    let end = (phi.end() - 1 + bhi * scale).div_euclid(2) + 1;
    let values = (start..end)
        .map(|i| {
            let mut acc = Complex64::zero();
            for (k, c) in b.terms() {
                acc += c * phi.at(2 * i - k * scale);
            }
            acc * 2.0
        })
        .collect();
    CascadeGrid {
        level: phi.level,
        start,
        values,
    }
}

/// Real samples on a square dyadic grid; `values[row * cols + col]` holds
/// the sample at `x = (start + col)·2^{-level}`, `y = (start + row)·2^{-level}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid2D {
    pub rows: usize,
    pub cols: usize,
    pub values: Vec<f64>,
    pub label: String,
    pub level: u32,
    pub start: i64,
}

impl Grid2D {
    /// `Σ |v|²·4^{-level}`, the discrete L₂ energy.
    pub fn energy(&self) -> f64 {
        let h2 = (-2.0 * self.level as f64).exp2();
        self.values.iter().map(|v| v * v).sum::<f64>() * h2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Horizontal,
    Vertical,
    Diagonal45,
    DiagonalMinus45,
}

/// The scaling function `φ⊗φ` and the eight directional generators.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorFramelet {
    pub scaling: Grid2D,
    pub generators: Vec<(Direction, Grid2D)>,
    /// Largest imaginary part discarded when the generators come from
    /// complex products.
    pub imag_residual: f64,
}

pub const GENERATOR_LABELS: [&str; 8] = [
    "phi_r", "phi_i", "r_phi", "i_phi", "rr_minus_ii", "rr_plus_ii", "ri_minus_ir", "ri_plus_ir",
];

const DIRECTIONS: [Direction; 8] = [
    Direction::Horizontal,
    Direction::Horizontal,
    Direction::Vertical,
    Direction::Vertical,
    Direction::Diagonal45,
    Direction::Diagonal45,
    Direction::DiagonalMinus45,
    Direction::DiagonalMinus45,
];

fn outer<T: Copy, U>(f: &[T], g: &[T], mul: impl Fn(T, T) -> U) -> Vec<U> {
    // rows follow the second factor (y), columns the first (x)
    let mut out = Vec::with_capacity(f.len() * g.len());
    for &gy in g {
        for &fx in f {
            out.push(mul(fx, gy));
        }
    }
    out
}

fn union(grids: &[&CascadeGrid]) -> Result<(u32, i64, i64)> {
    let level = grids[0].level;
    for g in grids {
        if g.level != level {
            return Err(Error::LevelMismatch(level, g.level));
        }
    }
    let start = grids.iter().map(|g| g.start).min().unwrap();
    let end = grids.iter().map(|g| g.end()).max().unwrap();
    Ok((level, start, end))
}

fn grid2d(label: &str, level: u32, start: i64, n: usize, values: Vec<f64>) -> Grid2D {
    Grid2D {
        rows: n,
        cols: n,
        values,
        label: String::from(label),
        level,
        start,
    }
}

/// The real generators from `φ` and the real and imaginary parts `r`, `i`
/// of `ψp`, scaled by `√2`: `φ⊗r, φ⊗i, r⊗φ, i⊗φ, rr − ii, rr + ii,
/// ri − ir, ri + ir`, plus `φ⊗φ`.
pub fn tensor_generators(phi: &CascadeGrid, psi_p: &CascadeGrid) -> Result<TensorFramelet> {
    let (level, start, end) = union(&[phi, psi_p])?;
    let n = (end - start) as usize;
    let p: Vec<f64> = phi.resample(start, end).iter().map(|c| c.re).collect();
    let psi = psi_p.resample(start, end);
    let r: Vec<f64> = psi.iter().map(|c| c.re).collect();
    let i: Vec<f64> = psi.iter().map(|c| c.im).collect();
    let prod = |f: &[f64], g: &[f64]| outer(f, g, |x, y| x * y);
    let comb = |u: Vec<f64>, v: Vec<f64>, s: f64| -> Vec<f64> {
        u.iter().zip(&v).map(|(a, b)| SQRT_2 * (a + s * b)).collect()
    };
    let scaled = |u: Vec<f64>| -> Vec<f64> { u.into_iter().map(|v| SQRT_2 * v).collect() };
    let values = [
        scaled(prod(&p, &r)),
        scaled(prod(&p, &i)),
        scaled(prod(&r, &p)),
        scaled(prod(&i, &p)),
        comb(prod(&r, &r), prod(&i, &i), -1.0),
        comb(prod(&r, &r), prod(&i, &i), 1.0),
        comb(prod(&r, &i), prod(&i, &r), -1.0),
        comb(prod(&r, &i), prod(&i, &r), 1.0),
    ];
    let generators = values
        .into_iter()
        .enumerate()
        .map(|(k, v)| (DIRECTIONS[k], grid2d(GENERATOR_LABELS[k], level, start, n, v)))
        .collect();
    Ok(TensorFramelet {
        scaling: grid2d("phi_phi", level, start, n, prod(&p, &p)),
        generators,
        imag_residual: 0.0,
    })
}

/// The same generators assembled from complex tensor products of `φ`,
/// `ψp` and `ψn`. When `ψn = conj(ψp)` the combinations are real and
/// `imag_residual` measures how far the inputs are from that relation.
pub fn tensor_generators_from_pair(
    phi: &CascadeGrid,
    psi_p: &CascadeGrid,
    psi_n: &CascadeGrid,
) -> Result<TensorFramelet> {
    let (level, start, end) = union(&[phi, psi_p, psi_n])?;
    let n = (end - start) as usize;
    let f = phi.resample(start, end);
    let p = psi_p.resample(start, end);
    let q = psi_n.resample(start, end);
    let prod = |u: &[Complex64], v: &[Complex64]| outer(u, v, |x, y| x * y);
    let half = Complex64::new(0.5, 0.0);
    let half_i = Complex64::new(0.0, 0.5);
    let mix = |u: Vec<Complex64>, v: Vec<Complex64>, cu: Complex64, cv: Complex64| -> Vec<Complex64> {
        u.iter().zip(&v).map(|(a, b)| (a * cu + b * cv) * SQRT_2).collect()
    };
    let pp = prod(&p, &p);
    let qq = prod(&q, &q);
    let pq = prod(&p, &q);
    let qp = prod(&q, &p);
    let complex = [
        mix(prod(&f, &p), prod(&f, &q), half, half),
        mix(prod(&f, &p), prod(&f, &q), -half_i, half_i),
        mix(prod(&p, &f), prod(&q, &f), half, half),
        mix(prod(&p, &f), prod(&q, &f), -half_i, half_i),
        mix(pp.clone(), qq.clone(), half, half),
        mix(pq.clone(), qp.clone(), half, half),
        mix(pq, qp, half_i, -half_i),
        mix(pp, qq, -half_i, half_i),
    ];
    let mut imag_residual: f64 = 0.0;
    let generators = complex
        .into_iter()
        .enumerate()
        .map(|(k, v)| {
            let re = v
                .iter()
                .map(|c| {
                    imag_residual = imag_residual.max(c.im.abs());
                    c.re
                })
                .collect();
            (DIRECTIONS[k], grid2d(GENERATOR_LABELS[k], level, start, n, re))
        })
        .collect();
    let ff = prod(&f, &f);
    for c in &ff {
        imag_residual = imag_residual.max(c.im.abs());
    }
    Ok(TensorFramelet {
        scaling: grid2d("phi_phi", level, start, n, ff.iter().map(|c| c.re).collect()),
        generators,
        imag_residual,
    })
}
