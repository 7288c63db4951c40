//! Shortest-support tight completions `{a; b₁, b₂}` of a low-pass filter.
//!
//! With `𝖠 = 1 − 𝖺𝖺*`, `𝖡 = −𝖺(z)𝖺*(−z)` and `𝖣(z²) = 1 − 𝖺𝖺* − 𝖺(−z)𝖺*(−z)`,
//! a spectral factor `𝖽` of `𝖣` fixes `b₂` from `b₁` through
//! `𝖡(−z)𝖻₁(z) − 𝖠(z)𝖻₁(−z) = 𝖽(z²)z𝖻₂*(z) + 𝓡(z)`. Requiring `𝓡 = 0` and
//! the support of `b₂` gives a homogeneous linear system for the
//! coefficients of `b₁`.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::analysis::{condition_excess, tightness_residual, FilterBank};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::spectral::{spectral_factorize, FACTOR_TOL};

/// Relative singular-value threshold for the nullspace.
pub const NULLSPACE_TOL: f64 = 1e-10;
/// Tightness required of every returned bank.
pub const BANK_TOL: f64 = 1e-9;
/// Unit-circle samples used to check `|â(ξ)|² + |â(ξ+π)|² ≤ 1`.
pub const CONDITION_GRID: usize = 4096;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ConstructParams {
    pub eps: u8,
    pub s1: u8,
    pub s2: u8,
    pub factor_index: usize,
    pub solution_index: usize,
}

/// Divides `l` by `divisor` so that the remainder lives in `window`.
///
/// The window must hold exactly `divisor.length()` coefficients; quotient
/// and remainder are then unique.
pub fn divide_with_window(
    l: &LaurentPoly,
    divisor: &LaurentPoly,
    window: (i64, i64),
) -> Result<(LaurentPoly, LaurentPoly)> {
    let Some((qlo, qhi)) = divisor.support() else {
        return Err(Error::ZeroDivisor);
    };
    let (w0, w1) = window;
    if w1 - w0 + 1 != qhi - qlo {
        return Err(Error::InvalidParameter("remainder window must match the divisor length"));
    }
    let Some((llo, lhi)) = l.support() else {
        return Ok((LaurentPoly::zero(), LaurentPoly::zero()));
    };
    let lo = llo.min(w0);
    let hi = lhi.max(w1);
    let mut r: Vec<Complex64> = (lo..=hi).map(|k| l.coeff(k)).collect();
    let qlen = (qhi - qlo + 1) as usize;
    let dq = divisor.coeffs();
    let (top, bottom) = (dq[qlen - 1], dq[0]);
    // quotient exponents span [lo - qlo, hi - qhi]
    let q_lo = w0 - 1 - qlo;
    let q_hi = hi - qhi;
    let q_base = q_lo.min(lo - qlo);
    let mut q = vec![Complex64::zero(); (q_hi.max(q_base) - q_base + 1) as usize];

    let mut k = hi;
    while k > w1 {
        let v = r[(k - lo) as usize];
        if !v.is_zero() {
            let f = v / top;
            let e = k - qhi;
            q[(e - q_base) as usize] += f;
            for (i, &c) in dq.iter().enumerate() {
                r[(e + qlo + i as i64 - lo) as usize] -= f * c;
            }
            r[(k - lo) as usize] = Complex64::zero();
        }
        k -= 1;
    }
    let mut k = lo;
    while k < w0 {
        let v = r[(k - lo) as usize];
        if !v.is_zero() {
            let f = v / bottom;
            let e = k - qlo;
            q[(e - q_base) as usize] += f;
            for (i, &c) in dq.iter().enumerate() {
                r[(e + qlo + i as i64 - lo) as usize] -= f * c;
            }
            r[(k - lo) as usize] = Complex64::zero();
        }
        k += 1;
    }
    Ok((LaurentPoly::new(q_base, q), LaurentPoly::new(lo, r)))
}

/// The Laurent polynomials `𝖠`, `𝖡`, `𝖣(w)` and `n₀` of a low-pass filter.
#[derive(Clone, Debug)]
pub struct Setup {
    pub big_a: LaurentPoly,
    pub big_b: LaurentPoly,
    /// `𝖣` as a polynomial in `w = z²`.
    pub big_d: LaurentPoly,
    pub n0: i64,
}

pub fn setup(a: &LaurentPoly) -> Result<Setup> {
    if a.is_zero() {
        return Err(Error::PreconditionFailed("low-pass filter is zero"));
    }
    let (excess, _) = condition_excess(a, CONDITION_GRID);
    if excess > 1e-10 {
        return Err(Error::PreconditionFailed("|a(z)|^2 + |a(-z)|^2 exceeds 1"));
    }
    let aa = a * &a.star();
    let big_a = &LaurentPoly::one() - &aa;
    let big_b = -(a * &a.alternate().star());
    let dz = &big_a - &aa.alternate();
    let (even, odd) = dz.polyphase_split();
    debug_assert!(odd.max_abs() <= 1e-12);
    let n0 = -big_a.trimmed(1e-14).lo();
    Ok(Setup {
        big_a,
        big_b,
        big_d: even,
        n0,
    })
}

/// Admissible range `[lo, hi]` for the support of the factor `𝖽`.
pub fn factor_window(n0: i64, p: &ConstructParams) -> (i64, i64) {
    let t = p.s1 as i64 + p.s2 as i64 - 1;
    (-(-t).div_euclid(2), t.div_euclid(2) + n0 + p.eps as i64)
}

fn orthogonal_bank(a: &LaurentPoly) -> FilterBank {
    let b = a.alternate().star().shift(1);
    FilterBank::new(a.clone(), vec![b, LaurentPoly::zero()])
}

/// Orthonormal nullspace basis, ordered by ascending singular value, each
/// vector with its largest entry real positive.
fn nullspace(rows: &[Vec<Complex64>], cols: usize) -> Vec<Vec<Complex64>> {
    let nrows = rows.len().max(cols);
    let real = rows.iter().flatten().all(|c| c.im.abs() <= 1e-14 * c.re.abs().max(1.0));
    let mut pairs: Vec<(f64, Vec<Complex64>)> = if real {
        let m = DMatrix::<f64>::from_fn(nrows, cols, |i, j| rows.get(i).map_or(0.0, |r| r[j].re));
        let svd = m.svd(false, true);
        let vt = svd.v_t.expect("requested");
        (0..cols)
            .map(|i| {
                (
                    svd.singular_values[i],
                    (0..cols).map(|j| Complex64::new(vt[(i, j)], 0.0)).collect(),
                )
            })
            .collect()
    } else {
        let m = DMatrix::<Complex64>::from_fn(nrows, cols, |i, j| {
            rows.get(i).map_or(Complex64::zero(), |r| r[j])
        });
        let svd = m.svd(false, true);
        let vt = svd.v_t.expect("requested");
        (0..cols)
            .map(|i| {
                (
                    svd.singular_values[i],
                    (0..cols).map(|j| vt[(i, j)].conj()).collect(),
                )
            })
            .collect()
    };
    let smax = pairs.iter().map(|p| p.0).fold(0.0, f64::max);
    pairs.retain(|p| p.0 <= NULLSPACE_TOL * smax || smax == 0.0);
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0).then_with(|| lex(&x.1, &y.1)));
    pairs
        .into_iter()
        .map(|(_, mut v)| {
            let big = v
                .iter()
                .copied()
                .max_by(|x, y| x.norm().total_cmp(&y.norm()))
                .unwrap_or(Complex64::zero());
            if big.norm() > 0.0 {
                let ph = big.conj() / big.norm();
                for x in v.iter_mut() {
                    *x *= ph;
                }
            }
            v
        })
        .collect()
}

fn lex(x: &[Complex64], y: &[Complex64]) -> core::cmp::Ordering {
    for (a, b) in x.iter().zip(y) {
        let o = a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im));
        if o.is_ne() {
            return o;
        }
    }
    core::cmp::Ordering::Equal
}

/// Outcome of solving for one null vector.
enum Candidate {
    Bank(FilterBank),
    BadLambda(Complex64),
    Rejected,
}

/// All banks obtainable for fixed `(ε, s₁, s₂, factor)`, in the order
/// (factor shift, nullspace vector).
fn solve_factor(a: &LaurentPoly, s: &Setup, p: &ConstructParams, d: &LaurentPoly) -> (Vec<FilterBank>, Option<Complex64>, bool) {
    let (lo_w, hi_w) = factor_window(s.n0, p);
    let ld = d.length();
    let nt = (s.n0 + p.eps as i64 + 1) as usize;
    let s1 = p.s1 as i64;
    let s2 = p.s2 as i64;
    let eps = p.eps as i64;
    let n0 = s.n0;
    let alt_b = s.big_b.alternate();
    let mut out = Vec::new();
    let mut bad = None;
    let mut any_null = false;
    for md in lo_w..=hi_w - ld {
        let dd = d.shift(md - d.lo());
        let nd = md + ld;
        let dd2 = dd.upsample_two();
        let q = dd2.shift(1);
        let mut quots = Vec::with_capacity(nt);
        let mut rems = Vec::with_capacity(nt);
        for j in 0..nt {
            let b1 = LaurentPoly::monomial(Complex64::new(1.0, 0.0), s1 + j as i64);
            let l = &(&alt_b * &b1) - &(&s.big_a * &b1.alternate());
            let Ok((qj, rj)) = divide_with_window(&l, &q, (2 * md, 2 * nd - 1)) else {
                continue;
            };
            quots.push(qj);
            rems.push(rj);
        }
        if quots.len() != nt {
            continue;
        }
        let mut rows: Vec<Vec<Complex64>> = Vec::new();
        for k in 2 * md..2 * nd {
            rows.push(rems.iter().map(|r| r.coeff(k)).collect());
        }
        let ranges = [
            (s1 - n0 - 2 * md - 1, s2 - 1),
            (s2 + n0 + eps + 1, s1 + 2 * n0 - 2 * nd + eps - 1),
        ];
        for (r0, r1) in ranges {
            for k in r0..=r1 {
                rows.push(quots.iter().map(|q| q.coeff(k)).collect());
            }
        }
        for t in nullspace(&rows, nt) {
            any_null = true;
            match finish(a, s1, &t, &quots, &dd2, nd, p) {
                Candidate::Bank(b) => out.push(b),
                Candidate::BadLambda(l) => bad = Some(l),
                Candidate::Rejected => {}
            }
        }
    }
    (out, bad, any_null)
}

fn finish(
    a: &LaurentPoly,
    s1: i64,
    t: &[Complex64],
    quots: &[LaurentPoly],
    dd2: &LaurentPoly,
    nd: i64,
    p: &ConstructParams,
) -> Candidate {
    let b1 = LaurentPoly::new(s1, t.to_vec());
    let b1 = b1.trimmed(1e-14 * b1.max_abs());
    let mut b2s = LaurentPoly::zero();
    for (tj, qj) in t.iter().zip(quots) {
        b2s = &b2s + &qj.scale(*tj);
    }
    let b2 = b2s.trimmed(1e-13 * b2s.max_abs().max(1e-300)).star();
    let det = (&(&b1 * &b2.alternate()) - &(&b1.alternate() * &b2)).shift(-1);
    let lead = dd2.coeff(2 * nd);
    if lead.is_zero() {
        return Candidate::Rejected;
    }
    let lambda = det.coeff(2 * nd) / lead;
    let mismatch = (&det - &dd2.scale(lambda)).max_abs();
    if mismatch > 1e-9 * det.max_abs().max(1.0) {
        return Candidate::BadLambda(lambda);
    }
    if lambda.im.abs() > 1e-9 * lambda.norm().max(1.0) || lambda.re <= 0.0 {
        return Candidate::BadLambda(lambda);
    }
    let s = 1.0 / lambda.re.sqrt();
    let mut b1 = b1.scale_real(s);
    let mut b2 = b2.scale_real(s);
    if let (Some(c1), Some(c2)) = (b1.center(), b2.center()) {
        // an even shift of b1 keeps the bank tight
        let k = ((c2 - c1) / 2.0).round() as i64;
        b1 = b1.shift(2 * k);
    }
    if a.is_real() {
        b1 = b1.snap_real(1e-12);
        b2 = b2.snap_real(1e-12);
    }
    let res = tightness_residual(a, &[b1.clone(), b2.clone()]);
    let bound = a.length() + p.eps as i64;
    if res > BANK_TOL || b1.length() > bound || b2.length() > bound {
        return Candidate::Rejected;
    }
    Candidate::Bank(FilterBank::new(a.clone(), vec![b1, b2]))
}

/// One shortest-support tight completion of `a`, selected by `params`.
pub fn derive_shortest_bank(a: &LaurentPoly, params: &ConstructParams) -> Result<FilterBank> {
    if params.eps > 1 || params.s1 > 1 || params.s2 > 1 {
        return Err(Error::InvalidParameter("eps, s1 and s2 must be 0 or 1"));
    }
    let s = setup(a)?;
    if s.big_d.trimmed(1e-12).is_zero() {
        return Ok(orthogonal_bank(a));
    }
    let window = factor_window(s.n0, params);
    let f = spectral_factorize(&s.big_d, window, true, FACTOR_TOL)?;
    let d = f
        .factors
        .get(params.factor_index)
        .ok_or(Error::InvalidParameter("factor_index out of range"))?;
    let (banks, bad, any_null) = solve_factor(a, &s, params, d);
    if let Some(b) = banks.into_iter().nth(params.solution_index) {
        return Ok(b);
    }
    match (any_null, bad) {
        (false, _) => Err(Error::EmptyNullspace),
        (true, Some(l)) => Err(Error::BadLambda { re: l.re, im: l.im }),
        (true, None) => Err(Error::EmptyNullspace),
    }
}

/// Every bank reachable by the sweep, in sweep order: `(ε, s₁, s₂)`
/// lexicographic, then factor candidates, then solutions.
pub fn derive_all(a: &LaurentPoly) -> Result<Vec<(ConstructParams, FilterBank)>> {
    let s = setup(a)?;
    if s.big_d.trimmed(1e-12).is_zero() {
        return Ok(vec![(ConstructParams::default(), orthogonal_bank(a))]);
    }
    let mut out = Vec::new();
    for (eps, s1, s2) in sweep_order() {
        let mut p = ConstructParams {
            eps,
            s1,
            s2,
            ..Default::default()
        };
        let Ok(f) = spectral_factorize(&s.big_d, factor_window(s.n0, &p), true, FACTOR_TOL) else {
            continue;
        };
        for (fi, d) in f.factors.iter().enumerate() {
            p.factor_index = fi;
            for (si, b) in solve_factor(a, &s, &p, d).0.into_iter().enumerate() {
                p.solution_index = si;
                out.push((p, b));
            }
        }
    }
    Ok(out)
}

/// The first bank of the default sweep.
pub fn derive_default(a: &LaurentPoly) -> Result<(ConstructParams, FilterBank)> {
    let s = setup(a)?;
    if s.big_d.trimmed(1e-12).is_zero() {
        return Ok((ConstructParams::default(), orthogonal_bank(a)));
    }
    for (eps, s1, s2) in sweep_order() {
        let p = ConstructParams {
            eps,
            s1,
            s2,
            ..Default::default()
        };
        let Ok(f) = spectral_factorize(&s.big_d, factor_window(s.n0, &p), true, FACTOR_TOL) else {
            continue;
        };
        for (fi, d) in f.factors.iter().enumerate() {
            if let Some(b) = solve_factor(a, &s, &p, d).0.into_iter().next() {
                return Ok((
                    ConstructParams {
                        factor_index: fi,
                        ..p
                    },
                    b,
                ));
            }
        }
    }
    Err(Error::EmptyNullspace)
}

fn sweep_order() -> impl Iterator<Item = (u8, u8, u8)> {
    (0..8u8).map(|i| (i >> 2, (i >> 1) & 1, i & 1))
}
