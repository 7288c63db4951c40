//! Polynomial roots and Fejér–Riesz factorization.
//!
//! [`spectral_factorize`] works in the variable `w` of `D(w)`. Callers that
//! start from a polynomial in `z²` take its even polyphase part first.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Distance from the unit circle below which a root counts as a circle root.
pub const ROOT_CLUSTER_TOL: f64 = 1e-6;
/// Default reconstruction tolerance for factor candidates.
pub const FACTOR_TOL: f64 = 1e-8;
/// Number of unit-circle samples in the nonnegativity check.
pub const NONNEG_GRID: usize = 4096;
/// Largest number of off-circle root pairs enumerated exhaustively.
const MAX_ENUM_PAIRS: usize = 14;

#[derive(Clone, Debug)]
pub struct Roots {
    pub roots: Vec<Complex64>,
    /// Largest `|p(r)|` over the returned roots, for the monic polynomial.
    pub residual: f64,
}

/// Roots with multiplicity of the ordinary polynomial `z^{-lo} p(z)`.
///
/// Eigenvalues of the companion matrix via complex Schur decomposition,
/// each followed by guarded Newton polishing.
pub fn poly_roots(p: &LaurentPoly) -> Result<Roots> {
    if p.is_zero() {
        return Err(Error::DegenerateInput("zero polynomial has no finite root set"));
    }
    let c = p.coeffs();
    let n = c.len() - 1;
    if n == 0 {
        return Ok(Roots {
            roots: Vec::new(),
            residual: 0.0,
        });
    }
    let lead = c[n];
    let monic: Vec<Complex64> = c.iter().map(|&x| x / lead).collect();
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for j in 0..n {
        m[(0, j)] = -monic[n - 1 - j];
    }
    for i in 1..n {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    let (_, t) = m
        .try_schur(1e-15, 10_000)
        .ok_or(Error::DegenerateInput("Schur iteration did not converge"))?
        .unpack();
    let mut roots: Vec<Complex64> = (0..n).map(|i| t[(i, i)]).collect();
    for r in roots.iter_mut() {
        *r = polish(&monic, *r);
    }
    let residual = roots
        .iter()
        .map(|&r| horner(&monic, r).0.norm())
        .fold(0.0, f64::max);
    Ok(Roots { roots, residual })
}

/// Value and derivative of `Σ c[k] z^k`.
fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::zero();
    let mut d = Complex64::zero();
    for &x in c.iter().rev() {
        d = d * z + v;
        v = v * z + x;
    }
    (v, d)
}

fn polish(c: &[Complex64], mut r: Complex64) -> Complex64 {
    let mut best = horner(c, r).0.norm();
    for _ in 0..4 {
        let (v, d) = horner(c, r);
        if d.norm() == 0.0 || best == 0.0 {
            break;
        }
        let cand = r - v / d;
        let val = horner(c, cand).0.norm();
        if val < best {
            best = val;
            r = cand;
        } else {
            break;
        }
    }
    r
}

#[derive(Clone, Debug)]
pub struct FactorizationResult {
    /// Candidates `d` with `d·star(d) = D`, each supported from the window's
    /// left end. The first candidate has every off-circle root inside the
    /// unit disc.
    pub factors: Vec<LaurentPoly>,
    /// Reconstruction error of each candidate.
    pub residuals: Vec<f64>,
    /// Largest entry of `residuals` (0 when there are no factors).
    pub residual: f64,
}

/// Factors a Laurent polynomial `D(w) ≥ 0` on the unit circle as `d·star(d)`.
///
/// `window` bounds the support of the returned factors; each factor starts
/// at `window.0`. With `enumerate_all`, every root-subset choice distinct up
/// to a unimodular constant is returned, conjugate-closed choices first when
/// `D` has real coefficients. Otherwise only the first of these.
pub fn spectral_factorize(
    d_poly: &LaurentPoly,
    window: (i64, i64),
    enumerate_all: bool,
    tol: f64,
) -> Result<FactorizationResult> {
    let big = d_poly.max_abs().max(1.0);
    let herm = (d_poly - &d_poly.star()).max_abs();
    if herm > tol * big {
        return Err(Error::DegenerateInput("polynomial is not Hermitian"));
    }
    let min = (0..NONNEG_GRID)
        .map(|i| d_poly.eval_unit(2.0 * PI * i as f64 / NONNEG_GRID as f64).re)
        .fold(f64::INFINITY, f64::min);
    if min < -tol {
        return Err(Error::NotNonnegative { min });
    }
    let d_poly = d_poly.trimmed(1e-12);
    if d_poly.is_zero() {
        return Ok(FactorizationResult {
            factors: Vec::new(),
            residuals: Vec::new(),
            residual: 0.0,
        });
    }
    let n = d_poly.hi();
    if window.1 - window.0 < n {
        return Err(Error::NoFactorInWindow {
            lo: window.0,
            hi: window.1,
        });
    }
    let is_real = d_poly.max_imag() <= 1e-14 * big;
    let roots = poly_roots(&d_poly)?.roots;
    let (circle, inside) = split_roots(&roots);
    let conj = if is_real {
        conjugate_matching(&inside)
    } else {
        (0..inside.len()).collect()
    };

    let masks = candidate_masks(inside.len(), &conj, enumerate_all, is_real);
    let top = d_poly.coeff(n);
    let mut factors: Vec<LaurentPoly> = Vec::new();
    let mut residuals = Vec::new();
    for mask in masks {
        let closed = (0..inside.len()).all(|i| ((mask >> i) & 1) == ((mask >> conj[i]) & 1));
        let chosen = circle.iter().copied().chain(
            inside
                .iter()
                .enumerate()
                .map(|(i, &r)| if (mask >> i) & 1 == 1 { (r.conj()).inv() } else { r }),
        );
        let mut f = LaurentPoly::one();
        for r in chosen {
            f = &f * &LaurentPoly::new(0, vec![-r, Complex64::new(1.0, 0.0)]);
        }
        let p0 = f.coeff(0);
        let s2 = (top / p0.conj()).re;
        if s2.is_nan() || s2 <= 0.0 {
            continue;
        }
        let phase = Complex64::from_polar(1.0, -p0.arg());
        let mut f = f.scale(phase * s2.sqrt());
        if is_real && closed {
            f = f.real_part();
        }
        let residual = (&(&f * &f.star()) - &d_poly).max_abs();
        if residual > tol * big {
            continue;
        }
        let f = f.shift(window.0);
        let duplicate = factors
            .iter()
            .any(|g| (g - &f).max_abs() <= 1e-6 * f.max_abs());
        if !duplicate {
            factors.push(f);
            residuals.push(residual);
        }
    }
    if factors.is_empty() {
        return Err(Error::DegenerateInput(
            "no root split reconstructs the polynomial within tolerance",
        ));
    }
    let residual = residuals.iter().copied().fold(0.0, f64::max);
    Ok(FactorizationResult {
        factors,
        residuals,
        residual,
    })
}

/// Splits roots into one representative per unit-circle pair and the roots
/// strictly inside the disc (whose reflections `1/r̄` lie outside).
fn split_roots(roots: &[Complex64]) -> (Vec<Complex64>, Vec<Complex64>) {
    let mut tol = ROOT_CLUSTER_TOL;
    loop {
        let on: Vec<Complex64> = roots
            .iter()
            .copied()
            .filter(|r| (r.norm() - 1.0).abs() <= tol)
            .collect();
        let inside: Vec<Complex64> = roots
            .iter()
            .copied()
            .filter(|r| r.norm() < 1.0 - tol)
            .collect();
        // Circle roots come with even multiplicity; an odd count means a
        // cluster straddles the tolerance.
        if (on.len() % 2 == 0 && 2 * inside.len() + on.len() == roots.len()) || tol > 1e-2 {
            return (pair_circle_roots(on), inside);
        }
        tol *= 10.0;
    }
}

fn pair_circle_roots(mut on: Vec<Complex64>) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(on.len() / 2);
    while let Some(r) = on.pop() {
        let Some((j, _)) = on
            .iter()
            .enumerate()
            .map(|(j, s)| (j, (s - r).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1))
        else {
            out.push(r / r.norm());
            break;
        };
        let s = on.swap_remove(j);
        let m = (r + s) / 2.0;
        out.push(m / m.norm());
    }
    out
}

/// For real polynomials, pairs each inside root with its conjugate.
fn conjugate_matching(inside: &[Complex64]) -> Vec<usize> {
    let mut conj: Vec<Option<usize>> = vec![None; inside.len()];
    for i in 0..inside.len() {
        if conj[i].is_some() {
            continue;
        }
        let r = inside[i];
        if r.im.abs() <= 1e-7 * r.norm().max(1e-300) {
            conj[i] = Some(i);
            continue;
        }
        let j = (0..inside.len())
            .filter(|&j| j != i && conj[j].is_none())
            .min_by(|&x, &y| {
                (inside[x] - r.conj())
                    .norm()
                    .total_cmp(&(inside[y] - r.conj()).norm())
            });
        match j {
            Some(j) => {
                conj[i] = Some(j);
                conj[j] = Some(i);
            }
            None => conj[i] = Some(i),
        }
    }
    conj.into_iter().map(|c| c.unwrap()).collect()
}

fn candidate_masks(pairs: usize, conj: &[usize], all: bool, is_real: bool) -> Vec<u64> {
    if !all || pairs == 0 {
        return vec![0];
    }
    let pairs = pairs.min(MAX_ENUM_PAIRS);
    let closed = |m: u64| (0..pairs).all(|i| conj[i] >= pairs || ((m >> i) & 1) == ((m >> conj[i]) & 1));
    let total = 1u64 << pairs;
    let mut out: Vec<u64> = Vec::with_capacity(total as usize);
    if is_real {
        out.extend((0..total).filter(|&m| closed(m)));
        out.extend((0..total).filter(|&m| !closed(m)));
    } else {
        out.extend(0..total);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn roots_of_linear() {
        let r = poly_roots(&LaurentPoly::from_real(0, &[1.0, -1.0])).unwrap();
        assert_eq!(r.roots.len(), 1);
        assert!((r.roots[0] - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn double_root_cluster() {
        let p = LaurentPoly::from_real(0, &[1.0, -2.0, 1.0]);
        let r = poly_roots(&p).unwrap();
        assert_eq!(r.roots.len(), 2);
        for x in &r.roots {
            assert!((x - c(1.0, 0.0)).norm() < 1e-6);
        }
        // -w^{-1} + 2 - w shares the roots of -1 + 2w - w^2
        let q = LaurentPoly::from_real(-1, &[-1.0, 2.0, -1.0]);
        let r = poly_roots(&q).unwrap();
        let disc: f64 = 2.0 * 2.0 - 4.0; // quadratic formula, zero discriminant
        let want = (2.0 + disc.sqrt()) / 2.0;
        for x in &r.roots {
            assert!((x - c(want, 0.0)).norm() < 1e-6);
        }
    }

    #[test]
    fn roots_of_zero_fail() {
        assert!(matches!(
            poly_roots(&LaurentPoly::zero()),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn complex_roots_recovered() {
        let want = [c(0.5, 0.2), c(-1.3, 0.7), c(2.0, -1.0), c(0.0, 0.4)];
        let mut p = LaurentPoly::one();
        for r in want {
            p = &p * &LaurentPoly::new(0, vec![-r, c(1.0, 0.0)]);
        }
        let got = sorted(poly_roots(&p.shift(-2)).unwrap().roots);
        for (g, w) in got.iter().zip(sorted(want.to_vec())) {
            assert!((g - w).norm() < 1e-12);
        }
    }

    #[test]
    fn factor_constant() {
        let f = spectral_factorize(&LaurentPoly::one(), (0, 0), true, FACTOR_TOL).unwrap();
        assert_eq!(f.factors, vec![LaurentPoly::one()]);
    }

    #[test]
    fn factor_zero_is_empty() {
        let f = spectral_factorize(&LaurentPoly::zero(), (0, 3), true, FACTOR_TOL).unwrap();
        assert!(f.factors.is_empty());
    }

    #[test]
    fn factor_hat_determinant() {
        let d = LaurentPoly::from_real(-1, &[-1.0, 2.0, -1.0]).scale_real(0.125);
        let f = spectral_factorize(&d, (0, 1), true, FACTOR_TOL).unwrap();
        assert_eq!(f.factors.len(), 1);
        let s = 1.0 / (2.0 * 2f64.sqrt());
        let got = &f.factors[0];
        assert_eq!(got.support(), Some((0, 1)));
        assert!((got.coeff(0) - c(s, 0.0)).norm() < 1e-8);
        assert!((got.coeff(1) - c(-s, 0.0)).norm() < 1e-8);
        assert!((&(got * &got.star()) - &d).max_abs() < 1e-12);
    }

    #[test]
    fn negative_polynomial_rejected() {
        let d = LaurentPoly::from_real(-1, &[1.0, 0.5, 1.0]);
        assert!(matches!(
            spectral_factorize(&d, (0, 1), false, FACTOR_TOL),
            Err(Error::NotNonnegative { .. })
        ));
    }

    #[test]
    fn window_too_short() {
        let d = LaurentPoly::from_real(-1, &[-1.0, 2.0, -1.0]);
        assert!(matches!(
            spectral_factorize(&d, (3, 3), false, FACTOR_TOL),
            Err(Error::NoFactorInWindow { lo: 3, hi: 3 })
        ));
    }

    #[test]
    fn enumeration_of_real_factors() {
        // d0 = (1 - 0.5w)(1 - (0.2 + 0.6i)w)(1 - (0.2 - 0.6i)w)
        let mut d0 = LaurentPoly::one();
        for r in [c(0.5, 0.0), c(0.2, 0.6), c(0.2, -0.6)] {
            d0 = &d0 * &LaurentPoly::new(0, vec![c(1.0, 0.0), -r]);
        }
        let big_d = &d0 * &d0.star();
        let f = spectral_factorize(&big_d, (0, 3), true, FACTOR_TOL).unwrap();
        // three pairs give 2^3 subsets, all distinct
        assert_eq!(f.factors.len(), 8);
        // conjugate-closed choices come first and are real: 2 groups -> 4
        for g in &f.factors[..4] {
            assert!(g.is_real());
        }
        for g in &f.factors[4..] {
            assert!(g.max_imag() > 1e-3);
        }
        assert!(f.residual <= 1e-10);
        // the first factor keeps the roots inside the disc
        let r = poly_roots(&f.factors[0]).unwrap();
        assert!(r.roots.iter().all(|x| x.norm() <= 1.0 + 1e-9));
    }

    proptest! {
        #[test]
        fn factor_reconstructs(cs in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..6)) {
            let g = LaurentPoly::new(0, cs.into_iter().map(|(a, b)| c(a, b)).collect());
            prop_assume!(g.max_abs() > 1e-2);
            let big_d = &g * &g.star();
            let f = spectral_factorize(&big_d, (-2, 10), true, FACTOR_TOL).unwrap();
            prop_assert!(!f.factors.is_empty());
            for h in &f.factors {
                prop_assert_eq!(h.lo(), -2);
                let err = (&(h * &h.star()) - &big_d).max_abs();
                prop_assert!(err <= FACTOR_TOL * big_d.max_abs().max(1.0));
            }
        }

        #[test]
        fn real_input_gives_real_first_factor(cs in proptest::collection::vec(-1.0f64..1.0, 2..6)) {
            let g = LaurentPoly::from_real(0, &cs);
            prop_assume!(g.max_abs() > 1e-2);
            let big_d = &g * &g.star();
            let f = spectral_factorize(&big_d, (0, 10), false, FACTOR_TOL).unwrap();
            prop_assert!(f.factors[0].is_real());
        }
    }
}
