//! Finitely supported complex sequences as Laurent polynomials.
//!
//! A [`LaurentPoly`] stores the coefficient of `z^(lo + i)` at position `i`.
//! Every constructor trims exact zeros from both ends, so two polynomials
//! are equal exactly when their coefficient lists are equal. Floating-point
//! noise left behind by root finding or optimization is removed separately
//! with [`LaurentPoly::trimmed`].
//!
//! On the unit circle the symbol of a filter `u` is `û(ξ) = u(e^{-iξ})`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Zero;

/// Absolute trimming tolerance applied after floating-point operations.
pub const TRIM_TOL: f64 = 1e-12;

#[derive(Clone, PartialEq, Default)]
pub struct LaurentPoly {
    lo: i64,
    coeffs: Vec<Complex64>,
}

/// Ring operation selector for [`combine`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

/// Applies `kind` to `p` and `q`.
pub fn combine(p: &LaurentPoly, q: &LaurentPoly, kind: RingOp) -> LaurentPoly {
    match kind {
        RingOp::Add => p + q,
        RingOp::Sub => p - q,
        RingOp::Mul => p * q,
    }
}

impl LaurentPoly {
    /// Builds `Σ coeffs[i] z^(lo+i)`, trimming exact zeros at both ends.
    pub fn new(lo: i64, coeffs: Vec<Complex64>) -> Self {
        let first = coeffs.iter().position(|c| !c.is_zero());
        let Some(first) = first else {
            return Self::zero();
        };
        let last = coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(first);
        let coeffs = if first == 0 && last + 1 == coeffs.len() {
            coeffs
        } else {
            coeffs[first..=last].to_vec()
        };
        LaurentPoly {
            lo: lo + first as i64,
            coeffs,
        }
    }

    pub fn from_real(lo: i64, coeffs: &[f64]) -> Self {
        Self::new(lo, coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        LaurentPoly {
            lo: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        Self::monomial(c, 0)
    }

    /// `c · z^k`.
    pub fn monomial(c: Complex64, k: i64) -> Self {
        Self::new(k, vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent; 0 for the zero polynomial.
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest exponent; `lo - 1` for the zero polynomial.
    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    /// Filter support `[lo, hi]`, or `None` for the zero polynomial.
    pub fn support(&self) -> Option<(i64, i64)> {
        (!self.is_zero()).then(|| (self.lo, self.hi()))
    }

    /// Filter length `hi - lo` (0 for monomials and for the zero polynomial).
    pub fn length(&self) -> i64 {
        if self.is_zero() {
            0
        } else {
            self.hi() - self.lo
        }
    }

    /// Midpoint of the support.
    pub fn center(&self) -> Option<f64> {
        self.support().map(|(lo, hi)| (lo + hi) as f64 / 2.0)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^k`.
    pub fn coeff(&self, k: i64) -> Complex64 {
        let i = k - self.lo;
        if i < 0 || i >= self.coeffs.len() as i64 {
            Complex64::zero()
        } else {
            self.coeffs[i as usize]
        }
    }

    /// `(k, coefficient)` pairs over the support.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, &c)| (self.lo + i as i64, c))
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.norm()))
    }

    /// Largest `|Im|` over all coefficients.
    pub fn max_imag(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.im.abs()))
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im == 0.0)
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            lo: self.lo + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.lo, self.coeffs.iter().map(|&x| x * c).collect())
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    /// Drops end coefficients with modulus `<= tol`.
    pub fn trimmed(&self, tol: f64) -> Self {
        let first = self.coeffs.iter().position(|c| c.norm() > tol);
        let Some(first) = first else {
            return Self::zero();
        };
        let last = self.coeffs.iter().rposition(|c| c.norm() > tol).unwrap();
        Self::new(self.lo + first as i64, self.coeffs[first..=last].to_vec())
    }

    /// Zeroes imaginary parts no larger than `tol`, so a numerically real
    /// filter becomes exactly real.
    pub fn snap_real(&self, tol: f64) -> Self {
        Self::new(
            self.lo,
            self.coeffs
                .iter()
                .map(|c| {
                    if c.im.abs() <= tol {
                        Complex64::new(c.re, 0.0)
                    } else {
                        *c
                    }
                })
                .collect(),
        )
    }

    /// Adjoint `u*(z) = Σ conj(u(k)) z^{-k}`.
    pub fn star(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            lo: -self.hi(),
            coeffs: self.coeffs.iter().rev().map(|c| c.conj()).collect(),
        }
    }

    /// Coefficient-wise conjugate `conj(u)`, whose symbol is `conj(û(-ξ))`.
    pub fn conj_coeffs(&self) -> Self {
        LaurentPoly {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }

    pub fn real_part(&self) -> Self {
        Self::new(
            self.lo,
            self.coeffs.iter().map(|c| Complex64::new(c.re, 0.0)).collect(),
        )
    }

    pub fn imag_part(&self) -> Self {
        Self::new(
            self.lo,
            self.coeffs.iter().map(|c| Complex64::new(c.im, 0.0)).collect(),
        )
    }

    /// The substitution `z ↦ -z`.
    pub fn alternate(&self) -> Self {
        LaurentPoly {
            lo: self.lo,
            coeffs: self
                .terms()
                .map(|(k, c)| if k.rem_euclid(2) == 1 { -c } else { c })
                .collect(),
        }
    }

    /// The substitution `z ↦ z²`.
    pub fn upsample_two(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Complex64::zero(); 2 * self.coeffs.len() - 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = c;
        }
        LaurentPoly {
            lo: 2 * self.lo,
            coeffs,
        }
    }

    /// Coset split `u(z) = u⁰(z²) + z·u¹(z²)` with `u^γ(k) = u(γ + 2k)`.
    pub fn polyphase_split(&self) -> (Self, Self) {
        if self.is_zero() {
            return (Self::zero(), Self::zero());
        }
        let mut parts = [(i64::MAX, Vec::new()), (i64::MAX, Vec::new())];
        let lo0 = self.lo.div_euclid(2);
        let lo1 = (self.lo - 1).div_euclid(2);
        parts[0].0 = lo0;
        parts[1].0 = lo1;
        let n0 = (self.hi().div_euclid(2) - lo0 + 1).max(0) as usize;
        let n1 = ((self.hi() - 1).div_euclid(2) - lo1 + 1).max(0) as usize;
        parts[0].1 = vec![Complex64::zero(); n0];
        parts[1].1 = vec![Complex64::zero(); n1];
        for (k, c) in self.terms() {
            let g = k.rem_euclid(2) as usize;
            let idx = (k - g as i64).div_euclid(2) - parts[g].0;
            parts[g].1[idx as usize] = c;
        }
        let [(l0, c0), (l1, c1)] = parts;
        (Self::new(l0, c0), Self::new(l1, c1))
    }

    /// Inverse of [`polyphase_split`](Self::polyphase_split).
    pub fn polyphase_merge(even: &Self, odd: &Self) -> Self {
        &even.upsample_two() + &odd.upsample_two().shift(1)
    }

    /// Evaluates at an arbitrary nonzero `z`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        if self.is_zero() {
            return Complex64::zero();
        }
        // Horner in z over the coefficient list, then the z^lo factor.
        let mut acc = Complex64::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc * z.powi(self.lo as i32)
    }

    /// The symbol `û(ξ) = Σ u(k) e^{-ikξ}`.
    pub fn eval_unit(&self, xi: f64) -> Complex64 {
        self.terms()
            .map(|(k, c)| c * Complex64::from_polar(1.0, -(k as f64) * xi))
            .fold(Complex64::zero(), |a, b| a + b)
    }

    /// `∫₀^π u(e^{-iξ}) dξ` in closed form: `u(0)·π + Σ_{k odd} u(k)·2/(ik)`.
    pub fn integrate_halfcircle(&self) -> Complex64 {
        let mut acc = Complex64::zero();
        for (k, c) in self.terms() {
            if k == 0 {
                acc += c * PI;
            } else if k.rem_euclid(2) == 1 {
                // 2/(ik) = -2i/k
                acc += c * Complex64::new(0.0, -2.0 / k as f64);
            }
        }
        acc
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        if self.is_zero() && other.is_zero() {
            return Self::zero();
        }
        let lo = match (self.support(), other.support()) {
            (Some((a, _)), Some((b, _))) => a.min(b),
            (Some((a, _)), None) => a,
            (None, Some((b, _))) => b,
            (None, None) => unreachable!(),
        };
        let hi = self.hi().max(other.hi());
        let coeffs = (lo..=hi)
            .map(|k| f(self.coeff(k), other.coeff(k)))
            .collect();
        Self::new(lo, coeffs)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{{")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "}}_[{}, {}]", self.lo, self.hi())
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![Complex64::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::new(self.lo + rhs.lo, coeffs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<LaurentPoly> for &'a LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Maximum coefficient modulus of `p - q`.
pub fn max_coeff_diff(p: &LaurentPoly, q: &LaurentPoly) -> f64 {
    (p - q).max_abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn spline2() -> LaurentPoly {
        LaurentPoly::from_real(-1, &[0.25, 0.5, 0.25])
    }

    #[test]
    fn canonical_trimming() {
        let p = LaurentPoly::new(-2, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(p.support(), Some((-1, -1)));
        assert!(LaurentPoly::new(5, vec![Complex64::zero(); 3]).is_zero());
        assert_eq!(LaurentPoly::zero().lo(), 0);
    }

    #[test]
    fn product_example() {
        let p = LaurentPoly::from_real(-1, &[-1.0, 1.0]); // 1 - z^{-1}
        let q = LaurentPoly::from_real(0, &[1.0, 3.0]); // 1 + 3z
        let r = combine(&p, &q, RingOp::Mul);
        assert_eq!(r, LaurentPoly::from_real(-1, &[-1.0, -2.0, 3.0]));
        assert_eq!(combine(&p, &LaurentPoly::zero(), RingOp::Add), p);
    }

    #[test]
    fn scaled_product_matches_pointwise() {
        let s = 3f64.sqrt() / 12.0;
        let p = LaurentPoly::from_real(-1, &[-1.0, 1.0]).scale_real(s);
        let q = LaurentPoly::from_real(0, &[1.0, 3.0]);
        let r = &p * &q;
        let want = [-s, -2.0 * s, 3.0 * s];
        assert_eq!(r.support(), Some((-1, 1)));
        for (k, w) in (-1..=1).zip(want) {
            assert!((r.coeff(k).re - w).abs() < 1e-16);
        }
        for xi in [0.1, 0.7, 1.3, 2.9, -2.2, 4.0, 5.5, 0.01, 3.1, -0.4] {
            let lhs = r.eval_unit(xi);
            let rhs = p.eval_unit(xi) * q.eval_unit(xi);
            assert!((lhs - rhs).norm() < 1e-14);
        }
    }

    #[test]
    fn star_examples() {
        let p = LaurentPoly::monomial(c(0.0, 1.0), 1);
        assert_eq!(p.star(), LaurentPoly::monomial(c(0.0, -1.0), -1));
        assert_eq!(spline2().star(), spline2());
        let bp = LaurentPoly::new(
            -1,
            vec![c(-0.1, 0.3), c(0.2, -0.5), c(0.4, 0.1)],
        );
        let lhs = bp.star().eval_unit(0.7);
        assert!((lhs - bp.eval_unit(0.7).conj()).norm() < 1e-15);
    }

    #[test]
    fn alternate_examples() {
        assert_eq!(
            LaurentPoly::from_real(0, &[1.0, 1.0]).alternate(),
            LaurentPoly::from_real(0, &[1.0, -1.0])
        );
        let z2 = LaurentPoly::monomial(c(1.0, 0.0), 2);
        assert_eq!(z2.alternate(), z2);
        assert_eq!(
            spline2().alternate(),
            LaurentPoly::from_real(-1, &[-0.25, 0.5, -0.25])
        );
    }

    #[test]
    fn eval_unit_examples() {
        assert_eq!(spline2().eval_unit(0.0), c(1.0, 0.0));
        assert!(spline2().eval_unit(PI).norm() < 1e-16);
        let z = LaurentPoly::monomial(c(1.0, 0.0), 1);
        assert!((z.eval_unit(PI / 2.0) - c(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn polyphase_examples() {
        let (e, o) = LaurentPoly::from_real(0, &[1.0, 1.0]).polyphase_split();
        assert_eq!(e, LaurentPoly::one());
        assert_eq!(o, LaurentPoly::one());
        let (e, o) = LaurentPoly::from_real(-1, &[1.0, 2.0, 1.0]).polyphase_split();
        assert_eq!(e, LaurentPoly::from_real(0, &[2.0]));
        assert_eq!(o, LaurentPoly::from_real(-1, &[1.0, 1.0]));
    }

    #[test]
    fn upsample_examples() {
        assert_eq!(
            LaurentPoly::from_real(0, &[1.0, 1.0]).upsample_two(),
            LaurentPoly::from_real(0, &[1.0, 0.0, 1.0])
        );
        assert!(LaurentPoly::zero().upsample_two().is_zero());
        let p = spline2().shift(3);
        for xi in [0.3, 1.1, 2.0] {
            assert!((p.upsample_two().eval_unit(xi) - p.eval_unit(2.0 * xi)).norm() < 1e-15);
        }
    }

    #[test]
    fn halfcircle_examples() {
        assert_eq!(LaurentPoly::one().integrate_halfcircle(), c(PI, 0.0));
        let z = LaurentPoly::monomial(c(1.0, 0.0), 1);
        assert_eq!(z.integrate_halfcircle(), c(0.0, -2.0));
        let cosine = LaurentPoly::from_real(-1, &[1.0, 0.0, 1.0]);
        assert_eq!(cosine.integrate_halfcircle(), c(0.0, 0.0));
    }

    #[test]
    fn halfcircle_against_simpson() {
        let p = LaurentPoly::new(-3, vec![c(0.3, -0.2), c(1.0, 0.5), c(-0.7, 0.0), c(0.2, 0.9), c(0.0, 0.4)]);
        let n = 20_000;
        let h = PI / n as f64;
        let mut acc = Complex64::zero();
        for i in 0..=n {
            let w = if i == 0 || i == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            acc += p.eval_unit(i as f64 * h) * w;
        }
        acc *= h / 3.0;
        assert!((acc - p.integrate_halfcircle()).norm() < 1e-12);
    }

    fn small_poly() -> impl Strategy<Value = LaurentPoly> {
        (
            -4i64..4,
            proptest::collection::vec((-8i32..8, -8i32..8), 0..6),
        )
            .prop_map(|(lo, cs)| {
                LaurentPoly::new(
                    lo,
                    cs.into_iter()
                        .map(|(a, b)| c(a as f64 / 4.0, b as f64 / 4.0))
                        .collect(),
                )
            })
    }

    fn real_poly() -> impl Strategy<Value = LaurentPoly> {
        (-3i64..3, proptest::collection::vec(-1.0f64..1.0, 1..6))
            .prop_map(|(lo, cs)| LaurentPoly::from_real(lo, &cs))
    }

    proptest! {
        #[test]
        fn ring_axioms(p in small_poly(), q in small_poly(), r in small_poly()) {
            // Quarter-integer coefficients keep every product exact.
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&(&p + &q) - &q, p.clone());
        }

        #[test]
        fn star_is_involutive_antihomomorphism(p in small_poly(), q in small_poly()) {
            prop_assert_eq!(p.star().star(), p.clone());
            prop_assert_eq!((&p * &q).star(), &p.star() * &q.star());
            prop_assert_eq!(p.alternate().alternate(), p.clone());
        }

        #[test]
        fn polyphase_roundtrip(p in small_poly()) {
            let (e, o) = p.polyphase_split();
            prop_assert_eq!(LaurentPoly::polyphase_merge(&e, &o), p);
        }

        #[test]
        fn energy_integral_nonnegative(p in real_poly(), q in small_poly()) {
            let p = &p + &q;
            let v = (&p * &p.star()).integrate_halfcircle();
            prop_assert!(v.im.abs() <= 1e-12);
            prop_assert!(v.re >= -1e-12);
        }

        #[test]
        fn evaluation_is_multiplicative(p in real_poly(), q in small_poly(), xi in -7.0f64..7.0) {
            let lhs = (&p * &q).eval_unit(xi);
            let rhs = p.eval_unit(xi) * q.eval_unit(xi);
            let scale = 1.0f64.max(rhs.norm());
            prop_assert!((lhs - rhs).norm() <= 1e-12 * scale);
            let s = p.star().eval_unit(xi) - p.eval_unit(xi).conj();
            prop_assert!(s.norm() <= 1e-12);
            let z = Complex64::from_polar(1.0, -xi);
            prop_assert!((q.eval(z) - q.eval_unit(xi)).norm() <= 1e-12);
        }
    }
}
