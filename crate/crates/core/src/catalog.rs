//! Reference low-pass filters and closed-form tight completions of them.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::analysis::FilterBank;
use crate::laurent::LaurentPoly;

/// The low-pass filters used throughout the tests and golden files.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lowpass {
    /// `{½, ½}` on `[0, 1]`.
    Haar,
    /// `{1, 2, 1}/4` on `[−1, 1]`.
    Bspline2,
    /// `{1, 4, 6, 4, 1}/16` on `[−2, 2]`.
    Bspline4,
    /// `{−1, 0, 9, 16, 9, 0, −1}/32` on `[−3, 3]`.
    Interpolatory4,
    /// `{−3, 5, 30, 30, 5, −3}/64` on `[−2, 3]`.
    SixTap,
}

impl Lowpass {
    pub const ALL: [Lowpass; 5] = [
        Lowpass::Haar,
        Lowpass::Bspline2,
        Lowpass::Bspline4,
        Lowpass::Interpolatory4,
        Lowpass::SixTap,
    ];

    /// The four non-orthogonal filters.
    pub const REDUNDANT: [Lowpass; 4] = [
        Lowpass::Bspline2,
        Lowpass::Bspline4,
        Lowpass::Interpolatory4,
        Lowpass::SixTap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lowpass::Haar => "haar",
            Lowpass::Bspline2 => "bspline2",
            Lowpass::Bspline4 => "bspline4",
            Lowpass::Interpolatory4 => "interp4",
            Lowpass::SixTap => "sixtap",
        }
    }

    pub fn filter(self) -> LaurentPoly {
        let (lo, c, d): (i64, &[f64], f64) = match self {
            Lowpass::Haar => (0, &[1.0, 1.0], 2.0),
            Lowpass::Bspline2 => (-1, &[1.0, 2.0, 1.0], 4.0),
            Lowpass::Bspline4 => (-2, &[1.0, 4.0, 6.0, 4.0, 1.0], 16.0),
            Lowpass::Interpolatory4 => (-3, &[-1.0, 0.0, 9.0, 16.0, 9.0, 0.0, -1.0], 32.0),
            Lowpass::SixTap => (-2, &[-3.0, 5.0, 30.0, 30.0, 5.0, -3.0], 64.0),
        };
        LaurentPoly::from_real(lo, &c.iter().map(|x| x / d).collect::<Vec<_>>())
    }

    /// `d_R` as the rational multiple `p/q` of `π`.
    pub fn d_real_ratio(self) -> (i64, i64) {
        match self {
            Lowpass::Haar => (1, 2),
            Lowpass::Bspline2 => (5, 8),
            Lowpass::Bspline4 => (93, 128),
            Lowpass::Interpolatory4 => (151, 256),
            Lowpass::SixTap => (557, 1024),
        }
    }

    pub fn d_real_exact(self) -> f64 {
        let (p, q) = self.d_real_ratio();
        p as f64 * PI / q as f64
    }

    /// A closed-form tight completion `{a; b₁, b₂}` with real high-pass
    /// filters (for Haar, `b₂ = 0`).
    pub fn initial_bank(self) -> FilterBank {
        let a = self.filter();
        let (b1, b2) = match self {
            Lowpass::Haar => (LaurentPoly::from_real(0, &[-0.5, 0.5]), LaurentPoly::zero()),
            Lowpass::Bspline2 => {
                let s6 = 6f64.sqrt() / 6.0;
                let s3 = 3f64.sqrt() / 12.0;
                (
                    poly(-1, &[-1.0, 1.0]).scale_real(s6),
                    &poly(-1, &[-1.0, 1.0]) * &poly(0, &[1.0, 3.0]).scale_real(s3),
                )
            }
            Lowpass::Bspline4 => {
                let r14 = 14f64.sqrt();
                let k = (34.0 + 8.0 * r14).sqrt();
                let one_minus_z = poly(0, &[1.0, -1.0]);
                let c1 = k * (r14 - 4.0) / 2080.0;
                let c2 = k * (4.0 * r14 - 17.0) / 1300.0;
                let q1 = poly(
                    0,
                    &[8.0 * r14 + 31.0, 40.0 * r14 + 155.0, 64.0 * r14 + 261.0, 65.0],
                );
                let q2 = poly(0, &[-r14 - 3.0, -(5.0 * r14 + 15.0), 10.0]);
                (
                    (&one_minus_z * &q1).scale_real(c1),
                    (&one_minus_z * &q2).scale_real(c2),
                )
            }
            Lowpass::Interpolatory4 => {
                let r3 = 3f64.sqrt();
                let k = (298527.0 - 142344.0 * r3).sqrt();
                let common = &(&poly(0, &[1.0, -2.0, 1.0]) * &poly(0, &[2.0 - r3, 1.0])).shift(-3);
                let c1 = k * (72.0 * r3 + 151.0) / 458600736.0;
                let c2 = k * (2.0 * 2f64.sqrt() + 6f64.sqrt()) / 173976.0;
                let q1 = poly(0, &[-86.0 - 7.0 * r3, 21.0 + 86.0 * r3, 512.0 + 57.0 * r3, 1977.0]);
                let q2 = poly(0, &[2.0 * r3 - 1.0, r3 - 6.0, -44.0]);
                ((common * &q1).scale_real(c1), (common * &q2).scale_real(c2))
            }
            Lowpass::SixTap => {
                let common = poly(-2, &[1.0, -2.0, 1.0]);
                let c1 = 297879f64.sqrt() / 6354752.0;
                let c2 = -(496465f64.sqrt()) / 794344.0;
                let q1 = poly(0, &[-93.0, -31.0, 1921.0, 3203.0]);
                let q2 = poly(0, &[3.0, 1.0, 248.0]);
                ((&common * &q1).scale_real(c1), (&common * &q2).scale_real(c2))
            }
        };
        FilterBank::new(a, vec![b1, b2])
    }
}

fn poly(lo: i64, c: &[f64]) -> LaurentPoly {
    LaurentPoly::from_real(lo, c)
}

/// The degree-0 optimum for the order-2 B-spline in closed form:
/// `bp(z) = (1/24)(1 − z⁻¹)[(−3√2 + 6i)z + (3√2 + 6i)]` with `bn = conj(bp)`.
pub fn bspline2_optimal_pair() -> FilterBank {
    let s = 3.0 * 2f64.sqrt();
    let lin = LaurentPoly::new(0, vec![Complex64::new(s, 6.0), Complex64::new(-s, 6.0)]);
    let bp = (&poly(-1, &[-1.0, 1.0]) * &lin).scale_real(1.0 / 24.0);
    let bn = bp.conj_coeffs();
    FilterBank::new(Lowpass::Bspline2.filter(), vec![bp, bn])
}
