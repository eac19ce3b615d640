//! Values of analytic functions at points where their closed formula has
//! removable singularities.

use crate::scalar::{cst, int, Real};
use num_complex::Complex;

/// How to evaluate a function at a point where its formula breaks down.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LimitPolicy<T> {
    /// Mean over `points` equally spaced samples on a circle of `radius`
    /// around the point, offset by half a step. Exact for polynomials of
    /// degree below `points` and accurate to rounding for entire functions.
    Contour { radius: T, points: usize },
    /// `(F(h + eps) + F(h - eps)) / 2`. Error is `O(eps^2)` plus rounding
    /// amplified by `1/eps` from the cancelling poles.
    TwoSided { eps: T },
}

impl<T: Real> Default for LimitPolicy<T> {
    fn default() -> Self {
        LimitPolicy::Contour {
            radius: cst::<T>(0.1),
            points: 32,
        }
    }
}

impl<T: Real> LimitPolicy<T> {
    pub fn two_sided_default() -> Self {
        LimitPolicy::TwoSided {
            eps: cst::<T>(1e-5),
        }
    }

    /// Points closer than this to a singularity are evaluated through the
    /// limit rather than directly.
    pub fn radius(&self) -> T {
        match *self {
            LimitPolicy::Contour { radius, .. } => radius / cst::<T>(2.0),
            LimitPolicy::TwoSided { eps } => eps,
        }
    }

    pub fn limit<F>(&self, f: F, at: Complex<T>) -> Complex<T>
    where
        F: Fn(Complex<T>) -> Complex<T>,
    {
        match *self {
            LimitPolicy::Contour { radius, points } => {
                let m = points.max(1);
                let mf = int::<T>(m as i64);
                let two_pi = T::PI() + T::PI();
                let mut acc = Complex::new(T::zero(), T::zero());
                for j in 0..m {
                    let theta = two_pi * (int::<T>(j as i64) + cst::<T>(0.5)) / mf;
                    acc += f(at + Complex::from_polar(radius, theta));
                }
                acc / mf
            }
            LimitPolicy::TwoSided { eps } => {
                let e = Complex::new(eps, T::zero());
                (f(at + e) + f(at - e)) / cst::<T>(2.0)
            }
        }
    }
}
