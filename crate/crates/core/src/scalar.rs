use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};
use std::fmt::{Debug, Display, LowerExp};

/// Floating-point type the whole crate is generic over.
///
/// Implemented for `f32` and `f64`. Every scalar sum in the crate is carried
/// out in `Complex<T>`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Default
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Tolerance used when none is supplied: 1e-9, or 100 ulp-at-one when
    /// the type cannot resolve 1e-9.
    fn default_tol() -> Self {
        let floor = Self::from_f64(1e-9).unwrap();
        let eps = Self::epsilon() * Self::from_f64(100.0).unwrap();
        if eps > floor {
            eps
        } else {
            floor
        }
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` constant into `T`.
#[inline]
pub fn cst<T: Real>(x: f64) -> T {
    T::from_f64(x).unwrap()
}

/// Converts an integer into `T`.
#[inline]
pub fn int<T: Real>(n: i64) -> T {
    T::from_i64(n).unwrap()
}

/// Purely real complex number.
#[inline]
pub fn re<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

/// Complex number from an integer.
#[inline]
pub fn cint<T: Real>(n: i64) -> Complex<T> {
    Complex::new(int::<T>(n), T::zero())
}

/// `|a - b| <= tol * max(1, |a|, |b|)`.
pub fn close<T: Real>(a: Complex<T>, b: Complex<T>, tol: T) -> bool {
    let scale = T::one().max(a.norm()).max(b.norm());
    (a - b).norm() <= tol * scale
}

/// Relative error `|a - b| / max(|b|, tiny)`.
pub fn rel_err<T: Real>(a: Complex<T>, b: Complex<T>) -> T {
    let d = (a - b).norm();
    let s = b.norm();
    if s > T::min_positive_value() {
        d / s
    } else {
        d
    }
}

/// Renders a complex number as `re+imi`, used in error messages.
pub fn fmt_c<T: Real>(z: Complex<T>) -> String {
    if z.im >= T::zero() {
        format!("{}+{}i", z.re, z.im)
    } else {
        format!("{}{}i", z.re, z.im)
    }
}
