//! Closed-form evaluators for chain links, (2, 2n+1) torus knots with extra
//! twists, long Hopf links, the fundamental hyperbolic link norm, and the
//! knot-surgery functions `P` and `K~`.

use crate::error::{Error, Result};
use crate::limit::LimitPolicy;
use crate::qarith::{Color, QParams};
use crate::scalar::{cint, cst, fmt_c, int, re, Real};
use crate::skein;
use num_complex::Complex;

/// Chain of unknots `L_1 .. L_n`, consecutive ones linked once, with
/// framings `a_j` and colors `b_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainSpec<T> {
    framings: Vec<i64>,
    colors: Vec<Color<T>>,
}

impl<T: Real> ChainSpec<T> {
    pub fn new(framings: Vec<i64>, colors: Vec<Color<T>>) -> Result<Self> {
        if framings.is_empty() {
            return Err(Error::InvalidInput(
                "a chain needs at least one component".into(),
            ));
        }
        if framings.len() != colors.len() {
            return Err(Error::InvalidInput(format!(
                "{} framings but {} colors",
                framings.len(),
                colors.len()
            )));
        }
        Ok(ChainSpec { framings, colors })
    }

    pub fn framings(&self) -> &[i64] {
        &self.framings
    }

    pub fn colors(&self) -> &[Color<T>] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.framings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.framings.is_empty()
    }

    /// Mirror image. Mirroring negates framings and linking numbers;
    /// reversing every second component restores `+1` linking and negates
    /// those colors, so component `j` gets `(-1)^j conj(b_j)`.
    pub fn mirror(&self) -> Self {
        ChainSpec {
            framings: self.framings.iter().map(|a| -a).collect(),
            colors: self
                .colors
                .iter()
                .enumerate()
                .map(|(j, c)| if j % 2 == 0 { c.conj() } else { -c.conj() })
                .collect(),
        }
    }
}

pub(crate) fn hopf<T: Real>(q: &QParams<T>, a: Complex<T>, b: Complex<T>) -> Complex<T> {
    q.qpow(a * b) * (q.parity_sign() * int::<T>(q.r() as i64))
}

pub(crate) fn chain_value<T: Real>(
    q: &QParams<T>,
    framings: &[i64],
    colors: &[Complex<T>],
) -> Result<Complex<T>> {
    for c in colors {
        if q.is_singular(*c) {
            return Err(Error::InadmissibleColor(fmt_c(*c)));
        }
    }
    let n = colors.len();
    let mut acc = Complex::new(T::one(), T::zero());
    for (a, c) in framings.iter().zip(colors) {
        acc *= q.twist(*c, *a);
    }
    if n == 1 {
        return Ok(acc * q.mdim_unchecked(colors[0]));
    }
    for c in &colors[1..n - 1] {
        acc /= q.mdim_unchecked(*c);
    }
    for w in colors.windows(2) {
        acc *= hopf(q, w[0], w[1]);
    }
    Ok(acc)
}

/// Invariant of a colored framed chain link.
pub fn chain_eval<T: Real>(q: &QParams<T>, spec: &ChainSpec<T>) -> Result<Complex<T>> {
    let cs: Vec<Complex<T>> = spec.colors.iter().map(|c| c.0).collect();
    chain_value(q, &spec.framings, &cs)
}

/// `(-1)^(r-1) r q^(ab) / d(b)`: the factor an `a`-colored meridian
/// contributes around a `b`-colored strand.
pub fn long_hopf_bracket<T: Real>(q: &QParams<T>, a: Color<T>, b: Color<T>) -> Result<Complex<T>> {
    if !q.admissible(a) {
        return Err(Error::InadmissibleColor(fmt_c(a.0)));
    }
    Ok(hopf(q, a.0, b.0) / q.mdim(b)?)
}

/// A framed knot whose colored invariant has a closed formula.
pub trait KnotEvaluator<T: Real>: Send + Sync {
    fn framing(&self) -> i64;

    /// The closed formula. Only meaningful away from its singular set.
    fn eval_regular(&self, q: &QParams<T>, alpha: Complex<T>) -> Complex<T>;

    /// Distance from `alpha` to the nearest point where the closed formula
    /// divides by zero.
    fn singular_distance(&self, q: &QParams<T>, alpha: Complex<T>) -> T;

    /// The invariant of the knot colored `alpha`, taking the limit when the
    /// formula is singular at `alpha`.
    fn eval(&self, q: &QParams<T>, alpha: Complex<T>, policy: &LimitPolicy<T>) -> Complex<T> {
        if self.singular_distance(q, alpha) <= q.tol() {
            policy.limit(|z| self.eval_regular(q, z), alpha)
        } else {
            self.eval_regular(q, alpha)
        }
    }
}

/// Unknot with framing `f`: `theta_a^f d(a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FramedUnknot {
    pub framing: i64,
}

impl<T: Real> KnotEvaluator<T> for FramedUnknot {
    fn framing(&self) -> i64 {
        self.framing
    }

    fn eval_regular(&self, q: &QParams<T>, alpha: Complex<T>) -> Complex<T> {
        q.twist(alpha, self.framing) * q.mdim_unchecked(alpha)
    }

    fn singular_distance(&self, q: &QParams<T>, alpha: Complex<T>) -> T {
        q.singular_distance(alpha)
    }
}

/// Closure of the two-strand braid `sigma^(2n+1)` with `f` extra full
/// twists; its framing is `f + 2n + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorusCable {
    pub f: i64,
    pub n: u32,
}

impl TorusCable {
    /// Trefoil with framing `+1`, whose surgery is the Poincare sphere.
    pub fn poincare_trefoil() -> Self {
        TorusCable { f: -2, n: 1 }
    }
}

fn t_exp<T: Real>(q: &QParams<T>, x: Complex<T>) -> Complex<T> {
    let rm1 = int::<T>(q.r() as i64 - 1);
    (x * x - re(rm1 * rm1)) / cst::<T>(2.0)
}

impl<T: Real> KnotEvaluator<T> for TorusCable {
    fn framing(&self) -> i64 {
        self.f + 2 * self.n as i64 + 1
    }

    fn eval_regular(&self, q: &QParams<T>, alpha: Complex<T>) -> Complex<T> {
        let strands = int::<T>(2 * self.n as i64 + 1) / cst::<T>(2.0);
        let ta = t_exp(q, alpha);
        let base = ta * int::<T>(self.f) - ta * (strands + strands);
        q.hr()
            .iter()
            .fold(Complex::new(T::zero(), T::zero()), |acc, k| {
                let g = alpha + alpha + cint(k);
                acc + q.qpow(base + t_exp(q, g) * strands) * q.mdim_unchecked(g)
            })
    }

    fn singular_distance(&self, q: &QParams<T>, alpha: Complex<T>) -> T {
        q.hr()
            .iter()
            .map(|k| q.singular_distance(alpha + alpha + cint(k)) / cst::<T>(2.0))
            .fold(T::infinity(), T::min)
    }
}

/// Torus-knot data plus a color.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusCableSpec<T> {
    pub f: i64,
    pub n: u32,
    pub alpha: Color<T>,
}

/// Colored invariant of the `(2, 2n+1)` torus knot with `f` extra twists.
pub fn torus_cable_eval<T: Real>(
    q: &QParams<T>,
    spec: &TorusCableSpec<T>,
    policy: &LimitPolicy<T>,
) -> Complex<T> {
    TorusCable {
        f: spec.f,
        n: spec.n,
    }
    .eval(q, spec.alpha.0, policy)
}

/// `P(a) = sum_{k in H_r} N(K(a + k))`, through the limit policy when any
/// term is singular.
pub fn knot_p<T: Real, K: KnotEvaluator<T> + ?Sized>(
    q: &QParams<T>,
    knot: &K,
    alpha: Complex<T>,
    policy: &LimitPolicy<T>,
) -> Complex<T> {
    let hr = q.hr();
    let p = |z: Complex<T>| {
        hr.iter()
            .fold(Complex::new(T::zero(), T::zero()), |acc, k| {
                acc + knot.eval_regular(q, z + cint(k))
            })
    };
    let near = hr
        .iter()
        .map(|k| knot.singular_distance(q, alpha + cint(k)))
        .fold(T::infinity(), T::min);
    if near < policy.radius() {
        policy.limit(p, alpha)
    } else {
        p(alpha)
    }
}

/// `K~` at the color `alpha`: `N(K(alpha)) / (theta_alpha^f d(alpha))`.
pub fn ktilde_at<T: Real, K: KnotEvaluator<T> + ?Sized>(
    q: &QParams<T>,
    knot: &K,
    alpha: Complex<T>,
    policy: &LimitPolicy<T>,
) -> Result<Complex<T>> {
    let f = knot.framing();
    let ratio = |z: Complex<T>| knot.eval_regular(q, z) / (q.twist(z, f) * q.mdim_unchecked(z));
    let near = knot
        .singular_distance(q, alpha)
        .min(q.singular_distance(alpha));
    let v = if near < policy.radius() {
        policy.limit(ratio, alpha)
    } else {
        let norm = q.twist(alpha, f) * q.mdim_unchecked(alpha);
        if !(norm.norm() > T::min_positive_value()) || !norm.norm().is_finite() {
            return Err(Error::SingularNormalization(fmt_c(alpha)));
        }
        knot.eval_regular(q, alpha) / norm
    };
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::SingularNormalization(fmt_c(alpha)))
    }
}

/// `K~(X)` with `alpha = r log(X) / (i pi)` on the strip `-r < Re alpha <= r`.
pub fn ktilde_eval<T: Real, K: KnotEvaluator<T> + ?Sized>(
    q: &QParams<T>,
    knot: &K,
    x: Complex<T>,
    policy: &LimitPolicy<T>,
) -> Result<Complex<T>> {
    if x.norm() <= T::min_positive_value() {
        return Err(Error::SingularNormalization(fmt_c(x)));
    }
    let alpha = x.ln() * Complex::new(T::zero(), -int::<T>(q.r() as i64) / T::PI());
    ktilde_at(q, knot, alpha, policy)
}

/// Checks that `q^(-f a^2 / 2) P(a)` is a Laurent polynomial in `q^a`.
///
/// Samples `4r + 1` equispaced colors on the period `[0, 2r)`, builds the
/// trigonometric interpolant and returns the largest residual at 20 fixed
/// off-grid points, relative to `max(1, |value|)`. That grid resolves
/// degree `2r`, enough for framing `+-1` trefoils and low-framed unknots.
pub fn laurent_certificate<T: Real, K: KnotEvaluator<T> + ?Sized>(
    q: &QParams<T>,
    knot: &K,
    policy: &LimitPolicy<T>,
) -> T {
    laurent_certificate_with_degree(q, knot, policy, 2 * q.r() as usize)
}

/// [`laurent_certificate`] with `2 degree + 1` samples, for knots whose
/// Laurent polynomial has degree above `2r`.
pub fn laurent_certificate_with_degree<T: Real, K: KnotEvaluator<T> + ?Sized>(
    q: &QParams<T>,
    knot: &K,
    policy: &LimitPolicy<T>,
    degree: usize,
) -> T {
    let r = q.r() as i64;
    let deg = degree as i64;
    let f = int::<T>(knot.framing());
    let g = |a: Complex<T>| q.qpow(-(a * a) * f / cst::<T>(2.0)) * knot_p(q, knot, a, policy);
    let m = 2 * deg + 1;
    let mf = int::<T>(m);
    let two_pi = T::PI() + T::PI();
    let period = int::<T>(2 * r);
    let samples: Vec<Complex<T>> = (0..m).map(|j| g(re(period * int::<T>(j) / mf))).collect();
    let coeffs: Vec<(i64, Complex<T>)> = (-deg..=deg)
        .map(|n| {
            let c = samples.iter().enumerate().fold(
                Complex::new(T::zero(), T::zero()),
                |acc, (j, y)| {
                    acc + *y * Complex::from_polar(T::one(), -two_pi * int::<T>(n * j as i64) / mf)
                },
            );
            (n, c / mf)
        })
        .collect();
    (0..20)
        .map(|s| {
            let a = Complex::new(
                cst::<T>(0.1234) + cst::<T>(0.377) * int::<T>(s),
                cst::<T>(0.05),
            );
            let interp = coeffs
                .iter()
                .fold(Complex::new(T::zero(), T::zero()), |acc, (n, c)| {
                    acc + *c * q.qpow(a * int::<T>(*n))
                });
            let v = g(a);
            (interp - v).norm() / v.norm().max(T::one())
        })
        .fold(T::zero(), T::max)
}

/// `r^(3k) sixj_zero^(k-1)`, the norm of the invariant of the fundamental
/// hyperbolic link in the connected sum of `k` copies of `S^2 x S^1`.
pub fn fundamental_link_norm<T: Real>(q: &QParams<T>, k: u32) -> Result<T> {
    Ok(log_fundamental_link_norm(q, k)?.exp())
}

/// Logarithm of [`fundamental_link_norm`], finite for large `r`.
pub fn log_fundamental_link_norm<T: Real>(q: &QParams<T>, k: u32) -> Result<T> {
    if k < 2 {
        return Err(Error::RangeError(format!("k = {k} must be at least 2")));
    }
    let ls = skein::log_sixj_zero(q)?;
    let lr = int::<T>(q.r() as i64).ln();
    Ok(int::<T>(3 * k as i64) * lr + int::<T>(k as i64 - 1) * ls)
}
