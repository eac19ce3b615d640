//! Scalar arithmetic at the root of unity q = exp(i pi / r).

use crate::error::{Error, Result};
use crate::scalar::{cint, cst, fmt_c, int, re, Real};
use num_complex::Complex;
use std::ops::Neg;

/// Sign of a framing or of a Gauss sum normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// Sign of a nonzero integer.
    pub fn of(n: i64) -> Option<Sign> {
        match n.signum() {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// An edge color: a complex number. Admissible unless it lies in `Z \ rZ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Color<T>(pub Complex<T>);

impl<T: Real> Color<T> {
    pub fn new(z: Complex<T>) -> Self {
        Color(z)
    }

    pub fn real(x: T) -> Self {
        Color(re(x))
    }

    pub fn value(self) -> Complex<T> {
        self.0
    }

    /// `self + k` for an integer offset.
    pub fn shifted(self, k: i64) -> Self {
        Color(self.0 + cint(k))
    }

    pub fn conj(self) -> Self {
        Color(self.0.conj())
    }
}

impl<T: Real> Neg for Color<T> {
    type Output = Color<T>;
    fn neg(self) -> Color<T> {
        Color(-self.0)
    }
}

impl<T: Real> From<Complex<T>> for Color<T> {
    fn from(z: Complex<T>) -> Self {
        Color(z)
    }
}

impl<T: Real> From<T> for Color<T> {
    fn from(x: T) -> Self {
        Color::real(x)
    }
}

/// The offsets `{1-r, 3-r, ..., r-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HrSet {
    elements: Vec<i64>,
}

impl HrSet {
    pub fn new(r: u32) -> Self {
        let r = r as i64;
        HrSet {
            elements: (0..r).map(|j| 1 - r + 2 * j).collect(),
        }
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.elements
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.elements.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, k: i64) -> bool {
        let r = self.elements.len() as i64;
        k.abs() < r && (k + r - 1) % 2 == 0
    }
}

/// The level `r` together with the comparison tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QParams<T> {
    r: u32,
    tol: T,
}

impl<T: Real> QParams<T> {
    /// Level `r` with the default tolerance.
    pub fn new(r: i64) -> Result<Self> {
        Self::with_tol(r, T::default_tol())
    }

    pub fn with_tol(r: i64, tol: T) -> Result<Self> {
        if r < 2 || r > u32::MAX as i64 {
            return Err(Error::InvalidLevel(r));
        }
        if !(tol >= T::zero()) || !tol.is_finite() {
            return Err(Error::InvalidTolerance);
        }
        Ok(QParams { r: r as u32, tol })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn tol(&self) -> T {
        self.tol
    }

    pub fn is_odd(&self) -> bool {
        self.r % 2 == 1
    }

    pub(crate) fn rf(&self) -> T {
        int::<T>(self.r as i64)
    }

    /// `(-1)^(r-1)`.
    pub fn parity_sign(&self) -> T {
        if self.is_odd() {
            T::one()
        } else {
            -T::one()
        }
    }

    pub fn hr(&self) -> HrSet {
        HrSet::new(self.r)
    }

    /// Fails with `EvenLevelMod4` when `4 | r`.
    pub fn require_surgery_level(&self) -> Result<()> {
        if self.r.is_multiple_of(4) {
            Err(Error::EvenLevelMod4(self.r))
        } else {
            Ok(())
        }
    }

    pub fn require_odd(&self) -> Result<()> {
        if self.is_odd() {
            Ok(())
        } else {
            Err(Error::EvenLevel(self.r))
        }
    }

    /// `q^x = exp(i pi x / r)`, with the real part reduced modulo `2r` first.
    pub fn qpow(&self, x: Complex<T>) -> Complex<T> {
        let rf = self.rf();
        let two_r = rf + rf;
        let m = (x.re / two_r).round();
        let y = x.re - m * two_r;
        let pr = T::PI() / rf;
        Complex::from_polar((-x.im * pr).exp(), y * pr)
    }

    pub fn qpow_re(&self, x: T) -> Complex<T> {
        self.qpow(re(x))
    }

    /// `{x} = q^x - q^-x = 2i sin(pi x / r)`, reduced modulo `r` up to sign.
    pub fn qnum(&self, x: Complex<T>) -> Complex<T> {
        let rf = self.rf();
        let m = (x.re / rf).round();
        let y = x - re(m * rf);
        let s = (y * (T::PI() / rf)).sin();
        let odd = m.to_i64().map(|m| m.rem_euclid(2) == 1).unwrap_or(false);
        let two_i = Complex::new(T::zero(), cst::<T>(2.0));
        if odd {
            -two_i * s
        } else {
            two_i * s
        }
    }

    pub fn qnum_int(&self, j: i64) -> Complex<T> {
        self.qnum(cint(j))
    }

    /// `{k}! = {1}{2}...{k}`.
    pub fn qfact(&self, k: u32) -> Complex<T> {
        (1..=k as i64).fold(Complex::new(T::one(), T::zero()), |acc, j| {
            acc * self.qnum_int(j)
        })
    }

    /// Nearest integer to `z` when `z` is integral within `tol`.
    pub fn as_integer(&self, z: Complex<T>) -> Option<i64> {
        let n = z.re.round();
        if (z.re - n).abs() <= self.tol && z.im.abs() <= self.tol {
            n.to_i64()
        } else {
            None
        }
    }

    /// True when `z` lies within `tol` of `Z \ rZ`.
    pub fn is_singular(&self, z: Complex<T>) -> bool {
        match self.as_integer(z) {
            Some(n) => n.rem_euclid(self.r as i64) != 0,
            None => false,
        }
    }

    pub fn admissible(&self, c: Color<T>) -> bool {
        !self.is_singular(c.0)
    }

    /// Distance from `z` to the singular set `Z \ rZ`.
    pub fn singular_distance(&self, z: Complex<T>) -> T {
        let base = z.re.round().to_i64().unwrap_or(0);
        let r = self.r as i64;
        let mut best = T::infinity();
        for n in base - 1..=base + 1 {
            if n.rem_euclid(r) != 0 {
                let d = (z - cint(n)).norm();
                if d < best {
                    best = d;
                }
            }
        }
        best
    }

    /// Quantum binomial `prod_{j=1}^{x-y} {x+1-j}/{j}`.
    pub fn qbin(&self, x: Complex<T>, y: Complex<T>) -> Result<Complex<T>> {
        let diff = x - y;
        let d = self
            .as_integer(diff)
            .filter(|d| *d >= 0 && *d < self.r as i64)
            .ok_or_else(|| Error::NonIntegralDifference(fmt_c(diff)))?;
        let mut acc = Complex::new(T::one(), T::zero());
        for j in 1..=d {
            let den = self.qnum_int(j);
            if den.norm() <= self.tol {
                return Err(Error::DivergentBinomial(j as u32));
            }
            acc = acc * self.qnum(x + cint(1 - j)) / den;
        }
        Ok(acc)
    }

    /// Modified dimension `d(a) = (-1)^(r-1) prod_{j=1}^{r-1} {j}/{a+r-j}`.
    pub fn mdim(&self, a: Color<T>) -> Result<Complex<T>> {
        if !self.admissible(a) {
            return Err(Error::InadmissibleColor(fmt_c(a.0)));
        }
        Ok(self.mdim_unchecked(a.0))
    }

    pub(crate) fn mdim_unchecked(&self, a: Complex<T>) -> Complex<T> {
        let r = self.r as i64;
        let mut acc = re(self.parity_sign());
        for j in 1..r {
            acc = acc * self.qnum_int(j) / self.qnum(a + cint(r - j));
        }
        acc
    }

    /// `(-1)^(r-1) r^-1 sum_{l in H_r} q^(l b)`, equal to `1 / d(b)`.
    pub fn inv_mdim_charsum(&self, b: Color<T>) -> Complex<T> {
        let s = self
            .hr()
            .iter()
            .fold(Complex::new(T::zero(), T::zero()), |acc, l| {
                acc + self.qpow(b.0 * int::<T>(l))
            });
        s * (self.parity_sign() / self.rf())
    }

    /// Gauss sum `Delta_-` summed directly over `H_r`, and its conjugate `Delta_+`.
    pub fn gauss_delta(&self, sign: Sign) -> Complex<T> {
        let eps: i64 = if self.is_odd() { 0 } else { 1 };
        let s_minus = self
            .hr()
            .iter()
            .fold(Complex::new(T::zero(), T::zero()), |acc, k| {
                let e = int::<T>(eps * k - k) - int::<T>(k * k) / cst::<T>(2.0);
                acc + self.qpow_re(e)
            });
        let rm1 = self.r as i64 - 1;
        let pre = int::<T>(rm1 * rm1) - int::<T>(eps * eps) / cst::<T>(2.0) + int::<T>(eps);
        let d_minus = self.qpow_re(pre) * s_minus * (self.parity_sign() * self.rf());
        match sign {
            Sign::Minus => d_minus,
            Sign::Plus => d_minus.conj(),
        }
    }

    /// Closed form of `Delta_-` by `r mod 4`, and its conjugate `Delta_+`.
    pub fn delta(&self, sign: Sign) -> Complex<T> {
        let rq32 = self.qpow_re(cst::<T>(1.5)) * self.rf().powf(cst::<T>(1.5));
        let i = Complex::new(T::zero(), T::one());
        let d_minus = match self.r % 4 {
            0 => Complex::new(T::zero(), T::zero()),
            1 => i * rq32,
            2 => (i - T::one()) * rq32,
            _ => -rq32,
        };
        match sign {
            Sign::Minus => d_minus,
            Sign::Plus => d_minus.conj(),
        }
    }

    /// `Delta_{sign(f)}` for a nonzero framing.
    pub fn delta_for_framing(&self, f: i64) -> Result<Complex<T>> {
        Sign::of(f).map(|s| self.delta(s)).ok_or(Error::ZeroFraming)
    }

    /// Twist eigenvalue `theta_a^n = q^(n (a^2 - (r-1)^2) / 2)`.
    pub fn twist(&self, a: Complex<T>, n: i64) -> Complex<T> {
        let rm1 = int::<T>(self.r as i64 - 1);
        self.qpow((a * a - re(rm1 * rm1)) * (int::<T>(n) / cst::<T>(2.0)))
    }
}

/// Lobachevsky function via `1/2 sum_{n>=1} sin(2 n x) / n^2`, stopping once
/// `1/n^2 < tol`.
pub fn lobachevsky<T: Real>(x: T, tol: T) -> T {
    let tol = if tol > T::zero() {
        tol
    } else {
        T::default_tol()
    };
    let n_max = (T::one() / tol.sqrt())
        .ceil()
        .to_u64()
        .unwrap_or(u64::MAX)
        .min(100_000_000);
    let two_x = x + x;
    let mut acc = T::zero();
    for n in 1..=n_max {
        let nf = T::from_u64(n).unwrap();
        acc += (two_x * nf).sin() / (nf * nf);
    }
    acc / cst::<T>(2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(r: i64) -> QParams<f64> {
        QParams::new(r).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn rejects_small_levels() {
        assert_eq!(QParams::<f64>::new(1).unwrap_err(), Error::InvalidLevel(1));
        assert!(QParams::<f64>::with_tol(3, -1.0).is_err());
    }

    #[test]
    fn qpow_basic_values() {
        let q = q(7);
        assert!((q.qpow(c(0.0, 0.0)) - c(1.0, 0.0)).norm() < 1e-15);
        assert!((q.qpow(c(7.0, 0.0)) - c(-1.0, 0.0)).norm() < 1e-15);
        assert!((q.qpow(c(14.0, 0.0)) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn qnum_basic_values() {
        let q3 = q(3);
        assert!((q3.qnum(c(1.0, 0.0)) - c(0.0, 3f64.sqrt())).norm() < 1e-15);
        assert!(q3.qnum(c(3.0, 0.0)).norm() < 1e-15);
        assert!(q3.qnum(c(0.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn qnum_matches_definition_off_lattice() {
        let q = q(5);
        let x = c(2.3, -0.4);
        let direct = q.qpow(x) - q.qpow(-x);
        assert!((q.qnum(x) - direct).norm() < 1e-13);
        let far = c(23.3, 0.1);
        assert!((q.qnum(far) - (q.qpow(far) - q.qpow(-far))).norm() < 1e-12);
    }

    #[test]
    fn qfact_small_cases() {
        let q3 = q(3);
        assert_eq!(q3.qfact(0), c(1.0, 0.0));
        assert!((q3.qfact(2) - c(-3.0, 0.0)).norm() < 1e-14);
        let q5 = q(5);
        assert!((q5.qfact(2) * q5.qfact(2) - c(5.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn qbin_edge_cases() {
        let q5 = q(5);
        let x = c(0.37, 0.2);
        assert_eq!(q5.qbin(x, x).unwrap(), c(1.0, 0.0));
        assert!((q5.qbin(c(4.0, 0.0), c(0.0, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-13);
        let a = q5.qbin(c(3.0, 0.0), c(1.0, 0.0)).unwrap();
        let b = q5.qbin(c(3.0, 0.0), c(1.0, 0.0)).unwrap();
        assert_eq!(a, b);
        assert!(matches!(
            q5.qbin(c(2.5, 0.0), c(0.0, 0.0)),
            Err(Error::NonIntegralDifference(_))
        ));
        assert!(matches!(
            q5.qbin(c(6.0, 0.0), c(0.0, 0.0)),
            Err(Error::NonIntegralDifference(_))
        ));
    }

    #[test]
    fn mdim_direct_value_at_level_two() {
        let q2 = q(2);
        let d = q2.mdim(Color::real(0.5)).unwrap();
        assert!((d - c(-(2f64.sqrt()), 0.0)).norm() < 1e-14);
    }

    #[test]
    fn mdim_rejects_singular_colors() {
        let q5 = q(5);
        assert!(matches!(
            q5.mdim(Color::real(2.0)),
            Err(Error::InadmissibleColor(_))
        ));
        assert!(q5.mdim(Color::real(5.0)).is_ok());
        assert!(q5.mdim(Color::real(0.0)).is_ok());
    }

    #[test]
    fn mdim_is_even() {
        let q = q(6);
        let a = Color::new(c(0.31, 0.17));
        assert!((q.mdim(a).unwrap() - q.mdim(-a).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn charsum_at_zero_for_odd_level() {
        let q = q(7);
        assert!((q.inv_mdim_charsum(Color::real(0.0)) - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn gauss_delta_examples() {
        let q3 = q(3);
        let expect = c(0.0, -3.0 * 3f64.sqrt());
        assert!((q3.gauss_delta(Sign::Minus) - expect).norm() < 1e-12);
        assert!((q3.delta(Sign::Minus) - expect).norm() < 1e-12);
        assert_eq!(q(4).delta(Sign::Minus), c(0.0, 0.0));
        assert!(q(4).gauss_delta(Sign::Minus).norm() < 1e-12);
        let q5 = q(5);
        let e5 =
            c(0.0, 1.0) * 5f64.powf(1.5) * Complex::from_polar(1.0, 0.3 * std::f64::consts::PI);
        assert!((q5.delta(Sign::Minus) - e5).norm() < 1e-12);
        assert!((q5.gauss_delta(Sign::Minus) - e5).norm() < 1e-12);
    }

    #[test]
    fn delta_plus_is_conjugate() {
        for r in 2..=16 {
            let q = q(r);
            assert_eq!(q.delta(Sign::Plus), q.delta(Sign::Minus).conj());
            assert!((q.delta(Sign::Plus) - q.gauss_delta(Sign::Plus)).norm() < 1e-9);
        }
    }

    #[test]
    fn hr_set_shape() {
        let h = HrSet::new(4);
        assert_eq!(h.as_slice(), &[-3, -1, 1, 3]);
        assert!(h.contains(-1) && !h.contains(0) && !h.contains(5));
        assert!(HrSet::new(3).contains(0));
    }

    #[test]
    fn singular_distance_ignores_multiples_of_r() {
        let q = q(3);
        assert!((q.singular_distance(c(0.0, 0.0)) - 1.0).abs() < 1e-15);
        assert!((q.singular_distance(c(1.1, 0.0)) - 0.1).abs() < 1e-12);
        assert!(q.is_singular(c(2.0, 0.0)));
        assert!(!q.is_singular(c(3.0, 0.0)));
    }

    #[test]
    fn lobachevsky_values() {
        use std::f64::consts::PI;
        assert_eq!(lobachevsky(0.0, 1e-9), 0.0);
        assert!(lobachevsky(PI / 2.0, 1e-9).abs() < 1e-9);
        let oct = 8.0 * lobachevsky(PI / 4.0, 1e-12);
        assert!((oct - 3.663_862_376_708_876).abs() < 1e-9);
    }

    #[test]
    fn works_in_single_precision() {
        let q = QParams::<f32>::new(5).unwrap();
        assert!(q.tol() > 1e-6);
        let d = q.delta(Sign::Minus) - q.gauss_delta(Sign::Minus);
        assert!(d.norm() < 1e-3);
    }
}
