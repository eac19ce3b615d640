//! Cohomology classes with values in `C / 2Z` and Kirby colors.

use super::linalg::{smith_normal_form, LinkingMatrix};
use crate::error::{Error, Result};
use crate::qarith::{Color, QParams};
use crate::scalar::{cint, cst, fmt_c, Real};
use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Element of `C / 2Z`, stored with real part in `[0, 2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColorClass<T>(Complex<T>);

impl<T: Real> ColorClass<T> {
    pub fn new(z: Complex<T>) -> Self {
        let two = cst::<T>(2.0);
        let mut x = z.re - two * (z.re / two).floor();
        if x >= two || x < T::zero() {
            x = T::zero();
        }
        ColorClass(Complex::new(x, z.im))
    }

    pub fn value(self) -> Complex<T> {
        self.0
    }

    /// True when the class lies in `Z / 2Z`.
    pub fn is_integral(self, tol: T) -> bool {
        let x = self.0.re;
        self.0.im.abs() <= tol
            && (x.abs() <= tol || (x - T::one()).abs() <= tol || (x - cst::<T>(2.0)).abs() <= tol)
    }

    /// True when the class is `0` in `C / 2Z`.
    pub fn is_zero(self, tol: T) -> bool {
        let x = self.0.re;
        self.0.im.abs() <= tol && (x.abs() <= tol || (x - cst::<T>(2.0)).abs() <= tol)
    }

    /// Equality in `C / 2Z` within `tol`.
    pub fn approx_eq(self, other: ColorClass<T>, tol: T) -> bool {
        ColorClass::new(self.0 - other.0).is_zero(tol)
    }
}

/// Meridian values of a class, one per surgery component.
#[derive(Debug, Clone, PartialEq)]
pub struct CohomologyClass<T> {
    values: Vec<ColorClass<T>>,
}

impl<T: Real> CohomologyClass<T> {
    pub fn new(values: Vec<Complex<T>>) -> Self {
        CohomologyClass {
            values: values.into_iter().map(ColorClass::new).collect(),
        }
    }

    pub fn values(&self) -> &[ColorClass<T>] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// True when no surgery component carries an integral value.
    pub fn is_computable(&self, tol: T) -> bool {
        self.values.iter().all(|v| !v.is_integral(tol))
    }

    pub fn is_zero(&self, tol: T) -> bool {
        self.values.iter().all(|v| v.is_zero(tol))
    }

    /// The class on the mirrored chain: component `j` gets `(-1)^j conj(x_j)`.
    pub fn chain_mirror(&self) -> Self {
        CohomologyClass::new(
            self.values
                .iter()
                .enumerate()
                .map(|(j, v)| if j % 2 == 0 { v.0.conj() } else { -v.0.conj() })
                .collect(),
        )
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.values.iter().map(|v| fmt_c(v.0)).collect();
        format!("({})", parts.join(", "))
    }
}

fn to_t<T: Real>(x: &BigRational) -> T {
    T::from_f64(x.to_f64().unwrap_or(f64::NAN)).unwrap()
}

fn reduce_mod2(x: BigRational) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    let k = (&x / &two).floor();
    x - k * two
}

/// All classes of `H^1(M; C/2Z)` for a rational homology sphere, as exact
/// rationals in `[0, 2)`.
pub fn cohomology_classes_exact(lk: &LinkingMatrix) -> Result<Vec<Vec<BigRational>>> {
    let n = lk.dim();
    let snf = smith_normal_form(lk);
    if snf.diag.iter().any(|d| d.is_zero()) {
        return Err(Error::InfiniteFamily);
    }
    let mut out = Vec::new();
    let mut m = vec![BigInt::zero(); n];
    loop {
        let y: Vec<BigRational> = (0..n)
            .map(|i| BigRational::new(BigInt::from(2) * &m[i], snf.diag[i].clone()))
            .collect();
        let x: Vec<BigRational> = (0..n)
            .map(|j| {
                let s = (0..n).fold(BigRational::zero(), |acc, i| {
                    acc + BigRational::from_integer(snf.q[j][i].clone()) * &y[i]
                });
                reduce_mod2(s)
            })
            .collect();
        out.push(x);
        let mut i = 0;
        loop {
            if i == n {
                return Ok(out);
            }
            m[i] += 1;
            if m[i] < snf.diag[i] {
                break;
            }
            m[i] = BigInt::zero();
            i += 1;
        }
    }
}

/// All classes of `H^1(M; C/2Z)`; there are exactly `|det lk|` of them.
pub fn cohomology_classes<T: Real>(lk: &LinkingMatrix) -> Result<Vec<CohomologyClass<T>>> {
    Ok(cohomology_classes_exact(lk)?
        .into_iter()
        .map(|x| CohomologyClass::new(x.iter().map(|v| Complex::new(to_t(v), T::zero())).collect()))
        .collect())
}

/// Class on the chain `C(a_1, .., a_n)` whose first meridian value is
/// `2k/p`, `p = |det|`; the rest follows from `lk x = 0` row by row.
pub fn chain_class_exact(framings: &[i64], k: i64) -> Result<Vec<BigRational>> {
    let lk = LinkingMatrix::chain(framings);
    let p = lk.det().abs();
    if p.is_zero() {
        return Err(Error::InfiniteFamily);
    }
    let n = framings.len();
    let mut x = vec![BigRational::new(BigInt::from(2 * k), p)];
    if n > 1 {
        x.push(-BigRational::from_integer(BigInt::from(framings[0])) * &x[0]);
    }
    for j in 1..n.saturating_sub(1) {
        let next = -BigRational::from_integer(BigInt::from(framings[j])) * &x[j] - &x[j - 1];
        x.push(next);
    }
    for i in 0..n {
        let mut s = BigRational::from_integer(BigInt::from(framings[i])) * &x[i];
        if i > 0 {
            s += &x[i - 1];
        }
        if i + 1 < n {
            s += &x[i + 1];
        }
        let half = s / BigRational::from_integer(BigInt::from(2));
        if !half.is_integer() {
            return Err(Error::InvalidClass(format!(
                "first meridian value 2*{k}/|det| does not extend to a class on this chain"
            )));
        }
    }
    Ok(x.into_iter().map(reduce_mod2).collect())
}

pub fn chain_class<T: Real>(framings: &[i64], k: i64) -> Result<CohomologyClass<T>> {
    let x = chain_class_exact(framings, k)?;
    Ok(CohomologyClass::new(
        x.iter().map(|v| Complex::new(to_t(v), T::zero())).collect(),
    ))
}

/// Checks `lk x + lk_T c = 0 mod 2` for surgery values `x` and companion
/// colors `c`.
pub fn check_class<T: Real>(
    lk: &LinkingMatrix,
    class: &CohomologyClass<T>,
    companion: Option<(&[Color<T>], &[Vec<i64>])>,
    tol: T,
) -> Result<()> {
    let n = lk.dim();
    if class.len() != n {
        return Err(Error::InvalidClass(format!(
            "class has {} values for {} surgery components",
            class.len(),
            n
        )));
    }
    let two = cst::<T>(2.0);
    for i in 0..n {
        let mut s = Complex::new(T::zero(), T::zero());
        for j in 0..n {
            s += class.values[j].0 * cst::<T>(lk.get(i, j) as f64);
        }
        if let Some((colors, linking)) = companion {
            for (t, c) in colors.iter().enumerate() {
                s += c.0 * cst::<T>(linking[i][t] as f64);
            }
        }
        let h = s / two;
        let ok =
            h.im.abs() <= tol * cst::<T>(8.0) && (h.re - h.re.round()).abs() <= tol * cst::<T>(8.0);
        if !ok {
            return Err(Error::InvalidClass(format!(
                "row {i} of lk.x is {} which is not in 2Z",
                fmt_c(s)
            )));
        }
    }
    Ok(())
}

/// Weighted colors `sum_{k in H_r} d(a + k) [a + k]` for a lift `a` of the
/// degree.
#[derive(Debug, Clone, PartialEq)]
pub struct KirbyColor<T> {
    pub degree: ColorClass<T>,
    pub lift: Color<T>,
    pub terms: Vec<(Color<T>, Complex<T>)>,
}

/// Kirby color of the given degree, lifted to `canonical + lift_offset`.
pub fn kirby_expand<T: Real>(
    q: &QParams<T>,
    degree: ColorClass<T>,
    lift_offset: i64,
) -> Result<KirbyColor<T>> {
    if lift_offset.rem_euclid(2) != 0 {
        return Err(Error::InvalidInput(format!(
            "lift offset {lift_offset} must be even"
        )));
    }
    if degree.is_integral(q.tol()) {
        return Err(Error::IntegralDegree(fmt_c(degree.0)));
    }
    let lift = Color(degree.0 + cint(lift_offset));
    let terms = q
        .hr()
        .iter()
        .map(|k| {
            let c = lift.shifted(k);
            q.mdim(c).map(|d| (c, d))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(KirbyColor {
        degree,
        lift,
        terms,
    })
}
