//! Surgery invariants `N_r` and `N_r^0`.

use super::classes::{
    chain_class, check_class, cohomology_classes, kirby_expand, CohomologyClass, KirbyColor,
};
use super::linalg::{signature, LinkingMatrix};
use crate::error::{Error, Result};
use crate::families::{chain_value, hopf, knot_p, ktilde_at, KnotEvaluator, TorusCable};
use crate::limit::LimitPolicy;
use crate::qarith::{Color, QParams, Sign};
use crate::scalar::{cint, close, cst, fmt_c, int, Real};
use num_complex::Complex;
use rayon::prelude::*;

/// Invariant of a fully colored link: surgery components first, in order,
/// then any companion components with their fixed colors.
pub trait LinkEvaluator<T: Real>: Send + Sync {
    /// Number of surgery components.
    fn arity(&self) -> usize;
    fn eval(&self, q: &QParams<T>, colors: &[Complex<T>]) -> Result<Complex<T>>;
}

/// Chain link whose first components are surgery components and whose
/// remaining components form a colored companion continuing the chain.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainLink<T> {
    framings: Vec<i64>,
    tail: Vec<(i64, Color<T>)>,
}

impl<T: Real> ChainLink<T> {
    pub fn new(framings: Vec<i64>) -> Self {
        ChainLink {
            framings,
            tail: Vec::new(),
        }
    }

    /// Appends companion components `(framing, color)` after the surgery part.
    pub fn with_tail(framings: Vec<i64>, tail: Vec<(i64, Color<T>)>) -> Self {
        ChainLink { framings, tail }
    }
}

impl<T: Real> LinkEvaluator<T> for ChainLink<T> {
    fn arity(&self) -> usize {
        self.framings.len()
    }

    fn eval(&self, q: &QParams<T>, colors: &[Complex<T>]) -> Result<Complex<T>> {
        let mut fr = self.framings.clone();
        let mut cs = colors.to_vec();
        for (a, c) in &self.tail {
            fr.push(*a);
            cs.push(c.0);
        }
        chain_value(q, &fr, &cs)
    }
}

/// One-component surgery link given by a knot evaluator.
pub struct KnotLink<K, T> {
    pub knot: K,
    pub policy: LimitPolicy<T>,
}

impl<T: Real, K: KnotEvaluator<T>> LinkEvaluator<T> for KnotLink<K, T> {
    fn arity(&self) -> usize {
        1
    }

    fn eval(&self, _q: &QParams<T>, colors: &[Complex<T>]) -> Result<Complex<T>> {
        Ok(self.knot.eval(_q, colors[0], &self.policy))
    }
}

/// Split union of links. Its invariant vanishes.
pub struct SplitLink<T> {
    parts: Vec<Box<dyn LinkEvaluator<T>>>,
}

impl<T: Real> SplitLink<T> {
    pub fn new(parts: Vec<Box<dyn LinkEvaluator<T>>>) -> Self {
        SplitLink { parts }
    }
}

impl<T: Real> LinkEvaluator<T> for SplitLink<T> {
    fn arity(&self) -> usize {
        self.parts.iter().map(|p| p.arity()).sum()
    }

    fn eval(&self, _q: &QParams<T>, _colors: &[Complex<T>]) -> Result<Complex<T>> {
        Ok(Complex::new(T::zero(), T::zero()))
    }
}

/// Fixed colors of a companion link and its linking numbers with the
/// surgery components (`linking[i][t]` for surgery `i`, companion `t`).
#[derive(Debug, Clone, PartialEq)]
pub struct Companion<T> {
    pub colors: Vec<Color<T>>,
    pub linking: Vec<Vec<i64>>,
}

/// Framed-link presentation of a closed 3-manifold, optionally with a
/// colored companion link.
pub struct SurgeryPresentation<T> {
    lk: LinkingMatrix,
    evaluator: Box<dyn LinkEvaluator<T>>,
    companion: Option<Companion<T>>,
}

impl<T: Real> SurgeryPresentation<T> {
    pub fn new(
        lk: LinkingMatrix,
        evaluator: Box<dyn LinkEvaluator<T>>,
        companion: Option<Companion<T>>,
    ) -> Result<Self> {
        if evaluator.arity() != lk.dim() {
            return Err(Error::InvalidInput(format!(
                "evaluator takes {} colors but the linking matrix has {} rows",
                evaluator.arity(),
                lk.dim()
            )));
        }
        if let Some(c) = &companion {
            if c.linking.len() != lk.dim()
                || c.linking.iter().any(|row| row.len() != c.colors.len())
            {
                return Err(Error::InvalidInput(
                    "companion linking numbers have the wrong shape".into(),
                ));
            }
        }
        Ok(SurgeryPresentation {
            lk,
            evaluator,
            companion,
        })
    }

    /// Surgery on the chain `C(a_1, .., a_n)`.
    pub fn chain(framings: &[i64]) -> Self {
        SurgeryPresentation {
            lk: LinkingMatrix::chain(framings),
            evaluator: Box::new(ChainLink::new(framings.to_vec())),
            companion: None,
        }
    }

    /// Surgery on a single framed knot.
    pub fn knot<K: KnotEvaluator<T> + 'static>(knot: K, policy: LimitPolicy<T>) -> Self {
        SurgeryPresentation {
            lk: LinkingMatrix::new(vec![vec![knot.framing()]]).unwrap(),
            evaluator: Box::new(KnotLink { knot, policy }),
            companion: None,
        }
    }

    /// Disjoint union of two chain presentations: block-diagonal linking matrix.
    pub fn split_chains(a: &[i64], b: &[i64]) -> Self {
        let lk = LinkingMatrix::block_diag(&LinkingMatrix::chain(a), &LinkingMatrix::chain(b));
        let ev = SplitLink::new(vec![
            Box::new(ChainLink::<T>::new(a.to_vec())),
            Box::new(ChainLink::<T>::new(b.to_vec())),
        ]);
        SurgeryPresentation {
            lk,
            evaluator: Box::new(ev),
            companion: None,
        }
    }

    pub fn linking_matrix(&self) -> &LinkingMatrix {
        &self.lk
    }

    pub fn companion(&self) -> Option<&Companion<T>> {
        self.companion.as_ref()
    }

    pub fn signature(&self) -> (usize, usize) {
        signature(&self.lk)
    }

    fn check(&self, q: &QParams<T>, class: &CohomologyClass<T>) -> Result<()> {
        q.require_surgery_level()?;
        if self.lk.dim() == 0
            && self
                .companion
                .as_ref()
                .is_none_or(|c| c.colors.is_empty())
        {
            return Err(Error::NotComputable(
                "empty surgery link without a colored companion".into(),
            ));
        }
        if let Some(c) = &self.companion {
            for col in &c.colors {
                if !q.admissible(*col) {
                    return Err(Error::InadmissibleColor(fmt_c(col.0)));
                }
            }
        }
        let comp = self
            .companion
            .as_ref()
            .map(|c| (c.colors.as_slice(), c.linking.as_slice()));
        check_class(&self.lk, class, comp, q.tol())?;
        if !class.is_computable(q.tol()) {
            return Err(Error::NotComputable(class.describe()));
        }
        Ok(())
    }

    /// Kirby-color expanded sum `sum prod d(a_i + k_i) N(L(a + k) u T)`.
    fn kirby_sum(
        &self,
        q: &QParams<T>,
        class: &CohomologyClass<T>,
        lifts: &[i64],
    ) -> Result<Complex<T>> {
        let n = self.lk.dim();
        let lifts: Vec<i64> = if lifts.is_empty() {
            vec![0; n]
        } else {
            lifts.to_vec()
        };
        if lifts.len() != n {
            return Err(Error::InvalidInput(format!(
                "{} lift offsets for {n} components",
                lifts.len()
            )));
        }
        let kirby: Vec<KirbyColor<T>> = class
            .values()
            .iter()
            .zip(&lifts)
            .map(|(v, l)| kirby_expand(q, *v, *l))
            .collect::<Result<_>>()?;
        let r = q.r() as usize;
        let total = r
            .checked_pow(n as u32)
            .ok_or_else(|| Error::RangeError("term count overflows".into()))?;
        let terms: Vec<Complex<T>> = (0..total)
            .into_par_iter()
            .map(|mut idx| {
                let mut colors = Vec::with_capacity(n);
                let mut w = Complex::new(T::one(), T::zero());
                for kc in &kirby {
                    let (c, d) = kc.terms[idx % r];
                    idx /= r;
                    colors.push(c.0);
                    w *= d;
                }
                Ok(w * self.evaluator.eval(q, &colors)?)
            })
            .collect::<Result<_>>()?;
        Ok(terms
            .into_iter()
            .fold(Complex::new(T::zero(), T::zero()), |a, b| a + b))
    }

    fn delta_norm(&self, q: &QParams<T>) -> Complex<T> {
        let (p, s) = self.signature();
        q.delta(Sign::Plus).powu(p as u32) * q.delta(Sign::Minus).powu(s as u32)
    }
}

/// `N_r(M, T, w)`: the Kirby-color expanded invariant of `L u T` divided by
/// `Delta_+^p Delta_-^s`. Empty `lifts` selects the canonical lift.
pub fn nr<T: Real>(
    q: &QParams<T>,
    pres: &SurgeryPresentation<T>,
    class: &CohomologyClass<T>,
    lifts: &[i64],
) -> Result<Complex<T>> {
    pres.check(q, class)?;
    Ok(pres.kirby_sum(q, class, lifts)? / pres.delta_norm(q))
}

/// `N_r` through H-stabilization: the companion contains an `alpha`-colored
/// meridian of a `beta`-colored edge, and the expanded sum is renormalized by
/// `d(beta) / ((-1)^(r-1) r q^(alpha beta))`.
pub fn nr_h_stabilized<T: Real>(
    q: &QParams<T>,
    pres: &SurgeryPresentation<T>,
    class: &CohomologyClass<T>,
    alpha: Color<T>,
    beta: Color<T>,
) -> Result<Complex<T>> {
    pres.check(q, class)?;
    let s = pres.kirby_sum(q, class, &[])?;
    let h = hopf(q, alpha.0, beta.0);
    Ok(q.mdim(beta)? * s / (h * pres.delta_norm(q)))
}

/// Which character weights `P(k)` in the knot-surgery formula for `N_r^0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weighting {
    /// `q^k`
    Forward,
    /// `q^-k`
    Backward,
}

/// `N_r^0` of surgery on a framed knot:
/// `Delta_sign(f)^-1 sum_{k in H_r} q^(+-k) P(k)`.
pub fn nr0_knot_surgery<T: Real, K: KnotEvaluator<T> + ?Sized>(
    q: &QParams<T>,
    knot: &K,
    weighting: Weighting,
    policy: &LimitPolicy<T>,
) -> Result<Complex<T>> {
    let f = knot.framing();
    if f == 0 {
        return Err(Error::ZeroFraming);
    }
    q.require_surgery_level()?;
    let delta = q.delta_for_framing(f)?;
    let s = q
        .hr()
        .iter()
        .fold(Complex::new(T::zero(), T::zero()), |acc, k| {
            let w = match weighting {
                Weighting::Forward => q.qpow(cint(k)),
                Weighting::Backward => q.qpow(cint(-k)),
            };
            acc + w * knot_p(q, knot, cint(k), policy)
        });
    Ok(s / delta)
}

/// `N_r^0` of surgery on a knot with `K~(1/X) = K~(X)`:
/// `r f theta_0^f / (2 {1} Delta) sum_{n in H_r} q^(2 f n^2) {2n}^2 K~(q^(2n))`.
pub fn nr0_symmetric_knot<T: Real, K: KnotEvaluator<T> + ?Sized>(
    q: &QParams<T>,
    knot: &K,
    policy: &LimitPolicy<T>,
) -> Result<Complex<T>> {
    q.require_odd()?;
    let f = knot.framing();
    if f == 0 {
        return Err(Error::ZeroFraming);
    }
    let sym_tol = q.tol() * cst::<T>(1e3);
    let mut worst = T::zero();
    for a in [
        Complex::new(cst::<T>(0.31), cst::<T>(0.17)),
        Complex::new(cst::<T>(0.77), cst::<T>(-0.23)),
        Complex::new(cst::<T>(1.43), cst::<T>(0.05)),
    ] {
        let x = ktilde_at(q, knot, a, policy)?;
        let y = ktilde_at(q, knot, -a, policy)?;
        let scale = T::one().max(x.norm());
        worst = worst.max((x - y).norm() / scale);
    }
    if worst > sym_tol {
        return Err(Error::AsymmetricKnot(worst.to_f64().unwrap_or(f64::NAN)));
    }
    let delta = q.delta_for_framing(f)?;
    let rm1 = int::<T>(q.r() as i64 - 1);
    let theta0_f = q.qpow_re(-(rm1 * rm1) * int::<T>(f) / cst::<T>(2.0));
    let mut s = Complex::new(T::zero(), T::zero());
    for n in q.hr().iter() {
        let two_n = cint::<T>(2 * n);
        let qn = q.qnum(two_n);
        s += q.qpow(cint(2 * f * n * n)) * qn * qn * ktilde_at(q, knot, two_n, policy)?;
    }
    let pre = theta0_f * int::<T>(q.r() as i64 * f) / (q.qnum_int(1) * delta * cst::<T>(2.0));
    Ok(pre * s)
}

/// Value of one class in a lens-space sum.
#[derive(Debug, Clone, PartialEq)]
pub struct LensEntry<T> {
    pub class: CohomologyClass<T>,
    pub value: Complex<T>,
}

/// Per-class values over the nonzero classes of a chain presentation and
/// their sum.
#[derive(Debug, Clone, PartialEq)]
pub struct LensSum<T> {
    pub entries: Vec<LensEntry<T>>,
    pub sum: Complex<T>,
}

impl<T: Real> LensSum<T> {
    /// Values rounded to `1e-7` and sorted lexicographically by `(re, im)`.
    pub fn multiset(&self) -> Vec<(i64, i64)> {
        let key = |x: T| (x.to_f64().unwrap_or(f64::NAN) * 1e7).round() as i64;
        let mut v: Vec<(i64, i64)> = self
            .entries
            .iter()
            .map(|e| (key(e.value.re), key(e.value.im)))
            .collect();
        v.sort_unstable();
        v
    }

    /// Values sorted by `(re, im)` without rounding.
    pub fn sorted_values(&self) -> Vec<Complex<T>> {
        let mut v: Vec<Complex<T>> = self.entries.iter().map(|e| e.value).collect();
        v.sort_by(|a, b| {
            a.re.partial_cmp(&b.re)
                .unwrap()
                .then(a.im.partial_cmp(&b.im).unwrap())
        });
        v
    }
}

/// `S_r = sum_{w != 0} N_r(M, empty, w)` for surgery on a chain.
pub fn lens_sum<T: Real>(q: &QParams<T>, framings: &[i64]) -> Result<LensSum<T>> {
    let pres = SurgeryPresentation::chain(framings);
    let p = pres.lk.det();
    if p.magnitude() < &2u32.into() {
        return Err(Error::InvalidInput(format!(
            "chain presents a manifold with |det| = {p} < 2"
        )));
    }
    let mut classes = cohomology_classes::<T>(&pres.lk)?;
    classes.retain(|c| !c.is_zero(q.tol()));
    classes.sort_by(|a, b| {
        let ka: Vec<T> = a.values().iter().map(|v| v.value().re).collect();
        let kb: Vec<T> = b.values().iter().map(|v| v.value().re).collect();
        ka.partial_cmp(&kb).unwrap()
    });
    let mut entries = Vec::with_capacity(classes.len());
    let mut sum = Complex::new(T::zero(), T::zero());
    for class in classes {
        let value = nr(q, &pres, &class, &[])?;
        sum += value;
        entries.push(LensEntry { class, value });
    }
    Ok(LensSum { entries, sum })
}

/// `N_r` of surgery on the chain `C(a_1, .., a_n)` at the class with first
/// meridian value `2k/|det|`.
pub fn chain_surgery_nr<T: Real>(
    q: &QParams<T>,
    framings: &[i64],
    k: i64,
    lifts: &[i64],
) -> Result<Complex<T>> {
    let class = chain_class::<T>(framings, k)?;
    nr(q, &SurgeryPresentation::chain(framings), &class, lifts)
}

/// `N_r` of surgery on the `(2, 2n+1)` torus knot with `f` extra twists at
/// the class `2c / (f + 2n + 1)`.
pub fn torus_surgery_nr<T: Real>(
    q: &QParams<T>,
    f: i64,
    n: u32,
    c: i64,
    lift: i64,
    policy: &LimitPolicy<T>,
) -> Result<Complex<T>> {
    let p = f + 2 * n as i64 + 1;
    if p == 0 {
        return Err(Error::DegenerateFraming);
    }
    let pres = SurgeryPresentation::knot(TorusCable { f, n }, *policy);
    let class = CohomologyClass::new(vec![cint::<T>(2 * c) / int::<T>(p)]);
    nr(q, &pres, &class, &[lift])
}

/// True when `N_r^0` of the framed unknot is one, the normalization check
/// for `S^3`.
pub fn sphere_normalization_holds<T: Real>(
    q: &QParams<T>,
    framing: i64,
    policy: &LimitPolicy<T>,
) -> Result<bool> {
    use crate::families::FramedUnknot;
    let v = nr0_knot_surgery(q, &FramedUnknot { framing }, Weighting::Forward, policy)?;
    Ok(close(
        v,
        Complex::new(T::one(), T::zero()),
        q.tol() * cst::<T>(100.0),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(r: i64) -> QParams<f64> {
        QParams::new(r).unwrap()
    }

    #[test]
    fn empty_link_with_unknot_companion() {
        let q5 = q(5);
        let a = Color(Complex::new(0.3, 0.1));
        let pres = SurgeryPresentation::new(
            LinkingMatrix::empty(),
            Box::new(ChainLink::with_tail(vec![], vec![(0, a)])),
            Some(Companion {
                colors: vec![a],
                linking: vec![],
            }),
        )
        .unwrap();
        let v = nr(&q5, &pres, &CohomologyClass::new(vec![]), &[]).unwrap();
        assert!((v - q5.mdim(a).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn refuses_levels_divisible_by_four() {
        let q4 = q(4);
        let pres = SurgeryPresentation::chain(&[5]);
        let class = CohomologyClass::new(vec![Complex::new(0.4, 0.0)]);
        assert_eq!(
            nr(&q4, &pres, &class, &[]).unwrap_err(),
            Error::EvenLevelMod4(4)
        );
    }

    #[test]
    fn refuses_integral_classes() {
        let q5 = q(5);
        let pres = SurgeryPresentation::chain(&[5]);
        let class = CohomologyClass::new(vec![Complex::new(0.0, 0.0)]);
        assert!(matches!(
            nr(&q5, &pres, &class, &[]),
            Err(Error::NotComputable(_))
        ));
    }

    #[test]
    fn refuses_non_classes() {
        let q5 = q(5);
        let pres = SurgeryPresentation::chain(&[5]);
        let class = CohomologyClass::new(vec![Complex::new(0.3, 0.0)]);
        assert!(matches!(
            nr(&q5, &pres, &class, &[]),
            Err(Error::InvalidClass(_))
        ));
    }

    #[test]
    fn torus_surgery_degenerate_and_integral() {
        let q5 = q(5);
        let pol = LimitPolicy::default();
        assert_eq!(
            torus_surgery_nr(&q5, -3, 1, 1, 0, &pol).unwrap_err(),
            Error::DegenerateFraming
        );
        assert!(matches!(
            torus_surgery_nr(&q5, -2, 1, 0, 0, &pol),
            Err(Error::NotComputable(_))
        ));
    }

    #[test]
    fn zero_framing_refused() {
        let q5 = q(5);
        let pol = LimitPolicy::default();
        let k = TorusCable { f: -3, n: 1 };
        assert_eq!(
            nr0_knot_surgery(&q5, &k, Weighting::Forward, &pol).unwrap_err(),
            Error::ZeroFraming
        );
        assert_eq!(
            nr0_symmetric_knot(&q5, &k, &pol).unwrap_err(),
            Error::ZeroFraming
        );
    }
}
