//! Colored-graph calculus: 6j-symbols, twists, fusion and an evaluator for
//! expression trees built from normalized primitives.

use crate::error::{Error, Result};
use crate::qarith::{Color, QParams};
use crate::scalar::{cint, cst, fmt_c, int, re, Real};
use num_complex::Complex;

/// Whether a zero came out of arithmetic or from an inadmissible vertex or
/// a split graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalStatus {
    Computed,
    StructuralZero,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluated<T> {
    pub value: Complex<T>,
    pub status: EvalStatus,
}

impl<T: Real> Evaluated<T> {
    pub fn computed(value: Complex<T>) -> Self {
        Evaluated {
            value,
            status: EvalStatus::Computed,
        }
    }

    pub fn structural_zero() -> Self {
        Evaluated {
            value: Complex::new(T::zero(), T::zero()),
            status: EvalStatus::StructuralZero,
        }
    }

    pub fn is_structural_zero(&self) -> bool {
        self.status == EvalStatus::StructuralZero
    }

    fn times(self, other: Evaluated<T>) -> Evaluated<T> {
        if self.is_structural_zero() || other.is_structural_zero() {
            Evaluated::structural_zero()
        } else {
            Evaluated::computed(self.value * other.value)
        }
    }

    fn scaled(self, s: Complex<T>) -> Evaluated<T> {
        if self.is_structural_zero() {
            self
        } else {
            Evaluated::computed(self.value * s)
        }
    }
}

/// Expression tree over the normalized primitives and the gluing rules.
///
/// Color slots are numbered in pre-order over every color field of the
/// tree, which is what [`SkeinExpr::ReverseEdge`] indexes.
#[derive(Debug, Clone, PartialEq)]
pub enum SkeinExpr<T> {
    Unknot(Color<T>),
    /// Theta graph, colors read as all incoming at one vertex.
    Theta(Color<T>, Color<T>, Color<T>),
    Tet([Color<T>; 6]),
    Hopf(Color<T>, Color<T>),
    /// Connected sum along an edge of color `color` present in both parts.
    EdgeSum {
        left: Box<SkeinExpr<T>>,
        right: Box<SkeinExpr<T>>,
        color: Color<T>,
    },
    /// Connected sum along a trivalent vertex.
    VertexSum {
        left: Box<SkeinExpr<T>>,
        right: Box<SkeinExpr<T>>,
        colors: [Color<T>; 3],
    },
    Disjoint(Box<SkeinExpr<T>>, Box<SkeinExpr<T>>),
    TwistEdge {
        child: Box<SkeinExpr<T>>,
        color: Color<T>,
        n: i64,
    },
    TwistVertex {
        child: Box<SkeinExpr<T>>,
        colors: [Color<T>; 3],
        n: i64,
    },
    /// Reverses the orientation of the edge in slot `edge` of `child`,
    /// which negates its color.
    ReverseEdge {
        child: Box<SkeinExpr<T>>,
        edge: usize,
    },
}

impl<T: Real> SkeinExpr<T> {
    pub fn edge_sum(left: Self, right: Self, color: Color<T>) -> Self {
        SkeinExpr::EdgeSum {
            left: Box::new(left),
            right: Box::new(right),
            color,
        }
    }

    pub fn vertex_sum(left: Self, right: Self, colors: [Color<T>; 3]) -> Self {
        SkeinExpr::VertexSum {
            left: Box::new(left),
            right: Box::new(right),
            colors,
        }
    }

    pub fn disjoint(left: Self, right: Self) -> Self {
        SkeinExpr::Disjoint(Box::new(left), Box::new(right))
    }

    pub fn twist_edge(child: Self, color: Color<T>, n: i64) -> Self {
        SkeinExpr::TwistEdge {
            child: Box::new(child),
            color,
            n,
        }
    }

    pub fn twist_vertex(child: Self, colors: [Color<T>; 3], n: i64) -> Self {
        SkeinExpr::TwistVertex {
            child: Box::new(child),
            colors,
            n,
        }
    }

    pub fn reverse_edge(child: Self, edge: usize) -> Self {
        SkeinExpr::ReverseEdge {
            child: Box::new(child),
            edge,
        }
    }

    /// All color slots in pre-order.
    pub fn colors(&self) -> Vec<Color<T>> {
        let mut out = Vec::new();
        self.collect_colors(&mut out);
        out
    }

    fn collect_colors(&self, out: &mut Vec<Color<T>>) {
        match self {
            SkeinExpr::Unknot(a) => out.push(*a),
            SkeinExpr::Theta(a, b, c) => out.extend([*a, *b, *c]),
            SkeinExpr::Tet(js) => out.extend(js.iter().copied()),
            SkeinExpr::Hopf(a, b) => out.extend([*a, *b]),
            SkeinExpr::EdgeSum { left, right, color } => {
                out.push(*color);
                left.collect_colors(out);
                right.collect_colors(out);
            }
            SkeinExpr::VertexSum {
                left,
                right,
                colors,
            } => {
                out.extend(colors.iter().copied());
                left.collect_colors(out);
                right.collect_colors(out);
            }
            SkeinExpr::Disjoint(l, r) => {
                l.collect_colors(out);
                r.collect_colors(out);
            }
            SkeinExpr::TwistEdge { child, color, .. } => {
                out.push(*color);
                child.collect_colors(out);
            }
            SkeinExpr::TwistVertex { child, colors, .. } => {
                out.extend(colors.iter().copied());
                child.collect_colors(out);
            }
            SkeinExpr::ReverseEdge { child, .. } => child.collect_colors(out),
        }
    }

    /// Copy of the tree with the color in `slot` negated.
    pub fn with_slot_negated(&self, slot: usize) -> Result<Self> {
        let mut out = self.clone();
        let mut counter = 0usize;
        if out.negate_slot(slot, &mut counter) {
            Ok(out)
        } else {
            Err(Error::RangeError(format!(
                "edge slot {slot} out of range ({counter} slots)"
            )))
        }
    }

    fn negate_slot(&mut self, slot: usize, counter: &mut usize) -> bool {
        let hit = |c: &mut Color<T>, counter: &mut usize| {
            let found = *counter == slot;
            if found {
                *c = -*c;
            }
            *counter += 1;
            found
        };
        match self {
            SkeinExpr::Unknot(a) => hit(a, counter),
            SkeinExpr::Theta(a, b, c) => hit(a, counter) || hit(b, counter) || hit(c, counter),
            SkeinExpr::Tet(js) => js.iter_mut().any(|j| hit(j, counter)),
            SkeinExpr::Hopf(a, b) => hit(a, counter) || hit(b, counter),
            SkeinExpr::EdgeSum { left, right, color } => {
                hit(color, counter)
                    || left.negate_slot(slot, counter)
                    || right.negate_slot(slot, counter)
            }
            SkeinExpr::VertexSum {
                left,
                right,
                colors,
            } => {
                colors.iter_mut().any(|c| hit(c, counter))
                    || left.negate_slot(slot, counter)
                    || right.negate_slot(slot, counter)
            }
            SkeinExpr::Disjoint(l, r) => {
                l.negate_slot(slot, counter) || r.negate_slot(slot, counter)
            }
            SkeinExpr::TwistEdge { child, color, .. } => {
                hit(color, counter) || child.negate_slot(slot, counter)
            }
            SkeinExpr::TwistVertex { child, colors, .. } => {
                colors.iter_mut().any(|c| hit(c, counter)) || child.negate_slot(slot, counter)
            }
            SkeinExpr::ReverseEdge { child, .. } => child.negate_slot(slot, counter),
        }
    }
}

/// One channel `gamma = a + b + k` of the fusion rule. `weight` is `d(gamma)`,
/// or `None` when the channel is inadmissible.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FusionTerm<T> {
    pub gamma: Color<T>,
    pub weight: Option<Complex<T>>,
}

/// True when `a + b + c` is an element of `H_r`.
pub fn vertex_admissible<T: Real>(q: &QParams<T>, a: Color<T>, b: Color<T>, c: Color<T>) -> bool {
    q.as_integer(a.0 + b.0 + c.0)
        .map(|s| q.hr().contains(s))
        .unwrap_or(false)
}

fn require_admissible<T: Real>(q: &QParams<T>, cs: &[Color<T>]) -> Result<()> {
    for c in cs {
        if !q.admissible(*c) {
            return Err(Error::InadmissibleColor(fmt_c(c.0)));
        }
    }
    Ok(())
}

/// `q^(n (a^2 - (r-1)^2) / 2)`.
pub fn twist_coeff<T: Real>(q: &QParams<T>, a: Color<T>, n: i64) -> Complex<T> {
    q.twist(a.0, n)
}

/// `q^(n (c^2 - a^2 - b^2 + (r-1)^2) / 4)`.
pub fn vertex_twist_coeff<T: Real>(
    q: &QParams<T>,
    a: Color<T>,
    b: Color<T>,
    c: Color<T>,
    n: i64,
) -> Complex<T> {
    let rm1 = int::<T>(q.r() as i64 - 1);
    let e = c.0 * c.0 - a.0 * a.0 - b.0 * b.0 + re(rm1 * rm1);
    q.qpow(e * (int::<T>(n) / cst::<T>(4.0)))
}

/// The `r` channels of the fusion of `a` and `b`.
pub fn fuse<T: Real>(q: &QParams<T>, a: Color<T>, b: Color<T>) -> Vec<FusionTerm<T>> {
    q.hr()
        .iter()
        .map(|k| {
            let gamma = Color(a.0 + b.0 + cint(k));
            FusionTerm {
                gamma,
                weight: q.mdim(gamma).ok(),
            }
        })
        .collect()
}

/// The 6j-symbol with colors `j1..j6`.
///
/// Returns a structural zero when one of the four vertex conditions fails.
pub fn sixj<T: Real>(q: &QParams<T>, j: [Color<T>; 6]) -> Result<Evaluated<T>> {
    require_admissible(q, &j)?;
    let jj = |i: usize| j[i - 1].0;
    let r = q.r() as i64;
    let rm1 = cint::<T>(r - 1);
    let half = cst::<T>(0.5);
    let hr = q.hr();
    let in_hr = |z: Complex<T>| q.as_integer(z).map(|s| hr.contains(s)).unwrap_or(false);
    if !(in_hr(jj(1) + jj(2) - jj(3))
        && in_hr(jj(3) + jj(4) - jj(5))
        && in_hr(jj(2) + jj(4) - jj(6))
        && in_hr(jj(1) + jj(6) - jj(5)))
    {
        return Ok(Evaluated::structural_zero());
    }

    let a = |x: usize, y: usize, z: usize| (jj(x) + jj(y) + jj(z) + rm1 * cst::<T>(3.0)) * half;
    let b = |x: usize, y: usize, z: usize| (jj(x) + jj(y) - jj(z) + rm1) * half;
    let int_arg = |z: Complex<T>, what: &str| -> Result<i64> {
        q.as_integer(z)
            .ok_or_else(|| Error::RangeError(format!("{what} = {} is not an integer", fmt_c(z))))
    };
    let fact_arg = |z: Complex<T>, what: &str| -> Result<u32> {
        let n = int_arg(z, what)?;
        if (0..r).contains(&n) {
            Ok(n as u32)
        } else {
            Err(Error::RangeError(format!(
                "factorial argument {what} = {n} outside 0..={}",
                r - 1
            )))
        }
    };

    let b345 = fact_arg(b(3, 4, 5), "B345")?;
    let b123 = fact_arg(b(1, 2, 3), "B123")?;
    let b246 = fact_arg(b(2, 4, 6), "B246")?;
    let b165 = fact_arg(b(1, 6, 5), "B165")?;
    let m0 = int_arg((jj(3) + jj(6) - jj(2) - jj(5)) * half, "m")?;
    let lo = m0.max(0);
    let hi = (b345 as i64).min(b165 as i64);

    let sign = |e: i64| {
        if e.rem_euclid(2) == 0 {
            T::one()
        } else {
            -T::one()
        }
    };
    let fact_ratio = q.qfact(b345) * q.qfact(b123) / (q.qfact(b246) * q.qfact(b165));
    let x3 = jj(3) + rm1;
    let den = q.qbin(x3, b(3, 5, 4))?;
    if den.norm() <= q.tol() {
        return Err(Error::RangeError("vanishing normalizing binomial".into()));
    }
    let pre = fact_ratio * q.qbin(x3, a(1, 2, 3) + cint(1 - r))? / den * sign(r - 1 + b165 as i64);

    let a165 = a(1, 6, 5);
    let b156 = b(1, 5, 6);
    let b264 = b(2, 6, 4);
    let b453 = b(4, 5, 3);
    let b462 = b(4, 6, 2);
    let b345c = cint::<T>(b345 as i64);
    let mut sum = Complex::new(T::zero(), T::zero());
    for z in lo..=hi {
        let zc = cint::<T>(z);
        let t = q.qbin(a165 + cint(1), jj(5) + zc + cint(r))?
            * q.qbin(b156 + zc, b156)?
            * q.qbin(b264 + b345c - zc, b264)?
            * q.qbin(b453 + zc, b462)?;
        sum += t * sign(z);
    }
    Ok(Evaluated::computed(pre * sum))
}

fn log_qfact_abs<T: Real>(q: &QParams<T>, k: u32) -> T {
    let rf = int::<T>(q.r() as i64);
    (1..=k as i64).fold(T::zero(), |acc, j| {
        acc + (cst::<T>(2.0) * (T::PI() * int::<T>(j) / rf).sin()).ln()
    })
}

/// The all-zero 6j-symbol as the positive sum
/// `r^2 sum_{z=0}^{(r-1)/2} ({z}! {(r-1)/2 - z}!)^-4`.
pub fn sixj_zero<T: Real>(q: &QParams<T>) -> Result<Complex<T>> {
    q.require_odd()?;
    let h = (q.r() - 1) / 2;
    let mut acc = Complex::new(T::zero(), T::zero());
    for z in 0..=h {
        let p = q.qfact(z) * q.qfact(h - z);
        let p2 = p * p;
        acc += (p2 * p2).inv();
    }
    let rf = int::<T>(q.r() as i64);
    Ok(acc * (rf * rf))
}

/// `log sixj_zero`, summed in log space so that large `r` does not overflow.
pub fn log_sixj_zero<T: Real>(q: &QParams<T>) -> Result<T> {
    q.require_odd()?;
    let h = (q.r() - 1) / 2;
    let mut logs = Vec::with_capacity(h as usize + 1);
    let mut lf = Vec::with_capacity(h as usize + 1);
    for k in 0..=h {
        lf.push(log_qfact_abs(q, k));
    }
    for z in 0..=h as usize {
        logs.push(-cst::<T>(4.0) * (lf[z] + lf[h as usize - z]));
    }
    let mx = logs.iter().copied().fold(T::neg_infinity(), T::max);
    let s = logs.iter().fold(T::zero(), |acc, l| acc + (*l - mx).exp());
    Ok(mx + s.ln() + cst::<T>(2.0) * int::<T>(q.r() as i64).ln())
}

/// `r^3 sum_{k in H_r} 1/d(a+k)`: the factor by which an encircling
/// Kirby-colored meridian of degree `a` can be erased. Equals `r^3`.
pub fn encircle_coefficient<T: Real>(q: &QParams<T>, a: Color<T>) -> Result<Complex<T>> {
    q.require_odd()?;
    if q.as_integer(a.0).is_some() {
        return Err(Error::IntegralDegree(fmt_c(a.0)));
    }
    let mut acc = Complex::new(T::zero(), T::zero());
    for k in q.hr().iter() {
        acc += q.mdim(a.shifted(k))?.inv();
    }
    let rf = int::<T>(q.r() as i64);
    Ok(acc * (rf * rf * rf))
}

fn hopf_value<T: Real>(q: &QParams<T>, a: Complex<T>, b: Complex<T>) -> Complex<T> {
    q.qpow(a * b) * (q.parity_sign() * int::<T>(q.r() as i64))
}

/// Evaluates an expression tree.
pub fn eval<T: Real>(q: &QParams<T>, expr: &SkeinExpr<T>) -> Result<Evaluated<T>> {
    match expr {
        SkeinExpr::Unknot(a) => Ok(Evaluated::computed(q.mdim(*a)?)),
        SkeinExpr::Theta(a, b, c) => {
            require_admissible(q, &[*a, *b, *c])?;
            if vertex_admissible(q, *a, *b, *c) {
                Ok(Evaluated::computed(Complex::new(T::one(), T::zero())))
            } else {
                Ok(Evaluated::structural_zero())
            }
        }
        SkeinExpr::Tet(js) => sixj(q, *js),
        SkeinExpr::Hopf(a, b) => {
            require_admissible(q, &[*a, *b])?;
            Ok(Evaluated::computed(hopf_value(q, a.0, b.0)))
        }
        SkeinExpr::EdgeSum { left, right, color } => {
            let has =
                |e: &SkeinExpr<T>| e.colors().iter().any(|c| (c.0 - color.0).norm() <= q.tol());
            if !has(left) || !has(right) {
                return Err(Error::ColorMismatch(fmt_c(color.0)));
            }
            let d = q.mdim(*color)?;
            let l = eval(q, left)?;
            let r = eval(q, right)?;
            Ok(l.times(r).scaled(d.inv()))
        }
        SkeinExpr::VertexSum {
            left,
            right,
            colors,
        } => {
            require_admissible(q, colors)?;
            let l = eval(q, left)?;
            let r = eval(q, right)?;
            if !vertex_admissible(q, colors[0], colors[1], colors[2]) {
                return Ok(Evaluated::structural_zero());
            }
            Ok(l.times(r))
        }
        SkeinExpr::Disjoint(l, r) => {
            eval(q, l)?;
            eval(q, r)?;
            Ok(Evaluated::structural_zero())
        }
        SkeinExpr::TwistEdge { child, color, n } => {
            Ok(eval(q, child)?.scaled(twist_coeff(q, *color, *n)))
        }
        SkeinExpr::TwistVertex { child, colors, n } => {
            let [a, b, c] = *colors;
            Ok(eval(q, child)?.scaled(vertex_twist_coeff(q, a, b, c, *n)))
        }
        SkeinExpr::ReverseEdge { child, edge } => eval(q, &child.with_slot_negated(*edge)?),
    }
}
