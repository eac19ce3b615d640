//! Integer and rational linear algebra on linking matrices.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Symmetric integer matrix of linking numbers, framings on the diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinkingMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl LinkingMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(Error::InvalidInput("linking matrix must be square".into()));
            }
            entries.extend_from_slice(row);
        }
        for i in 0..n {
            for j in 0..i {
                if entries[i * n + j] != entries[j * n + i] {
                    return Err(Error::InvalidInput(format!(
                        "linking matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(LinkingMatrix { n, entries })
    }

    pub fn empty() -> Self {
        LinkingMatrix {
            n: 0,
            entries: Vec::new(),
        }
    }

    /// Framings on the diagonal, `1` between neighbours.
    pub fn chain(framings: &[i64]) -> Self {
        let n = framings.len();
        let mut entries = vec![0; n * n];
        for (i, a) in framings.iter().enumerate() {
            entries[i * n + i] = *a;
            if i + 1 < n {
                entries[i * n + i + 1] = 1;
                entries[(i + 1) * n + i] = 1;
            }
        }
        LinkingMatrix { n, entries }
    }

    pub fn block_diag(a: &LinkingMatrix, b: &LinkingMatrix) -> Self {
        let n = a.n + b.n;
        let mut entries = vec![0; n * n];
        for i in 0..a.n {
            for j in 0..a.n {
                entries[i * n + j] = a.get(i, j);
            }
        }
        for i in 0..b.n {
            for j in 0..b.n {
                entries[(a.n + i) * n + a.n + j] = b.get(i, j);
            }
        }
        LinkingMatrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(self.n.max(1))
            .take(self.n)
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn negated(&self) -> Self {
        LinkingMatrix {
            n: self.n,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }

    /// Exact determinant by fraction-free elimination.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = self
            .rows()
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }
}

/// Positive and negative inertia indices of a symmetric matrix over an
/// ordered field, by congruence diagonalization.
pub fn inertia<F: Clone + Signed>(mut a: Vec<Vec<F>>) -> (usize, usize) {
    let n = a.len();
    let (mut pos, mut neg) = (0, 0);
    let swap_sym = |a: &mut Vec<Vec<F>>, i: usize, j: usize| {
        a.swap(i, j);
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    };
    for k in 0..n {
        if let Some(i) = (k..n).find(|&i| !a[i][i].is_zero()) {
            swap_sym(&mut a, k, i);
        } else {
            let off = (k..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_zero());
            let Some((i, j)) = off else { break };
            // add row and column j to row and column i
            for c in 0..n {
                let v = a[i][c].clone() + a[j][c].clone();
                a[i][c] = v;
            }
            for rr in 0..n {
                let v = a[rr][i].clone() + a[rr][j].clone();
                a[rr][i] = v;
            }
            swap_sym(&mut a, k, i);
        }
        let piv = a[k][k].clone();
        if piv.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone() / piv.clone();
            for j in k + 1..n {
                let v = a[i][j].clone() - f.clone() * a[k][j].clone();
                a[i][j] = v;
            }
        }
        for i in k + 1..n {
            a[i][k] = F::zero();
            a[k][i] = F::zero();
        }
    }
    (pos, neg)
}

/// Signature `(p, s)` of the linking matrix, computed exactly over the
/// rationals.
pub fn signature(lk: &LinkingMatrix) -> (usize, usize) {
    let a: Vec<Vec<BigRational>> = lk
        .rows()
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    inertia(a)
}

/// `P A Q = diag(d)` with `P`, `Q` unimodular and `d_i | d_(i+1)`, `d_i >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SmithForm {
    pub diag: Vec<BigInt>,
    pub p: Vec<Vec<BigInt>>,
    pub q: Vec<Vec<BigInt>>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn smith_normal_form(lk: &LinkingMatrix) -> SmithForm {
    let n = lk.dim();
    let mut a: Vec<Vec<BigInt>> = lk
        .rows()
        .into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect();
    let mut p = identity(n);
    let mut q = identity(n);

    let row_axpy = |m: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, f: &BigInt| {
        for c in 0..m[dst].len() {
            let v = &m[dst][c] - f * &m[src][c];
            m[dst][c] = v;
        }
    };
    let col_axpy = |m: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, f: &BigInt| {
        for row in m.iter_mut() {
            let v = &row[dst] - f * &row[src];
            row[dst] = v;
        }
    };
    let col_swap = |m: &mut Vec<Vec<BigInt>>, i: usize, j: usize| {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
    };

    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            a.swap(t, bi);
            p.swap(t, bi);
            col_swap(&mut a, t, bj);
            col_swap(&mut q, t, bj);

            let piv = a[t][t].clone();
            let mut dirty = false;
            for i in t + 1..n {
                if !a[i][t].is_zero() {
                    let f = &a[i][t] / &piv;
                    row_axpy(&mut a, i, t, &f);
                    row_axpy(&mut p, i, t, &f);
                    dirty |= !a[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let f = &a[t][j] / &piv;
                    col_axpy(&mut a, j, t, &f);
                    col_axpy(&mut q, j, t, &f);
                    dirty |= !a[t][j].is_zero();
                }
            }
            if dirty {
                continue;
            }
            let bad = (t + 1..n).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&piv)));
            match bad {
                Some(i) => {
                    let neg_one = -BigInt::one();
                    row_axpy(&mut a, t, i, &neg_one);
                    row_axpy(&mut p, t, i, &neg_one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for c in 0..n {
                a[t][c] = -a[t][c].clone();
                p[t][c] = -p[t][c].clone();
            }
        }
    }
    let diag = (0..n).map(|i| a[i][i].clone()).collect();
    SmithForm { diag, p, q }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn mat(rows: &[&[i64]]) -> LinkingMatrix {
        LinkingMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let n = a.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(BigInt::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn rejects_asymmetric() {
        assert!(LinkingMatrix::new(vec![vec![1, 2], vec![3, 4]]).is_err());
        assert!(LinkingMatrix::new(vec![vec![1, 2]]).is_err());
    }

    #[test]
    fn signature_examples() {
        assert_eq!(signature(&mat(&[&[1]])), (1, 0));
        assert_eq!(signature(&mat(&[&[8, 1], &[1, -8]])), (1, 1));
        assert_eq!(signature(&mat(&[&[0, 1], &[1, 0]])), (1, 1));
        assert_eq!(signature(&mat(&[&[0, 0], &[0, 0]])), (0, 0));
        assert_eq!(signature(&LinkingMatrix::chain(&[8, -7, 1])), (2, 1));
        assert_eq!(signature(&LinkingMatrix::empty()), (0, 0));
    }

    #[test]
    fn inertia_over_machine_rationals() {
        let a = vec![
            vec![Rational64::from_integer(4), Rational64::from_integer(1)],
            vec![Rational64::from_integer(1), Rational64::from_integer(3)],
        ];
        assert_eq!(inertia(a), (2, 0));
    }

    #[test]
    fn determinants() {
        assert_eq!(mat(&[&[8, 1], &[1, -8]]).det(), BigInt::from(-65));
        assert_eq!(
            LinkingMatrix::chain(&[4, 3, 2, -3]).det(),
            BigInt::from(-65)
        );
        assert_eq!(LinkingMatrix::chain(&[8, -7, 1]).det(), BigInt::from(-65));
        assert_eq!(mat(&[&[0, 1], &[1, 0]]).det(), BigInt::from(-1));
        assert_eq!(mat(&[&[2, 4], &[4, 8]]).det(), BigInt::zero());
    }

    #[test]
    fn smith_form_reconstructs() {
        let m = mat(&[&[4, 6, 2], &[6, 8, 0], &[2, 0, 10]]);
        let s = smith_normal_form(&m);
        let a: Vec<Vec<BigInt>> = m
            .rows()
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect();
        let d = mul(&mul(&s.p, &a), &s.q);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j {
                    s.diag[i].clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(d[i][j], want);
            }
        }
        for i in 0..2 {
            assert!(s.diag[i + 1].is_multiple_of(&s.diag[i]));
        }
        let prod = s.diag.iter().fold(BigInt::one(), |acc, x| acc * x);
        assert_eq!(prod, m.det().abs());
    }
}
