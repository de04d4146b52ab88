//! Smith and Hermite normal forms over ℤ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;
use super::scalar::Field;
use crate::error::{Error, Result};

pub type IntRows = Vec<Vec<BigInt>>;

/// `u · m · v = d` with `u`, `v` unimodular and `d` diagonal, d₁ | d₂ | ….
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: IntRows,
    pub d: IntRows,
    pub v: IntRows,
}

impl Smith {
    /// Nonzero diagonal entries, all positive.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.len().min(self.d.first().map_or(0, Vec::len)))
            .map(|i| self.d[i][i].clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form of an integer ℚ-matrix.
pub fn smith_normal_form(m: &Matrix) -> Result<(Matrix, Matrix, Matrix)> {
    if !m.field().is_rational() {
        return Err(Error::Context("Smith normal form needs an integer matrix over Q".into()));
    }
    let s = snf(&m.to_integer_rows()?);
    let q = Field::Rational;
    let conv = |rows: &IntRows, r: usize, c: usize| {
        if r == 0 || c == 0 {
            Matrix::zeros(r, c, q)
        } else {
            Matrix::from_bigint_rows(q, rows).expect("integer rows")
        }
    };
    let (r, c) = (m.rows(), m.cols());
    Ok((conv(&s.u, r, r), conv(&s.d, r, c), conv(&s.v, c, c)))
}

fn identity(n: usize) -> IntRows {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i32)).collect())
        .collect()
}

/// Pivot rule: smallest nonzero absolute value in the active block, ties
/// broken by row-major position.
pub fn snf(m: &IntRows) -> Smith {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a = m.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = smallest(&a, t) else {
                return finish(u, a, v);
            };
            a.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut v, t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_axpy(&mut a, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_axpy(&mut a, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // Divisibility: fold an offending row into the pivot row and retry.
            let bad = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut a, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            negate_row(&mut a, t);
            negate_row(&mut u, t);
        }
    }
    finish(u, a, v)
}

fn finish(u: IntRows, d: IntRows, v: IntRows) -> Smith {
    Smith { u, d, v }
}

fn smallest(a: &IntRows, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                best = Some((i, j, ax));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// row_i -= q · row_k
fn row_axpy(a: &mut IntRows, i: usize, k: usize, q: &BigInt) {
    let src = a[k].clone();
    for (x, s) in a[i].iter_mut().zip(src) {
        *x -= q * s;
    }
}

/// col_j -= q · col_k
fn col_axpy(a: &mut IntRows, j: usize, k: usize, q: &BigInt) {
    for row in a.iter_mut() {
        let s = row[k].clone();
        row[j] -= q * s;
    }
}

fn swap_cols(a: &mut IntRows, i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

fn negate_row(a: &mut IntRows, i: usize) {
    for x in a[i].iter_mut() {
        *x = -&*x;
    }
}

/// Row-style Hermite normal form of the lattice spanned by `rows`: echelon,
/// positive pivots, entries above each pivot reduced into [0, pivot). Zero
/// rows are dropped.
pub fn hnf(rows: &IntRows) -> IntRows {
    let mut a: IntRows = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let n = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..n {
        if r == a.len() {
            break;
        }
        // Euclid down the column until a single nonzero entry remains.
        loop {
            let mut piv: Option<usize> = None;
            for i in r..a.len() {
                if !a[i][c].is_zero()
                    && piv.is_none_or(|p| a[i][c].abs() < a[p][c].abs())
                {
                    piv = Some(i);
                }
            }
            let Some(p) = piv else { break };
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..a.len() {
                if !a[i][c].is_zero() {
                    let q = a[i][c].div_floor(&a[r][c]);
                    row_axpy(&mut a, i, r, &q);
                    done &= a[i][c].is_zero();
                }
            }
            if done {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            negate_row(&mut a, r);
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            if !q.is_zero() {
                row_axpy(&mut a, i, r, &q);
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// Basis (as rows) of the integer right kernel {x ∈ ℤⁿ : m·x = 0}, in HNF.
pub fn integer_kernel(m: &IntRows, ncols: usize) -> IntRows {
    if m.is_empty() {
        return identity(ncols);
    }
    let s = snf(m);
    let rank = s.rank();
    let basis: IntRows = (rank..ncols)
        .map(|j| s.v.iter().map(|row| row[j].clone()).collect())
        .collect();
    hnf(&basis)
}

pub fn int_mat_mul(a: &IntRows, b: &IntRows) -> IntRows {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn int_det(a: &IntRows) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut w = a.clone();
    let (piv, sign) = super::matrix::bareiss(&mut w, n);
    if piv.len() < n {
        BigInt::zero()
    } else {
        &w[n - 1][n - 1] * sign
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> IntRows {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn check(m: &IntRows) -> Smith {
        let s = snf(m);
        assert_eq!(int_mat_mul(&int_mat_mul(&s.u, m), &s.v), s.d);
        assert_eq!(int_det(&s.u).abs(), BigInt::one());
        assert_eq!(int_det(&s.v).abs(), BigInt::one());
        let f = s.invariant_factors();
        assert!(f.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        s
    }

    #[test]
    fn diagonal_examples() {
        let s = check(&ints(&[&[2, 0, 0], &[0, -2, 0], &[0, 0, -2]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(2); 3]);
        let s = check(&ints(&[&[2, 1], &[1, 2]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1), BigInt::from(3)]);
        let s = check(&identity(4));
        assert_eq!(s.d, identity(4));
    }

    #[test]
    fn divisibility_fixup() {
        // diag(2, 3) is not in normal form; expect diag(1, 6).
        let s = check(&ints(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
        let s = check(&ints(&[&[4, 6, 2], &[2, 8, 10]]));
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn rejects_fractions() {
        let q = Field::Rational;
        let m = Matrix::new(1, 1, q, vec![q.ratio(1, 2).unwrap()]).unwrap();
        assert!(matches!(smith_normal_form(&m), Err(Error::Context(_))));
    }

    #[test]
    fn hermite_form_and_kernel() {
        let h = hnf(&ints(&[&[2, 4], &[1, 3], &[3, 7]]));
        assert_eq!(h, ints(&[&[1, 1], &[0, 2]]));
        let k = integer_kernel(&ints(&[&[1, 1, 1]]), 3);
        assert_eq!(k.len(), 2);
        for row in &k {
            assert!(row.iter().sum::<BigInt>().is_zero());
        }
        // The kernel lattice is saturated: index-one sublattice of x+y+z=0.
        assert_eq!(k, ints(&[&[1, 0, -1], &[0, 1, -1]]));
    }
}
