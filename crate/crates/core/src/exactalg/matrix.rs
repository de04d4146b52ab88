//! Dense exact matrices.
//!
//! Over ℚ every elimination first clears row denominators and then runs
//! fraction-free (Bareiss) elimination on big integers. Over 𝔽_p plain Gauss
//! elimination on machine words is used.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::scalar::{pow_mod, Field, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

impl Matrix {
    /// Row-major constructor; every entry must live in `field`.
    pub fn new(rows: usize, cols: usize, field: Field, data: Vec<Scalar>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| s.field() != field) {
            return Err(Error::Context(format!(
                "entry in field {} inside a matrix over {field}",
                bad.field()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            field,
            data,
        })
    }

    pub fn zeros(rows: usize, cols: usize, field: Field) -> Matrix {
        Matrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(n: usize, field: Field) -> Matrix {
        let mut m = Matrix::zeros(n, n, field);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_i64_rows(field: Field, rows: &[Vec<i64>]) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&v| field.from_i64(v)).collect();
        Matrix::new(r, c, field, data)
    }

    pub fn from_bigint_rows(field: Field, rows: &[Vec<BigInt>]) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|v| field.from_bigint(v)).collect();
        Matrix::new(r, c, field, data)
    }

    /// Builds a matrix from scalar rows over `field`.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Matrix::new(r, c, field, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    /// Panics if `v` lives in another field.
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "scalar context mismatch");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            field: self.field,
            data,
        }
    }

    fn same_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::Context(format!(
                "matrices over {} and {}",
                self.field, other.field
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols, self.field);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape("addition of differently shaped matrices".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            data: self.data.iter().map(|a| a * s).collect(),
            ..self.clone()
        }
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        if let Some(bad) = v.iter().find(|s| s.field() != self.field) {
            return Err(Error::Context(format!("vector entry over {}", bad.field())));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::Shape(format!(
                "cannot stack {} columns on {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            field: self.field,
            data,
        })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix {
            rows: idx.len(),
            cols: self.cols,
            field: self.field,
            data,
        }
    }

    /// Entry-wise reduction ℤ_(p) → 𝔽_p of a rational matrix.
    pub fn reduce_mod(&self, p: u32) -> Result<Matrix> {
        let target = Field::prime(p as u64)?;
        if self.field == target {
            return Ok(self.clone());
        }
        if !self.field.is_rational() {
            return Err(Error::Context(format!("cannot reduce a matrix over {} mod {p}", self.field)));
        }
        let data = self
            .data
            .iter()
            .map(|s| {
                s.reduce_mod(p).ok_or_else(|| Error::Reduction {
                    p,
                    reason: format!("entry {s} has denominator divisible by {p}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            field: target,
            data,
        })
    }

    /// Integer entries, if this is a ℚ matrix with denominator 1 everywhere.
    pub fn to_integer_rows(&self) -> Result<Vec<Vec<BigInt>>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|s| {
                        s.to_integer()
                            .ok_or_else(|| Error::Context(format!("entry {s} is not an integer")))
                    })
                    .collect()
            })
            .collect()
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|s| s.to_integer().is_some())
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Rank and a basis of the right kernel, returned as the columns of a
    /// `cols × (cols − rank)` matrix.
    pub fn rank_and_kernel(&self) -> (usize, Matrix) {
        let ech = self.echelon();
        let rank = ech.pivots.len();
        let free: Vec<usize> = (0..self.cols).filter(|c| !ech.pivots.contains(c)).collect();
        let mut kernel = Matrix::zeros(self.cols, free.len(), self.field);
        for (k, &f) in free.iter().enumerate() {
            let x = ech.solve_free(f, self.cols, self.field);
            for (i, v) in x.into_iter().enumerate() {
                kernel.data[i * free.len() + k] = v;
            }
        }
        (rank, kernel)
    }

    /// Basis of the left kernel as rows: vectors y with y·M = 0.
    pub fn left_kernel(&self) -> Matrix {
        self.transpose().rank_and_kernel().1.transpose()
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.field.one());
        }
        match self.field {
            Field::Rational => {
                let (mut a, scale) = self.cleared_rows();
                let (pivots, sign) = bareiss(&mut a, n);
                if pivots.len() < n {
                    return Ok(self.field.zero());
                }
                let det = BigRational::new(a[n - 1][n - 1].clone() * sign, scale);
                Ok(Scalar::Rat(det))
            }
            Field::Prime(p) => {
                let mut a = self.words(p);
                let (pivots, det) = gauss_fp(&mut a, n, p as u64, false);
                if pivots.len() < n {
                    return Ok(self.field.zero());
                }
                Ok(self.field.from_i64(det as i64))
            }
        }
    }

    /// Reduced row echelon form with pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let ech = self.echelon();
        let rank = ech.pivots.len();
        let mut out = Matrix::zeros(rank, self.cols, self.field);
        match &ech.rows {
            EchelonRows::Fp(a, _) => {
                for r in 0..rank {
                    for c in 0..self.cols {
                        out.data[r * self.cols + c] = self.field.from_i64(a[r][c] as i64);
                    }
                }
            }
            EchelonRows::Int(a) => {
                // Back-substitute upward over ℚ.
                let mut rows: Vec<Vec<BigRational>> = a[..rank]
                    .iter()
                    .map(|row| row.iter().map(|v| BigRational::from_integer(v.clone())).collect())
                    .collect();
                for r in (0..rank).rev() {
                    let pc = ech.pivots[r];
                    let inv = rows[r][pc].recip();
                    for v in rows[r].iter_mut() {
                        *v = &*v * &inv;
                    }
                    for above in 0..r {
                        let f = rows[above][pc].clone();
                        if f.is_zero() {
                            continue;
                        }
                        for c in 0..self.cols {
                            let d = &f * &rows[r][c];
                            rows[above][c] -= d;
                        }
                    }
                }
                for (r, row) in rows.into_iter().enumerate() {
                    for (c, v) in row.into_iter().enumerate() {
                        out.data[r * self.cols + c] = Scalar::Rat(v);
                    }
                }
            }
        }
        (out, ech.pivots)
    }

    /// Inverse of a square matrix.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Shape(format!("inverse of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n, self.field);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j).clone();
            }
            aug.data[i * 2 * n + n + i] = self.field.one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Degenerate("singular matrix".into()));
        }
        let mut inv = Matrix::zeros(n, n, self.field);
        for i in 0..n {
            for j in 0..n {
                inv.data[i * n + j] = r.get(i, n + j).clone();
            }
        }
        Ok(inv)
    }

    /// Whether the two matrices span the same row space.
    pub fn same_row_space(&self, other: &Matrix) -> Result<bool> {
        let r = self.rank();
        if r != other.rank() {
            return Ok(false);
        }
        Ok(self.vstack(other)?.rank() == r)
    }

    /// Rows scaled to integers; returns the rows and the product of the scale factors.
    fn cleared_rows(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut scale = BigInt::one();
        let rows = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |l, s| {
                    l.lcm(s.as_rational().expect("rational entry").denom())
                });
                scale *= &l;
                row.iter()
                    .map(|s| {
                        let q = s.as_rational().expect("rational entry");
                        q.numer() * (&l / q.denom())
                    })
                    .collect()
            })
            .collect();
        (rows, scale)
    }

    fn words(&self, p: u32) -> Vec<Vec<u64>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|s| s.residue().expect("prime-field entry") as u64 % p as u64)
                    .collect()
            })
            .collect()
    }

    fn echelon(&self) -> Echelon {
        match self.field {
            Field::Rational => {
                let (mut a, _) = self.cleared_rows();
                let (pivots, _) = bareiss(&mut a, self.cols);
                Echelon {
                    rows: EchelonRows::Int(a),
                    pivots,
                }
            }
            Field::Prime(p) => {
                let mut a = self.words(p);
                let (pivots, _) = gauss_fp(&mut a, self.cols, p as u64, true);
                Echelon {
                    rows: EchelonRows::Fp(a, p as u64),
                    pivots,
                }
            }
        }
    }
}

enum EchelonRows {
    /// Bareiss echelon form, not reduced.
    Int(Vec<Vec<BigInt>>),
    /// Fully reduced with unit pivots.
    Fp(Vec<Vec<u64>>, u64),
}

struct Echelon {
    rows: EchelonRows,
    pivots: Vec<usize>,
}

impl Echelon {
    /// Kernel vector with a 1 in free column `f`, zero in the other free columns.
    fn solve_free(&self, f: usize, n: usize, field: Field) -> Vec<Scalar> {
        match &self.rows {
            EchelonRows::Fp(a, p) => {
                let mut x = vec![field.zero(); n];
                x[f] = field.one();
                for (r, &pc) in self.pivots.iter().enumerate() {
                    x[pc] = field.from_i64(((p - a[r][f]) % p) as i64);
                }
                x
            }
            EchelonRows::Int(a) => {
                let mut x = vec![BigRational::zero(); n];
                x[f] = BigRational::one();
                for (r, &pc) in self.pivots.iter().enumerate().rev() {
                    let mut s = BigRational::zero();
                    for j in pc + 1..n {
                        if !a[r][j].is_zero() && !x[j].is_zero() {
                            s += &x[j] * BigRational::from_integer(a[r][j].clone());
                        }
                    }
                    x[pc] = -s / BigRational::from_integer(a[r][pc].clone());
                }
                x.into_iter().map(Scalar::Rat).collect()
            }
        }
    }
}

/// Fraction-free row echelon form in place. Returns pivot columns and the
/// sign of the row permutation. For a square nonsingular input the last
/// pivot equals the determinant up to that sign.
pub(crate) fn bareiss(a: &mut [Vec<BigInt>], ncols: usize) -> (Vec<usize>, i32) {
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut sign = 1;
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(pr) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if pr != r {
            a.swap(pr, r);
            sign = -sign;
        }
        let (top, rest) = a.split_at_mut(r + 1);
        let prow = &top[r];
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..ncols {
                let v = &prow[c] * &row[j] - &lead * &prow[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = prow[c].clone();
        pivots.push(c);
        r += 1;
    }
    (pivots, sign)
}

/// Gauss elimination over 𝔽_p in place. With `reduce` the result is the RREF;
/// otherwise an echelon form whose pivot product (times the permutation sign)
/// is returned as the second value.
fn gauss_fp(a: &mut [Vec<u64>], ncols: usize, p: u64, reduce: bool) -> (Vec<usize>, u64) {
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut det = 1u64;
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(pr) = (r..nrows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        if pr != r {
            a.swap(pr, r);
            det = (p - det) % p;
        }
        det = det * a[r][c] % p;
        let inv = pow_mod(a[r][c], p - 2, p);
        for v in a[r][c..].iter_mut() {
            *v = *v * inv % p;
        }
        let prow = a[r].clone();
        let targets: Box<dyn Iterator<Item = usize>> = if reduce {
            Box::new((0..nrows).filter(move |&i| i != r))
        } else {
            Box::new(r + 1..nrows)
        };
        for i in targets {
            let f = a[i][c];
            if f == 0 {
                continue;
            }
            for j in c..ncols {
                a[i][j] = (a[i][j] + (p - f) * prow[j]) % p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (pivots, det)
}

/// Rank of a word matrix over 𝔽_p; the census hot path skips `Scalar` boxing.
pub fn rank_fp(rows: &mut [Vec<u64>], ncols: usize, p: u64) -> usize {
    gauss_fp(rows, ncols, p, false).0.len()
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(Scalar::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<String>,
}

impl From<Matrix> for MatrixJson {
    fn from(m: Matrix) -> MatrixJson {
        MatrixJson {
            rows: m.rows,
            cols: m.cols,
            field: m.field,
            entries: m.data.iter().map(Scalar::to_string).collect(),
        }
    }
}

impl TryFrom<MatrixJson> for Matrix {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<Matrix> {
        let data = j
            .entries
            .iter()
            .map(|s| j.field.parse_scalar(s))
            .collect::<Result<Vec<_>>>()?;
        Matrix::new(j.rows, j.cols, j.field, data)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[Vec<i64>]) -> Matrix {
        Matrix::from_i64_rows(Field::Rational, rows).unwrap()
    }

    fn e8_cartan_neg() -> Matrix {
        // Bourbaki labelling: 1-3-4-5-6-7-8 chain with 2 attached to 4.
        let edges = [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)];
        let mut g = vec![vec![0i64; 8]; 8];
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = -2;
        }
        for &(a, b) in &edges {
            g[a][b] = 1;
            g[b][a] = 1;
        }
        q(&g)
    }

    #[test]
    fn identity_and_zero_kernels() {
        let (r, k) = Matrix::identity(10, Field::Rational).rank_and_kernel();
        assert_eq!((r, k.cols()), (10, 0));
        let (r, k) = Matrix::zeros(3, 3, Field::Rational).rank_and_kernel();
        assert_eq!((r, k.cols()), (0, 3));
        let (r, k) = q(&[vec![0, 1], vec![1, 0]]).rank_and_kernel();
        assert_eq!((r, k.cols()), (2, 0));
    }

    #[test]
    fn small_determinants() {
        assert_eq!(q(&[vec![0, 1], vec![1, 0]]).determinant().unwrap().to_string(), "-1");
        assert_eq!(e8_cartan_neg().determinant().unwrap().to_string(), "1");
        let m = Matrix::from_i64_rows(Field::Prime(5), &[vec![2, 1], vec![1, 2]]).unwrap();
        assert_eq!(m.determinant().unwrap().residue(), Some(3));
        assert!(q(&[vec![1, 2, 3]]).determinant().is_err());
    }

    #[test]
    fn kernel_annihilates_over_both_fields() {
        let rows = vec![vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, -1, 2]];
        for field in [Field::Rational, Field::Prime(7)] {
            let m = Matrix::from_i64_rows(field, &rows).unwrap();
            let (r, k) = m.rank_and_kernel();
            assert_eq!(r, 2);
            assert_eq!(k.cols(), 2);
            assert!(m.mul(&k).unwrap().is_zero());
            assert_eq!(k.rank(), 2);
        }
    }

    #[test]
    fn rational_entries_and_rref() {
        let f = Field::Rational;
        let half = f.ratio(1, 2).unwrap();
        let m = Matrix::new(2, 2, f, vec![half.clone(), f.one(), f.one(), f.from_i64(2)]).unwrap();
        assert_eq!(m.rank(), 1);
        let (r, piv) = m.rref();
        assert_eq!(piv, vec![0]);
        assert_eq!(r.row(0)[1].to_string(), "2");
        let m = Matrix::new(2, 2, f, vec![half, f.one(), f.zero(), f.from_i64(3)]).unwrap();
        assert_eq!(m.determinant().unwrap().to_string(), "3/2");
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2, f));
        let (r, _) = m.rref();
        assert_eq!(r, Matrix::identity(2, f));
    }

    #[test]
    fn mixed_contexts_are_rejected() {
        let a = Matrix::identity(2, Field::Rational);
        let b = Matrix::identity(2, Field::Prime(3));
        assert!(matches!(a.mul(&b), Err(Error::Context(_))));
        assert!(matches!(
            Matrix::new(1, 1, Field::Rational, vec![Field::Prime(3).one()]),
            Err(Error::Context(_))
        ));
    }

    #[test]
    fn reduction_mod_p() {
        let f = Field::Rational;
        let m = Matrix::new(1, 2, f, vec![f.ratio(1, 3).unwrap(), f.from_i64(4)]).unwrap();
        let r = m.reduce_mod(5).unwrap();
        assert_eq!(r.get(0, 0).residue(), Some(2));
        assert!(matches!(m.reduce_mod(3), Err(Error::Reduction { .. })));
    }
}
