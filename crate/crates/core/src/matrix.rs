//! Dense matrices over [`Scalar`] with exact elimination.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::subspace::Subspace;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = Scalar::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors; all rows must have length `cols`.
    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (k, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {k} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
        })
    }

    /// Integer matrix literal helper.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
            cols,
        )
        .expect("ragged integer literal")
    }

    pub fn column_vector(v: Vec<Scalar>) -> Self {
        let n = v.len();
        Matrix {
            rows: n,
            cols: 1,
            data: v,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|k| &self[(k, k)]).sum()
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        &(self * other) - &(other * self)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        Matrix::from_fn(r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn hstack(parts: &[&Matrix]) -> Result<Matrix> {
        let rows = parts.first().map_or(0, |m| m.rows);
        if parts.iter().any(|m| m.rows != rows) {
            return Err(Error::Dimension("hstack with unequal row counts".into()));
        }
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut off = 0;
        for m in parts {
            for i in 0..rows {
                for j in 0..m.cols {
                    out[(i, off + j)] = m[(i, j)].clone();
                }
            }
            off += m.cols;
        }
        Ok(out)
    }

    pub fn vstack(parts: &[&Matrix]) -> Result<Matrix> {
        let cols = parts.first().map_or(0, |m| m.cols);
        if parts.iter().any(|m| m.cols != cols) {
            return Err(Error::Dimension("vstack with unequal column counts".into()));
        }
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for m in parts {
            data.extend(m.data.iter().cloned());
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(self * rhs)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Fraction-free (Bareiss) forward elimination. Returns the eliminated
    /// matrix, the pivot columns and the number of row swaps.
    fn bareiss(&self) -> (Matrix, Vec<usize>, usize) {
        let mut m = self.clone();
        let mut prev = Scalar::one();
        let mut pivots = Vec::new();
        let mut swaps = 0;
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows)
                .filter(|&i| !m[(i, col)].is_zero())
                .min_by_key(|&i| m[(i, col)].height())
            else {
                continue;
            };
            if p != row {
                m.swap_rows(p, row);
                swaps += 1;
            }
            let piv = m[(row, col)].clone();
            let inv_prev = prev.inv().expect("nonzero previous pivot");
            for i in row + 1..m.rows {
                let lead = m[(i, col)].clone();
                for j in col + 1..m.cols {
                    let v = &(&(&piv * &m[(i, j)]) - &(&lead * &m[(row, j)])) * &inv_prev;
                    m[(i, j)] = v;
                }
                m[(i, col)] = Scalar::zero();
            }
            prev = piv;
            pivots.push(col);
            row += 1;
        }
        (m, pivots, swaps)
    }

    /// Rank by fraction-free elimination over the Gaussian integers, after
    /// clearing the denominators of each row.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let mut rows: Vec<Vec<GaussInt>> = (0..self.rows)
            .map(|i| GaussInt::primitive_row(self.row(i)))
            .filter(|r| r.iter().any(|e| !e.is_zero()))
            .collect();
        let mut prev = GaussInt::one();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (0..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by_key(|&i| rows[i][col].bits())
            else {
                continue;
            };
            let pivot = rows.swap_remove(p);
            rank += 1;
            for row in rows.iter_mut() {
                let lead = std::mem::replace(&mut row[col], GaussInt::zero());
                for j in col + 1..self.cols {
                    let mut v = pivot[col].mul(&row[j]);
                    if !lead.is_zero() && !pivot[j].is_zero() {
                        v = v.sub(&lead.mul(&pivot[j]));
                    }
                    row[j] = v.div_exact(&prev);
                }
            }
            prev = pivot[col].clone();
            if rows.is_empty() {
                break;
            }
        }
        rank
    }

    pub fn det(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if self.rows == 0 {
            return Ok(Scalar::one());
        }
        let (m, pivots, swaps) = self.bareiss();
        if pivots.len() < self.rows {
            return Ok(Scalar::zero());
        }
        let d = m[(self.rows - 1, self.cols - 1)].clone();
        Ok(if swaps % 2 == 1 { -d } else { d })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows)
                .filter(|&i| !m[(i, col)].is_zero())
                .min_by_key(|&i| m[(i, col)].height())
            else {
                continue;
            };
            m.swap_rows(p, row);
            let inv = m[(row, col)].inv().expect("nonzero pivot");
            for j in col..m.cols {
                let v = &m[(row, j)] * &inv;
                m[(row, j)] = v;
            }
            for i in 0..m.rows {
                if i == row || m[(i, col)].is_zero() {
                    continue;
                }
                let f = m[(i, col)].clone();
                for j in col..m.cols {
                    if m[(row, j)].is_zero() {
                        continue;
                    }
                    let v = &m[(i, j)] - &(&f * &m[(row, j)]);
                    m[(i, j)] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        let r = pivots.len();
        m.data.truncate(r * m.cols);
        m.rows = r;
        (m, pivots)
    }

    /// Right kernel `{v : self·v = 0}`.
    pub fn kernel(&self) -> Subspace {
        let n = self.cols;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![None; n];
        for (k, &p) in pivots.iter().enumerate() {
            is_pivot[p] = Some(k);
        }
        let mut basis = Vec::new();
        for free in (0..n).filter(|&j| is_pivot[j].is_none()) {
            let mut v = vec![Scalar::zero(); n];
            v[free] = Scalar::one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -&r[(k, free)];
            }
            basis.push(v);
        }
        Subspace::from_vectors(n, basis)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = Matrix::hstack(&[self, &Matrix::identity(n)])?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
            return Err(Error::Singular);
        }
        Ok(r.block(0, n, n, 2 * n))
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn add(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum dimension mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference dimension mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.map(|x| -x)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}

/// Serialized as a list of rows of scalar strings.
impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::zeros(0, 0).rank(), 0);
        assert_eq!(Matrix::identity(3).rank(), 3);
        // beta(p) of the rank-1, charge-2 example at p = [0:0:1:0]
        let beta = Matrix::from_ints(&[&[0, 0, 1, 0, 0], &[0, 0, 0, 1, 0]]);
        assert_eq!(beta.rank(), 2);
        assert_eq!(Matrix::zeros(3, 4).rank(), 0);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(3).kernel().dim(), 0);
        assert_eq!(Matrix::zeros(2, 2).kernel(), Subspace::full(2));
        let k = Matrix::from_ints(&[&[1, 1]]).kernel();
        assert_eq!(
            k,
            Subspace::from_vectors(2, vec![vec![Scalar::from_int(1), Scalar::from_int(-1)]])
        );
    }

    #[test]
    fn det_and_inverse() {
        let m = Matrix::from_ints(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.det().unwrap(), Scalar::from_int(18));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(3));
        let swap = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(swap.det().unwrap(), Scalar::from_int(-1));
        assert!(Matrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_err());
        assert_eq!(Matrix::identity(0).inverse().unwrap(), Matrix::identity(0));
    }
}

#[derive(Clone)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn zero() -> GaussInt {
        GaussInt { re: BigInt::zero(), im: BigInt::zero() }
    }

    fn one() -> GaussInt {
        GaussInt { re: BigInt::one(), im: BigInt::zero() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// `self / d`, assuming `d` divides `self` in `Z[i]`.
    fn div_exact(self, d: &GaussInt) -> GaussInt {
        if d.im.is_zero() {
            if d.re.is_one() {
                return self;
            }
            return GaussInt { re: self.re / &d.re, im: self.im / &d.re };
        }
        let norm = &d.re * &d.re + &d.im * &d.im;
        let conj = GaussInt { re: d.re.clone(), im: -&d.im };
        let p = self.mul(&conj);
        GaussInt { re: p.re / &norm, im: p.im / &norm }
    }

    fn bits(&self) -> u64 {
        self.re.bits().max(self.im.bits())
    }

    fn mul(&self, o: &GaussInt) -> GaussInt {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussInt { re: &self.re * &o.re, im: BigInt::zero() };
        }
        GaussInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn sub(&self, o: &GaussInt) -> GaussInt {
        GaussInt { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    /// The row scaled by the lcm of its denominators, then made primitive.
    fn primitive_row(row: &[Scalar]) -> Vec<GaussInt> {
        let l = row.iter().fold(BigInt::one(), |acc, s| {
            acc.lcm(s.re().denom()).lcm(s.im().denom())
        });
        let mut out: Vec<GaussInt> = row
            .iter()
            .map(|s| GaussInt {
                re: (s.re() * BigRational::from_integer(l.clone())).to_integer(),
                im: (s.im() * BigRational::from_integer(l.clone())).to_integer(),
            })
            .collect();
        GaussInt::make_primitive(&mut out);
        out
    }

    fn make_primitive(row: &mut [GaussInt]) {
        let g = row.iter().fold(BigInt::zero(), |acc, e| acc.gcd(&e.re).gcd(&e.im));
        if g.is_zero() || g.is_one() {
            return;
        }
        for e in row.iter_mut() {
            e.re /= &g;
            e.im /= &g;
        }
    }
}
