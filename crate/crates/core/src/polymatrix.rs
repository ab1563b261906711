//! Matrices whose entries are [`Poly`]s.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{Poly, Var, NVARS};
use crate::scalar::Scalar;
use crate::unipoly::UniPoly;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: vec![Poly::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { rows, cols, entries }
    }

    /// `m · v` for a constant matrix and a single variable.
    pub fn from_constant(m: &Matrix, v: Option<Var>) -> Self {
        let mono = v.map_or_else(Poly::one, Poly::var);
        Self::from_fn(m.rows(), m.cols(), |i, j| mono.scale(&m[(i, j)]))
    }

    /// `Σ_k coeffs[k] · vars[k]` for a list of constant matrices of equal shape.
    pub fn linear_combination(terms: &[(&Matrix, Var)]) -> Self {
        let (rows, cols) = terms.first().map_or((0, 0), |(m, _)| (m.rows(), m.cols()));
        let mut out = Self::zeros(rows, cols);
        for (m, v) in terms {
            out = &out + &Self::from_constant(m, Some(*v));
        }
        out
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Poly::one() } else { Poly::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.entries.iter().all(|p| p.is_homogeneous_of(d))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Coefficient matrix of the monomial `m` in every entry.
    pub fn coefficient(&self, m: &crate::poly::Monomial) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].coeff(m))
    }

    pub fn eval(&self, values: &[Scalar]) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].eval(values))
    }

    pub fn eval_partial(&self, values: &[Option<Scalar>; NVARS]) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].eval_partial(values))
    }

    pub fn substitute(&self, images: &[Option<Poly>; NVARS]) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].substitute(images))
    }

    pub fn hstack(parts: &[&PolyMatrix]) -> Result<Self> {
        let rows = parts.first().map_or(0, |m| m.rows);
        if parts.iter().any(|m| m.rows != rows) {
            return Err(Error::Dimension("hstack with unequal row counts".into()));
        }
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Self::zeros(rows, cols);
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

    pub fn vstack(parts: &[&PolyMatrix]) -> Result<Self> {
        let cols = parts.first().map_or(0, |m| m.cols);
        if parts.iter().any(|m| m.cols != cols) {
            return Err(Error::Dimension("vstack with unequal column counts".into()));
        }
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut entries = Vec::with_capacity(rows * cols);
        for m in parts {
            entries.extend(m.entries.iter().cloned());
        }
        Ok(PolyMatrix { rows, cols, entries })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    /// Determinant by cofactor expansion, memoized over column subsets.
    pub fn det(&self) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "determinant of a {}x{} polynomial matrix",
                self.rows, self.cols
            )));
        }
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        Ok(self.minor(&rows, &cols))
    }

    fn minor(&self, rows: &[usize], cols: &[usize]) -> Poly {
        let k = rows.len();
        let mut memo: HashMap<u32, Poly> = HashMap::new();
        memo.insert(0, Poly::one());
        minor_rec(self, rows, cols, (1u32 << k) - 1, &mut memo)
    }

    /// All `size × size` minors, row subsets outer and column subsets inner,
    /// both in lexicographic order.
    pub fn minors(&self, size: usize) -> Result<Vec<Poly>> {
        if size > self.rows.min(self.cols) {
            return Err(Error::MinorSize {
                size,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let row_sets = subsets(self.rows, size);
        let col_sets = subsets(self.cols, size);
        let mut out = Vec::with_capacity(row_sets.len() * col_sets.len());
        for rs in &row_sets {
            for cs in &col_sets {
                out.push(self.minor(rs, cs));
            }
        }
        Ok(out)
    }

    /// Determinant of a square matrix of polynomials in `t` by fraction-free
    /// (Bareiss) elimination over `Q[t]`: the last pivot is the determinant.
    pub fn det_fraction_free(&self) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Poly::one());
        }
        let mut m: Vec<Vec<UniPoly>> = (0..n)
            .map(|i| (0..n).map(|j| self[(i, j)].to_univariate(Var::T)).collect())
            .collect::<Result<_>>()?;
        let mut prev = UniPoly::one();
        let mut sign = false;
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
                return Ok(Poly::zero());
            };
            if p != k {
                m.swap(p, k);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division is exact");
                    m[i][j] = q;
                }
                m[i][k] = UniPoly::zero();
            }
            prev = m[k][k].clone();
        }
        let d = Poly::from_univariate(&m[n - 1][n - 1], Var::T);
        Ok(if sign { -&d } else { d })
    }
}

fn minor_rec(
    m: &PolyMatrix,
    rows: &[usize],
    cols: &[usize],
    mask: u32,
    memo: &mut HashMap<u32, Poly>,
) -> Poly {
    if let Some(p) = memo.get(&mask) {
        return p.clone();
    }
    let k = rows.len();
    let used = mask.count_ones() as usize;
    let row = rows[k - used];
    let mut acc = Poly::zero();
    let mut position = 0;
    for (idx, &col) in cols.iter().enumerate() {
        if mask & (1 << idx) == 0 {
            continue;
        }
        let entry = &m[(row, col)];
        if !entry.is_zero() {
            let sub = minor_rec(m, rows, cols, mask & !(1 << idx), memo);
            if !sub.is_zero() {
                let term = entry * &sub;
                acc = if position % 2 == 0 { &acc + &term } else { &acc - &term };
            }
        }
        position += 1;
    }
    memo.insert(mask, acc.clone());
    acc
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(pos) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[pos] += 1;
        for i in pos + 1..k {
            cur[i] = cur[i - 1] + 1;
        }
    }
}

impl Index<(usize, usize)> for PolyMatrix {
    type Output = Poly;
    fn index(&self, (i, j): (usize, usize)) -> &Poly {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for PolyMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Poly {
        &mut self.entries[i * self.cols + j]
    }
}

impl<'a> Mul<&'a PolyMatrix> for &'a PolyMatrix {
    type Output = PolyMatrix;
    fn mul(self, rhs: &'a PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, rhs.rows, "polynomial matrix product dimension mismatch");
        let mut out = PolyMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a PolyMatrix> for &'a PolyMatrix {
    type Output = PolyMatrix;
    fn add(self, rhs: &'a PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a PolyMatrix> for &'a PolyMatrix {
    type Output = PolyMatrix;
    fn sub(self, rhs: &'a PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &PolyMatrix {
    type Output = PolyMatrix;
    fn neg(self) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|p| -p).collect(),
        }
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for PolyMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<&Poly>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)]).collect())
            .collect();
        rows.serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(k: usize) -> Poly {
        Poly::var(Var::PROJECTIVE[k])
    }

    #[test]
    fn minors_examples() {
        assert_eq!(PolyMatrix::identity(2).minors(2).unwrap(), vec![Poly::one()]);
        let m = PolyMatrix::from_fn(2, 2, |i, j| if i == j { x(0) } else { x(1) });
        assert_eq!(
            m.minors(2).unwrap(),
            vec![&(&x(0) * &x(0)) - &(&x(1) * &x(1))]
        );
        assert!(m.minors(3).is_err());
        assert_eq!(PolyMatrix::zeros(5, 2).minors(2).unwrap().len(), 10);
    }

    #[test]
    fn subset_order() {
        assert_eq!(
            subsets(4, 2),
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }

    #[test]
    fn determinant_paths_agree_on_a_fixed_matrix() {
        let t = Poly::var(Var::T);
        let c = |n: i64| Poly::constant(Scalar::from_int(n));
        let m = PolyMatrix::from_fn(3, 3, |i, j| match (i, j) {
            (0, 0) => &t + &c(1),
            (0, 2) => c(2),
            (1, 1) => &t * &t,
            (1, 0) => c(-1),
            (2, 0) => t.clone(),
            (2, 2) => &t - &c(3),
            _ => Poly::zero(),
        });
        assert_eq!(m.det().unwrap(), m.det_fraction_free().unwrap());
    }
}
