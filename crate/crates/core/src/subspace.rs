//! Linear subspaces of `k^n` stored by a reduced row echelon basis, so two
//! `Subspace`s are equal as sets exactly when they are structurally equal.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Subspace {
    ambient_dim: usize,
    /// Rows form the reduced echelon basis.
    basis: Matrix,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace {
            ambient_dim: n,
            basis: Matrix::zeros(0, n),
        }
    }

    pub fn full(n: usize) -> Self {
        Subspace {
            ambient_dim: n,
            basis: Matrix::identity(n),
        }
    }

    /// Span of the rows of `m`.
    pub fn row_span(m: &Matrix) -> Self {
        Subspace {
            ambient_dim: m.cols(),
            basis: m.rref().0,
        }
    }

    /// Span of the columns of `m`.
    pub fn column_span(m: &Matrix) -> Self {
        Self::row_span(&m.transpose())
    }

    pub fn from_vectors(n: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        let m = Matrix::from_rows(vectors, n).expect("vector length equals ambient dimension");
        Self::row_span(&m)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.to_rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::Dimension(format!(
                "subspaces of k^{} and k^{}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        let extra = Matrix::from_rows(vec![v.to_vec()], self.ambient_dim).expect("vector length");
        let stacked = Matrix::vstack(&[&self.basis, &extra]).expect("same width");
        stacked.rank() == self.dim()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim
            && other.basis_vectors().iter().all(|v| self.contains_vector(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Self::row_span(&Matrix::vstack(&[&self.basis, &other.basis])?))
    }

    /// Rows spanning the annihilator: `self = ker(annihilator)`.
    pub fn annihilator(&self) -> Matrix {
        let ann = self.basis.kernel();
        ann.basis.clone()
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Matrix::vstack(&[&self.annihilator(), &other.annihilator()])?.kernel())
    }

    /// `{ m·v : v ∈ self }`.
    pub fn image(&self, m: &Matrix) -> Result<Subspace> {
        if m.cols() != self.ambient_dim {
            return Err(Error::Dimension(format!(
                "applying a {}x{} matrix to a subspace of k^{}",
                m.rows(),
                m.cols(),
                self.ambient_dim
            )));
        }
        Ok(Subspace::column_span(&(m * &self.basis.transpose())))
    }

    /// `{ v : m·v ∈ self }`.
    pub fn preimage(&self, m: &Matrix) -> Result<Subspace> {
        if m.rows() != self.ambient_dim {
            return Err(Error::Dimension(format!(
                "preimage under a {}x{} matrix of a subspace of k^{}",
                m.rows(),
                m.cols(),
                self.ambient_dim
            )));
        }
        Ok((&self.annihilator() * m).kernel())
    }

    pub fn is_invariant_under(&self, m: &Matrix) -> bool {
        self.image(m).is_ok_and(|img| self.contains(&img))
    }

    /// True when `self ⊕ other = k^n`.
    pub fn is_complement_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.dim() + other.dim() == self.ambient_dim
            && self.sum(other).is_ok_and(|s| s.is_full())
    }
}

/// Smallest subspace containing `generators` and invariant under every
/// operator, computed as the fixed point of `S ↦ S + Σ A·S`.
pub fn closure(generators: &Subspace, operators: &[Matrix]) -> Result<Subspace> {
    let n = generators.ambient_dim();
    if let Some(op) = operators.iter().find(|a| a.rows() != n || a.cols() != n) {
        return Err(Error::Dimension(format!(
            "operator is {}x{}, expected {n}x{n}",
            op.rows(),
            op.cols()
        )));
    }
    let mut current = generators.clone();
    loop {
        let mut parts = vec![current.basis().clone()];
        for op in operators {
            parts.push((op * &current.basis().transpose()).transpose());
        }
        let refs: Vec<&Matrix> = parts.iter().collect();
        let next = Subspace::row_span(&Matrix::vstack(&refs)?);
        if next.dim() == current.dim() {
            return Ok(current);
        }
        current = next;
    }
}

/// Largest subspace of `start` invariant under every operator: the limit of
/// `S ↦ S ∩ ⋂ A⁻¹(S)`.
pub fn largest_invariant(start: &Subspace, operators: &[Matrix]) -> Result<Subspace> {
    let n = start.ambient_dim();
    if let Some(op) = operators.iter().find(|a| a.rows() != n || a.cols() != n) {
        return Err(Error::Dimension(format!(
            "operator is {}x{}, expected {n}x{n}",
            op.rows(),
            op.cols()
        )));
    }
    let mut current = start.clone();
    loop {
        let ann = current.annihilator();
        let mut parts = vec![ann.clone()];
        for op in operators {
            parts.push(&ann * op);
        }
        let refs: Vec<&Matrix> = parts.iter().collect();
        let next = Matrix::vstack(&refs)?.kernel();
        if next.dim() == current.dim() {
            return Ok(current);
        }
        current = next;
    }
}
