//! Exact computations with ADHM data on P¹ and the monads on P³ they define.

pub mod adhm;
pub mod deform;
pub mod error;
pub mod fixtures;
pub mod hermite;
pub mod io;
pub mod matrix;
pub mod monad;
pub mod poly;
pub mod polymatrix;
pub mod rank0;
pub mod scalar;
pub mod subspace;
pub mod unipoly;

pub use adhm::{AdhmDatum, ConstantDatum, GroupElement, P1Point, Pencil};
pub use error::{Error, Result};
pub use matrix::Matrix;
pub use poly::{gcd_univariate, Monomial, Poly, Var};
pub use polymatrix::PolyMatrix;
pub use scalar::Scalar;
pub use subspace::{closure, Subspace};
pub use unipoly::UniPoly;
