//! Exact computations for two-dimensional topological field theories and the
//! quantum-algebraic structures around them.
//!
//! Everything is computed over cyclotomic fields with arbitrary-precision
//! rational coefficients; there is no floating point on any code path that
//! produces a result.

pub mod double;
pub mod eqdw;
pub mod format;
pub mod frobenius;
pub mod group;
pub mod hopf;
pub mod linalg;
pub mod modular;
pub mod pdual;
pub mod scalar;
pub mod xmod;

pub use group::{FiniteGroup, GroupError, GroupHom, Perm};
pub use linalg::{CycMatrix, Solution, SparseMatrix};
pub use scalar::{cyc_arith, ArithOp, Cyclotomic, ScalarError};
