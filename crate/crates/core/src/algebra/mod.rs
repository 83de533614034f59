//! Exact scalars, A-variable polynomials, graded series and linear algebra.

mod avar;
mod coeff;
mod linalg;
mod scalar;
mod series;

pub use avar::AVariable;
pub use coeff::{AMonomial, CoeffPoly};
pub use linalg::{exact_solve, nullspace, row_basis, Matrix, Module, Solution};
pub use scalar::{format_rational, parse_rational, Scalar};
pub use series::{Alphabet, GradedSeries, Key, Validity, VarSpec};
