//! Exact checking of splittings of associativity, Baxter operators and their deformations.

mod error;
pub use error::{Error, Result};

pub mod algebra;
pub mod baxter;
pub mod bialgebra;
pub mod deformation;
pub mod operad;
pub mod exactlin;
pub mod graphalg;
pub mod relations;
pub mod report;
pub mod splitting;
pub mod unit_action;

pub use algebra::{FiniteAlgebra, LinearOperator};
pub use exactlin::{Matrix, Scalar, TPoly, Tensor3};
pub use report::{CheckReport, Status, Witness};

#[cfg(test)]
mod properties;
