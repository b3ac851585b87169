//! The Gaudin side: the space `V_1`, the universal Bethe polynomial and its
//! row-determinant oracle.

pub mod coeffs;
pub mod oracle;
pub mod v1;

pub use coeffs::{bethe_matrices_at, bethe_poly_apply, BetheCoeffs};
pub use oracle::{rdet_oracle, DiffOp};
pub use v1::{iota, iota_inv, pr_iota_inv, Side, V1Element};
