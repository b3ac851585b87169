//! The rational Cherednik algebra `H_N` of type A.

pub mod alpha;
pub mod central;
pub mod dunkl;
pub mod helement;
pub mod spherical;

pub use central::{check_bound, symbolic_bound, universal_central_poly, CentralCoeffs, CentralJson};
pub use helement::{HElement, HKey};
