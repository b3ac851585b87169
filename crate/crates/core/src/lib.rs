//! Exact algebra workbench: the Gaudin Bethe algebra, the rational Cherednik
//! algebra of type A and the Calogero-Moser space, at small `N`, over the
//! rationals.

pub mod bethe;
pub mod bipoly;
pub mod cherednik;
pub mod cm;
pub mod error;
pub mod expr;
pub mod golden;
pub mod matrix;
pub mod multisym;
pub mod perm;
pub mod poly;
pub mod quasiexp;
pub mod random;
pub mod rational;
pub mod ring;
pub mod series;
pub mod upoly;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Q;
