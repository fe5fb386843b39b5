//! Exact certification of Galois-group conditions on characteristic
//! polynomials of integer matrices and graphs, and rigorous decisions on the
//! vanishing of eigenvector-matrix minors.

pub mod analysis;
pub mod arith;
pub mod campaign;
pub mod error;
pub mod exec;
pub mod galois;
pub mod graphs;
pub mod harness;
pub mod krylov;
pub mod linalg;
pub mod minors;
pub mod poly;
pub mod serde_util;
pub mod spectral;

pub use error::{Error, Result};
