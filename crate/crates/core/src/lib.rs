//! Exact computations for stability conditions on the 2-Calabi-Yau category of
//! the resolved A1 surface, and a concrete preprojective-module test category.

pub mod error;
pub mod exact;
pub mod heartlab;
pub mod homtable;
pub mod kcharge;
pub mod linalg;
pub mod nfcalc;
pub mod pimod;
pub mod reduction;
pub mod spectral;

pub use error::{Error, Result};
