//! Exact finite-field toolkit for joints of line configurations.
//!
//! The crate computes joints with multiplicities, builds vanishing
//! polynomials with prescribed orders or prescribed lines, runs the
//! weighted-incidence refinement on factor lists, and generates the grid,
//! plane and Heisenberg configurations together with bound reports.

pub mod algebra;
pub mod constructions;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod interp;
pub mod joints;
pub mod par;
pub mod poly;
pub mod prune;

pub use error::{Error, Result};
