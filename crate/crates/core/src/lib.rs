//! Extremal-graph tools for elementary trapping sets of LDPC codes.

pub mod error;
pub mod graph;
pub mod census;
pub mod ets;
pub mod qc;
pub mod reproduce;
pub mod sim;
pub mod turan;

pub use error::{Error, Result};
pub use graph::Graph;
