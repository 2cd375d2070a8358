//! Exact algebra for graded `O(N)` / `Sp(N)` tensor models: pairings and
//! their signs, Young diagrams, the Brauer algebra and its action on tensors,
//! Wick expansion over stranded graphs, and an independent numerical oracle.

pub mod brauer;
pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod grading;
pub mod io;
pub mod linalg;
pub mod model;
pub mod oracle;
pub mod poly;
pub mod rational;
pub mod representation;
pub mod young;

pub use error::{Error, Result};
pub use grading::Grading;
