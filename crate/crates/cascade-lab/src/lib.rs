//! Combinatorics of minimal degrees, generalized cascades of orthogonal
//! roots and the quasi-homogeneity certificate for homogeneous spaces G/P.
//!
//! Every computation is exact. Simple roots follow Bourbaki numbering in all
//! inputs and outputs; internally they are 0-based.

pub mod cascade;
pub mod check;
pub mod degree;
pub mod error;
pub mod harness;
pub mod minimal;
pub mod quasihom;
pub mod rootsys;
pub mod weyl;

pub use degree::{Context, Degree};
pub use error::{Error, Result};
pub use rootsys::{DynkinSpec, ParabolicSubset, RootSystem, SimpleSet};
pub use weyl::WeylElement;
