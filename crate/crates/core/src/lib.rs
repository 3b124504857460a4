//! Exact computations with finite-dimensional ring extensions `B -> A`:
//! tensor squares, centralizers and endomorphism rings, certificates for
//! separability-type properties, and explicit module-category equivalences.

pub mod algebra;
pub mod bimodule;
pub mod canonical;
pub mod certify;
pub mod corpus;
pub mod equivalences;
pub mod error;
pub mod group;
pub mod io;
pub mod linalg;
pub mod normality;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod subspace;

pub use algebra::{Extension, FDAlgebra};
pub use bimodule::{Bimodule, HomSpace, QuotientPresentation, TensorProduct};
pub use error::{Error, Result};
pub use group::GroupData;
pub use linalg::{Matrix, Vector};
pub use scalar::{Field, Scalar};
pub use subspace::Subspace;
