//! Deciding Gromov-hyperbolicity of Coxeter groups through the geometry
//! of almost negative matrices.
//!
//! The toolkit covers the full pipeline behind the hyperbolicity
//! criterion: cosine matrices of Coxeter systems, classification of
//! almost negative matrices (positive definite / parabolic / degenerate
//! / indefinite), link matrices, nerve complexes with their intrinsic
//! piecewise spherical metrics, the zero-row-link splitting dichotomy,
//! and the chamber and Davis-poset constructions for finite groups.
//! The `cli` module exposes all of it as a command-line tool.
//!
//! ```
//! use moussong::{decide, CoxeterSystem};
//!
//! // The (3,3,3) triangle group tiles the Euclidean plane.
//! let sys = CoxeterSystem::from_text("3\n1 3 3\n3 1 3\n3 3 1")?;
//! assert!(!decide(&sys)?.is_hyperbolic());
//! # Ok::<(), moussong::Error>(())
//! ```

pub mod anm;
pub mod chamber;
pub mod cli;
pub mod coxmat;
pub mod davis;
pub mod hyperbolicity;
pub mod nerve;

mod error;
mod index_set;
mod linalg;

pub use anm::{AlmostNegativeMatrix, LemmaBConclusion, LemmaBReport, MatrixClass};
pub use coxmat::{CoxeterOrder, CoxeterSystem};
pub use error::Error;
pub use hyperbolicity::{decide, HyperbolicityVerdict, Witness};
pub use index_set::IndexSet;
pub use nerve::{build_nerve, GeodesicResult, NerveComplex, NervePoint};

/// Order guard for the subset enumerations that are exponential in the
/// number of generators (nerve construction, hyperbolicity decision,
/// chamber vertices).
pub const DEFAULT_MAX_ORDER: usize = 20;

pub type Result<T> = std::result::Result<T, Error>;
