//! Exact, degree-truncated computation in free Lie algebras, tangential
//! derivations and cyclic words, with checkers and degree-by-degree solvers
//! for Kashiwara–Vergne type equations and graded Grothendieck–Teichmüller
//! equations.

pub mod cyclic;
pub mod divjac;
pub mod error;
pub mod freelie;
pub mod grt;
pub mod kvsolve;
pub mod lie_algebra;
pub mod linalg;
pub mod rational;
pub mod report;
pub mod tder;
pub mod terms;
pub mod text;
pub mod wiring;

pub use error::{Error, Result};
pub use rational::Q;

/// Engine version recorded in job manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
