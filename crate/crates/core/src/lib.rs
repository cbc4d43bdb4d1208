//! Norm-maintaining functions on finite-dimensional instances.
//!
//! The crate models a pair of normed spaces `X ⊂ Y` where `X` carries its own
//! norm, and decides whether an element keeps its norm when viewed in `Y`
//! (the `LH` space) or does so only in the limit along a witness sequence
//! (the weaker `LHW` space). Around that core it provides:
//!
//! * [`normed`]: evaluable norms, norm-axiom verification and the
//!   [`normed::ElementSpace`] abstraction every checker works against;
//! * [`sequence`] and [`weak`]: finite witness sequences with declared tails,
//!   limsup estimation, weak convergence and the Schur check;
//! * [`delta`]: norms defined as the sup (or inf) of a kernel over a set of
//!   point pairs of a finite metric space, with Lipschitz and Hölder
//!   instances and the strong, weak and towards-a-point attainment detectors;
//! * [`membership`]: certificate-producing membership checkers and the
//!   upgrade paths that derive `LH` membership from attainment data;
//! * [`projection`]: set-valued metric projection with exact, LP and
//!   pattern-search solvers, proximinality classification, triangularity and
//!   discrete Bochner spaces;
//! * [`renorm`]: the seminorm induced on `Y` by projecting onto `X`, its null
//!   space, quotient representatives and the `X = LH(X, Ỹ)` verification.

pub mod delta;
pub mod error;
pub mod linalg;
pub mod membership;
pub mod normed;
pub mod projection;
pub mod renorm;
pub mod rng;
pub mod sequence;
pub mod tolerance;
pub mod weak;

pub use error::{Error, Result};
pub use linalg::{Matrix, Vector};
pub use tolerance::Tolerance;
