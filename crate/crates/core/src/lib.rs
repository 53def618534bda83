//! Variation of instability stratifications for toric GIT quotients.
//!
//! A complete projective toric variety `X_Σ` is the GIT quotient of affine
//! space by a torus `G`, linearized by an ample class `D`. This crate computes,
//! in exact rational arithmetic, how the Kempf-Ness stratification of the
//! unstable locus changes as `D` moves through the ample cone: the adapted
//! one-parameter subgroups, the walls where the stratification may change,
//! and the strata themselves.
//!
//! Module map, bottom up:
//! - [`linalg`], [`poly`], [`cone`]: exact linear algebra, symbolic forms, polyhedral cones;
//! - [`fan`]: fans, primitive collections, state sets, relation lattices;
//! - [`divisor`]: torus-invariant divisors, characters, Cartier tests, Picard bases;
//! - [`ample`]: the ample cone and two-dimensional slices of it;
//! - [`instability`]: potential tables, adapted one-parameter subgroups, destabilizers;
//! - [`walls`]: wall polynomials and chamber signatures;
//! - [`stratify`]: stratifications, their comparison, and ample-equivalence transfer;
//! - [`render`] and [`cli`]: SVG plots and the command-line front end.

pub mod ample;
pub mod cli;
pub mod cone;
pub mod divisor;
pub mod error;
pub mod fan;
pub mod instability;
pub mod linalg;
pub mod poly;
pub mod render;
pub mod stratify;
pub mod walls;

pub use error::{Error, Result};
pub use fan::{Fan, RaySet};
pub use linalg::{QMat, QVec, Rat};
