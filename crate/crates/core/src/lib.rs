//! Exact torus-equivariant cohomology of ordinary and weighted projective
//! space, computed as rings of polynomial tuples.
//!
//! * [`polyring`]: sparse rational polynomials in `t_0, …, t_n`, divided
//!   differences, exact division by linear forms, simple-root coordinates.
//! * [`gkm`]: edge weights of `w^λ P^n` and the GKM membership test.
//! * [`canonical`]: Schubert classes, Kawasaki constants, weighted classes.
//! * [`structconst`]: structure constants by divided differences and by a
//!   triangular localization solve.
//! * [`export`] and [`verify`]: table output and end-to-end self-checks.

pub mod canonical;
pub mod error;
pub mod export;
pub mod gkm;
pub mod polyring;
pub mod structconst;
pub mod verify;

pub use error::{Error, Result};
pub use gkm::{ActionVector, GkmGraph, LocalizedClass, WeightVector};
pub use polyring::{LinearForm, Polynomial, RingMode};
