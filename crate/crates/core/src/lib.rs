//! Exact construction of canonical bases for spaces of rational
//! Pythagorean-hodograph curves with a prescribed tangent field
//! `F = A i Ā`, and their generalized partial fraction decomposition.
//!
//! All arithmetic is exact over ℚ or a quadratic extension ℚ(√d), `d < 0`.

pub mod cli;
pub mod decompose;
pub mod error;
pub mod exactnum;
pub mod hodograph;
pub mod json;
pub mod linalg;
pub mod polycore;
pub mod singleroot;

pub use error::{Error, Result};
pub use exactnum::{Rational, Scalar};
pub use hodograph::{hodograph_field, Quaternion, QuaternionPoly};
pub use polycore::{Denominator, LaurentSeries, RationalPHCurve, ScalarPoly, Vec3, Vec3Poly};
pub use singleroot::{BasisElement, RootData, SpaceBasis, SpaceKind};
