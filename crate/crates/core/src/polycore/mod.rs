//! Polynomial arithmetic, Taylor re-centering, Laurent series and rational curves.

pub mod curve;
pub mod laurent;
pub mod poly;

pub use curve::{Denominator, RationalPHCurve};
pub use laurent::{laurent_expand, LaurentSeries};
pub use poly::{det3, det_poly, poly_gcd, ScalarPoly, Vec3, Vec3Poly};
