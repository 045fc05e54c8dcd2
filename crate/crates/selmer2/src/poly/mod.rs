//! Exact polynomial algebra: arbitrary-precision integer and rational
//! polynomials, resultants and discriminants, factorization over `F_p`,
//! `Z` and quadratic fields, and Sturm sequences.

pub mod curve;
pub mod factor_z;
pub mod hensel;
pub mod int_poly;
pub mod modp;
pub mod parse;
pub mod quad;
pub mod rat_poly;
pub mod sturm;

pub use curve::CurveInvariants;
pub use factor_z::{factor_over_z, ZFactors};
pub use hensel::hensel_lift;
pub use int_poly::IntPoly;
pub use modp::{factor_mod_p, ModFactors, ModPoly};
pub use parse::{parse_curve, parse_poly};
pub use quad::{factor_over_quadratic, QuadElt, QuadFactorization, QuadPoly};
pub use rat_poly::RatPoly;
pub use sturm::{complex_pair_count, real_root_count};
