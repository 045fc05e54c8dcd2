//! Exact 2-descent orbit machinery for monic even-degree hyperelliptic curves
//! `y^2 = f(x)`, `f` monic separable of degree `2n+2`.
//!
//! The library works over `Q` with exact arbitrary-precision arithmetic
//! throughout (no floating point in any verified identity). The main pieces:
//!
//! - [`poly`]: integer/rational polynomial algebra, resultants and
//!   discriminants, factorization over `F_p`, `Z` and quadratic fields,
//!   Sturm sequences.
//! - [`quadform`]: symmetric bilinear forms over `Q`: diagonalization,
//!   Hilbert symbols, signature/discriminant/Hasse invariants, splitness,
//!   and hyperbolic basis completion.
//! - [`etale`]: arithmetic in `L = Q[x]/f(x)`, the pairings `<,>_alpha`,
//!   and square-class testing in `L*/L*^2` and `L*/L*^2 Q*`.
//! - [`orbits`]: self-adjoint operators with characteristic polynomial `f`:
//!   the distinguished representative, shape witnesses, two-torsion
//!   dimensions from cycle types, orbit counting, and a finite-field census.
//! - [`descent`]: the point-to-orbit pipeline: divisor classes to classes
//!   `alpha` in `L*`, isotropic planes from point data, soluble orbit
//!   representatives, and integral pairs `(I, alpha)`.
//! - [`localdata`]: local invariants at odd primes of good reduction, at 2
//!   and at the real place, with the product formula.
//! - [`cusp`]: symbolic verification of the cusp-region exponent
//!   combinatorics for the height-ordered count.
//! - [`stats`]: height-ordered enumeration of curve invariants, the
//!   minimality sieve, and empirical density reports.

pub mod arith;
pub mod error;
pub mod etale;
pub mod jsonio;
pub mod linalg;
pub mod orbits;
pub mod poly;
pub mod quadform;

pub use error::Error;

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
