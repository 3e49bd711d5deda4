//! Exact sign-determined torsion for one-parameter families of twisted chain
//! complexes.
//!
//! The generic machinery (polynomials, rational functions, matrices) works
//! over any exact [`scalar::Field`]; the aliases below fix the coefficient
//! field to the Gaussian rationals, which is what the rest of the crate uses.

pub mod complex;
pub mod corpus;
pub mod deformation;
pub mod eta;
pub mod group_ring;
pub mod io;
pub mod knot;
pub mod report;
pub mod run;
pub mod linalg;
pub mod roots;
pub mod scalar;

pub use scalar::GaussRat;

/// Arbitrary-precision rational number.
pub type Rat = num_rational::BigRational;
/// Polynomial in the family parameter `t` over ℚ(i).
pub type Poly = scalar::Poly<GaussRat>;
/// Rational function in `t` over ℚ(i); the carrier of matrix entries and torsion values.
pub type RatFunc = scalar::RatFunc<GaussRat>;
/// Matrix of rational functions.
pub type FamilyMatrix = linalg::Matrix<RatFunc>;
/// Chain complex of free modules over the rational function field.
pub type BasedChainComplex = complex::ChainComplex<RatFunc>;
