//! Exact foundations: integers, matrices, Smith normal form, finite abelian
//! groups and continued fractions of quadratic irrationals.
//!
//! Nothing in this module touches floating point.

pub mod group;
pub mod intmath;
pub mod matrix;
pub mod quadratic;
pub mod snf;

pub use group::{enumerate_abelian_group, quotient_group, EnumeratedGroup, FiniteAbelianGroup, GroupHom};
pub use matrix::{IntegerMatrix, Matrix, RationalMatrix};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use quadratic::{cf_expansion, ContinuedFraction, QuadraticIrrational};
pub use snf::{smith_normal_form, SmithForm};
