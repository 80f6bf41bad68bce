//! Exact arithmetic for the real multiplication programme.
//!
//! The crate is layered bottom-up:
//!
//! - [`corearith`]: big integers, matrices, Smith normal form, finite abelian
//!   groups and continued fractions of quadratic irrationals.
//! - [`quadforms`]: indefinite binary quadratic forms, reduction cycles, Gauss
//!   composition, narrow and wide class groups, fundamental units and ideals.
//! - [`rayclass`]: narrow ray class groups `Cl⁺(D, N)`, transition maps between
//!   levels and the reciprocity action on registered torsors.
//! - [`shore`]: oriented geodesics on the upper half-plane, their bad
//!   Mumford–Tate tori and the special subsets carrying the reciprocity action.
//! - [`higherrank`]: the tori `𝔻_k`, `𝕋_k`, the embedding `f_n : G_n → GSp_2n`,
//!   shore data of type `(k₀, k₁)` and reflex fields of pure quartic fields.
//! - [`cmoracle`]: imaginary quadratic class groups, j-invariants, Hilbert class
//!   polynomials and splitting checks modulo primes.
//! - [`acceptance`]: the batch acceptance suite shared by the CLI and tests.

pub mod acceptance;
pub mod cmoracle;
pub mod corearith;
pub mod error;
pub mod higherrank;
pub mod quadforms;
pub mod rayclass;
pub mod shore;

pub use error::{Error, Result};
