//! Imaginary quadratic checks: definite forms, `j`-invariants, Hilbert class
//! polynomials and splitting of primes.

mod consistency;
mod dform;
mod hilbert;
mod j;
pub mod modp;
mod numeric;

pub use consistency::{main_theorem_consistency, represented_by, search_primes, ConsistencyReport, PrimeRecord};
pub use dform::{check_negative_discriminant, definite_class_group, reduced_definite_forms, DefiniteClassGroup, DefiniteForm};
pub use hilbert::{coefficient_digits, hilbert_at_digits, hilbert_class_polynomial, ClassPolynomial, DESK_LIMIT, RESIDUAL_TOLERANCE};
pub use j::{distance, j_invariant, j_invariant_eisenstein, log10_abs_q, tau_of_form, to_fixed, JValue};
pub use numeric::{max_digits, round_to_bigint, to_f64, Complex, Ctx};
