//! Indefinite binary quadratic forms and the arithmetic of real quadratic
//! orders: reduction cycles, Gauss composition, narrow and wide class groups,
//! fundamental units, and ideals with explicit generators.

mod classgroup;
mod element;
pub(crate) mod form;
mod ideal;
mod unit;

pub use classgroup::{
    composition_closure_order, narrow_class_group, prime_forms, reduced_forms, wide_class_number,
    CyclePartition, NarrowClassGroup,
};
pub use element::QuadElement;
pub use form::{BinaryQuadraticForm, Discriminant};
pub use ideal::{Ideal, IdealClassGroup, TrackedIdeal};
pub use unit::{fundamental_unit, FundamentalUnit};
