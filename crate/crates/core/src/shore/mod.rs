//! Oriented geodesics of the upper half-plane with exact endpoints, the
//! form–geodesic dictionary, Mumford–Tate tori of geodesics, and special
//! sets carrying the reciprocity action.

mod geodesic;
mod point;
mod special;
mod torus;

pub use geodesic::{form_of_geodesic, geodesic_of_form, Lilas, OrientedGeodesic, Sign, Signs, PLUS_PLUS};
pub use point::ExtendedReal;
pub use special::{special_set, torsor_check, Counterexample, SpecialPoint, TorsorReport, TABLE_LIMIT};
pub use torus::{bmt, is_special, TorusDescriptor, TorusKind};
