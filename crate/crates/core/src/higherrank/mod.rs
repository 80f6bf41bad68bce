//! Shore data of the Siegel datum in higher rank: the embedding `f_n` of
//! `G_n` into `GSp_{2n}`, the tori `𝔻_k` and `𝕋_k`, the morphisms
//! `h_{k₀,k₁}`, the reflex field of the pure quartic example, and the reflex
//! norm in rank one.

mod datum;
mod gsp;
mod norm;
mod reflex;
mod torus;

pub use datum::{h_eval, ShoreDatum, SymbolicEntry};
pub use gsp::{f_n, scalar, similitude_factor, symplectic_form};
pub use norm::{reciprocity_norm, reciprocity_norm_rank1};
pub use reflex::{
    minimal_polynomial, reflex_field_pure_quartic, Automorphism, ClosureElement, ReflexField, ReflexGenerator,
    SubgroupRecord, HODGE_TAGS,
};
pub use torus::{torus_membership, Membership, TorusPoint};
