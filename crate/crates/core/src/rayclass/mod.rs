//! Ray class groups of real quadratic orders at principal levels, the maps
//! between levels, and torsors under them.

mod group;
mod residue;
mod torsor;

pub use group::{ray_class_group, transition, LevelStructure, RayClass, RayClassGroup};
pub use residue::{residue_unit_group, LocalUnitGroup, Residue, ResidueRing, ResidueUnitGroup};
pub use torsor::{Torsor, TorsorPoint, TorsorRegistry};
