//! Dynkin quivers, their representations over F_q, and iso-class bookkeeping.

mod category;
mod dynkin;
pub mod proj;
mod rep;

pub use category::{
    aut_order, classes_of_dim, classes_up_to, degenerates_to, directed_decomposition, ext_dim_classes,
    gl_order, hom_dim_classes, hom_fingerprint, orbit_dim, RepCategory, RepIsoClass, Resolution,
};
pub use dynkin::{DimVector, DynkinQuiver, DynkinType};
pub use rep::{ext1_dim, hom_basis, hom_dim, ExtPresentation, RepMorphism, Representation};
