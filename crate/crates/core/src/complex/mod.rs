//! Two-periodic complexes of projective representations.

mod category;
mod object;

pub use category::{
    class_degree_dims, class_ue, complex_classes_up_to, complex_classes_with_ue, resolution_mults, C2Category, HtpData,
};
pub use object::{ChainMap, ComplexClass, ComplexObj};
pub(crate) use category::add_left_product;
