//! Finite fields and dense linear algebra over them.

mod field;
mod matrix;

pub use field::{is_prime, Fe, FiniteField};
pub use matrix::{
    all_subspaces, enumerate_subspace, extend_to_span, gaussian_binomial, rank_of_vectors, FieldMatrix, SpanIter,
};
