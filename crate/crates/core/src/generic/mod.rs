//! The generic layer: Hall polynomials interpolated in q, the algebras over Q[v, v⁻¹] they define,
//! the bar involution and canonical bases of the nilpotent part, and embedding coefficient checks.

pub mod canonical;
pub mod golden;
pub mod phi;
pub mod poly;
pub mod ratfunc;
pub mod table;

pub use canonical::{
    bar_transition, canonical_basis, divided_power_words, dual_canonical_basis, monomial_expand, normalization_exponent,
    ordered_classes, BarTransition, CanonicalBasis, LaurentMatrix,
};
pub use golden::{three_orbit_check, three_orbit_golden, ThreeOrbitGolden};
pub use phi::{phi_embedding_check, PhiReport};
pub use poly::{interpolate_counts, QPoly};
pub use ratfunc::RatFunc;
pub use table::{
    interpolate_structure_poly, specialize, ComplexSide, GenericElement, GenericHall, GenericStructureTable, HallSide,
    RepSide, Side, TableEntry, TableRow, DEFAULT_PRIMES,
};

use serde::Serialize;

/// One named pass/fail line of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}
