//! Hall algebras: the generic element type, the Ringel–Hall algebra of representations and
//! Bridgeland's algebra of two-periodic complexes.

pub mod bridgeland;
mod element;
pub mod identities;
pub mod relations;
pub mod ringel;

pub use bridgeland::{
    extension_counts_c2, hall_number_c2, projective_aut_order, subcomplex_oracle, subcomplex_tally, ue_pairing,
    BridgelandHall, DHElement, DHKey, ExtCounts, Generator, HallElementC2, ReducedDH,
};
pub use element::{HallElement, HallStructure};
pub use identities::{associativity, res_coassociativity, res_duality, ue_fits, Tally};
pub use relations::{serre_element, verify_qgroup_relations, verify_ringel_serre, RelationCheck, RelationReport};
pub use ringel::{
    extension_class_counts, filtration_number_oracle, filtration_number_rp, filtration_numbers_rp, ExtendedKey,
    ExtendedRingel, HallElementA, RingelHall,
};
