//! Equivariant fields of cones.
//!
//! A field `(P_f)_{f ∈ G}` assigns a subset of `G` to every group element.
//! It encodes a locally invariant strict partial order through
//! `f ≺ g ⟺ g f⁻¹ ∈ P_f`, and conversely `P_f = { g : f ≺ g f }`. The
//! conditions checked here are
//!
//! 1. `P_f ∪ P_f⁻¹ = G ∖ {id}`;
//! 2. `g ∈ P_f` and `h ∈ P_{gf}` imply `hg ∈ P_f`;
//! 3. (totality) for `g ≠ h`, `g h⁻¹ ∈ P_h` or `h g⁻¹ ∈ P_g`.
//!
//! Fields are global oracles. Windows only bound how much of a field is
//! checked.

mod axioms;
mod field;
mod left_order;
mod magnus;

pub use axioms::{cone_axiom_report, AxiomReport};
pub use field::{
    act, embed_left_order, field_from_order, finite_table_field, iota, order_from_field,
    subbasic_member, ConeField, Provenance,
};
pub use left_order::{ConeCheck, LeftOrderCone};
