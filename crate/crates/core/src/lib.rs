//! Locally invariant orderings of torsion-free groups.
//!
//! A strict partial order `≺` on a group is *locally invariant* when, for
//! every `g` and every `h ≠ id`, either `g ≺ hg` or `g ≺ h⁻¹g`. This crate
//! works with such orders in three equivalent forms:
//!
//! * [`order::OrderOracle`], a global comparison function, and
//!   [`order::OrderTable`], an explicit relation on a finite window;
//! * [`cones::ConeField`], an equivariant field of cones `(P_f)`;
//! * the finite extension problems of [`extend`], solved by peeling extreme
//!   points.
//!
//! [`constructions`] builds explicit families (irrational-slope orders on
//! subgroups of ℚ, the partial fields `R_f`, lexicographic extensions) and
//! [`diffuse`] computes extreme points. Every global object is certified by
//! exhaustive checks over finite windows.

pub mod cones;
pub mod constructions;
pub mod diffuse;
pub mod error;
pub mod extend;
pub mod group;
pub mod order;

pub use error::{Error, Result};
pub use group::{Element, GroupKind, GroupSpec, Rational, Window};
pub use order::{Comparison, OrderOracle, OrderTable};
