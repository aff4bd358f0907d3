//! Explicit families of locally invariant orders and fields of cones.

mod alpha;
mod cofinal;
mod lex;
mod quadratic;

pub use alpha::{alpha_distinctness_witness, alpha_order, compare_alpha, f_alpha_value, AlphaWitness};
pub use cofinal::{
    check_superadditivity, cofinal_index, f_phi, rf_field, CofinalScheme, PhiFunction,
    DEFAULT_INDEX_BOUND,
};
pub use lex::{lex_compare, LexScheme};
pub use quadratic::{ExtendedValue, QuadraticIrrational};
