//! Strict partial orders as explicit tables and as global comparison
//! oracles, the locally-invariant condition, and the conversion to the
//! right-multiplication convention.

mod li;
mod oracle;
mod table;

pub use li::{
    check_li_condition, check_li_condition_form, convert_convention, find_disagreement, LiCheck,
    LiForm,
};
pub use oracle::{Comparison, OrderOracle};
pub use table::{is_total, transitive_closure, validate_strict_partial_order, OrderTable, Violation};
