//! Finite extension problems: orders on a symmetric window that satisfy the
//! local invariance condition and prescribe `g ≺ g⁻¹` exactly on a set `R`.
//!
//! [`peel_solve`] builds a solution by removing extreme points;
//! [`backtrack_solve`] is an independent exhaustive search used to
//! cross-check it, and [`tower_solve`] compares solutions on nested balls.

mod backtrack;
mod peel;
mod problem;
mod rset;
mod tower;

pub use backtrack::{backtrack_solve, SearchOutcome, DEFAULT_BACKTRACK_CAP};
pub use peel::peel_solve;
pub use problem::{validate_solution, ExtensionProblem, ValidationReport};
pub use rset::RSet;
pub use tower::{tower_solve, TowerLink, TowerReport};
