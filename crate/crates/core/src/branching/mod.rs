//! Extended branching systems, extended representation graphs and the
//! functors between them.

mod erg;
mod functor;
pub mod random;
mod system;

pub use erg::{
    embeds_by_name, expected_emissions, find_isomorphism, validate_erg, ErgBuilder, ErgReport,
    ErgViolation, ExtRepGraph,
};
pub use functor::{eta, theta};
pub use system::{
    embed_usual, validate_eabs, EabsReport, ExtBranchingSystem, RegularSystem, UsualBranchingSystem,
};

use std::fmt::Debug;

use crate::graph::{Ambient, Letter, VertexId};

/// Read access to an extended branching system, finite or not.
///
/// `letter_part(x)` names the set `Y_i` containing `x`, if any. `rho(j, x)`
/// and `rho_inv(j, x)` are only consulted on the domains prescribed for
/// `rho_j` and on `Y_j` respectively.
pub trait BranchingSystem {
    type Point: Clone + Ord + Debug;

    fn ambient(&self) -> &Ambient;
    fn contains(&self, x: &Self::Point) -> bool;
    fn vertex_of(&self, x: &Self::Point) -> VertexId;
    fn letter_part(&self, x: &Self::Point) -> Option<Letter>;
    fn rho(&self, j: Letter, x: &Self::Point) -> Option<Self::Point>;
    fn rho_inv(&self, j: Letter, x: &Self::Point) -> Option<Self::Point>;
}
