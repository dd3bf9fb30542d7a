//! Modules over `L(E)`: the actions induced by branching systems and by
//! representation graphs, relation checks, submodule closures, hom spaces
//! and the Schur-type checks on cycle modules.

mod actions;
mod closure;
mod hom;
pub mod linalg;
mod schur;

pub use actions::{
    act_v, act_w, act_word, verify_e_family, ActionResult, EFamilyReport, LetterAction,
    ModuleVector, RelationViolation, VModule, WModule,
};
pub use closure::{submodule_closure, ClosureReport};
pub use hom::{hom_space, restrict_by_name, satisfies_constraints, HomSolution, LinearMap};
pub use schur::{
    check_schur, hom_dimensions, spine_action_table, SchurDepthReport, SchurPreconditions,
    SchurReport, TableCase, TableRow,
};
