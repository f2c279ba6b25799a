//! Structural analysis of CNF clause-sets.
//!
//! Deficiency and surplus, matching autarkies, minimal unsatisfiability and
//! its transformations, the non-Mersenne degree bounds, the autarky-reduction
//! pipeline and a small exhaustive enumerator of unsatisfiable hitting
//! clause-sets.

pub mod bounds;
pub mod classify;
pub mod dimacs;
pub mod enumerate;
pub mod error;
pub mod matching;
pub mod model;
pub mod packed;
pub mod reduce;
pub mod suites;
pub mod transform;

pub use error::{Error, Result};
pub use model::{Clause, ClauseSet, Lit, Measures, MultiClauseSet, PartialAssignment, Var, VarSet};
