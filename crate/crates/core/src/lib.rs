//! Effective resistances, Kirchhoff index and admissible invariants of the
//! ladder graph L_n, computed exactly.
//!
//! Closed forms over Q(√3) live in [`formulas`] and [`invariants`]. Two
//! independent routes check them: [`reduction`] rebuilds every resistance
//! by series, parallel and star reductions, and [`oracle`] solves the
//! Laplacian exactly. [`verify`] runs all the cross-checks.

pub mod cli;
pub mod error;
pub mod field;
pub mod formulas;
pub mod invariants;
pub mod ladder;
pub mod oracle;
pub mod reduction;
pub mod render;
pub mod sequences;
pub mod table;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Rational, Surd3};
pub use invariants::InvariantSet;
pub use ladder::{LadderSpec, Side, VertexRef};
pub use table::{ResistanceTable, TableSource};
