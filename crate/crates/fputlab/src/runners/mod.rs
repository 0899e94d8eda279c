//! One runner per subcommand. Each runner takes a validated configuration,
//! performs the experiment, and returns a [`crate::report::Report`]; the
//! binary and the test suite share these entry points.

mod compare;
mod evolve;
mod scan;
mod solve_cmd;
mod verify;

pub use compare::run_compare_lattice;
pub use evolve::{parse_field, run_evolve, FieldSel};
pub use scan::run_residual_scan;
pub use solve_cmd::{closed_form_obstruction, run_solve, run_toda_scan};
pub use verify::{run_verify_hierarchy, run_verify_tables};
