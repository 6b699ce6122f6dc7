//! Exact rational linear programming by variable substitution.
//!
//! The solver works on the homogenized cone of `max c.x s.t. Ax <= b,
//! x >= 0`: it repeatedly picks one variable, replaces it by a bounding
//! linear function of the others, and recovers the optimizing vertex by
//! backward substitution through the accumulated triangular ledger. If the
//! homogenization variable collapses to zero the companion problem is
//! searched instead, giving the negative maximum.
//!
//! Everything is exact (`num-rational` bignums, no floats), every run leaves
//! a replayable step trace, and an independent two-phase simplex oracle plus
//! a fuzzing harness cross-check the method's answers instance by instance.
//!
//! See the `examples/` directory for runnable entry points per capability;
//! the `substlp` binary exposes the same surfaces as subcommands.

pub mod bounds;
pub mod cli;
pub mod cone;
pub mod fuzz;
pub mod interval;
pub mod io;
pub mod lpp;
pub mod oracle;
pub mod pmrp;
pub mod rat;
pub mod selector;

#[cfg(test)]
pub(crate) mod testdata;

pub use cone::{dualize, EqualityLedger, LedgerEntry, Tableau};
pub use interval::{DomainFlavor, HClass, IntervalMag};
pub use io::{parse_problem, CounterexampleRecord, ProblemFile};
pub use lpp::{lpp_solve, LppKind, LppOutcome};
pub use oracle::{simplex_solve, verify_solution, OracleOutcome, OracleStatus};
pub use pmrp::{backward_substitute, PmrpOutcome, PmrpStatus};
pub use rat::{ExtRat, Rat, RatMatrix};
