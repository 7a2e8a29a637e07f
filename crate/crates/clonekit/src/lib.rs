//! Boolean clones, Post's lattice, and the complexity landscape of
//! propositional and modal fragments.
//!
//! The crate is organised bottom-up:
//!
//! * [`boolfn`] — Boolean functions as packed truth tables, the connective
//!   catalog, and Post's properties.
//! * [`clones`] — closure, membership, identification of clones, and the
//!   lattice structure of Post's lattice.
//! * [`proplogic`] — formulas over a basis, evaluation, size measures,
//!   expressibility, and fragment-specialised satisfiability and counting.
//! * [`classifier`] — executable dichotomy theorems: basis plus problem in,
//!   complexity verdict out.
//! * [`modal`] — modal formulas, Kripke semantics, derived operators, and
//!   the clone-theoretic view of modal logics.
//! * [`teachlearn`] — teaching sets, exact learning with membership queries,
//!   parity lower bounds, and polynomial-time characterization reductions.
//! * [`cli`] — the command-line front end behind the `clonekit` binary.

pub mod boolfn;
pub mod cli;
pub mod classifier;
pub mod clones;
pub mod config;
pub mod error;
pub mod modal;
pub mod proplogic;
pub mod teachlearn;

pub use boolfn::{BoolFn, Connective};
pub use clones::{Basis, Family, NamedClone};
pub use config::Config;
pub use error::{Error, Result};
