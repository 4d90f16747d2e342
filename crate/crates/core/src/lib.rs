//! Finite logical matrices for the paraconsistent hierarchy `Ciu^n`.
//!
//! For every level `n` the crate builds the matrix `M_n = (A_n, D_n)`, whose
//! truth values are bit tuples of length `n + 1` with no two adjacent zeros,
//! and decides logical consequence two independent ways:
//!
//! * [`consequence::entails_matrix`] enumerates matrix valuations and extends
//!   them homomorphically through the tuple operations of [`matrix`];
//! * [`consequence::entails_bival`] enumerates canonical bivaluations
//!   ([`bival::BivalSeed`]) and evaluates formulas with the scalar rules.
//!
//! The two deciders agree on every sequent; [`consequence::cross_check`] runs
//! both and reports any disagreement. The sizes `|A_n|` follow the Fibonacci
//! numbers, which [`fibword`] reproduces through the substitution
//! `0 -> 1, 1 -> 10`.
//!
//! ```
//! use ciu::{consequence, formula, Limits};
//!
//! let explosion = formula::parse_sequent("p, ~p |- q").unwrap();
//! let limits = Limits::default();
//! assert!(consequence::entails_matrix(0, &explosion, &limits).unwrap().holds);
//! assert!(!consequence::entails_matrix(1, &explosion, &limits).unwrap().holds);
//! ```

pub mod bival;
pub mod cli;
pub mod consequence;
mod error;
pub mod fibword;
pub mod formula;
pub mod matrix;
pub mod sample;

pub use bival::{BivalSeed, MatrixValuation};
pub use consequence::{Countermodel, EntailmentVerdict};
pub use error::{Error, Result};
pub use formula::{Formula, NegTower, Sequent};
pub use matrix::{GenericMatrix, LogicMatrix, TruthValue};

/// Resource guards shared by every enumerating operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest support `|A_n|` that may be built.
    pub max_support: u64,
    /// Largest number of valuations a single entailment query may enumerate.
    pub max_evals: u64,
    /// Largest number of cells in a materialized `⊃` table.
    pub max_table: u64,
    /// Largest `k` accepted by [`fibword::expansion`].
    pub max_word_index: u32,
    /// Worker threads used by the entailment deciders.
    pub jobs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_support: 1_000_000,
            max_evals: 10_000_000,
            max_table: 10_000_000,
            max_word_index: 30,
            jobs: 1,
        }
    }
}
