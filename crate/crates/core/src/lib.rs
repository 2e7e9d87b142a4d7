//! Steiner Tree on unit disk graphs and disk graphs.
//!
//! Given an intersection graph of disks, a terminal set `R` and a budget `k`,
//! decide whether some tree spans `R` while using at most `k` non-terminal
//! ("Steiner") vertices, and produce that tree when it exists.
//!
//! The crate bundles:
//!
//! * [`geometry`]: integer-exact disk instances and intersection graphs.
//! * [`cliquegrid`]: clique-grid representations and cell graphs of unit disk graphs.
//! * [`pathdecomp`]: clique path decompositions over cells, their nice form, and validation.
//! * [`subexp`]: the shifting + path-decomposition solver, `n^O(sqrt(t+k))`.
//! * [`fpt`]: terminal-component contraction followed by Dreyfus-Wagner, `2^O(k) poly(n)`.
//! * [`oracle`]: brute force ground truth and witness verification.
//! * [`gadgets`]: generators for the connected-vertex-cover and grid-tiling reductions.
//! * [`instance_gen`]: seeded random instances.
//! * [`io`] and [`cli`]: text formats and the command front end.

pub mod cli;
pub mod cliquegrid;
pub mod error;
pub mod fpt;
pub mod gadgets;
pub mod geometry;
pub mod graph;
pub mod instance_gen;
pub mod io;
pub mod oracle;
pub mod pathdecomp;
pub mod subexp;

pub use error::{Error, Result};
pub use geometry::{DiskInstance, ScaledPoint};
pub use graph::{Graph, SteinerTree};

/// Result of a decision procedure. `Yes` always carries a witness tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Answer {
    Yes(SteinerTree),
    No,
}

impl Answer {
    pub fn is_yes(&self) -> bool {
        matches!(self, Answer::Yes(_))
    }

    pub fn tree(&self) -> Option<&SteinerTree> {
        match self {
            Answer::Yes(t) => Some(t),
            Answer::No => None,
        }
    }
}

/// An answer together with the amount of work the solver did to reach it.
///
/// `states` counts subsets for the oracle, table cells for Dreyfus-Wagner and
/// dynamic-programming states for the subexponential solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub answer: Answer,
    pub states: u64,
}
