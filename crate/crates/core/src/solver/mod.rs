//! Exact oracles: colorability of given lists, choosability by canonical
//! enumeration, and the separation numbers `sep` and `fsep`.

mod choosability;
mod colorability;
mod enumerate;
pub(crate) mod feasibility;

use crate::lists::{BColoring, ListAssignment};

pub use choosability::{compute_sep, compute_sep_with_witness, decide_choosable, SolveOptions, DEFAULT_BUDGET};
pub use colorability::{color_with_lists, free_color_with_lists, is_colorable};
pub use enumerate::{cycle_automorphisms, enumerate_canonical, CanonicalSpace, MAX_ORDER};

/// Result of an exact query. `witness` accompanies a positive colorability
/// verdict; `counterexample` accompanies a negative choosability verdict.
#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub colorable: bool,
    pub witness: Option<BColoring>,
    pub counterexample: Option<ListAssignment>,
    pub nodes_explored: u64,
}

impl SolveOutcome {
    pub(crate) fn verdict(colorable: bool, nodes_explored: u64) -> Self {
        SolveOutcome {
            colorable,
            witness: None,
            counterexample: None,
            nodes_explored,
        }
    }
}
