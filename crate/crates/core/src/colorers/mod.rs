//! Colorings produced by the positive-direction arguments, each with an
//! audit trail of per-vertex decisions.

mod cactus;
mod cycle;
mod greedy;
mod lift;
mod outerplanar;
mod path;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::lists::{coloring_defect, BColoring, Color, ColorSet, ListAssignment};

pub use cactus::cactus_free_color;
pub use cycle::cycle_color_precolored;
pub use greedy::greedy_cycle;
pub use lift::{lift_cycle, lift_step, Base, LiftStep};
pub use outerplanar::outerplanar_color;
pub use path::path_color_precolored;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Greedy,
    Lift,
    PathAmplitude,
    CycleCut,
    Cactus,
    Outerplanar,
    Exact,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Greedy => "greedy",
            Strategy::Lift => "lift",
            Strategy::PathAmplitude => "path-amplitude",
            Strategy::CycleCut => "cycle-cut",
            Strategy::Cactus => "cactus",
            Strategy::Outerplanar => "outerplanar",
            Strategy::Exact => "exact",
        })
    }
}

/// One decision: the colors given to `vertex` and why.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub vertex: Vertex,
    pub colors: Vec<Color>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoringPlan {
    pub strategy: Strategy,
    pub trace: Vec<Step>,
}

impl ColoringPlan {
    pub fn new(strategy: Strategy) -> Self {
        ColoringPlan { strategy, trace: Vec::new() }
    }

    fn record(&mut self, vertex: Vertex, colors: &ColorSet, note: impl Into<String>) {
        self.trace.push(Step {
            vertex,
            colors: colors.to_vec(),
            note: note.into(),
        });
    }

    /// Appends a sub-plan computed on a relabeled piece; `map[i]` is the
    /// original name of the piece's vertex `i`. Steps for the piece's
    /// vertices listed in `skip` are dropped.
    fn absorb(&mut self, sub: ColoringPlan, map: &[Vertex], skip: &[Vertex]) {
        for step in sub.trace.into_iter().filter(|s| !skip.contains(&s.vertex)) {
            self.trace.push(Step {
                vertex: map[step.vertex],
                colors: step.colors,
                note: format!("{}: {}", sub.strategy, step.note),
            });
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Colored {
    pub coloring: BColoring,
    pub plan: ColoringPlan,
}

/// Validates before handing a coloring out; a defect here is a bug.
fn finish(l: &ListAssignment, sets: Vec<ColorSet>, plan: ColoringPlan, b: usize) -> Result<Colored> {
    let coloring = BColoring::new(sets);
    if let Some(defect) = coloring_defect(l, &coloring, b) {
        return Err(Error::Invariant(format!("{} produced an invalid coloring: {defect}", plan.strategy)));
    }
    Ok(Colored { coloring, plan })
}

fn single_precolored(l: &ListAssignment, b: usize) -> Result<Vertex> {
    let r = match l.precolored() {
        [r] => *r,
        other => {
            return Err(Error::Precondition(format!(
                "exactly one precolored vertex is needed, found {}",
                other.len()
            )))
        }
    };
    if l.list(r).len() != b {
        return Err(Error::Precondition(format!(
            "precolored vertex {r} has {} colors, expected {b}",
            l.list(r).len()
        )));
    }
    Ok(r)
}

/// Smallest list size over the vertices that are not precolored.
fn free_list_size(l: &ListAssignment) -> usize {
    (0..l.graph().n())
        .filter(|v| !l.precolored().contains(v))
        .map(|v| l.list(v).len())
        .min()
        .unwrap_or(0)
}
