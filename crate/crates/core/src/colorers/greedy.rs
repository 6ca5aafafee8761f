use crate::error::{Error, Result};
use crate::lists::{ColorSet, ListAssignment};

use super::{finish, Colored, ColoringPlan, Strategy};

/// Orients the cycle and gives each `x` the `b` smallest colors of
/// `L(x) \ L(x⁺)`. Works whenever every such difference has `b` colors,
/// in particular for `(a-b)`-separating `a`-lists.
pub fn greedy_cycle(l: &ListAssignment, b: usize) -> Result<Colored> {
    let order = l.graph().cycle_order().ok_or(Error::MissingAnnotation("cycle order"))?;
    let n = order.len();
    let mut sets = vec![ColorSet::new(); l.graph().n()];
    let mut plan = ColoringPlan::new(Strategy::Greedy);
    for (i, &x) in order.iter().enumerate() {
        let next = order[(i + 1) % n];
        let free = l.list(x).difference(l.list(next));
        let phi = free.smallest(b).ok_or_else(|| {
            Error::Precondition(format!("|L({x}) \\ L({next})| = {} < b = {b}", free.len()))
        })?;
        plan.record(x, &phi, format!("smallest of L({x}) \\ L({next})"));
        sets[x] = phi;
    }
    finish(l, sets, plan, b)
}
