use crate::combin::subsets;
use crate::error::{Error, Result};
use crate::formulas::c_threshold;
use crate::lists::{path_amplitude_violation, ColorSet, ListAssignment};

use super::{finish, Colored, ColoringPlan, Strategy};

/// Whether `c`-separating lists on `P_{n+1}` with `b`-sets at both ends are
/// guaranteed colorable: `b <= a < 2(n+1)b/n` and `c <= ⌊c(n,a,b)⌋`.
pub(crate) fn path_hypotheses(n: usize, a: usize, b: usize, c: usize) -> bool {
    if n < 3 || b == 0 || a < b {
        return false;
    }
    match c_threshold(n, a, b) {
        Ok(t) => t.regime != "cycle-high" && c <= t.floor,
        Err(_) => false,
    }
}

fn extend(lists: &mut [ColorSet], i: usize, b: usize, out: &mut Vec<ColorSet>) -> bool {
    let n = lists.len();
    if i == n {
        return true;
    }
    let avail = lists[i].to_vec();
    for choice in subsets(&avail, b) {
        let set: ColorSet = choice.into_iter().collect();
        if i + 1 == n {
            out.push(set);
            return true;
        }
        let saved = lists[i + 1].clone();
        lists[i + 1] = saved.difference(&set);
        // on a path the amplitude condition is exact, so this never dead-ends
        if path_amplitude_violation(&lists[i + 1..], b).is_none() {
            out.push(set);
            if extend(lists, i + 1, b, out) {
                return true;
            }
            out.pop();
        }
        lists[i + 1] = saved;
    }
    false
}

/// Colors lists given in path order by lexicographic backtracking pruned by
/// the amplitude condition. `guaranteed` says whether the caller's
/// hypotheses promise success; failing then is a contradiction, otherwise
/// the violated interval is reported.
pub(crate) fn color_sequence(lists: &[ColorSet], b: usize, guaranteed: bool) -> Result<Vec<ColorSet>> {
    if let Some(v) = path_amplitude_violation(lists, b) {
        return Err(if guaranteed {
            Error::TheoryContradiction(format!("hypotheses hold but {v}"))
        } else {
            Error::Uncolorable(v.to_string())
        });
    }
    let mut work = lists.to_vec();
    let mut out = Vec::with_capacity(lists.len());
    if extend(&mut work, 0, b, &mut out) {
        Ok(out)
    } else {
        Err(Error::TheoryContradiction(
            "the amplitude condition holds on a path but backtracking found no coloring".into(),
        ))
    }
}

/// Colors `P_{n+1}` whose two ends carry exactly `b` colors each.
pub fn path_color_precolored(l: &ListAssignment, b: usize) -> Result<Colored> {
    let order = l.graph().path_order().ok_or(Error::MissingAnnotation("path order"))?;
    if order.len() < 2 {
        return Err(Error::Precondition("the path needs two distinct ends".into()));
    }
    let (first, last) = (order[0], order[order.len() - 1]);
    for end in [first, last] {
        if l.list(end).len() != b {
            return Err(Error::Precondition(format!(
                "end vertex {end} has {} colors, expected {b}",
                l.list(end).len()
            )));
        }
    }
    let n = order.len() - 1;
    let a = order[1..n].iter().map(|&v| l.list(v).len()).min().unwrap_or(b);
    let guaranteed = path_hypotheses(n, a, b, l.separation());
    let seq: Vec<ColorSet> = order.iter().map(|&v| l.list(v).clone()).collect();
    let chosen = color_sequence(&seq, b, guaranteed)?;
    let mut plan = ColoringPlan::new(Strategy::PathAmplitude);
    let mut sets = vec![ColorSet::new(); l.graph().n()];
    for (pos, (&v, set)) in order.iter().zip(chosen).enumerate() {
        let note = if pos == 0 || pos == n { "fixed end".to_string() } else { format!("position {}", pos + 1) };
        plan.record(v, &set, note);
        sets[v] = set;
    }
    finish(l, sets, plan, b)
}
