use crate::error::{Error, Result};
use crate::lists::{ColorSet, ListAssignment};
use crate::solver::color_with_lists;

use super::greedy::greedy_cycle;
use super::{finish, Colored, ColoringPlan, Strategy};

/// Colorer used on the reduced instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Base {
    Exact,
    Greedy,
    Lift { k: usize, base: Box<Base> },
}

/// One reduction: `k` colors per vertex plus the reduced lists `L'`, which
/// are `c`-separating with at least `a` colors per vertex.
#[derive(Clone, Debug)]
pub struct LiftStep {
    pub phi: Vec<ColorSet>,
    pub reduced: ListAssignment,
    pub a: usize,
    pub c: usize,
}

/// Splits a `(c+k)`-separating `(a+2k)`-list assignment of a cycle, where
/// `a + 2k` is the smallest list and `c + k` the separation.
pub fn lift_step(l: &ListAssignment, k: usize) -> Result<LiftStep> {
    let g = l.graph();
    let order = g.cycle_order().ok_or(Error::MissingAnnotation("cycle order"))?;
    let n = order.len();
    let min_size = l.lists().iter().map(ColorSet::len).min().unwrap_or(0);
    let a = min_size
        .checked_sub(2 * k)
        .ok_or_else(|| Error::Precondition(format!("lists of size {min_size} cannot lose 2k = {} colors", 2 * k)))?;
    let c = l.separation().saturating_sub(k);

    let mut phi = vec![ColorSet::new(); g.n()];
    for (i, &x) in order.iter().enumerate() {
        let next = order[(i + 1) % n];
        let free = l.list(x).difference(l.list(next));
        phi[x] = free.smallest(k).ok_or_else(|| {
            Error::Precondition(format!("|L({x}) \\ L({next})| = {} < k = {k}", free.len()))
        })?;
    }
    let mut reduced = vec![ColorSet::new(); g.n()];
    for (i, &x) in order.iter().enumerate() {
        let next = order[(i + 1) % n];
        let shared = l.list(x).intersection(l.list(next));
        let target = k.min(shared.len());
        // S(x) must contain every color of L(x) already spent on x⁺; the rest is lexicographic
        let mut s = l.list(x).intersection(&phi[next]);
        for color in shared.difference(&s).iter() {
            if s.len() >= target {
                break;
            }
            s.insert(color);
        }
        reduced[x] = l.list(x).difference(&phi[x].union(&s));
    }
    let reduced = ListAssignment::new(g.clone(), reduced)?;
    for (v, list) in reduced.lists().iter().enumerate() {
        if list.len() < a {
            return Err(Error::Invariant(format!("|L'({v})| = {} < a = {a}", list.len())));
        }
    }
    if reduced.separation() > c {
        return Err(Error::Invariant(format!("L' has separation {} > c = {c}", reduced.separation())));
    }
    Ok(LiftStep { phi, reduced, a, c })
}

fn color_base(l: &ListAssignment, b: usize, base: &Base) -> Result<Colored> {
    match base {
        Base::Greedy => greedy_cycle(l, b),
        Base::Lift { k, base } => {
            let inner = b
                .checked_sub(*k)
                .ok_or_else(|| Error::InvalidParameter(format!("lift by k = {k} needs b >= k, got {b}")))?;
            lift_cycle(l, inner, *k, base)
        }
        Base::Exact => {
            let out = color_with_lists(l, b)?;
            let phi = out
                .witness
                .ok_or_else(|| Error::Precondition("the base instance has no coloring".into()))?;
            let mut plan = ColoringPlan::new(Strategy::Exact);
            for (v, set) in phi.sets.iter().enumerate() {
                plan.record(v, set, "exact search");
            }
            finish(l, phi.sets, plan, b)
        }
    }
}

/// Turns a `b`-colorer for `(a,b,c)` instances into a `(b+k)`-colorer for
/// `(a+2k, b+k, c+k)` instances on the same cycle.
pub fn lift_cycle(l: &ListAssignment, b: usize, k: usize, base: &Base) -> Result<Colored> {
    if k == 0 {
        return color_base(l, b, base);
    }
    let step = lift_step(l, k)?;
    let inner = color_base(&step.reduced, b, base)?;
    let mut plan = ColoringPlan::new(Strategy::Lift);
    for (v, set) in step.phi.iter().enumerate() {
        plan.record(v, set, format!("{k} from L({v}) minus the next list"));
    }
    let identity: Vec<usize> = (0..l.graph().n()).collect();
    plan.absorb(inner.plan, &identity, &[]);
    let sets = step
        .phi
        .iter()
        .zip(&inner.coloring.sets)
        .map(|(p, q)| p.union(q))
        .collect();
    finish(l, sets, plan, b + k)
}
