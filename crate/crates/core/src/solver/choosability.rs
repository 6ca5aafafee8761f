//! `(a,b,c)`-choosability, free-choosability, and the separation numbers.

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::lists::ListAssignment;

use super::enumerate::{cycle_automorphisms, is_orbit_minimum, CanonicalSpace, Partial};
use super::feasibility::Search;
use super::SolveOutcome;

/// Default node budget when `SEPCHOOSE_BUDGET` is unset.
pub const DEFAULT_BUDGET: u64 = 2_000_000_000;

/// Subtrees handed to the worker pool per search.
const FAN_OUT: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Enumeration nodes allowed before giving up with `BudgetExceeded`.
    pub budget: u64,
    /// Check only one assignment per orbit of the cycle's dihedral group.
    pub symmetry: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        let budget = std::env::var("SEPCHOOSE_BUDGET")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_BUDGET);
        SolveOptions { budget, symmetry: false }
    }
}

impl SolveOptions {
    pub fn with_budget(budget: u64) -> Self {
        SolveOptions { budget, ..Self::default() }
    }
}

enum Stop {
    Found(Partial),
    Budget,
    Preempted,
}

/// Searches one canonical space for an uncolorable assignment. Returns the
/// first one in enumeration order regardless of scheduling.
fn find_counterexample(
    space: &CanonicalSpace,
    b: usize,
    symmetry: Option<&[Vec<Vertex>]>,
    budget: u64,
    nodes: &AtomicU64,
) -> Result<Option<Partial>> {
    let b = u8::try_from(b).map_err(|_| Error::InvalidParameter(format!("b = {b} is too large")))?;
    let demand = vec![b; space.n()];

    // breadth-first split into enough subtrees for the pool, preserving DFS order
    let mut frontier = vec![space.root()];
    while frontier.len() < FAN_OUT && frontier.iter().any(|p| !space.is_leaf(p)) {
        let mut next = Vec::new();
        for p in frontier {
            if space.is_leaf(&p) {
                next.push(p);
            } else {
                next.extend(space.children(&p));
            }
        }
        frontier = next;
    }

    let found_at = AtomicUsize::new(usize::MAX);
    let outcome = frontier.into_par_iter().enumerate().find_map_first(|(index, start)| {
        let adj = space.adjacency();
        let mut local = 0u64;
        let mut node = || {
            local += 1;
            if local % 64 == 0 {
                if nodes.fetch_add(64, Ordering::Relaxed) + 64 > budget {
                    return ControlFlow::Break(Stop::Budget);
                }
                if found_at.load(Ordering::Relaxed) < index {
                    return ControlFlow::Break(Stop::Preempted);
                }
            }
            ControlFlow::Continue(())
        };
        let mut leaf = |p: &Partial| {
            let traces = space.leaf_traces(p);
            if let Some(maps) = symmetry {
                if !is_orbit_minimum(&traces, maps) {
                    return ControlFlow::Continue(());
                }
            }
            if Search::new(adj).feasible(&demand, &traces) {
                ControlFlow::Continue(())
            } else {
                ControlFlow::Break(Stop::Found(p.clone()))
            }
        };
        let flow = space.walk(start, &mut node, &mut leaf);
        nodes.fetch_add(local % 64, Ordering::Relaxed);
        match flow {
            ControlFlow::Continue(()) => None,
            ControlFlow::Break(Stop::Preempted) => None,
            ControlFlow::Break(stop) => {
                if matches!(stop, Stop::Found(_)) {
                    found_at.fetch_min(index, Ordering::Relaxed);
                }
                Some(stop)
            }
        }
    });
    if nodes.load(Ordering::Relaxed) > budget {
        return Err(Error::BudgetExceeded { budget });
    }
    match outcome {
        None => Ok(None),
        Some(Stop::Found(p)) => Ok(Some(p)),
        Some(_) => Err(Error::BudgetExceeded { budget }),
    }
}

/// Representatives of the precolored vertex for free-choosability.
fn free_roots(g: &Graph, symmetry: bool) -> Vec<Vertex> {
    if symmetry && g.cycle_order().is_some() {
        vec![0]
    } else {
        (0..g.n()).collect()
    }
}

/// Whether every `c`-separating `a`-list assignment of `g` is `b`-colorable
/// (with `free`, after precoloring any one vertex with any `b` of its colors).
/// A refutation carries the first uncolorable assignment found, realized with
/// colors `0, 1, ...`.
pub fn decide_choosable(g: &Graph, a: usize, b: usize, c: usize, free: bool, opts: SolveOptions) -> Result<SolveOutcome> {
    if b > a {
        return Err(Error::InvalidParameter(format!("b = {b} exceeds a = {a}")));
    }
    let maps = if opts.symmetry { cycle_automorphisms(g) } else { None };
    let nodes = AtomicU64::new(0);
    let roots: Vec<Option<Vertex>> = if free {
        free_roots(g, opts.symmetry).into_iter().map(Some).collect()
    } else {
        vec![None]
    };
    for root in roots {
        let space = CanonicalSpace::new(g, a, b, c, root)?;
        let fixed: Option<Vec<Vec<Vertex>>> = maps.as_ref().map(|all| match root {
            Some(r) => all.iter().filter(|m| m[r] == r).cloned().collect(),
            None => all.clone(),
        });
        if let Some(p) = find_counterexample(&space, b, fixed.as_deref(), opts.budget, &nodes)? {
            let l = space.multiset(&p).realize(g)?;
            let l = match root {
                Some(r) => l.with_precolored(vec![r])?,
                None => l,
            };
            check_counterexample(&l, a, b, c)?;
            let mut out = SolveOutcome::verdict(false, nodes.load(Ordering::Relaxed));
            out.counterexample = Some(l);
            return Ok(out);
        }
    }
    Ok(SolveOutcome::verdict(true, nodes.load(Ordering::Relaxed)))
}

fn check_counterexample(l: &ListAssignment, a: usize, b: usize, c: usize) -> Result<()> {
    l.check_sizes(a, b).map_err(Error::Invariant)?;
    if l.separation() > c {
        return Err(Error::Invariant(format!("counterexample has separation {} > {c}", l.separation())));
    }
    if super::colorability::is_colorable(l, b)? {
        return Err(Error::Invariant("counterexample is colorable".into()));
    }
    Ok(())
}

/// Largest `c` for which `g` is `(a,b,c)`-choosable (free-choosable with `free`).
/// Scans `c` upward; a counterexample at `c` is also one at every larger `c`.
pub fn compute_sep(g: &Graph, a: usize, b: usize, free: bool, opts: SolveOptions) -> Result<usize> {
    Ok(compute_sep_with_witness(g, a, b, free, opts)?.0)
}

/// As [`compute_sep`], also returning the counterexample at `sep + 1` when `sep < a`.
pub fn compute_sep_with_witness(
    g: &Graph,
    a: usize,
    b: usize,
    free: bool,
    opts: SolveOptions,
) -> Result<(usize, Option<ListAssignment>)> {
    if b > a {
        return Err(Error::InvalidParameter(format!("b = {b} exceeds a = {a}")));
    }
    for c in 0..=a {
        let out = decide_choosable(g, a, b, c, free, opts)?;
        if !out.colorable {
            if c == 0 {
                return Err(Error::Invariant(format!("not ({a},{b},0)-choosable although b <= a")));
            }
            return Ok((c - 1, out.counterexample));
        }
    }
    Ok((a, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::color_with_lists;

    fn opts() -> SolveOptions {
        SolveOptions { budget: DEFAULT_BUDGET, symmetry: false }
    }

    #[test]
    fn c4_2_1_1_is_choosable() {
        let g = Graph::cycle(4).unwrap();
        assert!(decide_choosable(&g, 2, 1, 1, false, opts()).unwrap().colorable);
    }

    #[test]
    fn c3_5_2_5_refuted() {
        let g = Graph::cycle(3).unwrap();
        let out = decide_choosable(&g, 5, 2, 5, false, opts()).unwrap();
        assert!(!out.colorable);
        let l = out.counterexample.unwrap();
        assert!(l.separation() <= 5);
        assert!(!color_with_lists(&l, 2).unwrap().colorable);
    }

    #[test]
    fn small_separation_numbers() {
        let c3 = Graph::cycle(3).unwrap();
        assert_eq!(compute_sep(&c3, 5, 2, false, opts()).unwrap(), 4);
        assert_eq!(compute_sep(&c3, 2, 1, true, opts()).unwrap(), 1);
        assert_eq!(compute_sep(&c3, 1, 1, false, opts()).unwrap(), 0);
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(compute_sep(&c4, 2, 1, false, opts()).unwrap(), 2);
    }

    #[test]
    fn two_square_cactus_is_not_2_1_1_choosable() {
        let edges = [(0, 1), (1, 3), (3, 2), (2, 0), (6, 4), (4, 3), (3, 5), (5, 6)];
        let g = Graph::from_edges(7, &edges).unwrap();
        let out = decide_choosable(&g, 2, 1, 1, false, opts()).unwrap();
        assert!(!out.colorable);
        let l = out.counterexample.unwrap();
        assert_eq!(l.separation(), 1);
        assert_eq!(compute_sep(&g, 2, 1, false, opts()).unwrap(), 0);
    }

    #[test]
    fn symmetry_does_not_change_verdicts() {
        let c5 = Graph::cycle(5).unwrap();
        let sym = SolveOptions { symmetry: true, ..opts() };
        for (a, b) in [(2, 1), (3, 1), (4, 2)] {
            for free in [false, true] {
                assert_eq!(
                    compute_sep(&c5, a, b, free, opts()).unwrap(),
                    compute_sep(&c5, a, b, free, sym).unwrap(),
                    "a={a} b={b} free={free}"
                );
            }
        }
    }

    #[test]
    fn budget_is_reported() {
        let c5 = Graph::cycle(5).unwrap();
        let err = decide_choosable(&c5, 4, 2, 2, false, SolveOptions { budget: 10, symmetry: false }).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { budget: 10 }));
    }

    #[test]
    fn free_counterexample_marks_the_precolored_vertex() {
        let c3 = Graph::cycle(3).unwrap();
        let out = decide_choosable(&c3, 2, 1, 2, true, opts()).unwrap();
        assert!(!out.colorable);
        let l = out.counterexample.unwrap();
        assert_eq!(l.precolored().len(), 1);
        assert!(l.check_sizes(2, 1).is_ok());
        assert!(!color_with_lists(&l, 1).unwrap().colorable);
    }
}
