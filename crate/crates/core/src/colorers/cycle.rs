use crate::error::{Error, Result};
use crate::formulas::fsep_cycle;
use crate::lists::{ColorSet, ListAssignment};
use crate::solver::color_with_lists;

use super::path::color_sequence;
use super::{finish, free_list_size, single_precolored, Colored, ColoringPlan, Strategy};

/// Colors a cycle with one precolored vertex `r` by cutting it at `r` into
/// `P_{n+1}` whose two ends both carry `L(r)`. Triangles go to the exact
/// solver.
pub fn cycle_color_precolored(l: &ListAssignment, b: usize) -> Result<Colored> {
    let order = l.graph().cycle_order().ok_or(Error::MissingAnnotation("cycle order"))?;
    let r = single_precolored(l, b)?;
    let n = order.len();
    let a = free_list_size(l);
    let sep = l.separation();
    let guaranteed = a >= b && fsep_cycle(n, a, b).map(|f| sep <= f.value).unwrap_or(false);

    if n == 3 {
        let out = color_with_lists(l, b)?;
        let Some(phi) = out.witness else {
            return Err(if guaranteed {
                Error::TheoryContradiction(format!("triangle with separation {sep} <= fsep has no coloring"))
            } else {
                Error::Uncolorable(format!("triangle with separation {sep} has no coloring"))
            });
        };
        let mut plan = ColoringPlan::new(Strategy::Exact);
        for v in 0..3 {
            plan.record(v, phi.get(v), "exact search");
        }
        return finish(l, phi.sets, plan, b);
    }

    let start = order.iter().position(|&v| v == r).expect("precolored vertex lies on the cycle");
    let walk: Vec<usize> = (0..=n).map(|i| order[(start + i) % n]).collect();
    let seq: Vec<ColorSet> = walk.iter().map(|&v| l.list(v).clone()).collect();
    let chosen = color_sequence(&seq, b, guaranteed)?;
    let mut plan = ColoringPlan::new(Strategy::CycleCut);
    let mut sets = vec![ColorSet::new(); l.graph().n()];
    for (pos, (&v, set)) in walk.iter().zip(chosen).take(n).enumerate() {
        let note = if pos == 0 { "precolored, both ends of the cut".to_string() } else { format!("position {}", pos + 1) };
        plan.record(v, &set, note);
        sets[v] = set;
    }
    finish(l, sets, plan, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversary::{gen_path_cycle, PathVariant};
    use crate::graph::Graph;
    use crate::lists::is_valid_coloring;

    #[test]
    fn forced_triangle() {
        let l = ListAssignment::from_vecs(Graph::cycle(3).unwrap(), &[vec![1], vec![1, 2], vec![2, 3]])
            .unwrap()
            .with_precolored(vec![0])
            .unwrap();
        let out = cycle_color_precolored(&l, 1).unwrap();
        let got: Vec<Vec<u32>> = out.coloring.sets.iter().map(|s| s.to_vec()).collect();
        assert_eq!(got, vec![vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn cut_at_a_middle_vertex() {
        let lists = vec![vec![0, 1, 2], vec![2, 3, 4], vec![5], vec![5, 6, 7], vec![7, 8, 0]];
        let l = ListAssignment::from_vecs(Graph::cycle(5).unwrap(), &lists)
            .unwrap()
            .with_precolored(vec![2])
            .unwrap();
        let out = cycle_color_precolored(&l, 1).unwrap();
        assert!(is_valid_coloring(&l, &out.coloring, 1));
        assert_eq!(out.plan.trace[0].vertex, 2);
    }

    #[test]
    fn glued_adversary_is_reported_uncolorable() {
        let cert = gen_path_cycle(4, 9, 4, PathVariant::Case1).unwrap();
        match cycle_color_precolored(&cert.lists, 4) {
            Err(Error::Uncolorable(msg)) => assert!(msg.starts_with("Sigma_")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn needs_one_precolored_vertex() {
        let l = ListAssignment::from_vecs(Graph::cycle(4).unwrap(), &[vec![1], vec![2], vec![3], vec![4]]).unwrap();
        assert!(matches!(cycle_color_precolored(&l, 1), Err(Error::Precondition(_))));
    }
}
