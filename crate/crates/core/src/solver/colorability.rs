//! `(L,b)`-colorability of explicit list assignments.

use std::collections::BTreeMap;

use crate::combin::subsets;
use crate::error::{Error, Result};
use crate::lists::{is_valid_coloring, BColoring, Color, ColorSet, ListAssignment};

use super::feasibility::{Search, Traces};
use super::SolveOutcome;

/// Components up to this order go straight to the trace search.
const TRACE_LIMIT: usize = 64;

struct ListSearch<'g> {
    adj: &'g [Vec<usize>],
    b: usize,
    nodes: u64,
}

impl ListSearch<'_> {
    fn feasible(&mut self, lists: &[ColorSet]) -> bool {
        let mut lists = lists.to_vec();
        let mut alive = vec![true; lists.len()];
        // lists of exactly b colors are used in full
        let mut stack: Vec<usize> = (0..lists.len()).collect();
        while let Some(v) = stack.pop() {
            if !alive[v] {
                continue;
            }
            if lists[v].len() < self.b {
                return false;
            }
            if lists[v].len() == self.b {
                alive[v] = false;
                let used = lists[v].clone();
                for &u in &self.adj[v] {
                    if alive[u] && !lists[u].is_disjoint(&used) {
                        lists[u] = lists[u].difference(&used);
                        stack.push(u);
                    }
                }
            }
        }
        self.components(&alive)
            .into_iter()
            .all(|comp| self.feasible_component(&comp, &lists))
    }

    fn components(&self, alive: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; alive.len()];
        let mut out = Vec::new();
        for s in 0..alive.len() {
            if !alive[s] || seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for &w in &self.adj[u] {
                    if alive[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    fn feasible_component(&mut self, comp: &[usize], lists: &[ColorSet]) -> bool {
        if comp.len() <= TRACE_LIMIT {
            let (adj, demand, traces) = trace_instance(self.adj, comp, lists, self.b);
            let mut search = Search::new(&adj);
            let ok = search.feasible(&demand, &traces);
            self.nodes += search.nodes;
            return ok;
        }
        let v = self.branch_vertex(comp);
        let options: Vec<Color> = lists[v].to_vec();
        let mut scratch = vec![ColorSet::new(); lists.len()];
        for &u in comp {
            scratch[u] = lists[u].clone();
        }
        for choice in subsets(&options, self.b) {
            self.nodes += 1;
            scratch[v] = choice.into_iter().collect();
            if self.feasible(&scratch) {
                return true;
            }
        }
        false
    }

    /// A cut vertex of the component leaving the smallest largest piece, else one of maximum degree.
    fn branch_vertex(&self, comp: &[usize]) -> usize {
        let mut inside = vec![false; self.adj.len()];
        for &v in comp {
            inside[v] = true;
        }
        let mut best: Option<(usize, usize)> = None;
        for &v in comp {
            if self.adj[v].iter().filter(|&&u| inside[u]).count() < 2 {
                continue;
            }
            inside[v] = false;
            let pieces = self.components(&inside);
            inside[v] = true;
            if pieces.len() > 1 {
                let worst = pieces.iter().map(Vec::len).max().unwrap_or(0);
                if best.is_none_or(|(w, _)| worst < w) {
                    best = Some((worst, v));
                }
            }
        }
        best.map(|(_, v)| v).unwrap_or_else(|| {
            *comp
                .iter()
                .max_by_key(|&&v| (self.adj[v].iter().filter(|&&u| inside[u]).count(), std::cmp::Reverse(v)))
                .unwrap_or(&comp[0])
        })
    }
}

/// Local trace instance of a component: adjacency masks, demands and traces.
fn trace_instance(adj: &[Vec<usize>], comp: &[usize], lists: &[ColorSet], b: usize) -> (Vec<u64>, Vec<u8>, Traces) {
    let mut local = vec![usize::MAX; adj.len()];
    for (i, &v) in comp.iter().enumerate() {
        local[v] = i;
    }
    let masks: Vec<u64> = comp
        .iter()
        .map(|&v| {
            adj[v]
                .iter()
                .filter(|&&u| local[u] != usize::MAX)
                .fold(0u64, |m, &u| m | 1 << local[u])
        })
        .collect();
    let mut by_color: BTreeMap<Color, u64> = BTreeMap::new();
    for (i, &v) in comp.iter().enumerate() {
        for c in lists[v].iter() {
            *by_color.entry(c).or_default() |= 1 << i;
        }
    }
    let mut grouped: BTreeMap<u64, u32> = BTreeMap::new();
    for m in by_color.into_values() {
        *grouped.entry(m).or_default() += 1;
    }
    let demand = vec![b.min(u8::MAX as usize) as u8; comp.len()];
    (masks, demand, grouped.into_iter().collect())
}

fn adjacency(l: &ListAssignment) -> Vec<Vec<usize>> {
    (0..l.graph().n()).map(|v| l.graph().neighbors(v).to_vec()).collect()
}

fn check_b(b: usize) -> Result<()> {
    if b > u8::MAX as usize {
        return Err(Error::InvalidParameter(format!("b = {b} is too large")));
    }
    Ok(())
}

/// Exact `(L,b)`-colorability. The witness is the lexicographically least
/// coloring: vertices in index order, each taking the first `b`-subset of its
/// list (in color order) that still extends to a full coloring.
pub fn color_with_lists(l: &ListAssignment, b: usize) -> Result<SolveOutcome> {
    check_b(b)?;
    let adj = adjacency(l);
    let mut search = ListSearch { adj: &adj, b, nodes: 0 };
    let mut lists = l.lists().to_vec();
    if !search.feasible(&lists) {
        return Ok(SolveOutcome::verdict(false, search.nodes));
    }
    let n = lists.len();
    let mut phi: Vec<ColorSet> = Vec::with_capacity(n);
    for v in 0..n {
        let blocked = adj[v]
            .iter()
            .filter(|&&u| u < v)
            .fold(ColorSet::new(), |acc, &u| acc.union(&phi[u]));
        let options = lists[v].difference(&blocked).to_vec();
        let original = lists[v].clone();
        let mut chosen = None;
        for choice in subsets(&options, b) {
            let set: ColorSet = choice.into_iter().collect();
            lists[v] = set.clone();
            if search.feasible(&lists) {
                chosen = Some(set);
                break;
            }
        }
        let Some(set) = chosen else {
            lists[v] = original;
            return Err(Error::Invariant(format!("witness extension failed at vertex {v}")));
        };
        phi.push(set);
    }
    let phi = BColoring::new(phi);
    if !is_valid_coloring(l, &phi, b) {
        return Err(Error::Invariant("solver produced an invalid witness".into()));
    }
    let mut out = SolveOutcome::verdict(true, search.nodes);
    out.witness = Some(phi);
    Ok(out)
}

/// Same as [`color_with_lists`] with the precolored vertices forced to use
/// their whole (size `b`) lists.
pub fn free_color_with_lists(l: &ListAssignment, b: usize) -> Result<SolveOutcome> {
    if l.precolored().is_empty() {
        return Err(Error::Precondition("no precolored vertex".into()));
    }
    for &r in l.precolored() {
        if l.list(r).len() != b {
            return Err(Error::Precondition(format!(
                "precolored vertex {r} has {} colors, expected {b}",
                l.list(r).len()
            )));
        }
    }
    color_with_lists(l, b)
}

/// Verdict only, no witness.
pub fn is_colorable(l: &ListAssignment, b: usize) -> Result<bool> {
    check_b(b)?;
    let adj = adjacency(l);
    let mut search = ListSearch { adj: &adj, b, nodes: 0 };
    Ok(search.feasible(l.lists()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn two_squares() -> ListAssignment {
        let edges = [(0, 1), (1, 3), (3, 2), (2, 0), (6, 4), (4, 3), (3, 5), (5, 6)];
        let g = Graph::from_edges(7, &edges).unwrap();
        ListAssignment::from_vecs(g, &[vec![3, 4], vec![1, 3], vec![1, 4], vec![1, 2], vec![2, 3], vec![2, 4], vec![3, 4]])
            .unwrap()
    }

    #[test]
    fn two_square_lists_are_uncolorable() {
        let out = color_with_lists(&two_squares(), 1).unwrap();
        assert!(!out.colorable);
        assert!(out.witness.is_none());
    }

    #[test]
    fn forced_triangle() {
        let l = ListAssignment::from_vecs(Graph::cycle(3).unwrap(), &[vec![1, 2], vec![2, 3], vec![3, 1]]).unwrap();
        let out = color_with_lists(&l, 1).unwrap();
        assert!(out.colorable);
        let phi = out.witness.unwrap();
        assert_eq!(phi.sets, vec![ColorSet::from([1]), ColorSet::from([2]), ColorSet::from([3])]);
    }

    #[test]
    fn small_ratio_instance_on_c4() {
        // C = {0}, D_i = {1+i}, F empty: L(x_i) = {0, 1+i, 1+(i+1 mod 4)}
        let lists: Vec<Vec<Color>> = (0..4).map(|i| vec![0, 1 + i as Color, 1 + ((i + 1) % 4) as Color]).collect();
        let l = ListAssignment::from_vecs(Graph::cycle(4).unwrap(), &lists).unwrap();
        assert_eq!(l.separation(), 2);
        assert!(!color_with_lists(&l, 2).unwrap().colorable);
    }

    #[test]
    fn precolored_edge() {
        let l = ListAssignment::from_vecs(Graph::path(2).unwrap(), &[vec![1], vec![2, 3]])
            .unwrap()
            .with_precolored(vec![0])
            .unwrap();
        let out = free_color_with_lists(&l, 1).unwrap();
        assert!(out.colorable);
        assert_eq!(out.witness.unwrap().sets[1], ColorSet::from([2]));
        let bad = ListAssignment::from_vecs(Graph::path(2).unwrap(), &[vec![1, 4], vec![2, 3]])
            .unwrap()
            .with_precolored(vec![0])
            .unwrap();
        assert!(matches!(free_color_with_lists(&bad, 1), Err(Error::Precondition(_))));
        let unmarked = ListAssignment::from_vecs(Graph::path(2).unwrap(), &[vec![1], vec![2]]).unwrap();
        assert!(free_color_with_lists(&unmarked, 1).is_err());
    }

    #[test]
    fn lex_least_witness_on_even_cycle() {
        let l = ListAssignment::from_vecs(Graph::cycle(4).unwrap(), &vec![vec![0, 1]; 4]).unwrap();
        let phi = color_with_lists(&l, 1).unwrap().witness.unwrap();
        assert_eq!(phi.sets.iter().map(|s| s.to_vec()[0]).collect::<Vec<_>>(), vec![0, 1, 0, 1]);
    }

    #[test]
    fn large_flower_goes_through_hub_branching() {
        // 40 triangles on a hub; petal 0 rules out hub color 0, petal 1 rules out 1
        let g = Graph::flower(3, 40).unwrap();
        let mut lists = vec![vec![0, 1], vec![0, 2], vec![0, 2], vec![1, 3], vec![1, 3]];
        for i in 2..40 {
            let c = 10 * i as Color;
            lists.push(vec![c, c + 1]);
            lists.push(vec![c, c + 2]);
        }
        let l = ListAssignment::from_vecs(g.clone(), &lists).unwrap();
        assert!(!is_colorable(&l, 1).unwrap());
        assert!(!color_with_lists(&l, 1).unwrap().colorable);
        lists[0] = vec![0, 1, 5];
        let l = ListAssignment::from_vecs(g, &lists).unwrap();
        let out = color_with_lists(&l, 1).unwrap();
        assert!(out.colorable);
        assert_eq!(out.witness.unwrap().sets[0], ColorSet::from([5]));
    }
}
