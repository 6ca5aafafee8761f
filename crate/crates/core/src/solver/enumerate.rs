//! Canonical enumeration of `c`-separating `a`-list assignments.
//!
//! Up to renaming colors a list assignment is a multiset of traces. A color
//! whose trace is disconnected behaves exactly like one color per component,
//! so only connected traces are enumerated. Traces are processed grouped by
//! their lowest vertex; inside a group the singleton trace comes last and its
//! multiplicity is whatever the vertex still lacks, which closes the vertex.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::lists::{mask_components, TraceMultiset};

/// Largest graph order the enumeration accepts.
pub const MAX_ORDER: usize = 20;

#[derive(Clone, Debug)]
pub struct CanonicalSpace {
    n: usize,
    adj: Vec<u64>,
    c: usize,
    targets: Vec<usize>,
    traces: Vec<u64>,
    trace_vertices: Vec<Vec<usize>>,
    trace_edges: Vec<Vec<usize>>,
    singleton: Vec<bool>,
    edge_count: usize,
}

/// A partial assignment: multiplicities of the first `level` traces.
#[derive(Clone, Debug)]
pub(crate) struct Partial {
    pub level: usize,
    sums: Vec<usize>,
    overlaps: Vec<usize>,
    mult: Vec<usize>,
}

impl CanonicalSpace {
    /// `a` colors per vertex, `b` at the precolored vertex, at most `c` shared per edge.
    pub fn new(g: &Graph, a: usize, b: usize, c: usize, precolored: Option<Vertex>) -> Result<Self> {
        if b > a {
            return Err(Error::InvalidParameter(format!("b = {b} exceeds a = {a}")));
        }
        let n = g.n();
        if n > MAX_ORDER {
            return Err(Error::Unsupported(format!("canonical enumeration needs at most {MAX_ORDER} vertices")));
        }
        if let Some(r) = precolored {
            g.check_vertex(r)?;
        }
        let adj = g.adjacency_masks()?;
        let mut targets = vec![a; n];
        if let Some(r) = precolored {
            targets[r] = b;
        }
        let mut connected: Vec<u64> = (1u64..1 << n)
            .filter(|&m| mask_components(m, &adj).len() == 1)
            .collect();
        let low = |m: u64| m.trailing_zeros();
        connected.sort_by_key(|&m| (low(m), m.count_ones() == 1, m));
        let edges = g.edges();
        let trace_vertices = connected
            .iter()
            .map(|&m| (0..n).filter(|v| m >> v & 1 == 1).collect())
            .collect();
        let trace_edges = connected
            .iter()
            .map(|&m| {
                (0..edges.len())
                    .filter(|&e| m >> edges[e].0 & 1 == 1 && m >> edges[e].1 & 1 == 1)
                    .collect()
            })
            .collect();
        let singleton = connected.iter().map(|m| m.count_ones() == 1).collect();
        Ok(CanonicalSpace {
            n,
            adj,
            c,
            targets,
            traces: connected,
            trace_vertices,
            trace_edges,
            singleton,
            edge_count: edges.len(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn trace_count(&self) -> usize {
        self.traces.len()
    }

    pub(crate) fn root(&self) -> Partial {
        Partial {
            level: 0,
            sums: vec![0; self.n],
            overlaps: vec![0; self.edge_count],
            mult: Vec::with_capacity(self.traces.len()),
        }
    }

    pub(crate) fn is_leaf(&self, p: &Partial) -> bool {
        p.level == self.traces.len()
    }

    /// Admissible multiplicities of the next trace, increasing.
    fn range(&self, p: &Partial) -> std::ops::RangeInclusive<usize> {
        let t = p.level;
        let v = self.trace_vertices[t][0];
        if self.singleton[t] {
            let k = self.targets[v] - p.sums[v];
            return k..=k;
        }
        let by_vertex = self.trace_vertices[t].iter().map(|&u| self.targets[u] - p.sums[u]).min();
        let by_edge = self.trace_edges[t].iter().map(|&e| self.c - p.overlaps[e]).min();
        let hi = by_vertex.unwrap_or(0).min(by_edge.unwrap_or(usize::MAX));
        0..=hi
    }

    fn push(&self, p: &mut Partial, k: usize) {
        let t = p.level;
        for &u in &self.trace_vertices[t] {
            p.sums[u] += k;
        }
        for &e in &self.trace_edges[t] {
            p.overlaps[e] += k;
        }
        p.mult.push(k);
        p.level += 1;
    }

    fn pop(&self, p: &mut Partial) {
        p.level -= 1;
        let t = p.level;
        let k = p.mult.pop().unwrap_or(0);
        for &u in &self.trace_vertices[t] {
            p.sums[u] -= k;
        }
        for &e in &self.trace_edges[t] {
            p.overlaps[e] -= k;
        }
    }

    pub(crate) fn children(&self, p: &Partial) -> Vec<Partial> {
        self.range(p)
            .map(|k| {
                let mut q = p.clone();
                self.push(&mut q, k);
                q
            })
            .collect()
    }

    pub(crate) fn multiset(&self, p: &Partial) -> TraceMultiset {
        let mut t = TraceMultiset::new();
        for (i, &k) in p.mult.iter().enumerate() {
            t.add(self.traces[i], k);
        }
        t
    }

    /// Nonzero `(trace, multiplicity)` pairs of a complete assignment.
    pub(crate) fn leaf_traces(&self, p: &Partial) -> Vec<(u64, u32)> {
        p.mult
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| (self.traces[i], k as u32))
            .collect()
    }

    /// Depth-first walk below `start`. `node` is called for every node and may
    /// stop the walk; `leaf` is called on complete assignments.
    pub(crate) fn walk<B>(
        &self,
        start: Partial,
        node: &mut dyn FnMut() -> ControlFlow<B>,
        leaf: &mut dyn FnMut(&Partial) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        let mut p = start;
        let base = p.level;
        // explicit stack of (next multiplicity, upper bound) per open level
        let mut stack: Vec<(usize, usize)> = Vec::new();
        node()?;
        if self.is_leaf(&p) {
            return leaf(&p);
        }
        let r = self.range(&p);
        stack.push((*r.start(), *r.end()));
        while let Some(top) = stack.last_mut() {
            if top.0 > top.1 {
                stack.pop();
                if p.level > base {
                    self.pop(&mut p);
                }
                continue;
            }
            let k = top.0;
            top.0 += 1;
            self.push(&mut p, k);
            node()?;
            if self.is_leaf(&p) {
                leaf(&p)?;
                self.pop(&mut p);
            } else {
                let r = self.range(&p);
                stack.push((*r.start(), *r.end()));
            }
        }
        ControlFlow::Continue(())
    }

    /// Calls `f` on every canonical assignment, in enumeration order.
    pub fn for_each(&self, mut f: impl FnMut(&TraceMultiset)) {
        let _ = self.walk::<()>(self.root(), &mut || ControlFlow::Continue(()), &mut |p| {
            f(&self.multiset(p));
            ControlFlow::Continue(())
        });
    }

    pub fn count(&self) -> u64 {
        let mut k = 0;
        let _ = self.walk::<()>(self.root(), &mut || ControlFlow::Continue(()), &mut |_| {
            k += 1;
            ControlFlow::Continue(())
        });
        k
    }
}

/// Every canonical `c`-separating assignment of `g`, collected. The stream is
/// finite but grows quickly; use [`CanonicalSpace::for_each`] for large spaces.
pub fn enumerate_canonical(
    g: &Graph,
    a: usize,
    b: usize,
    c: usize,
    precolored: Option<Vertex>,
) -> Result<Vec<TraceMultiset>> {
    let space = CanonicalSpace::new(g, a, b, c, precolored)?;
    let mut out = Vec::new();
    space.for_each(|t| out.push(t.clone()));
    Ok(out)
}

/// Automorphisms of an annotated cycle (rotations and reflections), as vertex maps.
pub fn cycle_automorphisms(g: &Graph) -> Option<Vec<Vec<Vertex>>> {
    let order = g.cycle_order()?;
    let n = order.len();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut out = Vec::with_capacity(2 * n);
    for shift in 0..n {
        for flip in [false, true] {
            let map = (0..n)
                .map(|v| {
                    let i = pos[v];
                    let j = if flip { (n + shift - i) % n } else { (i + shift) % n };
                    order[j]
                })
                .collect();
            out.push(map);
        }
    }
    Some(out)
}

fn map_mask(mask: u64, map: &[Vertex]) -> u64 {
    (0..map.len()).filter(|v| mask >> v & 1 == 1).fold(0, |m, v| m | 1 << map[v])
}

/// Whether `traces` is the least member of its orbit under `maps`, comparing sorted forms.
pub(crate) fn is_orbit_minimum(traces: &[(u64, u32)], maps: &[Vec<Vertex>]) -> bool {
    let mut own = traces.to_vec();
    own.sort_unstable();
    let mut image = Vec::with_capacity(traces.len());
    maps.iter().all(|map| {
        image.clear();
        image.extend(own.iter().map(|&(m, k)| (map_mask(m, map), k)));
        image.sort_unstable();
        own <= image
    })
}
