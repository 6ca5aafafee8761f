//! Exact colorability on the trace representation.
//!
//! An instance is a demand per vertex (how many colors it still needs) and a
//! multiset of traces. A color with trace `T` may be given to any independent
//! set of `G[T]`, and since extra coverage never hurts only maximal ones
//! matter. The search alternates three steps: forced propagation (a vertex
//! whose supply equals its demand takes everything), splitting into
//! independent components, and either a frontier DP over capped coverage
//! vectors or branching on a vertex when the DP would be too wide.

use std::collections::{BTreeMap, HashSet};

use crate::combin::bounded_compositions;
use crate::lists::mask_components;

/// DP work estimate above which the search branches instead.
const DP_LIMIT: f64 = 4.0e6;

pub(crate) type Traces = Vec<(u64, u32)>;

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(v)
    })
}

fn alive_mask(demand: &[u8]) -> u64 {
    demand
        .iter()
        .enumerate()
        .filter(|(_, &d)| d > 0)
        .fold(0, |m, (v, _)| m | 1 << v)
}

/// Restricts traces to vertices with demand, splits them into connected
/// pieces, merges equal traces and caps multiplicities at the total demand
/// they could ever serve.
fn normalize(adj: &[u64], demand: &[u8], traces: &[(u64, u32)]) -> Traces {
    let alive = alive_mask(demand);
    let mut merged: BTreeMap<u64, u32> = BTreeMap::new();
    for &(mask, k) in traces {
        let m = mask & alive;
        if m == 0 || k == 0 {
            continue;
        }
        for comp in mask_components(m, adj) {
            *merged.entry(comp).or_default() += k;
        }
    }
    merged
        .into_iter()
        .map(|(m, k)| {
            let need: u32 = bits(m).map(|v| demand[v] as u32).sum();
            (m, k.min(need))
        })
        .collect()
}

fn supply(n: usize, traces: &[(u64, u32)]) -> Vec<u64> {
    let mut s = vec![0u64; n];
    for &(m, k) in traces {
        for v in bits(m) {
            s[v] += k as u64;
        }
    }
    s
}

/// Maximal independent sets of `G[mask]` (Bron-Kerbosch on the complement).
pub(crate) fn maximal_independent_sets(mask: u64, adj: &[u64]) -> Vec<u64> {
    fn rec(r: u64, mut p: u64, mut x: u64, mask: u64, adj: &[u64], out: &mut Vec<u64>) {
        if p == 0 && x == 0 {
            out.push(r);
            return;
        }
        while p != 0 {
            let v = p.trailing_zeros() as usize;
            let bit = 1u64 << v;
            let non = mask & !adj[v] & !bit;
            rec(r | bit, p & non, x & non, mask, adj, out);
            p &= !bit;
            x |= bit;
        }
    }
    let mut out = Vec::new();
    rec(0, mask, 0, mask, adj, &mut out);
    out
}

pub(crate) struct Search<'a> {
    adj: &'a [u64],
    pub nodes: u64,
}

impl<'a> Search<'a> {
    pub fn new(adj: &'a [u64]) -> Self {
        Search { adj, nodes: 0 }
    }

    /// Whether every vertex can receive `demand[v]` pairwise edge-disjoint colors.
    pub fn feasible(&mut self, demand: &[u8], traces: &[(u64, u32)]) -> bool {
        let n = self.adj.len();
        let mut demand = demand.to_vec();
        let mut traces = traces.to_vec();
        loop {
            traces = normalize(self.adj, &demand, &traces);
            let alive = alive_mask(&demand);
            if alive == 0 {
                return true;
            }
            let sup = supply(n, &traces);
            let mut forced = None;
            for v in bits(alive) {
                if sup[v] < demand[v] as u64 {
                    return false;
                }
                if forced.is_none() && sup[v] == demand[v] as u64 {
                    forced = Some(v);
                }
            }
            match forced {
                Some(v) => {
                    let closed = self.adj[v] | 1 << v;
                    for t in traces.iter_mut() {
                        if t.0 >> v & 1 == 1 {
                            t.0 &= !closed;
                        }
                    }
                    demand[v] = 0;
                }
                None => break,
            }
        }
        self.nodes += 1;
        let alive = alive_mask(&demand);
        let comps = mask_components(alive, self.adj);
        if comps.len() > 1 {
            return comps.into_iter().all(|comp| {
                let d: Vec<u8> = (0..n).map(|v| if comp >> v & 1 == 1 { demand[v] } else { 0 }).collect();
                let t: Traces = traces.iter().copied().filter(|(m, _)| m & comp != 0).collect();
                self.feasible(&d, &t)
            });
        }
        if let Some(verdict) = self.dp(alive, &demand, &traces) {
            return verdict;
        }
        self.branch(alive, &demand, &traces)
    }

    fn branch(&mut self, comp: u64, demand: &[u8], traces: &[(u64, u32)]) -> bool {
        let v = self.branch_vertex(comp);
        let closed = self.adj[v] | 1 << v;
        let holding: Vec<usize> = (0..traces.len()).filter(|&i| traces[i].0 >> v & 1 == 1).collect();
        let caps: Vec<usize> = holding.iter().map(|&i| traces[i].1 as usize).collect();
        let mut next_demand = demand.to_vec();
        next_demand[v] = 0;
        for split in bounded_compositions(demand[v] as usize, &caps) {
            self.nodes += 1;
            let mut next: Traces = Vec::with_capacity(traces.len() + holding.len());
            let mut h = 0;
            for (i, &(m, k)) in traces.iter().enumerate() {
                if h < holding.len() && holding[h] == i {
                    let used = split[h] as u32;
                    if used > 0 {
                        next.push((m & !closed, used));
                    }
                    next.push((m, k - used));
                    h += 1;
                } else {
                    next.push((m, k));
                }
            }
            if self.feasible(&next_demand, &next) {
                return true;
            }
        }
        false
    }

    /// A cut vertex leaving the smallest largest piece, else a vertex of maximum degree.
    fn branch_vertex(&self, comp: u64) -> usize {
        let mut best: Option<(u32, usize)> = None;
        for v in bits(comp) {
            let pieces = mask_components(comp & !(1 << v), self.adj);
            if pieces.len() > 1 {
                let worst = pieces.iter().map(|p| p.count_ones()).max().unwrap_or(0);
                if best.is_none_or(|(w, _)| worst < w) {
                    best = Some((worst, v));
                }
            }
        }
        if let Some((_, v)) = best {
            return v;
        }
        bits(comp)
            .max_by_key(|&v| ((self.adj[v] & comp).count_ones(), std::cmp::Reverse(v)))
            .unwrap_or(0)
    }

    /// Frontier DP for one connected component; `None` when it does not fit or looks too wide.
    fn dp(&mut self, comp: u64, demand: &[u8], traces: &[(u64, u32)]) -> Option<bool> {
        let max_d = bits(comp).map(|v| demand[v]).max().unwrap_or(0) as u32;
        let width = 32 - max_d.leading_zeros();
        if comp.count_ones() * width > 128 {
            return None;
        }
        // BFS order from a vertex of least degree keeps the frontier narrow on paths and cycles
        let start = bits(comp).min_by_key(|&v| ((self.adj[v] & comp).count_ones(), v))?;
        let mut rank = [usize::MAX; 64];
        let mut order = vec![start];
        let mut seen = 1u64 << start;
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for w in bits(self.adj[u] & comp & !seen) {
                seen |= 1 << w;
                order.push(w);
            }
        }
        for (i, &v) in order.iter().enumerate() {
            rank[v] = i;
        }
        let mut sorted: Vec<(usize, u64, u32)> = traces
            .iter()
            .map(|&(m, k)| (bits(m).map(|v| rank[v]).min().unwrap_or(0), m, k))
            .collect();
        sorted.sort_unstable();

        let mut first = [usize::MAX; 64];
        let mut last = [0usize; 64];
        for (i, &(_, m, _)) in sorted.iter().enumerate() {
            for v in bits(m) {
                first[v] = first[v].min(i);
                last[v] = i;
            }
        }
        let sets: Vec<Vec<u64>> = sorted.iter().map(|&(_, m, _)| maximal_independent_sets(m, self.adj)).collect();
        let mut estimate = 0.0;
        for (i, &(_, _, k)) in sorted.iter().enumerate() {
            let open = bits(comp).filter(|&v| first[v] <= i && i <= last[v]).count();
            estimate += k as f64 * sets[i].len() as f64 * ((max_d + 1) as f64).powi(open as i32);
        }
        if estimate > DP_LIMIT {
            return None;
        }

        let field = (1u128 << width) - 1;
        let shift = |v: usize| (rank[v] as u32) * width;
        let mut rem = supply(self.adj.len(), traces);
        let mut states: Vec<u128> = vec![0];
        let mut next: HashSet<u128> = HashSet::new();
        for (i, &(_, m, k)) in sorted.iter().enumerate() {
            for _ in 0..k {
                for v in bits(m) {
                    rem[v] -= 1;
                }
                next.clear();
                for &s in &states {
                    for &set in &sets[i] {
                        let mut t = s;
                        for v in bits(set) {
                            if ((t >> shift(v)) & field) < demand[v] as u128 {
                                t += 1u128 << shift(v);
                            }
                        }
                        let ok = bits(m).all(|v| ((t >> shift(v)) & field) as u64 + rem[v] >= demand[v] as u64);
                        if ok {
                            next.insert(t);
                        }
                    }
                }
                self.nodes += states.len() as u64;
                if next.is_empty() {
                    return Some(false);
                }
                states = next.drain().collect();
            }
        }
        Some(!states.is_empty())
    }
}
