//! Color sets, list assignments, `b`-colorings, and the two list-level
//! quantities everything else is phrased in: the separation of an
//! assignment and the amplitude sums `Σ_{i,j}(L)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

pub type Color = u32;

/// A finite set of small nonnegative colors backed by a bit set.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ColorSet {
    words: Vec<u64>,
}

impl ColorSet {
    pub fn new() -> Self {
        Self::default()
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, c: Color) -> bool {
        let (w, bit) = ((c / 64) as usize, c % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & (1 << bit) == 0;
        self.words[w] |= 1 << bit;
        fresh
    }

    pub fn remove(&mut self, c: Color) -> bool {
        let (w, bit) = ((c / 64) as usize, c % 64);
        if w >= self.words.len() {
            return false;
        }
        let present = self.words[w] & (1 << bit) != 0;
        self.words[w] &= !(1 << bit);
        self.trim();
        present
    }

    pub fn contains(&self, c: Color) -> bool {
        let (w, bit) = ((c / 64) as usize, c % 64);
        w < self.words.len() && self.words[w] & (1 << bit) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Colors in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = Color> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros();
                w &= w - 1;
                Some(i as Color * 64 + bit)
            })
        })
    }

    pub fn union(&self, other: &ColorSet) -> ColorSet {
        let len = self.words.len().max(other.words.len());
        let words = (0..len)
            .map(|i| self.words.get(i).copied().unwrap_or(0) | other.words.get(i).copied().unwrap_or(0))
            .collect();
        ColorSet { words }
    }

    pub fn intersection(&self, other: &ColorSet) -> ColorSet {
        let mut out = ColorSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        };
        out.trim();
        out
    }

    pub fn difference(&self, other: &ColorSet) -> ColorSet {
        let mut out = ColorSet {
            words: self
                .words
                .iter()
                .enumerate()
                .map(|(i, &a)| a & !other.words.get(i).copied().unwrap_or(0))
                .collect(),
        };
        out.trim();
        out
    }

    pub fn intersection_len(&self, other: &ColorSet) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn is_disjoint(&self, other: &ColorSet) -> bool {
        self.intersection_len(other) == 0
    }

    pub fn is_subset(&self, other: &ColorSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, &a)| a & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    /// The `k` smallest colors, or `None` if the set is smaller than `k`.
    pub fn smallest(&self, k: usize) -> Option<ColorSet> {
        (self.len() >= k).then(|| self.iter().take(k).collect())
    }

    pub fn to_vec(&self) -> Vec<Color> {
        self.iter().collect()
    }
}

impl FromIterator<Color> for ColorSet {
    fn from_iter<I: IntoIterator<Item = Color>>(iter: I) -> Self {
        let mut s = ColorSet::new();
        for c in iter {
            s.insert(c);
        }
        s
    }
}

impl<const N: usize> From<[Color; N]> for ColorSet {
    fn from(colors: [Color; N]) -> Self {
        colors.into_iter().collect()
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ColorSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for ColorSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let colors = Vec::<Color>::deserialize(d)?;
        let set: ColorSet = colors.iter().copied().collect();
        if set.len() != colors.len() {
            return Err(serde::de::Error::custom("color list contains duplicates"));
        }
        Ok(set)
    }
}

/// The lists `L(v)` of a graph. Precolored vertices carry exactly the
/// colors they are forced to use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListAssignment {
    graph: Graph,
    lists: Vec<ColorSet>,
    precolored: Vec<Vertex>,
}

impl ListAssignment {
    pub fn new(graph: Graph, lists: Vec<ColorSet>) -> Result<Self> {
        if lists.len() != graph.n() {
            return Err(Error::InvalidParameter(format!(
                "{} lists given for a graph of order {}",
                lists.len(),
                graph.n()
            )));
        }
        Ok(ListAssignment {
            graph,
            lists,
            precolored: Vec::new(),
        })
    }

    pub fn from_vecs(graph: Graph, lists: &[Vec<Color>]) -> Result<Self> {
        Self::new(graph, lists.iter().map(|l| l.iter().copied().collect()).collect())
    }

    pub fn with_precolored(mut self, vertices: Vec<Vertex>) -> Result<Self> {
        for &v in &vertices {
            self.graph.check_vertex(v)?;
        }
        let mut vertices = vertices;
        vertices.sort_unstable();
        vertices.dedup();
        self.precolored = vertices;
        Ok(self)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn lists(&self) -> &[ColorSet] {
        &self.lists
    }

    pub fn list(&self, v: Vertex) -> &ColorSet {
        &self.lists[v]
    }

    pub fn precolored(&self) -> &[Vertex] {
        &self.precolored
    }

    pub fn into_parts(self) -> (Graph, Vec<ColorSet>, Vec<Vertex>) {
        (self.graph, self.lists, self.precolored)
    }

    pub fn separation(&self) -> usize {
        separation(self)
    }

    pub fn colors(&self) -> ColorSet {
        self.lists.iter().fold(ColorSet::new(), |acc, l| acc.union(l))
    }

    /// Checks the size convention: `a` colors everywhere, `b` at precolored vertices.
    pub fn check_sizes(&self, a: usize, b: usize) -> std::result::Result<(), String> {
        for (v, list) in self.lists.iter().enumerate() {
            let want = if self.precolored.contains(&v) { b } else { a };
            if list.len() != want {
                return Err(format!("vertex {v} has {} colors, expected {want}", list.len()));
            }
        }
        Ok(())
    }

    /// Applies a color renaming; colors missing from the map are kept.
    pub fn relabel(&self, map: &BTreeMap<Color, Color>) -> ListAssignment {
        let lists = self
            .lists
            .iter()
            .map(|l| l.iter().map(|c| map.get(&c).copied().unwrap_or(c)).collect())
            .collect();
        ListAssignment {
            graph: self.graph.clone(),
            lists,
            precolored: self.precolored.clone(),
        }
    }
}

/// Maximum over edges of `|L(u) ∩ L(v)|`; an assignment is `c`-separating iff this is at most `c`.
pub fn separation(l: &ListAssignment) -> usize {
    l.graph
        .edges()
        .iter()
        .map(|&(u, v)| l.lists[u].intersection_len(&l.lists[v]))
        .max()
        .unwrap_or(0)
}

/// A `b`-coloring: one color set per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BColoring {
    pub sets: Vec<ColorSet>,
}

impl BColoring {
    pub fn new(sets: Vec<ColorSet>) -> Self {
        BColoring { sets }
    }

    pub fn get(&self, v: Vertex) -> &ColorSet {
        &self.sets[v]
    }
}

/// `φ(v) ⊆ L(v)`, `|φ(v)| = b`, and `φ(u) ∩ φ(v) = ∅` on every edge.
pub fn is_valid_coloring(l: &ListAssignment, phi: &BColoring, b: usize) -> bool {
    coloring_defect(l, phi, b).is_none()
}

/// Describes the first violated coloring constraint, if any.
pub fn coloring_defect(l: &ListAssignment, phi: &BColoring, b: usize) -> Option<String> {
    if phi.sets.len() != l.graph.n() {
        return Some(format!("coloring has {} sets for {} vertices", phi.sets.len(), l.graph.n()));
    }
    for (v, set) in phi.sets.iter().enumerate() {
        if set.len() != b {
            return Some(format!("vertex {v} receives {} colors instead of {b}", set.len()));
        }
        if !set.is_subset(&l.lists[v]) {
            return Some(format!("vertex {v} uses colors outside its list"));
        }
    }
    l.graph
        .edges()
        .iter()
        .find(|&&(u, v)| !phi.sets[u].is_disjoint(&phi.sets[v]))
        .map(|&(u, v)| format!("edge {u}-{v} shares a color"))
}

/// A list assignment up to renaming colors: for each trace (the set of
/// vertices whose lists contain a color, as a bit mask) the number of
/// colors having that trace.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TraceMultiset {
    pub traces: BTreeMap<u64, usize>,
}

impl TraceMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, mask: u64, mult: usize) {
        if mult > 0 && mask != 0 {
            *self.traces.entry(mask).or_default() += mult;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, usize)> + '_ {
        self.traces.iter().map(|(&m, &k)| (m, k))
    }

    pub fn vertex_sum(&self, v: Vertex) -> usize {
        self.iter().filter(|(m, _)| m >> v & 1 == 1).map(|(_, k)| k).sum()
    }

    /// Number of colors shared by `u` and `v`.
    pub fn overlap(&self, u: Vertex, v: Vertex) -> usize {
        let pair = (1u64 << u) | (1u64 << v);
        self.iter().filter(|(m, _)| m & pair == pair).map(|(_, k)| k).sum()
    }

    /// Replaces every trace by its connected components in `g`. Colors whose
    /// trace is disconnected behave exactly like one color per component, both
    /// for separation and for colorability.
    pub fn split_components(&self, adjacency: &[u64]) -> TraceMultiset {
        let mut out = TraceMultiset::new();
        for (mask, k) in self.iter() {
            for comp in mask_components(mask, adjacency) {
                out.add(comp, k);
            }
        }
        out
    }

    /// Assigns fresh colors `0, 1, ...` in trace order.
    pub fn realize(&self, graph: &Graph) -> Result<ListAssignment> {
        let mut lists = vec![ColorSet::new(); graph.n()];
        let mut next: Color = 0;
        for (mask, k) in self.iter() {
            if graph.n() < 64 && mask >> graph.n() != 0 {
                return Err(Error::InvalidParameter(format!("trace {mask:#b} exceeds the graph")));
            }
            for _ in 0..k {
                for (v, list) in lists.iter_mut().enumerate() {
                    if mask >> v & 1 == 1 {
                        list.insert(next);
                    }
                }
                next += 1;
            }
        }
        ListAssignment::new(graph.clone(), lists)
    }
}

/// Groups colors by trace. Requires at most 64 vertices.
pub fn canonicalize(l: &ListAssignment) -> Result<TraceMultiset> {
    if l.graph.n() > 64 {
        return Err(Error::Unsupported("traces need at most 64 vertices".into()));
    }
    let mut by_color: BTreeMap<Color, u64> = BTreeMap::new();
    for (v, list) in l.lists.iter().enumerate() {
        for c in list.iter() {
            *by_color.entry(c).or_default() |= 1u64 << v;
        }
    }
    let mut t = TraceMultiset::new();
    for mask in by_color.into_values() {
        t.add(mask, 1);
    }
    Ok(t)
}

/// Connected components of the subgraph induced by `mask`.
pub fn mask_components(mask: u64, adjacency: &[u64]) -> Vec<u64> {
    let mut rest = mask;
    let mut out = Vec::new();
    while rest != 0 {
        let mut comp = rest & rest.wrapping_neg();
        loop {
            let mut grown = comp;
            let mut bits = comp;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                grown |= adjacency[v] & mask;
            }
            if grown == comp {
                break;
            }
            comp = grown;
        }
        out.push(comp);
        rest &= !comp;
    }
    out
}

/// A sub-interval `x_i..x_j` (1-based) whose amplitude sum is below `b(j-i+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AmplitudeViolation {
    pub i: usize,
    pub j: usize,
    pub sigma: usize,
    pub required: usize,
}

impl fmt::Display for AmplitudeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Sigma_{{{},{}}}(L) = {} < {}",
            self.i, self.j, self.sigma, self.required
        )
    }
}

fn order_of(g: &Graph) -> Result<(&[Vertex], bool)> {
    if let Some(order) = g.path_order() {
        Ok((order, false))
    } else if let Some(order) = g.cycle_order() {
        Ok((order, true))
    } else {
        Err(Error::MissingAnnotation("path or cycle order"))
    }
}

/// Independence number of the occurrence pattern of one color along a path,
/// or along the whole cycle when `closed` is set.
fn alpha_along(present: &[bool], closed: bool) -> usize {
    let len = present.len();
    if closed && present.iter().all(|&p| p) {
        return len / 2;
    }
    let mut runs: Vec<usize> = Vec::new();
    let mut run = 0;
    for &p in present {
        if p {
            run += 1;
        } else if run > 0 {
            runs.push(run);
            run = 0;
        }
    }
    if run > 0 {
        runs.push(run);
    }
    if closed && runs.len() > 1 && present[0] && present[len - 1] {
        let last = runs.pop().unwrap_or(0);
        runs[0] += last;
    }
    runs.iter().map(|r| r.div_ceil(2)).sum()
}

/// `Σ_{i,j}(L)`: the sum over colors of the independence number of the
/// occurrences of that color on the subgraph induced by `x_i..x_j` (1-based,
/// along the path or cycle order). The full range of a cycle order is the
/// cycle itself; shorter ranges induce paths.
pub fn amplitude_sigma(l: &ListAssignment, i: usize, j: usize) -> Result<usize> {
    let (order, is_cycle) = order_of(&l.graph)?;
    let n = order.len();
    if i < 1 || i > j || j > n {
        return Err(Error::InvalidParameter(format!("need 1 <= i <= j <= {n}, got i={i}, j={j}")));
    }
    let window = &order[i - 1..j];
    let closed = is_cycle && window.len() == n;
    let colors = window.iter().fold(ColorSet::new(), |acc, &v| acc.union(&l.lists[v]));
    let mut present = vec![false; window.len()];
    let mut total = 0;
    for c in colors.iter() {
        for (slot, &v) in present.iter_mut().zip(window) {
            *slot = l.lists[v].contains(c);
        }
        total += alpha_along(&present, closed);
    }
    Ok(total)
}

/// `Σ(L) = Σ_{1,n}(L)`.
pub fn amplitude_sigma_total(l: &ListAssignment) -> Result<usize> {
    amplitude_sigma(l, 1, l.graph.n())
}

fn is_complete(g: &Graph) -> bool {
    g.edge_count() * 2 == g.n() * g.n().saturating_sub(1)
}

/// First sub-structure violating the amplitude condition. Paths are checked
/// on every sub-interval; complete graphs on every vertex subset (colors
/// contribute one each there).
pub fn amplitude_violation(l: &ListAssignment, b: usize) -> Result<Option<AmplitudeViolation>> {
    let g = &l.graph;
    if let Some(order) = g.path_order() {
        let seq: Vec<ColorSet> = order.iter().map(|&v| l.lists[v].clone()).collect();
        return Ok(path_amplitude_violation(&seq, b));
    }
    if is_complete(g) {
        let n = g.n();
        if n > 20 {
            return Err(Error::Unsupported("complete graphs above 20 vertices".into()));
        }
        // report subsets by size so the smallest violation comes first
        let mut masks: Vec<u32> = (1..(1u32 << n)).collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        for mask in masks {
            let union = (0..n)
                .filter(|v| mask >> v & 1 == 1)
                .fold(ColorSet::new(), |acc, v| acc.union(&l.lists[v]));
            let size = mask.count_ones() as usize;
            if union.len() < b * size {
                let lo = mask.trailing_zeros() as usize + 1;
                let hi = 32 - mask.leading_zeros() as usize;
                return Ok(Some(AmplitudeViolation {
                    i: lo,
                    j: hi,
                    sigma: union.len(),
                    required: b * size,
                }));
            }
        }
        return Ok(None);
    }
    Err(Error::Unsupported(
        "the amplitude condition is evaluated exactly only on paths and complete graphs".into(),
    ))
}

/// Amplitude check for lists given in path order. Reports the shortest
/// violated interval, leftmost first.
pub fn path_amplitude_violation(lists: &[ColorSet], b: usize) -> Option<AmplitudeViolation> {
    let n = lists.len();
    // sigma[i][j] for all windows, grown one vertex at a time from each start
    let mut sigma = vec![vec![0usize; n]; n];
    for i in 0..n {
        let mut runs: HashMap<Color, (usize, usize)> = HashMap::new();
        let mut total = 0;
        for j in i..n {
            for c in lists[j].iter() {
                let run = match runs.get(&c) {
                    Some(&(last, len)) if last + 1 == j => len + 1,
                    _ => 1,
                };
                if run % 2 == 1 {
                    total += 1;
                }
                runs.insert(c, (j, run));
            }
            sigma[i][j] = total;
        }
    }
    for len in 1..=n {
        for i in 0..=n - len {
            let j = i + len - 1;
            if sigma[i][j] < b * len {
                return Some(AmplitudeViolation {
                    i: i + 1,
                    j: j + 1,
                    sigma: sigma[i][j],
                    required: b * len,
                });
            }
        }
    }
    None
}

pub fn amplitude_condition(l: &ListAssignment, b: usize) -> Result<bool> {
    Ok(amplitude_violation(l, b)?.is_none())
}

/// Serialized list assignment: `{"lists": [[int,...],...], "precolored": {"vertex": int}?}`.
/// Several precolored vertices (paths with two fixed ends) use `{"vertices": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListsFile {
    pub lists: Vec<Vec<Color>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precolored: Option<Precolored>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Precolored {
    One { vertex: Vertex },
    Many { vertices: Vec<Vertex> },
}

impl Precolored {
    pub fn from_vertices(vertices: &[Vertex]) -> Option<Precolored> {
        match vertices {
            [] => None,
            [v] => Some(Precolored::One { vertex: *v }),
            many => Some(Precolored::Many { vertices: many.to_vec() }),
        }
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        match self {
            Precolored::One { vertex } => vec![*vertex],
            Precolored::Many { vertices } => vertices.clone(),
        }
    }
}

impl ListsFile {
    pub fn from_assignment(l: &ListAssignment) -> Self {
        ListsFile {
            lists: l.lists.iter().map(ColorSet::to_vec).collect(),
            precolored: Precolored::from_vertices(&l.precolored),
        }
    }

    pub fn into_assignment(self, graph: Graph) -> Result<ListAssignment> {
        let mut lists = Vec::with_capacity(self.lists.len());
        for (v, raw) in self.lists.iter().enumerate() {
            let set: ColorSet = raw.iter().copied().collect();
            if set.len() != raw.len() {
                return Err(Error::InvalidParameter(format!("list of vertex {v} repeats a color")));
            }
            lists.push(set);
        }
        let l = ListAssignment::new(graph, lists)?;
        match self.precolored {
            Some(p) => l.with_precolored(p.vertices()),
            None => Ok(l),
        }
    }
}
