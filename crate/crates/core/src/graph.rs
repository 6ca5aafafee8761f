//! Finite simple undirected graphs with the structural annotations the
//! separation results are stated against: cycle and path orders, inner
//! faces of an outerplanar embedding, and the block tree of a cactus.
//!
//! Vertices are dense indices `0..n`. Annotations are stored rather than
//! recomputed because every construction downstream indexes vertices by
//! their position along a cycle or a path.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Length of a shortest cycle. Forests have infinite girth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => write!(f, "infinite"),
        }
    }
}

/// One block (maximal 2-connected piece or bridge) of a connected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(Vertex, Vertex)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    Edge,
    Cycle(usize),
    Other,
}

impl Block {
    fn from_edges(mut edges: Vec<(Vertex, Vertex)>) -> Self {
        for e in edges.iter_mut() {
            *e = ordered(e.0, e.1);
        }
        edges.sort_unstable();
        edges.dedup();
        let vertices: BTreeSet<Vertex> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        Block {
            vertices: vertices.into_iter().collect(),
            edges,
        }
    }

    pub fn kind(&self) -> BlockKind {
        if self.edges.len() == 1 {
            return BlockKind::Edge;
        }
        if self.edges.len() == self.vertices.len() {
            let mut deg: HashMap<Vertex, usize> = HashMap::new();
            for &(u, v) in &self.edges {
                *deg.entry(u).or_default() += 1;
                *deg.entry(v).or_default() += 1;
            }
            // a 2-connected block with |E| = |V| and all degrees 2 is a cycle
            if deg.values().all(|&d| d == 2) {
                return BlockKind::Cycle(self.vertices.len());
            }
        }
        BlockKind::Other
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Walks a cycle block starting at `start`, returning its vertices in cyclic order.
    /// The second vertex is the smaller of the two neighbours of `start`.
    pub fn cycle_from(&self, start: Vertex) -> Option<Vec<Vertex>> {
        if !matches!(self.kind(), BlockKind::Cycle(_)) || !self.contains(start) {
            return None;
        }
        let mut nbrs: HashMap<Vertex, Vec<Vertex>> = HashMap::new();
        for &(u, v) in &self.edges {
            nbrs.entry(u).or_default().push(v);
            nbrs.entry(v).or_default().push(u);
        }
        for list in nbrs.values_mut() {
            list.sort_unstable();
        }
        let mut order = vec![start];
        let mut prev = start;
        let mut cur = nbrs[&start][0];
        while cur != start {
            order.push(cur);
            let next = nbrs[&cur].iter().copied().find(|&w| w != prev).unwrap_or(start);
            prev = cur;
            cur = next;
        }
        Some(order)
    }
}

/// Blocks plus cut vertices of a connected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockTree {
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<Vertex>,
}

impl BlockTree {
    fn normalized(mut blocks: Vec<Block>, cut: impl IntoIterator<Item = Vertex>) -> Self {
        blocks.sort_by(|x, y| x.edges.cmp(&y.edges));
        let cut: BTreeSet<Vertex> = cut.into_iter().collect();
        BlockTree {
            blocks,
            cut_vertices: cut.into_iter().collect(),
        }
    }

    /// Every block is a single edge or a cycle.
    pub fn is_cactus(&self) -> bool {
        self.blocks.iter().all(|b| b.kind() != BlockKind::Other)
    }

    pub fn validate_cactus(&self) -> Result<()> {
        match self.blocks.iter().find(|b| b.kind() == BlockKind::Other) {
            None => Ok(()),
            Some(b) => Err(Error::NotACactus(format!(
                "block on vertices {:?} is neither an edge nor a cycle",
                b.vertices
            ))),
        }
    }

    pub fn blocks_containing(&self, v: Vertex) -> impl Iterator<Item = (usize, &Block)> {
        self.blocks.iter().enumerate().filter(move |(_, b)| b.contains(v))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
    cycle_order: Option<Vec<Vertex>>,
    path_order: Option<Vec<Vertex>>,
    faces: Option<Vec<Vec<Vertex>>>,
    blocks: Option<BlockTree>,
}

fn ordered(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Builds a simple graph. Loops and repeated edges are rejected.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::InvalidVertex { vertex: u, n });
            }
            if v >= n {
                return Err(Error::InvalidVertex { vertex: v, n });
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            if !set.insert(ordered(u, v)) {
                return Err(Error::InvalidGraph(format!("duplicate edge {u}-{v}")));
            }
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges,
            adj,
            cycle_order: None,
            path_order: None,
            faces: None,
            blocks: None,
        })
    }

    /// The cycle `x_1 x_2 ... x_n x_1` on vertices `0..n` in that order.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!("a cycle needs n >= 3, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let mut g = Graph::from_edges(n, &edges)?;
        g.cycle_order = Some((0..n).collect());
        g.faces = Some(vec![(0..n).collect()]);
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameter("a path needs n >= 1".into()));
        }
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        let mut g = Graph::from_edges(n, &edges)?;
        g.path_order = Some((0..n).collect());
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameter("a complete graph needs n >= 1".into()));
        }
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        let mut g = Graph::from_edges(n, &edges)?;
        if n == 3 {
            g.cycle_order = Some(vec![0, 1, 2]);
        }
        Ok(g)
    }

    /// `k` cycles of length `p` sharing the hub vertex 0. Copy `i` occupies
    /// vertices `1 + i(p-1) .. 1 + (i+1)(p-1)` in cyclic order after the hub.
    pub fn flower(p: usize, k: usize) -> Result<Self> {
        if p < 3 {
            return Err(Error::InvalidParameter(format!("flower petals need p >= 3, got {p}")));
        }
        if k < 1 {
            return Err(Error::InvalidParameter("a flower needs k >= 1 petals".into()));
        }
        let n = k * (p - 1) + 1;
        let mut edges = Vec::with_capacity(k * p);
        let mut faces = Vec::with_capacity(k);
        let mut blocks = Vec::with_capacity(k);
        for i in 0..k {
            let mut face = vec![0];
            face.extend((0..p - 1).map(|j| 1 + i * (p - 1) + j));
            let petal: Vec<_> = (0..p).map(|j| ordered(face[j], face[(j + 1) % p])).collect();
            edges.extend_from_slice(&petal);
            blocks.push(Block::from_edges(petal));
            faces.push(face);
        }
        let mut g = Graph::from_edges(n, &edges)?;
        if k == 1 {
            g.cycle_order = Some((0..n).collect());
        }
        g.faces = Some(faces);
        g.blocks = Some(BlockTree::normalized(blocks, if k > 1 { vec![0] } else { vec![] }));
        Ok(g)
    }

    pub fn with_faces(mut self, faces: Vec<Vec<Vertex>>) -> Result<Self> {
        self.validate_faces(&faces)?;
        self.faces = Some(faces);
        Ok(self)
    }

    pub fn with_cycle_order(mut self, order: Vec<Vertex>) -> Result<Self> {
        self.validate_cycle_order(&order)?;
        self.cycle_order = Some(order);
        Ok(self)
    }

    pub fn with_path_order(mut self, order: Vec<Vertex>) -> Result<Self> {
        self.validate_path_order(&order)?;
        self.path_order = Some(order);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn cycle_order(&self) -> Option<&[Vertex]> {
        self.cycle_order.as_deref()
    }

    pub fn path_order(&self) -> Option<&[Vertex]> {
        self.path_order.as_deref()
    }

    pub fn faces(&self) -> Option<&[Vec<Vertex>]> {
        self.faces.as_deref()
    }

    pub fn block_annotation(&self) -> Option<&BlockTree> {
        self.blocks.as_ref()
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, n: self.n })
        }
    }

    /// Neighbourhoods as bit masks; only available for graphs with at most 64 vertices.
    pub fn adjacency_masks(&self) -> Result<Vec<u64>> {
        if self.n > 64 {
            return Err(Error::Unsupported(format!(
                "bit-mask search supports at most 64 vertices, got {}",
                self.n
            )));
        }
        Ok(self
            .adj
            .iter()
            .map(|list| list.iter().fold(0u64, |m, &v| m | (1u64 << v)))
            .collect())
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    pub fn girth(&self) -> Girth {
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        for root in 0..self.n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            parent[root] = usize::MAX;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                if 2 * dist[u] + 1 >= best {
                    break;
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
        }
        if best == usize::MAX {
            Girth::Infinite
        } else {
            Girth::Finite(best)
        }
    }

    /// Length of a shortest cycle of length at least 4, if any.
    pub fn shortest_cycle_above_3(&self) -> Option<usize> {
        if self.is_connected() {
            if let Ok(tree) = self.block_decomposition() {
                if tree.is_cactus() {
                    return tree
                        .blocks
                        .iter()
                        .filter_map(|b| match b.kind() {
                            BlockKind::Cycle(len) if len > 3 => Some(len),
                            _ => None,
                        })
                        .min();
                }
            }
        }
        self.shortest_cycle_above_3_search()
    }

    // Exhaustive simple-cycle search; cycles are rooted at their smallest vertex.
    fn shortest_cycle_above_3_search(&self) -> Option<usize> {
        fn dfs(g: &Graph, start: Vertex, v: Vertex, len: usize, on: &mut [bool], best: &mut usize) {
            if len + 1 >= *best {
                return;
            }
            for &w in &g.adj[v] {
                if w == start && len >= 4 {
                    *best = (*best).min(len);
                } else if w > start && !on[w] {
                    on[w] = true;
                    dfs(g, start, w, len + 1, on, best);
                    on[w] = false;
                }
            }
        }
        let mut best = usize::MAX;
        let mut on = vec![false; self.n];
        for s in 0..self.n {
            on[s] = true;
            dfs(self, s, s, 1, &mut on, &mut best);
            on[s] = false;
        }
        (best != usize::MAX).then_some(best)
    }

    /// Blocks and cut vertices of a connected graph.
    pub fn block_decomposition(&self) -> Result<BlockTree> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        struct State<'a> {
            g: &'a Graph,
            disc: Vec<usize>,
            low: Vec<usize>,
            time: usize,
            stack: Vec<(Vertex, Vertex)>,
            blocks: Vec<Block>,
            cut: BTreeSet<Vertex>,
        }
        fn visit(s: &mut State, u: Vertex, parent: Option<Vertex>) {
            s.time += 1;
            s.disc[u] = s.time;
            s.low[u] = s.time;
            let mut children = 0;
            for i in 0..s.g.adj[u].len() {
                let w = s.g.adj[u][i];
                if s.disc[w] == 0 {
                    children += 1;
                    s.stack.push((u, w));
                    visit(s, w, Some(u));
                    s.low[u] = s.low[u].min(s.low[w]);
                    if s.low[w] >= s.disc[u] {
                        if parent.is_some() || children > 1 {
                            s.cut.insert(u);
                        }
                        let mut edges = Vec::new();
                        while let Some(e) = s.stack.pop() {
                            edges.push(e);
                            if e == (u, w) {
                                break;
                            }
                        }
                        s.blocks.push(Block::from_edges(edges));
                    }
                } else if Some(w) != parent && s.disc[w] < s.disc[u] {
                    s.stack.push((u, w));
                    s.low[u] = s.low[u].min(s.disc[w]);
                }
            }
        }
        let mut state = State {
            g: self,
            disc: vec![0; self.n],
            low: vec![0; self.n],
            time: 0,
            stack: Vec::new(),
            blocks: Vec::new(),
            cut: BTreeSet::new(),
        };
        if self.n > 0 {
            visit(&mut state, 0, None);
        }
        Ok(BlockTree::normalized(state.blocks, state.cut))
    }

    /// Adjacency graph of the inner faces: one vertex per face, an edge when two faces share a graph edge.
    pub fn weak_dual(&self) -> Result<Graph> {
        let faces = self.faces.as_ref().ok_or(Error::MissingAnnotation("face list"))?;
        let dual = face_adjacency(faces)?;
        if !dual.is_connected() || dual.edge_count() + 1 != dual.n() {
            return Err(Error::InvalidGraph(
                "weak dual is not a tree; faces do not describe a 2-connected outerplanar graph".into(),
            ));
        }
        Ok(dual)
    }

    /// Disjoint union of `g1` and `g2` with `v1` and `v2` merged into vertex `v1`.
    /// Vertices of `g2` other than `v2` follow those of `g1`, in their original order.
    pub fn identify_vertices(g1: &Graph, v1: Vertex, g2: &Graph, v2: Vertex) -> Result<Graph> {
        g1.check_vertex(v1)?;
        g2.check_vertex(v2)?;
        let n1 = g1.n;
        let map = |u: Vertex| -> Vertex {
            match u.cmp(&v2) {
                std::cmp::Ordering::Equal => v1,
                std::cmp::Ordering::Less => n1 + u,
                std::cmp::Ordering::Greater => n1 + u - 1,
            }
        };
        let mut edges = g1.edges.clone();
        edges.extend(g2.edges.iter().map(|&(u, v)| (map(u), map(v))));
        let mut g = Graph::from_edges(n1 + g2.n - 1, &edges)?;
        if let (Some(f1), Some(f2)) = (&g1.faces, &g2.faces) {
            let mut faces = f1.clone();
            faces.extend(f2.iter().map(|f| f.iter().map(|&u| map(u)).collect()));
            g.faces = Some(faces);
        }
        if let (Some(b1), Some(b2)) = (&g1.blocks, &g2.blocks) {
            let mut blocks = b1.blocks.clone();
            blocks.extend(
                b2.blocks
                    .iter()
                    .map(|b| Block::from_edges(b.edges.iter().map(|&(u, v)| (map(u), map(v))).collect())),
            );
            let mut cut: Vec<Vertex> = b1.cut_vertices.clone();
            cut.extend(b2.cut_vertices.iter().map(|&u| map(u)));
            if g1.degree(v1) > 0 && g2.degree(v2) > 0 {
                cut.push(v1);
            }
            g.blocks = Some(BlockTree::normalized(blocks, cut));
        }
        Ok(g)
    }

    fn validate_cycle_order(&self, order: &[Vertex]) -> Result<()> {
        let n = self.n;
        if order.len() != n || n < 3 {
            return Err(Error::InvalidGraph("cycle order must list every vertex once".into()));
        }
        let distinct: BTreeSet<_> = order.iter().copied().collect();
        if distinct.len() != n || order.iter().any(|&v| v >= n) {
            return Err(Error::InvalidGraph("cycle order must list every vertex once".into()));
        }
        if self.edges.len() != n || (0..n).any(|i| !self.has_edge(order[i], order[(i + 1) % n])) {
            return Err(Error::InvalidGraph("edges are not exactly the cycle order's consecutive pairs".into()));
        }
        Ok(())
    }

    fn validate_path_order(&self, order: &[Vertex]) -> Result<()> {
        let n = self.n;
        let distinct: BTreeSet<_> = order.iter().copied().collect();
        if order.len() != n || distinct.len() != n || order.iter().any(|&v| v >= n) {
            return Err(Error::InvalidGraph("path order must list every vertex once".into()));
        }
        if self.edges.len() + 1 != n || order.windows(2).any(|w| !self.has_edge(w[0], w[1])) {
            return Err(Error::InvalidGraph("edges are not exactly the path order's consecutive pairs".into()));
        }
        Ok(())
    }

    fn validate_faces(&self, faces: &[Vec<Vertex>]) -> Result<()> {
        let mut usage: HashMap<(Vertex, Vertex), usize> = HashMap::new();
        for face in faces {
            let distinct: BTreeSet<_> = face.iter().copied().collect();
            if face.len() < 3 || distinct.len() != face.len() {
                return Err(Error::InvalidGraph(format!("face {face:?} is not a cycle")));
            }
            for i in 0..face.len() {
                let (u, v) = (face[i], face[(i + 1) % face.len()]);
                if !self.has_edge(u, v) {
                    return Err(Error::InvalidGraph(format!("face {face:?} uses non-edge {u}-{v}")));
                }
                let count = usage.entry(ordered(u, v)).or_default();
                *count += 1;
                if *count > 2 {
                    return Err(Error::InvalidGraph(format!("edge {u}-{v} lies on more than two faces")));
                }
            }
        }
        let dual = face_adjacency(faces)?;
        // acyclic: each component of the dual is a tree
        let components = connected_components(&dual);
        if dual.edge_count() + components.len() != dual.n() {
            return Err(Error::InvalidGraph("face adjacency graph contains a cycle".into()));
        }
        Ok(())
    }

    /// Vertex sets of the connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        connected_components(self)
    }
}

fn connected_components(g: &Graph) -> Vec<Vec<Vertex>> {
    let mut seen = vec![false; g.n];
    let mut out = Vec::new();
    for s in 0..g.n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &g.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn face_edges(face: &[Vertex]) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
    (0..face.len()).map(move |i| ordered(face[i], face[(i + 1) % face.len()]))
}

fn face_adjacency(faces: &[Vec<Vertex>]) -> Result<Graph> {
    let mut owners: HashMap<(Vertex, Vertex), Vec<usize>> = HashMap::new();
    for (i, face) in faces.iter().enumerate() {
        for e in face_edges(face) {
            owners.entry(e).or_default().push(i);
        }
    }
    let mut pairs = BTreeSet::new();
    for list in owners.values() {
        for x in 0..list.len() {
            for y in x + 1..list.len() {
                if list[x] != list[y] {
                    pairs.insert(ordered(list[x], list[y]));
                }
            }
        }
    }
    let pairs: Vec<_> = pairs.into_iter().collect();
    Graph::from_edges(faces.len(), &pairs)
}

/// JSON form: `{"n": int, "edges": [[u,v],...], "faces": [[v,...],...]?, "cycle_order": [v,...]?, "path_order": [v,...]?}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[Vertex; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<Vec<Vertex>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycle_order: Option<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path_order: Option<Vec<Vertex>>,
}

impl From<&Graph> for GraphFile {
    fn from(g: &Graph) -> Self {
        GraphFile {
            n: g.n,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
            faces: g.faces.clone(),
            cycle_order: g.cycle_order.clone(),
            path_order: g.path_order.clone(),
        }
    }
}

impl TryFrom<GraphFile> for Graph {
    type Error = Error;

    fn try_from(file: GraphFile) -> Result<Self> {
        let edges: Vec<_> = file.edges.iter().map(|e| (e[0], e[1])).collect();
        let mut g = Graph::from_edges(file.n, &edges)?;
        if let Some(order) = file.cycle_order {
            g = g.with_cycle_order(order)?;
        }
        if let Some(order) = file.path_order {
            g = g.with_path_order(order)?;
        }
        if let Some(faces) = file.faces {
            g = g.with_faces(faces)?;
        }
        Ok(g)
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphFile::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let file = GraphFile::deserialize(d)?;
        Graph::try_from(file).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_c4() -> Graph {
        let c4 = Graph::cycle(4).unwrap();
        Graph::identify_vertices(&c4, 0, &c4, 0).unwrap()
    }

    #[test]
    fn cycle_constructor() {
        let c3 = Graph::cycle(3).unwrap();
        assert_eq!(c3.edges(), &[(0, 1), (0, 2), (1, 2)]);
        let c4 = Graph::cycle(4).unwrap();
        assert!((0..4).all(|v| c4.degree(v) == 2));
        assert_eq!(Graph::cycle(5).unwrap().girth(), Girth::Finite(5));
        assert!(Graph::cycle(2).is_err());
    }

    #[test]
    fn path_constructor() {
        assert_eq!(Graph::path(1).unwrap().edge_count(), 0);
        assert_eq!(Graph::path(2).unwrap().edge_count(), 1);
        let p5 = Graph::path(5).unwrap();
        assert_eq!(p5.edge_count(), 4);
        assert_eq!(p5.path_order(), Some(&[0, 1, 2, 3, 4][..]));
        assert!(Graph::path(0).is_err());
    }

    #[test]
    fn identify_two_c4() {
        let g = two_c4();
        assert_eq!(g.n(), 7);
        assert_eq!(g.edge_count(), 8);
        assert_eq!(g.degree(0), 4);
        let k2 = Graph::path(2).unwrap();
        let p3 = Graph::identify_vertices(&k2, 1, &k2, 0).unwrap();
        assert_eq!(p3.n(), 3);
        assert_eq!(p3.edges(), &[(0, 1), (1, 2)]);
        assert!(Graph::identify_vertices(&k2, 2, &k2, 0).is_err());
    }

    #[test]
    fn identify_triangle_and_pentagon() {
        let g = Graph::identify_vertices(&Graph::cycle(3).unwrap(), 0, &Graph::cycle(5).unwrap(), 0).unwrap();
        assert_eq!(g.n(), 7);
        assert_eq!(g.girth(), Girth::Finite(3));
        assert_eq!(g.shortest_cycle_above_3(), Some(5));
    }

    #[test]
    fn flower_shapes() {
        let f = Graph::flower(4, 2).unwrap();
        assert_eq!((f.n(), f.edge_count()), (7, 8));
        let c3 = Graph::flower(3, 1).unwrap();
        assert_eq!((c3.n(), c3.edge_count()), (3, 3));
        assert_eq!(c3.girth(), Girth::Finite(3));
        let big = Graph::flower(4, 6).unwrap();
        assert_eq!(big.n(), 6 * 3 + 1);
        assert_eq!(big.block_annotation().unwrap().blocks.len(), 6);
        assert!(Graph::flower(2, 1).is_err());
        assert!(Graph::flower(3, 0).is_err());
    }

    #[test]
    fn girth_values() {
        assert_eq!(two_c4().girth(), Girth::Finite(4));
        assert_eq!(Graph::path(7).unwrap().girth(), Girth::Infinite);
        assert_eq!(Graph::complete(4).unwrap().girth(), Girth::Finite(3));
        assert_eq!(Graph::cycle(3).unwrap().shortest_cycle_above_3(), None);
        assert_eq!(two_c4().shortest_cycle_above_3(), Some(4));
        // K4 is not a cactus; exercises the exhaustive search
        assert_eq!(Graph::complete(4).unwrap().shortest_cycle_above_3(), Some(4));
    }

    #[test]
    fn blocks() {
        let t = two_c4().block_decomposition().unwrap();
        assert_eq!(t.blocks.len(), 2);
        assert_eq!(t.cut_vertices, vec![0]);
        assert!(t.blocks.iter().all(|b| b.kind() == BlockKind::Cycle(4)));
        let p4 = Graph::path(4).unwrap().block_decomposition().unwrap();
        assert_eq!(p4.blocks.len(), 3);
        assert!(p4.blocks.iter().all(|b| b.kind() == BlockKind::Edge));
        assert_eq!(p4.cut_vertices, vec![1, 2]);
        let c6 = Graph::cycle(6).unwrap().block_decomposition().unwrap();
        assert_eq!(c6.blocks.len(), 1);
        assert!(c6.cut_vertices.is_empty());
        let disconnected = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert!(matches!(disconnected.block_decomposition(), Err(Error::Disconnected)));
        assert!(!Graph::complete(4).unwrap().block_decomposition().unwrap().is_cactus());
    }

    #[test]
    fn merged_block_tree_matches_recomputed() {
        let f = Graph::flower(5, 2).unwrap();
        let g = Graph::identify_vertices(&f, 3, &Graph::flower(3, 2).unwrap(), 2).unwrap();
        assert_eq!(g.block_annotation().unwrap(), &g.block_decomposition().unwrap());
    }

    #[test]
    fn cycle_walk_of_block() {
        let t = two_c4().block_decomposition().unwrap();
        let order = t.blocks[0].cycle_from(0).unwrap();
        assert_eq!(order.len(), 4);
        assert_eq!(order[0], 0);
        let g = two_c4();
        for i in 0..4 {
            assert!(g.has_edge(order[i], order[(i + 1) % 4]));
        }
    }

    #[test]
    fn weak_duals() {
        let c5 = Graph::cycle(5).unwrap();
        let d = c5.weak_dual().unwrap();
        assert_eq!((d.n(), d.edge_count()), (1, 0));

        // two pentagons sharing the edge 0-1
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 5), (5, 6), (6, 7), (7, 0)];
        let g = Graph::from_edges(8, &edges)
            .unwrap()
            .with_faces(vec![vec![0, 1, 2, 3, 4], vec![0, 7, 6, 5, 1]])
            .unwrap();
        let d = g.weak_dual().unwrap();
        assert_eq!((d.n(), d.edge_count()), (2, 1));

        // a path of three faces: F0 - F1 - F2
        let edges = [
            (0, 1), (1, 2), (2, 3), (3, 0),
            (1, 4), (4, 5), (5, 2),
            (4, 6), (6, 7), (7, 5),
        ];
        let g = Graph::from_edges(8, &edges)
            .unwrap()
            .with_faces(vec![vec![0, 1, 2, 3], vec![1, 4, 5, 2], vec![4, 6, 7, 5]])
            .unwrap();
        let d = g.weak_dual().unwrap();
        assert_eq!(d.n(), 3);
        assert_eq!(d.edges(), &[(0, 1), (1, 2)]);

        assert!(matches!(Graph::path(3).unwrap().weak_dual(), Err(Error::MissingAnnotation(_))));
        // two faces meeting only at a vertex: the dual is a forest, not a tree
        assert!(two_c4_with_faces().weak_dual().is_err());
    }

    fn two_c4_with_faces() -> Graph {
        let c4 = Graph::cycle(4).unwrap();
        Graph::identify_vertices(&c4, 0, &c4, 0).unwrap()
    }

    #[test]
    fn invalid_faces_rejected() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(c4.clone().with_faces(vec![vec![0, 1, 3]]).is_err());
        assert!(c4.clone().with_faces(vec![vec![0, 1, 2, 3], vec![0, 1, 2, 3], vec![0, 1, 2, 3]]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = Graph::cycle(5).unwrap();
        let text = serde_json::to_string(&g).unwrap();
        assert!(text.starts_with("{\"n\":5,\"edges\":[[0,1]"));
        let back: Graph = serde_json::from_str(&text).unwrap();
        assert_eq!(back.cycle_order(), g.cycle_order());
        assert_eq!(back.edges(), g.edges());
        let bad = r#"{"n": 3, "edges": [[0,1],[1,2]], "cycle_order": [0,1,2]}"#;
        assert!(serde_json::from_str::<Graph>(bad).is_err());
    }
}
