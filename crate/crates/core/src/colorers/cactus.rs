use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Block, BlockKind, Graph, Vertex};
use crate::lists::{ColorSet, ListAssignment};

use super::cycle::cycle_color_precolored;
use super::path::path_color_precolored;
use super::{finish, single_precolored, Colored, ColoringPlan, Strategy};

/// Partial coloring shared by the block-by-block colorers.
pub(super) struct Partial<'a> {
    pub l: &'a ListAssignment,
    pub b: usize,
    pub phi: Vec<Option<ColorSet>>,
    pub plan: ColoringPlan,
}

impl<'a> Partial<'a> {
    pub fn new(l: &'a ListAssignment, b: usize, r: Vertex, strategy: Strategy) -> Self {
        let mut phi = vec![None; l.graph().n()];
        phi[r] = Some(l.list(r).clone());
        let mut plan = ColoringPlan::new(strategy);
        plan.record(r, l.list(r), "precolored");
        Partial { l, b, phi, plan }
    }

    /// The list a piece sees: the chosen set for colored vertices, `L(v)` otherwise.
    fn piece_list(&self, v: Vertex) -> ColorSet {
        self.phi[v].clone().unwrap_or_else(|| self.l.list(v).clone())
    }

    pub fn color_edge(&mut self, u: Vertex, w: Vertex) -> Result<()> {
        let fixed = self.phi[u].clone().expect("edge is entered from a colored end");
        let free = self.l.list(w).difference(&fixed);
        let set = free.smallest(self.b).ok_or_else(|| {
            Error::Precondition(format!("|L({w}) \\ phi({u})| = {} < b = {}", free.len(), self.b))
        })?;
        self.plan.record(w, &set, format!("bridge from {u}"));
        self.phi[w] = Some(set);
        Ok(())
    }

    /// Colors the cycle `walk` (in cyclic order) whose first vertex is colored.
    pub fn color_cycle(&mut self, walk: &[Vertex]) -> Result<()> {
        let lists: Vec<ColorSet> = walk.iter().map(|&v| self.piece_list(v)).collect();
        let piece = ListAssignment::new(Graph::cycle(walk.len())?, lists)?.with_precolored(vec![0])?;
        let out = cycle_color_precolored(&piece, self.b)?;
        self.merge(out, walk, &[0]);
        Ok(())
    }

    /// Colors the path `walk` whose two ends are colored.
    pub fn color_path(&mut self, walk: &[Vertex]) -> Result<()> {
        let lists: Vec<ColorSet> = walk.iter().map(|&v| self.piece_list(v)).collect();
        let piece = ListAssignment::new(Graph::path(walk.len())?, lists)?;
        let out = path_color_precolored(&piece, self.b)?;
        self.merge(out, walk, &[0, walk.len() - 1]);
        Ok(())
    }

    fn merge(&mut self, out: Colored, walk: &[Vertex], fixed: &[Vertex]) {
        for (i, &v) in walk.iter().enumerate() {
            if !fixed.contains(&i) {
                self.phi[v] = Some(out.coloring.sets[i].clone());
            }
        }
        self.plan.absorb(out.plan, walk, fixed);
    }

    pub fn is_colored(&self, v: Vertex) -> bool {
        self.phi[v].is_some()
    }

    /// Visits blocks outward from the precolored vertex; each block is
    /// entered through exactly one colored vertex.
    pub fn walk_blocks<F>(&mut self, r: Vertex, mut color_block: F) -> Result<()>
    where
        F: FnMut(&mut Self, &Block, Vertex) -> Result<()>,
    {
        let tree = self.l.graph().block_decomposition()?;
        let mut done = vec![false; tree.blocks.len()];
        let mut queue = VecDeque::from([r]);
        while let Some(v) = queue.pop_front() {
            let entered: Vec<usize> = tree.blocks_containing(v).map(|(i, _)| i).filter(|&i| !done[i]).collect();
            for i in entered {
                done[i] = true;
                let block = &tree.blocks[i];
                color_block(self, block, v)?;
                queue.extend(block.vertices.iter().copied().filter(|&w| w != v));
            }
        }
        Ok(())
    }

    pub fn finish(self) -> Result<Colored> {
        let sets: Option<Vec<ColorSet>> = self.phi.into_iter().collect();
        let sets = sets.ok_or(Error::Disconnected)?;
        finish(self.l, sets, self.plan, self.b)
    }
}

/// Free coloring of a cactus: blocks are colored outward from the
/// precolored vertex, cycles through the cut at their entry vertex and
/// bridges greedily.
pub fn cactus_free_color(l: &ListAssignment, b: usize) -> Result<Colored> {
    let r = single_precolored(l, b)?;
    l.graph().block_decomposition()?.validate_cactus()?;
    let mut partial = Partial::new(l, b, r, Strategy::Cactus);
    partial.walk_blocks(r, |p, block, entry| match block.kind() {
        BlockKind::Edge => {
            let (u, w) = block.edges[0];
            p.color_edge(entry, if u == entry { w } else { u })
        }
        BlockKind::Cycle(_) => {
            let walk = block.cycle_from(entry).expect("entry lies on its cycle block");
            p.color_cycle(&walk)
        }
        BlockKind::Other => Err(Error::NotACactus(format!("block on {:?} is neither an edge nor a cycle", block.vertices))),
    })?;
    partial.finish()
}
