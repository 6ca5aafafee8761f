use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Block, BlockKind, Vertex};
use crate::lists::ListAssignment;

use super::cactus::Partial;
use super::{single_precolored, Colored, Strategy};

fn shares_edge(face: &[Vertex], u: Vertex, w: Vertex) -> bool {
    let m = face.len();
    (0..m).any(|i| {
        let (x, y) = (face[i], face[(i + 1) % m]);
        (x, y) == (u, w) || (x, y) == (w, u)
    })
}

/// The face read from `u` to `w` the long way round, given that `uw` is one of its edges.
fn walk_between(face: &[Vertex], u: Vertex, w: Vertex) -> Vec<Vertex> {
    let m = face.len();
    let pu = face.iter().position(|&x| x == u).expect("u lies on the face");
    let step = if face[(pu + 1) % m] == w { m - 1 } else { 1 };
    (0..m).map(|i| face[(pu + i * step) % m]).collect()
}

fn color_faces(p: &mut Partial<'_>, block: &Block, entry: Vertex, faces: &[Vec<Vertex>]) -> Result<()> {
    let inside: Vec<&Vec<Vertex>> = faces
        .iter()
        .filter(|f| f.iter().all(|&v| block.contains(v)))
        .collect();
    let root = inside
        .iter()
        .position(|f| f.contains(&entry))
        .ok_or(Error::MissingAnnotation("a face through every vertex of a 2-connected block"))?;
    let start = inside[root].iter().position(|&v| v == entry).expect("entry is on the root face");
    let m = inside[root].len();
    let walk: Vec<Vertex> = (0..m).map(|i| inside[root][(start + i) % m]).collect();
    p.color_cycle(&walk)?;

    // breadth-first over the weak dual; each face hangs off its parent by one edge
    let mut seen = vec![false; inside.len()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(parent) = queue.pop_front() {
        let pf = inside[parent];
        for i in 0..pf.len() {
            let (u, w) = (pf[i], pf[(i + 1) % pf.len()]);
            for (j, face) in inside.iter().enumerate() {
                if seen[j] || !shares_edge(face, u, w) {
                    continue;
                }
                seen[j] = true;
                p.color_path(&walk_between(face, u, w))?;
                queue.push_back(j);
            }
        }
    }
    if let Some(&v) = block.vertices.iter().find(|&&v| !p.is_colored(v)) {
        return Err(Error::InvalidGraph(format!("vertex {v} is on no face reachable from vertex {entry}")));
    }
    Ok(())
}

/// Colors an outerplanar graph with an inner-face annotation: in each
/// 2-connected block the face through the entry vertex is colored as a
/// cycle, then every other face, met in breadth-first order, is a path
/// between the two ends of the edge it shares with its parent.
pub fn outerplanar_color(l: &ListAssignment, b: usize) -> Result<Colored> {
    let faces = l.graph().faces().ok_or(Error::MissingAnnotation("face list"))?.to_vec();
    let r = single_precolored(l, b)?;
    let mut partial = Partial::new(l, b, r, Strategy::Outerplanar);
    partial.walk_blocks(r, |p, block, entry| match block.kind() {
        BlockKind::Edge => {
            let (u, w) = block.edges[0];
            p.color_edge(entry, if u == entry { w } else { u })
        }
        _ => color_faces(p, block, entry, &faces),
    })?;
    partial.finish()
}
