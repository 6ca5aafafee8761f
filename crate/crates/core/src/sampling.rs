//! Random list assignments with bounded separation, for property tests and
//! the randomized halves of the acceptance checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::lists::{Color, ColorSet, ListAssignment};

/// Draws lists of the given sizes, vertex by vertex, so that adjacent lists
/// share at most `c` colors. Colors come from `0..palette`, falling back to
/// fresh colors above it when the palette runs dry. Each list first copies
/// up to `c` colors from every earlier neighbor (exactly `c` half the time)
/// so that the separation bound is usually attained.
pub fn sample_lists<R: Rng>(g: &Graph, sizes: &[usize], c: usize, palette: usize, rng: &mut R) -> Result<ListAssignment> {
    let n = g.n();
    if sizes.len() != n {
        return Err(Error::InvalidParameter(format!("{} sizes for {n} vertices", sizes.len())));
    }
    let mut lists: Vec<Option<ColorSet>> = vec![None; n];
    let mut fresh = palette as Color;
    let order = bfs_order(g, rng);
    for v in order {
        let mut list = ColorSet::new();
        let fits = |list: &ColorSet, color: Color, lists: &[Option<ColorSet>]| {
            g.neighbors(v).iter().all(|&u| match &lists[u] {
                Some(lu) => !lu.contains(color) || list.intersection_len(lu) < c,
                None => true,
            })
        };
        let mut earlier: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&u| lists[u].is_some()).collect();
        earlier.shuffle(rng);
        for u in earlier {
            let want = if rng.gen_bool(0.5) { c } else { rng.gen_range(0..=c) };
            let mut pool = lists[u].as_ref().map(ColorSet::to_vec).unwrap_or_default();
            pool.shuffle(rng);
            // colors private to u first: chains of private overlaps are what defeat colorings
            let shared_elsewhere = |color: Color| {
                g.neighbors(u).iter().any(|&w| w != v && lists[w].as_ref().is_some_and(|lw| lw.contains(color)))
            };
            pool.sort_by_key(|&color| shared_elsewhere(color));
            let mut taken = 0;
            for color in pool {
                if taken >= want || list.len() >= sizes[v] {
                    break;
                }
                if !list.contains(color) && fits(&list, color, &lists) {
                    list.insert(color);
                    taken += 1;
                }
            }
        }
        let mut pool: Vec<Color> = (0..palette as Color).collect();
        pool.shuffle(rng);
        for color in pool {
            if list.len() >= sizes[v] {
                break;
            }
            if !list.contains(color) && fits(&list, color, &lists) {
                list.insert(color);
            }
        }
        while list.len() < sizes[v] {
            list.insert(fresh);
            fresh += 1;
        }
        lists[v] = Some(list);
    }
    ListAssignment::new(g.clone(), lists.into_iter().map(|l| l.expect("every vertex drawn")).collect())
}

/// Breadth-first from a random vertex with shuffled neighbors, so that each
/// list after the first has an earlier neighbor to copy from.
fn bfs_order<R: Rng>(g: &Graph, rng: &mut R) -> Vec<Vertex> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut starts: Vec<Vertex> = (0..n).collect();
    starts.shuffle(rng);
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let mut next: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&u| !seen[u]).collect();
            next.shuffle(rng);
            for u in next {
                seen[u] = true;
                queue.push_back(u);
            }
        }
    }
    order
}

/// `a`-lists everywhere except `b`-lists on the `precolored` vertices.
pub fn sample_precolored<R: Rng>(
    g: &Graph,
    a: usize,
    b: usize,
    c: usize,
    precolored: &[Vertex],
    palette: usize,
    rng: &mut R,
) -> Result<ListAssignment> {
    let sizes: Vec<usize> = (0..g.n()).map(|v| if precolored.contains(&v) { b } else { a }).collect();
    sample_lists(g, &sizes, c, palette, rng)?.with_precolored(precolored.to_vec())
}

/// A small shared palette: recurring colors off the copied blocks make
/// uncolorable draws far more frequent one step above a threshold.
pub fn default_palette(a: usize) -> usize {
    a.div_ceil(2)
}
