//! Uncolorable list assignments that sit one above each proven threshold.
//!
//! Colors are allocated from 0 upward in the order the blocks appear when the
//! lists are read row by row, left to right. Blocks shared with an earlier
//! list always take that list's lowest colors.

use std::fmt;
use std::str::FromStr;

use crate::certificate::{Certificate, Claim};
use crate::combin::{binomial, subsets};
use crate::error::{Error, Result};
use crate::formulas::{c_threshold, fsep_cycle};
use crate::graph::Graph;
use crate::lists::{Color, ListAssignment};

/// Largest number of petals a flower may have.
pub const MAX_PETALS: u64 = 5000;

struct Palette {
    next: Color,
}

impl Palette {
    fn starting_at(next: Color) -> Self {
        Palette { next }
    }

    fn fresh(&mut self, k: usize) -> Vec<Color> {
        let out = (self.next..self.next + k as Color).collect();
        self.next += k as Color;
        out
    }
}

fn size(total: usize, minus: usize, what: &str) -> Result<usize> {
    total
        .checked_sub(minus)
        .ok_or_else(|| Error::Regime(format!("block {what} would have negative size")))
}

fn take(block: &[Color], k: usize, what: &str) -> Result<Vec<Color>> {
    if k > block.len() {
        return Err(Error::Regime(format!("block {what} needs {k} colors out of {}", block.len())));
    }
    Ok(block[..k].to_vec())
}

fn join(parts: &[&[Color]]) -> Vec<Color> {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

fn build(graph: Graph, lists: Vec<Vec<Color>>, precolored: Vec<usize>) -> Result<ListAssignment> {
    ListAssignment::from_vecs(graph, &lists)?.with_precolored(precolored)
}

fn check_ab(a: usize, b: usize) -> Result<()> {
    if b == 0 {
        return Err(Error::InvalidParameter("b must be at least 1".into()));
    }
    if b > a {
        return Err(Error::InvalidParameter(format!("b = {b} exceeds a = {a}")));
    }
    Ok(())
}

/// Cycle with `L(x_i) = C ∪ D_i ∪ D_{i+1} ∪ F_i`, `|C| = 1`, `|D_i| = k`,
/// `|F_i| = b-k-1`: an `(b+k)`-list assignment with separation `k+1` and only
/// `⌊n/2⌋ + n(b-1)` usable color slots.
pub fn gen_sep_small_ratio(n: usize, b: usize, k: usize) -> Result<Certificate> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle length {n} is below 3")));
    }
    if b == 0 || k >= b {
        return Err(Error::Regime(format!("need 0 <= k < b, got k = {k}, b = {b}")));
    }
    let mut pal = Palette::starting_at(0);
    let c_block = pal.fresh(1);
    let d: Vec<Vec<Color>> = (0..n).map(|_| pal.fresh(k)).collect();
    let f: Vec<Vec<Color>> = (0..n).map(|_| pal.fresh(b - k - 1)).collect();
    let lists = (0..n)
        .map(|i| join(&[&c_block, &d[i], &d[(i + 1) % n], &f[i]]))
        .collect();
    Ok(Certificate {
        lists: build(Graph::cycle(n)?, lists, vec![])?,
        a: b + k,
        b,
        c: k + 1,
        claim: Claim::Uncolorable,
        family: "small-ratio".into(),
        sigma: Some(n / 2 + n * (b - 1)),
    })
}

/// Odd cycle `C_{2p+1}` with `L(x_i) = C ∪ D_i ∪ D_{i+1}`,
/// `|C| = (2p+1)α + 2`, `|D_i| = b - pα - 1`.
pub fn gen_sep_odd_cycle(p: usize, b: usize, alpha: usize) -> Result<Certificate> {
    if p == 0 || b == 0 {
        return Err(Error::InvalidParameter("need p >= 1 and b >= 1".into()));
    }
    if p * alpha > b - 1 {
        return Err(Error::Regime(format!("need p*alpha <= b-1, got p = {p}, alpha = {alpha}, b = {b}")));
    }
    let n = 2 * p + 1;
    let mut pal = Palette::starting_at(0);
    let c_block = pal.fresh(n * alpha + 2);
    let d: Vec<Vec<Color>> = (0..n).map(|_| pal.fresh(b - p * alpha - 1)).collect();
    let lists = (0..n).map(|i| join(&[&c_block, &d[i], &d[(i + 1) % n]])).collect();
    Ok(Certificate {
        lists: build(Graph::cycle(n)?, lists, vec![])?,
        a: 2 * b + alpha,
        b,
        c: b + (p + 1) * alpha + 1,
        claim: Claim::Uncolorable,
        family: "odd-cycle".into(),
        sigma: Some(b * n - 1),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum PathVariant {
    Case1,
    Case2a,
    Case2b,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Endpoints {
    Equal,
    Disjoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum C3Variant {
    Case1,
    Case2High,
    Case2Low,
}

macro_rules! labelled {
    ($ty:ty { $($variant:ident => $label:literal),* $(,)? }) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(match self { $(Self::$variant => $label),* })
            }
        }

        impl FromStr for $ty {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($label => Ok(Self::$variant),)*
                    _ => Err(Error::InvalidParameter(format!("unknown variant '{s}'"))),
                }
            }
        }
    };
}

labelled!(PathVariant { Case1 => "case1", Case2a => "case2a", Case2b => "case2b" });
labelled!(Endpoints { Equal => "equal", Disjoint => "disjoint" });
labelled!(C3Variant { Case1 => "case1", Case2High => "case2_high", Case2Low => "case2_low" });

impl PathVariant {
    /// The layout that applies to `(n, a, b)` and its separation `c = ⌊c(n,a,b)⌋ + 1`.
    pub fn for_params(n: usize, a: usize, b: usize) -> Result<(PathVariant, usize)> {
        check_ab(a, b)?;
        if n < 4 {
            return Err(Error::Regime(format!("the path families need n >= 4, got {n}")));
        }
        let t = c_threshold(n, a, b)?;
        let c = t.floor + 1;
        let variant = match t.regime {
            "cycle-low" => PathVariant::Case1,
            "cycle-middle" if a >= 2 * c => PathVariant::Case2a,
            "cycle-middle" if a + 1 == 2 * c => PathVariant::Case2b,
            "cycle-middle" => return Err(Error::Invariant(format!("a = {a} is below 2c - 1 = {}", 2 * c - 1))),
            _ => return Err(Error::Regime(format!("a = {a} >= 2(n+1)b/n: every separation is colorable"))),
        };
        Ok((variant, c))
    }

    /// Amplitude sum of the path layout on `P_{n+1}`.
    pub fn sigma(self, n: usize, a: usize, b: usize, c: usize) -> usize {
        match self {
            PathVariant::Case1 => (n - 1) * (a - c) + 2 * b - c,
            PathVariant::Case2a => (n - 1) * a - (n - 2) * c,
            PathVariant::Case2b if n % 2 == 1 => n * c - (n + 1) / 2,
            PathVariant::Case2b => n * c - n / 2,
        }
    }
}

impl C3Variant {
    pub fn for_params(a: usize, b: usize) -> Result<(C3Variant, usize)> {
        check_ab(a, b)?;
        if 4 * a < 7 * b {
            Ok((C3Variant::Case1, 2 * (a - b) / 3 + 1))
        } else if a < 3 * b {
            let c = 2 * a + 1 - 3 * b;
            Ok((if a >= 2 * b { C3Variant::Case2High } else { C3Variant::Case2Low }, c))
        } else {
            Err(Error::Regime(format!("a = {a} >= 3b: the triangle is free-choosable at every separation")))
        }
    }
}

/// Lists `L_1..L_{n+1}` of the path layout, with `L_1 = bset`.
fn path_rows(
    n: usize,
    a: usize,
    b: usize,
    c: usize,
    variant: PathVariant,
    endpoints: Endpoints,
    bset: Vec<Color>,
    pal: &mut Palette,
) -> Result<Vec<Vec<Color>>> {
    let mut rows = vec![bset.clone()];
    let last_set = |pal: &mut Palette| match endpoints {
        Endpoints::Equal => bset.clone(),
        Endpoints::Disjoint => pal.fresh(b),
    };
    match variant {
        PathVariant::Case1 => {
            let mut prev = pal.fresh(size(a, c, "a-c")?);
            rows.push(join(&[&take(&bset, c, "c of L_1")?, &prev]));
            for _ in 3..n {
                let fresh = pal.fresh(size(a, c, "a-c")?);
                rows.push(join(&[&take(&prev, c, "c")?, &fresh]));
                prev = fresh;
            }
            let end = last_set(pal);
            let shared = take(&end, c, "c of L_{n+1}")?;
            let tail = pal.fresh(size(a, 2 * c, "a-2c")?);
            rows.push(join(&[&shared, &take(&prev, c, "c")?, &tail]));
            rows.push(end);
        }
        PathVariant::Case2a => {
            let mut prev = pal.fresh(size(a, b, "a-b")?);
            rows.push(join(&[&bset, &prev]));
            for _ in 3..n {
                let fresh = pal.fresh(size(a, c, "a-c")?);
                rows.push(join(&[&take(&prev, c, "c")?, &fresh]));
                prev = fresh;
            }
            let end = last_set(pal);
            let tail = pal.fresh(size(a, c + b, "a-c-b")?);
            rows.push(join(&[&end, &take(&prev, c, "c")?, &tail]));
            rows.push(end);
        }
        PathVariant::Case2b => {
            if a + 1 != 2 * c {
                return Err(Error::Regime(format!("case2b needs a = 2c - 1, got a = {a}, c = {c}")));
            }
            let mut prev = pal.fresh(size(2 * c, b + 1, "2c-b-1")?);
            rows.push(join(&[&bset, &prev]));
            for j in 3..n {
                // odd positions share c and add c-1, even positions share c-1 and add c
                let (shared, fresh) = if j % 2 == 1 { (c, c - 1) } else { (c - 1, c) };
                let fresh = pal.fresh(fresh);
                rows.push(join(&[&take(&prev, shared, "shared")?, &fresh]));
                prev = fresh;
            }
            let end = last_set(pal);
            let tail = pal.fresh(size(a, b + prev.len(), "tail")?);
            rows.push(join(&[&end, &prev, &tail]));
            rows.push(end);
        }
    }
    Ok(rows)
}

/// A `c`-separating assignment of `P_{n+1}` with both ends fixed to `b`
/// colors and no coloring, at `c = ⌊c(n,a,b)⌋ + 1`.
pub fn gen_path_family(n: usize, a: usize, b: usize, variant: PathVariant, endpoints: Endpoints) -> Result<Certificate> {
    let (expected, c) = PathVariant::for_params(n, a, b)?;
    if expected != variant {
        return Err(Error::Regime(format!("(n, a, b) = ({n}, {a}, {b}) calls for {expected}, not {variant}")));
    }
    let mut pal = Palette::starting_at(0);
    let bset = pal.fresh(b);
    let rows = path_rows(n, a, b, c, variant, endpoints, bset, &mut pal)?;
    Ok(Certificate {
        lists: build(Graph::path(n + 1)?, rows, vec![0, n])?,
        a,
        b,
        c,
        claim: Claim::Uncolorable,
        family: format!("path-{variant}-{endpoints}"),
        sigma: Some(variant.sigma(n, a, b, c)),
    })
}

/// The path layout with equal ends glued back into `C_n`, precolored at `x_1`.
pub fn gen_path_cycle(n: usize, a: usize, b: usize, variant: PathVariant) -> Result<Certificate> {
    let path = gen_path_family(n, a, b, variant, Endpoints::Equal)?;
    let (_, lists, _) = path.lists.into_parts();
    let rows: Vec<Vec<Color>> = lists[..n].iter().map(|l| l.to_vec()).collect();
    Ok(Certificate {
        lists: build(Graph::cycle(n)?, rows, vec![0])?,
        a,
        b,
        c: path.c,
        claim: Claim::Uncolorable,
        family: format!("path-cycle-{variant}"),
        sigma: None,
    })
}

fn c3_rows(a: usize, b: usize, c: usize, variant: C3Variant, bset: Vec<Color>, pal: &mut Palette) -> Result<(Vec<Vec<Color>>, usize)> {
    let rows = match variant {
        C3Variant::Case1 => {
            // the drawn layout shares b-c colors between L_1 and L_3, which is
            // more than c when 2c < b; those overlaps are clipped to c
            let e2 = pal.fresh(size(a, c, "a-c")?);
            let l2 = join(&[&take(&bset, c, "c of L_1")?, &e2]);
            let rest = &bset[c.min(b)..];
            let x13 = rest.len().min(c);
            let x23 = c.min(e2.len());
            let tail = pal.fresh(size(a, x13 + x23, "L_3 remainder")?);
            let l3 = join(&[&rest[..x13], &e2[..x23], &tail]);
            let sigma = b + e2.len() + tail.len();
            return Ok((vec![bset, l2, l3], sigma));
        }
        C3Variant::Case2High => {
            let e2 = pal.fresh(size(a, b, "a-b")?);
            let l2 = join(&[&bset, &e2]);
            let shared = take(&e2, size(c, b, "c-b")?, "c-b of L_2")?;
            let tail = pal.fresh(size(a, c, "a-c")?);
            let l3 = join(&[&bset, &shared, &tail]);
            vec![bset, l2, l3]
        }
        C3Variant::Case2Low => {
            let e2 = pal.fresh(size(a, c, "a-c")?);
            let l2 = join(&[&take(&bset, c, "c of L_1")?, &e2]);
            let rest = bset[c.min(b)..].to_vec();
            let shared = take(&e2, c, "c of L_2")?;
            let tail = pal.fresh(size(a, b, "a-b")?);
            let l3 = join(&[&rest, &shared, &tail]);
            vec![bset, l2, l3]
        }
    };
    Ok((rows, 2 * a - c))
}

/// Triangle with `|L_1| = b` and no coloring, at `c = fsep(C_3,a,b) + 1`.
pub fn gen_c3_family(a: usize, b: usize, variant: C3Variant) -> Result<Certificate> {
    let (expected, c) = C3Variant::for_params(a, b)?;
    if expected != variant {
        return Err(Error::Regime(format!("(a, b) = ({a}, {b}) calls for {expected}, not {variant}")));
    }
    let mut pal = Palette::starting_at(0);
    let bset = pal.fresh(b);
    let (rows, sigma) = c3_rows(a, b, c, variant, bset, &mut pal)?;
    Ok(Certificate {
        lists: build(Graph::cycle(3)?, rows, vec![0])?,
        a,
        b,
        c,
        claim: Claim::Uncolorable,
        family: format!("c3-{variant}"),
        sigma: Some(sigma),
    })
}

/// `binomial(a, b)` cycles `C_p` on a hub with list `{0..a-1}`; petal `i`
/// carries the free-separation counterexample precolored with the `i`-th
/// `b`-subset of the hub list. Colors off the hub are reused by every petal.
pub fn gen_flower(p: usize, a: usize, b: usize) -> Result<Certificate> {
    check_ab(a, b)?;
    let f = fsep_cycle(p, a, b)?;
    if f.value >= a {
        return Err(Error::Regime(format!("fsep(C_{p}, {a}, {b}) = a: no counterexample exists")));
    }
    let c = f.value + 1;
    let k = binomial(a as u64, b as u64);
    if k > MAX_PETALS {
        return Err(Error::Unsupported(format!("{k} petals exceed the limit of {MAX_PETALS}")));
    }
    let g = Graph::flower(p, k as usize)?;
    let hub: Vec<Color> = (0..a as Color).collect();
    let mut lists = vec![Vec::new(); g.n()];
    lists[0] = hub.clone();
    for (i, bset) in subsets(&hub, b).enumerate() {
        let mut pal = Palette::starting_at(a as Color);
        let rows = if p == 3 {
            let (variant, _) = C3Variant::for_params(a, b)?;
            c3_rows(a, b, c, variant, bset, &mut pal)?.0
        } else {
            let (variant, _) = PathVariant::for_params(p, a, b)?;
            let mut rows = path_rows(p, a, b, c, variant, Endpoints::Equal, bset, &mut pal)?;
            rows.truncate(p);
            rows
        };
        for (j, row) in rows.into_iter().enumerate().skip(1) {
            lists[1 + i * (p - 1) + (j - 1)] = row;
        }
    }
    Ok(Certificate {
        lists: build(g, lists, vec![])?,
        a,
        b,
        c,
        claim: Claim::Uncolorable,
        family: "flower".into(),
        sigma: None,
    })
}

/// Two 4-cycles sharing a vertex with a 1-separating 2-list assignment and no 1-coloring.
pub fn fig1_fixture() -> Certificate {
    let edges = [(0, 1), (1, 3), (3, 2), (2, 0), (6, 4), (4, 3), (3, 5), (5, 6)];
    let lists = vec![vec![3, 4], vec![1, 3], vec![1, 4], vec![1, 2], vec![2, 3], vec![2, 4], vec![3, 4]];
    let g = Graph::from_edges(7, &edges).expect("fixture graph is simple");
    Certificate {
        lists: build(g, lists, vec![]).expect("fixture lists match the graph"),
        a: 2,
        b: 1,
        c: 1,
        claim: Claim::Uncolorable,
        family: "fig1".into(),
        sigma: None,
    }
}
