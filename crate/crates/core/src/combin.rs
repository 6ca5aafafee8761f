//! Small combinatorial helpers shared by the solver and the generators.

/// `n choose k`, saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// `k`-subsets of `0..n` as increasing index vectors, in lexicographic order.
#[derive(Clone, Debug)]
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            current: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

/// Subsets of size `k` drawn from `items` (kept in the given order), lexicographically.
pub fn subsets<T: Copy>(items: &[T], k: usize) -> impl Iterator<Item = Vec<T>> + '_ {
    Combinations::new(items.len(), k).map(move |idx| idx.iter().map(|&i| items[i]).collect())
}

/// Vectors `x` with `0 <= x[i] <= caps[i]` and `sum x = total`, lexicographically increasing.
pub fn bounded_compositions(total: usize, caps: &[usize]) -> Vec<Vec<usize>> {
    fn rec(i: usize, left: usize, caps: &[usize], suffix: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == caps.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let lo = left.saturating_sub(suffix[i + 1]);
        let hi = caps[i].min(left);
        for x in lo..=hi {
            cur.push(x);
            rec(i + 1, left - x, caps, suffix, cur, out);
            cur.pop();
        }
    }
    let mut suffix = vec![0; caps.len() + 1];
    for i in (0..caps.len()).rev() {
        suffix[i] = suffix[i + 1] + caps[i];
    }
    let mut out = Vec::new();
    if suffix[0] >= total {
        rec(0, total, caps, &suffix, &mut Vec::new(), &mut out);
    }
    out
}
