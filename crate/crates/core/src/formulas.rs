//! Closed forms for `sep` and `fsep` of cycles, cactuses and outerplanar
//! graphs. Every branch is selected with exact rational comparisons.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Girth, Graph};

pub type Rational = Ratio<i64>;

/// A formula value together with the branch that produced it. `exact` is
/// false for one side of a bound pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaResult {
    pub value: usize,
    pub regime: String,
    pub exact: bool,
}

impl FormulaResult {
    fn exact(value: usize, regime: &str) -> Self {
        FormulaResult {
            value,
            regime: regime.to_string(),
            exact: true,
        }
    }
}

/// `c(n,a,b)` as an exact rational with its floor and branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Threshold {
    pub value: Rational,
    pub floor: usize,
    pub regime: &'static str,
}

fn check(a: usize, b: usize) -> Result<(i64, i64)> {
    if b == 0 {
        return Err(Error::InvalidParameter("b must be at least 1".into()));
    }
    if b > a {
        return Err(Error::InvalidParameter(format!("b = {b} exceeds a = {a}")));
    }
    Ok((a as i64, b as i64))
}

fn check_n(n: usize, min: usize) -> Result<i64> {
    if n < min {
        return Err(Error::InvalidParameter(format!("cycle length {n} is below {min}")));
    }
    Ok(n as i64)
}

fn q(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

fn floor_nonneg(x: Rational) -> usize {
    x.floor().to_integer().max(0) as usize
}

/// `sep(C_n,a,b)`.
pub fn sep_cycle(n: usize, a: usize, b: usize) -> Result<FormulaResult> {
    let n = check_n(n, 3)?;
    let (a, b) = check(a, b)?;
    let r = if n % 2 == 0 {
        if a < 2 * b {
            FormulaResult::exact((a - b) as usize, "even-low")
        } else {
            FormulaResult::exact(a as usize, "even-high")
        }
    } else {
        let p = (n - 1) / 2;
        if a < 2 * b {
            FormulaResult::exact((a - b) as usize, "odd-low")
        } else if q(a, 1) <= q(2 * b, 1) + q(b, p) {
            FormulaResult::exact((b + (p + 1) * (a - 2 * b)) as usize, "odd-middle")
        } else {
            FormulaResult::exact(a as usize, "odd-high")
        }
    };
    Ok(r)
}

/// The piecewise `c(n,a,b)`.
pub fn c_threshold(n: usize, a: usize, b: usize) -> Result<Threshold> {
    let n = check_n(n, 3)?;
    let (a, b) = check(a, b)?;
    let ar = q(a, 1);
    let (value, regime) = if ar < q((2 * n - 1) * b, n - 1) {
        (q((n - 1) * (a - b), n), "cycle-low")
    } else if ar < q(2 * (n + 1) * b, n) {
        (q((n - 1) * (a - b) - 2 * b, n - 2), "cycle-middle")
    } else {
        (ar, "cycle-high")
    };
    Ok(Threshold {
        floor: floor_nonneg(value),
        value,
        regime,
    })
}

/// `fsep(C_n,a,b)`: the floor of `c(n,a,b)` for `n >= 4`, and the triangle formula for `n = 3`.
pub fn fsep_cycle(n: usize, a: usize, b: usize) -> Result<FormulaResult> {
    check_n(n, 3)?;
    let (ai, bi) = check(a, b)?;
    if n >= 4 {
        let t = c_threshold(n, a, b)?;
        return Ok(FormulaResult::exact(t.floor, t.regime));
    }
    let ar = q(ai, 1);
    let r = if ar < q(7 * bi, 4) {
        FormulaResult::exact(floor_nonneg(q(2 * (ai - bi), 3)), "c3-low")
    } else if ai < 3 * bi {
        FormulaResult::exact((2 * ai - 3 * bi) as usize, "c3-middle")
    } else {
        FormulaResult::exact(a, "c3-high")
    };
    Ok(r)
}

/// `min(fsep(C_3,a,b), fsep(C_n,a,b))` evaluated through its own piecewise
/// table rather than as a minimum. The labels say which side attains it.
pub fn fsep_min_with_triangle(n: usize, a: usize, b: usize) -> Result<FormulaResult> {
    let n = check_n(n, 4)?;
    let (a, b) = check(a, b)?;
    let ar = q(a, 1);
    let r = if ar < q(7 * b, 4) {
        FormulaResult::exact(floor_nonneg(q(2 * (a - b), 3)), "triangle-low")
    } else if ar <= q((2 * n + 1) * b, n + 1) {
        FormulaResult::exact((2 * a - 3 * b) as usize, "triangle-middle")
    } else if ar < q((2 * n - 1) * b, n - 1) {
        FormulaResult::exact(floor_nonneg(q((n - 1) * (a - b), n)), "cycle-low")
    } else if ar < q((2 * n + 2) * b, n) {
        FormulaResult::exact(floor_nonneg(q((n - 1) * (a - b) - 2 * b, n - 2)), "cycle-middle")
    } else if a < 3 * b {
        FormulaResult::exact((2 * a - 3 * b) as usize, "triangle-upper")
    } else {
        FormulaResult::exact(a as usize, "top")
    };
    Ok(r)
}

/// `fsep(C_n,a,b) <= fsep(C_{n+1},a,b)`.
pub fn fsep_monotone_check(n: usize, a: usize, b: usize) -> Result<bool> {
    check_n(n, 4)?;
    Ok(fsep_cycle(n, a, b)?.value <= fsep_cycle(n + 1, a, b)?.value)
}

/// `fsep` of a connected cactus with at least one cycle.
pub fn fsep_cactus(g: &Graph, a: usize, b: usize) -> Result<FormulaResult> {
    let (ai, bi) = check(a, b)?;
    g.block_decomposition()?.validate_cactus()?;
    let girth = match g.girth() {
        Girth::Finite(k) => k,
        Girth::Infinite => {
            return Err(Error::Regime("a forest has infinite girth; the cactus formula needs a cycle".into()))
        }
    };
    let longer = g.shortest_cycle_above_3();
    let r = match longer {
        Some(l) if girth == 3 => {
            let li = l as i64;
            let ar = q(ai, 1);
            if q((2 * li + 1) * bi, li + 1) < ar && ar < q((2 * li + 2) * bi, li) {
                let inner = fsep_cycle(l, a, b)?;
                FormulaResult::exact(inner.value, &format!("cycle-{l}:{}", inner.regime))
            } else {
                let inner = fsep_cycle(3, a, b)?;
                FormulaResult::exact(inner.value, &format!("triangle:{}", inner.regime))
            }
        }
        _ => {
            let inner = fsep_cycle(girth, a, b)?;
            FormulaResult::exact(inner.value, &format!("girth-{girth}:{}", inner.regime))
        }
    };
    Ok(r)
}

/// Bounds `(fsep(C_{g-1}), fsep(C_g))` for a 2-connected outerplanar graph of girth `g >= 5`.
pub fn fsep_outerplanar_bounds(g: usize, a: usize, b: usize) -> Result<(FormulaResult, FormulaResult)> {
    if g < 5 {
        return Err(Error::Regime(format!("outerplanar bounds need girth at least 5, got {g}")));
    }
    let mut lower = fsep_cycle(g - 1, a, b)?;
    let mut upper = fsep_cycle(g, a, b)?;
    lower.exact = lower.value == upper.value;
    upper.exact = lower.exact;
    lower.regime = format!("lower:{}", lower.regime);
    upper.regime = format!("upper:{}", upper.regime);
    Ok((lower, upper))
}

/// The greedy lower bound `sep(C_n,a,b) >= a - b`.
pub fn sep_lower_bound(a: usize, b: usize) -> Result<usize> {
    check(a, b)?;
    Ok(a - b)
}
