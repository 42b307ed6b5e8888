//! Bracketed bisection for monotone scalar functions.
//!
//! Only monotonicity is assumed, so the same routine inverts analytic CDFs
//! and the step-shaped empirical CDFs produced by Monte Carlo callers.

use crate::{Error, Result};

pub const DEFAULT_X_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_ITER: usize = 200;
pub const DEFAULT_BRACKET_CAP: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
}

impl Direction {
    /// Signed distance to the target, oriented so that it increases with `x`.
    fn oriented(self, value: f64, target: f64) -> f64 {
        match self {
            Direction::Increasing => value - target,
            Direction::Decreasing => target - value,
        }
    }
}

/// Find `x` in `[lo, hi]` with `f(x) = target` for a monotone `f`.
#[derive(Debug, Clone)]
pub struct MonotoneProblem<F> {
    pub f: F,
    pub target: f64,
    pub lo: f64,
    pub hi: f64,
    pub x_tol: f64,
    pub f_tol: f64,
    pub max_iter: usize,
    pub direction: Direction,
}

impl<F: Fn(f64) -> f64> MonotoneProblem<F> {
    /// Problem with the analytic-caller defaults (`x_tol = 1e-9`, `f_tol = 0`).
    pub fn new(f: F, target: f64, lo: f64, hi: f64, direction: Direction) -> Self {
        Self {
            f,
            target,
            lo,
            hi,
            x_tol: DEFAULT_X_TOL,
            f_tol: 0.0,
            max_iter: DEFAULT_MAX_ITER,
            direction,
        }
    }

    pub fn with_x_tol(mut self, x_tol: f64) -> Self {
        self.x_tol = x_tol;
        self
    }

    pub fn with_f_tol(mut self, f_tol: f64) -> Self {
        self.f_tol = f_tol;
        self
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }
}

/// Bracket held at the start of one bisection iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BisectionStep {
    pub lo: f64,
    pub hi: f64,
    pub mid: f64,
    pub value: f64,
}

pub fn invert_monotone<F: Fn(f64) -> f64>(problem: &MonotoneProblem<F>) -> Result<f64> {
    bisect(problem, |_| {})
}

/// As [`invert_monotone`], also returning every visited bracket.
pub fn invert_monotone_traced<F: Fn(f64) -> f64>(
    problem: &MonotoneProblem<F>,
) -> Result<(f64, Vec<BisectionStep>)> {
    let mut trace = Vec::new();
    let root = bisect(problem, |s| trace.push(s))?;
    Ok((root, trace))
}

fn bisect<F, O>(problem: &MonotoneProblem<F>, mut observe: O) -> Result<f64>
where
    F: Fn(f64) -> f64,
    O: FnMut(BisectionStep),
{
    let MonotoneProblem {
        ref f,
        target,
        lo,
        hi,
        x_tol,
        f_tol,
        max_iter,
        direction,
    } = *problem;

    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::invalid(format!("empty interval [{lo}, {hi}]")));
    }
    if !(x_tol > 0.0) || f_tol < 0.0 || max_iter == 0 {
        return Err(Error::invalid("tolerances must be positive"));
    }

    let g = |x: f64| direction.oriented(f(x), target);
    let (g_lo, g_hi) = (g(lo), g(hi));
    if g_lo == 0.0 {
        return Ok(lo);
    }
    if g_hi == 0.0 {
        return Ok(hi);
    }
    if g_lo > 0.0 || g_hi < 0.0 {
        return Err(Error::Bracket { target, lo, hi });
    }

    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        let value = f(mid);
        observe(BisectionStep { lo, hi, mid, value });
        let d = direction.oriented(value, target);
        if d.abs() <= f_tol || d == 0.0 {
            return Ok(mid);
        }
        if d < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= x_tol {
            return Ok(0.5 * (lo + hi));
        }
    }
    Err(Error::Convergence {
        iterations: max_iter,
        lo,
        hi,
        best: 0.5 * (lo + hi),
    })
}

/// Grow `seed` geometrically until `f` straddles `target`.
///
/// Each step widens the side that falls short by `growth` times the current
/// width, keeping the other end fixed.
pub fn expand_bracket<F: Fn(f64) -> f64>(
    f: F,
    target: f64,
    seed: (f64, f64),
    direction: Direction,
    growth: f64,
    cap: usize,
) -> Result<(f64, f64)> {
    let (mut lo, mut hi) = seed;
    if !(lo < hi) {
        return Err(Error::invalid(format!("empty seed interval [{lo}, {hi}]")));
    }
    if !(growth > 1.0) {
        return Err(Error::invalid("bracket growth factor must exceed 1"));
    }
    for _ in 0..=cap {
        let below = direction.oriented(f(lo), target) <= 0.0;
        let above = direction.oriented(f(hi), target) >= 0.0;
        match (below, above) {
            (true, true) => return Ok((lo, hi)),
            (true, false) => {
                let width = hi - lo;
                lo = hi;
                hi += growth * width;
            }
            (false, true) => {
                let width = hi - lo;
                hi = lo;
                lo -= growth * width;
            }
            (false, false) => {
                return Err(Error::invalid(
                    "function not monotone in the declared direction",
                ))
            }
        }
    }
    Err(Error::Bracket { target, lo, hi })
}
