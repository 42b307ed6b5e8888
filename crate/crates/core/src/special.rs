//! Erlang (sum of iid unit-mean exponentials) distribution.
//!
//! The squared norm of an `n`-element iid CN(0, 1) vector is Erlang-`n`
//! distributed, i.e. chi-square with `2n` degrees of freedom scaled by 1/2.
//! This is the only special function the capacity formulas need.

use crate::{Error, Result};

/// Largest supported order; keeps the finite sums well inside `f64` range.
pub const MAX_ERLANG_ORDER: u32 = 64;

const INV_CDF_TOL: f64 = 1e-12;
const INV_CDF_MAX_ITER: usize = 200;
const BRACKET_MAX_DOUBLINGS: usize = 60;

/// Number of summed exponential gains, `1..=64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ErlangOrder(u32);

impl ErlangOrder {
    pub fn new(n: u32) -> Result<Self> {
        if (1..=MAX_ERLANG_ORDER).contains(&n) {
            Ok(Self(n))
        } else {
            Err(Error::invalid(format!(
                "Erlang order must be in 1..={MAX_ERLANG_ORDER}, got {n}"
            )))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl TryFrom<usize> for ErlangOrder {
    type Error = Error;

    fn try_from(n: usize) -> Result<Self> {
        u32::try_from(n)
            .map_err(|_| Error::invalid(format!("Erlang order {n} too large")))
            .and_then(Self::new)
    }
}

fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|k| f64::from(k).ln()).sum()
}

/// `P[S <= x]` where `S` is a sum of `n` iid unit-mean exponentials.
///
/// Below the mean the lower tail is summed directly as a convergent series,
/// which keeps full relative precision for tiny probabilities. At and above
/// the mean the complement `e^{-x} sum_{k<n} x^k/k!` is accumulated with
/// incrementally updated terms.
pub fn erlang_cdf(x: f64, n: ErlangOrder) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x <= 0.0 {
        return 0.0;
    }
    if x.is_infinite() {
        return 1.0;
    }
    let n = n.get();
    let nf = f64::from(n);
    let p = if x < nf {
        // e^{-x} x^n / n! * sum_{j>=0} x^j / ((n+1)...(n+j))
        let prefactor = (nf * x.ln() - x - ln_factorial(n)).exp();
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut k = nf;
        loop {
            k += 1.0;
            term *= x / k;
            sum += term;
            if term <= sum * f64::EPSILON {
                break;
            }
        }
        prefactor * sum
    } else {
        let mut term = (-x).exp();
        let mut tail = term;
        for k in 1..n {
            term *= x / f64::from(k);
            tail += term;
        }
        1.0 - tail
    };
    p.clamp(0.0, 1.0)
}

/// Density `x^{n-1} e^{-x} / (n-1)!`.
pub fn erlang_pdf(x: f64, n: ErlangOrder) -> f64 {
    if x < 0.0 {
        return 0.0;
    }
    let n = n.get();
    if n == 1 {
        return (-x).exp();
    }
    if x == 0.0 {
        return 0.0;
    }
    (f64::from(n - 1) * x.ln() - x - ln_factorial(n - 1)).exp()
}

/// Inverse of [`erlang_cdf`]: the `x` with `erlang_cdf(x, n) = p`.
///
/// `n = 1` uses the closed form `-ln(1 - p)`. Higher orders run Newton steps
/// on the analytic density inside a shrinking bisection bracket; a step that
/// leaves the bracket is replaced by the midpoint.
pub fn erlang_inv_cdf(p: f64, n: ErlangOrder) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::invalid(format!(
            "probability must lie in (0, 1), got {p}"
        )));
    }
    if n.get() == 1 {
        return Ok(-(-p).ln_1p());
    }

    let nf = f64::from(n.get());
    let mut lo = 0.0;
    let mut hi = f64::max(4.0 * nf, -8.0 * (-p).ln_1p());
    let mut doublings = 0;
    while erlang_cdf(hi, n) < p {
        lo = hi;
        hi *= 2.0;
        doublings += 1;
        if doublings > BRACKET_MAX_DOUBLINGS {
            return Err(Error::Bracket { target: p, lo, hi });
        }
    }

    // Small-p law F(x) ~ x^n / n! gives a good start in the lower tail.
    let guess = (p.ln() + ln_factorial(n.get())) / nf;
    let mut x = guess.exp();
    if !(x > lo && x < hi) {
        x = 0.5 * (lo + hi);
    }

    for _ in 0..INV_CDF_MAX_ITER {
        let residual = erlang_cdf(x, n) - p;
        if residual == 0.0 {
            return Ok(x);
        }
        if residual < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let density = erlang_pdf(x, n);
        let mut next = x - residual / density;
        if !(density > 0.0 && next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        let step = (next - x).abs();
        x = next;
        if residual.abs() <= INV_CDF_TOL && step <= 4.0 * f64::EPSILON * x {
            return Ok(x);
        }
        if hi - lo <= 2.0 * f64::EPSILON * hi {
            break;
        }
    }

    if (erlang_cdf(x, n) - p).abs() <= INV_CDF_TOL {
        Ok(x)
    } else {
        Err(Error::Convergence {
            iterations: INV_CDF_MAX_ITER,
            lo,
            hi,
            best: x,
        })
    }
}
