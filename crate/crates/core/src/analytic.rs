//! Closed-form outage capacities for antenna diversity and chase combining.
//!
//! With `x_eps` the ε-quantile of an Erlang-`n` gain, every antenna-diversity
//! capacity takes the form `log2(1 + Γ P)` where `Γ` (the gap to capacity)
//! does not depend on `P`. Outage uses the strict inequality `MI < R`.

use serde::Serialize;

use crate::channel::SnrPoint;
use crate::special::{erlang_cdf, erlang_inv_cdf, ErlangOrder};
use crate::{Error, Result};

/// Target outage probability ε.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct OutageTarget(f64);

impl OutageTarget {
    pub fn new(epsilon: f64) -> Result<Self> {
        if epsilon > 0.0 && epsilon < 1.0 {
            Ok(Self(epsilon))
        } else {
            Err(Error::invalid(format!(
                "outage target must lie in (0, 1), got {epsilon}"
            )))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// `n_t x n_r` antenna configuration with at most one side above 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct AntennaConfig {
    n_t: u32,
    n_r: u32,
}

impl AntennaConfig {
    pub fn new(n_t: u32, n_r: u32) -> Result<Self> {
        if n_t == 0 || n_r == 0 {
            return Err(Error::invalid("antenna counts must be at least 1"));
        }
        if n_t.min(n_r) != 1 {
            return Err(Error::invalid(format!(
                "{n_t}x{n_r}: only MISO (Nt x 1) or SIMO (1 x Nr) configurations are supported"
            )));
        }
        ErlangOrder::new(n_t.max(n_r))?;
        Ok(Self { n_t, n_r })
    }

    pub fn miso(n_t: u32) -> Result<Self> {
        Self::new(n_t, 1)
    }

    pub fn simo(n_r: u32) -> Result<Self> {
        Self::new(1, n_r)
    }

    pub fn n_t(&self) -> u32 {
        self.n_t
    }

    pub fn n_r(&self) -> u32 {
        self.n_r
    }

    /// Number of gains summed in `||H||^2`.
    pub fn order(&self) -> ErlangOrder {
        ErlangOrder::new(self.n_t.max(self.n_r)).expect("validated in new")
    }
}

impl std::fmt::Display for AntennaConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x{}", self.n_t, self.n_r)
    }
}

impl std::str::FromStr for AntennaConfig {
    type Err = Error;

    /// Parses `"2x1"`, `"1x3"` and the like.
    fn from_str(s: &str) -> Result<Self> {
        let (t, r) = s
            .split_once(['x', 'X'])
            .ok_or_else(|| Error::invalid(format!("expected NtxNr, got {s:?}")))?;
        let parse = |v: &str| {
            v.trim()
                .parse::<u32>()
                .map_err(|_| Error::invalid(format!("bad antenna count in {s:?}")))
        };
        Self::new(parse(t)?, parse(r)?)
    }
}

fn order(n: u32) -> Result<ErlangOrder> {
    ErlangOrder::new(n)
}

pub fn awgn_capacity(snr: SnrPoint) -> f64 {
    snr.linear().ln_1p() / std::f64::consts::LN_2
}

/// `log2(1 + Γ P)`.
pub fn capacity_with_gap(gap: f64, snr: SnrPoint) -> f64 {
    (gap * snr.linear()).ln_1p() / std::f64::consts::LN_2
}

/// `N_t x 1` with a spatially white input: `log2(1 + F^{-1}(ε) P / N_t)`.
pub fn outage_capacity_miso(snr: SnrPoint, eps: OutageTarget, n_t: u32) -> Result<f64> {
    let x = erlang_inv_cdf(eps.get(), order(n_t)?)?;
    Ok(capacity_with_gap(x / f64::from(n_t), snr))
}

/// `1 x N_r` with maximum-ratio combining: `log2(1 + F^{-1}(ε) P)`.
pub fn outage_capacity_simo(snr: SnrPoint, eps: OutageTarget, n_r: u32) -> Result<f64> {
    let x = erlang_inv_cdf(eps.get(), order(n_r)?)?;
    Ok(capacity_with_gap(x, snr))
}

pub fn outage_capacity(snr: SnrPoint, eps: OutageTarget, config: AntennaConfig) -> Result<f64> {
    Ok(capacity_with_gap(gap_to_capacity(eps, config)?, snr))
}

/// Linear power factor Γ with `C_ε(P) = log2(1 + Γ P)`.
pub fn gap_to_capacity(eps: OutageTarget, config: AntennaConfig) -> Result<f64> {
    let x = erlang_inv_cdf(eps.get(), config.order())?;
    Ok(x / f64::from(config.n_t()))
}

/// Small-ε approximation `ε^{1/N_t} (N_t!)^{1/N_t} / N_t` of the MISO gap.
///
/// Only meaningful for small ε; not enforced.
pub fn gap_small_eps_approx(eps: OutageTarget, n_t: u32) -> Result<f64> {
    order(n_t)?;
    let n = f64::from(n_t);
    let ln_fact: f64 = (2..=n_t).map(|k| f64::from(k).ln()).sum();
    Ok(((eps.get().ln() + ln_fact) / n).exp() / n)
}

pub fn to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

/// `P[log2(1 + P sum_{i<=L} g_i) < R]`: chase-combining outage after `L` rounds.
pub fn cc_outage_probability(rate: f64, snr: SnrPoint, rounds: u32) -> Result<f64> {
    Ok(erlang_cdf(snr_threshold(rate, snr), order(rounds)?))
}

/// Initial rate at which chase combining meets the outage target after `L` rounds.
pub fn cc_initial_rate(snr: SnrPoint, eps: OutageTarget, rounds: u32) -> Result<f64> {
    let x = erlang_inv_cdf(eps.get(), order(rounds)?)?;
    Ok(capacity_with_gap(x, snr))
}

fn snr_threshold(rate: f64, snr: SnrPoint) -> f64 {
    (rate * std::f64::consts::LN_2).exp_m1() / snr.linear()
}

/// Expected number of chase-combining rounds at initial rate `R`.
///
/// Survivor sum `E[X] = 1 + sum_{i=1}^{L-1} P[X > i]`, where `X > i` exactly
/// when the first `i` accumulated gains stay below `(2^R - 1)/P`.
pub fn cc_expected_rounds(rate: f64, snr: SnrPoint, rounds: u32) -> Result<f64> {
    if !(rate >= 0.0) {
        return Err(Error::invalid(format!("rate must be >= 0, got {rate}")));
    }
    order(rounds)?;
    let x = snr_threshold(rate, snr);
    let mut expected = 1.0;
    for i in 1..rounds {
        expected += erlang_cdf(x, order(i)?);
    }
    Ok(expected.clamp(1.0, f64::from(rounds)))
}

/// Long-term chase-combining throughput `R / E[X]` at the ε operating point.
pub fn cc_throughput(snr: SnrPoint, eps: OutageTarget, rounds: u32) -> Result<f64> {
    let rate = cc_initial_rate(snr, eps, rounds)?;
    Ok(rate / cc_expected_rounds(rate, snr, rounds)?)
}
