//! H-ARQ operating points and asymptotic-trend diagnostics.
//!
//! Rates are normalized per one-round slot. An `L`-round scheme spends at
//! most `L` slots per message; the no-ARQ baseline always codes over all
//! `L` slots, so its initial rate is `L * C_tf` per slot and its throughput
//! `C_tf` per slot. With this convention `η_IR / η_noARQ = L / E[X]`.

use serde::Serialize;

use crate::analytic::{self, OutageTarget};
use crate::channel::SnrPoint;
use crate::montecarlo::{self, McConfig};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Incremental redundancy.
    Ir,
    /// Chase combining.
    Cc,
    /// Code over all `L` slots without feedback.
    NoArq,
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Strategy::Ir => "ir",
            Strategy::Cc => "cc",
            Strategy::NoArq => "no-arq",
        })
    }
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ir" => Ok(Strategy::Ir),
            "cc" => Ok(Strategy::Cc),
            "no-arq" | "noarq" | "no_arq" => Ok(Strategy::NoArq),
            _ => Err(Error::invalid(format!("unknown H-ARQ strategy {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HarqOperatingPoint {
    pub strategy: Strategy,
    pub rounds: usize,
    pub epsilon: f64,
    pub snr_db: f64,
    /// Bits per one-round slot.
    pub initial_rate: f64,
    pub expected_rounds: f64,
    /// `initial_rate / expected_rounds`, bits per symbol.
    pub throughput: f64,
    /// Zero for analytic (chase-combining) points.
    pub throughput_std_error: f64,
    /// `L / expected_rounds`.
    pub advantage_ratio: f64,
}

impl HarqOperatingPoint {
    fn new(
        strategy: Strategy,
        rounds: usize,
        eps: OutageTarget,
        snr: SnrPoint,
        initial_rate: f64,
        expected_rounds: f64,
        throughput_std_error: f64,
    ) -> Self {
        Self {
            strategy,
            rounds,
            epsilon: eps.get(),
            snr_db: snr.db(),
            initial_rate,
            expected_rounds,
            throughput: initial_rate / expected_rounds,
            throughput_std_error,
            advantage_ratio: rounds as f64 / expected_rounds,
        }
    }
}

/// Solve the ε operating point of `strategy` with at most `rounds` slots.
///
/// Chase combining is fully analytic and ignores `mc`; the other two
/// strategies need a Monte Carlo configuration.
pub fn solve_operating_point(
    strategy: Strategy,
    rounds: usize,
    eps: OutageTarget,
    snr: SnrPoint,
    mc: Option<&McConfig>,
) -> Result<HarqOperatingPoint> {
    let need_mc = || mc.ok_or_else(|| Error::invalid(format!("{strategy} requires Monte Carlo settings")));
    match strategy {
        Strategy::Cc => {
            let l = u32::try_from(rounds).map_err(|_| Error::invalid("too many rounds"))?;
            let rate = analytic::cc_initial_rate(snr, eps, l)?;
            let ex = analytic::cc_expected_rounds(rate, snr, l)?;
            Ok(HarqOperatingPoint::new(strategy, rounds, eps, snr, rate, ex, 0.0))
        }
        Strategy::Ir => {
            let ir = montecarlo::ir_throughput(snr, rounds, eps, need_mc()?)?;
            Ok(HarqOperatingPoint::new(
                strategy,
                rounds,
                eps,
                snr,
                ir.initial_rate.value,
                ir.expected_rounds.value,
                ir.throughput.std_error,
            ))
        }
        Strategy::NoArq => {
            let tf = montecarlo::estimate_tf_outage_capacity(snr, rounds, eps, need_mc()?)?;
            let l = rounds as f64;
            Ok(HarqOperatingPoint::new(
                strategy,
                rounds,
                eps,
                snr,
                tf.value * l,
                l,
                tf.std_error,
            ))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagnosticRow {
    pub snr_db: f64,
    pub expected_rounds: f64,
    pub expected_rounds_std_error: f64,
    /// `η_strategy - η_noARQ`.
    pub throughput_gap: f64,
    /// `sqrt(se_strategy^2 + se_noARQ^2)`.
    pub gap_std_error: f64,
}

/// `E[X]` and throughput gap to no-ARQ across an ascending SNR grid.
///
/// Exhibits the high-SNR trends (`E[X] -> L`, gap `-> 0`) numerically; the
/// limits themselves are never asserted at finite SNR.
pub fn asymptotic_diagnostic(
    strategy: Strategy,
    rounds: usize,
    eps: OutageTarget,
    snr_grid: &[SnrPoint],
    mc: &McConfig,
) -> Result<Vec<DiagnosticRow>> {
    if snr_grid.windows(2).any(|w| w[0].db() > w[1].db()) {
        return Err(Error::invalid("SNR grid must be sorted ascending"));
    }
    snr_grid
        .iter()
        .map(|&snr| {
            let (ex, ex_se, eta, eta_se, base, base_se) = match strategy {
                Strategy::Ir => {
                    let ir = montecarlo::ir_throughput(snr, rounds, eps, mc)?;
                    (
                        ir.expected_rounds.value,
                        ir.expected_rounds.std_error,
                        ir.throughput.value,
                        ir.throughput.std_error,
                        ir.no_arq.value,
                        ir.no_arq.std_error,
                    )
                }
                Strategy::Cc => {
                    let cc = solve_operating_point(Strategy::Cc, rounds, eps, snr, None)?;
                    let tf = montecarlo::estimate_tf_outage_capacity(snr, rounds, eps, mc)?;
                    (cc.expected_rounds, 0.0, cc.throughput, 0.0, tf.value, tf.std_error)
                }
                Strategy::NoArq => {
                    let tf = montecarlo::estimate_tf_outage_capacity(snr, rounds, eps, mc)?;
                    let l = rounds as f64;
                    (l, 0.0, tf.value, tf.std_error, tf.value, tf.std_error)
                }
            };
            let (gap, gap_se) = if strategy == Strategy::NoArq {
                (0.0, 0.0)
            } else {
                (eta - base, eta_se.hypot(base_se))
            };
            Ok(DiagnosticRow {
                snr_db: snr.db(),
                expected_rounds: ex,
                expected_rounds_std_error: ex_se,
                throughput_gap: gap,
                gap_std_error: gap_se,
            })
        })
        .collect()
}
