//! Monte Carlo estimators for quantities without a closed form.
//!
//! Draws are generated in chunks of `chunk_size`; chunk `j` always uses RNG
//! substream `(seed, j)` and per-chunk results are reduced in chunk order,
//! so every estimate depends only on `(seed, n_samples, chunk_size)`.
//!
//! Outage capacities are lower empirical quantiles: the `ceil(ε N)`-th order
//! statistic, which keeps the empirical outage strictly below ε. Their
//! standard errors come from the asymptotic quantile variance
//! `ε(1-ε) / (N f(q)^2)` with `f` a Gaussian kernel density estimate.

use serde::Serialize;

use crate::analytic::OutageTarget;
use crate::channel::{self, RngStream, SnrPoint};
use crate::exec::Execution;
use crate::{Error, Result};

pub const DEFAULT_SAMPLES: usize = 1_000_000;
pub const DEFAULT_CHUNK_SIZE: usize = 1 << 16;
pub const MIN_TAIL_EVENTS: usize = 50;
const KDE_SUBSAMPLE: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McConfig {
    pub n_samples: usize,
    pub seed: u64,
    pub chunk_size: usize,
    pub execution: Execution,
}

impl Default for McConfig {
    fn default() -> Self {
        Self {
            n_samples: DEFAULT_SAMPLES,
            seed: 1,
            chunk_size: DEFAULT_CHUNK_SIZE,
            execution: Execution::default(),
        }
    }
}

impl McConfig {
    pub fn new(n_samples: usize, seed: u64) -> Self {
        Self {
            n_samples,
            seed,
            ..Self::default()
        }
    }

    pub fn with_chunk_size(mut self, chunk_size: usize) -> Self {
        self.chunk_size = chunk_size;
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_samples == 0 {
            return Err(Error::invalid("n_samples must be positive"));
        }
        if self.chunk_size == 0 {
            return Err(Error::invalid("chunk_size must be positive"));
        }
        Ok(())
    }

    /// Quantile estimates at ε <= 0.01 need at least 10^4 samples.
    pub fn validate_for(&self, eps: OutageTarget) -> Result<()> {
        self.validate()?;
        if eps.get() <= 0.01 && self.n_samples < 10_000 {
            return Err(Error::invalid(format!(
                "n_samples = {} is too small for ε = {}; use at least 10000",
                self.n_samples,
                eps.get()
            )));
        }
        Ok(())
    }

    fn chunks(&self) -> usize {
        self.n_samples.div_ceil(self.chunk_size)
    }

    fn chunk_len(&self, j: usize) -> usize {
        self.chunk_size.min(self.n_samples - j * self.chunk_size)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub value: f64,
    pub std_error: f64,
    pub n_samples: usize,
    pub seed: u64,
}

impl McEstimate {
    fn new(value: f64, std_error: f64, mc: &McConfig) -> Self {
        Self {
            value,
            std_error,
            n_samples: mc.n_samples,
            seed: mc.seed,
        }
    }

    /// `|self - other| <= k * sqrt(se_1^2 + se_2^2)`.
    pub fn agrees_with(&self, other: f64, other_se: f64, k: f64) -> bool {
        (self.value - other).abs() <= k * self.std_error.hypot(other_se)
    }
}

/// Run `per_draw` on every draw of `blocks` gains, writing `width` outputs
/// per draw. Returns the outputs of all draws in sample order.
fn per_draw_outputs<F>(mc: &McConfig, blocks: usize, width: usize, per_draw: F) -> Result<Vec<f64>>
where
    F: Fn(&[f64], &mut [f64]) + Sync + Send,
{
    mc.validate()?;
    if blocks == 0 {
        return Err(Error::invalid("block count L must be at least 1"));
    }
    let chunks = mc.execution.map_chunks(mc.chunks(), |j| {
        let mut rng = RngStream::new(mc.seed, j as u64);
        let len = mc.chunk_len(j);
        let mut gains = vec![0.0; blocks];
        let mut out = vec![0.0; len * width];
        for row in out.chunks_exact_mut(width) {
            rng.fill_gains(&mut gains);
            per_draw(&gains, row);
        }
        out
    })?;
    Ok(chunks.concat())
}

/// Reduce per-chunk results of a per-message closure in chunk order.
fn per_chunk<T, F>(mc: &McConfig, task: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut RngStream, usize) -> T + Sync + Send,
{
    mc.validate()?;
    mc.execution.map_chunks(mc.chunks(), |j| {
        let mut rng = RngStream::new(mc.seed, j as u64);
        task(&mut rng, mc.chunk_len(j))
    })
}

/// Lower empirical ε-quantile with its asymptotic standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantileEstimate {
    pub value: f64,
    pub std_error: f64,
    /// Samples strictly below the returned value.
    pub tail_events: usize,
    pub density: f64,
}

pub fn empirical_quantile(values: &[f64], eps: OutageTarget) -> Result<QuantileEstimate> {
    let n = values.len();
    if n == 0 {
        return Err(Error::invalid("no samples"));
    }
    let e = eps.get();
    let rank = ((e * n as f64).ceil() as usize).clamp(1, n);
    let mut scratch = values.to_vec();
    let (below, q, _) = scratch.select_nth_unstable_by(rank - 1, f64::total_cmp);
    let q = *q;
    let tail_events = below.iter().filter(|v| **v < q).count();
    if tail_events < MIN_TAIL_EVENTS {
        return Err(Error::Precision {
            tail_events,
            required: MIN_TAIL_EVENTS,
        });
    }
    let density = kde_at(values, q);
    let std_error = (e * (1.0 - e) / n as f64).sqrt() / density;
    Ok(QuantileEstimate {
        value: q,
        std_error,
        tail_events,
        density,
    })
}

/// Gaussian KDE at `x` on an evenly strided subsample, Silverman bandwidth.
pub fn kde_at(values: &[f64], x: f64) -> f64 {
    let stride = values.len().div_ceil(KDE_SUBSAMPLE).max(1);
    let mut sub: Vec<f64> = values.iter().step_by(stride).copied().collect();
    let m = sub.len() as f64;
    let mean = sub.iter().sum::<f64>() / m;
    let sd = (sub.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (m - 1.0).max(1.0)).sqrt();
    sub.sort_by(f64::total_cmp);
    let at = |p: f64| sub[((p * (m - 1.0)).round() as usize).min(sub.len() - 1)];
    let iqr = at(0.75) - at(0.25);
    let spread = if iqr > 0.0 { sd.min(iqr / 1.34) } else { sd };
    let h = 0.9 * spread * m.powf(-0.2);
    if !(h > 0.0) {
        return f64::INFINITY;
    }
    let norm = 1.0 / (m * h * (2.0 * std::f64::consts::PI).sqrt());
    norm * sub
        .iter()
        .map(|v| (-0.5 * ((x - v) / h).powi(2)).exp())
        .sum::<f64>()
}

/// Empirical `P[value < threshold]`.
pub fn empirical_outage(values: &[f64], threshold: f64) -> f64 {
    values.iter().filter(|v| **v < threshold).count() as f64 / values.len() as f64
}

fn check_blocks(blocks: usize) -> Result<()> {
    if blocks == 0 {
        Err(Error::invalid("block count L must be at least 1"))
    } else {
        Ok(())
    }
}

/// Outage capacity of `L`-order time/frequency diversity: the ε-quantile of
/// `(1/L) sum log2(1 + P g_i)`.
pub fn estimate_tf_outage_capacity(
    snr: SnrPoint,
    blocks: usize,
    eps: OutageTarget,
    mc: &McConfig,
) -> Result<McEstimate> {
    check_blocks(blocks)?;
    mc.validate_for(eps)?;
    let p = snr.linear();
    let l = blocks as f64;
    let values = per_draw_outputs(mc, blocks, 1, |g, out| {
        out[0] = channel::sum_mutual_info(g, p) / l;
    })?;
    let q = empirical_quantile(&values, eps)?;
    Ok(McEstimate::new(q.value, q.std_error, mc))
}

/// Incremental-redundancy initial rate: the ε-quantile of the mutual
/// information accumulated over all `L` rounds.
pub fn estimate_ir_initial_rate(
    snr: SnrPoint,
    blocks: usize,
    eps: OutageTarget,
    mc: &McConfig,
) -> Result<McEstimate> {
    check_blocks(blocks)?;
    mc.validate_for(eps)?;
    let p = snr.linear();
    let values = per_draw_outputs(mc, blocks, 1, |g, out| {
        out[0] = channel::sum_mutual_info(g, p);
    })?;
    let q = empirical_quantile(&values, eps)?;
    Ok(McEstimate::new(q.value, q.std_error, mc))
}

/// Per-round probabilities `P[prefix_i < R]` for `i = 1..L-1` on a prefix matrix.
fn continuation_probabilities(prefixes: &[f64], blocks: usize, rate: f64) -> Vec<f64> {
    let n = (prefixes.len() / blocks) as f64;
    let mut counts = vec![0usize; blocks.saturating_sub(1)];
    for row in prefixes.chunks_exact(blocks) {
        for (c, v) in counts.iter_mut().zip(row) {
            if *v < rate {
                *c += 1;
            }
        }
    }
    counts.into_iter().map(|c| c as f64 / n).collect()
}

fn expected_rounds_from(probs: &[f64], n: usize) -> (f64, f64) {
    let value = 1.0 + probs.iter().sum::<f64>();
    // union bound: sum of the per-indicator binomial standard errors
    let se = probs
        .iter()
        .map(|p| (p * (1.0 - p) / n as f64).sqrt())
        .sum();
    (value, se)
}

/// `E[X] = 1 + sum_{i=1}^{L-1} P[sum_{k<=i} log2(1 + P g_k) < R]`.
pub fn estimate_ir_expected_rounds(
    rate: f64,
    snr: SnrPoint,
    blocks: usize,
    mc: &McConfig,
) -> Result<McEstimate> {
    check_blocks(blocks)?;
    if !(rate >= 0.0) {
        return Err(Error::invalid(format!("rate must be >= 0, got {rate}")));
    }
    mc.validate()?;
    if blocks == 1 {
        return Ok(McEstimate::new(1.0, 0.0, mc));
    }
    let p = snr.linear();
    let prefixes = per_draw_outputs(mc, blocks, blocks, |g, out| {
        channel::mi_prefixes_into(g, p, out)
    })?;
    let probs = continuation_probabilities(&prefixes, blocks, rate);
    let (value, se) = expected_rounds_from(&probs, mc.n_samples);
    Ok(McEstimate::new(value, se, mc))
}

/// Incremental-redundancy operating point computed on one shared sample set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IrEstimate {
    pub initial_rate: McEstimate,
    pub expected_rounds: McEstimate,
    /// `initial_rate / expected_rounds`.
    pub throughput: McEstimate,
    /// Time/frequency-diversity outage capacity of the same draws; equals
    /// `initial_rate / L` exactly.
    pub no_arq: McEstimate,
    /// `P[X > i]` for `i = 1..L-1`.
    pub continuation: Vec<f64>,
}

/// Long-term incremental-redundancy rate `R / E[X]` at the ε operating point.
pub fn ir_throughput(
    snr: SnrPoint,
    blocks: usize,
    eps: OutageTarget,
    mc: &McConfig,
) -> Result<IrEstimate> {
    check_blocks(blocks)?;
    mc.validate_for(eps)?;
    let p = snr.linear();
    let prefixes = per_draw_outputs(mc, blocks, blocks, |g, out| {
        channel::mi_prefixes_into(g, p, out)
    })?;
    let totals: Vec<f64> = prefixes
        .chunks_exact(blocks)
        .map(|row| row[blocks - 1])
        .collect();
    let q = empirical_quantile(&totals, eps)?;
    let rate = McEstimate::new(q.value, q.std_error, mc);

    let continuation = continuation_probabilities(&prefixes, blocks, q.value);
    let (ex, ex_se) = expected_rounds_from(&continuation, mc.n_samples);
    let rounds = McEstimate::new(ex, ex_se, mc);

    // delta method, ignoring the (positive) covariance between R and E[X]
    let eta = q.value / ex;
    let eta_se = (q.std_error / ex).hypot(q.value * ex_se / (ex * ex));
    let l = blocks as f64;
    Ok(IrEstimate {
        initial_rate: rate,
        expected_rounds: rounds,
        throughput: McEstimate::new(eta, eta_se, mc),
        no_arq: McEstimate::new(q.value / l, q.std_error / l, mc),
        continuation,
    })
}

/// Combining rule applied across H-ARQ rounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Combining {
    /// Mutual information accumulates across rounds.
    IncrementalRedundancy,
    /// Received SNR accumulates across rounds (maximal-ratio combining).
    ChaseCombining,
}

/// Outcome of one message.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarqTrace {
    pub rounds_used: usize,
    pub decoded: bool,
    pub final_mutual_info: f64,
}

/// Send one message: draw a fresh gain per round until the accumulated
/// mutual information reaches `R` or `L` rounds are spent.
pub fn simulate_message(
    combining: Combining,
    rate: f64,
    snr: SnrPoint,
    max_rounds: usize,
    rng: &mut RngStream,
) -> HarqTrace {
    let p = snr.linear();
    let mut mi_nats = 0.0;
    let mut gain_sum = 0.0;
    let mut mi = 0.0;
    for round in 1..=max_rounds {
        let g = rng.next_gain();
        mi = match combining {
            Combining::IncrementalRedundancy => {
                mi_nats += (p * g).ln_1p();
                mi_nats / std::f64::consts::LN_2
            }
            Combining::ChaseCombining => {
                gain_sum += g;
                (p * gain_sum).ln_1p() / std::f64::consts::LN_2
            }
        };
        if mi >= rate {
            return HarqTrace {
                rounds_used: round,
                decoded: true,
                final_mutual_info: mi,
            };
        }
    }
    HarqTrace {
        rounds_used: max_rounds,
        decoded: false,
        final_mutual_info: mi,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HarqSimulation {
    pub outage_rate: McEstimate,
    pub mean_rounds: McEstimate,
    /// `R N / sum X_i`.
    pub long_run_rate: McEstimate,
}

#[derive(Default)]
struct ProtocolTally {
    outages: u64,
    rounds: u64,
    rounds_sq: u64,
}

/// Event-level H-ARQ protocol simulation over `n_samples` messages.
pub fn simulate_harq_protocol(
    combining: Combining,
    rate: f64,
    snr: SnrPoint,
    max_rounds: usize,
    mc: &McConfig,
) -> Result<HarqSimulation> {
    check_blocks(max_rounds)?;
    if !(rate > 0.0 && rate.is_finite()) {
        return Err(Error::invalid(format!("rate must be positive, got {rate}")));
    }
    let tallies = per_chunk(mc, |rng, len| {
        let mut t = ProtocolTally::default();
        for _ in 0..len {
            let trace = simulate_message(combining, rate, snr, max_rounds, rng);
            let x = trace.rounds_used as u64;
            t.outages += u64::from(!trace.decoded);
            t.rounds += x;
            t.rounds_sq += x * x;
        }
        t
    })?;
    let total = tallies.iter().fold(ProtocolTally::default(), |mut acc, t| {
        acc.outages += t.outages;
        acc.rounds += t.rounds;
        acc.rounds_sq += t.rounds_sq;
        acc
    });

    let n = mc.n_samples as f64;
    let p_out = total.outages as f64 / n;
    let mean = total.rounds as f64 / n;
    let var = (total.rounds_sq as f64 / n - mean * mean).max(0.0) * n / (n - 1.0).max(1.0);
    let mean_se = (var / n).sqrt();
    Ok(HarqSimulation {
        outage_rate: McEstimate::new(p_out, (p_out * (1.0 - p_out) / n).sqrt(), mc),
        mean_rounds: McEstimate::new(mean, mean_se, mc),
        long_run_rate: McEstimate::new(
            rate * n / total.rounds as f64,
            rate * mean_se / (mean * mean),
            mc,
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{self, OutageTarget};
    use crate::solver::{invert_monotone, Direction, MonotoneProblem};

    fn eps(e: f64) -> OutageTarget {
        OutageTarget::new(e).unwrap()
    }

    fn db(d: f64) -> SnrPoint {
        SnrPoint::from_db(d).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(McConfig::new(0, 1).validate().is_err());
        assert!(McConfig::new(10, 1).with_chunk_size(0).validate().is_err());
        assert!(McConfig::new(9_999, 1).validate_for(eps(0.01)).is_err());
        assert!(McConfig::new(9_999, 1).validate_for(eps(0.05)).is_ok());
        let mc = McConfig::new(1000, 1).with_chunk_size(300);
        assert_eq!(mc.chunks(), 4);
        assert_eq!(mc.chunk_len(3), 100);
    }

    #[test]
    fn quantile_is_lower_order_statistic() {
        let values: Vec<f64> = (1..=10_000).rev().map(f64::from).collect();
        let q = empirical_quantile(&values, eps(0.01)).unwrap();
        assert_eq!(q.value, 100.0);
        assert_eq!(q.tail_events, 99);
        assert!(empirical_outage(&values, q.value) <= 0.01);
    }

    #[test]
    fn too_few_tail_events() {
        let values: Vec<f64> = (0..1000).map(f64::from).collect();
        assert!(matches!(
            empirical_quantile(&values, eps(0.01)),
            Err(Error::Precision { tail_events: 9, .. })
        ));
    }

    #[test]
    fn kde_recovers_uniform_density() {
        let values: Vec<f64> = (0..100_000).map(|i| f64::from(i) / 100_000.0).collect();
        let d = kde_at(&values, 0.5);
        assert!((d - 1.0).abs() < 0.02, "{d}");
    }

    #[test]
    fn tf_single_block_matches_closed_form() {
        let mc = McConfig::new(200_000, 3);
        for d in [0.0, 20.0] {
            let est = estimate_tf_outage_capacity(db(d), 1, eps(0.05), &mc).unwrap();
            let exact = analytic::outage_capacity_miso(db(d), eps(0.05), 1).unwrap();
            assert!(est.agrees_with(exact, 0.0, 3.0), "{est:?} vs {exact}");
        }
    }

    #[test]
    fn quantile_monotone_in_eps() {
        let mc = McConfig::new(100_000, 5);
        let lo = estimate_tf_outage_capacity(db(10.0), 2, eps(0.01), &mc).unwrap();
        let hi = estimate_tf_outage_capacity(db(10.0), 2, eps(0.99), &mc).unwrap();
        assert!(hi.value > lo.value);
    }

    #[test]
    fn ir_rate_is_l_times_tf_on_shared_samples() {
        let mc = McConfig::new(50_000, 17).with_chunk_size(4096);
        for l in 1..=4 {
            let tf = estimate_tf_outage_capacity(db(15.0), l, eps(0.05), &mc).unwrap();
            let ir = estimate_ir_initial_rate(db(15.0), l, eps(0.05), &mc).unwrap();
            assert_eq!(tf.value, ir.value / l as f64);
            let joint = ir_throughput(db(15.0), l, eps(0.05), &mc).unwrap();
            assert_eq!(joint.initial_rate.value, ir.value);
            assert_eq!(joint.no_arq.value, tf.value);
        }
    }

    #[test]
    fn empirical_outage_inversion_agrees_with_quantile() {
        let mc = McConfig::new(100_000, 8);
        let p = db(10.0).linear();
        let values = per_draw_outputs(&mc, 2, 1, |g, out| {
            out[0] = channel::mean_mutual_info(g, p);
        })
        .unwrap();
        let q = empirical_quantile(&values, eps(0.05)).unwrap();
        let f_se = (0.05f64 * 0.95 / values.len() as f64).sqrt();
        let prob = MonotoneProblem::new(
            |r| empirical_outage(&values, r),
            0.05,
            0.0,
            10.0,
            Direction::Increasing,
        )
        .with_f_tol(f_se);
        let r = invert_monotone(&prob).unwrap();
        assert!((r - q.value).abs() < 3.0 * q.std_error, "{r} vs {}", q.value);
    }

    #[test]
    fn expected_rounds_edges() {
        let mc = McConfig::new(20_000, 1);
        let one = estimate_ir_expected_rounds(3.0, db(10.0), 1, &mc).unwrap();
        assert_eq!((one.value, one.std_error), (1.0, 0.0));
        let zero = estimate_ir_expected_rounds(0.0, db(10.0), 3, &mc).unwrap();
        assert_eq!(zero.value, 1.0);
        assert!(estimate_ir_expected_rounds(-1.0, db(10.0), 3, &mc).is_err());
        let big = estimate_ir_expected_rounds(1e6, db(10.0), 3, &mc).unwrap();
        assert_eq!(big.value, 3.0);
    }

    #[test]
    fn ir_throughput_identity_and_bounds() {
        let mc = McConfig::new(100_000, 23);
        for l in 1..=3 {
            let ir = ir_throughput(db(20.0), l, eps(0.01), &mc).unwrap();
            assert_eq!(
                ir.throughput.value,
                ir.initial_rate.value / ir.expected_rounds.value
            );
            assert!((1.0..=l as f64).contains(&ir.expected_rounds.value));
            assert!(ir.throughput.value >= ir.no_arq.value);
            assert_eq!(ir.continuation.len(), l - 1);
            let standalone =
                estimate_ir_expected_rounds(ir.initial_rate.value, db(20.0), l, &mc).unwrap();
            assert_eq!(standalone.value, ir.expected_rounds.value);
        }
    }

    #[test]
    fn single_round_ir_is_one_by_one() {
        let mc = McConfig::new(200_000, 29);
        let ir = ir_throughput(db(10.0), 1, eps(0.01), &mc).unwrap();
        let exact = analytic::outage_capacity_miso(db(10.0), eps(0.01), 1).unwrap();
        assert!(ir.throughput.agrees_with(exact, 0.0, 3.0));
        assert_eq!(ir.expected_rounds.value, 1.0);
    }

    #[test]
    fn message_traces() {
        let mut rng = RngStream::new(3, 0);
        for _ in 0..1000 {
            for c in [Combining::IncrementalRedundancy, Combining::ChaseCombining] {
                let t = simulate_message(c, 4.0, db(5.0), 3, &mut rng);
                assert!((1..=3).contains(&t.rounds_used));
                if !t.decoded {
                    assert_eq!(t.rounds_used, 3);
                    assert!(t.final_mutual_info < 4.0);
                }
            }
        }
    }

    #[test]
    fn ir_decodes_no_later_than_cc() {
        for seed in 0..2000 {
            let ir = simulate_message(
                Combining::IncrementalRedundancy,
                3.0,
                db(8.0),
                4,
                &mut RngStream::new(seed, 0),
            );
            let cc = simulate_message(
                Combining::ChaseCombining,
                3.0,
                db(8.0),
                4,
                &mut RngStream::new(seed, 0),
            );
            assert!(ir.rounds_used <= cc.rounds_used);
            assert!(ir.decoded || !cc.decoded);
        }
    }

    #[test]
    fn simulator_single_round_outage() {
        let rate = analytic::outage_capacity_miso(db(10.0), eps(0.01), 1).unwrap();
        let mc = McConfig::new(1_000_000, 41);
        let sim =
            simulate_harq_protocol(Combining::IncrementalRedundancy, rate, db(10.0), 1, &mc).unwrap();
        assert!(sim.outage_rate.agrees_with(0.01, 0.0, 3.0), "{:?}", sim.outage_rate);
        assert_eq!(sim.mean_rounds.value, 1.0);
    }

    #[test]
    fn long_run_rate_matches_ratio() {
        let mc = McConfig::new(1_000_000, 43);
        let sim =
            simulate_harq_protocol(Combining::IncrementalRedundancy, 5.0, db(10.0), 3, &mc).unwrap();
        let ratio = 5.0 / sim.mean_rounds.value;
        assert!(((sim.long_run_rate.value - ratio) / ratio).abs() < 1e-2);
    }

    #[test]
    fn simulator_rejects_bad_input() {
        let mc = McConfig::new(100, 1);
        assert!(simulate_harq_protocol(Combining::ChaseCombining, 0.0, db(0.0), 2, &mc).is_err());
        assert!(simulate_harq_protocol(Combining::ChaseCombining, 1.0, db(0.0), 0, &mc).is_err());
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let base = McConfig::new(100_000, 77).with_chunk_size(1000);
        let runs: Vec<_> = [
            Execution::Sequential,
            Execution::with_workers(1),
            Execution::with_workers(8),
            Execution::parallel(),
        ]
        .into_iter()
        .map(|e| {
            let mc = base.with_execution(e);
            (
                ir_throughput(db(12.0), 3, eps(0.05), &mc).unwrap(),
                simulate_harq_protocol(Combining::ChaseCombining, 4.0, db(12.0), 3, &mc).unwrap(),
            )
        })
        .collect();
        for r in &runs[1..] {
            assert_eq!(r, &runs[0]);
        }
    }
}
