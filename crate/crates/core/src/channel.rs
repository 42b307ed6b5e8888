//! iid Rayleigh block fading: seeded gain draws and mutual-information
//! functionals of a single draw.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

/// Average received SNR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrPoint {
    linear: f64,
    db: f64,
}

impl SnrPoint {
    pub fn from_linear(linear: f64) -> Result<Self> {
        if !(linear > 0.0 && linear.is_finite()) {
            return Err(Error::invalid(format!("SNR must be positive, got {linear}")));
        }
        Ok(Self {
            linear,
            db: 10.0 * linear.log10(),
        })
    }

    pub fn from_db(db: f64) -> Result<Self> {
        if !db.is_finite() {
            return Err(Error::invalid(format!("SNR in dB must be finite, got {db}")));
        }
        let linear = 10f64.powf(db / 10.0);
        if !(linear > 0.0 && linear.is_finite()) {
            return Err(Error::invalid(format!("SNR {db} dB out of range")));
        }
        Ok(Self { linear, db })
    }

    pub fn linear(&self) -> f64 {
        self.linear
    }

    pub fn db(&self) -> f64 {
        self.db
    }
}

/// A ChaCha8 substream selected by `(seed, stream_id)`.
///
/// Equal `(seed, stream_id)` pairs reproduce identical gain sequences, and
/// distinct stream ids give non-overlapping sequences.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        Self {
            seed,
            stream_id,
            rng,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// One unit-mean exponential gain `|h|^2` by inverse transform.
    #[inline]
    pub fn next_gain(&mut self) -> f64 {
        // random::<f64>() is in [0, 1); flip to (0, 1] so ln never sees 0.
        let u = 1.0 - self.rng.random::<f64>();
        -u.ln()
    }

    pub fn fill_gains(&mut self, out: &mut [f64]) {
        for g in out {
            *g = self.next_gain();
        }
    }
}

/// One block-fading realization: `L` channel power gains.
#[derive(Debug, Clone, PartialEq)]
pub struct FadingDraw {
    gains: Vec<f64>,
}

impl FadingDraw {
    pub fn new(gains: Vec<f64>) -> Result<Self> {
        if gains.is_empty() {
            return Err(Error::invalid("a fading draw needs at least one gain"));
        }
        if let Some(g) = gains.iter().find(|g| !(**g >= 0.0 && g.is_finite())) {
            return Err(Error::invalid(format!("gain must be finite and >= 0, got {g}")));
        }
        Ok(Self { gains })
    }

    pub fn gains(&self) -> &[f64] {
        &self.gains
    }

    pub fn len(&self) -> usize {
        self.gains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gains.is_empty()
    }
}

pub fn sample_draw(rng: &mut RngStream, blocks: usize) -> Result<FadingDraw> {
    if blocks == 0 {
        return Err(Error::invalid("block count L must be at least 1"));
    }
    let mut gains = vec![0.0; blocks];
    rng.fill_gains(&mut gains);
    Ok(FadingDraw { gains })
}

/// `(1/L) sum log2(1 + P g_i)`: mutual information of a codeword spread over
/// all blocks of the draw.
pub fn block_mutual_info(draw: &FadingDraw, snr: SnrPoint) -> f64 {
    mean_mutual_info(draw.gains(), snr.linear())
}

/// Prefix sums of per-round mutual information (incremental redundancy).
pub fn accumulated_mi_prefixes(draw: &FadingDraw, snr: SnrPoint) -> Vec<f64> {
    let mut out = vec![0.0; draw.len()];
    mi_prefixes_into(draw.gains(), snr.linear(), &mut out);
    out
}

/// Mutual information of the accumulated SNR after each round (chase combining).
pub fn accumulated_snr_mi_prefixes(draw: &FadingDraw, snr: SnrPoint) -> Vec<f64> {
    let mut out = vec![0.0; draw.len()];
    snr_mi_prefixes_into(draw.gains(), snr.linear(), &mut out);
    out
}

#[inline]
pub(crate) fn mean_mutual_info(gains: &[f64], p: f64) -> f64 {
    sum_mutual_info(gains, p) / gains.len() as f64
}

#[inline]
pub(crate) fn sum_mutual_info(gains: &[f64], p: f64) -> f64 {
    gains.iter().map(|g| (p * g).ln_1p()).sum::<f64>() / std::f64::consts::LN_2
}

#[inline]
pub(crate) fn mi_prefixes_into(gains: &[f64], p: f64, out: &mut [f64]) {
    let mut acc = 0.0;
    for (o, g) in out.iter_mut().zip(gains) {
        acc += (p * g).ln_1p();
        *o = acc / std::f64::consts::LN_2;
    }
}

#[inline]
pub(crate) fn snr_mi_prefixes_into(gains: &[f64], p: f64, out: &mut [f64]) {
    let mut acc = 0.0;
    for (o, g) in out.iter_mut().zip(gains) {
        acc += g;
        *o = (p * acc).ln_1p() / std::f64::consts::LN_2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn draw(g: &[f64]) -> FadingDraw {
        FadingDraw::new(g.to_vec()).unwrap()
    }

    fn unit() -> SnrPoint {
        SnrPoint::from_linear(1.0).unwrap()
    }

    #[test]
    fn snr_point_consistency() {
        for db in [-10.0, 0.0, 3.0, 17.5, 45.0] {
            let s = SnrPoint::from_db(db).unwrap();
            let back = SnrPoint::from_linear(s.linear()).unwrap();
            assert!(((back.db() - db) / db.abs().max(1.0)).abs() < 1e-12);
        }
        assert!(SnrPoint::from_linear(0.0).is_err());
        assert!(SnrPoint::from_linear(-1.0).is_err());
        assert!(SnrPoint::from_db(f64::NAN).is_err());
    }

    #[test]
    fn draw_validation() {
        assert!(FadingDraw::new(vec![]).is_err());
        assert!(FadingDraw::new(vec![1.0, -0.1]).is_err());
        assert!(sample_draw(&mut RngStream::new(1, 0), 0).is_err());
    }

    #[test]
    fn gain_moments() {
        let mut rng = RngStream::new(7, 0);
        let n = 1_000_000;
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for _ in 0..n {
            let g = rng.next_gain();
            sum += g;
            sum_sq += g * g;
        }
        let mean = sum / n as f64;
        let var = sum_sq / n as f64 - mean * mean;
        assert!((mean - 1.0).abs() < 0.004, "mean {mean}");
        assert!((var - 1.0).abs() < 0.01, "var {var}");
    }

    #[test]
    fn gain_tail_probability() {
        let threshold = -(0.99f64).ln();
        let mut rng = RngStream::new(11, 3);
        let n = 10_000_000;
        let hits = (0..n).filter(|_| rng.next_gain() < threshold).count();
        let frac = hits as f64 / n as f64;
        assert!((frac - 0.01).abs() < 1e-4, "{frac}");
    }

    #[test]
    fn gain_marginal_ks() {
        let n = 1_000_000;
        let mut rng = RngStream::new(2024, 9);
        let mut g: Vec<f64> = (0..n).map(|_| rng.next_gain()).collect();
        g.sort_by(f64::total_cmp);
        let d = g
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let cdf = 1.0 - (-x).exp();
                f64::max(cdf - i as f64 / n as f64, (i + 1) as f64 / n as f64 - cdf)
            })
            .fold(0.0, f64::max);
        assert!(d < 1.63 / (n as f64).sqrt(), "KS statistic {d}");
    }

    #[test]
    fn streams_are_deterministic_and_distinct() {
        let a = sample_draw(&mut RngStream::new(5, 2), 64).unwrap();
        let b = sample_draw(&mut RngStream::new(5, 2), 64).unwrap();
        let c = sample_draw(&mut RngStream::new(5, 3), 64).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.gains().iter().all(|g| *g >= 0.0 && g.is_finite()));
    }

    #[test]
    fn mutual_info_examples() {
        let p = SnrPoint::from_db(13.0).unwrap();
        assert_eq!(block_mutual_info(&draw(&[0.0, 0.0, 0.0]), p), 0.0);
        assert!((block_mutual_info(&draw(&[1.0]), unit()) - 1.0).abs() < 1e-15);
        assert!((block_mutual_info(&draw(&[1.0, 3.0]), unit()) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn prefix_examples() {
        let mi = accumulated_mi_prefixes(&draw(&[1.0, 1.0]), unit());
        assert!((mi[0] - 1.0).abs() < 1e-15 && (mi[1] - 2.0).abs() < 1e-15);

        let p = SnrPoint::from_db(7.0).unwrap();
        let mi = accumulated_mi_prefixes(&draw(&[0.0, 2.5]), p);
        assert_eq!(mi[0], 0.0);
        assert!((mi[1] - (1.0 + p.linear() * 2.5).log2()).abs() < 1e-14);

        let cc = accumulated_snr_mi_prefixes(&draw(&[1.0, 1.0]), unit());
        assert!((cc[0] - 1.0).abs() < 1e-15 && (cc[1] - 3f64.log2()).abs() < 1e-15);

        let single = draw(&[0.37]);
        assert_eq!(
            accumulated_snr_mi_prefixes(&single, p),
            accumulated_mi_prefixes(&single, p)
        );
    }

    #[test]
    fn prefix_identities_on_random_draws() {
        let mut rng = RngStream::new(99, 0);
        for l in 1..=6 {
            for db in [0.0, 10.0, 30.0] {
                let p = SnrPoint::from_db(db).unwrap();
                let d = sample_draw(&mut rng, l).unwrap();
                let mi = accumulated_mi_prefixes(&d, p);
                let cc = accumulated_snr_mi_prefixes(&d, p);
                assert!(mi.windows(2).all(|w| w[0] <= w[1]));
                assert!(cc.windows(2).all(|w| w[0] <= w[1]));
                let avg = block_mutual_info(&d, p);
                assert!((mi[l - 1] / l as f64 - avg).abs() <= 1e-12 * avg.max(1.0));
            }
        }
    }

    #[test]
    fn chase_never_exceeds_incremental_redundancy() {
        let mut rng = RngStream::new(4242, 1);
        let p = SnrPoint::from_db(10.0).unwrap();
        for i in 0..100_000 {
            let d = sample_draw(&mut rng, 1 + i % 4).unwrap();
            let mi = accumulated_mi_prefixes(&d, p);
            let cc = accumulated_snr_mi_prefixes(&d, p);
            for (l, (a, b)) in mi.iter().zip(&cc).enumerate() {
                assert!(b <= &(a + 1e-12));
                if l >= 1 {
                    // at least two positive gains: strict
                    assert!(b < a);
                }
            }
        }
    }

    #[test]
    fn jensen_both_forms() {
        let mut rng = RngStream::new(31, 0);
        for l in 2..=5 {
            for db in [0.0, 20.0, 40.0] {
                let p = SnrPoint::from_db(db).unwrap();
                for _ in 0..1000 {
                    let d = sample_draw(&mut rng, l).unwrap();
                    let lhs = block_mutual_info(&d, p);
                    let sum: f64 = d.gains().iter().sum();
                    let miso = (1.0 + p.linear() / l as f64 * sum).log2();
                    assert!(lhs <= miso + 1e-12);
                    // sum form: IR accumulation dominates CC accumulation
                    let ir = accumulated_mi_prefixes(&d, p)[l - 1];
                    let cc = (1.0 + p.linear() * sum).log2();
                    assert!(cc <= ir + 1e-12);
                }
            }
        }
    }
}
