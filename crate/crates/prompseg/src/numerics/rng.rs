//! Deterministic PRNG: SplitMix64 state advance with Box-Muller normals.
//!
//! Every stochastic piece of the crate (trajectory noise, obstacle draws,
//! k-means seeding, sampled trajectories) pulls from an explicitly passed
//! [`Rng64`], so identical seeds give bit-identical results and nothing
//! depends on ambient state.

use crate::error::{Error, Result};

/// Seeded 64-bit generator. One `u64` of state plus a cached Box-Muller spare.
#[derive(Debug, Clone)]
pub struct Rng64 {
    state: u64,
    cached_normal: Option<f64>,
}

impl Rng64 {
    /// Generator whose output stream is a pure function of `seed`.
    pub fn new(seed: u64) -> Self {
        Rng64 {
            state: seed,
            cached_normal: None,
        }
    }

    /// Next raw u64 (SplitMix64).
    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform f64 in [0, 1), using the top 53 bits for a full mantissa.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform f64 in (0, 1]; safe as a log argument.
    #[inline]
    fn next_f64_open(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 / (1u64 << 53) as f64
    }

    /// Uniform draw on [lo, hi). Errors when `lo >= hi`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> Result<f64> {
        if !(lo < hi) {
            return Err(Error::InvalidParameter(format!(
                "uniform range requires lo < hi, got [{lo}, {hi})"
            )));
        }
        Ok(lo + (hi - lo) * self.next_f64())
    }

    /// Draw from N(mean, std^2) via Box-Muller. `std = 0` returns `mean` exactly.
    /// Always consumes the stream so the draw order is independent of `std`.
    pub fn normal(&mut self, mean: f64, std: f64) -> Result<f64> {
        if std < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "normal std must be >= 0, got {std}"
            )));
        }
        Ok(mean + std * self.standard_normal())
    }

    /// Standard normal sample; produces pairs and caches the spare.
    pub fn standard_normal(&mut self) -> f64 {
        if let Some(z) = self.cached_normal.take() {
            return z;
        }
        let u1 = self.next_f64_open();
        let u2 = self.next_f64();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        self.cached_normal = Some(r * theta.sin());
        r * theta.cos()
    }

    /// Uniform index in [0, n). Fed by one `uniform` draw so replaying the
    /// stream stays straightforward.
    pub fn index(&mut self, n: usize) -> Result<usize> {
        if n == 0 {
            return Err(Error::InvalidParameter("index bound must be > 0".into()));
        }
        let x = self.uniform(0.0, n as f64)?;
        Ok((x.floor() as usize).min(n - 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // First outputs of the seed-42 stream, frozen when the generator was
    // first brought up. Guards against accidental changes to the advance
    // or mixing constants.
    const GOLDEN_SEED42_U64: [u64; 8] = [
        13679457532755275413,
        2949826092126892291,
        5139283748462763858,
        6349198060258255764,
        701532786141963250,
        16015981125662989062,
        4028864712777624925,
        14769051326987775908,
    ];

    #[test]
    fn same_seed_identical_streams() {
        let mut a = Rng64::new(0);
        let mut b = Rng64::new(0);
        for _ in 0..200 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        let mut a = Rng64::new(0);
        let mut b = Rng64::new(0);
        for _ in 0..200 {
            assert_eq!(a.normal(0.0, 1.0).unwrap(), b.normal(0.0, 1.0).unwrap());
        }
    }

    #[test]
    fn distinct_seeds_differ() {
        let mut a = Rng64::new(1);
        let mut b = Rng64::new(2);
        let any_diff = (0..100).any(|_| a.next_f64() != b.next_f64());
        assert!(any_diff);
    }

    #[test]
    fn golden_stream_seed_42() {
        let mut rng = Rng64::new(42);
        for &expect in &GOLDEN_SEED42_U64 {
            assert_eq!(rng.next_u64(), expect);
        }
    }

    #[test]
    fn uniform_degenerate_width() {
        // Narrowest representable interval above 5.0: one ulp wide.
        let hi = f64::from_bits(5.0_f64.to_bits() + 1);
        let mut rng = Rng64::new(9);
        for _ in 0..100 {
            let v = rng.uniform(5.0, hi).unwrap();
            assert!(v == 5.0 || v == hi, "v = {v}");
            assert!((v - 5.0).abs() <= hi - 5.0);
        }
    }

    #[test]
    fn uniform_mean_matches_law_of_large_numbers() {
        let mut rng = Rng64::new(2024);
        let n = 100_000;
        let mean: f64 = (0..n).map(|_| rng.uniform(0.0, 1.0).unwrap()).sum::<f64>() / n as f64;
        assert!((mean - 0.5).abs() < 0.01, "mean = {mean}");
    }

    #[test]
    fn uniform_respects_bounds() {
        let mut rng = Rng64::new(7);
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for _ in 0..100_000 {
            let v = rng.uniform(-1.0, 1.0).unwrap();
            min = min.min(v);
            max = max.max(v);
        }
        assert!(min >= -1.0);
        assert!(max < 1.0);
    }

    #[test]
    fn uniform_invalid_range_errors() {
        let mut rng = Rng64::new(1);
        assert!(matches!(
            rng.uniform(1.0, 1.0),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            rng.uniform(2.0, 1.0),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn normal_zero_std_is_exact() {
        let mut rng = Rng64::new(5);
        for _ in 0..10 {
            assert_eq!(rng.normal(3.0, 0.0).unwrap(), 3.0);
        }
    }

    #[test]
    fn normal_negative_std_errors() {
        let mut rng = Rng64::new(5);
        assert!(matches!(
            rng.normal(0.0, -1.0),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn normal_moments() {
        let mut rng = Rng64::new(31415);
        let n = 100_000;
        let samples: Vec<f64> = (0..n).map(|_| rng.normal(0.0, 1.0).unwrap()).collect();
        let mean = samples.iter().sum::<f64>() / n as f64;
        let var = samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n as f64;
        let std = var.sqrt();
        assert!(mean.abs() < 0.02, "mean = {mean}");
        assert!((0.99..=1.01).contains(&std), "std = {std}");
    }

    #[test]
    fn normal_central_band_matches_gaussian_cdf() {
        let mut rng = Rng64::new(99);
        let n = 100_000;
        let inside = (0..n)
            .filter(|_| rng.normal(0.0, 1.0).unwrap().abs() <= 1.0)
            .count();
        let frac = inside as f64 / n as f64;
        assert!((frac - 0.6827).abs() < 0.01, "fraction = {frac}");
    }

    #[test]
    fn index_draws_stay_in_bounds() {
        let mut rng = Rng64::new(3);
        for _ in 0..10_000 {
            assert!(rng.index(17).unwrap() < 17);
        }
    }
}
