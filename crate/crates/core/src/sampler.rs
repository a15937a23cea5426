//! Chaos-game Monte Carlo oracle.
//!
//! Random iteration `x <- f_I(x)` with `I` drawn from the weight vector
//! converges in distribution to the stationary measure; the empirical CDFs
//! of two such streams give an estimate of W1 that is completely
//! independent of the staircase machinery. Streams are seeded and
//! deterministic so every reported number is reproducible bit for bit.

use std::io::Write as IoWrite;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ifs::{IfSystem, WeightVector};

/// Generator identifier stored with every sample set.
pub const ALGORITHM: &str = "chacha8";

/// Number of contiguous batches used for the batch-means standard error.
const BATCHES: usize = 16;

/// Sorted draw from a stationary measure.
#[derive(Debug, Clone)]
pub struct SampleSet {
    points: Vec<f64>,
    seed: u64,
    burn_in: usize,
    algorithm: &'static str,
}

impl SampleSet {
    /// Points in ascending order.
    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn burn_in(&self) -> usize {
        self.burn_in
    }

    pub fn algorithm(&self) -> &'static str {
        self.algorithm
    }

    pub fn mean(&self) -> f64 {
        self.points.iter().sum::<f64>() / self.points.len() as f64
    }

    /// Empirical CDF at `x`.
    pub fn ecdf(&self, x: f64) -> f64 {
        self.points.partition_point(|&v| v <= x) as f64 / self.points.len() as f64
    }

    /// Single-column CSV with comment lines recording the provenance.
    pub fn write_csv<W: IoWrite>(&self, mut out: W) -> Result<()> {
        writeln!(out, "# seed={}", self.seed)?;
        writeln!(out, "# burn_in={}", self.burn_in)?;
        writeln!(out, "# algorithm={}", self.algorithm)?;
        writeln!(out, "x")?;
        for p in &self.points {
            writeln!(out, "{p}")?;
        }
        Ok(())
    }
}

/// Runs the chaos game: `count` post-burn-in iterates of `x <- f_I(x)`
/// with `I ~ weights`, from a ChaCha8 stream seeded with `seed`.
pub fn chaos_game(
    system: &IfSystem,
    weights: &WeightVector,
    count: usize,
    burn_in: usize,
    seed: u64,
) -> Result<SampleSet> {
    if count == 0 {
        return Err(Error::Domain("sample count must be at least 1".into()));
    }
    if burn_in < 32 {
        return Err(Error::Domain("burn-in must be at least 32".into()));
    }
    if weights.len() != system.len() {
        return Err(Error::LengthMismatch(system.len(), weights.len()));
    }
    let p = weights.float();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = 0.5f64;
    let mut points = Vec::with_capacity(count);
    for step in 0..burn_in + count {
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        let mut index = system.len() - 1;
        for (i, &w) in p.iter().enumerate() {
            acc += w;
            if u < acc {
                index = i;
                break;
            }
        }
        x = system.map(index).evaluate(x)?;
        if step >= burn_in {
            points.push(x);
        }
    }
    points.sort_by(f64::total_cmp);
    Ok(SampleSet { points, seed, burn_in, algorithm: ALGORITHM })
}

/// W1 between two equal-count empirical measures: the mean absolute
/// difference of order statistics. The standard error comes from batch
/// means over sixteen contiguous blocks of the sorted differences.
pub fn w1_empirical(a: &SampleSet, b: &SampleSet) -> Result<(f64, f64)> {
    let n = a.len();
    if n != b.len() {
        return Err(Error::LengthMismatch(n, b.len()));
    }
    if n < BATCHES {
        return Err(Error::Domain(format!("need at least {BATCHES} samples")));
    }
    let diffs = a
        .points()
        .iter()
        .zip(b.points())
        .map(|(&x, &y)| (x - y).abs());

    let mut batch_means = [0.0f64; BATCHES];
    let mut batch_counts = [0usize; BATCHES];
    for (i, d) in diffs.enumerate() {
        let batch = (i * BATCHES / n).min(BATCHES - 1);
        batch_means[batch] += d;
        batch_counts[batch] += 1;
    }
    for (m, c) in batch_means.iter_mut().zip(batch_counts) {
        *m /= c as f64;
    }
    let weights: Vec<f64> = batch_counts.iter().map(|&c| c as f64 / n as f64).collect();
    let estimate: f64 = batch_means
        .iter()
        .zip(&weights)
        .map(|(m, w)| m * w)
        .sum();
    let mean_of_means = batch_means.iter().sum::<f64>() / BATCHES as f64;
    let var = batch_means
        .iter()
        .map(|m| (m - mean_of_means).powi(2))
        .sum::<f64>()
        / (BATCHES - 1) as f64;
    let std_error = (var / BATCHES as f64).sqrt();
    Ok((estimate, std_error))
}
