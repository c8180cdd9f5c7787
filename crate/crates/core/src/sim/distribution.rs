use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::{Error, Result};

/// Probabilities below this are dropped from a distribution's support.
pub const PRUNE_THRESHOLD: f64 = 1e-12;

const SUM_TOLERANCE: f64 = 1e-10;

/// A measurement outcome. Bit `k` holds the result of the `k`-th measured
/// qubit and is printed at position `k` (leftmost first).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bitstring {
    bits: u32,
    len: u8,
}

impl Bitstring {
    pub fn new(bits: u32, len: usize) -> Self {
        assert!(len <= 32, "bitstrings hold at most 32 bits");
        let mask = if len == 32 { u32::MAX } else { (1u32 << len) - 1 };
        Self {
            bits: bits & mask,
            len: len as u8,
        }
    }

    pub fn zeros(len: usize) -> Self {
        Self::new(0, len)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bit(&self, k: usize) -> bool {
        (self.bits >> k) & 1 == 1
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// `true` for an even number of ones.
    pub fn has_even_parity(&self) -> bool {
        self.weight() % 2 == 0
    }

    pub fn flip(self, k: usize) -> Self {
        Self::new(self.bits ^ (1 << k), self.len())
    }

    pub fn xor_mask(self, mask: u32) -> Self {
        Self::new(self.bits ^ mask, self.len())
    }

    /// The first `len` bits.
    pub fn truncate(self, len: usize) -> Self {
        Self::new(self.bits, len.min(self.len()))
    }

    /// Picks bits at `positions`, in that order.
    pub fn select(self, positions: &[usize]) -> Self {
        let bits = positions
            .iter()
            .enumerate()
            .fold(0u32, |acc, (k, &p)| acc | (((self.bits >> p) & 1) << k));
        Self::new(bits, positions.len())
    }

    /// Exchanges bits `a` and `b`.
    pub fn swap_bits(self, a: usize, b: usize) -> Self {
        if self.bit(a) == self.bit(b) {
            self
        } else {
            self.flip(a).flip(b)
        }
    }

    fn display_key(&self) -> u32 {
        // lexicographic order of the printed string
        if self.len == 0 {
            0
        } else {
            self.bits.reverse_bits() >> (32 - self.len as u32)
        }
    }
}

impl Ord for Bitstring {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.display_key().cmp(&other.display_key()))
    }
}

impl PartialOrd for Bitstring {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.len() {
            f.write_str(if self.bit(k) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Bitstring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.len() > 32 {
            return Err(Error::InvalidArgument(format!("bitstring {s:?} longer than 32")));
        }
        let mut bits = 0u32;
        for (k, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << k,
                _ => return Err(Error::InvalidArgument(format!("bad bitstring {s:?}"))),
            }
        }
        Ok(Self::new(bits, s.chars().count()))
    }
}

/// Exact probabilities over fixed-width outcomes. Entries below
/// [`PRUNE_THRESHOLD`] are not stored.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeDistribution {
    width: usize,
    probs: BTreeMap<Bitstring, f64>,
}

impl OutcomeDistribution {
    /// From a dense vector indexed by outcome value.
    pub fn from_dense(width: usize, dense: &[f64]) -> Result<Self> {
        if dense.len() != 1usize << width {
            return Err(Error::Distribution(format!(
                "dense vector of length {} for width {width}",
                dense.len()
            )));
        }
        Self::from_pairs(
            width,
            dense
                .iter()
                .enumerate()
                .map(|(i, &p)| (Bitstring::new(i as u32, width), p)),
        )
    }

    pub fn from_pairs<I>(width: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Bitstring, f64)>,
    {
        let mut probs = BTreeMap::new();
        let mut total = 0.0;
        for (key, p) in pairs {
            if key.len() != width {
                return Err(Error::Width {
                    expected: width,
                    got: key.len(),
                });
            }
            if !p.is_finite() || !(-PRUNE_THRESHOLD..=1.0 + SUM_TOLERANCE).contains(&p) {
                return Err(Error::Distribution(format!("probability {p} for {key}")));
            }
            total += p;
            if p >= PRUNE_THRESHOLD {
                *probs.entry(key).or_insert(0.0) += p;
            }
        }
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::Distribution(format!("probabilities sum to {total}")));
        }
        Ok(Self { width, probs })
    }

    /// Convenience for tests and fixtures: `[("0000", 0.5), ("1111", 0.5)]`.
    pub fn from_strs(pairs: &[(&str, f64)]) -> Result<Self> {
        let width = pairs.first().map(|(s, _)| s.len()).unwrap_or(0);
        let parsed = pairs
            .iter()
            .map(|(s, p)| Ok((s.parse::<Bitstring>()?, *p)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_pairs(width, parsed)
    }

    /// Equal weight on every given outcome.
    pub fn uniform_over(width: usize, support: &[Bitstring]) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::Distribution("empty support".into()));
        }
        let p = 1.0 / support.len() as f64;
        Self::from_pairs(width, support.iter().map(|&b| (b, p)))
    }

    /// Equal weight on all `2^width` outcomes.
    pub fn uniform(width: usize) -> Self {
        let d = 1usize << width;
        Self::from_dense(width, &vec![1.0 / d as f64; d]).expect("uniform is a distribution")
    }

    /// A point mass.
    pub fn point(outcome: Bitstring) -> Self {
        let mut probs = BTreeMap::new();
        probs.insert(outcome, 1.0);
        Self {
            width: outcome.len(),
            probs,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, outcome: &Bitstring) -> f64 {
        self.probs.get(outcome).copied().unwrap_or(0.0)
    }

    /// Looks up by printed form; unknown or malformed strings give 0.
    pub fn prob(&self, outcome: &str) -> f64 {
        outcome.parse().map(|b| self.get(&b)).unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Bitstring, f64)> + '_ {
        self.probs.iter().map(|(&k, &v)| (k, v))
    }

    pub fn support(&self) -> impl Iterator<Item = Bitstring> + '_ {
        self.probs.keys().copied()
    }

    pub fn support_size(&self) -> usize {
        self.probs.len()
    }

    /// Dense vector indexed by outcome value.
    pub fn to_dense(&self) -> Vec<f64> {
        let mut dense = vec![0.0; 1usize << self.width];
        for (k, p) in self.iter() {
            dense[k.bits() as usize] = p;
        }
        dense
    }

    /// Cumulative sums in outcome-value order, used for inverse-CDF sampling.
    pub fn cdf(&self) -> Vec<f64> {
        let mut acc = 0.0;
        self.to_dense()
            .into_iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect()
    }

    /// Marginal over the bit positions listed, in that order.
    pub fn marginal(&self, positions: &[usize]) -> Result<Self> {
        if let Some(&p) = positions.iter().find(|&&p| p >= self.width) {
            return Err(Error::Width {
                expected: self.width,
                got: p + 1,
            });
        }
        Self::from_pairs(
            positions.len(),
            self.iter().map(|(k, p)| (k.select(positions), p)),
        )
    }

    /// Pushes each outcome through `f` and sums the mass that lands together.
    pub fn map_outcomes<F>(&self, width: usize, f: F) -> Result<Self>
    where
        F: Fn(Bitstring) -> Bitstring,
    {
        Self::from_pairs(width, self.iter().map(|(k, p)| (f(k), p)))
    }

    /// Keeps outcomes satisfying `keep`, renormalized. Returns the retained
    /// distribution (`None` when nothing survives) and the retained mass.
    pub fn condition<F>(&self, keep: F) -> (Option<Self>, f64)
    where
        F: Fn(Bitstring) -> bool,
    {
        let kept: Vec<_> = self.iter().filter(|(k, _)| keep(*k)).collect();
        let mass = kept.iter().fold(0.0, |acc, (_, p)| acc + p);
        if mass < PRUNE_THRESHOLD {
            return (None, mass);
        }
        let probs = kept
            .into_iter()
            .map(|(k, p)| (k, p / mass))
            .filter(|(_, p)| *p >= PRUNE_THRESHOLD)
            .collect();
        (
            Some(Self {
                width: self.width,
                probs,
            }),
            mass,
        )
    }

    /// Componentwise comparison within `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.width == other.width
            && self
                .probs
                .keys()
                .chain(other.probs.keys())
                .all(|k| (self.get(k) - other.get(k)).abs() <= tol)
    }
}

impl fmt::Display for OutcomeDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, p)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}: {p:.6}")?;
        }
        f.write_str("}")
    }
}

/// Sampled outcome counts; `total` is the number of shots `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShotCounts {
    width: usize,
    counts: BTreeMap<Bitstring, u64>,
    total: u64,
}

impl ShotCounts {
    pub fn new(width: usize) -> Self {
        Self {
            width,
            counts: BTreeMap::new(),
            total: 0,
        }
    }

    pub fn from_pairs<I>(width: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Bitstring, u64)>,
    {
        let mut counts = Self::new(width);
        for (k, n) in pairs {
            counts.add(k, n)?;
        }
        Ok(counts)
    }

    pub fn from_strs(pairs: &[(&str, u64)]) -> Result<Self> {
        let width = pairs.first().map(|(s, _)| s.len()).unwrap_or(0);
        let parsed = pairs
            .iter()
            .map(|(s, n)| Ok((s.parse::<Bitstring>()?, *n)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_pairs(width, parsed)
    }

    /// Dense count vector indexed by outcome value.
    pub fn from_dense(width: usize, dense: &[u64]) -> Self {
        let mut counts = Self::new(width);
        for (i, &n) in dense.iter().enumerate() {
            if n > 0 {
                counts
                    .add(Bitstring::new(i as u32, width), n)
                    .expect("width matches");
            }
        }
        counts
    }

    pub fn add(&mut self, outcome: Bitstring, n: u64) -> Result<()> {
        if outcome.len() != self.width {
            return Err(Error::Width {
                expected: self.width,
                got: outcome.len(),
            });
        }
        if n > 0 {
            *self.counts.entry(outcome).or_insert(0) += n;
            self.total += n;
        }
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn get(&self, outcome: &Bitstring) -> u64 {
        self.counts.get(outcome).copied().unwrap_or(0)
    }

    pub fn count(&self, outcome: &str) -> u64 {
        outcome.parse().map(|b| self.get(&b)).unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Bitstring, u64)> + '_ {
        self.counts.iter().map(|(&k, &v)| (k, v))
    }

    /// Relative frequencies; `None` when no shots were recorded.
    pub fn to_distribution(&self) -> Option<OutcomeDistribution> {
        if self.total == 0 {
            return None;
        }
        let r = self.total as f64;
        Some(
            OutcomeDistribution::from_pairs(
                self.width,
                self.iter().map(|(k, n)| (k, n as f64 / r)),
            )
            .expect("frequencies form a distribution"),
        )
    }
}

/// Independent random stream for shot `shot` under master `seed`.
///
/// The master seed keys a ChaCha8 generator and the shot index selects its
/// stream, so every shot draws the same numbers however shots are scheduled
/// across threads.
pub fn shot_rng(seed: u64, shot: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shot);
    rng
}

/// Inverse-CDF lookup for `u` in `[0, 1)`; never returns an index whose
/// probability is zero unless the whole CDF is.
pub fn sample_index(cdf: &[f64], u: f64) -> usize {
    let total = *cdf.last().expect("non-empty cdf");
    let target = u * total;
    let idx = cdf.partition_point(|&c| c <= target);
    if idx < cdf.len() {
        idx
    } else {
        // rounding left target at the top; fall back to the last outcome with mass
        (0..cdf.len())
            .rev()
            .find(|&i| i == 0 || cdf[i] > cdf[i - 1])
            .unwrap_or(0)
    }
}

pub(crate) const SHOT_CHUNK: u64 = 4096;

/// Runs `per_shot` for shots `0..shots` in parallel chunks and tallies the
/// returned outcome values into a dense count vector.
pub(crate) fn tally_shots<F>(width: usize, shots: u64, per_shot: F) -> Vec<u64>
where
    F: Fn(u64) -> usize + Sync,
{
    let dim = 1usize << width;
    let n_chunks = shots.div_ceil(SHOT_CHUNK);
    (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let mut local = vec![0u64; dim];
            let start = c * SHOT_CHUNK;
            let end = (start + SHOT_CHUNK).min(shots);
            for shot in start..end {
                local[per_shot(shot)] += 1;
            }
            local
        })
        .reduce(
            || vec![0u64; dim],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

/// Multinomial sample of `shots` outcomes from `dist`, reproducible for a
/// fixed `seed`.
pub fn sample_counts(dist: &OutcomeDistribution, shots: u64, seed: u64) -> Result<ShotCounts> {
    if shots == 0 {
        return Err(Error::InvalidArgument("shots must be at least 1".into()));
    }
    let cdf = dist.cdf();
    let dense = tally_shots(dist.width(), shots, |shot| {
        let u: f64 = shot_rng(seed, shot).gen();
        sample_index(&cdf, u)
    });
    Ok(ShotCounts::from_dense(dist.width(), &dense))
}
