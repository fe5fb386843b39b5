//! Seeded sampling. Every draw comes from ChaCha8 (the `rand_chacha`
//! block function, a 64-bit counter-based generator) keyed by
//! `seed_from_u64(seed)`, with independent streams selected by stream id.
//! Integers below a bound use rejection on the top of the 64-bit range, so
//! results are identical across platforms.

use crate::linalg::IntMatrix;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use super::Graph;

/// One ChaCha8 stream.
pub struct SeededStream(ChaCha8Rng);

impl SeededStream {
    pub fn new(seed: u64, stream: u64) -> SeededStream {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        SeededStream(rng)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `0..bound`, `bound > 0`.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let zone = u64::MAX - (u64::MAX - bound + 1) % bound;
        loop {
            let x = self.next_u64();
            if x <= zone {
                return x % bound;
            }
        }
    }

    /// `true` with probability exactly `num/den` up to the 2⁻⁶⁴ grid.
    pub fn bernoulli(&mut self, p: &BigRational) -> bool {
        let x = BigInt::from(self.next_u64());
        x * p.denom() < p.numer() * (BigInt::one() << 64)
    }
}

/// Finitely supported measure on ℤ with rational weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDistribution {
    pub support: Vec<i64>,
    /// Decimal `p/q` strings in the serialized form.
    #[serde(with = "crate::serde_util::rationals")]
    pub weights: Vec<BigRational>,
    pub seed: u64,
}

impl EntryDistribution {
    pub fn new(support: Vec<i64>, weights: Vec<BigRational>, seed: u64) -> Result<EntryDistribution> {
        if support.is_empty() || support.len() != weights.len() {
            return Err(Error::InvalidInput("support and weights must be nonempty and of equal length".into()));
        }
        if weights.iter().any(|w| !w.is_positive()) {
            return Err(Error::InvalidInput("weights must be positive".into()));
        }
        if weights.iter().sum::<BigRational>() != BigRational::one() {
            return Err(Error::InvalidInput("weights must sum to 1".into()));
        }
        let lcm = weights.iter().fold(BigInt::one(), |l, w| l.lcm(w.denom()));
        if lcm.to_u64().is_none() {
            return Err(Error::InvalidInput("weight denominators exceed 64 bits".into()));
        }
        Ok(EntryDistribution { support, weights, seed })
    }

    /// Uniform on `lo..=hi`.
    pub fn uniform(lo: i64, hi: i64, seed: u64) -> EntryDistribution {
        assert!(lo <= hi, "empty range");
        let k = (hi - lo + 1) as usize;
        let w = BigRational::new(BigInt::one(), BigInt::from(k));
        EntryDistribution { support: (lo..=hi).collect(), weights: vec![w; k], seed }
    }

    /// Integer thresholds over the common denominator.
    fn cumulative(&self) -> (u64, Vec<u64>) {
        let lcm = self.weights.iter().fold(BigInt::one(), |l, w| l.lcm(w.denom()));
        let mut acc = BigInt::zero();
        let cuts = self
            .weights
            .iter()
            .map(|w| {
                acc += w.numer() * (&lcm / w.denom());
                acc.to_u64().expect("bounded by the denominator")
            })
            .collect();
        (lcm.to_u64().expect("validated"), cuts)
    }

    fn draw(&self, rng: &mut SeededStream, total: u64, cuts: &[u64]) -> i64 {
        let r = rng.below(total);
        let k = cuts.iter().position(|&c| r < c).expect("cuts end at the total");
        self.support[k]
    }
}

/// `G(n, p)`: each pair `i < j` in lexicographic order, one draw each.
pub fn sample_er(n: usize, p: &BigRational, seed: u64) -> Graph {
    assert!(!p.is_negative() && *p <= BigRational::one(), "p must lie in [0, 1]");
    let mut rng = SeededStream::new(seed, 0);
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if rng.bernoulli(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, edges, false).expect("sampled edges are valid")
}

/// `n × n` matrix with i.i.d. entries, row-major draw order.
pub fn sample_matrix(n: usize, dist: &EntryDistribution) -> IntMatrix {
    let mut rng = SeededStream::new(dist.seed, 1);
    let (total, cuts) = dist.cumulative();
    let data = (0..n * n).map(|_| BigInt::from(dist.draw(&mut rng, total, &cuts))).collect();
    IntMatrix::new(n, n, data).expect("dimensions match")
}

/// Symmetric matrix: the upper triangle (with diagonal) drawn row by row.
pub fn sample_symmetric_matrix(n: usize, dist: &EntryDistribution) -> IntMatrix {
    let mut rng = SeededStream::new(dist.seed, 2);
    let (total, cuts) = dist.cumulative();
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = BigInt::from(dist.draw(&mut rng, total, &cuts));
            m.set(i, j, v.clone());
            m.set(j, i, v);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn extreme_probabilities() {
        assert_eq!(sample_er(6, &q(0, 1), 3).edge_count(), 0);
        assert_eq!(sample_er(6, &q(1, 1), 3), Graph::complete(6));
    }

    #[test]
    fn golden_er_sample() {
        let g = sample_er(8, &q(1, 2), 1);
        assert_eq!(g.to_edge_list(), include_str!("../../fixtures/er_8_half_seed1.edges"));
    }

    #[test]
    fn reproducible_and_seed_sensitive() {
        let d = EntryDistribution::uniform(-10, 10, 42);
        assert_eq!(sample_matrix(5, &d), sample_matrix(5, &d));
        assert_ne!(sample_matrix(5, &d), sample_matrix(5, &EntryDistribution { seed: 43, ..d.clone() }));
        assert!(sample_symmetric_matrix(5, &d).is_symmetric());
    }

    #[test]
    fn weights_are_validated() {
        assert!(EntryDistribution::new(vec![0, 1], vec![q(1, 2), q(1, 3)], 0).is_err());
        assert!(EntryDistribution::new(vec![0, 1], vec![q(1, 2), q(1, 2)], 0).is_ok());
        assert!(EntryDistribution::new(vec![0, 1], vec![q(0, 1), q(1, 1)], 0).is_err());
    }

    #[test]
    fn draws_follow_weights() {
        let d = EntryDistribution::new(vec![0, 1], vec![q(1, 4), q(3, 4)], 9).unwrap();
        let m = sample_matrix(40, &d);
        let ones = (0..40).flat_map(|i| (0..40).map(move |j| (i, j))).filter(|&(i, j)| m.get(i, j).is_one()).count();
        let frac = ones as f64 / 1600.0;
        assert!((frac - 0.75).abs() < 0.05, "{frac}");
    }

    #[test]
    fn below_is_in_range() {
        let mut s = SeededStream::new(5, 0);
        for b in [1u64, 2, 3, 21, u64::MAX] {
            for _ in 0..100 {
                assert!(s.below(b) < b);
            }
        }
    }
}
