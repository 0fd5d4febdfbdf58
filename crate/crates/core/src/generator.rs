//! Seeded random networks.
//!
//! The random stream is SplitMix64 (Steele, Lea and Flood), chosen because it
//! is a few lines in any language and fully specified:
//!
//! ```text
//! state += 0x9E3779B97F4A7C15
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! return z ^ (z >> 31)                       (wrapping u64 arithmetic)
//! ```
//!
//! Derived draws:
//! * `unit()` = `(next() >> 11) * 2^-53`, in `[0, 1)`;
//! * `below(b)` = rejection sampling: draw `x` until `x < 2^64 - (2^64 mod b)`,
//!   return `x mod b`;
//! * a probability in `[lo, hi]` is `lo + (hi - lo) * unit()`, or `lo` when
//!   `lo == hi`.
//!
//! One attempt: list every pair `(i, j)`, `1 <= i < j <= n`, lexicographically;
//! run `arc_count` steps of a partial Fisher-Yates shuffle (step `t` swaps
//! position `t` with `t + below(len - t)`); take the first `arc_count` pairs
//! in that order, and for each one draw `p_fwd` then `p_bwd`. Source is node
//! 1, sink is node `n`. When connectivity is required, failed attempts
//! continue on the same stream.

use crate::error::{Error, Result};
use crate::network::{Network, UndirectedArc};

pub const MAX_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `0..bound`; `bound` must be positive.
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

    pub fn in_range(&mut self, (lo, hi): (f64, f64)) -> f64 {
        if lo == hi {
            lo
        } else {
            lo + (hi - lo) * self.unit()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub n: usize,
    pub arc_count: usize,
    pub prob_range_fwd: (f64, f64),
    pub prob_range_bwd: (f64, f64),
    pub seed: u64,
    pub require_connected: bool,
}

impl GeneratorConfig {
    pub fn new(n: usize, arc_count: usize, seed: u64) -> Self {
        GeneratorConfig {
            n,
            arc_count,
            prob_range_fwd: (0.0, 1.0),
            prob_range_bwd: (0.0, 1.0),
            seed,
            require_connected: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidConfig(format!("need at least 2 nodes, got {}", self.n)));
        }
        let max = self.n * (self.n - 1) / 2;
        if self.arc_count > max {
            return Err(Error::InvalidConfig(format!(
                "{} arcs requested but {} nodes allow at most {max}",
                self.arc_count, self.n
            )));
        }
        for (name, (lo, hi)) in [("forward", self.prob_range_fwd), ("backward", self.prob_range_bwd)] {
            if !(0.0 <= lo && lo <= hi && hi <= 1.0) {
                return Err(Error::InvalidConfig(format!("{name} range [{lo}, {hi}] is not within [0, 1]")));
            }
        }
        Ok(())
    }
}

pub fn generate(cfg: &GeneratorConfig) -> Result<Network> {
    cfg.validate()?;
    let mut rng = SplitMix64::new(cfg.seed);
    let attempts = if cfg.require_connected { MAX_ATTEMPTS } else { 1 };
    for _ in 0..attempts {
        let net = attempt(cfg, &mut rng)?;
        if !cfg.require_connected || net.terminals_connected() {
            return Ok(net);
        }
    }
    Err(Error::RetryBudgetExhausted(attempts))
}

fn attempt(cfg: &GeneratorConfig, rng: &mut SplitMix64) -> Result<Network> {
    let mut pairs: Vec<(usize, usize)> = (1..=cfg.n).flat_map(|i| (i + 1..=cfg.n).map(move |j| (i, j))).collect();
    let len = pairs.len();
    for t in 0..cfg.arc_count {
        let pick = t + rng.below((len - t) as u64) as usize;
        pairs.swap(t, pick);
    }
    let arcs = pairs[..cfg.arc_count]
        .iter()
        .map(|&(i, j)| {
            let p_fwd = rng.in_range(cfg.prob_range_fwd);
            let p_bwd = rng.in_range(cfg.prob_range_bwd);
            UndirectedArc::new(i, j, p_fwd, p_bwd)
        })
        .collect();
    Network::new(cfg.n, 1, cfg.n, arcs)
}
