//! Exhaustive reliability oracle.
//!
//! Enumerates every working/failed state of the `m*` usable directed arcs and
//! sums the probabilities of the states in which the sink is reachable from
//! the source. Independent of minimal paths and of the augmented-vector
//! algebra.
//!
//! The state space is split on its top `split_bits` coordinates into
//! `2^split_bits` chunks; each chunk runs a BAT enumeration over the remaining
//! coordinates. Chunk sums are folded in chunk order, so the value does not
//! depend on whether chunks ran in parallel.

use std::time::Instant;

use crate::bat::bat_enumerate;
use crate::engines::{elapsed_ms, Method, ReliabilityReport};
use crate::error::{Error, Result};
use crate::exec::{map_indexed, Execution};
use crate::network::{Network, UsableDirection};

pub const DEFAULT_ORACLE_BUDGET: usize = 30;

#[derive(Debug, Clone, Copy)]
pub struct OracleOptions {
    /// Largest accepted `m*`.
    pub budget: usize,
    pub execution: Execution,
    pub split_bits: u32,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { budget: DEFAULT_ORACLE_BUDGET, execution: Execution::Parallel, split_bits: 6 }
    }
}

pub fn oracle_reliability(net: &Network) -> Result<ReliabilityReport> {
    oracle_reliability_with(net, OracleOptions::default())
}

pub fn oracle_reliability_with(net: &Network, opts: OracleOptions) -> Result<ReliabilityReport> {
    let start = Instant::now();
    let reduced = net.reduce_arcs();
    let m = reduced.m_star;
    if m > opts.budget.min(crate::bat::MAX_BAT_LEN) {
        return Err(Error::TooLarge { what: "usable directed arc count", found: m, limit: opts.budget });
    }
    let mut report = ReliabilityReport::new(Method::Oracle, 0);
    if m == 0 {
        report.elapsed_ms = elapsed_ms(start);
        return Ok(report);
    }

    let dirs = reduced.directions();
    let mut out_arcs = vec![Vec::new(); net.node_count() + 1];
    for (idx, d) in dirs.iter().enumerate() {
        out_arcs[d.tail].push(idx);
    }
    let high = (opts.split_bits as usize).min(m - 1);
    let low = m - high;
    let walker = Walker { net, dirs: &dirs, out_arcs: &out_arcs, low };

    let sums = map_indexed(1 << high, opts.execution, |chunk| walker.chunk_sum(chunk as u64));
    report.reliability = sums.iter().sum();
    report.elapsed_ms = elapsed_ms(start);
    Ok(report)
}

struct Walker<'a> {
    net: &'a Network,
    dirs: &'a [UsableDirection],
    out_arcs: &'a [Vec<usize>],
    low: usize,
}

impl Walker<'_> {
    fn chunk_sum(&self, chunk: u64) -> f64 {
        let m = self.dirs.len();
        let mut working = vec![false; m];
        for (b, w) in working[self.low..].iter_mut().enumerate() {
            *w = chunk >> b & 1 == 1;
        }
        let mut seen = vec![false; self.net.node_count() + 1];
        let mut stack = Vec::with_capacity(self.net.node_count());
        let mut sum = 0.0;
        bat_enumerate(self.low, |x| {
            working[..self.low].copy_from_slice(x.coords());
            if self.connected(&working, &mut seen, &mut stack) {
                sum += self
                    .dirs
                    .iter()
                    .zip(&working)
                    .map(|(d, &w)| if w { d.probability } else { 1.0 - d.probability })
                    .product::<f64>();
            }
        })
        .expect("low is in 1..=MAX_BAT_LEN");
        sum
    }

    fn connected(&self, working: &[bool], seen: &mut [bool], stack: &mut Vec<usize>) -> bool {
        seen.fill(false);
        stack.clear();
        let (source, sink) = (self.net.source(), self.net.sink());
        seen[source] = true;
        stack.push(source);
        while let Some(u) = stack.pop() {
            for &idx in &self.out_arcs[u] {
                if !working[idx] {
                    continue;
                }
                let v = self.dirs[idx].head;
                if v == sink {
                    return true;
                }
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        false
    }
}
