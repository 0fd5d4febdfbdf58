//! Reliability engines.
//!
//! * [`rie`]: recursive inclusion-exclusion over directed minimal paths with
//!   augmented vectors and complete-term elimination.
//! * [`bat_iet`]: non-recursive inclusion-exclusion, one BAT vector per MP
//!   subset, every term rebuilt from scratch.
//! * [`plain_iet`]: textbook inclusion-exclusion over explicit directed-arc
//!   sets; the all-terms baseline.
//! * [`oracle`]: exhaustive enumeration of directed-arc states.

pub mod bat_iet;
pub mod compare;
pub mod oracle;
pub mod plain_iet;
pub mod rie;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::augmented::AugmentedVector;
use crate::error::{Error, Result};
use crate::network::Network;
use crate::paths::{DirectedMp, MAX_PATHS};

pub use bat_iet::{bat_iet_reliability, bat_iet_terms};
pub use compare::{compare_batch, compare_engines, compare_engines_with, Comparison, AGREEMENT_TOLERANCE};
pub use oracle::{oracle_reliability, oracle_reliability_with, OracleOptions, DEFAULT_ORACLE_BUDGET};
pub use plain_iet::plain_iet_reliability;
pub use rie::{render_trace, rie_reliability, rie_run, CompleteTermRule, RieOptions, RieRun, TraceRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "rie")]
    Rie,
    #[serde(rename = "bat-iet")]
    BatIet,
    #[serde(rename = "iet")]
    PlainIet,
    #[serde(rename = "oracle")]
    Oracle,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Rie, Method::BatIet, Method::PlainIet, Method::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Method::Rie => "rie",
            Method::BatIet => "bat-iet",
            Method::PlainIet => "iet",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method `{s}` (expected rie, bat-iet, iet or oracle)"))
    }
}

/// One inclusion-exclusion term: the intersection of the MPs in `subset`.
#[derive(Debug, Clone, PartialEq)]
pub struct IetTerm {
    pub vector: AugmentedVector,
    /// `+1` for an odd number of intersected MPs, `-1` for even.
    pub sign: i8,
    pub prob: f64,
    /// Bit `k` set iff MP `k + 1` takes part.
    pub subset: u64,
}

impl IetTerm {
    pub fn empty(len: usize) -> Self {
        IetTerm { vector: AugmentedVector::zeros(len), sign: -1, prob: 1.0, subset: 0 }
    }

    pub fn signed_prob(&self) -> f64 {
        f64::from(self.sign) * self.prob
    }
}

/// Sign of an intersection of `count` paths.
pub fn subset_sign(count: u32) -> i8 {
    if count % 2 == 1 {
        1
    } else {
        -1
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReliabilityReport {
    pub method: Method,
    pub reliability: f64,
    pub num_mps: usize,
    pub num_terms: u64,
    pub complete_terms_discarded: u64,
    pub complete_net_sign: i64,
    pub elapsed_ms: f64,
}

impl ReliabilityReport {
    pub(crate) fn new(method: Method, num_mps: usize) -> Self {
        ReliabilityReport {
            method,
            reliability: 0.0,
            num_mps,
            num_terms: 0,
            complete_terms_discarded: 0,
            complete_net_sign: 0,
            elapsed_ms: 0.0,
        }
    }
}

/// Runs `method` on `net`; IET engines use `mps` in the given order.
pub fn compute(net: &Network, mps: &[DirectedMp], method: Method) -> Result<ReliabilityReport> {
    match method {
        Method::Rie => rie_reliability(net, mps),
        Method::BatIet => bat_iet_reliability(net, mps),
        Method::PlainIet => plain_iet_reliability(net, mps),
        Method::Oracle => oracle_reliability(net),
    }
}

/// Preconditions shared by the IET engines.
pub(crate) fn check_paths(net: &Network, mps: &[DirectedMp]) -> Result<()> {
    if mps.len() > MAX_PATHS {
        return Err(Error::TooLarge { what: "minimal path count", found: mps.len(), limit: MAX_PATHS });
    }
    let mut seen = HashSet::with_capacity(mps.len());
    for mp in mps {
        DirectedMp::from_arcs(net, mp.arcs().to_vec())?;
        if !seen.insert(mp.augmented()) {
            return Err(Error::DuplicatePath(mp.to_string()));
        }
    }
    Ok(())
}

pub(crate) fn elapsed_ms(start: std::time::Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}
