//! Side-by-side runs of all four engines.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::engines::{
    bat_iet_reliability, oracle_reliability_with, plain_iet_reliability, rie_reliability, OracleOptions,
    ReliabilityReport,
};
use crate::error::{Error, Result};
use crate::exec::{map_items, Execution};
use crate::network::Network;
use crate::paths::{directed_mps, DirectedMp};

/// Largest accepted pairwise difference between engines.
pub const AGREEMENT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub reports: Vec<ReliabilityReport>,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub agreed: bool,
}

impl Comparison {
    pub fn from_reports(reports: Vec<ReliabilityReport>, tolerance: f64) -> Self {
        let values: Vec<f64> = reports.iter().map(|r| r.reliability).collect();
        let max_deviation = values.iter().flat_map(|a| values.iter().map(move |b| (a - b).abs())).fold(0.0, f64::max);
        let agreed = values.iter().all(|v| v.is_finite()) && max_deviation <= tolerance;
        Comparison { reports, max_deviation, tolerance, agreed }
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<8} {:>14} {:>6} {:>12} {:>10} {:>5} {:>12}",
            "method", "reliability", "p", "terms", "complete", "sign", "elapsed_ms"
        )?;
        for r in &self.reports {
            writeln!(
                f,
                "{:<8} {:>14.10} {:>6} {:>12} {:>10} {:>5} {:>12.3}",
                r.method.name(),
                r.reliability,
                r.num_mps,
                r.num_terms,
                r.complete_terms_discarded,
                r.complete_net_sign,
                r.elapsed_ms
            )?;
        }
        write!(
            f,
            "max deviation {:.3e} ({} tolerance {:.0e})",
            self.max_deviation,
            if self.agreed { "within" } else { "beyond" },
            self.tolerance
        )
    }
}

/// Runs all engines with enumerated paths in default order.
pub fn compare_engines(net: &Network) -> Result<Comparison> {
    let mps = directed_mps(net)?;
    compare_engines_with(net, &mps, OracleOptions::default())
}

/// Runs all engines; fails with [`Error::Disagreement`] if any pair differs by
/// more than [`AGREEMENT_TOLERANCE`].
pub fn compare_engines_with(net: &Network, mps: &[DirectedMp], oracle: OracleOptions) -> Result<Comparison> {
    let reports = vec![
        rie_reliability(net, mps)?,
        bat_iet_reliability(net, mps)?,
        plain_iet_reliability(net, mps)?,
        oracle_reliability_with(net, oracle)?,
    ];
    let cmp = Comparison::from_reports(reports, AGREEMENT_TOLERANCE);
    if cmp.agreed {
        Ok(cmp)
    } else {
        Err(Error::Disagreement(Box::new(cmp)))
    }
}

/// Compares engines on many instances; instances are spread over threads
/// under [`Execution::Parallel`], each oracle runs sequentially.
pub fn compare_batch(nets: &[Network], exec: Execution) -> Vec<Result<Comparison>> {
    let oracle = OracleOptions { execution: Execution::Sequential, ..Default::default() };
    map_items(nets, exec, |net| {
        let mps = directed_mps(net)?;
        compare_engines_with(net, &mps, oracle)
    })
}
