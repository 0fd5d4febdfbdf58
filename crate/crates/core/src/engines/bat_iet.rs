//! Non-recursive BAT-based inclusion-exclusion.
//!
//! Coordinate `k` of the BAT vector says whether directed MP `k + 1` takes
//! part in the term. Each of the `2^p - 1` nonempty terms is rebuilt by
//! joining its member paths from scratch.

use std::time::Instant;

use crate::augmented::{vector_probability, AugmentedVector};
use crate::bat::{bat_enumerate, BatVector};
use crate::engines::{check_paths, elapsed_ms, subset_sign, IetTerm, Method, ReliabilityReport};
use crate::error::Result;
use crate::network::Network;
use crate::paths::DirectedMp;

/// Visits every nonempty term in BAT order.
pub fn bat_iet_terms(net: &Network, mps: &[DirectedMp], mut visit: impl FnMut(&BatVector, &IetTerm)) -> Result<u64> {
    check_paths(net, mps)?;
    if mps.is_empty() {
        return Ok(0);
    }
    let mut failure = None;
    let mut visited = 0;
    bat_enumerate(mps.len(), |x| {
        if failure.is_some() {
            return;
        }
        let subset = x.to_mask();
        if subset == 0 {
            return;
        }
        let mut vector = AugmentedVector::zeros(net.arc_count());
        for (k, mp) in mps.iter().enumerate() {
            if x.get(k) {
                vector = vector.join(mp.augmented()).expect("paths checked against net");
            }
        }
        match vector_probability(&vector, net) {
            Ok(prob) => {
                let term = IetTerm { sign: subset_sign(subset.count_ones()), prob, subset, vector };
                visited += 1;
                visit(x, &term);
            }
            Err(e) => failure = Some(e),
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(visited),
    }
}

pub fn bat_iet_reliability(net: &Network, mps: &[DirectedMp]) -> Result<ReliabilityReport> {
    let start = Instant::now();
    let mut report = ReliabilityReport::new(Method::BatIet, mps.len());
    let mut r = 0.0;
    report.num_terms = bat_iet_terms(net, mps, |_, term| r += term.signed_prob())?;
    report.reliability = r;
    report.elapsed_ms = elapsed_ms(start);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::directed_mps;

    #[test]
    fn single_path_is_its_own_probability() {
        let net = Network::parse("nodes 3\nsource 1\nsink 3\narc 1 2 .7 .5\narc 2 3 .6 .4\n").unwrap();
        let mps = directed_mps(&net).unwrap();
        let report = bat_iet_reliability(&net, &mps).unwrap();
        assert!((report.reliability - 0.42).abs() < 1e-15);
        assert_eq!(report.num_terms, 1);
    }

    #[test]
    fn first_terms_of_fig1() {
        let net = Network::parse(include_str!("../../data/fig1.net")).unwrap();
        let mps = directed_mps(&net).unwrap();
        let mut rows = Vec::new();
        bat_iet_terms(&net, &mps, |x, t| rows.push((x.bits(), t.sign, t.prob))).unwrap();
        assert_eq!(rows.len(), 15);
        assert_eq!(rows[0].0, vec![1, 0, 0, 0]);
        assert_eq!(rows[0].1, 1);
        assert!((rows[0].2 - 0.81).abs() < 1e-12);
    }
}
