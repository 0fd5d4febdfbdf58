//! Recursive BAT-based inclusion-exclusion (RIE).
//!
//! Terms are produced in BAT order without ever materializing the BAT
//! vectors: the stored list starts as `[∅, P1]`, and stage `i` appends
//! `T_k ∩ P_i` for every term `T_k` stored before the stage began. Each new
//! term costs one [`combine`] against its parent instead of a join over all
//! member paths, and its probability is the parent's times the newly covered
//! directions.
//!
//! A term whose vector equals the join of all paths is complete. Every
//! descendant of a complete term is complete too, and the descendants of a
//! term created at stage `i` are its unions with the subsets of
//! `{P_{i+1}, .., P_p}`. Their signs cancel unless `i = p`, so complete terms
//! created before the last stage are dropped together with their whole
//! subtree, and those created at the last stage contribute only through their
//! net sign times `Pr(full)`.

use std::fmt::Write as _;
use std::time::Instant;

use crate::augmented::{combine, vector_probability, AugmentedVector};
use crate::engines::{check_paths, elapsed_ms, IetTerm, Method, ReliabilityReport};
use crate::error::Result;
use crate::network::Network;
use crate::paths::DirectedMp;

/// How complete terms are treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CompleteTermRule {
    /// Drop complete terms created before the last stage with their subtree;
    /// fold last-stage complete terms into a net sign. Exact.
    #[default]
    CreationStage,
    /// Keep every term; plain recursive IET.
    Disabled,
    /// Drop every complete term unless the only one is the intersection of
    /// all paths. Matches the rule as usually stated; it is wrong when the
    /// complete family has several minimal generating subsets.
    OnlyFinalKept,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RieOptions {
    pub rule: CompleteTermRule,
    pub trace: bool,
}

/// One created term, stored or complete, as it appears in a trace.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    /// 1-based position in the stored-term list; `None` for complete terms.
    pub index: Option<usize>,
    /// 1-based stored index of the parent term (`T_k` in `T_k ∩ P_i`).
    pub parent: Option<usize>,
    /// 1-based index of the path joined at this stage.
    pub stage: usize,
    pub term: IetTerm,
    /// Running reliability after this row; `None` when nothing was added.
    pub running: Option<f64>,
    pub complete: bool,
}

#[derive(Debug, Clone)]
pub struct RieRun {
    pub report: ReliabilityReport,
    /// Stored terms in creation order, starting with `∅` and `P1`.
    pub terms: Vec<IetTerm>,
    pub trace: Vec<TraceRow>,
}

pub fn rie_reliability(net: &Network, mps: &[DirectedMp]) -> Result<ReliabilityReport> {
    rie_run(net, mps, RieOptions::default()).map(|run| run.report)
}

pub fn rie_run(net: &Network, mps: &[DirectedMp], opts: RieOptions) -> Result<RieRun> {
    let start = Instant::now();
    check_paths(net, mps)?;
    let p = mps.len();
    let mut report = ReliabilityReport::new(Method::Rie, p);
    let mut trace = Vec::new();
    let mut terms = vec![IetTerm::empty(net.arc_count())];
    if opts.trace {
        trace.push(TraceRow {
            index: Some(1),
            parent: None,
            stage: 0,
            term: terms[0].clone(),
            running: None,
            complete: false,
        });
    }
    let Some(first) = mps.first() else {
        report.elapsed_ms = elapsed_ms(start);
        return Ok(RieRun { report, terms, trace });
    };

    let full = mps.iter().try_fold(AugmentedVector::zeros(net.arc_count()), |acc, mp| acc.join(mp.augmented()))?;
    let full_prob = vector_probability(&full, net)?;

    let seed = IetTerm {
        vector: first.augmented().clone(),
        sign: 1,
        prob: vector_probability(first.augmented(), net)?,
        subset: 1,
    };
    let mut r = seed.prob;
    report.num_terms = 1;
    if opts.trace {
        trace.push(TraceRow {
            index: Some(2),
            parent: None,
            stage: 1,
            term: seed.clone(),
            running: Some(r),
            complete: false,
        });
    }
    terms.push(seed);

    let mut net_sign = 0i64;
    let mut complete_seen: Vec<IetTerm> = Vec::new();
    let last = p - 1;
    for (stage, mp) in mps.iter().enumerate().skip(1) {
        let stored = terms.len();
        for k in 0..stored {
            let parent = &terms[k];
            let (vector, factor) = combine(&parent.vector, mp.augmented(), net)?;
            let term = IetTerm {
                sign: -parent.sign,
                prob: parent.prob * factor,
                subset: parent.subset | (1 << stage),
                vector,
            };
            let complete = opts.rule != CompleteTermRule::Disabled && term.vector == full;
            if complete {
                // the term plus its 2^(p-1-stage) - 1 uncreated descendants
                report.complete_terms_discarded += 1u64 << (last - stage);
                match opts.rule {
                    CompleteTermRule::CreationStage if stage == last => {
                        net_sign += i64::from(term.sign);
                    }
                    CompleteTermRule::OnlyFinalKept => complete_seen.push(term.clone()),
                    _ => {}
                }
                if opts.trace {
                    trace.push(TraceRow {
                        index: None,
                        parent: Some(k + 1),
                        stage: stage + 1,
                        term,
                        running: None,
                        complete: true,
                    });
                }
                continue;
            }
            r += term.signed_prob();
            report.num_terms += 1;
            if opts.trace {
                trace.push(TraceRow {
                    index: Some(terms.len() + 1),
                    parent: Some(k + 1),
                    stage: stage + 1,
                    term: term.clone(),
                    running: Some(r),
                    complete: false,
                });
            }
            terms.push(term);
        }
    }

    match opts.rule {
        CompleteTermRule::CreationStage => r += net_sign as f64 * full_prob,
        CompleteTermRule::OnlyFinalKept => {
            let all = (1u64 << p) - 1;
            if let [only] = complete_seen.as_slice() {
                if only.subset == all {
                    r += only.signed_prob();
                    net_sign = i64::from(only.sign);
                }
            }
        }
        CompleteTermRule::Disabled => {}
    }

    report.reliability = r;
    report.complete_net_sign = net_sign;
    report.elapsed_ms = elapsed_ms(start);
    Ok(RieRun { report, terms, trace })
}

/// Plain-text table of a trace: index, MP subset, parent expression, vector,
/// probability, sign and running reliability.
pub fn render_trace(rows: &[TraceRow], num_mps: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>5}  {:<w$}  {:<12}  {:<w2$}  {:>12}  {:>4}  {:>12}",
        "i",
        "X_i",
        "T_i",
        "V*(T_i)",
        "Pr(T_i)",
        "S",
        "R",
        w = 3 * num_mps.max(1) + 1,
        w2 = rows.first().map_or(8, |r| 3 * r.term.vector.len().max(1) + 1),
    );
    for row in rows {
        let subset: Vec<String> = (0..num_mps.max(1)).map(|k| ((row.term.subset >> k) & 1).to_string()).collect();
        let expr = match (row.parent, row.stage) {
            (None, 0) => "T1".to_string(),
            (None, _) => "P1".to_string(),
            (Some(k), i) => format!("T{k}∩P{i}"),
        };
        let index = row.index.map_or("-".to_string(), |i| i.to_string());
        let running = match (row.complete, row.running) {
            (true, _) => "complete".to_string(),
            (false, Some(r)) => format!("{r:.10}"),
            (false, None) => String::new(),
        };
        let _ = writeln!(
            out,
            "{:>5}  {:<w$}  {:<12}  {:<w2$}  {:>12.10}  {:>4}  {:>12}",
            index,
            format!("({})", subset.join(",")),
            expr,
            row.term.vector.to_string(),
            row.term.prob,
            row.term.sign,
            running,
            w = 3 * num_mps.max(1) + 1,
            w2 = 3 * row.term.vector.len().max(1) + 1,
        );
    }
    out
}
