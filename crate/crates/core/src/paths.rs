//! Minimal paths: exhaustive enumeration and orientation.
//!
//! With perfect nodes and no parallel arcs, the minimal paths between the
//! terminals are exactly the simple paths. Each one is oriented from the
//! source by walking its arc set, so no arc is ever doubled.

use std::collections::HashSet;
use std::fmt;

use crate::augmented::AugmentedVector;
use crate::error::{Error, Result};
use crate::network::{Direction, Network};

/// Limit on the number of minimal paths an IET engine accepts; subsets are
/// tracked as `u64` bitmasks.
pub const MAX_PATHS: usize = 62;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UndirectedMp {
    nodes: Vec<usize>,
    /// Arc coordinates between consecutive nodes.
    arcs: Vec<usize>,
}

impl UndirectedMp {
    /// Validates a node sequence as a simple source-to-sink path of `net`.
    pub fn from_nodes(net: &Network, nodes: Vec<usize>) -> Result<Self> {
        let label = join_nodes(&nodes);
        if nodes.first() != Some(&net.source()) || nodes.last() != Some(&net.sink()) {
            return Err(Error::InvalidPath(format!(
                "{label} does not run from node {} to node {}",
                net.source(),
                net.sink()
            )));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = nodes.iter().find(|&&v| !seen.insert(v)) {
            return Err(Error::InvalidPath(format!("{label} visits node {dup} twice")));
        }
        let arcs = nodes
            .windows(2)
            .map(|w| net.arc_coordinate(w[0], w[1]))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::InvalidPath(format!("{label}: {e}")))?;
        Ok(UndirectedMp { nodes, arcs })
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn arcs(&self) -> &[usize] {
        &self.arcs
    }
}

impl fmt::Display for UndirectedMp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_nodes(&self.nodes))
    }
}

fn join_nodes(nodes: &[usize]) -> String {
    nodes.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("-")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DirectedArc {
    pub tail: usize,
    pub head: usize,
}

impl fmt::Display for DirectedArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e({},{})", self.tail, self.head)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DirectedMp {
    arcs: Vec<DirectedArc>,
    augmented: AugmentedVector,
}

impl DirectedMp {
    /// Builds a directed path from its arc sequence, checking that it chains
    /// from source to sink over arcs of `net` without reusing an arc.
    pub fn from_arcs(net: &Network, arcs: Vec<DirectedArc>) -> Result<Self> {
        let mut at = net.source();
        for a in &arcs {
            if a.tail != at {
                return Err(Error::InvalidPath(format!("{a} does not continue from node {at}")));
            }
            at = a.head;
        }
        if at != net.sink() || arcs.is_empty() {
            return Err(Error::InvalidPath(format!("path ends at node {at}, not the sink")));
        }
        let augmented = mp_to_augmented(&arcs, net)?;
        if augmented.states().contains(&3) {
            return Err(Error::InvalidPath("an arc is used in both directions".to_string()));
        }
        let used = augmented.states().iter().filter(|&&s| s != 0).count();
        if used != arcs.len() {
            return Err(Error::InvalidPath("an arc is used twice".to_string()));
        }
        Ok(DirectedMp { arcs, augmented })
    }

    pub fn arcs(&self) -> &[DirectedArc] {
        &self.arcs
    }

    pub fn augmented(&self) -> &AugmentedVector {
        &self.augmented
    }

    pub fn nodes(&self) -> Vec<usize> {
        let mut nodes = Vec::with_capacity(self.arcs.len() + 1);
        if let Some(first) = self.arcs.first() {
            nodes.push(first.tail);
        }
        nodes.extend(self.arcs.iter().map(|a| a.head));
        nodes
    }
}

impl fmt::Display for DirectedMp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, a) in self.arcs.iter().enumerate() {
            if idx > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Every simple source-to-sink path, in depth-first discovery order.
///
/// At each node the sink is tried first when adjacent, then the remaining
/// neighbors in ascending id order. On the bridge network this gives
/// 1-2-4, 1-2-3-4, 1-3-4, 1-3-2-4.
pub fn enumerate_undirected_mps(net: &Network) -> Vec<UndirectedMp> {
    let adj: Vec<Vec<(usize, usize)>> = net
        .adjacency()
        .into_iter()
        .map(|mut list| {
            // stable: sink first, rest keep ascending order
            list.sort_by_key(|&(v, _)| v != net.sink());
            list
        })
        .collect();

    let mut out = Vec::new();
    let mut on_path = vec![false; net.node_count() + 1];
    let mut nodes = vec![net.source()];
    let mut arcs = Vec::new();
    on_path[net.source()] = true;
    dfs(net, &adj, &mut on_path, &mut nodes, &mut arcs, &mut out);
    out
}

fn dfs(
    net: &Network,
    adj: &[Vec<(usize, usize)>],
    on_path: &mut [bool],
    nodes: &mut Vec<usize>,
    arcs: &mut Vec<usize>,
    out: &mut Vec<UndirectedMp>,
) {
    let u = *nodes.last().expect("path always holds the source");
    for &(v, coord) in &adj[u] {
        if on_path[v] {
            continue;
        }
        nodes.push(v);
        arcs.push(coord);
        if v == net.sink() {
            out.push(UndirectedMp { nodes: nodes.clone(), arcs: arcs.clone() });
        } else {
            on_path[v] = true;
            dfs(net, adj, on_path, nodes, arcs, out);
            on_path[v] = false;
        }
        nodes.pop();
        arcs.pop();
    }
}

/// One step of orienting an undirected path: the arc at `coordinate` is
/// entered at `from` and left at `to`; `partial` is the directed path so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionStep {
    pub from: usize,
    pub to: usize,
    pub coordinate: usize,
    pub partial: Vec<DirectedArc>,
}

/// Orients the arcs of `q` from the source, recording every step.
///
/// The path is treated as an arc set: from the current node, the unique unused
/// arc of `q` incident to it is taken and oriented away from that node.
pub fn direct_mp_steps(q: &UndirectedMp, net: &Network) -> Result<Vec<DirectionStep>> {
    let mut remaining: Vec<usize> = q.arcs.clone();
    let mut at = net.source();
    let mut partial = Vec::with_capacity(remaining.len());
    let mut steps = Vec::with_capacity(remaining.len());
    while !remaining.is_empty() {
        let pos = remaining
            .iter()
            .position(|&c| net.arcs()[c].other(at).is_some())
            .ok_or_else(|| Error::InvalidPath(format!("no arc of {q} leaves node {at}")))?;
        let coordinate = remaining.swap_remove(pos);
        let to = net.arcs()[coordinate].other(at).expect("arc is incident");
        partial.push(DirectedArc { tail: at, head: to });
        steps.push(DirectionStep { from: at, to, coordinate, partial: partial.clone() });
        at = to;
    }
    if at != net.sink() {
        return Err(Error::InvalidPath(format!("{q} does not end at the sink")));
    }
    Ok(steps)
}

pub fn direct_mp(q: &UndirectedMp, net: &Network) -> Result<DirectedMp> {
    let arcs = direct_mp_steps(q, net)?.pop().map(|s| s.partial).unwrap_or_default();
    DirectedMp::from_arcs(net, arcs)
}

/// Augmented vector of a directed arc list: `1` on arcs used forward, `2` on
/// arcs used backward, `0` elsewhere.
pub fn mp_to_augmented(arcs: &[DirectedArc], net: &Network) -> Result<AugmentedVector> {
    let mut v = AugmentedVector::zeros(net.arc_count());
    for a in arcs {
        let (coord, dir) = net.directed_coordinate(a.tail, a.head)?;
        v.set(coord, dir);
    }
    Ok(v)
}

/// Enumerates and orients every minimal path of `net`.
pub fn directed_mps(net: &Network) -> Result<Vec<DirectedMp>> {
    enumerate_undirected_mps(net).iter().map(|q| direct_mp(q, net)).collect()
}

/// Parses a path-order file: one path per line as space-separated node ids,
/// `#` comments allowed. Paths are validated against `net` and must be
/// pairwise distinct.
pub fn parse_mp_file(text: &str, net: &Network) -> Result<Vec<UndirectedMp>> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let nodes = line
            .split_whitespace()
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| Error::Syntax { line: idx + 1, message: format!("`{s}` is not a node id") })
            })
            .collect::<Result<Vec<_>>>()?;
        let mp = UndirectedMp::from_nodes(net, nodes)?;
        if !seen.insert(mp.clone()) {
            return Err(Error::DuplicatePath(mp.to_string()));
        }
        out.push(mp);
    }
    Ok(out)
}

/// Checks that `ordered` is a permutation of all minimal paths of `net`.
pub fn check_complete_order(ordered: &[UndirectedMp], net: &Network) -> Result<()> {
    let all: HashSet<UndirectedMp> = enumerate_undirected_mps(net).into_iter().collect();
    let given: HashSet<&UndirectedMp> = ordered.iter().collect();
    if let Some(missing) = all.iter().find(|mp| !given.contains(mp)) {
        return Err(Error::InvalidPath(format!("path order omits minimal path {missing}")));
    }
    Ok(())
}

/// Directed paths in the order of an MP file.
pub fn directed_mps_in_order(text: &str, net: &Network) -> Result<Vec<DirectedMp>> {
    let ordered = parse_mp_file(text, net)?;
    check_complete_order(&ordered, net)?;
    ordered.iter().map(|q| direct_mp(q, net)).collect()
}

/// Whether `dir` of the arc at `coordinate` lies on some path in `mps`.
pub fn direction_used(mps: &[DirectedMp], coordinate: usize, dir: Direction) -> bool {
    mps.iter().any(|p| p.augmented().contains(coordinate, dir))
}
