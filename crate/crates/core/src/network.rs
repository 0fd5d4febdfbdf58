//! Binary-state networks with heterogeneous undirected arcs.
//!
//! Every undirected arc `{i, j}` (stored with `i < j`) carries two success
//! probabilities: `p_fwd` for the directed arc `i -> j` and `p_bwd` for
//! `j -> i`. Nodes are perfect and numbered `1..=n`. Arcs are kept sorted by
//! `(i, j)`; that order is the coordinate layout of every augmented vector.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// One traversal direction of an undirected arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// `i -> j` with `i < j`.
    Forward,
    /// `j -> i` with `i < j`.
    Backward,
}

impl Direction {
    pub const BOTH: [Direction; 2] = [Direction::Forward, Direction::Backward];

    /// Bit used for this direction in an augmented-vector coordinate.
    pub const fn mask(self) -> u8 {
        match self {
            Direction::Forward => 0b01,
            Direction::Backward => 0b10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UndirectedArc {
    pub i: usize,
    pub j: usize,
    pub p_fwd: f64,
    pub p_bwd: f64,
}

impl UndirectedArc {
    /// Builds an arc from endpoints in any order; `p_ab` is the probability of
    /// `a -> b`. Endpoints are normalized so that `i < j`.
    pub fn new(a: usize, b: usize, p_ab: f64, p_ba: f64) -> Self {
        if a <= b {
            UndirectedArc { i: a, j: b, p_fwd: p_ab, p_bwd: p_ba }
        } else {
            UndirectedArc { i: b, j: a, p_fwd: p_ba, p_bwd: p_ab }
        }
    }

    pub fn probability(&self, dir: Direction) -> f64 {
        match dir {
            Direction::Forward => self.p_fwd,
            Direction::Backward => self.p_bwd,
        }
    }

    /// `(tail, head)` of the given direction.
    pub fn endpoints(&self, dir: Direction) -> (usize, usize) {
        match dir {
            Direction::Forward => (self.i, self.j),
            Direction::Backward => (self.j, self.i),
        }
    }

    pub fn other(&self, node: usize) -> Option<usize> {
        if node == self.i {
            Some(self.j)
        } else if node == self.j {
            Some(self.i)
        } else {
            None
        }
    }
}

/// A validated network `G(V, E, D)` with explicit terminals.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    n: usize,
    source: usize,
    sink: usize,
    arcs: Vec<UndirectedArc>,
}

impl Network {
    /// Validates and canonicalizes a network. Arcs may be given in any order
    /// and with endpoints in either orientation.
    pub fn new(n: usize, source: usize, sink: usize, arcs: Vec<UndirectedArc>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidNetwork(format!("need at least 2 nodes, got {n}")));
        }
        for node in [source, sink] {
            if node == 0 || node > n {
                return Err(Error::EndpointOutOfRange { node, n });
            }
        }
        if source == sink {
            return Err(Error::InvalidNetwork(format!("source and sink are both node {source}")));
        }

        let mut seen = HashSet::with_capacity(arcs.len());
        let mut canonical = Vec::with_capacity(arcs.len());
        for arc in arcs {
            let arc = UndirectedArc::new(arc.i, arc.j, arc.p_fwd, arc.p_bwd);
            for node in [arc.i, arc.j] {
                if node == 0 || node > n {
                    return Err(Error::EndpointOutOfRange { node, n });
                }
            }
            if arc.i == arc.j {
                return Err(Error::SelfLoop(arc.i));
            }
            for value in [arc.p_fwd, arc.p_bwd] {
                if !(0.0..=1.0).contains(&value) {
                    return Err(Error::ProbabilityOutOfRange { i: arc.i, j: arc.j, value });
                }
            }
            if !seen.insert((arc.i, arc.j)) {
                return Err(Error::DuplicateArc(arc.i, arc.j));
            }
            canonical.push(arc);
        }
        canonical.sort_by_key(|a| (a.i, a.j));

        Ok(Network { n, source, sink, arcs: canonical })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn arcs(&self) -> &[UndirectedArc] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Coordinate of arc `{i, j}` in the canonical order. Both directions
    /// share the coordinate.
    pub fn arc_coordinate(&self, i: usize, j: usize) -> Result<usize> {
        let key = (i.min(j), i.max(j));
        self.arcs.binary_search_by_key(&key, |a| (a.i, a.j)).map_err(|_| Error::UnknownArc(i, j))
    }

    /// Coordinate and direction of the directed arc `tail -> head`.
    pub fn directed_coordinate(&self, tail: usize, head: usize) -> Result<(usize, Direction)> {
        let coord = self.arc_coordinate(tail, head)?;
        let dir = if tail < head { Direction::Forward } else { Direction::Backward };
        Ok((coord, dir))
    }

    /// Undirected adjacency: for every node, `(neighbor, coordinate)` pairs
    /// sorted by neighbor id. Index 0 is unused.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n + 1];
        for (coord, arc) in self.arcs.iter().enumerate() {
            adj[arc.i].push((arc.j, coord));
            adj[arc.j].push((arc.i, coord));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Whether the sink is reachable from the source ignoring directions and
    /// probabilities.
    pub fn terminals_connected(&self) -> bool {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n + 1];
        let mut stack = vec![self.source];
        seen[self.source] = true;
        while let Some(u) = stack.pop() {
            if u == self.sink {
                return true;
            }
            for &(v, _) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        false
    }

    /// Copy of the network with probabilities rewritten arc by arc.
    pub fn map_probabilities(&self, mut f: impl FnMut(&UndirectedArc) -> (f64, f64)) -> Result<Self> {
        let arcs = self
            .arcs
            .iter()
            .map(|a| {
                let (p_fwd, p_bwd) = f(a);
                UndirectedArc { p_fwd, p_bwd, ..*a }
            })
            .collect();
        Network::new(self.n, self.source, self.sink, arcs)
    }

    /// Parses the line-oriented network format:
    ///
    /// ```text
    /// nodes 4
    /// source 1
    /// sink 4
    /// arc 1 2 0.9 0.8   # p(1 -> 2) p(2 -> 1)
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut nodes = None;
        let mut source = None;
        let mut sink = None;
        let mut arcs = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |message: String| Error::Syntax { line: line_no, message };
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields[0] {
                key @ ("nodes" | "source" | "sink") => {
                    if fields.len() != 2 {
                        return Err(syntax(format!("`{key}` takes exactly one value")));
                    }
                    if !arcs.is_empty() {
                        return Err(syntax(format!("`{key}` header after arc lines")));
                    }
                    let value: usize =
                        fields[1].parse().map_err(|_| syntax(format!("`{}` is not a node count or id", fields[1])))?;
                    let slot = match key {
                        "nodes" => &mut nodes,
                        "source" => &mut source,
                        _ => &mut sink,
                    };
                    if slot.replace(value).is_some() {
                        return Err(syntax(format!("`{key}` declared twice")));
                    }
                }
                "arc" => {
                    if fields.len() != 5 {
                        return Err(syntax("`arc` takes `i j p_fwd p_bwd`".to_string()));
                    }
                    let node = |s: &str| s.parse::<usize>().map_err(|_| syntax(format!("`{s}` is not a node id")));
                    let prob = |s: &str| {
                        s.parse::<f64>()
                            .ok()
                            .filter(|p| p.is_finite())
                            .ok_or_else(|| syntax(format!("`{s}` is not a probability")))
                    };
                    let (a, b) = (node(fields[1])?, node(fields[2])?);
                    let (p_ab, p_ba) = (prob(fields[3])?, prob(fields[4])?);
                    arcs.push(UndirectedArc::new(a, b, p_ab, p_ba));
                }
                other => return Err(syntax(format!("unknown directive `{other}`"))),
            }
        }

        let n = nodes.ok_or(Error::MissingHeader("nodes"))?;
        let source = source.ok_or(Error::MissingHeader("source"))?;
        let sink = sink.ok_or(Error::MissingHeader("sink"))?;
        Network::new(n, source, sink, arcs)
    }

    /// Renders the network in the format accepted by [`Network::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "nodes {}", self.n);
        let _ = writeln!(out, "source {}", self.source);
        let _ = writeln!(out, "sink {}", self.sink);
        for a in &self.arcs {
            let _ = writeln!(out, "arc {} {} {} {}", a.i, a.j, a.p_fwd, a.p_bwd);
        }
        out
    }

    /// Marks the directions that can never lie on a source-to-sink minimal
    /// path: those entering the source and those leaving the sink.
    pub fn reduce_arcs(&self) -> ReducedNetwork {
        let usable: Vec<[bool; 2]> = self
            .arcs
            .iter()
            .map(|arc| {
                Direction::BOTH.map(|dir| {
                    let (tail, head) = arc.endpoints(dir);
                    head != self.source && tail != self.sink
                })
            })
            .collect();
        let m_star = usable.iter().flatten().filter(|&&u| u).count();
        ReducedNetwork { base: self.clone(), usable, m_star }
    }
}

/// A usable directed arc of a [`ReducedNetwork`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UsableDirection {
    pub coordinate: usize,
    pub direction: Direction,
    pub tail: usize,
    pub head: usize,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReducedNetwork {
    pub base: Network,
    /// Per arc, `[forward usable, backward usable]`.
    pub usable: Vec<[bool; 2]>,
    pub m_star: usize,
}

impl ReducedNetwork {
    pub fn is_usable(&self, coordinate: usize, dir: Direction) -> bool {
        self.usable[coordinate][dir as usize]
    }

    /// Usable directions in coordinate order, forward before backward.
    pub fn directions(&self) -> Vec<UsableDirection> {
        let mut out = Vec::with_capacity(self.m_star);
        for (coordinate, arc) in self.base.arcs().iter().enumerate() {
            for dir in Direction::BOTH {
                if self.is_usable(coordinate, dir) {
                    let (tail, head) = arc.endpoints(dir);
                    out.push(UsableDirection {
                        coordinate,
                        direction: dir,
                        tail,
                        head,
                        probability: arc.probability(dir),
                    });
                }
            }
        }
        out
    }
}
