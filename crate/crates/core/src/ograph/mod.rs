//! Integral normal o-graphs as abstract 4-valent diagrams.
//!
//! Each crossing has an over strand and an under strand, each with an in-port and an
//! out-port. Edges run from an out-port to an in-port and carry an integer weight.
//! No planar embedding is stored.

pub mod builtin;
pub mod moves;
pub mod pattern;
pub mod walk;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

pub use builtin::{builtin, lens};
pub use moves::{apply_move, enumerate_sites, Direction, MoveKind, MoveSite};
pub use walk::{random_walk, random_walk_capped, replay, WalkStep};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown crossing {0}")]
    UnknownCrossing(u32),
    #[error("duplicate crossing {0}")]
    DuplicateCrossing(u32),
    #[error("port {0} is used by more than one edge")]
    PortReused(String),
    #[error("port {0} is not connected")]
    DanglingPort(String),
    #[error("unknown builtin diagram {0:?}")]
    UnknownBuiltin(String),
    #[error("move does not apply: {0}")]
    PatternMismatch(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Pos => "+",
            Sign::Neg => "-",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strand {
    Over,
    Under,
}

impl Strand {
    pub fn other(self) -> Self {
        match self {
            Strand::Over => Strand::Under,
            Strand::Under => Strand::Over,
        }
    }

    /// "o" or "u".
    pub fn short(self) -> &'static str {
        match self {
            Strand::Over => "o",
            Strand::Under => "u",
        }
    }
}

/// A port of a crossing on one of its two strands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Port {
    pub crossing: u32,
    pub strand: Strand,
}

impl Port {
    pub fn new(crossing: u32, strand: Strand) -> Self {
        Port { crossing, strand }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    /// Out-port the edge leaves from.
    pub from: Port,
    /// In-port the edge enters.
    pub to: Port,
    pub weight: i64,
}

/// A validated integral normal o-graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct OGraph {
    pub(crate) crossings: BTreeMap<u32, Sign>,
    /// Keyed by the out-port an edge leaves from.
    pub(crate) edges: BTreeMap<Port, (Port, i64)>,
}

fn port_name(p: Port, out: bool) -> String {
    let s = match (p.strand, out) {
        (Strand::Over, true) => "oo",
        (Strand::Under, true) => "uo",
        (Strand::Over, false) => "oi",
        (Strand::Under, false) => "ui",
    };
    format!("{}.{s}", p.crossing)
}

impl OGraph {
    /// Builds and validates a diagram.
    pub fn new(crossings: impl IntoIterator<Item = (u32, Sign)>, edges: impl IntoIterator<Item = Edge>) -> Result<Self, GraphError> {
        let mut g = OGraph::default();
        for (id, s) in crossings {
            if g.crossings.insert(id, s).is_some() {
                return Err(GraphError::DuplicateCrossing(id));
            }
        }
        let mut targets = BTreeSet::new();
        for e in edges {
            for c in [e.from.crossing, e.to.crossing] {
                if !g.crossings.contains_key(&c) {
                    return Err(GraphError::UnknownCrossing(c));
                }
            }
            if g.edges.contains_key(&e.from) {
                return Err(GraphError::PortReused(port_name(e.from, true)));
            }
            if !targets.insert(e.to) {
                return Err(GraphError::PortReused(port_name(e.to, false)));
            }
            g.edges.insert(e.from, (e.to, e.weight));
        }
        for &c in g.crossings.keys() {
            for s in [Strand::Over, Strand::Under] {
                let p = Port::new(c, s);
                if !g.edges.contains_key(&p) {
                    return Err(GraphError::DanglingPort(port_name(p, true)));
                }
                if !targets.contains(&p) {
                    return Err(GraphError::DanglingPort(port_name(p, false)));
                }
            }
        }
        Ok(g)
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossings(&self) -> impl Iterator<Item = (u32, Sign)> + '_ {
        self.crossings.iter().map(|(&c, &s)| (c, s))
    }

    pub fn sign(&self, c: u32) -> Option<Sign> {
        self.crossings.get(&c).copied()
    }

    /// Edges in order of their source port.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().map(|(&from, &(to, weight))| Edge { from, to, weight })
    }

    /// The edge leaving an out-port.
    pub fn edge_from(&self, p: Port) -> Option<Edge> {
        self.edges.get(&p).map(|&(to, weight)| Edge { from: p, to, weight })
    }

    /// The edge entering an in-port.
    pub fn edge_into(&self, p: Port) -> Option<Edge> {
        self.edges().find(|e| e.to == p)
    }

    pub(crate) fn next_id(&self) -> u32 {
        self.crossings.keys().next_back().map_or(0, |&c| c + 1)
    }

    /// Number of closed through-strand circuits.
    pub fn component_count(&self) -> usize {
        let mut seen = BTreeSet::new();
        let mut count = 0;
        for &start in self.edges.keys() {
            if seen.contains(&start) {
                continue;
            }
            count += 1;
            let mut p = start;
            while seen.insert(p) {
                // arrive at an in-port, continue on the same strand's out-port
                p = self.edges[&p].0;
            }
        }
        count
    }

    /// The through-strand circuits, each as the list of out-ports it leaves from.
    pub fn components(&self) -> Vec<Vec<Port>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in self.edges.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut circuit = Vec::new();
            let mut p = start;
            while seen.insert(p) {
                circuit.push(p);
                p = self.edges[&p].0;
            }
            out.push(circuit);
        }
        out
    }

    /// True when the crossings form one connected piece.
    pub fn is_connected(&self) -> bool {
        let Some(&first) = self.crossings.keys().next() else { return true };
        let mut seen = BTreeSet::from([first]);
        let mut stack = vec![first];
        while let Some(c) = stack.pop() {
            for e in self.edges() {
                let (a, b) = (e.from.crossing, e.to.crossing);
                for (x, y) in [(a, b), (b, a)] {
                    if x == c && seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
        }
        seen.len() == self.crossings.len()
    }

    pub fn set_weight(&mut self, from: Port, weight: i64) {
        if let Some(e) = self.edges.get_mut(&from) {
            e.1 = weight;
        }
    }

    /// Same diagram with every weight replaced by `f(edge)`.
    pub fn reweighted(&self, mut f: impl FnMut(&Edge) -> i64) -> OGraph {
        let mut g = self.clone();
        for (from, (to, w)) in g.edges.iter_mut() {
            *w = f(&Edge { from: *from, to: *to, weight: *w });
        }
        g
    }

    /// A uniformly random valid diagram on `n` crossings, connected, with weights in `-wmax..=wmax`.
    pub fn random<R: Rng>(rng: &mut R, n: usize, wmax: i64) -> OGraph {
        assert!(n >= 1);
        loop {
            let crossings: Vec<(u32, Sign)> =
                (0..n as u32).map(|c| (c, if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg })).collect();
            let ports: Vec<Port> =
                (0..n as u32).flat_map(|c| [Port::new(c, Strand::Over), Port::new(c, Strand::Under)]).collect();
            let mut targets = ports.clone();
            targets.shuffle(rng);
            let edges: Vec<Edge> = ports
                .iter()
                .zip(&targets)
                .map(|(&from, &to)| Edge { from, to, weight: rng.gen_range(-wmax..=wmax) })
                .collect();
            let g = OGraph::new(crossings, edges).expect("random diagram is valid by construction");
            if g.is_connected() {
                return g;
            }
        }
    }

    /// Copy with crossing `c` renamed to `ids[c]`.
    fn relabeled(&self, ids: &BTreeMap<u32, u32>) -> OGraph {
        let mv = |p: Port| Port::new(ids[&p.crossing], p.strand);
        OGraph {
            crossings: self.crossings.iter().map(|(c, s)| (ids[c], *s)).collect(),
            edges: self.edges.iter().map(|(f, (t, w))| (mv(*f), (mv(*t), *w))).collect(),
        }
    }

    /// Breadth-first labeling from `start` following the ports in a fixed order.
    fn bfs_labels(&self, start: u32, offset: u32) -> BTreeMap<u32, u32> {
        let mut ids = BTreeMap::from([(start, offset)]);
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            let mut next = Vec::with_capacity(4);
            for s in [Strand::Over, Strand::Under] {
                next.push(self.edges[&Port::new(c, s)].0.crossing);
            }
            for s in [Strand::Over, Strand::Under] {
                next.push(self.edge_into(Port::new(c, s)).expect("valid diagram").from.crossing);
            }
            for n in next {
                if !ids.contains_key(&n) {
                    ids.insert(n, offset + ids.len() as u32);
                    queue.push_back(n);
                }
            }
        }
        ids
    }

    /// A relabeling with crossings 0..n that is the same for isomorphic diagrams.
    pub fn canonical(&self) -> OGraph {
        let mut pieces: Vec<(String, Vec<u32>)> = Vec::new();
        let mut left: BTreeSet<u32> = self.crossings.keys().copied().collect();
        while let Some(&c) = left.iter().next() {
            let part: Vec<u32> = self.bfs_labels(c, 0).into_keys().collect();
            let best = part
                .iter()
                .map(|&s| {
                    let ids = self.bfs_labels(s, 0);
                    let sub = OGraph {
                        crossings: part.iter().map(|x| (ids[x], self.crossings[x])).collect(),
                        edges: self
                            .edges
                            .iter()
                            .filter(|(f, _)| part.contains(&f.crossing))
                            .map(|(f, (t, w))| {
                                (Port::new(ids[&f.crossing], f.strand), (Port::new(ids[&t.crossing], t.strand), *w))
                            })
                            .collect(),
                    };
                    (sub.render(), s)
                })
                .min()
                .unwrap();
            for x in &part {
                left.remove(x);
            }
            pieces.push((best.0, vec![best.1]));
        }
        pieces.sort();
        let mut ids = BTreeMap::new();
        for (_, start) in &pieces {
            ids.extend(self.bfs_labels(start[0], ids.len() as u32));
        }
        self.relabeled(&ids)
    }

    /// Renders in the diagram file format.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (c, s) in self.crossings() {
            out.push_str(&format!("crossing {c} {s}\n"));
        }
        for e in self.edges() {
            out.push_str(&format!("edge {} -> {} w={}\n", port_name(e.from, true), port_name(e.to, false), e.weight));
        }
        out
    }
}

impl fmt::Display for OGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn parse_port(s: &str, out: bool, line: usize) -> Result<Port, GraphError> {
    let err = |m: &str| GraphError::Parse { line, msg: format!("{m}: {s:?}") };
    let (id, kind) = s.split_once('.').ok_or_else(|| err("expected <id>.<port>"))?;
    let id: u32 = id.parse().map_err(|_| err("bad crossing id"))?;
    let strand = match (kind, out) {
        ("oo", true) | ("oi", false) => Strand::Over,
        ("uo", true) | ("ui", false) => Strand::Under,
        _ => return Err(err(if out { "expected out-port oo or uo" } else { "expected in-port oi or ui" })),
    };
    Ok(Port::new(id, strand))
}

/// Parses the diagram file format.
pub fn parse_ograph(text: &str) -> Result<OGraph, GraphError> {
    let mut crossings = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.split('#').next().unwrap().trim();
        if l.is_empty() {
            continue;
        }
        let words: Vec<&str> = l.split_whitespace().collect();
        let err = |m: &str| GraphError::Parse { line, msg: m.to_string() };
        match words.as_slice() {
            ["crossing", id, sign] => {
                let id: u32 = id.parse().map_err(|_| err("bad crossing id"))?;
                let sign = match *sign {
                    "+" => Sign::Pos,
                    "-" => Sign::Neg,
                    _ => return Err(err("sign must be + or -")),
                };
                crossings.push((id, sign));
            }
            ["edge", from, "->", to, w] => {
                let w = w.strip_prefix("w=").and_then(|v| v.parse::<i64>().ok()).ok_or_else(|| err("expected w=<integer>"))?;
                edges.push(Edge { from: parse_port(from, true, line)?, to: parse_port(to, false, line)?, weight: w });
            }
            _ => return Err(err("expected 'crossing <id> <+|->' or 'edge <id>.<oo|uo> -> <id>.<oi|ui> w=<integer>'")),
        }
    }
    OGraph::new(crossings, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parse_and_render() {
        let text = "# one crossing\ncrossing 0 +\nedge 0.oo -> 0.ui w=1\nedge 0.uo -> 0.oi w=2\n";
        let g = parse_ograph(text).unwrap();
        assert_eq!(g.crossing_count(), 1);
        assert_eq!(g.component_count(), 1);
        assert_eq!(parse_ograph(&g.render()).unwrap(), g);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_ograph("crossing 0 +\nedge 0.oo -> 1.ui w=0"), Err(GraphError::UnknownCrossing(1))));
        assert!(matches!(
            parse_ograph("crossing 0 +\nedge 0.oo -> 0.ui w=0\nedge 0.uo -> 0.ui w=0"),
            Err(GraphError::PortReused(_))
        ));
        assert!(matches!(parse_ograph("crossing 0 +\nedge 0.oo -> 0.ui w=0"), Err(GraphError::DanglingPort(_))));
        assert!(matches!(parse_ograph("crossing 0 x"), Err(GraphError::Parse { line: 1, .. })));
        assert!(matches!(parse_ograph("crossing 0 +\nedge 0.oi -> 0.ui w=0"), Err(GraphError::Parse { .. })));
        assert!(matches!(parse_ograph("crossing 0 +\ncrossing 0 -"), Err(GraphError::DuplicateCrossing(0))));
    }

    #[test]
    fn components() {
        // two crossings, strands closing up separately
        let g = parse_ograph(
            "crossing 0 +\ncrossing 1 -\nedge 0.oo -> 1.oi w=0\nedge 1.oo -> 0.oi w=0\nedge 0.uo -> 1.ui w=0\nedge 1.uo -> 0.ui w=0\n",
        )
        .unwrap();
        assert_eq!(g.component_count(), 2);
        assert!(g.is_connected());
    }

    #[test]
    fn random_is_valid_and_reproducible() {
        let mut r1 = ChaCha8Rng::seed_from_u64(7);
        let mut r2 = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=6 {
            let a = OGraph::random(&mut r1, n, 2);
            let b = OGraph::random(&mut r2, n, 2);
            assert_eq!(a, b);
            assert_eq!(a.crossing_count(), n);
            assert!(a.is_connected());
            assert_eq!(parse_ograph(&a.render()).unwrap(), a);
        }
    }
}
