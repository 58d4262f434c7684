//! The integral 0-2, integral MP and H moves.
//!
//! 0-2 and MP variants are pairs of local patterns (see [`super::pattern`]); the forward
//! direction replaces the small side by the large side. Weights on the boundary are carried
//! through unchanged, and internal weights are matched up to H-moves at the pattern's
//! crossings. The tables are regenerated by the `derive_moves` example.

use std::fmt;

use itertools::Itertools;
use once_cell::sync::Lazy;

use super::pattern::{find_crossing_pattern, rewrite, Occurrence, Pattern};
use super::{GraphError, OGraph, Port};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    ZeroTwo,
    Mp,
    H,
}

impl MoveKind {
    pub const ALL: [MoveKind; 3] = [MoveKind::ZeroTwo, MoveKind::Mp, MoveKind::H];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Forward,
    Backward,
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveKind::ZeroTwo => "0-2",
            MoveKind::Mp => "MP",
            MoveKind::H => "H",
        })
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        })
    }
}

/// A place where a move applies.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoveSite {
    pub kind: MoveKind,
    pub variant: usize,
    pub direction: Direction,
    /// Diagram crossings matched by the pattern being replaced, in pattern order.
    pub crossings: Vec<u32>,
    /// Source ports of the edges matched by bare strands.
    pub edges: Vec<Port>,
}

impl fmt::Display for MoveSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} variant={} crossings={:?}", self.kind, self.direction, self.variant, self.crossings)?;
        if !self.edges.is_empty() {
            let e = self.edges.iter().map(|p| format!("{}.{}", p.crossing, p.strand.short()));
            write!(f, " edges=[{}]", e.format(", "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct MoveVariant {
    pub small: Pattern,
    pub large: Pattern,
    /// True when some weight on either side is nonzero.
    pub weighted: bool,
}

fn variant(small: &str, large: &str) -> MoveVariant {
    let small: Pattern = small.parse().expect("move table");
    let large: Pattern = large.parse().expect("move table");
    let weighted = !(small.is_weightless() && large.is_weightless());
    MoveVariant { small, large, weighted }
}

const BARE2: &str = " : 0 | 0";

static ZERO_TWO: Lazy<Vec<MoveVariant>> = Lazy::new(|| {
    [
        "+- : 0 0o 0 1o 0 | 0 0u 0 1u 0",
        "-+ : 0 0o 0 1o 0 | 0 0u 0 1u 0",
        "+- : -1 0o 1 1o 0 | 0 1u 0 0u 0",
        "+- : 0 0o 0 1o 0 | -1 1u 1 0u 0",
        "+- : 0 0u -1 1u 1 | 0 1o 0 0o 0",
        "+- : 0 0u 0 1u 0 | 0 1o -1 0o 1",
    ]
    .iter()
    .map(|l| variant(BARE2, l))
    .collect()
});

static MP: Lazy<Vec<MoveVariant>> = Lazy::new(|| {
    [
        ("++ : 0 0o 0 | 0 1o 0 0u 0 | 0 1u 0", "+++ : 0 0o 0 1o 0 | 0 0u 0 2o 0 | 0 1u 0 2u 0"),
        ("+- : 0 0o 0 | 0 0u 0 1o 0 | 0 1u 0", "++- : 0 0o 0 1o 0 | 0 2o 0 0u 0 | 0 2u 0 1u 0"),
        ("+- : 0 0u 0 | 0 1o 0 | 0 1u 0 0o 0", "++- : 0 0u 0 1u 0 | 0 0o 0 2o 0 | 0 1o 0 2u 0"),
        ("+- : 0 0o 0 | 0 1o 0 0u 0 | 0 1u 0", "+-- : 0 0o 0 1o 0 | 0 0u 0 2o 0 | 0 2u 0 1u 0"),
        ("+- : 0 0o 0 1u 0 | 0 1o 0 | 0 0u 0", "-+- : 0 0u 0 1o 0 | 0 2o 0 0o 0 | 0 2u 0 1u 0"),
        ("-- : 0 0o 0 | 0 0u 0 1o 0 | 0 1u 0", "--- : 0 0o 0 1o 0 | 0 2o 0 1u 0 | 0 2u 0 0u 0"),
        ("++ : 0 0u 0 1o 0 | 0 0o 0 | 1 1u 0", "++- : 0 0o 0 1u 0 | 0 1o 0 2o 0 | 0 2u 1 0u 0"),
        ("++ : 0 0u 0 1o 0 | 0 0o 1 | 0 1u 0", "++- : 0 0o 0 1u 0 | 0 1o 1 2o 0 | 0 2u 0 0u 0"),
        ("++ : 0 0u 0 1o 1 | -1 0o 1 | 0 1u 0", "++- : 0 0o 1 1u 0 | 0 1o 0 2o 0 | 0 2u 0 0u 0"),
        ("-- : 0 0o 0 | 0 1o 0 0u 0 | 0 1u 1", "+-- : 0 0o 0 1o 0 | 0 1u 0 2o 0 | 0 2u 1 0u 0"),
        ("-- : 0 0o 0 | 0 1o 0 0u 1 | -1 1u 1", "+-- : 0 0o 0 1o 0 | 0 1u 1 2o 0 | 0 2u 0 0u 0"),
        ("-- : 1 0o 0 | 0 1o 0 0u 0 | 0 1u 0", "+-- : 0 0o 1 1o 0 | 0 1u 0 2o 0 | 0 2u 0 0u 0"),
    ]
    .iter()
    .map(|(s, l)| variant(s, l))
    .collect()
});

/// The variant table of a pattern move (empty for H).
pub fn variants(kind: MoveKind) -> &'static [MoveVariant] {
    match kind {
        MoveKind::ZeroTwo => &ZERO_TWO,
        MoveKind::Mp => &MP,
        MoveKind::H => &[],
    }
}

fn sides(v: &MoveVariant, d: Direction) -> (&Pattern, &Pattern) {
    match d {
        Direction::Forward => (&v.small, &v.large),
        Direction::Backward => (&v.large, &v.small),
    }
}

/// Change in crossing count when the site is applied.
pub fn crossing_delta(site: &MoveSite) -> i64 {
    if site.kind == MoveKind::H {
        return 0;
    }
    let (from, to) = sides(&variants(site.kind)[site.variant], site.direction);
    to.crossing_count() as i64 - from.crossing_count() as i64
}

/// All sites of one move kind, in a deterministic order.
pub fn enumerate_sites(g: &OGraph, kind: MoveKind) -> Vec<MoveSite> {
    let mut out = Vec::new();
    if kind == MoveKind::H {
        for (c, _) in g.crossings() {
            for direction in [Direction::Forward, Direction::Backward] {
                out.push(MoveSite { kind, variant: 0, direction, crossings: vec![c], edges: vec![] });
            }
        }
        return out;
    }
    let edges: Vec<Port> = g.edges().map(|e| e.from).collect();
    for (k, v) in variants(kind).iter().enumerate() {
        for direction in [Direction::Forward, Direction::Backward] {
            let (from, to) = sides(v, direction);
            if from.crossing_count() == 0 {
                for &a in &edges {
                    for &b in &edges {
                        if a != b {
                            out.push(MoveSite { kind, variant: k, direction, crossings: vec![], edges: vec![a, b] });
                        }
                    }
                }
                continue;
            }
            for occ in find_crossing_pattern(from, g) {
                if rewrite(g, from, &occ, to).is_ok() {
                    out.push(MoveSite { kind, variant: k, direction, crossings: occ.crossings, edges: vec![] });
                }
            }
        }
    }
    out
}

/// Applies a move. Pattern moves place new crossings at fresh ids above the existing ones.
pub fn apply_move(g: &OGraph, site: &MoveSite) -> Result<OGraph, GraphError> {
    let mismatch = |m: &str| GraphError::PatternMismatch(m.to_string());
    if site.kind == MoveKind::H {
        let &[c] = site.crossings.as_slice() else { return Err(mismatch("an H-move needs one crossing")) };
        if g.sign(c).is_none() {
            return Err(GraphError::UnknownCrossing(c));
        }
        let d = if site.direction == Direction::Forward { 1 } else { -1 };
        return Ok(g.reweighted(|e| {
            e.weight + if e.from.crossing == c { d } else { 0 } - if e.to.crossing == c { d } else { 0 }
        }));
    }
    let v = variants(site.kind).get(site.variant).ok_or_else(|| mismatch("variant index out of range"))?;
    let (from, to) = sides(v, site.direction);
    let occ = if from.crossing_count() == 0 {
        if site.edges.len() != from.strands.len() || site.edges.iter().any(|p| g.edge_from(*p).is_none()) {
            return Err(mismatch("bare strands need one existing edge each"));
        }
        Occurrence { crossings: vec![], bare: site.edges.iter().map(|&p| Some(p)).collect() }
    } else {
        let found = find_crossing_pattern(from, g);
        found
            .into_iter()
            .find(|o| o.crossings == site.crossings)
            .ok_or_else(|| mismatch("the pattern does not match at these crossings"))?
    };
    rewrite(g, from, &occ, to)
}

#[cfg(test)]
mod tests;
