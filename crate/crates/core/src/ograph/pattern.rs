//! Local patterns: open sub-diagrams made of signed crossings and boundary strands.
//!
//! A strand enters the pattern, visits a sequence of (crossing, strand role) pairs and
//! leaves. Its weights are listed per segment: in-tail, the internal edges, out-tail,
//! so a strand with k visits has k + 1 weights and a bare strand (k = 0) has one.
//!
//! Text form, used by the move tables: `<signs> : <strand> | <strand> | ...` where a
//! strand alternates weights and visits, e.g. `++ : 0 0o 0 1o 0 | 0 0u -1 1u 0`.

use std::collections::BTreeMap;
use std::fmt;

use super::{Edge, GraphError, OGraph, Port, Sign, Strand};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Visit {
    pub crossing: usize,
    pub strand: Strand,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PatternStrand {
    pub visits: Vec<Visit>,
    /// In-tail, internal edges, out-tail; a single entry for a bare strand.
    pub weights: Vec<i64>,
}

impl PatternStrand {
    pub fn is_bare(&self) -> bool {
        self.visits.is_empty()
    }

    pub fn tail_in(&self) -> i64 {
        self.weights[0]
    }

    pub fn tail_out(&self) -> i64 {
        *self.weights.last().unwrap()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    pub signs: Vec<Sign>,
    pub strands: Vec<PatternStrand>,
}

/// One internal edge: (strand, index of the visit it leaves).
type Link = (usize, usize);

impl Pattern {
    pub fn crossing_count(&self) -> usize {
        self.signs.len()
    }

    fn links(&self) -> impl Iterator<Item = (Link, Visit, Visit, i64)> + '_ {
        self.strands.iter().enumerate().flat_map(|(s, st)| {
            st.visits.windows(2).enumerate().map(move |(i, w)| ((s, i), w[0], w[1], st.weights[i + 1]))
        })
    }

    /// Every crossing must be visited exactly once as over and once as under.
    pub fn validate(&self) -> Result<(), String> {
        let mut seen = BTreeMap::new();
        for st in &self.strands {
            if st.weights.len() != st.visits.len() + 1 {
                return Err("weights must number visits + 1".into());
            }
            for v in &st.visits {
                if v.crossing >= self.signs.len() {
                    return Err(format!("unknown crossing {}", v.crossing));
                }
                if seen.insert((v.crossing, v.strand), ()).is_some() {
                    return Err(format!("crossing {} visited twice on one strand role", v.crossing));
                }
            }
        }
        if seen.len() != 2 * self.signs.len() {
            return Err("every crossing needs an over and an under visit".into());
        }
        Ok(())
    }

    /// Total weight along each strand.
    pub fn strand_sums(&self) -> Vec<i64> {
        self.strands.iter().map(|s| s.weights.iter().sum()).collect()
    }

    pub fn is_weightless(&self) -> bool {
        self.strands.iter().all(|s| s.weights.iter().all(|&w| w == 0))
    }
}

fn role_char(s: Strand) -> char {
    match s {
        Strand::Over => 'o',
        Strand::Under => 'u',
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.signs {
            write!(f, "{s}")?;
        }
        f.write_str(" :")?;
        for (k, st) in self.strands.iter().enumerate() {
            if k > 0 {
                f.write_str(" |")?;
            }
            write!(f, " {}", st.weights[0])?;
            for (v, w) in st.visits.iter().zip(&st.weights[1..]) {
                write!(f, " {}{} {w}", v.crossing, role_char(v.strand))?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for Pattern {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        let (signs, rest) = text.split_once(':').ok_or("expected '<signs> : <strands>'")?;
        let signs = signs
            .trim()
            .chars()
            .map(|c| match c {
                '+' => Ok(Sign::Pos),
                '-' => Ok(Sign::Neg),
                _ => Err(format!("bad sign {c:?}")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut strands = Vec::new();
        for part in rest.split('|') {
            let mut visits = Vec::new();
            let mut weights = Vec::new();
            for (i, tok) in part.split_whitespace().enumerate() {
                if i % 2 == 0 {
                    weights.push(tok.parse::<i64>().map_err(|_| format!("bad weight {tok:?}"))?);
                } else {
                    let (c, r) = tok.split_at(tok.len() - 1);
                    let strand = match r {
                        "o" => Strand::Over,
                        "u" => Strand::Under,
                        _ => return Err(format!("bad visit {tok:?}")),
                    };
                    visits.push(Visit { crossing: c.parse().map_err(|_| format!("bad visit {tok:?}"))?, strand });
                }
            }
            strands.push(PatternStrand { visits, weights });
        }
        let p = Pattern { signs, strands };
        p.validate()?;
        Ok(p)
    }
}

/// Where a pattern sits in a diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Occurrence {
    /// Diagram crossing of each pattern crossing.
    pub crossings: Vec<u32>,
    /// Source port of the diagram edge carrying each bare strand (other strands: None).
    pub bare: Vec<Option<Port>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum End {
    Env(Port),
    Strand(usize),
}

fn out_port(occ: &[u32], v: Visit) -> Port {
    Port::new(occ[v.crossing], v.strand)
}

/// Enumerates the occurrences of a crossing pattern (at least one crossing).
pub fn find_crossing_pattern(p: &Pattern, g: &OGraph) -> Vec<Occurrence> {
    assert!(p.crossing_count() > 0 && p.strands.iter().all(|s| !s.is_bare()));
    let links: Vec<_> = p.links().collect();
    let mut out = Vec::new();
    for (c0, s0) in g.crossings() {
        if s0 != p.signs[0] {
            continue;
        }
        let mut map: Vec<Option<u32>> = vec![None; p.crossing_count()];
        map[0] = Some(c0);
        let mut progress = true;
        while progress {
            progress = false;
            for &(_, a, b, _) in &links {
                match (map[a.crossing], map[b.crossing]) {
                    (Some(x), None) => {
                        let e = g.edge_from(Port::new(x, a.strand)).unwrap();
                        map[b.crossing] = Some(e.to.crossing);
                        progress = true;
                    }
                    (None, Some(y)) => {
                        let e = g.edge_into(Port::new(y, b.strand)).unwrap();
                        map[a.crossing] = Some(e.from.crossing);
                        progress = true;
                    }
                    _ => {}
                }
            }
        }
        let Some(occ) = map.into_iter().collect::<Option<Vec<u32>>>() else { continue };
        let mut sorted = occ.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != occ.len() {
            continue;
        }
        if occ.iter().zip(&p.signs).any(|(&c, &s)| g.sign(c) != Some(s)) {
            continue;
        }
        let ok = links.iter().all(|&(_, a, b, _)| {
            g.edge_from(out_port(&occ, a)).map(|e| e.to) == Some(Port::new(occ[b.crossing], b.strand))
        });
        if ok && gauge(p, g, &occ).is_some() {
            out.push(Occurrence { crossings: occ, bare: vec![None; p.strands.len()] });
        }
    }
    out
}

/// Solves actual = pattern + h(from) - h(to) on the internal edges.
fn gauge(p: &Pattern, g: &OGraph, occ: &[u32]) -> Option<Vec<i64>> {
    let links: Vec<_> = p.links().collect();
    let mut h: Vec<Option<i64>> = vec![None; p.crossing_count()];
    h[0] = Some(0);
    let mut progress = true;
    while progress {
        progress = false;
        for &(_, a, b, w) in &links {
            let actual = g.edge_from(out_port(occ, a))?.weight;
            let d = actual - w;
            match (h[a.crossing], h[b.crossing]) {
                (Some(x), None) => {
                    h[b.crossing] = Some(x - d);
                    progress = true;
                }
                (None, Some(y)) => {
                    h[a.crossing] = Some(y + d);
                    progress = true;
                }
                _ => {}
            }
        }
    }
    let h: Vec<i64> = h.into_iter().collect::<Option<_>>()?;
    for &(_, a, b, w) in &links {
        if g.edge_from(out_port(occ, a))?.weight - w != h[a.crossing] - h[b.crossing] {
            return None;
        }
    }
    Some(h)
}

/// Replaces the occurrence of `from` by `to`; both sides share the boundary strands.
pub fn rewrite(g: &OGraph, from: &Pattern, occ: &Occurrence, to: &Pattern) -> Result<OGraph, GraphError> {
    let mismatch = |m: &str| GraphError::PatternMismatch(m.to_string());
    if from.strands.len() != to.strands.len() {
        return Err(mismatch("sides have different boundaries"));
    }
    // boundary connections: source end -> (target end, offset)
    let mut conn: BTreeMap<End, (End, i64)> = BTreeMap::new();
    let inside = |c: u32| occ.crossings.contains(&c);
    let mut removed_edges: Vec<Port> = Vec::new();
    if from.crossing_count() == 0 {
        for (s, st) in from.strands.iter().enumerate() {
            let src = occ.bare[s].ok_or_else(|| mismatch("bare strand without edge"))?;
            let e = g.edge_from(src).ok_or_else(|| mismatch("no edge at bare strand"))?;
            if removed_edges.contains(&src) {
                return Err(mismatch("bare strands share an edge"));
            }
            removed_edges.push(src);
            conn.insert(End::Env(e.from), (End::Strand(s), e.weight - st.weights[0]));
            conn.insert(End::Strand(s), (End::Env(e.to), 0));
        }
    } else {
        let h = gauge(from, g, &occ.crossings).ok_or_else(|| mismatch("weights do not match"))?;
        let first: BTreeMap<Port, usize> = from
            .strands
            .iter()
            .enumerate()
            .map(|(s, st)| (out_port(&occ.crossings, st.visits[0]), s))
            .collect();
        let last: BTreeMap<Port, usize> = from
            .strands
            .iter()
            .enumerate()
            .map(|(s, st)| (out_port(&occ.crossings, *st.visits.last().unwrap()), s))
            .collect();
        let internal: Vec<Port> = from.links().map(|(_, a, _, _)| out_port(&occ.crossings, a)).collect();
        for e in g.edges() {
            if !(inside(e.from.crossing) || inside(e.to.crossing)) || internal.contains(&e.from) {
                continue;
            }
            let mut off = e.weight;
            let src = if inside(e.from.crossing) {
                let s = last[&e.from];
                let v = *from.strands[s].visits.last().unwrap();
                off -= from.strands[s].tail_out() + h[v.crossing];
                End::Strand(s)
            } else {
                End::Env(e.from)
            };
            let tgt = if inside(e.to.crossing) {
                let t = first[&e.to];
                let v = from.strands[t].visits[0];
                off -= from.strands[t].tail_in() - h[v.crossing];
                End::Strand(t)
            } else {
                End::Env(e.to)
            };
            conn.insert(src, (tgt, off));
        }
    }

    let mut crossings: BTreeMap<u32, Sign> = g.crossings().filter(|(c, _)| !inside(*c)).collect();
    let mut edges: Vec<Edge> = g
        .edges()
        .filter(|e| !inside(e.from.crossing) && !inside(e.to.crossing) && !removed_edges.contains(&e.from))
        .collect();
    let base = g.next_id();
    let ids: Vec<u32> = (0..to.crossing_count() as u32).map(|i| base + i).collect();
    for (i, &s) in to.signs.iter().enumerate() {
        crossings.insert(ids[i], s);
    }
    for (_, a, b, w) in to.links() {
        edges.push(Edge { from: out_port(&ids, a), to: Port::new(ids[b.crossing], b.strand), weight: w });
    }
    let mut used = 0usize;
    for &start in conn.keys() {
        let (from_port, mut w) = match start {
            End::Env(p) => (p, 0),
            End::Strand(s) if !to.strands[s].is_bare() => {
                let st = &to.strands[s];
                (out_port(&ids, *st.visits.last().unwrap()), st.tail_out())
            }
            End::Strand(_) => continue,
        };
        let mut cur = start;
        let to_port = loop {
            let (next, off) = conn[&cur];
            used += 1;
            w += off;
            match next {
                End::Env(p) => break p,
                End::Strand(t) => {
                    let st = &to.strands[t];
                    if st.is_bare() {
                        w += st.weights[0];
                        cur = End::Strand(t);
                        if used > conn.len() {
                            return Err(mismatch("boundary loop"));
                        }
                    } else {
                        w += st.tail_in();
                        break Port::new(ids[st.visits[0].crossing], st.visits[0].strand);
                    }
                }
            }
        };
        edges.push(Edge { from: from_port, to: to_port, weight: w });
    }
    if used != conn.len() {
        return Err(mismatch("the rewrite would leave a closed strand without crossings"));
    }
    OGraph::new(crossings, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ograph::parse_ograph;

    #[test]
    fn text_round_trip() {
        for t in ["+- : 0 0o 0 1o 0 | 0 0u -1 1u 2", " : 0 | 3"] {
            let p: Pattern = t.parse().unwrap();
            let back: Pattern = p.to_string().parse().unwrap();
            assert_eq!(back, p);
        }
        assert!("+ : 0 0o 0".parse::<Pattern>().is_err());
        assert!("+ : 0 0o 0 | 0 0o 0".parse::<Pattern>().is_err());
    }

    #[test]
    fn bigon_round_trip() {
        let g = builtin_l21();
        let bare: Pattern = " : 0 | 0".parse().unwrap();
        let bigon: Pattern = "+- : 0 0o 0 1o 0 | 0 0u 0 1u 0".parse().unwrap();
        let edges: Vec<Port> = g.edges().map(|e| e.from).collect();
        let occ = Occurrence { crossings: vec![], bare: vec![Some(edges[0]), Some(edges[2])] };
        let big = rewrite(&g, &bare, &occ, &bigon).unwrap();
        assert_eq!(big.crossing_count(), 4);
        let found = find_crossing_pattern(&bigon, &big);
        assert!(!found.is_empty());
        let back: Vec<OGraph> = found.iter().filter_map(|o| rewrite(&big, &bigon, o, &bare).ok()).collect();
        assert!(back.iter().any(|b| same_up_to_ids(b, &g)));
    }

    fn builtin_l21() -> OGraph {
        parse_ograph(crate::ograph::builtin::L21).unwrap()
    }

    fn same_up_to_ids(a: &OGraph, b: &OGraph) -> bool {
        a.canonical() == b.canonical()
    }
}
