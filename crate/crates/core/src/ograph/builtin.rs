//! Shipped diagrams: the combed lens space family and its framed members s3 and l21.
//!
//! `lens(p)` has p positive crossings traversed by one strand along the word
//! O0 U0 U1 O1 O2 U2 ..., so crossing i is met over-then-under for even i and
//! under-then-over for odd i.

use super::{parse_ograph, Edge, GraphError, OGraph, Port, Sign, Strand};

pub const S3: &str = "\
crossing 0 +
edge 0.oo -> 0.ui w=1
edge 0.uo -> 0.oi w=-2
";

pub const L21: &str = "\
crossing 0 +
crossing 1 +
edge 0.oo -> 0.ui w=1
edge 0.uo -> 1.ui w=0
edge 1.oo -> 0.oi w=-1
edge 1.uo -> 1.oi w=-1
";

/// The combed lens space diagram with `p` crossings and all weights 0.
pub fn lens(p: u32) -> Result<OGraph, GraphError> {
    if p == 0 {
        return Err(GraphError::UnknownBuiltin("lens(0)".into()));
    }
    let order = |i: u32| {
        if i.is_multiple_of(2) {
            (Strand::Over, Strand::Under)
        } else {
            (Strand::Under, Strand::Over)
        }
    };
    let mut edges = Vec::with_capacity(2 * p as usize);
    for i in 0..p {
        let (first, second) = order(i);
        let next = (i + 1) % p;
        edges.push(Edge { from: Port::new(i, first), to: Port::new(i, second), weight: 0 });
        edges.push(Edge { from: Port::new(i, second), to: Port::new(next, order(next).0), weight: 0 });
    }
    OGraph::new((0..p).map(|i| (i, Sign::Pos)), edges)
}

/// Looks up "s3", "l21" or "lens(p)".
pub fn builtin(name: &str) -> Result<OGraph, GraphError> {
    let unknown = || GraphError::UnknownBuiltin(name.to_string());
    match name {
        "s3" => parse_ograph(S3),
        "l21" => parse_ograph(L21),
        _ => {
            let p = name
                .strip_prefix("lens(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|n| n.trim().parse::<u32>().ok())
                .ok_or_else(unknown)?;
            lens(p).map_err(|_| unknown())
        }
    }
}

/// Names of the diagrams exercised by the test suites.
pub const SHIPPED: [&str; 3] = ["s3", "l21", "lens(3)"];
