use super::*;
use crate::hopf::{make_exterior, make_group_algebra, make_uq_borel, HopfMonoid};
use crate::invariant::{evaluate, pattern_tensor, VertexConvention};
use crate::ograph::{builtin, parse_ograph, random_walk};

fn cyclic(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
}

fn algebras() -> Vec<HopfMonoid> {
    vec![
        make_group_algebra(&cyclic(2)).unwrap(),
        make_uq_borel(2).unwrap(),
        make_uq_borel(3).unwrap(),
        make_uq_borel(4).unwrap(),
        make_exterior(1).unwrap(),
        make_exterior(2).unwrap(),
    ]
}

#[test]
fn table_sides_have_equal_tensors() {
    for h in algebras() {
        for kind in [MoveKind::ZeroTwo, MoveKind::Mp] {
            for (k, v) in variants(kind).iter().enumerate() {
                let a = pattern_tensor(&v.small, &h, VertexConvention::SHIPPED).unwrap();
                let b = pattern_tensor(&v.large, &h, VertexConvention::SHIPPED).unwrap();
                assert_eq!(a, b, "{kind:?} variant {k} on {}", h.name());
            }
        }
    }
}

#[test]
fn table_shape() {
    assert_eq!(variants(MoveKind::ZeroTwo).len(), 6);
    assert_eq!(variants(MoveKind::Mp).len(), 12);
    let weighted = variants(MoveKind::Mp).iter().filter(|v| v.weighted).count();
    assert_eq!(weighted, 6);
    for v in variants(MoveKind::Mp) {
        assert_eq!((v.small.crossing_count(), v.large.crossing_count()), (2, 3));
        // weighted variants carry exactly two unit weights in total
        let units: i64 = [&v.small, &v.large].iter().flat_map(|p| p.strands.iter()).flat_map(|s| s.weights.iter()).map(|w| w.abs()).sum();
        assert!(units == 0 || units == 2 || units == 4, "{units}");
    }
}

/// A diagram with room for every kind of move.
fn busy() -> OGraph {
    let g = builtin("lens(3)").unwrap();
    let s = &enumerate_sites(&g, MoveKind::ZeroTwo)[7];
    apply_move(&g, s).unwrap()
}

#[test]
fn forward_then_backward_is_identity() {
    for g in [builtin("l21").unwrap(), builtin("lens(3)").unwrap(), busy()] {
        for kind in [MoveKind::ZeroTwo, MoveKind::Mp] {
            let sites = enumerate_sites(&g, kind);
            for s in sites.iter().filter(|s| s.direction == Direction::Forward).step_by(5) {
                let big = apply_move(&g, s).unwrap();
                let base = g.next_id();
                let (_, large) = sides(&variants(kind)[s.variant], Direction::Forward);
                let fresh: Vec<u32> = (0..large.crossing_count() as u32).map(|i| base + i).collect();
                let back = MoveSite { kind, variant: s.variant, direction: Direction::Backward, crossings: fresh, edges: vec![] };
                let undone = apply_move(&big, &back).unwrap();
                assert_eq!(undone.canonical(), g.canonical(), "{s:?}");
            }
        }
    }
}

#[test]
fn h_moves() {
    let g = builtin("l21").unwrap();
    let sites = enumerate_sites(&g, MoveKind::H);
    assert_eq!(sites.len(), 2 * g.crossing_count());
    let f = apply_move(&g, &sites[0]).unwrap();
    assert_ne!(f, g);
    let b = apply_move(&f, &sites[1]).unwrap();
    assert_eq!(b, g);
    // a loop at the crossing keeps its weight
    let s3 = builtin("s3").unwrap();
    let moved = apply_move(&s3, &enumerate_sites(&s3, MoveKind::H)[0]).unwrap();
    assert_eq!(moved, s3);
}

#[test]
fn no_bigon_no_backward_sites() {
    let g = builtin("s3").unwrap();
    assert!(enumerate_sites(&g, MoveKind::ZeroTwo).iter().all(|s| s.direction == Direction::Forward));
    let l3 = builtin("lens(3)").unwrap();
    assert!(enumerate_sites(&l3, MoveKind::ZeroTwo).iter().all(|s| s.direction == Direction::Forward));
}

#[test]
fn sites_are_deterministic() {
    let g = busy();
    for kind in MoveKind::ALL {
        assert_eq!(enumerate_sites(&g, kind), enumerate_sites(&g, kind));
    }
    assert!(enumerate_sites(&builtin("s3").unwrap(), MoveKind::Mp).is_empty());
    assert!(!enumerate_sites(&g, MoveKind::Mp).is_empty());
}

#[test]
fn pattern_mismatch_rejected() {
    let g = builtin("l21").unwrap();
    let bad = MoveSite { kind: MoveKind::Mp, variant: 0, direction: Direction::Forward, crossings: vec![0, 1], edges: vec![] };
    assert!(matches!(apply_move(&g, &bad), Err(GraphError::PatternMismatch(_))));
    let bad = MoveSite { kind: MoveKind::H, variant: 0, direction: Direction::Forward, crossings: vec![9], edges: vec![] };
    assert!(apply_move(&g, &bad).is_err());
}

#[test]
fn moves_preserve_components_and_invariant() {
    let hs = [make_group_algebra(&cyclic(2)).unwrap(), make_uq_borel(2).unwrap(), make_uq_borel(3).unwrap()];
    let g = busy();
    let z: Vec<_> = hs.iter().map(|h| evaluate(&g, h).unwrap()).collect();
    for kind in MoveKind::ALL {
        for s in enumerate_sites(&g, kind).iter().step_by(11) {
            let m = apply_move(&g, s).unwrap();
            if kind != MoveKind::Mp {
                assert_eq!(m.component_count(), g.component_count());
            }
            for (h, z0) in hs.iter().zip(&z) {
                assert_eq!(&evaluate(&m, h).unwrap(), z0, "{s:?} on {}", h.name());
            }
        }
    }
}

#[test]
fn l21_reaches_mp_after_zero_two() {
    let g = builtin("l21").unwrap();
    assert!(enumerate_sites(&g, MoveKind::Mp).is_empty());
    let h = make_uq_borel(3).unwrap();
    let z = evaluate(&g, &h).unwrap();
    let once = enumerate_sites(&g, MoveKind::ZeroTwo)
        .into_iter()
        .map(|s| apply_move(&g, &s).unwrap())
        .find(|m| enumerate_sites(m, MoveKind::Mp).iter().any(|s| s.direction == Direction::Forward))
        .expect("some 0-2 move opens an MP site");
    let s = enumerate_sites(&once, MoveKind::Mp).into_iter().find(|s| s.direction == Direction::Forward).unwrap();
    let grown = apply_move(&once, &s).unwrap();
    assert_eq!(grown.crossing_count(), 5);
    assert_eq!(evaluate(&grown, &h).unwrap(), z);
}

#[test]
fn walks() {
    let g = builtin("l21").unwrap();
    let (same, trace) = random_walk(&g, 0, 1);
    assert_eq!(same, g);
    assert!(trace.is_empty());
    let (a, ta) = random_walk(&g, 30, 5);
    let (b, tb) = random_walk(&g, 30, 5);
    assert_eq!(a, b);
    assert_eq!(ta, tb);
    assert!(ta.iter().all(|s| s.crossings <= g.crossing_count() + crate::ograph::walk::DEFAULT_HEADROOM));
    assert_eq!(crate::ograph::walk::replay(&g, &ta).unwrap(), a);
    let h = make_uq_borel(2).unwrap();
    assert_eq!(evaluate(&a, &h).unwrap(), evaluate(&g, &h).unwrap());
}

#[test]
fn loop_creation_is_not_offered() {
    // a bigon whose strands close up on themselves
    let g = parse_ograph(
        "crossing 0 +\ncrossing 1 -\nedge 0.oo -> 1.oi w=0\nedge 1.oo -> 0.oi w=0\nedge 0.uo -> 1.ui w=0\nedge 1.uo -> 0.ui w=0\n",
    )
    .unwrap();
    let back: Vec<_> = enumerate_sites(&g, MoveKind::ZeroTwo).into_iter().filter(|s| s.direction == Direction::Backward).collect();
    assert!(back.is_empty());
}
