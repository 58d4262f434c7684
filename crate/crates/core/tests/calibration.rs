//! Closed forms the shipped diagrams are calibrated against.

use qinv_core::hopf::{make_exterior, make_group_algebra, make_uq_borel, HopfMonoid};
use qinv_core::integrals::solve_integrals;
use qinv_core::heisenberg::{beads_evaluate_with, BeadConvention, HeisenbergDouble};
use qinv_core::invariant::{antipode_trace, evaluate, evaluate_with, s3_trace_expression, VertexConvention};
use qinv_core::ograph::{apply_move, builtin, enumerate_sites, MoveKind, Strand};
use qinv_core::scalar::Scalar;

fn algebras() -> Vec<HopfMonoid> {
    let mut hs = vec![make_group_algebra(&[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]).unwrap()];
    hs.extend((2..=5).map(|n| make_uq_borel(n).unwrap()));
    hs.extend((1..=2).map(|d| make_exterior(d).unwrap()));
    hs
}

#[test]
fn s3_is_the_trace_expression() {
    let g = builtin("s3").unwrap();
    for h in algebras() {
        assert_eq!(evaluate(&g, &h).unwrap(), s3_trace_expression(&h, -2).unwrap(), "{}", h.name());
    }
}

#[test]
fn trace_expression_values_on_uq3() {
    let h = make_uq_borel(3).unwrap();
    let q_inv = solve_integrals(&h).unwrap().q.inv().unwrap();
    // S^2 has order 3 here, so the expression is 3-periodic in k
    for k in -3i64..=3 {
        let want = s3_trace_expression(&h, k.rem_euclid(3)).unwrap();
        assert_eq!(s3_trace_expression(&h, k).unwrap(), want);
    }
    assert_eq!(s3_trace_expression(&h, -2).unwrap(), q_inv);
    assert_eq!(s3_trace_expression(&h, 2).unwrap(), Scalar::one());
    // q^-1 str(S) = -2 with q = zeta
    let minus_two_zeta = &Scalar::from_int(-2) * &Scalar::zeta(3);
    assert_eq!(antipode_trace(&h).unwrap(), h.field().coerce(&minus_two_zeta).unwrap());
}

/// Conventions reproducing Z(s3) = q^-1 and Z(l21) = q^-1 str(S) on k[Z2] and u_q(3),
/// and invariant under the 0-2 moves of l21, which introduce negative crossings.
fn matching_wirings() -> Vec<VertexConvention> {
    let hs = [make_group_algebra(&[vec![0, 1], vec![1, 0]]).unwrap(), make_uq_borel(3).unwrap()];
    let (s3, l21) = (builtin("s3").unwrap(), builtin("l21").unwrap());
    let moved: Vec<_> = enumerate_sites(&l21, MoveKind::ZeroTwo).iter().map(|s| apply_move(&l21, s).unwrap()).collect();
    assert!(!moved.is_empty());
    VertexConvention::all()
        .into_iter()
        .filter(|c| {
            hs.iter().all(|h| {
                let q_inv = solve_integrals(h).unwrap().q.inv().unwrap();
                let tr = &q_inv * &antipode_trace(h).unwrap();
                evaluate_with(&s3, h, *c).unwrap() == q_inv
                    && evaluate_with(&l21, h, *c).unwrap() == tr
                    && moved.iter().all(|g| evaluate_with(g, h, *c).unwrap() == tr)
            })
        })
        .collect()
}

#[test]
fn shipped_wiring_is_calibrated() {
    let found = matching_wirings();
    println!("{} of 16 wirings match: {found:?}", found.len());
    assert_eq!(found, vec![VertexConvention::SHIPPED]);
    assert_eq!(evaluate_with(&builtin("l21").unwrap(), &make_uq_borel(3).unwrap(), VertexConvention::SHIPPED).unwrap(), Scalar::from_int(-2));
}

#[test]
fn shipped_bead_convention_is_calibrated() {
    let diagrams: Vec<_> = ["s3", "l21", "lens(2)", "lens(3)"].iter().map(|n| builtin(n).unwrap()).collect();
    let hs = [make_uq_borel(3).unwrap(), make_exterior(2).unwrap()];
    // reweighting separates conventions that differ only in how weights enter
    let reweighted: Vec<_> = diagrams.iter().map(|g| g.reweighted(|e| e.weight + 1)).collect();
    let found: Vec<BeadConvention> = BeadConvention::all()
        .into_iter()
        .filter(|c| {
            hs.iter().all(|h| {
                let hd = HeisenbergDouble::new(h);
                diagrams.iter().chain(&reweighted).all(|g| beads_evaluate_with(g, &hd, *c).unwrap() == evaluate(g, h).unwrap())
            })
        })
        .collect();
    println!("{} of 16 bead conventions match: {found:?}", found.len());
    // reading the circuit backwards with the factors swapped is the same convention
    let mirror = BeadConvention { first_factor_on: Strand::Under, along_orientation: false, ..BeadConvention::SHIPPED };
    assert_eq!(found, vec![BeadConvention::SHIPPED, mirror]);
}
