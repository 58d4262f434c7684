//! Regenerates the integral 0-2 and MP move tables by searching local patterns whose
//! open tensors agree for u_q at n = 3, then confirming each candidate on further algebras.
//!
//! Run with `cargo run --release --example derive_moves`.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use qinv_core::hopf::{make_exterior, make_group_algebra, make_uq_borel, HopfMonoid};
use qinv_core::invariant::{pattern_tensor, VertexConvention};
use qinv_core::ograph::pattern::{Pattern, PatternStrand, Visit};
use qinv_core::ograph::{Sign, Strand};
use qinv_core::scalar::Scalar;
use qinv_core::tensor::GradedTensor;

const SIGNS: [Sign; 2] = [Sign::Pos, Sign::Neg];
const ROLES: [Strand; 2] = [Strand::Over, Strand::Under];

fn strand(visits: Vec<(usize, Strand)>, weights: Vec<i64>) -> PatternStrand {
    PatternStrand { visits: visits.into_iter().map(|(crossing, strand)| Visit { crossing, strand }).collect(), weights }
}

fn tensor(p: &Pattern, h: &HopfMonoid) -> GradedTensor {
    pattern_tensor(p, h, VertexConvention::SHIPPED).unwrap()
}

fn confirm(lhs: &Pattern, rhs: &Pattern, algebras: &[HopfMonoid]) -> bool {
    let bad: Vec<&str> = algebras.iter().filter(|h| tensor(lhs, h) != tensor(rhs, h)).map(|h| h.name()).collect();
    if !bad.is_empty() {
        println!("# fails on {bad:?}");
    }
    bad.is_empty()
}

fn cyclic(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
}

/// Moves the boundary of a pattern to relabel strands by `perm`.
fn relabel(p: &Pattern, perm: &[usize]) -> Pattern {
    let mut strands = vec![p.strands[0].clone(); p.strands.len()];
    for (s, st) in p.strands.iter().enumerate() {
        strands[perm[s]] = st.clone();
    }
    Pattern { signs: p.signs.clone(), strands }
}

/// Renumbers crossings in order of first appearance along the strands.
fn normalize(p: &Pattern) -> Pattern {
    let mut order = Vec::new();
    for st in &p.strands {
        for v in &st.visits {
            if !order.contains(&v.crossing) {
                order.push(v.crossing);
            }
        }
    }
    let pos = |c: usize| order.iter().position(|&x| x == c).unwrap();
    Pattern {
        signs: order.iter().map(|&c| p.signs[c]).collect(),
        strands: p
            .strands
            .iter()
            .map(|st| PatternStrand {
                visits: st.visits.iter().map(|v| Visit { crossing: pos(v.crossing), strand: v.strand }).collect(),
                weights: st.weights.clone(),
            })
            .collect(),
    }
}

/// Canonical key of a move up to strand relabeling.
fn key(lhs: &Pattern, rhs: &Pattern) -> String {
    (0..lhs.strands.len())
        .permutations(lhs.strands.len())
        .map(|perm| format!("{} => {}", normalize(&relabel(lhs, &perm)), normalize(&relabel(rhs, &perm))))
        .min()
        .unwrap()
}

fn weight_norm(p: &Pattern) -> i64 {
    p.strands.iter().flat_map(|s| s.weights.iter()).map(|w| w.abs()).sum()
}

/// Applies an H-move of amount h[c] at every crossing c of a pattern.
fn apply_gauge(p: &Pattern, h: &[i64]) -> Pattern {
    let mut q = p.clone();
    for st in q.strands.iter_mut() {
        for (i, v) in st.visits.iter().enumerate() {
            st.weights[i] -= h[v.crossing];
            st.weights[i + 1] += h[v.crossing];
        }
    }
    q
}

/// Moves each strand's in-tail onto its out-tail; valid when the other side is the identity.
fn conjugation_normal(p: &Pattern) -> Pattern {
    let mut q = p.clone();
    for st in q.strands.iter_mut() {
        let last = st.weights.len() - 1;
        st.weights[last] += st.weights[0];
        st.weights[0] = 0;
    }
    q
}

/// The smallest pattern in the H-gauge orbit of each side.
fn best_representative(lhs: &Pattern, rhs: &Pattern) -> (Pattern, Pattern) {
    let best = |p: &Pattern| {
        (0..p.crossing_count())
            .map(|_| -2i64..=2)
            .multi_cartesian_product()
            .map(|h| apply_gauge(p, &h))
            .chain(std::iter::once(p.clone()))
            .min_by_key(|q| (weight_norm(q), q.to_string()))
            .unwrap()
    };
    (best(lhs), best(rhs))
}

fn s2_eigenvalues(h: &HopfMonoid) -> Vec<Scalar> {
    let m = h.antipode_power_matrix(2);
    (0..h.dim())
        .map(|i| {
            assert!((0..h.dim()).all(|j| i == j || m.data[i][j].is_zero()), "S^2 is not diagonal");
            m.data[i][i].clone()
        })
        .collect()
}

fn main() {
    let uq3 = make_uq_borel(3).unwrap();
    let checks = vec![
        make_uq_borel(2).unwrap(),
        make_uq_borel(4).unwrap(),
        make_uq_borel(5).unwrap(),
        make_group_algebra(&cyclic(2)).unwrap(),
        make_exterior(2).unwrap(),
        make_exterior(1).unwrap(),
    ];
    let which = std::env::args().nth(1).unwrap_or_default();
    if which != "mp" {
        zero_two(&uq3, &checks);
    }
    if which != "02" {
        mp(&uq3, &checks);
    }
}

fn zero_two(uq3: &HopfMonoid, checks: &[HopfMonoid]) {
    let bare: Pattern = " : 0 | 0".parse().unwrap();
    let id = tensor(&bare, uq3);
    let mut found = BTreeSet::new();
    for (anti, ra0, ra1, s0, s1) in itertools::iproduct!([false, true], ROLES, ROLES, SIGNS, SIGNS) {
        for w in (0..5).map(|_| -1i64..=1).multi_cartesian_product() {
            let a = strand(vec![(0, ra0), (1, ra1)], vec![w[0], 0, w[1]]);
            let bv = if anti { vec![(1, ra1.other()), (0, ra0.other())] } else { vec![(0, ra0.other()), (1, ra1.other())] };
            let b = strand(bv, vec![w[2], w[3], w[4]]);
            let rhs = Pattern { signs: vec![s0, s1], strands: vec![a, b] };
            if tensor(&rhs, uq3) != id {
                continue;
            }
            let (l, r) = best_representative(&bare, &conjugation_normal(&rhs));
            if confirm(&l, &r, checks) {
                found.insert(key(&l, &r));
            } else {
                println!("# 0-2 candidate fails on a check algebra: {r}");
            }
        }
    }
    println!("# 0-2 variants: {}", found.len());
    for k in &found {
        println!("{k}");
    }
}

/// The three-strand side: strands i < j cross once at crossing index of pair (i, j).
fn mp(uq3: &HopfMonoid, checks: &[HopfMonoid]) {
    let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
    let ev = s2_eigenvalues(uq3);
    let q = Scalar::zeta(3);
    let powers: Vec<Scalar> = (0..3).map(|k| q.pow(k).unwrap()).collect();
    // discrete log of each S^2 eigenvalue, in powers of q
    let ev_log: Vec<i64> = ev.iter().map(|e| powers.iter().position(|p| p == e).unwrap() as i64).collect();

    let mut lhs_list = Vec::new();
    for orders in (0..3).map(|_| [false, true]).multi_cartesian_product() {
        for over in (0..3).map(|_| [false, true]).multi_cartesian_product() {
            for signs in (0..3).map(|_| SIGNS).multi_cartesian_product() {
                for kappa in -1..=1 {
                    let mut strands = Vec::new();
                    for s in 0..3 {
                        let mut visits: Vec<(usize, Strand)> = pairs
                            .iter()
                            .enumerate()
                            .filter(|(_, &(i, j))| i == s || j == s)
                            .map(|(c, &(i, _))| (c, if (i == s) == over[c] { Strand::Over } else { Strand::Under }))
                            .collect();
                        if orders[s] {
                            visits.reverse();
                        }
                        let mid = if s == 2 { kappa } else { 0 };
                        strands.push(strand(visits, vec![0, mid, 0]));
                    }
                    lhs_list.push(Pattern { signs: signs.clone(), strands });
                }
            }
        }
    }
    let mut rhs_list = Vec::new();
    for m in 0..3 {
        let others: Vec<usize> = (0..3).filter(|&s| s != m).collect();
        for rev in [false, true] {
            for over in (0..2).map(|_| [false, true]).multi_cartesian_product() {
                for signs in (0..2).map(|_| SIGNS).multi_cartesian_product() {
                    let mut strands = vec![strand(vec![], vec![0]); 3];
                    let role = |c: usize, mine: bool| if over[c] == mine { Strand::Over } else { Strand::Under };
                    let mut mv: Vec<(usize, Strand)> = (0..2).map(|c| (c, role(c, true))).collect();
                    if rev {
                        mv.reverse();
                    }
                    strands[m] = strand(mv, vec![0, 0, 0]);
                    for (c, &o) in others.iter().enumerate() {
                        strands[o] = strand(vec![(c, role(c, false))], vec![0, 0]);
                    }
                    rhs_list.push(Pattern { signs: signs.clone(), strands });
                }
            }
        }
    }
    eprintln!("computing {} + {} tensors", lhs_list.len(), rhs_list.len());
    let support = |t: &GradedTensor| -> Vec<Vec<usize>> { t.entries().map(|(i, _)| i).collect() };
    let mut by_support: HashMap<Vec<Vec<usize>>, Vec<(usize, GradedTensor)>> = HashMap::new();
    for (k, r) in rhs_list.iter().enumerate() {
        let t = tensor(r, uq3);
        by_support.entry(support(&t)).or_default().push((k, t));
    }
    let mut found = BTreeSet::new();
    for lhs in &lhs_list {
        let tl = tensor(lhs, uq3);
        let Some(cands) = by_support.get(&support(&tl)) else { continue };
        for (k, tr) in cands {
            // ratio of entries as a power of q, then solve for the six tail weights mod 3
            let mut logs = Vec::new();
            let mut ok = true;
            for ((idx, a), (_, b)) in tl.entries().zip(tr.entries()) {
                let r = a * &b.inv().unwrap();
                match powers.iter().position(|p| *p == r) {
                    Some(l) => logs.push((idx, l as i64)),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            for t in (0..6).map(|_| 0i64..3).multi_cartesian_product() {
                let fits = logs.iter().all(|(idx, l)| {
                    let e: i64 = (0..6).map(|leg| ev_log[idx[leg]] * t[leg]).sum();
                    (e - l).rem_euclid(3) == 0
                });
                if !fits {
                    continue;
                }
                let mut rhs = rhs_list[*k].clone();
                for s in 0..3 {
                    let lift = |x: i64| if x == 2 { -1 } else { x };
                    let st = &mut rhs.strands[s];
                    let last = st.weights.len() - 1;
                    if st.visits.is_empty() {
                        st.weights[0] += lift(t[s]) + lift(t[3 + s]);
                    } else {
                        st.weights[0] += lift(t[s]);
                        st.weights[last] += lift(t[3 + s]);
                    }
                }
                if tensor(&rhs, uq3) != tl {
                    println!("# lift mismatch {lhs} => {rhs}");
                    continue;
                }
                let (l, r) = best_representative(lhs, &rhs);
                if confirm(&l, &r, checks) {
                    found.insert(key(&l, &r));
                } else {
                    println!("# MP candidate fails on a check algebra: {lhs} => {rhs}");
                }
            }
        }
    }
    println!("# MP variants: {}", found.len());
    for k in &found {
        println!("{k}");
    }
}
