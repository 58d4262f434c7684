use super::*;

fn cyclic(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
}

fn s3_table() -> Vec<Vec<usize>> {
    // permutations of {0,1,2} in lexicographic order, composed as (p*q)(x) = p(q(x))
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let pos = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
    perms.iter().map(|p| perms.iter().map(|q| pos([p[q[0]], p[q[1]], p[q[2]]])).collect()).collect()
}

fn assert_all_hold(h: &HopfMonoid) {
    let r = check_axioms(h);
    assert!(r.all_hold(), "{}: {:?}", h.name(), r.failures());
}

#[test]
fn group_algebras_pass() {
    assert_all_hold(&make_group_algebra(&cyclic(2)).unwrap());
    assert_all_hold(&make_group_algebra(&cyclic(3)).unwrap());
    assert_all_hold(&make_group_algebra(&s3_table()).unwrap());
}

#[test]
fn z2_antipode_is_inversion() {
    let h = make_group_algebra(&cyclic(2)).unwrap();
    assert_eq!(h.antipode_matrix(), Matrix::identity(2));
    assert_eq!(h.antipode_power(2), GradedTensor::identity(h.space()));
}

#[test]
fn bad_tables_rejected() {
    let t = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 0, 1]];
    assert!(matches!(make_group_algebra(&t), Err(HopfError::NotAGroup(_))));
    let t = vec![vec![1, 0], vec![0, 0]];
    assert!(matches!(make_group_algebra(&t), Err(HopfError::NotAGroup(_))));
}

#[test]
fn uq_borel_passes() {
    for n in [2, 3] {
        assert_all_hold(&make_uq_borel(n).unwrap());
    }
}

#[test]
fn uq_s2_on_e() {
    for n in [2, 3] {
        let h = make_uq_borel(n).unwrap();
        let e = n; // E = E^1 K^0
        let s2e = HopfMonoid::apply_matrix(&h.antipode_power_matrix(2), &h.basis_vec(e));
        let qinv = Scalar::zeta(n as u32).inv().unwrap();
        let mut expect = h.zero_vec();
        expect[e] = qinv;
        assert_eq!(s2e, expect);
        assert_ne!(h.antipode_power(2), GradedTensor::identity(h.space()));
    }
}

#[test]
fn uq_delta_ek_is_product() {
    let n = 3;
    let h = make_uq_borel(n).unwrap();
    let (e, k, ek) = (n, 1, n + 1);
    // Delta(E) Delta(K) computed in H (x) H
    let prod = |x: &[(usize, usize, Scalar)], y: &[(usize, usize, Scalar)]| {
        let mut out = std::collections::BTreeMap::new();
        for (a, b, u) in x {
            for (c, d, v) in y {
                let l = h.mul_vec(&h.basis_vec(*a), &h.basis_vec(*c));
                let r = h.mul_vec(&h.basis_vec(*b), &h.basis_vec(*d));
                for (p, lp) in l.iter().enumerate() {
                    for (q, rq) in r.iter().enumerate() {
                        if !lp.is_zero() && !rq.is_zero() {
                            let e = out.entry((p, q)).or_insert_with(Scalar::zero);
                            *e += &(u * v * lp * rq);
                        }
                    }
                }
            }
        }
        out.retain(|_, v: &mut Scalar| !v.is_zero());
        out
    };
    let got: std::collections::BTreeMap<_, _> =
        h.consts().delta[ek].iter().map(|(a, b, c)| ((*a, *b), c.clone())).collect();
    assert_eq!(got, prod(&h.consts().delta[e], &h.consts().delta[k]));
}

#[test]
fn exterior_basics() {
    let h = make_exterior(1).unwrap();
    // X * X = 0
    assert!(h.consts().mul[3].is_empty());
    assert_all_hold(&h);
    let h2 = make_exterior(2).unwrap();
    assert_all_hold(&h2);
    // S(X1 X2) = -S(X2) S(X1) = -X2 X1 = X1 X2
    assert_eq!(h2.consts().s[3], vec![(3, Scalar::one())]);
}

#[test]
fn exterior_needs_signs() {
    for d in [1, 2] {
        let h = make_exterior_ungraded(d).unwrap();
        let r = check_axioms(&h);
        assert!(!r.all_hold(), "ungraded Lambda({d}) unexpectedly passes");
    }
    let r = check_axioms(&make_exterior_ungraded(2).unwrap());
    assert!(!r.get("bialgebra").unwrap().holds);
}

#[test]
fn corrupted_product_detected() {
    let h = make_group_algebra(&cyclic(3)).unwrap();
    let mut items = h.m().matrix_entries();
    items[4].2 = Scalar::from_int(2);
    let m = GradedTensor::map(&[h.space().clone(), h.space().clone()], &[h.space().clone()], items).unwrap();
    let delta = h.delta().clone();
    let bad = h.with_tensors(m, delta);
    let r = check_axioms(&bad);
    let a = r.get("associativity").unwrap();
    assert!(!a.holds);
    assert!(a.witness.is_some());
}

#[test]
fn duals_pass() {
    let z2 = make_group_algebra(&cyclic(2)).unwrap();
    assert_all_hold(&z2.dual().unwrap());
    assert_all_hold(&make_uq_borel(3).unwrap().dual().unwrap());
    assert_all_hold(&make_exterior(1).unwrap().dual().unwrap());
    assert_all_hold(&make_exterior(2).unwrap().dual().unwrap());
    let z3 = make_group_algebra(&cyclic(3)).unwrap();
    let dd = z3.dual().unwrap().dual().unwrap();
    assert_eq!(dd.consts(), z3.consts());
}

#[test]
fn file_round_trip() {
    let z2 = make_group_algebra(&cyclic(2)).unwrap();
    let text = render_structure_constants(&z2);
    let back = load_structure_constants(&text).unwrap();
    assert_eq!(back.consts(), z2.consts());
    let l2 = make_exterior(2).unwrap();
    let back = load_structure_constants(&render_structure_constants(&l2)).unwrap();
    assert_eq!(back.consts(), l2.consts());
}

#[test]
fn file_without_antipode() {
    for h in [make_uq_borel(2).unwrap(), make_exterior(2).unwrap(), make_group_algebra(&s3_table()).unwrap()] {
        let text: String = render_structure_constants(&h).lines().filter(|l| !l.starts_with("S ")).map(|l| format!("{l}\n")).collect();
        let back = load_structure_constants(&text).unwrap();
        assert_eq!(back.consts().s, h.consts().s, "{}", h.name());
    }
    // no antipode exists for the bialgebra structure of a monoid that is not a group
    let text = "hopf dim=2 field=rational\nM 0 0 -> 0 : 1\nM 0 1 -> 1 : 1\nM 1 0 -> 1 : 1\nM 1 1 -> 1 : 1\nunit -> 0 : 1\nD 0 -> 0 0 : 1\nD 1 -> 1 1 : 1\neps 0 : 1\neps 1 : 1\n";
    assert_eq!(load_structure_constants(text).unwrap_err(), HopfError::NoAntipode);
}

#[test]
fn file_violating_coassociativity() {
    let z2 = make_group_algebra(&cyclic(2)).unwrap();
    let text = render_structure_constants(&z2).replace("D 1 -> 1 1 : 1", "D 1 -> 1 1 : 1\nD 1 -> 0 1 : 1");
    match load_structure_constants(&text) {
        Err(HopfError::Axiom { name, .. }) => assert_eq!(name, "coassociativity"),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn file_parse_errors() {
    assert!(matches!(load_structure_constants("hopf dim=2"), Err(HopfError::Parse { .. })));
    assert!(matches!(load_structure_constants("hopf dim=2 field=rational\nM 0 5 -> 1 : 1"), Err(HopfError::Parse { line: 2, .. })));
    assert!(matches!(load_structure_constants("hopf dim=1 field=rational\nQ 0 : 1"), Err(HopfError::Parse { .. })));
}

#[test]
fn group_table_files() {
    let t = parse_group_table("# Z3\norder=3\n0 1 2\n1 2 0\n2 0 1\n").unwrap();
    assert_eq!(t, vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]);
    assert!(parse_group_table("order=2\n0 1\n").is_err());
    assert!(parse_group_table("order=2\n0 1\n1 2\n").is_err());
    assert!(parse_group_table("0 1\n1 0\n").is_err());
    assert!(parse_group_table("order=2\n0 1 0\n1 0\n").is_err());
}
