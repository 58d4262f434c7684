//! Property tests for the invariants that hold for every input.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qinv_core::heisenberg::{beads_evaluate, HdVec, HeisenbergDouble};
use qinv_core::hopf::{make_exterior, make_group_algebra, make_uq_borel, HopfMonoid};
use qinv_core::invariant::evaluate;
use qinv_core::ograph::{parse_ograph, random_walk, OGraph};
use qinv_core::scalar::Scalar;
use qinv_core::tensor::{GradedSpace, GradedTensor, Leg};

fn cyclo(n: u32, coeffs: &[i64]) -> Scalar {
    Scalar::from_poly(n, coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect())
}

fn order() -> impl Strategy<Value = u32> {
    prop_oneof![Just(3u32), Just(4), Just(5), Just(7), Just(12)]
}

fn element(n: u32) -> impl Strategy<Value = Scalar> {
    prop::collection::vec(-4i64..=4, 1..8).prop_map(move |c| cyclo(n, &c))
}

fn three(n: u32) -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
    (element(n), element(n), element(n))
}

proptest! {
    #[test]
    fn cyclotomic_field_laws((a, b, c) in order().prop_flat_map(three)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn cyclotomic_display_round_trips(a in order().prop_flat_map(element)) {
        let back: Scalar = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn embedding_is_multiplicative((a, b) in order().prop_flat_map(|n| (element(n), element(n)))) {
        let lhs = (&a * &b).embed_complex();
        let rhs = a.embed_complex() * b.embed_complex();
        prop_assert!((lhs - rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
    }

    #[test]
    fn zeta_has_exact_order(n in 2u32..=12) {
        let z = Scalar::zeta(n);
        prop_assert!(z.pow(n as i64).unwrap().is_one());
        for k in 1..n as i64 {
            prop_assert!(!z.pow(k).unwrap().is_one());
        }
    }
}

fn space() -> impl Strategy<Value = GradedSpace> {
    prop::collection::vec(any::<bool>(), 1..4).prop_map(|p| GradedSpace::new(p).unwrap())
}

fn random_tensor(spaces: &[GradedSpace], seed: u64) -> GradedTensor {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let legs: Vec<Leg> = spaces
        .iter()
        .enumerate()
        .map(|(k, s)| if k % 2 == 0 { Leg::input(s) } else { Leg::output(s) })
        .collect();
    let mut items = Vec::new();
    for _ in 0..12 {
        let idx: Vec<usize> = spaces.iter().map(|s| rng.gen_range(0..s.dim())).collect();
        items.push((idx, Scalar::from_int(rng.gen_range(-3..=3))));
    }
    let t = GradedTensor::from_entries(legs.clone(), items).unwrap();
    // keep only the even part so the tensor is a morphism of super vector spaces
    let odd = |idx: &[usize]| idx.iter().zip(spaces).filter(|(&i, s)| s.is_odd(i)).count() % 2 == 1;
    let even: Vec<(Vec<usize>, Scalar)> =
        t.entries().filter(|(i, _)| !odd(i)).map(|(i, s)| (i, s.clone())).collect();
    GradedTensor::from_entries(legs, even).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn permutations_compose(spaces in prop::collection::vec(space(), 3..5), seed in any::<u64>(), p in any::<u64>()) {
        use rand::seq::SliceRandom;
        let n = spaces.len();
        let t = random_tensor(&spaces, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        let mut p1: Vec<usize> = (0..n).collect();
        let mut p2: Vec<usize> = (0..n).collect();
        p1.shuffle(&mut rng);
        p2.shuffle(&mut rng);
        let both: Vec<usize> = p2.iter().map(|&k| p1[k]).collect();
        prop_assert_eq!(t.permute(&p1).permute(&p2), t.permute(&both));
        let mut inv = vec![0; n];
        for (k, &x) in p1.iter().enumerate() {
            inv[x] = k;
        }
        prop_assert_eq!(t.permute(&p1).permute(&inv), t);
    }

    #[test]
    fn swap_is_involutive_and_natural(v in space(), w in space(), seed in any::<u64>()) {
        let round = GradedTensor::swap(&w, &v).compose(&GradedTensor::swap(&v, &w)).unwrap();
        prop_assert_eq!(round, GradedTensor::identity_on(&[v.clone(), w.clone()]));
        let f = random_tensor(&[v.clone(), v.clone()], seed);
        let g = random_tensor(&[w.clone(), w.clone()], seed ^ 1);
        let lhs = GradedTensor::swap(&v, &w).compose(&f.tensor(&g).unwrap()).unwrap();
        let rhs = g.tensor(&f).unwrap().compose(&GradedTensor::swap(&v, &w)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

fn z2() -> HopfMonoid {
    make_group_algebra(&[vec![0, 1], vec![1, 0]]).unwrap()
}

fn diagram() -> impl Strategy<Value = OGraph> {
    (1usize..=3, any::<u64>()).prop_map(|(n, seed)| OGraph::random(&mut ChaCha8Rng::seed_from_u64(seed), n, 2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn walks_preserve_the_invariant(g in diagram(), seed in any::<u64>()) {
        for h in [z2(), make_uq_borel(3).unwrap()] {
            let z0 = evaluate(&g, &h).unwrap();
            let (end, _) = random_walk(&g, 12, seed);
            prop_assert_eq!(evaluate(&end, &h).unwrap(), z0);
        }
    }

    #[test]
    fn canonical_form_is_a_relabeling(g in diagram()) {
        let c = g.canonical();
        prop_assert_eq!(c.canonical(), c.clone());
        prop_assert_eq!(parse_ograph(&c.render()).unwrap(), c.clone());
        prop_assert_eq!(evaluate(&c, &z2()).unwrap(), evaluate(&g, &z2()).unwrap());
    }

    #[test]
    fn involutory_weights_are_irrelevant(g in diagram(), seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z3 = [vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        for h in [make_group_algebra(&z3).unwrap(), make_exterior(1).unwrap()] {
            let re = g.reweighted(|_| rng.gen_range(-4..=4));
            prop_assert_eq!(evaluate(&re, &h).unwrap(), evaluate(&g, &h).unwrap());
        }
    }

    #[test]
    fn beads_match_network_on_knots(g in diagram()) {
        prop_assume!(g.component_count() == 1);
        for h in [z2(), make_exterior(1).unwrap(), make_uq_borel(2).unwrap()] {
            prop_assert_eq!(beads_evaluate(&g, &h).unwrap(), evaluate(&g, &h).unwrap());
        }
    }
}

fn hd_vec(dim: usize) -> impl Strategy<Value = HdVec> {
    prop::collection::btree_map(0..dim, (-3i64..=3).prop_map(Scalar::from_int), 1..5)
        .prop_map(|m| m.into_iter().filter(|(_, s)| !s.is_zero()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn heisenberg_product_is_associative((a, b, c) in (hd_vec(16), hd_vec(16), hd_vec(16)), pick in 0usize..3) {
        let klein = [vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]];
        let h = match pick {
            0 => make_exterior(2).unwrap(),
            1 => make_uq_borel(2).unwrap(),
            _ => make_group_algebra(&klein).unwrap(),
        };
        let hd = HeisenbergDouble::new(&h);
        let one = hd.unit();
        prop_assert_eq!(hd.mul(&hd.mul(&a, &b), &c), hd.mul(&a, &hd.mul(&b, &c)));
        prop_assert_eq!(hd.mul(&one, &a), a.clone());
        prop_assert_eq!(hd.mul(&a, &one), a);
    }
}
