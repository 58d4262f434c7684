//! Constructors for group algebras, the Borel part of small quantum sl2, and exterior algebras.

use std::collections::BTreeMap;

use super::{HopfError, HopfMonoid, StructureConstants};
use crate::scalar::{FieldKind, Scalar};
use crate::tensor::GradedSpace;

type Vector = BTreeMap<usize, Scalar>;
type Vector2 = BTreeMap<(usize, usize), Scalar>;

fn add_to<K: Ord + Copy>(v: &mut BTreeMap<K, Scalar>, k: K, c: Scalar) {
    let e = v.entry(k).or_insert_with(Scalar::zero);
    *e += &c;
    if e.is_zero() {
        v.remove(&k);
    }
}

/// Product in H from a product table on basis elements.
fn mul_sparse(mul: &dyn Fn(usize, usize) -> Vec<(usize, Scalar)>, x: &Vector, y: &Vector) -> Vector {
    let mut out = Vector::new();
    for (&i, a) in x {
        for (&j, b) in y {
            for (k, c) in mul(i, j) {
                add_to(&mut out, k, a * b * c);
            }
        }
    }
    out
}

/// Product in the super tensor square: (x (x) y)(x' (x) y') = (-1)^{|y||x'|} xx' (x) yy'.
fn mul_tensor(
    mul: &dyn Fn(usize, usize) -> Vec<(usize, Scalar)>,
    odd: &dyn Fn(usize) -> bool,
    x: &Vector2,
    y: &Vector2,
) -> Vector2 {
    let mut out = Vector2::new();
    for (&(a, b), u) in x {
        for (&(c, d), v) in y {
            let sign = if odd(b) && odd(c) { -1 } else { 1 };
            let uv = u * v * Scalar::from_int(sign);
            for (p, s) in mul(a, c) {
                for (q, t) in mul(b, d) {
                    add_to(&mut out, (p, q), &uv * &s * &t);
                }
            }
        }
    }
    out
}

fn to_rows(v: Vector) -> Vec<(usize, Scalar)> {
    v.into_iter().collect()
}

fn to_rows2(v: Vector2) -> Vec<(usize, usize, Scalar)> {
    v.into_iter().map(|((a, b), c)| (a, b, c)).collect()
}

/// The group algebra K[G] of a finite group given by its multiplication table.
pub fn make_group_algebra(table: &[Vec<usize>]) -> Result<HopfMonoid, HopfError> {
    let n = table.len();
    if n == 0 {
        return Err(HopfError::NotAGroup("empty table".into()));
    }
    if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
        return Err(HopfError::NotAGroup("table is not n x n over 0..n".into()));
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(HopfError::NotAGroup(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                }
            }
        }
    }
    let e = (0..n)
        .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
        .ok_or_else(|| HopfError::NotAGroup("no identity element".into()))?;
    let mut inv = vec![0; n];
    for g in 0..n {
        inv[g] = (0..n)
            .find(|&h| table[g][h] == e && table[h][g] == e)
            .ok_or_else(|| HopfError::NotAGroup(format!("element {g} has no inverse")))?;
    }
    let one = Scalar::one;
    let consts = StructureConstants {
        mul: (0..n * n).map(|ij| vec![(table[ij / n][ij % n], one())]).collect(),
        unit: vec![(e, one())],
        delta: (0..n).map(|g| vec![(g, g, one())]).collect(),
        eps: vec![one(); n],
        s: inv.iter().map(|&h| vec![(h, one())]).collect(),
        s_inv: Some(inv.iter().map(|&h| vec![(h, one())]).collect()),
    };
    HopfMonoid::new(format!("k[G{n}]"), GradedSpace::even(n), FieldKind::Rational, consts)
}

/// u_q(sl2+) at q = zeta_n on the basis E^a K^b, index a*n + b.
pub fn make_uq_borel(n: usize) -> Result<HopfMonoid, HopfError> {
    if n < 2 {
        return Err(HopfError::Parameter(format!("u_q needs n >= 2, got {n}")));
    }
    let q = Scalar::zeta(n as u32);
    let qpow: Vec<Scalar> = (0..n).map(|k| q.pow(k as i64).unwrap()).collect();
    let d = n * n;
    let idx = |a: usize, b: usize| a * n + b;
    let mul = |i: usize, j: usize| -> Vec<(usize, Scalar)> {
        let (a, b, c, dd) = (i / n, i % n, j / n, j % n);
        if a + c >= n {
            return vec![];
        }
        vec![(idx(a + c, (b + dd) % n), qpow[(b * c) % n].clone())]
    };
    let even = |_: usize| false;
    let single = |k: usize| Vector::from([(k, Scalar::one())]);
    let e = idx(1, 0);
    let k = idx(0, 1);
    let one = idx(0, 0);
    let kinv = idx(0, n - 1);
    let delta_e = Vector2::from([((e, one), Scalar::one()), ((k, e), Scalar::one())]);
    let delta_k = Vector2::from([((k, k), Scalar::one())]);
    let s_e = mul_sparse(&mul, &single(kinv), &single(e)).into_iter().map(|(i, c)| (i, -c)).collect::<Vector>();
    let s_k = single(kinv);

    let mut delta = Vec::with_capacity(d);
    let mut s = Vec::with_capacity(d);
    for a in 0..n {
        for b in 0..n {
            let mut dv = Vector2::from([((one, one), Scalar::one())]);
            for _ in 0..a {
                dv = mul_tensor(&mul, &even, &dv, &delta_e);
            }
            for _ in 0..b {
                dv = mul_tensor(&mul, &even, &dv, &delta_k);
            }
            delta.push(to_rows2(dv));
            // S(E^a K^b) = S(K)^b S(E)^a
            let mut sv = single(one);
            for _ in 0..b {
                sv = mul_sparse(&mul, &sv, &s_k);
            }
            for _ in 0..a {
                sv = mul_sparse(&mul, &sv, &s_e);
            }
            s.push(to_rows(sv));
        }
    }
    let mut eps = vec![Scalar::zero(); d];
    for b in 0..n {
        eps[idx(0, b)] = Scalar::one();
    }
    let consts = StructureConstants {
        mul: (0..d * d).map(|ij| mul(ij / d, ij % d)).collect(),
        unit: vec![(one, Scalar::one())],
        delta,
        eps,
        s,
        s_inv: None,
    };
    HopfMonoid::new(format!("u_q(n={n})"), GradedSpace::even(d), FieldKind::Cyclotomic(n as u32), consts)
}

fn exterior_consts(d: usize) -> (GradedSpace, StructureConstants) {
    let dim = 1usize << d;
    let odd = |m: usize| m.count_ones() % 2 == 1;
    let mul = |a: usize, b: usize| -> Vec<(usize, Scalar)> {
        if a & b != 0 {
            return vec![];
        }
        // sign of sorting the concatenated generator word
        let mut inversions = 0;
        for i in 0..d {
            if a >> i & 1 == 1 {
                inversions += (b & ((1 << i) - 1)).count_ones();
            }
        }
        vec![(a | b, Scalar::from_int(if inversions % 2 == 0 { 1 } else { -1 }))]
    };
    let single = |k: usize| Vector::from([(k, Scalar::one())]);
    let mut delta = Vec::with_capacity(dim);
    let mut s = Vec::with_capacity(dim);
    for m in 0..dim {
        let mut dv = Vector2::from([((0, 0), Scalar::one())]);
        let mut sv = single(0);
        for i in 0..d {
            if m >> i & 1 == 1 {
                let g = 1 << i;
                let dg = Vector2::from([((g, 0), Scalar::one()), ((0, g), Scalar::one())]);
                dv = mul_tensor(&mul, &odd, &dv, &dg);
                // S(w X) = (-1)^{|w|} S(X) S(w), with S(X) = -X
                let sx = Vector::from([(g, Scalar::from_int(-1))]);
                let sign = if odd(m & ((1 << i) - 1)) { -1 } else { 1 };
                sv = mul_sparse(&mul, &sx, &sv).into_iter().map(|(k, c)| (k, c * Scalar::from_int(sign))).collect();
            }
        }
        delta.push(to_rows2(dv));
        s.push(to_rows(sv));
    }
    let mut eps = vec![Scalar::zero(); dim];
    eps[0] = Scalar::one();
    let consts = StructureConstants {
        mul: (0..dim * dim).map(|ij| mul(ij / dim, ij % dim)).collect(),
        unit: vec![(0, Scalar::one())],
        delta,
        eps,
        s,
        s_inv: None,
    };
    let space = GradedSpace::new((0..dim).map(odd).collect()).expect("nonempty");
    (space, consts)
}

/// The exterior algebra on d odd generators, basis indexed by bitmask subsets.
pub fn make_exterior(d: usize) -> Result<HopfMonoid, HopfError> {
    if d == 0 || d > 6 {
        return Err(HopfError::Parameter(format!("exterior algebra needs 1 <= d <= 6, got {d}")));
    }
    let (space, consts) = exterior_consts(d);
    HopfMonoid::new(format!("Lambda({d})"), space, FieldKind::Rational, consts)
}

/// The exterior algebra's structure constants on an all-even space, ignoring the grading.
/// This is not a Hopf monoid; it exists to show that the Koszul signs are load-bearing.
pub fn make_exterior_ungraded(d: usize) -> Result<HopfMonoid, HopfError> {
    if d == 0 || d > 6 {
        return Err(HopfError::Parameter(format!("exterior algebra needs 1 <= d <= 6, got {d}")));
    }
    let (space, consts) = exterior_consts(d);
    HopfMonoid::new(format!("Lambda({d}) ungraded"), GradedSpace::even(space.dim()), FieldKind::Rational, consts)
}
