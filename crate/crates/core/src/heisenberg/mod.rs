//! The Heisenberg double H* (x) H, its canonical element, the pivotal element and the Fock
//! module. Basis element e^i (x) e_j of the double has index i * d + j.

mod beads;
mod fock;

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::hopf::HopfMonoid;
use crate::ograph::GraphError;
use crate::scalar::{Scalar, ScalarError};

pub use beads::{beads_evaluate, beads_evaluate_with, merged_bead, BeadConvention};
pub use fock::{fock_character, FockCertificate, FockRep};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeisenbergError {
    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("elements live over different algebras")]
    AlgebraMismatch,
    #[error("bad positions ({0}, {1}) in order {2}")]
    BadPositions(usize, usize, usize),
    #[error("beads evaluation needs one component, found {0}")]
    MultiComponent(usize),
    #[error("element is not invertible")]
    NotInvertible,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A sparse vector of the double.
pub type HdVec = BTreeMap<usize, Scalar>;

fn add_into(acc: &mut HdVec, k: usize, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let slot = acc.entry(k).or_insert_with(Scalar::zero);
    *slot += &c;
    if slot.is_zero() {
        acc.remove(&k);
    }
}

/// Adds `c * v` to `acc`.
pub fn axpy(acc: &mut HdVec, c: &Scalar, v: &HdVec) {
    for (k, x) in v {
        add_into(acc, *k, c * x);
    }
}

pub fn scale(v: &HdVec, c: &Scalar) -> HdVec {
    let mut out = HdVec::new();
    axpy(&mut out, c, v);
    out
}

/// The double of a Hopf monoid with its basis multiplication table.
#[derive(Debug)]
pub struct HeisenbergDouble {
    h: HopfMonoid,
    d: usize,
    /// `table[a * d^2 + b]` is the product of basis elements a and b.
    table: Vec<Vec<(usize, Scalar)>>,
    /// `dual_mul[i * d + m]` lists (t, c) with e^i e^m = sum c e^t.
    dual_mul: Vec<Vec<(usize, Scalar)>>,
    /// `act[p * d + k]` lists (m, c) with e_p -> e^k = sum c e^m.
    act: Vec<Vec<(usize, Scalar)>>,
}

impl HeisenbergDouble {
    pub fn new(h: &HopfMonoid) -> Arc<Self> {
        let d = h.dim();
        let c = h.consts();
        let odd = |i: usize| h.is_odd(i);
        let sgn = |neg: bool, x: &Scalar| if neg { -x } else { x.clone() };
        let mut dual_mul = vec![Vec::new(); d * d];
        for t in 0..d {
            for (p, r, x) in &c.delta[t] {
                // (f g)(x) = (-1)^{|g||x1|} f(x1) g(x2)
                dual_mul[p * d + r].push((t, sgn(odd(*p) && odd(*r), x)));
            }
        }
        let mut act = vec![Vec::new(); d * d];
        for m in 0..d {
            for p in 0..d {
                for (k, x) in &c.mul[m * d + p] {
                    act[p * d + k].push((m, x.clone()));
                }
            }
        }
        let mut hd = HeisenbergDouble { h: h.clone(), d, table: Vec::new(), dual_mul, act };
        let n = d * d;
        let table = crate::exec::map((0..n * n).collect(), |ab| hd.basis_product_uncached(ab / n, ab % n));
        hd.table = table;
        Arc::new(hd)
    }

    pub fn hopf(&self) -> &HopfMonoid {
        &self.h
    }

    /// Dimension of H.
    pub fn base_dim(&self) -> usize {
        self.d
    }

    /// Dimension of the double.
    pub fn dim(&self) -> usize {
        self.d * self.d
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.d + j
    }

    pub fn is_odd(&self, b: usize) -> bool {
        self.h.is_odd(b / self.d) != self.h.is_odd(b % self.d)
    }

    /// e^i e^m in H*.
    fn dual_product(&self, i: usize, m: usize) -> &[(usize, Scalar)] {
        &self.dual_mul[i * self.d + m]
    }

    /// e_p -> e^k, where (a -> f)(x) = f(x a).
    fn action(&self, p: usize, k: usize) -> &[(usize, Scalar)] {
        &self.act[p * self.d + k]
    }

    /// (f (x) a)(g (x) b) = f (a1 -> g) (x) a2 b, with the Koszul sign of moving a2 past g.
    fn basis_product_uncached(&self, x: usize, y: usize) -> Vec<(usize, Scalar)> {
        let d = self.d;
        let (i, j, k, l) = (x / d, x % d, y / d, y % d);
        let mut out = HdVec::new();
        for (p, r, c) in &self.h.consts().delta[j] {
            let c = if self.h.is_odd(*r) && self.h.is_odd(k) { -c } else { c.clone() };
            for (m, cm) in self.action(*p, k) {
                let cm = &c * cm;
                for (t, ct) in self.dual_product(i, *m) {
                    let ct = &cm * ct;
                    for (u, cu) in &self.h.consts().mul[r * d + l] {
                        add_into(&mut out, t * d + u, &ct * cu);
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    pub fn basis_product(&self, x: usize, y: usize) -> &[(usize, Scalar)] {
        &self.table[x * self.dim() + y]
    }

    pub fn mul(&self, x: &HdVec, y: &HdVec) -> HdVec {
        let mut out = HdVec::new();
        for (a, ca) in x {
            for (b, cb) in y {
                let c = ca * cb;
                for (k, ck) in self.basis_product(*a, *b) {
                    add_into(&mut out, *k, &c * ck);
                }
            }
        }
        out
    }

    /// f (x) a for f in H* and a in H given as coordinate vectors.
    pub fn pure(&self, f: &[Scalar], a: &[Scalar]) -> HdVec {
        let mut out = HdVec::new();
        for (i, fi) in f.iter().enumerate() {
            for (j, aj) in a.iter().enumerate() {
                if !fi.is_zero() && !aj.is_zero() {
                    add_into(&mut out, self.index(i, j), fi * aj);
                }
            }
        }
        out
    }

    /// The counit as an element of H*.
    pub fn counit(&self) -> Vec<Scalar> {
        self.h.consts().eps.clone()
    }

    pub fn unit(&self) -> HdVec {
        self.pure(&self.counit(), &self.h.unit_vec())
    }

    pub fn basis(&self, b: usize) -> HdVec {
        HdVec::from([(b, Scalar::one())])
    }

    /// The even and odd parts of a vector.
    pub fn split_parity(&self, v: &HdVec) -> [HdVec; 2] {
        let mut out = [HdVec::new(), HdVec::new()];
        for (k, c) in v {
            out[self.is_odd(*k) as usize].insert(*k, c.clone());
        }
        out
    }

    /// Theta = S* (x) S^-1, the analog of the antipode.
    pub fn theta(&self, x: &HdVec, power: i64) -> HdVec {
        let d = self.d;
        // (S*)^p e^i = e^i o S^p, whose e^m coefficient is the (i, m) entry of S^p
        let sp = self.h.antipode_power_matrix(power);
        let sm = self.h.antipode_power_matrix(-power);
        let mut out = HdVec::new();
        for (b, c) in x {
            let (i, j) = (b / d, b % d);
            for m in 0..d {
                if sp.data[i][m].is_zero() {
                    continue;
                }
                for u in 0..d {
                    if !sm.data[u][j].is_zero() {
                        add_into(&mut out, m * d + u, c * &(&sp.data[i][m] * &sm.data[u][j]));
                    }
                }
            }
        }
        out
    }

    /// G = sum e^i e^j (x) S^-1(e_j) S^2(e_i).
    pub fn pivotal_element(&self) -> HdVec {
        let d = self.d;
        let s2 = self.h.antipode_power_matrix(2);
        let sinv = self.h.antipode_inv_matrix();
        let col = |m: &crate::linalg::Matrix, j: usize| -> Vec<Scalar> { (0..d).map(|r| m.data[r][j].clone()).collect() };
        let mut out = HdVec::new();
        for i in 0..d {
            for j in 0..d {
                let mut f = vec![Scalar::zero(); d];
                for (t, c) in self.dual_product(i, j) {
                    f[*t] += c;
                }
                let a = self.h.mul_vec(&col(&sinv, j), &col(&s2, i));
                for (k, c) in self.pure(&f, &a) {
                    add_into(&mut out, k, c);
                }
            }
        }
        out
    }
}

/// An element of the k-fold tensor power of the double as a sum of pure tensors.
#[derive(Debug, Clone)]
pub struct HDElement {
    hd: Arc<HeisenbergDouble>,
    order: usize,
    terms: Vec<Vec<HdVec>>,
}

impl HDElement {
    pub fn zero(hd: &Arc<HeisenbergDouble>, order: usize) -> Self {
        HDElement { hd: hd.clone(), order, terms: Vec::new() }
    }

    pub fn unit(hd: &Arc<HeisenbergDouble>, order: usize) -> Self {
        HDElement { hd: hd.clone(), order, terms: vec![vec![hd.unit(); order]] }
    }

    pub fn from_terms(hd: &Arc<HeisenbergDouble>, order: usize, terms: Vec<Vec<HdVec>>) -> Self {
        assert!(terms.iter().all(|t| t.len() == order), "every term needs {order} factors");
        HDElement { hd: hd.clone(), order, terms }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &[Vec<HdVec>] {
        &self.terms
    }

    pub fn double(&self) -> &Arc<HeisenbergDouble> {
        &self.hd
    }

    /// Terms split so every factor has a definite parity.
    fn homogeneous_terms(&self) -> Vec<(Vec<HdVec>, Vec<bool>)> {
        let mut out = Vec::new();
        for t in &self.terms {
            let mut acc: Vec<(Vec<HdVec>, Vec<bool>)> = vec![(Vec::new(), Vec::new())];
            for f in t {
                let parts = self.hd.split_parity(f);
                acc = acc
                    .into_iter()
                    .flat_map(|(fs, ps)| {
                        parts.iter().enumerate().filter(|(_, p)| !p.is_empty()).map(move |(odd, p)| {
                            let mut fs = fs.clone();
                            let mut ps = ps.clone();
                            fs.push(p.clone());
                            ps.push(odd == 1);
                            (fs, ps)
                        })
                    })
                    .collect();
            }
            out.extend(acc);
        }
        out
    }

    /// Dense coordinates in the per-factor basis.
    pub fn expand(&self) -> BTreeMap<Vec<usize>, Scalar> {
        let mut out: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
        for t in &self.terms {
            let mut partial: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), Scalar::one())];
            for f in t {
                partial = partial
                    .iter()
                    .flat_map(|(idx, c)| {
                        f.iter().map(move |(k, x)| {
                            let mut idx = idx.clone();
                            idx.push(*k);
                            (idx, c * x)
                        })
                    })
                    .collect();
            }
            for (idx, c) in partial {
                let slot = out.entry(idx.clone()).or_insert_with(Scalar::zero);
                *slot += &c;
                if slot.is_zero() {
                    out.remove(&idx);
                }
            }
        }
        out
    }
}

impl PartialEq for HDElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.hd, &other.hd) && self.order == other.order && self.expand() == other.expand()
    }
}

/// Factorwise product with Koszul signs between tensor factors.
pub fn hd_multiply(u: &HDElement, v: &HDElement) -> Result<HDElement, HeisenbergError> {
    if !Arc::ptr_eq(&u.hd, &v.hd) {
        return Err(HeisenbergError::AlgebraMismatch);
    }
    if u.order != v.order {
        return Err(HeisenbergError::OrderMismatch(u.order, v.order));
    }
    let hd = &u.hd;
    let (ut, vt) = (u.homogeneous_terms(), v.homogeneous_terms());
    let mut terms = Vec::with_capacity(ut.len() * vt.len());
    for (xf, xp) in &ut {
        for (yf, yp) in &vt {
            // y_b moves left past x_a for every a > b
            let mut neg = false;
            for b in 0..u.order {
                for a in b + 1..u.order {
                    neg ^= xp[a] && yp[b];
                }
            }
            let mut factors: Vec<HdVec> = xf.iter().zip(yf).map(|(x, y)| hd.mul(x, y)).collect();
            if factors.iter().any(|f| f.is_empty()) {
                continue;
            }
            if neg {
                factors[0] = scale(&factors[0], &-Scalar::one());
            }
            terms.push(factors);
        }
    }
    Ok(HDElement { hd: hd.clone(), order: u.order, terms })
}

/// The two factor families of T (or of its inverse when `inverse`): sum_i first[i] (x) second[i].
/// For ungraded H this is T = sum (eps (x) e_i) (x) (e^i (x) 1).
pub fn canonical_factors(hd: &HeisenbergDouble, inverse: bool) -> Vec<(HdVec, HdVec)> {
    let d = hd.base_dim();
    let eps = hd.counit();
    let one = hd.hopf().unit_vec();
    let smat = hd.hopf().antipode_matrix();
    (0..d)
        .map(|i| {
            let a: Vec<Scalar> = if inverse { (0..d).map(|r| smat.data[r][i].clone()).collect() } else { hd.hopf().basis_vec(i) };
            // the super canonical element pairs e_i with (-1)^{|i|} e^i
            let mut dual = vec![Scalar::zero(); d];
            dual[i] = if hd.hopf().is_odd(i) { -Scalar::one() } else { Scalar::one() };
            (hd.pure(&eps, &a), hd.pure(&dual, &one))
        })
        .collect()
}

/// T_{ij} (or its inverse) in the k-fold tensor power, positions counted from 1.
pub fn canonical_element(
    hd: &Arc<HeisenbergDouble>,
    k: usize,
    i: usize,
    j: usize,
    inverse: bool,
) -> Result<HDElement, HeisenbergError> {
    if i == j || i == 0 || j == 0 || i > k || j > k {
        return Err(HeisenbergError::BadPositions(i, j, k));
    }
    let unit = hd.unit();
    let terms = canonical_factors(hd, inverse)
        .into_iter()
        .map(|(a, b)| {
            let mut t = vec![unit.clone(); k];
            t[i - 1] = a;
            t[j - 1] = b;
            t
        })
        .collect();
    Ok(HDElement { hd: hd.clone(), order: k, terms })
}

/// T12 T13 T23 = T23 T12 in the triple tensor power.
pub fn pentagon_check(h: &HopfMonoid) -> bool {
    let hd = HeisenbergDouble::new(h);
    let t = |i, j| canonical_element(&hd, 3, i, j, false).expect("valid positions");
    let lhs = hd_multiply(&hd_multiply(&t(1, 2), &t(1, 3)).unwrap(), &t(2, 3)).unwrap();
    let rhs = hd_multiply(&t(2, 3), &t(1, 2)).unwrap();
    lhs.expand() == rhs.expand()
}

/// Outcome of the pivotal element checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotalReport {
    /// G x = Theta^2(x) G for every basis x.
    pub twisted_central: bool,
    /// rho(G) is the transpose of S^2 on the Fock space.
    pub fock_is_s2_dual: bool,
}

impl PivotalReport {
    pub fn holds(&self) -> bool {
        self.twisted_central && self.fock_is_s2_dual
    }
}

pub fn pivotal_check(hd: &HeisenbergDouble) -> PivotalReport {
    let g = hd.pivotal_element();
    let twisted_central = (0..hd.dim()).all(|b| {
        let x = hd.basis(b);
        hd.mul(&g, &x) == hd.mul(&hd.theta(&x, 2), &g)
    });
    let rho = FockRep::new(hd).rho(&g);
    let s2 = hd.hopf().antipode_power_matrix(2);
    let d = hd.base_dim();
    let fock_is_s2_dual = (0..d).all(|r| (0..d).all(|c| rho.data[r][c] == s2.data[c][r]));
    PivotalReport { twisted_central, fock_is_s2_dual }
}
