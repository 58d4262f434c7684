//! The Fock module H* of the double and its character.

use std::collections::BTreeMap;

use itertools::Itertools;

use super::{add_into, HdVec, HeisenbergDouble, HeisenbergError};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// rho(f (x) a)(h) = f (a -> h), as one matrix per basis element of the double.
/// Matrix entry (t, c) is the e^t coefficient of the image of e^c.
#[derive(Debug, Clone)]
pub struct FockRep {
    d: usize,
    mats: Vec<Matrix>,
    odd: Vec<bool>,
}

impl FockRep {
    pub fn new(hd: &HeisenbergDouble) -> Self {
        let d = hd.base_dim();
        let mut mats = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let mut m = Matrix::zeros(d, d);
                for c in 0..d {
                    for (mm, cm) in hd.action(j, c) {
                        for (t, ct) in hd.dual_product(i, *mm) {
                            m.data[*t][c] += &(cm * ct);
                        }
                    }
                }
                mats.push(m);
            }
        }
        FockRep { d, mats, odd: (0..d).map(|i| hd.hopf().is_odd(i)).collect() }
    }

    pub fn basis_matrix(&self, b: usize) -> &Matrix {
        &self.mats[b]
    }

    pub fn rho(&self, x: &HdVec) -> Matrix {
        let mut out = Matrix::zeros(self.d, self.d);
        for (b, c) in x {
            for (r, row) in self.mats[*b].data.iter().enumerate() {
                for (k, v) in row.iter().enumerate() {
                    if !v.is_zero() {
                        out.data[r][k] += &(c * v);
                    }
                }
            }
        }
        out
    }

    /// Supertrace of rho(x); the plain trace when H is ungraded.
    pub fn character(&self, x: &HdVec) -> Scalar {
        x.iter().fold(Scalar::zero(), |acc, (b, c)| acc + c * &self.basis_character(*b))
    }

    fn basis_character(&self, b: usize) -> Scalar {
        let m = &self.mats[b];
        (0..self.d).fold(Scalar::zero(), |acc, h| if self.odd[h] { acc - &m.data[h][h] } else { acc + &m.data[h][h] })
    }

    /// First basis pair (x, y) with rho(x y) != rho(x) rho(y), if any.
    pub fn algebra_map_failure(&self, hd: &HeisenbergDouble) -> Option<(usize, usize)> {
        let n = hd.dim();
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).find(|&(x, y)| {
            let prod: HdVec = hd.basis_product(x, y).iter().cloned().collect();
            self.rho(&prod) != self.mats[x].mul(&self.mats[y])
        })
    }

    /// The element whose image is `m`; the Fock module is faithful.
    pub fn pull_back(&self, m: &Matrix) -> Result<HdVec, HeisenbergError> {
        let d = self.d;
        let n = d * d;
        let mut sys = Matrix::zeros(n, n);
        for (b, mb) in self.mats.iter().enumerate() {
            for r in 0..d {
                for c in 0..d {
                    sys.data[r * d + c][b] = mb.data[r][c].clone();
                }
            }
        }
        let rhs: Vec<Scalar> = (0..n).map(|k| m.data[k / d][k % d].clone()).collect();
        let x = sys.solve(&rhs).ok_or(HeisenbergError::NotInvertible)?;
        Ok(x.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
    }

    /// The inverse of an element, through the Fock module.
    pub fn invert(&self, x: &HdVec) -> Result<HdVec, HeisenbergError> {
        let inv = self.rho(x).inverse().ok_or(HeisenbergError::NotInvertible)?;
        self.pull_back(&inv)
    }
}

/// Evidence that the Fock character identifies the quotient by commutators with the ground field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FockCertificate {
    /// The character vanishes on every graded commutator of basis elements.
    pub kills_commutators: bool,
    /// Rank of the span of basis commutators.
    pub commutator_rank: usize,
    /// Dimension of the double minus that rank.
    pub codimension: usize,
}

impl FockCertificate {
    pub fn is_isomorphism(&self) -> bool {
        self.kills_commutators && self.codimension == 1
    }
}

/// Incremental sparse row echelon form.
struct Echelon {
    rows: BTreeMap<usize, BTreeMap<usize, Scalar>>,
}

impl Echelon {
    /// Adds a vector; returns true when it raised the rank.
    fn insert(&mut self, mut v: BTreeMap<usize, Scalar>) -> bool {
        while let Some((&p, c)) = v.iter().next() {
            let Some(row) = self.rows.get(&p) else {
                let inv = c.inv().expect("nonzero pivot");
                let v = v.into_iter().map(|(k, x)| (k, &x * &inv)).collect();
                self.rows.insert(p, v);
                return true;
            };
            let c = c.clone();
            for (k, x) in row {
                add_into(&mut v, *k, -(&c * x));
            }
        }
        false
    }
}

/// The character of the Fock module on the basis of the double, with its certificate.
pub fn fock_character(hd: &HeisenbergDouble) -> (Vec<Scalar>, FockCertificate) {
    let fock = FockRep::new(hd);
    let n = hd.dim();
    let chi: Vec<Scalar> = (0..n).map(|b| fock.basis_character(b)).collect();
    let commutator = |x: usize, y: usize| -> HdVec {
        let mut v: HdVec = hd.basis_product(x, y).iter().cloned().collect();
        let sign = if hd.is_odd(x) && hd.is_odd(y) { Scalar::one() } else { -Scalar::one() };
        for (k, c) in hd.basis_product(y, x) {
            add_into(&mut v, *k, &sign * c);
        }
        v
    };
    let eval = |v: &HdVec| v.iter().fold(Scalar::zero(), |acc, (k, c)| acc + c * &chi[*k]);
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let kills = crate::exec::map(pairs.clone(), |(x, y)| eval(&commutator(x, y)).is_zero()).into_iter().all(|k| k)
        && (0..n).all(|x| !hd.is_odd(x) || eval(&commutator(x, x)).is_zero());
    let nonzero = chi.iter().any(|c| !c.is_zero());
    // a nonzero character that kills commutators bounds the rank by n - 1
    let cap = if kills && nonzero { n - 1 } else { n };
    let mut ech = Echelon { rows: BTreeMap::new() };
    let diagonal = (0..n).filter(|&x| hd.is_odd(x)).map(|x| (x, x));
    for (x, y) in pairs.into_iter().chain(diagonal) {
        if ech.rows.len() == cap {
            break;
        }
        let v = commutator(x, y);
        if !v.is_empty() {
            ech.insert(v);
        }
    }
    let rank = ech.rows.len();
    (chi, FockCertificate { kills_commutators: kills, commutator_rank: rank, codimension: n - rank })
}
