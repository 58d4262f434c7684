//! Evaluation of a one-component diagram by merging beads of the double along the curve.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::fock::FockRep;
use super::{axpy, canonical_factors, HdVec, HeisenbergDouble, HeisenbergError};
use crate::hopf::HopfMonoid;
use crate::ograph::{OGraph, Sign, Strand};
use crate::scalar::Scalar;

/// Where the beads of a crossing go and how they merge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BeadConvention {
    /// The strand that receives the first tensor factor of T.
    pub first_factor_on: Strand,
    /// Merge beads against the orientation (later beads on the left) when false.
    pub along_orientation: bool,
    /// An edge of weight w carries G^(w * weight_sign).
    pub weight_sign: i64,
    /// Positive crossings carry T and negative ones its inverse when true.
    pub positive_is_t: bool,
}

impl BeadConvention {
    /// The convention matching the tensor network evaluation.
    pub const SHIPPED: BeadConvention =
        BeadConvention { first_factor_on: Strand::Over, along_orientation: true, weight_sign: 1, positive_is_t: true };

    pub fn all() -> Vec<BeadConvention> {
        let mut out = Vec::new();
        for first_factor_on in [Strand::Over, Strand::Under] {
            for along_orientation in [true, false] {
                for weight_sign in [1, -1] {
                    for positive_is_t in [true, false] {
                        out.push(BeadConvention { first_factor_on, along_orientation, weight_sign, positive_is_t });
                    }
                }
            }
        }
        out
    }
}

enum Event {
    Visit(u32, Strand),
    Weight(i64),
}

/// Powers of the pivotal element, computed on demand.
struct PivotalPowers<'a> {
    hd: &'a HeisenbergDouble,
    g: HdVec,
    g_inv: Option<HdVec>,
    fock: &'a FockRep,
    cache: HashMap<i64, HdVec>,
}

impl PivotalPowers<'_> {
    fn power(&mut self, w: i64) -> Result<HdVec, HeisenbergError> {
        if let Some(p) = self.cache.get(&w) {
            return Ok(p.clone());
        }
        let p = if w == 0 {
            self.hd.unit()
        } else {
            let base = if w > 0 {
                self.g.clone()
            } else {
                if self.g_inv.is_none() {
                    self.g_inv = Some(self.fock.invert(&self.g)?);
                }
                self.g_inv.clone().unwrap()
            };
            let prev = self.power(w - w.signum())?;
            self.hd.mul(&prev, &base)
        };
        self.cache.insert(w, p.clone());
        Ok(p)
    }
}

/// The merged bead J of a one-component diagram.
pub fn merged_bead(g: &OGraph, hd: &Arc<HeisenbergDouble>, conv: BeadConvention) -> Result<HdVec, HeisenbergError> {
    merged_bead_from(g, hd, conv, 0)
}

/// As [`merged_bead`], starting the merge `start` visits into the circuit.
pub(crate) fn merged_bead_from(
    g: &OGraph,
    hd: &Arc<HeisenbergDouble>,
    conv: BeadConvention,
    start: usize,
) -> Result<HdVec, HeisenbergError> {
    let comps = g.components();
    if comps.len() != 1 {
        return Err(HeisenbergError::MultiComponent(comps.len()));
    }
    let mut circuit = comps[0].clone();
    if !circuit.is_empty() {
        let n = circuit.len();
        circuit.rotate_left(start % n);
    }
    let mut events = Vec::new();
    for p in &circuit {
        events.push(Event::Visit(p.crossing, p.strand));
        events.push(Event::Weight(g.edge_from(*p).expect("circuit edge").weight));
    }
    if !conv.along_orientation {
        events.reverse();
    }
    let fock = FockRep::new(hd);
    let mut pivots = PivotalPowers { hd, g: hd.pivotal_element(), g_inv: None, fock: &fock, cache: HashMap::new() };
    let factors = [canonical_factors(hd, false), canonical_factors(hd, true)];
    let odd = |i: usize| hd.hopf().is_odd(i);
    let d = hd.base_dim();

    // open crossings in opening order with their summation index, mapped to partial products
    let mut states: BTreeMap<Vec<(u32, usize)>, HdVec> = BTreeMap::from([(Vec::new(), hd.unit())]);
    for ev in &events {
        let mut next: BTreeMap<Vec<(u32, usize)>, HdVec> = BTreeMap::new();
        match *ev {
            Event::Weight(w) => {
                let p = pivots.power(w * conv.weight_sign)?;
                for (k, v) in states {
                    next.insert(k, hd.mul(&v, &p));
                }
            }
            Event::Visit(c, role) => {
                let sign = g.sign(c).expect("crossing");
                let fam = &factors[((sign == Sign::Neg) == conv.positive_is_t) as usize];
                let first = role == conv.first_factor_on;
                let bead = |i: usize| if first { &fam[i].0 } else { &fam[i].1 };
                for (key, v) in states {
                    if let Some(pos) = key.iter().position(|&(x, _)| x == c) {
                        let i = key[pos].1;
                        let later: bool = key[pos + 1..].iter().fold(false, |acc, &(_, j)| acc ^ odd(j));
                        let neg = odd(i) && later;
                        let mut k = key.clone();
                        k.remove(pos);
                        let prod = hd.mul(&v, bead(i));
                        let c = if neg { -Scalar::one() } else { Scalar::one() };
                        axpy(next.entry(k).or_default(), &c, &prod);
                    } else {
                        for i in 0..d {
                            // opening with the second factor reorders the pair
                            let neg = !first && odd(i);
                            let mut k = key.clone();
                            k.push((c, i));
                            let prod = hd.mul(&v, bead(i));
                            let c = if neg { -Scalar::one() } else { Scalar::one() };
                            axpy(next.entry(k).or_default(), &c, &prod);
                        }
                    }
                }
            }
        }
        next.retain(|_, v| !v.is_empty());
        states = next;
    }
    Ok(states.remove(&Vec::new()).unwrap_or_default())
}

pub fn beads_evaluate_with(g: &OGraph, hd: &Arc<HeisenbergDouble>, conv: BeadConvention) -> Result<Scalar, HeisenbergError> {
    let j = merged_bead(g, hd, conv)?;
    let chi = FockRep::new(hd).character(&j);
    Ok(hd.hopf().field().coerce(&chi)?)
}

/// Z(g) computed in the Heisenberg double; defined for one-component diagrams only.
pub fn beads_evaluate(g: &OGraph, h: &HopfMonoid) -> Result<Scalar, HeisenbergError> {
    beads_evaluate_with(g, &HeisenbergDouble::new(h), BeadConvention::SHIPPED)
}
