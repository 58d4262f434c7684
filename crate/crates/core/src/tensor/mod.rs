//! Z/2-graded tensors and the Koszul sign rule.
//!
//! A tensor is an element of the tensor product of its leg spaces, taken in leg
//! order: an out-leg contributes a factor V, an in-leg a factor V*. Entries are
//! coefficients in the product basis, stored sparsely (sorted, nonzero only).
//!
//! A morphism f: V1..Vk -> W1..Wm is stored with legs [in V1, .., in Vk, out W1, .., out Wm].
//! Its plain matrix coefficients live in the element ordering [W1..Wm, Vk*..V1*]; the
//! stored layout is reached from that by a leg permutation, which picks up the usual
//! Koszul signs. All sign handling goes through [`koszul_sign`].

mod contract;
mod network;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::scalar::{FieldKind, Scalar, ScalarError};

pub use network::{ContractStats, LegRef, Plan, TensorNetwork};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("graded space must have dimension at least 1")]
    EmptySpace,
    #[error("index {index:?} out of range for dimensions {dims:?}")]
    IndexOutOfRange { index: Vec<usize>, dims: Vec<usize> },
    #[error("data length {got} does not match dimension product {expected}")]
    DataLength { got: usize, expected: u64 },
    #[error("tensor too large to index ({0:?})")]
    TooLarge(Vec<usize>),
    #[error("bond mismatch: {0}")]
    BondMismatch(String),
    #[error("leg {0} used in more than one bond")]
    LegReused(String),
    #[error("composition shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A finite-dimensional super vector space with a fixed homogeneous basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedSpace {
    parity: Arc<[bool]>,
}

impl GradedSpace {
    pub fn new(parity: Vec<bool>) -> Result<Self, TensorError> {
        if parity.is_empty() {
            return Err(TensorError::EmptySpace);
        }
        Ok(GradedSpace { parity: parity.into() })
    }

    /// Purely even space of the given dimension.
    pub fn even(dim: usize) -> Self {
        GradedSpace::new(vec![false; dim]).expect("dimension must be positive")
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.parity[i]
    }

    pub fn parities(&self) -> &[bool] {
        &self.parity
    }

    pub fn all_even(&self) -> bool {
        self.parity.iter().all(|p| !p)
    }
}

impl fmt::Debug for GradedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: String = self.parity.iter().map(|&p| if p { '1' } else { '0' }).collect();
        write!(f, "GradedSpace({bits})")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    In,
    Out,
}

impl Polarity {
    pub fn flip(self) -> Self {
        match self {
            Polarity::In => Polarity::Out,
            Polarity::Out => Polarity::In,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Leg {
    pub space: GradedSpace,
    pub polarity: Polarity,
}

impl Leg {
    pub fn input(space: &GradedSpace) -> Self {
        Leg { space: space.clone(), polarity: Polarity::In }
    }

    pub fn output(space: &GradedSpace) -> Self {
        Leg { space: space.clone(), polarity: Polarity::Out }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// Sign of reordering homogeneous basis vectors: source slot `s` moves to `target[s]`,
/// and each pair of odd vectors whose relative order flips contributes -1.
pub fn koszul_sign(odd: &[bool], target: &[usize]) -> bool {
    let mut neg = false;
    for s in 0..odd.len() {
        if !odd[s] {
            continue;
        }
        for t in s + 1..odd.len() {
            if odd[t] && target[s] > target[t] {
                neg = !neg;
            }
        }
    }
    neg
}

pub(crate) fn dense_len(dims: &[usize]) -> Option<u64> {
    dims.iter().try_fold(1u64, |acc, &d| acc.checked_mul(d as u64))
}

pub(crate) fn encode(index: &[usize], dims: &[usize]) -> u64 {
    index.iter().zip(dims).fold(0u64, |acc, (&i, &d)| acc * d as u64 + i as u64)
}

pub(crate) fn decode(mut lin: u64, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0usize; dims.len()];
    for k in (0..dims.len()).rev() {
        let d = dims[k] as u64;
        out[k] = (lin % d) as usize;
        lin /= d;
    }
    out
}

/// An element of a tensor product of graded spaces, stored sparsely.
#[derive(Clone, Debug)]
pub struct GradedTensor {
    legs: Vec<Leg>,
    dims: Vec<usize>,
    entries: Vec<(u64, Scalar)>,
}

impl GradedTensor {
    pub fn zero(legs: Vec<Leg>) -> Result<Self, TensorError> {
        let dims: Vec<usize> = legs.iter().map(Leg::dim).collect();
        dense_len(&dims).ok_or_else(|| TensorError::TooLarge(dims.clone()))?;
        Ok(GradedTensor { legs, dims, entries: Vec::new() })
    }

    /// Builds a tensor from (multi-index, value) pairs; repeated indices are summed.
    pub fn from_entries<I>(legs: Vec<Leg>, items: I) -> Result<Self, TensorError>
    where
        I: IntoIterator<Item = (Vec<usize>, Scalar)>,
    {
        let mut t = GradedTensor::zero(legs)?;
        let mut acc: HashMap<u64, Scalar> = HashMap::new();
        for (idx, v) in items {
            if idx.len() != t.dims.len() || idx.iter().zip(&t.dims).any(|(i, d)| i >= d) {
                return Err(TensorError::IndexOutOfRange { index: idx, dims: t.dims.clone() });
            }
            if v.is_zero() {
                continue;
            }
            let lin = encode(&idx, &t.dims);
            match acc.get_mut(&lin) {
                Some(s) => *s += &v,
                None => {
                    acc.insert(lin, v);
                }
            }
        }
        t.entries = finish(acc);
        Ok(t)
    }

    pub(crate) fn from_linear(legs: Vec<Leg>, acc: HashMap<u64, Scalar>) -> Self {
        let dims = legs.iter().map(Leg::dim).collect();
        GradedTensor { legs, dims, entries: finish(acc) }
    }

    pub fn from_dense(legs: Vec<Leg>, data: Vec<Scalar>) -> Result<Self, TensorError> {
        let mut t = GradedTensor::zero(legs)?;
        let expected = dense_len(&t.dims).unwrap();
        if data.len() as u64 != expected {
            return Err(TensorError::DataLength { got: data.len(), expected });
        }
        t.entries = data
            .into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i as u64, v))
            .collect();
        Ok(t)
    }

    /// A 0-leg tensor.
    pub fn scalar(s: Scalar) -> Self {
        let entries = if s.is_zero() { vec![] } else { vec![(0, s)] };
        GradedTensor { legs: vec![], dims: vec![], entries }
    }

    /// A morphism from plain matrix coefficients: each item is (input indices, output indices, value)
    /// meaning `f(e_in) = sum value * e_out`.
    pub fn map<I>(ins: &[GradedSpace], outs: &[GradedSpace], items: I) -> Result<Self, TensorError>
    where
        I: IntoIterator<Item = (Vec<usize>, Vec<usize>, Scalar)>,
    {
        let (ni, no) = (ins.len(), outs.len());
        let mut canon_legs: Vec<Leg> = outs.iter().map(Leg::output).collect();
        canon_legs.extend(ins.iter().rev().map(Leg::input));
        let canon = GradedTensor::from_entries(
            canon_legs,
            items.into_iter().map(|(i, o, v)| {
                let mut idx = o;
                idx.extend(i.into_iter().rev());
                (idx, v)
            }),
        )?;
        // stored leg k < ni is input k, canonical slot no + (ni - 1 - k)
        let perm: Vec<usize> = (0..ni).map(|k| no + ni - 1 - k).chain(0..no).collect();
        Ok(canon.permute(&perm))
    }

    /// Inverse of [`GradedTensor::map`]: plain matrix coefficients of a morphism-shaped tensor,
    /// reading in-legs and out-legs in their stored order.
    pub fn matrix_entries(&self) -> Vec<(Vec<usize>, Vec<usize>, Scalar)> {
        let ins = self.in_legs();
        let outs = self.out_legs();
        let perm: Vec<usize> = outs.iter().copied().chain(ins.iter().rev().copied()).collect();
        let canon = self.permute(&perm);
        let no = outs.len();
        canon
            .entries()
            .map(|(idx, v)| {
                let o = idx[..no].to_vec();
                let i: Vec<usize> = idx[no..].iter().rev().copied().collect();
                (i, o, v.clone())
            })
            .collect()
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn rank(&self) -> usize {
        self.legs.len()
    }

    /// Number of stored nonzero entries.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Number of entries of the equivalent dense array.
    pub fn dense_len(&self) -> u64 {
        dense_len(&self.dims).unwrap()
    }

    pub fn in_legs(&self) -> Vec<usize> {
        (0..self.legs.len()).filter(|&k| self.legs[k].polarity == Polarity::In).collect()
    }

    pub fn out_legs(&self) -> Vec<usize> {
        (0..self.legs.len()).filter(|&k| self.legs[k].polarity == Polarity::Out).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (Vec<usize>, &Scalar)> + '_ {
        self.entries.iter().map(move |(lin, v)| (decode(*lin, &self.dims), v))
    }

    pub fn get(&self, index: &[usize]) -> Scalar {
        let lin = encode(index, &self.dims);
        match self.entries.binary_search_by_key(&lin, |(k, _)| *k) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    /// Value of a 0-leg tensor.
    pub fn to_scalar(&self) -> Option<Scalar> {
        if !self.legs.is_empty() {
            return None;
        }
        Some(self.entries.first().map(|(_, v)| v.clone()).unwrap_or_else(Scalar::zero))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    fn entry_parity(&self, idx: &[usize]) -> bool {
        idx.iter().zip(&self.legs).fold(false, |acc, (&i, l)| acc ^ l.space.is_odd(i))
    }

    /// True when every nonzero entry has even total parity.
    pub fn is_parity_even(&self) -> bool {
        self.all_even() || self.entries().all(|(idx, _)| !self.entry_parity(&idx))
    }

    pub(crate) fn all_even(&self) -> bool {
        self.legs.iter().all(|l| l.space.all_even())
    }

    /// Reorders legs: new leg `k` is old leg `perm[k]`, with Koszul signs.
    pub fn permute(&self, perm: &[usize]) -> GradedTensor {
        assert_eq!(perm.len(), self.legs.len(), "permutation length");
        let legs: Vec<Leg> = perm.iter().map(|&p| self.legs[p].clone()).collect();
        let dims: Vec<usize> = legs.iter().map(Leg::dim).collect();
        let mut target = vec![0usize; perm.len()];
        for (k, &p) in perm.iter().enumerate() {
            target[p] = k;
        }
        let even = self.all_even();
        let mut entries: Vec<(u64, Scalar)> = self
            .entries()
            .map(|(idx, v)| {
                let new_idx: Vec<usize> = perm.iter().map(|&p| idx[p]).collect();
                let lin = encode(&new_idx, &dims);
                let neg = !even && {
                    let odd: Vec<bool> = idx.iter().zip(&self.legs).map(|(&i, l)| l.space.is_odd(i)).collect();
                    koszul_sign(&odd, &target)
                };
                (lin, if neg { -v } else { v.clone() })
            })
            .collect();
        entries.sort_by_key(|(k, _)| *k);
        GradedTensor { legs, dims, entries }
    }

    pub fn scale(&self, s: &Scalar) -> GradedTensor {
        let acc = self.entries.iter().map(|(k, v)| (*k, v * s)).collect();
        GradedTensor::from_linear(self.legs.clone(), acc)
    }

    pub fn add(&self, other: &GradedTensor) -> Result<GradedTensor, TensorError> {
        if self.legs != other.legs {
            return Err(TensorError::Shape("adding tensors with different legs".into()));
        }
        let mut acc: HashMap<u64, Scalar> = self.entries.iter().cloned().collect();
        for (k, v) in &other.entries {
            match acc.get_mut(k) {
                Some(s) => *s += v,
                None => {
                    acc.insert(*k, v.clone());
                }
            }
        }
        Ok(GradedTensor::from_linear(self.legs.clone(), acc))
    }

    pub fn sub(&self, other: &GradedTensor) -> Result<GradedTensor, TensorError> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    /// Applies `f` to every stored value.
    pub fn map_values<F>(&self, f: F) -> Result<GradedTensor, TensorError>
    where
        F: Fn(&Scalar) -> Result<Scalar, ScalarError>,
    {
        let mut acc = HashMap::new();
        for (k, v) in &self.entries {
            acc.insert(*k, f(v)?);
        }
        Ok(GradedTensor::from_linear(self.legs.clone(), acc))
    }

    /// Coerces every entry into the given base field.
    pub fn coerce(&self, field: FieldKind) -> Result<GradedTensor, TensorError> {
        self.map_values(|v| field.coerce(v))
    }

    /// First multi-index where the two tensors differ, or `None` if equal.
    /// Tensors with different legs differ at the empty index.
    pub fn first_difference(&self, other: &GradedTensor) -> Option<Vec<usize>> {
        if self.legs != other.legs {
            return Some(vec![]);
        }
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return None,
                (Some((k, _)), None) | (None, Some((k, _))) => return Some(decode(*k, &self.dims)),
                (Some((ka, va)), Some((kb, vb))) => {
                    if ka < kb {
                        return Some(decode(*ka, &self.dims));
                    } else if kb < ka {
                        return Some(decode(*kb, &self.dims));
                    } else if va != vb {
                        return Some(decode(*ka, &self.dims));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }

    /// Contracts legs of `self` with legs of `other`; each pair joins one in-leg with one out-leg
    /// over the same space. Result legs: remaining legs of `self`, then of `other`.
    pub fn contract_with(&self, other: &GradedTensor, bonds: &[(usize, usize)]) -> Result<GradedTensor, TensorError> {
        contract::merge(self, other, bonds)
    }

    /// Contracts pairs of legs of a single tensor.
    pub fn contract_self(&self, pairs: &[(usize, usize)]) -> Result<GradedTensor, TensorError> {
        contract::trace(self, pairs)
    }

    /// Tensor product: the legs of `self` followed by the legs of `other`.
    pub fn outer(&self, other: &GradedTensor) -> Result<GradedTensor, TensorError> {
        contract::merge(self, other, &[])
    }

    // ---- morphism helpers (stored layout: in-legs then out-legs) ----

    pub fn identity(v: &GradedSpace) -> GradedTensor {
        GradedTensor::map(std::slice::from_ref(v), std::slice::from_ref(v), (0..v.dim()).map(|i| (vec![i], vec![i], Scalar::one())))
            .expect("identity")
    }

    /// Identity on V1 (x) .. (x) Vk.
    pub fn identity_on(spaces: &[GradedSpace]) -> GradedTensor {
        let mut t = GradedTensor::scalar(Scalar::one());
        for v in spaces {
            t = t.tensor(&GradedTensor::identity(v)).expect("identity product");
        }
        t
    }

    /// The symmetry c_{V,W}: v_i (x) w_j -> (-1)^{|i||j|} w_j (x) v_i.
    pub fn swap(v: &GradedSpace, w: &GradedSpace) -> GradedTensor {
        let items = (0..v.dim()).flat_map(|i| {
            (0..w.dim()).map(move |j| {
                let s = if v.is_odd(i) && w.is_odd(j) { -1 } else { 1 };
                (vec![i, j], vec![j, i], Scalar::from_int(s))
            })
        });
        GradedTensor::map(&[v.clone(), w.clone()], &[w.clone(), v.clone()], items).expect("swap")
    }

    /// Evaluation and coevaluation tensors for V and their pivotal counterparts.
    pub fn duality(v: &GradedSpace) -> Duality {
        let d = v.dim();
        let delta = |legs: Vec<Leg>, signed: bool| {
            GradedTensor::from_entries(
                legs,
                (0..d).map(|i| {
                    let s = if signed && v.is_odd(i) { -1 } else { 1 };
                    (vec![i, i], Scalar::from_int(s))
                }),
            )
            .expect("duality tensor")
        };
        // coev: 1 -> V (x) V*.  ev: V* (x) V -> 1, legs [slot for the V* strand, slot for the V strand].
        // The hatted versions are ev o c and c o coev, which carry the parity sign.
        Duality {
            coev: delta(vec![Leg::output(v), Leg::input(v)], false),
            ev: delta(vec![Leg::output(v), Leg::input(v)], false),
            ev_hat: delta(vec![Leg::input(v), Leg::output(v)], true),
            coev_hat: delta(vec![Leg::input(v), Leg::output(v)], true),
        }
    }

    /// Composite `self o f`: the out-legs of `f` are bonded in order to the in-legs of `self`.
    /// Result legs: in-legs of `f`, then out-legs of `self`.
    pub fn compose(&self, f: &GradedTensor) -> Result<GradedTensor, TensorError> {
        let f_outs = f.out_legs();
        let g_ins = self.in_legs();
        if f_outs.len() != g_ins.len() {
            return Err(TensorError::Shape(format!(
                "composing a map with {} outputs into one with {} inputs",
                f_outs.len(),
                g_ins.len()
            )));
        }
        let bonds: Vec<(usize, usize)> = f_outs.iter().copied().zip(g_ins.iter().copied()).collect();
        let merged = contract::merge(f, self, &bonds)?;
        Ok(merged.standardize())
    }

    /// Tensor product of morphisms f (x) g, stored as [f.ins, g.ins, f.outs, g.outs].
    pub fn tensor(&self, g: &GradedTensor) -> Result<GradedTensor, TensorError> {
        let merged = contract::merge(self, g, &[])?;
        Ok(merged.standardize())
    }

    /// Stable reorder to in-legs first, then out-legs.
    pub fn standardize(&self) -> GradedTensor {
        let perm: Vec<usize> = self.in_legs().into_iter().chain(self.out_legs()).collect();
        if perm.iter().enumerate().all(|(k, &p)| k == p) {
            return self.clone();
        }
        self.permute(&perm)
    }

    /// The in-leg spaces in order.
    pub fn in_spaces(&self) -> Vec<GradedSpace> {
        self.in_legs().into_iter().map(|k| self.legs[k].space.clone()).collect()
    }

    /// The out-leg spaces in order.
    pub fn out_spaces(&self) -> Vec<GradedSpace> {
        self.out_legs().into_iter().map(|k| self.legs[k].space.clone()).collect()
    }
}

fn finish(acc: HashMap<u64, Scalar>) -> Vec<(u64, Scalar)> {
    let mut v: Vec<(u64, Scalar)> = acc.into_iter().filter(|(_, s)| !s.is_zero()).collect();
    v.sort_by_key(|(k, _)| *k);
    v
}

impl PartialEq for GradedTensor {
    fn eq(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }
}

#[derive(Debug, Clone)]
pub struct Duality {
    pub ev: GradedTensor,
    pub coev: GradedTensor,
    pub ev_hat: GradedTensor,
    pub coev_hat: GradedTensor,
}
