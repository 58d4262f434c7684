//! Hopf monoids in super vector spaces, given by structure constants.

mod axioms;
mod builders;
mod format;

use thiserror::Error;

use crate::linalg::Matrix;
use crate::scalar::{FieldKind, Scalar, ScalarError};
use crate::tensor::{GradedSpace, GradedTensor, TensorError};

pub use axioms::{check_axioms, identity_names, AxiomCheck, AxiomReport};
pub use builders::{make_exterior, make_exterior_ungraded, make_group_algebra, make_uq_borel};
pub use format::{load_structure_constants, parse_group_table, render_structure_constants};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HopfError {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("axiom '{name}' fails at index {witness:?}")]
    Axiom { name: String, witness: Vec<usize> },
    #[error("the antipode is not invertible")]
    SingularAntipode,
    #[error("no antipode satisfies the antipode axiom")]
    NoAntipode,
    #[error("structure tensor {0} is not parity-even")]
    OddStructure(&'static str),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Sparse structure constants on a basis e_0..e_{d-1}.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants {
    /// `mul[i * d + j]` lists (k, c) with e_i e_j = sum c e_k.
    pub mul: Vec<Vec<(usize, Scalar)>>,
    /// 1 = sum c e_k.
    pub unit: Vec<(usize, Scalar)>,
    /// `delta[i]` lists (j, k, c) with Delta(e_i) = sum c e_j (x) e_k.
    pub delta: Vec<Vec<(usize, usize, Scalar)>>,
    pub eps: Vec<Scalar>,
    /// `s[i]` lists (j, c) with S(e_i) = sum c e_j.
    pub s: Vec<Vec<(usize, Scalar)>>,
    pub s_inv: Option<Vec<Vec<(usize, Scalar)>>>,
}

#[derive(Debug, Clone)]
pub struct HopfMonoid {
    name: String,
    space: GradedSpace,
    field: FieldKind,
    consts: StructureConstants,
    m: GradedTensor,
    unit: GradedTensor,
    delta: GradedTensor,
    eps: GradedTensor,
    s: GradedTensor,
    s_inv: GradedTensor,
}

fn clean(v: Vec<(usize, Scalar)>, field: FieldKind) -> Result<Vec<(usize, Scalar)>, ScalarError> {
    let mut out: Vec<(usize, Scalar)> = Vec::new();
    for (k, c) in v {
        let c = field.coerce(&c)?;
        match out.iter_mut().find(|(j, _)| *j == k) {
            Some((_, s)) => *s += &c,
            None => out.push((k, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out.sort_by_key(|(k, _)| *k);
    Ok(out)
}

/// Square matrix of a linear map given by columns: column j is the image of e_j.
pub(crate) fn columns_to_matrix(d: usize, cols: &[Vec<(usize, Scalar)>]) -> Matrix {
    let mut m = Matrix::zeros(d, d);
    for (j, col) in cols.iter().enumerate() {
        for (i, c) in col {
            m.data[*i][j] = c.clone();
        }
    }
    m
}

pub(crate) fn matrix_to_columns(m: &Matrix) -> Vec<Vec<(usize, Scalar)>> {
    (0..m.cols)
        .map(|j| (0..m.rows).filter(|&i| !m.data[i][j].is_zero()).map(|i| (i, m.data[i][j].clone())).collect())
        .collect()
}

pub(crate) fn endo_tensor(space: &GradedSpace, cols: &[Vec<(usize, Scalar)>]) -> Result<GradedTensor, TensorError> {
    let items = cols
        .iter()
        .enumerate()
        .flat_map(|(i, col)| col.iter().map(move |(j, c)| (vec![i], vec![*j], c.clone())));
    GradedTensor::map(std::slice::from_ref(space), std::slice::from_ref(space), items)
}

impl HopfMonoid {
    /// Builds the monoid from structure constants. S^-1 is computed when absent.
    /// Does not run the axiom suite; see [`check_axioms`].
    pub fn new(
        name: impl Into<String>,
        space: GradedSpace,
        field: FieldKind,
        consts: StructureConstants,
    ) -> Result<Self, HopfError> {
        let d = space.dim();
        if consts.mul.len() != d * d || consts.delta.len() != d || consts.eps.len() != d || consts.s.len() != d {
            return Err(HopfError::Parameter("structure constant tables have the wrong size".into()));
        }
        let mut c = StructureConstants {
            mul: consts.mul.into_iter().map(|v| clean(v, field)).collect::<Result<_, _>>()?,
            unit: clean(consts.unit, field)?,
            delta: Vec::with_capacity(d),
            eps: consts.eps.iter().map(|e| field.coerce(e)).collect::<Result<_, _>>()?,
            s: consts.s.into_iter().map(|v| clean(v, field)).collect::<Result<_, _>>()?,
            s_inv: None,
        };
        for row in consts.delta {
            let mut out: Vec<(usize, usize, Scalar)> = Vec::new();
            for (j, k, v) in row {
                let v = field.coerce(&v)?;
                match out.iter_mut().find(|(a, b, _)| (*a, *b) == (j, k)) {
                    Some((_, _, s)) => *s += &v,
                    None => out.push((j, k, v)),
                }
            }
            out.retain(|(_, _, v)| !v.is_zero());
            out.sort_by_key(|(j, k, _)| (*j, *k));
            c.delta.push(out);
        }
        let s_inv = match consts.s_inv {
            Some(si) => si.into_iter().map(|v| clean(v, field)).collect::<Result<_, _>>()?,
            None => {
                let inv = columns_to_matrix(d, &c.s).inverse().ok_or(HopfError::SingularAntipode)?;
                matrix_to_columns(&inv)
            }
        };
        c.s_inv = Some(s_inv);

        let h = [space.clone()];
        let hh = [space.clone(), space.clone()];
        let m = GradedTensor::map(
            &hh,
            &h,
            c.mul.iter().enumerate().flat_map(|(ij, col)| {
                col.iter().map(move |(k, v)| (vec![ij / d, ij % d], vec![*k], v.clone()))
            }),
        )?;
        let unit = GradedTensor::map(&[], &h, c.unit.iter().map(|(k, v)| (vec![], vec![*k], v.clone())))?;
        let delta = GradedTensor::map(
            &h,
            &hh,
            c.delta.iter().enumerate().flat_map(|(i, row)| {
                row.iter().map(move |(j, k, v)| (vec![i], vec![*j, *k], v.clone()))
            }),
        )?;
        let eps = GradedTensor::map(&h, &[], c.eps.iter().enumerate().map(|(i, v)| (vec![i], vec![], v.clone())))?;
        let s = endo_tensor(&space, &c.s)?;
        let s_inv = endo_tensor(&space, c.s_inv.as_ref().unwrap())?;
        for (name, t) in [("M", &m), ("unit", &unit), ("Delta", &delta), ("eps", &eps), ("S", &s), ("S_inv", &s_inv)] {
            if !t.is_parity_even() {
                return Err(HopfError::OddStructure(name));
            }
        }
        Ok(HopfMonoid { name: name.into(), space, field, consts: c, m, unit, delta, eps, s, s_inv })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn consts(&self) -> &StructureConstants {
        &self.consts
    }

    pub fn m(&self) -> &GradedTensor {
        &self.m
    }

    pub fn unit(&self) -> &GradedTensor {
        &self.unit
    }

    pub fn delta(&self) -> &GradedTensor {
        &self.delta
    }

    pub fn eps(&self) -> &GradedTensor {
        &self.eps
    }

    pub fn s(&self) -> &GradedTensor {
        &self.s
    }

    pub fn s_inv(&self) -> &GradedTensor {
        &self.s_inv
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.space.is_odd(i)
    }

    /// Replaces the structure tensors (used to build deliberately broken monoids in tests).
    pub fn with_tensors(mut self, m: GradedTensor, delta: GradedTensor) -> Self {
        self.m = m;
        self.delta = delta;
        self
    }

    // ---- dense vector helpers ----

    pub fn zero_vec(&self) -> Vec<Scalar> {
        vec![Scalar::zero(); self.dim()]
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero_vec();
        v[i] = Scalar::one();
        v
    }

    pub fn unit_vec(&self) -> Vec<Scalar> {
        let mut v = self.zero_vec();
        for (k, c) in &self.consts.unit {
            v[*k] = c.clone();
        }
        v
    }

    pub fn mul_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let mut out = self.zero_vec();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &self.consts.mul[i * d + j] {
                    out[*k] += &(&ab * c);
                }
            }
        }
        out
    }

    pub fn counit_vec(&self, x: &[Scalar]) -> Scalar {
        let mut s = Scalar::zero();
        for (a, e) in x.iter().zip(&self.consts.eps) {
            if !a.is_zero() && !e.is_zero() {
                s += &(a * e);
            }
        }
        s
    }

    /// Column-convention matrix of S: entry (i, j) is the e_i coefficient of S(e_j).
    pub fn antipode_matrix(&self) -> Matrix {
        columns_to_matrix(self.dim(), &self.consts.s)
    }

    pub fn antipode_inv_matrix(&self) -> Matrix {
        columns_to_matrix(self.dim(), self.consts.s_inv.as_ref().unwrap())
    }

    /// S^k as a matrix; negative k uses S^-1.
    pub fn antipode_power_matrix(&self, k: i64) -> Matrix {
        let base = if k < 0 { self.antipode_inv_matrix() } else { self.antipode_matrix() };
        let mut acc = Matrix::identity(self.dim());
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            e >>= 1;
        }
        acc
    }

    /// S composed k times (S^-1 for negative k) as a tensor.
    pub fn antipode_power(&self, k: i64) -> GradedTensor {
        let m = self.antipode_power_matrix(k);
        endo_tensor(&self.space, &matrix_to_columns(&m)).expect("antipode power tensor")
    }

    pub fn apply_matrix(m: &Matrix, x: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); m.rows];
        for (j, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for i in 0..m.rows {
                if !m.data[i][j].is_zero() {
                    out[i] += &(&m.data[i][j] * a);
                }
            }
        }
        out
    }

    /// The dual Hopf monoid on H*, in the dual basis e^i.
    pub fn dual(&self) -> Result<HopfMonoid, HopfError> {
        let d = self.dim();
        let c = &self.consts;
        let mut mul = vec![Vec::new(); d * d];
        for (k, row) in c.delta.iter().enumerate() {
            for (i, j, v) in row {
                mul[i * d + j].push((k, v.clone()));
            }
        }
        let unit = c.eps.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect();
        let mut delta = vec![Vec::new(); d];
        for (ij, col) in c.mul.iter().enumerate() {
            for (k, v) in col {
                delta[*k].push((ij / d, ij % d, v.clone()));
            }
        }
        let mut eps = vec![Scalar::zero(); d];
        for (k, v) in &c.unit {
            eps[*k] = v.clone();
        }
        let transpose = |cols: &[Vec<(usize, Scalar)>]| {
            let mut out = vec![Vec::new(); d];
            for (j, col) in cols.iter().enumerate() {
                for (i, v) in col {
                    out[*i].push((j, v.clone()));
                }
            }
            out
        };
        let consts = StructureConstants {
            mul,
            unit,
            delta,
            eps,
            s: transpose(&c.s),
            s_inv: Some(transpose(c.s_inv.as_ref().unwrap())),
        };
        HopfMonoid::new(format!("dual({})", self.name), self.space.clone(), self.field, consts)
    }
}

#[cfg(test)]
mod tests;
