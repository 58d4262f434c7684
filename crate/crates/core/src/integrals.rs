//! Integrals, cointegrals and the distinguished group-likes.
//!
//! Conventions: mu_R(x1) x2 = mu_R(x) 1, e_R x = eps(x) e_R, mu_R(e_R) = 1,
//! a = mu_R(e_R2) e_R1, alpha(x) = mu_R(x e_R), q = alpha(a),
//! e_L = S^-1(e_R), mu_L = mu_R o S.

use thiserror::Error;

use crate::hopf::{AxiomCheck, AxiomReport, HopfMonoid};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntegralError {
    #[error("the {which} solution space has dimension {dim}, expected 1")]
    KernelDimension { which: &'static str, dim: usize },
    #[error("mu_R(e_R) = 0, the integrals cannot be normalized")]
    Normalization,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralData {
    pub mu_r: Vec<Scalar>,
    pub e_r: Vec<Scalar>,
    pub mu_l: Vec<Scalar>,
    pub e_l: Vec<Scalar>,
    pub a: Vec<Scalar>,
    pub alpha: Vec<Scalar>,
    pub q: Scalar,
}

fn dot(f: &[Scalar], x: &[Scalar]) -> Scalar {
    let mut s = Scalar::zero();
    for (a, b) in f.iter().zip(x) {
        if !a.is_zero() && !b.is_zero() {
            s += &(a * b);
        }
    }
    s
}

/// Linear system for mu with mu(x1) x2 = mu(x) 1 on every basis vector x.
fn right_integral_system(h: &HopfMonoid) -> Matrix {
    let d = h.dim();
    let unit = h.unit_vec();
    let mut m = Matrix::zeros(d * d, d);
    for i in 0..d {
        for (a, b, c) in &h.consts().delta[i] {
            m.data[i * d + b][*a] += c;
        }
        for (k, u) in unit.iter().enumerate() {
            if !u.is_zero() {
                m.data[i * d + k][i] -= u;
            }
        }
    }
    m
}

/// Linear system for e with e x = eps(x) e on every basis vector x.
fn right_cointegral_system(h: &HopfMonoid) -> Matrix {
    let d = h.dim();
    let c = h.consts();
    let mut m = Matrix::zeros(d * d, d);
    for i in 0..d {
        for j in 0..d {
            for (k, v) in &c.mul[j * d + i] {
                m.data[i * d + k][j] += v;
            }
        }
        if !c.eps[i].is_zero() {
            for k in 0..d {
                m.data[i * d + k][k] -= &c.eps[i];
            }
        }
    }
    m
}

fn unique_kernel(m: &Matrix, which: &'static str) -> Result<Vec<Scalar>, IntegralError> {
    let mut k = m.kernel();
    if k.len() != 1 {
        return Err(IntegralError::KernelDimension { which, dim: k.len() });
    }
    let mut v = k.pop().unwrap();
    let lead = v.iter().find(|x| !x.is_zero()).cloned().expect("nonzero kernel vector");
    let inv = lead.inv().expect("nonzero");
    for x in v.iter_mut() {
        *x = &*x * &inv;
    }
    Ok(v)
}

pub fn solve_integrals(h: &HopfMonoid) -> Result<IntegralData, IntegralError> {
    let field = h.field();
    let coerce = |v: Vec<Scalar>| -> Vec<Scalar> { v.iter().map(|x| field.coerce(x).expect("field")).collect() };
    let mu_r = coerce(unique_kernel(&right_integral_system(h), "right integral")?);
    let e_raw = unique_kernel(&right_cointegral_system(h), "right cointegral")?;
    let norm = dot(&mu_r, &e_raw);
    if norm.is_zero() {
        return Err(IntegralError::Normalization);
    }
    let ninv = norm.inv().unwrap();
    let e_r = coerce(e_raw.iter().map(|x| x * &ninv).collect());

    let d = h.dim();
    let mut a = h.zero_vec();
    for (i, e) in e_r.iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        for (p, q, c) in &h.consts().delta[i] {
            if !mu_r[*q].is_zero() {
                a[*p] += &(e * c * &mu_r[*q]);
            }
        }
    }
    let alpha: Vec<Scalar> = (0..d).map(|i| dot(&mu_r, &h.mul_vec(&h.basis_vec(i), &e_r))).collect();
    let q = dot(&alpha, &a);
    let e_l = HopfMonoid::apply_matrix(&h.antipode_inv_matrix(), &e_r);
    let s = h.antipode_matrix();
    let mu_l: Vec<Scalar> = (0..d).map(|i| dot(&mu_r, &(0..d).map(|k| s.data[k][i].clone()).collect::<Vec<_>>())).collect();
    Ok(IntegralData { mu_r, e_r, mu_l, e_l, a, alpha, q })
}

fn vec_check(name: &'static str, l: &[Scalar], r: &[Scalar]) -> AxiomCheck {
    let w = (0..l.len().max(r.len())).find(|&i| l.get(i) != r.get(i));
    AxiomCheck { name, holds: w.is_none(), witness: w.map(|i| vec![i]) }
}

/// Residual of a linear system at a vector: index of the first nonzero row.
fn system_check(name: &'static str, m: &Matrix, x: &[Scalar]) -> AxiomCheck {
    let w = (0..m.rows).find(|&r| !dot(&m.data[r], x).is_zero());
    AxiomCheck { name, holds: w.is_none(), witness: w.map(|r| vec![r]) }
}

/// Checks the defining equations, S(e_R) = q e_L, mu_L(e_R) = q and group-likeness of a and alpha.
pub fn verify_integral_lemmas(h: &HopfMonoid, data: &IntegralData) -> AxiomReport {
    let d = h.dim();
    let mut checks = vec![
        system_check("right integral", &right_integral_system(h), &data.mu_r),
        system_check("right cointegral", &right_cointegral_system(h), &data.e_r),
        vec_check("normalization", &[dot(&data.mu_r, &data.e_r)], &[Scalar::one()]),
    ];
    let s_er = HopfMonoid::apply_matrix(&h.antipode_matrix(), &data.e_r);
    let q_el: Vec<Scalar> = data.e_l.iter().map(|x| x * &data.q).collect();
    checks.push(vec_check("S(e_R) = q e_L", &s_er, &q_el));
    checks.push(vec_check("mu_L(e_R) = q", &[dot(&data.mu_l, &data.e_r)], std::slice::from_ref(&data.q)));

    // Delta(a) = a (x) a and eps(a) = 1
    let mut lhs = vec![Scalar::zero(); d * d];
    for (i, x) in data.a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (p, q, c) in &h.consts().delta[i] {
            lhs[p * d + q] += &(x * c);
        }
    }
    let rhs: Vec<Scalar> = (0..d * d).map(|k| &data.a[k / d] * &data.a[k % d]).collect();
    let mut ga = vec_check("a group-like", &lhs, &rhs);
    if ga.holds && !h.counit_vec(&data.a).is_one() {
        ga = AxiomCheck { name: "a group-like", holds: false, witness: Some(vec![d * d]) };
    }
    checks.push(ga);

    // alpha(xy) = alpha(x) alpha(y) and alpha(1) = 1
    let mut lhs = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            lhs.push(dot(&data.alpha, &h.mul_vec(&h.basis_vec(i), &h.basis_vec(j))));
        }
    }
    let rhs: Vec<Scalar> = (0..d * d).map(|k| &data.alpha[k / d] * &data.alpha[k % d]).collect();
    let mut gal = vec_check("alpha group-like", &lhs, &rhs);
    if gal.holds && !dot(&data.alpha, &h.unit_vec()).is_one() {
        gal = AxiomCheck { name: "alpha group-like", holds: false, witness: Some(vec![d * d]) };
    }
    checks.push(gal);
    checks.push(AxiomCheck { name: "q nonzero", holds: !data.q.is_zero(), witness: None });
    AxiomReport { checks }
}
