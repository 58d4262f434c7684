//! Exact scalars: rationals and elements of cyclotomic fields Q(zeta_n).
//!
//! A cyclotomic value is stored as its residue modulo the n-th cyclotomic
//! polynomial, a coefficient vector of length phi(n). Reduction is canonical,
//! so equality is coefficientwise.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible cyclotomic orders {0} and {1}")]
    IncompatibleOrders(u32, u32),
    #[error("cannot parse scalar {0:?}: {1}")]
    Parse(String, &'static str),
}

/// The base field a value lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rational,
    Cyclotomic(u32),
}

impl FieldKind {
    pub fn zero(self) -> Scalar {
        match self {
            FieldKind::Rational => Scalar::zero(),
            FieldKind::Cyclotomic(n) => Scalar::Rational(BigRational::zero()).promote(&field(n)),
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            FieldKind::Rational => Scalar::one(),
            FieldKind::Cyclotomic(n) => Scalar::one().promote(&field(n)),
        }
    }

    /// Maps a value into this field; rationals are promoted.
    pub fn coerce(self, s: &Scalar) -> Result<Scalar, ScalarError> {
        match (self, s) {
            (FieldKind::Rational, Scalar::Rational(_)) => Ok(s.clone()),
            (FieldKind::Rational, Scalar::Cyclotomic(c)) => match c.as_rational() {
                Some(r) => Ok(Scalar::Rational(r)),
                None => Err(ScalarError::IncompatibleOrders(1, c.field.order)),
            },
            (FieldKind::Cyclotomic(n), Scalar::Rational(_)) => Ok(s.promote(&field(n))),
            (FieldKind::Cyclotomic(n), Scalar::Cyclotomic(c)) => {
                if c.field.order == n {
                    Ok(s.clone())
                } else if let Some(r) = c.as_rational() {
                    Ok(Scalar::Rational(r).promote(&field(n)))
                } else {
                    Err(ScalarError::IncompatibleOrders(n, c.field.order))
                }
            }
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => write!(f, "rational"),
            FieldKind::Cyclotomic(n) => write!(f, "zeta({n})"),
        }
    }
}

/// Arithmetic data for Q(zeta_n).
#[derive(Debug)]
pub struct CycloField {
    order: u32,
    degree: usize,
    /// Coefficients of Phi_n, low degree first, monic.
    modulus: Vec<i64>,
    /// `reduction[k]` is x^(degree + k) mod Phi_n, for k < degree - 1.
    reduction: Vec<Vec<i64>>,
}

impl CycloField {
    fn new(order: u32) -> Self {
        let modulus = cyclotomic_polynomial(order);
        let degree = modulus.len() - 1;
        let mut reduction = Vec::new();
        // x^degree = -(lower terms of Phi)
        let mut cur: Vec<i64> = modulus[..degree].iter().map(|c| -c).collect();
        for _ in 0..degree.saturating_sub(1) {
            reduction.push(cur.clone());
            let top = cur[degree - 1];
            let mut next = vec![0i64; degree];
            for i in (1..degree).rev() {
                next[i] = cur[i - 1];
            }
            for i in 0..degree {
                next[i] -= top * modulus[i];
            }
            cur = next;
        }
        CycloField { order, degree, modulus, reduction }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Reduces an arbitrary polynomial (low degree first) modulo Phi_n.
    fn reduce(&self, mut poly: Vec<BigRational>) -> Vec<BigRational> {
        let d = self.degree;
        // strip high powers by repeated substitution of x^d
        while poly.len() > d {
            let top_deg = poly.len() - 1;
            let c = poly.pop().unwrap();
            if c.is_zero() {
                continue;
            }
            let shift = top_deg - d;
            for i in 0..d {
                let m = self.modulus[i];
                if m != 0 {
                    poly[shift + i] -= &c * BigInt::from(m);
                }
            }
        }
        poly.resize(d, BigRational::zero());
        poly
    }

    fn mul(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let d = self.degree;
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                prod[i + j] += x * y;
            }
        }
        let mut out: Vec<BigRational> = prod[..d].to_vec();
        for (k, c) in prod[d..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, r) in self.reduction[k].iter().enumerate() {
                if *r != 0 {
                    out[i] += c * BigInt::from(*r);
                }
            }
        }
        out
    }

    fn inverse(&self, a: &[BigRational]) -> Option<Vec<BigRational>> {
        let modulus: Vec<BigRational> =
            self.modulus.iter().map(|&c| BigRational::from_integer(c.into())).collect();
        let (g, s) = poly::ext_gcd(a.to_vec(), modulus);
        // Phi_n is irreducible, so g is a nonzero constant unless a == 0
        if g.len() != 1 {
            return None;
        }
        let ginv = g[0].recip();
        let s: Vec<BigRational> = s.into_iter().map(|c| c * &ginv).collect();
        Some(self.reduce(s))
    }
}

static FIELDS: Lazy<Mutex<HashMap<u32, Arc<CycloField>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Returns the shared arithmetic tables for Q(zeta_n).
pub fn field(order: u32) -> Arc<CycloField> {
    assert!(order >= 1, "cyclotomic order must be positive");
    let mut cache = FIELDS.lock().expect("cyclotomic field cache poisoned");
    cache.entry(order).or_insert_with(|| Arc::new(CycloField::new(order))).clone()
}

/// Integer coefficients of Phi_n, low degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    static CACHE: Lazy<Mutex<HashMap<u32, Vec<i64>>>> = Lazy::new(|| Mutex::new(HashMap::new()));
    if let Some(p) = CACHE.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Phi_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let den = cyclotomic_polynomial(d);
            num = int_poly_exact_div(&num, &den);
        }
    }
    CACHE.lock().unwrap().insert(n, num.clone());
    num
}

fn int_poly_exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd];
    debug_assert!(lead == 1);
    let qlen = num.len() - dd;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd] / lead;
        q[i] = c;
        for j in 0..=dd {
            rem[i + j] -= c * den[j];
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}

mod poly {
    use num_rational::BigRational;
    use num_traits::Zero;

    pub fn trim(p: &mut Vec<BigRational>) {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    }

    fn sub_mul(a: &[BigRational], b: &[BigRational], c: &[BigRational]) -> Vec<BigRational> {
        // a - b*c
        let mut out = a.to_vec();
        let len = (b.len() + c.len()).saturating_sub(1).max(a.len());
        out.resize(len, BigRational::zero());
        for (i, x) in b.iter().enumerate() {
            for (j, y) in c.iter().enumerate() {
                out[i + j] -= x * y;
            }
        }
        trim(&mut out);
        out
    }

    fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut rem = a.to_vec();
        trim(&mut rem);
        let db = b.len() - 1;
        let lead = b[db].clone();
        if rem.len() < b.len() {
            return (vec![], rem);
        }
        let mut q = vec![BigRational::zero(); rem.len() - db];
        while rem.len() >= b.len() {
            let shift = rem.len() - b.len();
            let c = rem.last().unwrap() / &lead;
            for j in 0..=db {
                rem[shift + j] -= &c * &b[j];
            }
            q[shift] = c;
            rem.pop();
            trim(&mut rem);
        }
        trim(&mut q);
        (q, rem)
    }

    /// Returns (g, s) with s*a = g (mod b).
    pub fn ext_gcd(mut a: Vec<BigRational>, mut b: Vec<BigRational>) -> (Vec<BigRational>, Vec<BigRational>) {
        trim(&mut a);
        trim(&mut b);
        let (mut r0, mut r1) = (a, b);
        let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) =
            (vec![num_traits::One::one()], vec![]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1);
            let s = sub_mul(&s0, &q, &s1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        (r0, s0)
    }
}

/// A cyclotomic field element in canonical reduced form.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    field: Arc<CycloField>,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }
}

/// An exact scalar: a rational number or an element of Q(zeta_n).
#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Cyclotomic(Cyclotomic),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Scalar::Rational(BigRational::new(p.into(), q.into()))
    }

    /// The primitive n-th root of unity exp(2 pi i / n), as an element of Q(zeta_n).
    pub fn zeta(n: u32) -> Self {
        let f = field(n);
        let mut p = vec![BigRational::zero(); 2];
        p[1] = BigRational::one();
        let coeffs = f.reduce(p);
        Scalar::Cyclotomic(Cyclotomic { field: f, coeffs })
    }

    /// Builds an element of Q(zeta_n) from polynomial coefficients in zeta (low degree first).
    pub fn from_poly(n: u32, coeffs: Vec<BigRational>) -> Self {
        let f = field(n);
        let coeffs = f.reduce(coeffs);
        Scalar::Cyclotomic(Cyclotomic { field: f, coeffs })
    }

    pub fn field_kind(&self) -> FieldKind {
        match self {
            Scalar::Rational(_) => FieldKind::Rational,
            Scalar::Cyclotomic(c) => FieldKind::Cyclotomic(c.field.order),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Cyclotomic(c) => c.coeffs.iter().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Cyclotomic(c) => c.coeffs[0].is_one() && c.coeffs[1..].iter().all(Zero::is_zero),
        }
    }

    /// The rational value, when this scalar is rational.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rational(r) => Some(r.clone()),
            Scalar::Cyclotomic(c) => c.as_rational(),
        }
    }

    fn promote(&self, f: &Arc<CycloField>) -> Scalar {
        match self {
            Scalar::Rational(r) => {
                let mut coeffs = vec![BigRational::zero(); f.degree];
                coeffs[0] = r.clone();
                Scalar::Cyclotomic(Cyclotomic { field: f.clone(), coeffs })
            }
            Scalar::Cyclotomic(_) => self.clone(),
        }
    }

    /// Brings two operands into a common field.
    fn unify<'a>(
        a: &'a Scalar,
        b: &'a Scalar,
    ) -> Result<(std::borrow::Cow<'a, Scalar>, std::borrow::Cow<'a, Scalar>), ScalarError> {
        use std::borrow::Cow;
        match (a, b) {
            (Scalar::Rational(_), Scalar::Rational(_)) => Ok((Cow::Borrowed(a), Cow::Borrowed(b))),
            (Scalar::Rational(_), Scalar::Cyclotomic(c)) => {
                Ok((Cow::Owned(a.promote(&c.field)), Cow::Borrowed(b)))
            }
            (Scalar::Cyclotomic(c), Scalar::Rational(_)) => {
                Ok((Cow::Borrowed(a), Cow::Owned(b.promote(&c.field))))
            }
            (Scalar::Cyclotomic(x), Scalar::Cyclotomic(y)) => {
                if x.field.order == y.field.order {
                    Ok((Cow::Borrowed(a), Cow::Borrowed(b)))
                } else if x.field.degree == 1 {
                    Ok((Cow::Owned(Scalar::Rational(x.coeffs[0].clone()).promote(&y.field)), Cow::Borrowed(b)))
                } else if y.field.degree == 1 {
                    Ok((Cow::Borrowed(a), Cow::Owned(Scalar::Rational(y.coeffs[0].clone()).promote(&x.field))))
                } else {
                    Err(ScalarError::IncompatibleOrders(x.field.order, y.field.order))
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        let (a, b) = Scalar::unify(self, other)?;
        Ok(match (a.as_ref(), b.as_ref()) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (Scalar::Cyclotomic(x), Scalar::Cyclotomic(y)) => Scalar::Cyclotomic(Cyclotomic {
                field: x.field.clone(),
                coeffs: x.coeffs.iter().zip(&y.coeffs).map(|(p, q)| p + q).collect(),
            }),
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        let (a, b) = Scalar::unify(self, other)?;
        Ok(match (a.as_ref(), b.as_ref()) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (Scalar::Cyclotomic(x), Scalar::Cyclotomic(y)) => Scalar::Cyclotomic(Cyclotomic {
                field: x.field.clone(),
                coeffs: x.field.mul(&x.coeffs, &y.coeffs),
            }),
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        let inv = other.inv()?;
        self.checked_mul(&inv)
    }

    /// Multiplicative inverse; for cyclotomics via the extended gcd with Phi_n.
    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Cyclotomic(c) => {
                let coeffs = c.field.inverse(&c.coeffs).ok_or(ScalarError::DivisionByZero)?;
                Scalar::Cyclotomic(Cyclotomic { field: c.field.clone(), coeffs })
            }
        })
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Scalar, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = match self {
            Scalar::Cyclotomic(c) => Scalar::one().promote(&c.field),
            Scalar::Rational(_) => Scalar::one(),
        };
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Numerical value under zeta_n -> exp(2 pi i / n). Diagnostic only.
    pub fn embed_complex(&self) -> Complex64 {
        match self {
            Scalar::Rational(r) => Complex64::new(rational_to_f64(r), 0.0),
            Scalar::Cyclotomic(c) => {
                let n = c.field.order as f64;
                c.coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, a)| {
                        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n)
                            * rational_to_f64(a)
                    })
                    .sum()
            }
        }
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
    })
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rational(x), Scalar::Rational(y)) => x == y,
            _ => match Scalar::unify(self, other) {
                Ok((a, b)) => match (a.as_ref(), b.as_ref()) {
                    (Scalar::Cyclotomic(x), Scalar::Cyclotomic(y)) => x.coeffs == y.coeffs,
                    _ => unreachable!(),
                },
                Err(_) => false,
            },
        }
    }
}

impl Eq for Scalar {}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("scalar arithmetic: {e}"))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        // in-place fast path for matching representations
        match (&mut *self, rhs) {
            (Scalar::Rational(x), Scalar::Rational(y)) => *x += y,
            (Scalar::Cyclotomic(x), Scalar::Cyclotomic(y)) if x.field.order == y.field.order => {
                for (p, q) in x.coeffs.iter_mut().zip(&y.coeffs) {
                    *p += q;
                }
            }
            _ => *self = &*self + rhs,
        }
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self += &-rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(Cyclotomic {
                field: c.field.clone(),
                coeffs: c.coeffs.iter().map(|x| -x).collect(),
            }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rational(r)
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}", fmt_rational(r)),
            Scalar::Cyclotomic(c) => {
                let mut out = String::new();
                for (k, a) in c.coeffs.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let mag = a.abs();
                    if out.is_empty() {
                        if a.is_negative() {
                            out.push('-');
                        }
                    } else if a.is_negative() {
                        out.push_str(" - ");
                    } else {
                        out.push_str(" + ");
                    }
                    let mono = match k {
                        0 => String::new(),
                        1 => "z".to_string(),
                        _ => format!("z^{k}"),
                    };
                    if k == 0 {
                        out.push_str(&fmt_rational(&mag));
                    } else if mag.is_one() {
                        out.push_str(&mono);
                    } else {
                        out.push_str(&format!("{}*{}", fmt_rational(&mag), mono));
                    }
                }
                if out.is_empty() {
                    out.push('0');
                }
                write!(f, "({}) @ zeta({})", out, c.field.order)
            }
        }
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }
    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }
    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }
    fn err(&self, why: &'static str) -> ScalarError {
        ScalarError::Parse(self.src.to_string(), why)
    }
    fn integer(&mut self) -> Result<BigInt, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(self.src[start..self.pos].parse().expect("digits"))
    }
    /// unsigned rational "p" or "p/q"
    fn rational(&mut self) -> Result<BigRational, ScalarError> {
        let p = self.integer()?;
        if self.eat(b'/') {
            let q = self.integer()?;
            if q.is_zero() {
                return Err(self.err("zero denominator"));
            }
            Ok(BigRational::new(p, q))
        } else {
            Ok(BigRational::from_integer(p))
        }
    }
    /// polynomial in z, returns coefficients low degree first
    fn polynomial(&mut self) -> Result<Vec<BigRational>, ScalarError> {
        let mut coeffs: Vec<BigRational> = Vec::new();
        let mut first = true;
        loop {
            let neg = if self.eat(b'-') {
                true
            } else if self.eat(b'+') || first {
                false
            } else {
                break;
            };
            first = false;
            let mut coef = BigRational::one();
            let mut deg = 0usize;
            if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                coef = self.rational()?;
                if self.eat(b'*') {
                    if self.peek() != Some(b'z') {
                        return Err(self.err("expected z after *"));
                    }
                } else if self.peek() != Some(b'z') {
                    if coeffs.is_empty() {
                        coeffs.push(BigRational::zero());
                    }
                    coeffs[0] += if neg { -coef } else { coef };
                    continue;
                }
            }
            if self.eat(b'z') {
                deg = 1;
                if self.eat(b'^') {
                    deg = self.integer()?.to_usize().ok_or_else(|| self.err("exponent too large"))?;
                }
            } else if deg == 0 {
                return Err(self.err("expected term"));
            }
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, BigRational::zero());
            }
            coeffs[deg] += if neg { -coef } else { coef };
        }
        if coeffs.is_empty() {
            return Err(self.err("empty polynomial"));
        }
        Ok(coeffs)
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;

    fn from_str(src: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor { s: src.as_bytes(), pos: 0, src };
        let value = if cur.eat(b'(') {
            let poly = cur.polynomial()?;
            if !cur.eat(b')') {
                return Err(cur.err("expected )"));
            }
            if !cur.eat(b'@') {
                return Err(cur.err("expected @ zeta(n)"));
            }
            cur.skip_ws();
            if !src[cur.pos..].starts_with("zeta") {
                return Err(cur.err("expected zeta"));
            }
            cur.pos += 4;
            if !cur.eat(b'(') {
                return Err(cur.err("expected ("));
            }
            let n = cur.integer()?.to_u32().filter(|&n| n >= 1).ok_or_else(|| cur.err("bad order"))?;
            if !cur.eat(b')') {
                return Err(cur.err("expected )"));
            }
            Scalar::from_poly(n, poly)
        } else {
            let neg = cur.eat(b'-');
            let r = cur.rational()?;
            Scalar::Rational(if neg { -r } else { r })
        };
        if cur.peek().is_some() {
            return Err(cur.err("trailing input"));
        }
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn cube_root_of_unity() {
        let z = Scalar::zeta(3);
        assert!((&(&z * &z) * &z).is_one());
        assert_eq!(&z + &(&z * &z), Scalar::from_int(-1));
    }

    #[test]
    fn small_orders() {
        assert_eq!(Scalar::zeta(1), Scalar::one());
        assert_eq!(Scalar::zeta(2), Scalar::from_int(-1));
        let i = Scalar::zeta(4);
        assert_eq!(&i * &i, Scalar::from_int(-1));
    }

    #[test]
    fn inverse_of_one_minus_zeta5() {
        let z = Scalar::zeta(5);
        let x = (Scalar::one() - &z).inv().unwrap();
        assert!((&x * &(Scalar::one() - &z)).is_one());
        let expect = Complex64::new(1.0, 0.0) / (Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 5.0));
        assert!((x.embed_complex() - expect).norm() < 1e-10);
        // frozen by the numeric embedding check above
        assert_eq!(x.to_string(), "(4/5 + 3/5*z + 2/5*z^2 + 1/5*z^3) @ zeta(5)");
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(Scalar::one().checked_div(&Scalar::zero()), Err(ScalarError::DivisionByZero));
        let z = Scalar::zeta(7);
        assert_eq!((&z - &z).inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn mixed_orders_rejected() {
        let r = Scalar::zeta(3).checked_mul(&Scalar::zeta(5));
        assert_eq!(r, Err(ScalarError::IncompatibleOrders(3, 5)));
        // rationals promote
        assert_eq!(Scalar::zeta(3).checked_add(&Scalar::from_int(1)).unwrap(), s("(1 + z) @ zeta(3)"));
    }

    #[test]
    fn embedding() {
        assert_eq!(Scalar::one().embed_complex(), Complex64::new(1.0, 0.0));
        let i = Scalar::zeta(4).embed_complex();
        assert!((i - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert_eq!(Scalar::from_int(-2).embed_complex(), Complex64::new(-2.0, 0.0));
    }

    #[test]
    fn rendering() {
        assert_eq!((-(Scalar::one() + Scalar::zeta(3))).to_string(), "(-1 - z) @ zeta(3)");
        assert_eq!(Scalar::zeta(3).inv().unwrap().to_string(), "(-1 - z) @ zeta(3)");
        assert_eq!(Scalar::from_ratio(-3, 6).to_string(), "-1/2");
        assert_eq!(Scalar::from_int(7).to_string(), "7");
        assert_eq!((Scalar::zeta(3) - Scalar::zeta(3)).to_string(), "(0) @ zeta(3)");
    }

    #[test]
    fn parsing() {
        assert_eq!(s("(z^2) @ zeta(3)"), Scalar::zeta(3).inv().unwrap());
        assert_eq!(s("-1/2"), Scalar::from_ratio(-1, 2));
        assert_eq!(s(" ( 1/2*z^3 - 2 ) @ zeta(5) "), Scalar::from_ratio(1, 2) * Scalar::zeta(5).pow(3).unwrap() - Scalar::from_int(2));
        // high powers reduce
        assert_eq!(s("(z^3) @ zeta(3)"), Scalar::one());
        assert!("(1 + ) @ zeta(3)".parse::<Scalar>().is_err());
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("(z) @ zeta(0)".parse::<Scalar>().is_err());
    }

    #[test]
    fn phi_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(9), vec![1, 0, 0, 1, 0, 0, 1]);
    }
}
