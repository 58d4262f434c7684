//! The Hopf monoid axiom suite, each identity compared as full tensors.

use super::HopfMonoid;
use crate::exec;
use crate::tensor::{GradedTensor, TensorError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub holds: bool,
    /// First multi-index where the two sides differ.
    pub witness: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> Vec<&AxiomCheck> {
        self.checks.iter().filter(|c| !c.holds).collect()
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.holds)
    }

    pub fn get(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

type Sides = Result<(GradedTensor, GradedTensor), TensorError>;
type Identity = (&'static str, fn(&HopfMonoid) -> Sides);

fn id(h: &HopfMonoid) -> GradedTensor {
    GradedTensor::identity(h.space())
}

fn swap(h: &HopfMonoid) -> GradedTensor {
    GradedTensor::swap(h.space(), h.space())
}

const IDENTITIES: &[Identity] = &[
    ("associativity", |h| {
        let l = h.m().compose(&h.m().tensor(&id(h))?)?;
        let r = h.m().compose(&id(h).tensor(h.m())?)?;
        Ok((l, r))
    }),
    ("left unit", |h| Ok((h.m().compose(&h.unit().tensor(&id(h))?)?, id(h)))),
    ("right unit", |h| Ok((h.m().compose(&id(h).tensor(h.unit())?)?, id(h)))),
    ("coassociativity", |h| {
        let l = h.delta().tensor(&id(h))?.compose(h.delta())?;
        let r = id(h).tensor(h.delta())?.compose(h.delta())?;
        Ok((l, r))
    }),
    ("left counit", |h| Ok((h.eps().tensor(&id(h))?.compose(h.delta())?, id(h)))),
    ("right counit", |h| Ok((id(h).tensor(h.eps())?.compose(h.delta())?, id(h)))),
    ("bialgebra", |h| {
        let l = h.delta().compose(h.m())?;
        let mid = id(h).tensor(&swap(h))?.tensor(&id(h))?;
        let r = h.m().tensor(h.m())?.compose(&mid.compose(&h.delta().tensor(h.delta())?)?)?;
        Ok((l, r))
    }),
    ("counit multiplicative", |h| Ok((h.eps().compose(h.m())?, h.eps().tensor(h.eps())?))),
    ("unit comultiplicative", |h| Ok((h.delta().compose(h.unit())?, h.unit().tensor(h.unit())?))),
    ("counit of unit", |h| {
        Ok((h.eps().compose(h.unit())?, GradedTensor::scalar(crate::scalar::Scalar::one())))
    }),
    ("left antipode", |h| {
        let l = h.m().compose(&h.s().tensor(&id(h))?.compose(h.delta())?)?;
        Ok((l, h.unit().compose(h.eps())?))
    }),
    ("right antipode", |h| {
        let l = h.m().compose(&id(h).tensor(h.s())?.compose(h.delta())?)?;
        Ok((l, h.unit().compose(h.eps())?))
    }),
    ("antipode anti-multiplicative", |h| {
        let l = h.s().compose(h.m())?;
        let r = h.m().compose(&swap(h))?.compose(&h.s().tensor(h.s())?)?;
        Ok((l, r))
    }),
    ("antipode anti-comultiplicative", |h| {
        let l = h.delta().compose(h.s())?;
        let r = h.s().tensor(h.s())?.compose(&swap(h).compose(h.delta())?)?;
        Ok((l, r))
    }),
    ("antipode inverse left", |h| Ok((h.s_inv().compose(h.s())?, id(h)))),
    ("antipode inverse right", |h| Ok((h.s().compose(h.s_inv())?, id(h)))),
    ("inverse antipode left", |h| {
        // M o (id (x) S^-1) o Delta^op = unit o eps
        let l = h.m().compose(&id(h).tensor(h.s_inv())?.compose(&swap(h).compose(h.delta())?)?)?;
        Ok((l, h.unit().compose(h.eps())?))
    }),
    ("inverse antipode right", |h| {
        let l = h.m().compose(&h.s_inv().tensor(&id(h))?.compose(&swap(h).compose(h.delta())?)?)?;
        Ok((l, h.unit().compose(h.eps())?))
    }),
    ("S^2 multiplicative", |h| {
        let s2 = h.antipode_power(2);
        Ok((s2.compose(h.m())?, h.m().compose(&s2.tensor(&s2)?)?))
    }),
    ("S^2 comultiplicative", |h| {
        let s2 = h.antipode_power(2);
        Ok((h.delta().compose(&s2)?, s2.tensor(&s2)?.compose(h.delta())?))
    }),
];

/// Names of all identities in evaluation order.
pub fn identity_names() -> Vec<&'static str> {
    let mut v: Vec<&'static str> = IDENTITIES.iter().map(|(n, _)| *n).collect();
    v.push("parity");
    v
}

/// Evaluates every identity. Structural errors count as failures with an empty witness.
pub fn check_axioms(h: &HopfMonoid) -> AxiomReport {
    let mut checks = exec::map(IDENTITIES.to_vec(), |(name, f)| match f(h) {
        Ok((l, r)) => {
            let witness = l.first_difference(&r);
            AxiomCheck { name, holds: witness.is_none(), witness }
        }
        Err(_) => AxiomCheck { name, holds: false, witness: Some(vec![]) },
    });
    let tensors = [h.m(), h.unit(), h.delta(), h.eps(), h.s(), h.s_inv()];
    let odd = tensors.iter().position(|t| !t.is_parity_even());
    checks.push(AxiomCheck { name: "parity", holds: odd.is_none(), witness: odd.map(|k| vec![k]) });
    AxiomReport { checks }
}
