pub mod exec;
pub mod heisenberg;
pub mod hopf;
pub mod integrals;
pub mod invariant;
pub mod linalg;
pub mod ograph;
pub mod scalar;
pub mod tensor;
