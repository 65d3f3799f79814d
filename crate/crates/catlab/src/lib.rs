//! Exact computation with symmetric categorical groups over finite
//! commutative rings: the quadratic-algebra cat-groups, their 2-kernels and
//! six-term exact sequences, and rank-2 Hopf-Galois algebras.

pub mod abgroup;
pub mod ring;
