//! Exact arithmetic over GF(p^e): elements, polynomials, matrices and subspaces.

mod field;
mod matrix;
pub mod poly;
mod subspace;

pub use field::{gcd, is_prime, make_field, prime_divisors, Embedding, Felt, FieldDesc, FieldJson};
pub use matrix::{Mat, MatJson};
pub use subspace::{Subspace, SubspaceJson};
