//! Exact arithmetic over prime fields and the rationals, subspaces of `F^d`,
//! and the polynomial apparatus behind the real-field kernel.

pub mod field;
pub mod poly;
pub mod subspace;

pub use field::{inner_product, is_self_orthogonal, proportional, Field, FieldSpec, PrimeField, Rationals};
pub use poly::{det_substituted_poly, poly_rank_basis, MultilinearPoly};
pub use subspace::{
    compute_m, enumerate_nonselforth_vectors, exists_nonselforth_in_complement, gaussian_binomial, rank, Subspace,
    DEFAULT_ENUMERATION_CAP,
};
