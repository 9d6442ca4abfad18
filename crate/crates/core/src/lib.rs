//! Exact symbolic calculus for the characteristic-coefficient laws `σ_i` of
//! the free Cayley-Hamilton algebra.
//!
//! The crate is organised bottom-up:
//!
//! * [`word`]: monomials, Lyndon words, cyclic normal forms.
//! * [`symfun`]: the universal power-transform polynomials `P_{i,j}` in the
//!   elementary basis.
//! * [`sigma`]: the commutative ring of symbols `σ_i(p)` and the reduction of
//!   `σ_i` of any word to it.
//! * [`free`]: the free Σ-algebra, Amitsur's expansion and everything built on it.
//! * [`matrix`]: exact matrices, division-free characteristic coefficients and
//!   identity verification by evaluation.
//! * [`norms`]: split semisimple algebras with their determinant-power norms.

pub mod error;
pub mod free;
pub mod limits;
pub mod matrix;
pub mod mpoly;
pub mod norms;
pub mod scalar;
pub mod sigma;
pub mod symfun;
pub mod word;

pub use error::{Error, Result};
pub use free::{
    amitsur_expand, ch_polynomial, kernel_relations, polarize, sigma_of, t_substitute, KernelRelation, NCPoly, Slot,
};
pub use limits::Limits;
pub use matrix::{
    char_coeffs, eval_nc_poly, eval_sigma_poly, generic_matrices, verify_identity, Assignment, ExactMatrix, Identity,
    Verdict, VerifyMode,
};
pub use mpoly::MPoly;
pub use norms::{BlockElement, BlockShape};
pub use sigma::{normalize_sigma, SigmaGenerator, SigmaPoly, Style, Truncation};
pub use symfun::{elementary_from_roots, power_transform, truncate_epoly, EPoly};
pub use word::{cyclic_normalize, is_lyndon, lyndon_words, substitute_word, CyclicNormalForm, Word};
