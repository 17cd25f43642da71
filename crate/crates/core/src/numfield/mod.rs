//! Number fields `Q[x]/(f)` with exact element arithmetic, factorization of polynomials over
//! number fields (Trager), real embedding counts, field isomorphism and roots of unity.

mod element;
mod factor;
mod roots;
mod tower;

pub use element::{NfElement, NumberField};
pub use factor::{
    factor_over_nf, is_isomorphic, nf_inverse, nf_poly_from_q, norm_poly, real_embedding_count,
    roots_of_unity_order, NfFactorization,
};
pub use roots::{roots_in_field, RootSearchStats};
pub use tower::{element_degree, integralize, subalgebra_dimension, AbsoluteTower, QAlgebra, Tower};

use crate::arith::poly::Poly;

/// Polynomials with coefficients in a number field.
pub type NfPoly = Poly<NfElement>;
