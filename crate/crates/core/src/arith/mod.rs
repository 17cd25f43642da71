//! Exact integers, rationals, univariate polynomials and factorization over Q.

pub mod cyclotomic;
pub mod factor;
pub mod field;
pub mod fp;
pub mod int;
pub mod linalg;
pub mod poly;
pub mod resultant;

pub use cyclotomic::{cyclotomic_data, cyclotomic_poly, CyclotomicData};
pub use factor::{factor_poly_q, factor_poly_q_with, FactorOptions, Factorization};
pub use field::{Field, Q};
pub use int::kronecker;
pub use poly::{Poly, UniPoly};
pub use resultant::{resultant, resultant_q, BiPoly, Eliminate};
