//! Exact arithmetic for torsion subgroups of CM elliptic curves over number fields.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`]: integers, rationals, univariate polynomials and their factorization over Q.
//! * [`quadorder`]: imaginary quadratic discriminants, class numbers, genus theory, real ideals
//!   and ray class field degrees.
//! * [`numfield`]: arithmetic in `Q[x]/(f)`, factorization over number fields, field isomorphism.
//! * [`ellcurve`]: Weierstrass models, the group law, division polynomials, reduction modulo
//!   primes and torsion subgroups.
//! * [`classify`]: degree constraints on CM torsion and the classification in odd degree.
//! * [`atlas`]: Hilbert class polynomials, the table of exceptional curves, degree sequences
//!   and the Sophie Germain class number scan.

pub mod arith;
pub mod atlas;
pub mod classify;
pub mod ellcurve;
pub mod error;
pub mod numfield;
pub mod quadorder;

pub use error::{Error, Result};
