//! Elliptic curves over number fields: Weierstrass, Kubert-Tate and Hesse models, the group
//! law, division polynomials, reduction modulo primes and torsion subgroups.

mod curve;
mod divpoly;
mod finite;
mod torsion;

pub use curve::{
    curve_from_j, curves_isomorphic, hesse_curve, kubert_curve, point_add, quadratic_twist, Curve,
    Point,
};
pub use curve::CurveRecord;
pub use divpoly::{division_polys, DivisionPolys};
pub use finite::{good_reduction_order, FqCtx, FqElem, Reduction};
pub use torsion::{shape_text, torsion_bound, torsion_subgroup, TorsionBound, TorsionGroup, TorsionRecord};
