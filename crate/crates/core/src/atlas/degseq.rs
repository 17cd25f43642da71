//! Degree sequences of the fibres of `Y(m, n)` over a rational CM j-invariant.
//!
//! A point of the fibre is a `mu_m x Z/n`-structure `(P, Q)` on `E` up to `Aut(E)`. For
//! `m = 1` it is recorded by the abscissa of `P`; for `m` in `{2, 3}` by the pair of abscissae
//! `(x(P), x(Q))`, where `x(Q)` is a root of the `m`-division polynomial other than
//! `x((n/m) P)`. Negation changes neither abscissa, and for `m = 3` the Weil pairing picks one
//! sign of `Q` for each sign of `P`, so these tuples are in bijection with structures modulo
//! `{+1, -1}`.
//!
//! The remaining automorphisms act on a short model by `x -> zeta x` with `zeta` a root of
//! unity of order `k` (`k = 2` for `j = 1728`, `k = 3` for `j = 0`). The degree-`k`
//! monomials in the coordinates separate the orbits of this action, so a generic rational
//! combination `theta` of them generates the residue field of a closed point. Each Galois orbit
//! of tuples is realised in an explicit number field; the minimal polynomials of `theta` over
//! all orbits, taken without repetition, are in bijection with the closed points. Their degree
//! sum is checked against the number of `Aut(E)`-classes before the sequence is reported. For
//! `m = 3` the degree of `K(zeta_3)` is reported.

use crate::arith::factor::factor_poly_q;
use crate::arith::field::{Field, Q};
use crate::arith::linalg::solve_columns;
use crate::arith::poly::{Poly, UniPoly};
use crate::atlas::hcp::hilbert_class_poly;
use crate::ellcurve::{curve_from_j, DivisionPolys};
use crate::error::{Error, Result};
use crate::numfield::{
    element_degree, factor_over_nf, nf_poly_from_q, roots_in_field, subalgebra_dimension, NfElement, NumberField,
    Tower,
};
use crate::quadorder::Discriminant;
use num_traits::One;
use serde::Serialize;
use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

/// Pairs `(m, n)` for which the moduli problem is not fine.
pub const EXCLUDED_PAIRS: [(u64, u64); 4] = [(1, 1), (1, 2), (1, 3), (2, 2)];

/// Default wall-clock budget for one row.
pub const DEFAULT_BUDGET: Duration = Duration::from_secs(600);

/// The degree sequence of `Y(m, n)` over `j(O(D))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSequence {
    /// The discriminant.
    pub delta: i64,
    /// The invariant `m`.
    pub m: u64,
    /// The invariant `n`.
    pub n: u64,
    /// Degrees of the fields `K_i(zeta_m)`, non-decreasing.
    pub degrees: Vec<u64>,
}

impl DegreeSequence {
    /// Comma-separated degrees.
    pub fn to_text(&self) -> String {
        self.degrees.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// The degree sequence for `(m, n)` over `j(O(D))` with the default budget.
pub fn degree_sequence(d: &Discriminant, m: u64, n: u64) -> Result<DegreeSequence> {
    degree_sequence_with_budget(d, m, n, DEFAULT_BUDGET)
}

/// The degree sequence for `(m, n)` over `j(O(D))`, failing with a resource error naming the
/// row once `budget` is exhausted between stages.
pub fn degree_sequence_with_budget(d: &Discriminant, m: u64, n: u64, budget: Duration) -> Result<DegreeSequence> {
    if m == 0 || n == 0 || n % m != 0 {
        return Err(Error::domain(format!("need positive m dividing n, got (m, n) = ({m}, {n})")));
    }
    if EXCLUDED_PAIRS.contains(&(m, n)) {
        return Err(Error::domain(format!("(m, n) = ({m}, {n}) is excluded: Y(m, n) is not a fine moduli space")));
    }
    if m > 3 {
        return Err(Error::Unsupported(format!("mu_m structures with m = {m} > 3")));
    }
    if d.class_number() != 1 {
        return Err(Error::Unsupported(format!(
            "degree sequences need a rational j-invariant; h({}) = {}",
            d.delta,
            d.class_number()
        )));
    }
    let clock = Budget { start: Instant::now(), budget, row: (d.delta, m, n) };
    let hcp = hilbert_class_poly(d)?;
    let j = -hcp.poly.coeffs()[0].clone();
    let k: usize = match d.delta {
        -3 => 3,
        -4 => 2,
        _ => 1,
    };
    let qf = NumberField::rationals();
    let curve = curve_from_j(&NfElement::from_rational(&qf, &j))?.short_model();
    let b: Vec<Q> = curve.b_invariants().iter().map(|c| c.as_rational().expect("rational model")).collect();
    let mut polys = DivisionPolys::new([b[0].clone(), b[1].clone(), b[2].clone(), b[3].clone()]);
    let f_n = polys.exact_order(n)?;
    let orbits = if m == 1 {
        first_orbits(&f_n, &clock)?
    } else {
        let f_m = polys.exact_order(m)?;
        let mult = multiplication_map(&mut polys, n / m);
        pair_orbits(&f_n, &f_m, &mult, &clock)?
    };
    clock.check("orbit enumeration")?;
    let tuples: usize = orbits.iter().map(|o| o.field.degree()).sum();
    let fixed = if m == 1 && k > 1 && f_n.coeffs()[0].eq_zero() { 1 } else { 0 };
    let classes = (tuples - fixed) / k + fixed;
    for attempt in 0..32 {
        let points = closed_points(&orbits, k, attempt)?;
        let total: usize = points.iter().map(|p| p.degree()).sum();
        if total != classes {
            continue;
        }
        let mut degrees = Vec::with_capacity(points.len());
        for p in &points {
            clock.check("residue fields")?;
            degrees.push(with_zeta(p, m)?);
        }
        degrees.sort_unstable();
        return Ok(DegreeSequence { delta: d.delta, m, n, degrees });
    }
    Err(Error::Internal(format!("no separating invariant found for ({}, {m}, {n})", d.delta)))
}

struct Budget {
    start: Instant,
    budget: Duration,
    row: (i64, u64, u64),
}

impl Budget {
    fn check(&self, stage: &str) -> Result<()> {
        if self.start.elapsed() > self.budget {
            let (delta, m, n) = self.row;
            return Err(Error::Resource(format!(
                "degree sequence row (m, n) = ({m}, {n}) at D = {delta} exceeded {:?} during {stage}",
                self.budget
            )));
        }
        Ok(())
    }
}

/// One Galois orbit of coordinate tuples, realised by a generic tuple in its own field.
struct Orbit {
    field: Arc<NumberField>,
    coords: Vec<NfElement>,
}

/// Rational functions `(num, den)` with `x([r] P) = num(x) / den(x)`.
fn multiplication_map(polys: &mut DivisionPolys<Q>, r: u64) -> (UniPoly, UniPoly) {
    let x = UniPoly::x_q();
    if r == 1 {
        return (x, UniPoly::constant(Q::one()));
    }
    let two = polys.two_division().clone();
    let (fm, f, fp) = (polys.psi(r - 1), polys.psi(r), polys.psi(r + 1));
    // x([r]P) = x - psi_{r-1} psi_{r+1} / psi_r^2 with psi_2^2 = F.
    let (cross, den) = if r % 2 == 1 { (fm.mul(&fp).mul(&two), f.mul(&f)) } else { (fm.mul(&fp), f.mul(&f).mul(&two)) };
    (x.mul(&den).sub(&cross), den)
}

fn root_field(g: &UniPoly) -> Result<(Arc<NumberField>, NfElement)> {
    let qf = NumberField::rationals();
    let abs = Tower::new(qf.clone(), nf_poly_from_q(&g.monic(), &qf)).absolute()?;
    Ok((abs.field, abs.beta))
}

fn first_orbits(f_n: &UniPoly, clock: &Budget) -> Result<Vec<Orbit>> {
    let fac = factor_poly_q(f_n)?;
    clock.check("factoring the exact-order polynomial")?;
    let mut out = Vec::new();
    for (g, _) in &fac.factors {
        let (field, x) = root_field(g)?;
        out.push(Orbit { field, coords: vec![x] });
    }
    Ok(out)
}

fn pair_orbits(f_n: &UniPoly, f_m: &UniPoly, mult: &(UniPoly, UniPoly), clock: &Budget) -> Result<Vec<Orbit>> {
    let mut out = Vec::new();
    for first in first_orbits(f_n, clock)? {
        let field = &first.field;
        let xp = &first.coords[0];
        let xt = xp.eval_q_poly(&mult.0).divide(&xp.eval_q_poly(&mult.1)).ok_or(Error::DivisionByZero)?;
        let lin = Poly::new(vec![xt.negate(), NfElement::one(field)]);
        let (rest, rem) = nf_poly_from_q(&f_m.monic(), field).divrem(&lin)?;
        if !rem.is_zero() {
            return Err(Error::Internal("x((n/m)P) is not a root of the m-division polynomial".into()));
        }
        let fac = factor_over_nf(&rest, field)?;
        clock.check("factoring over the first-coordinate field")?;
        for (h, _) in &fac.factors {
            let abs = Tower::new(field.clone(), h.clone()).absolute()?;
            let coords = vec![abs.embed_base(xp), abs.beta.clone()];
            out.push(Orbit { field: abs.field, coords });
        }
    }
    Ok(out)
}

/// A closed point, recorded by the minimal polynomial of `theta`.
struct ClosedPoint {
    minpoly: UniPoly,
}

impl ClosedPoint {
    fn degree(&self) -> usize {
        self.minpoly.degree()
    }
}

/// All monomials of total degree `k` in the coordinates.
fn monomials(coords: &[NfElement], k: usize) -> Vec<NfElement> {
    fn rec(coords: &[NfElement], k: usize, acc: NfElement, out: &mut Vec<NfElement>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        if coords.is_empty() {
            return;
        }
        rec(coords, k - 1, acc.times(&coords[0]), out);
        rec(&coords[1..], k, acc, out);
    }
    let mut out = Vec::new();
    rec(coords, k, NfElement::one(coords[0].field()), &mut out);
    out
}

/// Deterministic small coefficients for the `attempt`-th choice of `theta`.
fn coefficient(attempt: usize, i: usize) -> i64 {
    if i == 0 {
        return 1;
    }
    let v = (attempt as i64 + 2) * (i as i64 * 7 + 3) % 29 + 1;
    if (attempt + i) % 2 == 0 {
        v
    } else {
        -v
    }
}

fn closed_points(orbits: &[Orbit], k: usize, attempt: usize) -> Result<Vec<ClosedPoint>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for o in orbits {
        let mons = monomials(&o.coords, k);
        let mut theta = NfElement::zero(&o.field);
        for (i, mono) in mons.iter().enumerate() {
            theta = theta.plus(&mono.scale_i64(coefficient(attempt, i)));
        }
        let gens: Vec<Vec<Q>> = mons.iter().map(|x| x.coords()).collect();
        if subalgebra_dimension(&o.field, &gens) != element_degree(&theta) {
            return Ok(Vec::new());
        }
        let minpoly = minimal_polynomial(&theta)?;
        if seen.insert(minpoly.to_text()) {
            out.push(ClosedPoint { minpoly });
        }
    }
    Ok(out)
}

/// Monic minimal polynomial of an element over Q.
fn minimal_polynomial(a: &NfElement) -> Result<UniPoly> {
    let d = element_degree(a);
    let mut cols = Vec::with_capacity(d);
    let mut pw = NfElement::one(a.field());
    for _ in 0..d {
        cols.push(pw.coords());
        pw = pw.times(a);
    }
    let sol = solve_columns(&cols, &pw.coords()).ok_or_else(|| Error::Internal("minimal polynomial".into()))?;
    let mut c: Vec<Q> = sol.into_iter().map(|s| -s).collect();
    c.push(Q::one());
    let p = Poly::new(c);
    debug_assert!(a.eval_q_poly(&p).eq_zero());
    Ok(p)
}

/// Degree of `Q(theta)(zeta_m)` over Q.
fn with_zeta(p: &ClosedPoint, m: u64) -> Result<u64> {
    let deg = p.degree() as u64;
    if m < 3 {
        return Ok(deg);
    }
    let (field, _) = root_field(&p.minpoly)?;
    let cyclo = nf_poly_from_q(&UniPoly::from_i64s(&[1, 1, 1]), &field);
    let (roots, _) = roots_in_field(&cyclo)?;
    Ok(if roots.is_empty() { 2 * deg } else { deg })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadorder::decompose;

    fn seq(delta: i64, m: u64, n: u64) -> Vec<u64> {
        degree_sequence(&decompose(delta).unwrap(), m, n).unwrap().degrees
    }

    #[test]
    fn automorphism_quotients() {
        assert_eq!(seq(-3, 1, 4), vec![2]);
        assert_eq!(seq(-4, 1, 4), vec![1, 2]);
        assert_eq!(seq(-3, 3, 3), vec![2, 2, 2]);
    }

    #[test]
    fn generic_rows() {
        assert_eq!(seq(-7, 1, 7), vec![3, 21]);
        assert_eq!(seq(-16, 1, 4), vec![1, 1, 4]);
        assert_eq!(seq(-7, 2, 4), vec![2, 2, 2, 2, 4]);
    }

    #[test]
    fn rejected_inputs() {
        let d = decompose(-7).unwrap();
        for (m, n) in EXCLUDED_PAIRS {
            assert!(matches!(degree_sequence(&d, m, n), Err(Error::Domain(_))));
        }
        assert!(matches!(degree_sequence(&d, 2, 5), Err(Error::Domain(_))));
        assert!(matches!(degree_sequence(&d, 4, 4), Err(Error::Unsupported(_))));
        assert!(matches!(degree_sequence(&decompose(-15).unwrap(), 1, 5), Err(Error::Unsupported(_))));
        let r = degree_sequence_with_budget(&decompose(-163).unwrap(), 1, 9, Duration::ZERO);
        assert!(matches!(r, Err(Error::Resource(msg)) if msg.contains("(1, 9)") && msg.contains("-163")));
    }
}
