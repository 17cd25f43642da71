//! Torsion subgroups of curves over number fields.
//!
//! Reductions at good primes bound the order and exponent of the torsion subgroup. For each
//! prime `l` allowed by the bound, the points of order `l^i` are found from the roots in F of
//! the exact-order division polynomial together with a square test for the y-coordinate; the
//! resulting `l`-primary groups are assembled into invariant factors and verified.

use super::curve::{add, mul, Curve, Point};
use super::finite::{reductions_with_cap, Reduction};
use crate::arith::int::{factor_u64, gcd_i64, next_prime, valuation};
use crate::error::{Error, Result};
use crate::numfield::roots_in_field;
use serde::Serialize;

/// Largest prime tried for reductions.
pub const REDUCTION_SEARCH_BOUND: u64 = 10_000;
/// Minimum number of distinct primes with usable reductions.
pub const MIN_REDUCTION_PRIMES: usize = 3;
const TARGET_REDUCTION_PRIMES: usize = 6;
const TORSION_FIELD_CAP: u64 = 50_000;

/// Bounds on the torsion subgroup from reductions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionBound {
    /// gcd of the reduction orders.
    pub order: u64,
    /// gcd of the reduction exponents.
    pub exponent: u64,
    /// gcd of the smaller invariant factors.
    pub small_factor: u64,
    /// The reductions used.
    pub reductions: Vec<Reduction>,
}

/// Order, exponent and rank bounds from reductions at the first good primes.
pub fn torsion_bound(e: &Curve) -> Result<TorsionBound> {
    let mut reductions: Vec<Reduction> = Vec::new();
    let mut primes = 0usize;
    let mut p = 2u64;
    while primes < TARGET_REDUCTION_PRIMES {
        p = next_prime(p);
        if p > REDUCTION_SEARCH_BOUND {
            break;
        }
        if let Some(r) = reductions_with_cap(e, p, TORSION_FIELD_CAP)? {
            if !r.is_empty() {
                primes += 1;
                reductions.extend(r);
            }
        }
    }
    if primes < MIN_REDUCTION_PRIMES {
        return Err(Error::Resource(format!(
            "only {primes} usable reduction primes below {REDUCTION_SEARCH_BOUND}"
        )));
    }
    let g = |f: &dyn Fn(&Reduction) -> u64| {
        reductions.iter().fold(0i64, |acc, r| gcd_i64(acc, f(r) as i64)) as u64
    };
    Ok(TorsionBound {
        order: g(&|r| r.order),
        exponent: g(&|r| r.shape.1),
        small_factor: g(&|r| r.shape.0),
        reductions: reductions.clone(),
    })
}

/// A torsion subgroup `Z/m x Z/n` (`m | n`) with verified generators.
#[derive(Clone, Debug)]
pub struct TorsionGroup {
    /// Smaller invariant factor (1 when cyclic).
    pub m: u64,
    /// Larger invariant factor (the exponent).
    pub n: u64,
    /// Generators: one of order `n`, then one of order `m` when `m > 1`.
    pub generators: Vec<Point>,
    /// The bound from reductions.
    pub bound: TorsionBound,
}

/// JSON view of a torsion group.
#[derive(Clone, Debug, Serialize, serde::Deserialize, PartialEq)]
pub struct TorsionRecord {
    /// Shape text, for example `Z/2 x Z/4`.
    pub shape: String,
    /// Invariant factors.
    pub invariants: (u64, u64),
    /// Order.
    pub order: u64,
    /// Generators as `(x;y)`.
    pub generators: Vec<String>,
    /// gcd of reduction orders.
    pub order_bound: u64,
}

impl TorsionGroup {
    /// Group order.
    pub fn order(&self) -> u64 {
        self.m * self.n
    }

    /// `trivial`, `Z/n` or `Z/m x Z/n`.
    pub fn shape_text(&self) -> String {
        shape_text(self.m, self.n)
    }

    /// Whether the shape is `Z/N` or `Z/2 x Z/2N`.
    pub fn has_real_shape(&self) -> bool {
        self.m == 1 || (self.m == 2 && self.n % 2 == 0)
    }

    /// Serializable summary.
    pub fn record(&self) -> TorsionRecord {
        TorsionRecord {
            shape: self.shape_text(),
            invariants: (self.m, self.n),
            order: self.order(),
            generators: self.generators.iter().map(|p| p.to_text()).collect(),
            order_bound: self.bound.order,
        }
    }
}

/// `trivial`, `Z/n` or `Z/m x Z/n`.
pub fn shape_text(m: u64, n: u64) -> String {
    match (m, n) {
        (1, 1) => "trivial".into(),
        (1, n) => format!("Z/{n}"),
        (m, n) => format!("Z/{m} x Z/{n}"),
    }
}

/// The `l`-primary part: all points of `l`-power order (without the identity), each with its
/// exponent `i` (order `l^i`).
fn primary_points(e: &Curve, l: u64, max_exp: u32, max_size: u32) -> Result<Vec<(Point, u32)>> {
    let mut divp = e.division_polys();
    let mut out: Vec<(Point, u32)> = Vec::new();
    let cap = l.pow(max_size);
    for i in 1..=max_exp {
        if out.len() as u64 + 1 >= cap {
            break;
        }
        let q = l.pow(i);
        let poly = if q == 2 { e.two_division() } else { divp.exact_order(q)? };
        let (xs, _) = roots_in_field(&poly)?;
        let mut found = Vec::new();
        for x in &xs {
            found.extend(e.points_with_x(x)?);
        }
        if found.is_empty() {
            break;
        }
        out.extend(found.into_iter().map(|p| (p, i)));
    }
    Ok(out)
}

fn multiples(e: &Curve, p: &Point, count: u64) -> Vec<Point> {
    let mut v = Vec::with_capacity(count as usize);
    let mut acc = Point::Infinity;
    for _ in 0..count {
        v.push(acc.clone());
        acc = add(e.coeffs(), &acc, p);
    }
    v
}

/// The torsion subgroup of `e` over its base field.
pub fn torsion_subgroup(e: &Curve) -> Result<TorsionGroup> {
    let bound = torsion_bound(e)?;
    let mut big = Point::Infinity;
    let mut small = Point::Infinity;
    let (mut m, mut n) = (1u64, 1u64);
    for (l, v) in factor_u64(bound.order) {
        let max_exp = valuation(bound.exponent, l);
        let pts = primary_points(e, l, max_exp, v)?;
        if pts.is_empty() {
            continue;
        }
        let size = pts.len() as u64 + 1;
        let total = valuation(size, l);
        if l.pow(total) != size {
            return Err(Error::Internal(format!("{size} points of {l}-power order")));
        }
        let (p1, b) = pts.iter().max_by_key(|(_, i)| *i).cloned().expect("nonempty");
        let a = total - b;
        big = add(e.coeffs(), &big, &p1);
        n *= l.pow(b);
        if a > 0 {
            let span = multiples(e, &p1, l.pow(b));
            let la1 = l.pow(a - 1) as i64;
            let q = pts
                .iter()
                .filter(|(_, i)| *i == a)
                .map(|(p, _)| p)
                .find(|p| !span.contains(&mul(e.coeffs(), p, la1)))
                .ok_or_else(|| Error::Internal(format!("no complement in the {l}-primary part")))?;
            small = add(e.coeffs(), &small, q);
            m *= l.pow(a);
        }
    }
    let mut generators = Vec::new();
    if n > 1 {
        generators.push(big);
    }
    if m > 1 {
        generators.push(small);
    }
    let group = TorsionGroup { m, n, generators, bound };
    verify(e, &group)?;
    Ok(group)
}

/// Checks generator orders and exhaustive independence.
fn verify(e: &Curve, t: &TorsionGroup) -> Result<()> {
    let orders: Vec<u64> = if t.m > 1 { vec![t.n, t.m] } else if t.n > 1 { vec![t.n] } else { vec![] };
    for (g, &o) in t.generators.iter().zip(&orders) {
        if !e.contains(g) || e.order_upto(g, o) != Some(o) {
            return Err(Error::Internal(format!("generator {} does not have order {o}", g.to_text())));
        }
    }
    if t.m > 1 {
        let g1 = multiples(e, &t.generators[0], t.n);
        let mut acc = Point::Infinity;
        for a in 0..t.m {
            for (b, pb) in g1.iter().enumerate() {
                if (a, b) != (0, 0) && add(e.coeffs(), &acc, pb).is_infinity() {
                    return Err(Error::Internal("dependent generators".into()));
                }
            }
            acc = add(e.coeffs(), &acc, &t.generators[1]);
        }
    }
    Ok(())
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellcurve::{curve_from_j, kubert_curve};
    use crate::numfield::{NfElement, NumberField};

    #[test]
    fn over_rationals() {
        let q = NumberField::rationals();
        let e = curve_from_j(&NfElement::zero(&q)).unwrap();
        let t = torsion_subgroup(&e).unwrap();
        assert_eq!((t.m, t.n), (1, 3));
        let e = curve_from_j(&NfElement::from_i64(&q, 1728)).unwrap();
        let t = torsion_subgroup(&e).unwrap();
        assert_eq!((t.m, t.n), (2, 2));
    }

    #[test]
    fn kubert_rows() {
        let f = NumberField::parse("1,0,1").unwrap();
        let i = NfElement::parse(&f, "0,1").unwrap();
        let t = torsion_subgroup(&kubert_curve(&i, &i).unwrap()).unwrap();
        assert_eq!(t.shape_text(), "Z/10");
        let b = NfElement::parse(&f, "-1/8").unwrap();
        let t = torsion_subgroup(&kubert_curve(&b, &NfElement::zero(&f)).unwrap()).unwrap();
        assert_eq!(t.shape_text(), "Z/2 x Z/4");
    }
}
