//! Reduction of curves modulo primes of number fields and point counting over `F_q`.

use super::curve::{discriminant_of, mul, Coeffs, Curve, Point};
use crate::arith::field::{Field, Q};
use crate::arith::fp::{FpPolyRing, XorShift};
use crate::arith::int::{factor_u64, inv_mod, is_prime, lcm_u64, mul_mod};
use crate::error::{Error, Result};
use crate::numfield::NfElement;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use std::fmt;
use std::sync::Arc;

/// Largest residue field used for naive point counting.
pub const RESIDUE_FIELD_CAP: u64 = 1_000_000;

/// The field `F_p[t]/(g)` with `g` monic irreducible of degree `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqCtx {
    ring: FpPolyRing,
    modulus: Vec<u64>,
    k: usize,
    q: u64,
}

impl FqCtx {
    /// Context for `F_p[t]/(g)`; `g` must be monic irreducible and `p^deg g` must fit in 32
    /// bits.
    pub fn new(p: u64, g: Vec<u64>) -> Result<Arc<Self>> {
        let ring = FpPolyRing::new(p);
        let g = ring.monic(&g);
        let k = g.len().saturating_sub(1);
        if k == 0 {
            return Err(Error::domain("modulus must have positive degree"));
        }
        let q = p.checked_pow(k as u32).filter(|&q| q < (1u64 << 32));
        let q = q.ok_or_else(|| Error::Resource(format!("field of {p}^{k} elements is too large")))?;
        Ok(Arc::new(FqCtx { ring, modulus: g, k, q }))
    }

    /// Characteristic.
    pub fn p(&self) -> u64 {
        self.ring.p
    }

    /// Number of elements.
    pub fn size(&self) -> u64 {
        self.q
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        self.k
    }

    fn decode(&self, mut v: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.k);
        for _ in 0..self.k {
            out.push(v % self.ring.p);
            v /= self.ring.p;
        }
        self.ring.trim(out)
    }

    fn encode(&self, c: &[u64]) -> u64 {
        c.iter().rev().fold(0u64, |acc, &d| acc * self.ring.p + d)
    }

    fn add_idx(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return (a + b) % self.ring.p;
        }
        self.encode(&self.ring.add(&self.decode(a), &self.decode(b)))
    }

    fn neg_idx(&self, a: u64) -> u64 {
        if self.k == 1 {
            return (self.ring.p - a) % self.ring.p;
        }
        self.encode(&self.ring.sub(&[], &self.decode(a)))
    }

    fn mul_idx(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return mul_mod(a, b, self.ring.p);
        }
        let m = self.ring.mul(&self.decode(a), &self.decode(b));
        self.encode(&self.ring.rem(&m, &self.modulus))
    }

    fn inv_idx(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        if self.k == 1 {
            return inv_mod(a, self.ring.p);
        }
        let (g, s, _) = self.ring.xgcd(&self.decode(a), &self.modulus);
        debug_assert_eq!(g, vec![1]);
        Some(self.encode(&self.ring.rem(&s, &self.modulus)))
    }

    fn int_idx(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.ring.p)).to_u64().unwrap()
    }

    /// Element with the given encoded index.
    pub fn elem(self: &Arc<Self>, v: u64) -> FqElem {
        FqElem { ctx: self.clone(), v }
    }

    /// Image of a number-field element under `alpha -> t`, `None` when `p` divides its
    /// denominator.
    pub fn reduce(self: &Arc<Self>, a: &NfElement) -> Option<FqElem> {
        let p = BigInt::from(self.ring.p);
        if (a.denominator() % &p).is_zero() {
            return None;
        }
        let num: Vec<u64> = self.ring.trim(a.numerators().iter().map(|c| self.int_idx(c)).collect());
        let r = self.encode(&self.ring.rem(&num, &self.modulus));
        let inv = self.inv_idx(self.int_idx(a.denominator())).expect("unit");
        Some(self.elem(self.mul_idx(r, inv)))
    }
}

/// An element of a finite field.
#[derive(Clone)]
pub struct FqElem {
    ctx: Arc<FqCtx>,
    v: u64,
}

impl FqElem {
    /// Encoded index `sum c_i p^i` of the coordinates in the basis `1, t, ..., t^(k-1)`.
    pub fn index(&self) -> u64 {
        self.v
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.ctx.decode(self.v))
    }
}

impl PartialEq for FqElem {
    fn eq(&self, o: &Self) -> bool {
        self.v == o.v && self.ctx.q == o.ctx.q
    }
}

impl Field for FqElem {
    fn zero_like(&self) -> Self {
        self.ctx.elem(0)
    }
    fn one_like(&self) -> Self {
        self.ctx.elem(1)
    }
    fn from_i64_like(&self, n: i64) -> Self {
        self.ctx.elem(n.rem_euclid(self.ctx.ring.p as i64) as u64)
    }
    fn from_rat_like(&self, q: &Q) -> Self {
        let n = self.ctx.int_idx(q.numer());
        let d = self.ctx.inv_idx(self.ctx.int_idx(q.denom())).expect("denominator prime to p");
        self.ctx.elem(self.ctx.mul_idx(n, d))
    }
    fn eq_zero(&self) -> bool {
        self.v == 0
    }
    fn plus(&self, o: &Self) -> Self {
        self.ctx.elem(self.ctx.add_idx(self.v, o.v))
    }
    fn minus(&self, o: &Self) -> Self {
        self.ctx.elem(self.ctx.add_idx(self.v, self.ctx.neg_idx(o.v)))
    }
    fn times(&self, o: &Self) -> Self {
        self.ctx.elem(self.ctx.mul_idx(self.v, o.v))
    }
    fn negate(&self) -> Self {
        self.ctx.elem(self.ctx.neg_idx(self.v))
    }
    fn inverse(&self) -> Option<Self> {
        self.ctx.inv_idx(self.v).map(|v| self.ctx.elem(v))
    }
}

/// A curve over a finite field with its group order and shape `Z/m x Z/n`, `m | n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reduction {
    /// Residue characteristic.
    pub p: u64,
    /// Residue degree.
    pub residue_degree: usize,
    /// Group order.
    pub order: u64,
    /// Invariant factors `(m, n)`.
    pub shape: (u64, u64),
}

/// Square roots in `F_q` by table lookup.
struct SqrtTable {
    root: Vec<u32>,
}

impl SqrtTable {
    fn new(ctx: &FqCtx) -> Self {
        let mut root = vec![u32::MAX; ctx.q as usize];
        for x in 0..ctx.q {
            let s = ctx.mul_idx(x, x) as usize;
            if root[s] == u32::MAX {
                root[s] = x as u32;
            }
        }
        SqrtTable { root }
    }

    fn sqrt(&self, v: u64) -> Option<u64> {
        let r = self.root[v as usize];
        (r != u32::MAX).then_some(r as u64)
    }
}

/// Order and shape of a nonsingular curve over `F_q`, `q` odd.
pub(crate) fn count_and_shape(ctx: &Arc<FqCtx>, a: &Coeffs<FqElem>) -> (u64, (u64, u64)) {
    let table = SqrtTable::new(ctx);
    let [a1, a2, a3, a4, a6] = a;
    let b2 = a1.times(a1).plus(&a2.scale_i64(4)).index();
    let b4 = a1.times(a3).plus(&a4.scale_i64(2)).index();
    let b6 = a3.times(a3).plus(&a6.scale_i64(4)).index();
    let four = 4 % ctx.p();
    let two_b4 = ctx.add_idx(b4, b4);
    // y-discriminant 4x^3 + b2 x^2 + 2 b4 x + b6
    let disc_at = |x: u64| {
        let mut acc = four;
        acc = ctx.add_idx(ctx.mul_idx(acc, x), b2);
        acc = ctx.add_idx(ctx.mul_idx(acc, x), two_b4);
        ctx.add_idx(ctx.mul_idx(acc, x), b6)
    };
    let mut order = 1u64;
    for x in 0..ctx.q {
        let d = disc_at(x);
        if d == 0 {
            order += 1;
        } else if table.sqrt(d).is_some() {
            order += 2;
        }
    }
    let shape = group_shape(ctx, a, order, &table, &disc_at);
    (order, shape)
}

fn group_shape(
    ctx: &Arc<FqCtx>,
    a: &Coeffs<FqElem>,
    order: u64,
    table: &SqrtTable,
    disc_at: &dyn Fn(u64) -> u64,
) -> (u64, u64) {
    if order == 1 {
        return (1, 1);
    }
    let fac = factor_u64(order);
    let mut rng = XorShift::new(ctx.q.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ order);
    let half = ctx.elem(1).divide(&ctx.elem(2 % ctx.p())).expect("odd characteristic");
    let mut exponent = 1u64;
    let mut stable = 0;
    let mut samples = 0;
    for _ in 0..200_000 {
        let x = rng.next_u64() % ctx.q;
        let d = disc_at(x);
        let r = match table.sqrt(d) {
            Some(r) => r,
            None => continue,
        };
        let xe = ctx.elem(x);
        let mut re = ctx.elem(r);
        if rng.next_u64() & 1 == 1 {
            re = re.negate();
        }
        let y = re.minus(&a[0].times(&xe)).minus(&a[2]).times(&half);
        let pt = Point::Affine { x: xe, y };
        let mut ord = order;
        for &(l, e) in &fac {
            for _ in 0..e {
                if mul(a, &pt, (ord / l) as i64).is_infinity() {
                    ord /= l;
                } else {
                    break;
                }
            }
        }
        let next = lcm_u64(exponent, ord);
        samples += 1;
        if next == exponent {
            stable += 1;
        } else {
            exponent = next;
            stable = 0;
        }
        let m = order / exponent;
        if samples >= 16 && stable >= 16 && exponent % m == 0 && (ctx.q - 1) % m == 0 {
            break;
        }
    }
    (order / exponent, exponent)
}

/// Reductions of `e` at the primes above the odd prime `p` with residue field of at most
/// `10^6` elements. `Ok(None)` signals a prime to skip: `p` divides the discriminant of the
/// defining polynomial, a coefficient denominator, or the curve discriminant.
pub fn good_reduction_order(e: &Curve, p: u64) -> Result<Option<Vec<Reduction>>> {
    reductions_with_cap(e, p, RESIDUE_FIELD_CAP)
}

/// Reduced coefficient vectors at the primes above `p` (all residue degrees), or `None` for
/// a prime to skip.
pub(crate) fn reduced_models(e: &Curve, p: u64) -> Result<Option<Vec<(Vec<u64>, Coeffs<NfElement>)>>> {
    if p == 2 || !is_prime(p) {
        return Err(Error::domain(format!("{p} is not an odd prime")));
    }
    let field = e.field();
    let pb = BigInt::from(p);
    if (field.poly_discriminant() % &pb).is_zero() {
        return Ok(None);
    }
    let ring = FpPolyRing::new(p);
    let f: Vec<u64> = field
        .defining_ints()
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().unwrap())
        .collect();
    let mut rng = XorShift::new(p);
    let factors = ring.factor_squarefree(&ring.trim(f), &mut rng);
    for c in e.coeffs() {
        if (c.denominator() % &pb).is_zero() {
            return Ok(None);
        }
    }
    let disc = e.discriminant();
    if (disc.denominator() % &pb).is_zero() {
        return Ok(None);
    }
    let dnum: Vec<u64> = ring.trim(disc.numerators().iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect());
    let mut out = Vec::new();
    for g in factors {
        if ring.rem(&dnum, &g).is_empty() {
            return Ok(None);
        }
        out.push((g, e.coeffs().clone()));
    }
    Ok(Some(out))
}

pub(crate) fn reductions_with_cap(e: &Curve, p: u64, cap: u64) -> Result<Option<Vec<Reduction>>> {
    let models = match reduced_models(e, p)? {
        Some(m) => m,
        None => return Ok(None),
    };
    let mut out = Vec::new();
    for (g, a) in models {
        let k = g.len() - 1;
        match p.checked_pow(k as u32) {
            Some(q) if q <= cap => {}
            _ => continue,
        }
        let ctx = FqCtx::new(p, g)?;
        let red: Vec<FqElem> = a.iter().map(|c| ctx.reduce(c).expect("integral at p")).collect();
        let red: Coeffs<FqElem> = red.try_into().expect("five coefficients");
        debug_assert!(!discriminant_of(&red).eq_zero());
        let (order, shape) = count_and_shape(&ctx, &red);
        out.push(Reduction { p, residue_degree: k, order, shape });
    }
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellcurve::curve_from_j;
    use crate::numfield::NumberField;

    fn brute(p: u64, a4: i64, a6: i64) -> u64 {
        let mut n = 1;
        for x in 0..p as i64 {
            for y in 0..p as i64 {
                if (y * y - x * x * x - a4 * x - a6).rem_euclid(p as i64) == 0 {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn counts_over_prime_fields() {
        let q = NumberField::rationals();
        let e = curve_from_j(&NfElement::from_i64(&q, 1728)).unwrap();
        let r = good_reduction_order(&e, 5).unwrap().unwrap();
        assert_eq!(r[0].order, 8);
        assert_eq!(r[0].order, brute(5, -1, 0));
        assert_eq!(r[0].shape, (2, 4));
        let e = curve_from_j(&NfElement::zero(&q)).unwrap();
        let r = good_reduction_order(&e, 7).unwrap().unwrap();
        assert_eq!(r[0].order, brute(7, 0, 16));
        assert_eq!(r[0].order, 9);
        let r = good_reduction_order(&e, 11).unwrap().unwrap();
        assert_eq!(r[0].order, brute(11, 0, 16));
        assert_eq!(r[0].order, 12);
        assert!(good_reduction_order(&e, 3).unwrap().is_none());
        assert!(good_reduction_order(&e, 2).is_err());
    }

    #[test]
    fn quadratic_residue_fields() {
        // y^2 = x^3 - x over Q(i) at p = 3 (inert): F_9 has 16 points (Frobenius -3).
        let f = NumberField::parse("1,0,1").unwrap();
        let e = curve_from_j(&NfElement::from_i64(&f, 1728)).unwrap();
        let r = good_reduction_order(&e, 3).unwrap().unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].residue_degree, 2);
        assert_eq!(r[0].order, 16);
        assert_eq!(r[0].shape, (4, 4));
    }
}
