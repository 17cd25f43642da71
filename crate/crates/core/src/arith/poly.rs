//! Dense univariate polynomials over an exact field.

use super::field::{format_rational, parse_rational, Field, Q};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// A dense polynomial with ascending coefficients; the leading coefficient is nonzero unless
/// the polynomial is zero (empty coefficient list).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

/// Polynomials with rational coefficients.
pub type UniPoly = Poly<Q>;

impl<T: Field> Poly<T> {
    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.eq_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    /// A constant polynomial.
    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        if c.eq_zero() {
            return Poly::zero();
        }
        let mut v = vec![c.zero_like(); k];
        v.push(c);
        Poly { coeffs: v }
    }

    /// The polynomial `x`, using `one` to fix the coefficient field.
    pub fn x(one: &T) -> Self {
        Poly::monomial(one.one_like(), 1)
    }

    /// The linear polynomial `x - r`.
    pub fn linear_root(r: &T) -> Self {
        Poly::new(vec![r.negate(), r.one_like()])
    }

    /// Ascending coefficients.
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Consumes the polynomial and returns its coefficients.
    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree), given a reference element for the field.
    pub fn coeff_or(&self, i: usize, zero: &T) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(|| zero.zero_like())
    }

    /// Coefficient of `x^i` if within range.
    pub fn coeff(&self, i: usize) -> Option<&T> {
        self.coeffs.get(i)
    }

    /// Whether the polynomial is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial is reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Leading coefficient.
    pub fn lc(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Whether the polynomial is a nonzero constant or zero.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Whether the leading coefficient is one.
    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(|c| c.eq_one())
    }

    /// Sum.
    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(match (self.coeffs.get(i), o.coeffs.get(i)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::new(v)
    }

    /// Difference.
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| c.negate()).collect() }
    }

    /// Product.
    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut v = vec![zero; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.eq_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.eq_zero() {
                    continue;
                }
                v[i + j] = v[i + j].plus(&a.times(b));
            }
        }
        Poly::new(v)
    }

    /// Product by a scalar.
    pub fn scale(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![self.coeffs[0].zero_like(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    /// Integer power.
    pub fn pow(&self, e: u32) -> Self {
        let one = match self.coeffs.first() {
            Some(c) => Poly::constant(c.one_like()),
            None => return if e == 0 { panic!("0^0 for polynomials") } else { Poly::zero() },
        };
        let mut acc = one;
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Division with remainder; fails on division by zero.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        let dl = d.lc().ok_or(Error::DivisionByZero)?;
        let inv = dl.inverse().ok_or(Error::DivisionByZero)?;
        if self.coeffs.len() < d.coeffs.len() {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut r = self.coeffs.clone();
        let dn = d.coeffs.len();
        let qn = r.len() - dn + 1;
        let mut q = vec![dl.zero_like(); qn];
        for k in (0..qn).rev() {
            let top = &r[k + dn - 1];
            if top.eq_zero() {
                continue;
            }
            let c = top.times(&inv);
            for (j, dc) in d.coeffs.iter().enumerate() {
                if !dc.eq_zero() {
                    r[k + j] = r[k + j].minus(&c.times(dc));
                }
            }
            q[k] = c;
        }
        r.truncate(dn - 1);
        Ok((Poly::new(q), Poly::new(r)))
    }

    /// Remainder.
    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.divrem(d)?.1)
    }

    /// Exact quotient; fails if the division leaves a remainder.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::Internal("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// Monic associate (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.lc() {
            None => Poly::zero(),
            Some(c) => {
                let inv = c.inverse().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `s*self + t*o = g`, `g` monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let one_el = self
            .coeffs
            .first()
            .or(o.coeffs.first())
            .map(|c| c.one_like())
            .expect("xgcd of two zero polynomials");
        let one = Poly::constant(one_el);
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (one.clone(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), one);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        match r0.lc().cloned() {
            None => (r0, s0, t0),
            Some(c) => {
                let inv = c.inverse().expect("nonzero");
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale_i64(i as i64))
                .collect(),
        )
    }

    /// Evaluation by Horner's rule.
    pub fn eval(&self, x: &T) -> T {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(c);
        }
        acc
    }

    /// Composition `self(g(x))`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u64, m: &Self) -> Result<Self> {
        let one = Poly::constant(m.lc().ok_or(Error::DivisionByZero)?.one_like());
        let mut acc = one.rem(m)?;
        let mut base = self.rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m)?;
            }
        }
        Ok(acc)
    }

    /// Square-free decomposition (Yun): returns `(a_i, i)` with `self = lc * prod a_i^i`, each
    /// `a_i` monic, square-free and pairwise coprime. Valid in characteristic zero.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a = f.gcd(&fp);
        let mut b = f.exact_div(&a).expect("gcd divides");
        let mut c = fp.exact_div(&a).expect("gcd divides");
        let mut d = c.sub(&b.derivative());
        let mut i = 1u32;
        while b.degree() > 0 {
            let g = b.gcd(&d);
            if g.degree() > 0 {
                out.push((g.clone(), i));
            }
            b = b.exact_div(&g).expect("gcd divides");
            c = d.exact_div(&g).expect("gcd divides");
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Square-free part (monic).
    pub fn squarefree_part(&self) -> Self {
        let f = self.monic();
        f.exact_div(&f.gcd(&f.derivative())).expect("gcd divides")
    }

    /// Whether the polynomial has no repeated factors.
    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    /// Applies `f` to every coefficient.
    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl UniPoly {
    /// Builds a rational polynomial from integer coefficients.
    pub fn from_i64s(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&n| Q::from_integer(BigInt::from(n))).collect())
    }

    /// Builds a rational polynomial from big integer coefficients.
    pub fn from_bigints(c: &[BigInt]) -> Self {
        Poly::new(c.iter().map(|n| Q::from_integer(n.clone())).collect())
    }

    /// The polynomial `x` over Q.
    pub fn x_q() -> Self {
        UniPoly::from_i64s(&[0, 1])
    }

    /// Parses the comma-separated ascending text format (`1,-3,0,1` is `x^3 - 3x + 1`).
    pub fn parse(s: &str) -> Result<Self> {
        let mut v = Vec::new();
        for part in s.split(',') {
            v.push(
                parse_rational(part)
                    .ok_or_else(|| Error::domain(format!("bad coefficient '{}'", part.trim())))?,
            );
        }
        Ok(Poly::new(v))
    }

    /// Comma-separated ascending text format.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs.iter().map(format_rational).collect::<Vec<_>>().join(",")
    }

    /// Human readable form in the variable `var`, highest degree first.
    pub fn pretty(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if Zero::is_zero(c) {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                s.push_str(&format_rational(&a));
            } else if One::is_one(&a) {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{}*{}", format_rational(&a), mono));
            }
        }
        s
    }

    /// Whether all coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Writes `self = content * primitive` with `primitive` an integer polynomial with
    /// coprime coefficients and positive leading coefficient.
    pub fn content_and_primitive(&self) -> (Q, Vec<BigInt>) {
        if self.is_zero() {
            return (Q::zero(), Vec::new());
        }
        let l = self.denominator_lcm();
        let ints: Vec<BigInt> =
            self.coeffs.iter().map(|c| (c * Q::from_integer(l.clone())).to_integer()).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().expect("nonzero").is_negative() {
            g = -g;
        }
        let prim: Vec<BigInt> = ints.iter().map(|c| c / &g).collect();
        (Q::new(g, l), prim)
    }

    /// Integer coefficients, if the polynomial is integral.
    pub fn to_bigints(&self) -> Option<Vec<BigInt>> {
        if !self.is_integral() {
            return None;
        }
        Some(self.coeffs.iter().map(|c| c.to_integer()).collect())
    }

    /// Evaluation at an integer.
    pub fn eval_i64(&self, x: i64) -> Q {
        self.eval(&Q::from_integer(BigInt::from(x)))
    }
}

impl<T: Field> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_i64s(c)
    }

    #[test]
    fn basic_ops() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[-1, 1])), p(&[-1, 1]));
        assert_eq!(a.derivative(), p(&[0, 2]));
        assert_eq!(a.eval_i64(3), Q::from_integer(8.into()));
        assert_eq!(p(&[1, 1]).pow(3), p(&[1, 3, 3, 1]));
        assert_eq!(p(&[0, 0, 1]).compose(&p(&[1, 1])), p(&[1, 2, 1]));
    }

    #[test]
    fn squarefree() {
        // (x-1)^2 (x+2)^3 x
        let f = p(&[-1, 1]).pow(2).mul(&p(&[2, 1]).pow(3)).mul(&p(&[0, 1]));
        let d = f.squarefree_decomposition();
        assert_eq!(d, vec![(p(&[0, 1]), 1), (p(&[-1, 1]), 2), (p(&[2, 1]), 3)]);
    }

    #[test]
    fn text_roundtrip() {
        let f = UniPoly::parse("1,-3,0,1").unwrap();
        assert_eq!(f.to_text(), "1,-3,0,1");
        assert_eq!(f.pretty("x"), "x^3 - 3*x + 1");
        let g = UniPoly::parse("1/2,0,-3/4").unwrap();
        assert_eq!(g.to_text(), "1/2,0,-3/4");
        let (c, prim) = g.content_and_primitive();
        assert_eq!(c, Q::new((-1).into(), 4.into()));
        assert_eq!(prim, vec![BigInt::from(-2), 0.into(), 3.into()]);
    }

    #[test]
    fn xgcd_identity() {
        let a = p(&[1, 0, 1]);
        let b = p(&[-2, 0, 0, 1]);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(g, p(&[1]));
        assert_eq!(s.mul(&a).add(&t.mul(&b)), p(&[1]));
    }
}

impl serde::Serialize for UniPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}
