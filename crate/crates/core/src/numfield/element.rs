//! The field type and its elements.

use crate::arith::factor::is_irreducible_q;
use crate::arith::field::{format_rational, parse_rational, Field, Q};
use crate::arith::poly::UniPoly;
use crate::arith::resultant::{discriminant_q, resultant_q};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use once_cell::sync::OnceCell;
use std::fmt;
use std::sync::Arc;

/// A number field `Q[x]/(f)` with `f` monic, integral and irreducible.
pub struct NumberField {
    poly: UniPoly,
    ints: Vec<BigInt>,
    n: usize,
    // Row i holds x^(n+i) reduced modulo f.
    reduction: Vec<Vec<BigInt>>,
    real_embeddings: OnceCell<usize>,
    discriminant: OnceCell<BigInt>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({})", self.poly.pretty("b"))
    }
}

impl PartialEq for NumberField {
    fn eq(&self, o: &Self) -> bool {
        self.poly == o.poly
    }
}

impl NumberField {
    /// Builds a field from a monic integral polynomial, verifying irreducibility.
    pub fn new(poly: &UniPoly) -> Result<Arc<Self>> {
        if !poly.is_monic() || !poly.is_integral() || poly.degree() == 0 {
            return Err(Error::domain(
                "defining polynomial must be monic with integer coefficients and positive degree",
            ));
        }
        if !is_irreducible_q(poly)? {
            return Err(Error::domain(format!(
                "defining polynomial {} is reducible",
                poly.pretty("x")
            )));
        }
        Ok(Self::new_unchecked(poly))
    }

    /// Builds a field whose defining polynomial is known to be monic, integral and irreducible.
    pub fn new_unchecked(poly: &UniPoly) -> Arc<Self> {
        let ints = poly.to_bigints().expect("integral defining polynomial");
        let n = poly.degree();
        let mut reduction: Vec<Vec<BigInt>> = Vec::with_capacity(n.saturating_sub(1));
        // x^n = -sum_{i<n} f_i x^i
        let mut cur: Vec<BigInt> = ints[..n].iter().map(|c| -c).collect();
        for _ in 0..n.saturating_sub(1) {
            reduction.push(cur.clone());
            // multiply by x
            let top = cur[n - 1].clone();
            let mut next = vec![BigInt::zero(); n];
            for i in (1..n).rev() {
                next[i] = cur[i - 1].clone();
            }
            if !top.is_zero() {
                for i in 0..n {
                    next[i] -= &top * &ints[i];
                }
            }
            cur = next;
        }
        Arc::new(NumberField {
            poly: poly.clone(),
            ints,
            n,
            reduction,
            real_embeddings: OnceCell::new(),
            discriminant: OnceCell::new(),
        })
    }

    /// The rational field `Q = Q[x]/(x)`.
    pub fn rationals() -> Arc<Self> {
        Self::new_unchecked(&UniPoly::from_i64s(&[0, 1]))
    }

    /// Parses a field from the comma-separated coefficient format.
    pub fn parse(s: &str) -> Result<Arc<Self>> {
        Self::new(&UniPoly::parse(s)?)
    }

    /// The defining polynomial.
    pub fn defining_poly(&self) -> &UniPoly {
        &self.poly
    }

    /// Integer coefficients of the defining polynomial.
    pub fn defining_ints(&self) -> &[BigInt] {
        &self.ints
    }

    /// Degree over Q.
    pub fn degree(&self) -> usize {
        self.n
    }

    /// Discriminant of the defining polynomial.
    pub fn poly_discriminant(&self) -> &BigInt {
        self.discriminant.get_or_init(|| {
            if self.n == 1 {
                BigInt::one()
            } else {
                discriminant_q(&self.poly).to_integer()
            }
        })
    }

    pub(crate) fn real_embeddings_cell(&self) -> &OnceCell<usize> {
        &self.real_embeddings
    }

    /// The generator `x mod f`.
    pub fn generator(self: &Arc<Self>) -> NfElement {
        if self.n == 1 {
            // In Q[x]/(x) the generator is zero.
            return NfElement::zero(self);
        }
        let mut num = vec![BigInt::zero(); self.n];
        num[1] = BigInt::one();
        NfElement { field: self.clone(), num, den: BigInt::one() }
    }

    fn reduce_product(&self, prod: &mut Vec<BigInt>) {
        let n = self.n;
        if prod.len() <= n {
            prod.resize(n, BigInt::zero());
            return;
        }
        for k in (n..prod.len()).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            let row = &self.reduction[k - n];
            for (i, r) in row.iter().enumerate() {
                if !r.is_zero() {
                    prod[i] += &c * r;
                }
            }
        }
        prod.truncate(n);
    }
}

/// An element of a number field, stored as integer power-basis coordinates over a positive
/// common denominator in lowest terms.
#[derive(Clone)]
pub struct NfElement {
    field: Arc<NumberField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl fmt::Debug for NfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_text())
    }
}

impl PartialEq for NfElement {
    fn eq(&self, o: &Self) -> bool {
        (Arc::ptr_eq(&self.field, &o.field) || self.field.poly == o.field.poly)
            && self.den == o.den
            && self.num == o.num
    }
}

impl NfElement {
    fn normalized(field: Arc<NumberField>, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if num.iter().all(|c| c.is_zero()) {
            den = BigInt::one();
        } else if !g.is_one() {
            for c in num.iter_mut() {
                *c = &*c / &g;
            }
            den /= g;
        }
        NfElement { field, num, den }
    }

    /// The zero element.
    pub fn zero(field: &Arc<NumberField>) -> Self {
        NfElement { field: field.clone(), num: vec![BigInt::zero(); field.n], den: BigInt::one() }
    }

    /// The one element.
    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_rational(field, &Q::one())
    }

    /// The image of a rational number.
    pub fn from_rational(field: &Arc<NumberField>, q: &Q) -> Self {
        let mut num = vec![BigInt::zero(); field.n];
        num[0] = q.numer().clone();
        Self::normalized(field.clone(), num, q.denom().clone())
    }

    /// The image of an integer.
    pub fn from_i64(field: &Arc<NumberField>, k: i64) -> Self {
        Self::from_rational(field, &Q::from_integer(BigInt::from(k)))
    }

    /// Builds an element from power-basis coordinates (shorter vectors are zero-padded).
    pub fn from_coords(field: &Arc<NumberField>, coords: &[Q]) -> Result<Self> {
        if coords.len() > field.n {
            return Err(Error::domain(format!(
                "element has {} coordinates but the field has degree {}",
                coords.len(),
                field.n
            )));
        }
        let den = coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut num = vec![BigInt::zero(); field.n];
        for (i, c) in coords.iter().enumerate() {
            num[i] = c.numer() * (&den / c.denom());
        }
        Ok(Self::normalized(field.clone(), num, den))
    }

    /// Builds an element as the reduction of an arbitrary rational polynomial in the generator.
    pub fn from_poly(field: &Arc<NumberField>, p: &UniPoly) -> Self {
        let den = p.denominator_lcm();
        let mut num: Vec<BigInt> =
            p.coeffs().iter().map(|c| c.numer() * (&den / c.denom())).collect();
        if field.n == 1 {
            // Q[x]/(x): evaluate at zero.
            let v = num.first().cloned().unwrap_or_default();
            return Self::normalized(field.clone(), vec![v], den);
        }
        field.reduce_product(&mut num);
        Self::normalized(field.clone(), num, den)
    }

    /// Parses the comma-separated power-basis format (`p/q` entries allowed).
    pub fn parse(field: &Arc<NumberField>, s: &str) -> Result<Self> {
        let mut coords = Vec::new();
        for part in s.split(',') {
            coords.push(
                parse_rational(part)
                    .ok_or_else(|| Error::domain(format!("bad coordinate '{}'", part.trim())))?,
            );
        }
        Self::from_coords(field, &coords)
    }

    /// The ambient field.
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    /// Rational power-basis coordinates.
    pub fn coords(&self) -> Vec<Q> {
        self.num.iter().map(|c| Q::new(c.clone(), self.den.clone())).collect()
    }

    /// Integer numerator coordinates.
    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    /// Positive common denominator.
    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// The element as a rational polynomial in the generator.
    pub fn to_poly(&self) -> UniPoly {
        UniPoly::new(self.coords())
    }

    /// Comma-separated power-basis coordinates.
    pub fn to_text(&self) -> String {
        self.coords().iter().map(format_rational).collect::<Vec<_>>().join(",")
    }

    /// Whether the element is rational; returns it if so.
    pub fn as_rational(&self) -> Option<Q> {
        if self.num.iter().skip(1).all(|c| c.is_zero()) {
            Some(Q::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Norm to Q.
    pub fn norm(&self) -> Q {
        if self.field.n == 1 {
            return self.as_rational().unwrap();
        }
        resultant_q(&self.field.poly, &self.to_poly())
    }

    /// Evaluates a rational polynomial at this element.
    pub fn eval_q_poly(&self, p: &UniPoly) -> Self {
        let mut acc = NfElement::zero(&self.field);
        for c in p.coeffs().iter().rev() {
            acc = acc.times(self).plus(&NfElement::from_rational(&self.field, c));
        }
        acc
    }

    /// Maps `self` (an element of `Q[x]/(f)`) to another field by sending the generator to
    /// `image`, which must be a root of `f` there.
    pub fn map_generator(&self, image: &NfElement) -> NfElement {
        image.eval_q_poly(&self.to_poly())
    }
}

impl Field for NfElement {
    fn zero_like(&self) -> Self {
        NfElement::zero(&self.field)
    }
    fn one_like(&self) -> Self {
        NfElement::one(&self.field)
    }
    fn from_i64_like(&self, n: i64) -> Self {
        NfElement::from_i64(&self.field, n)
    }
    fn from_rat_like(&self, q: &Q) -> Self {
        NfElement::from_rational(&self.field, q)
    }
    fn eq_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }
    fn eq_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num.iter().skip(1).all(|c| c.is_zero())
    }
    fn plus(&self, o: &Self) -> Self {
        if self.den == o.den {
            let num = self.num.iter().zip(&o.num).map(|(a, b)| a + b).collect();
            return Self::normalized(self.field.clone(), num, self.den.clone());
        }
        let num = self.num.iter().zip(&o.num).map(|(a, b)| a * &o.den + b * &self.den).collect();
        Self::normalized(self.field.clone(), num, &self.den * &o.den)
    }
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negate())
    }
    fn times(&self, o: &Self) -> Self {
        let n = self.field.n;
        if self.eq_zero() || o.eq_zero() {
            return self.zero_like();
        }
        let mut prod = vec![BigInt::zero(); 2 * n - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        self.field.reduce_product(&mut prod);
        Self::normalized(self.field.clone(), prod, &self.den * &o.den)
    }
    fn negate(&self) -> Self {
        NfElement {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
    fn inverse(&self) -> Option<Self> {
        if self.eq_zero() {
            return None;
        }
        if self.field.n == 1 {
            let q = self.as_rational().unwrap();
            return Some(NfElement::from_rational(&self.field, &q.recip()));
        }
        let (g, s, _) = self.to_poly().xgcd(&self.field.poly);
        debug_assert_eq!(g.degree(), 0);
        Some(NfElement::from_poly(&self.field, &s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let f = NumberField::parse("1,-3,0,1").unwrap();
        let b = f.generator();
        let inv = b.inverse().unwrap();
        assert_eq!(inv.to_text(), "3,0,-1");
        assert_eq!(inv.times(&b), NfElement::one(&f));
        let qi = NumberField::parse("1,0,1").unwrap();
        let i = qi.generator();
        assert_eq!(i.inverse().unwrap(), i.negate());
        assert_eq!(i.times(&i), NfElement::from_i64(&qi, -1));
        assert!(NumberField::parse("-1,0,1").is_err());
        assert_eq!(b.norm(), Q::from_integer((-1).into()));
        let half = NfElement::parse(&qi, "1/2,3/4").unwrap();
        assert_eq!(half.to_text(), "1/2,3/4");
        assert_eq!(half.plus(&half.negate()), NfElement::zero(&qi));
    }
}
