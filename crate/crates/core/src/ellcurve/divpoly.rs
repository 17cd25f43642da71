//! Division polynomials in the x-only convention.
//!
//! `f_n = psi_n` for odd `n` and `f_n = psi_n / psi_2` for even `n`, where
//! `psi_2^2 = F(x) = 4x^3 + b2 x^2 + 2 b4 x + b6`. The roots of `f_n` (`n >= 3`) are the
//! abscissae of the points of `E[n]` outside `E[2]`.

use super::curve::Curve;
use crate::arith::field::Field;
use crate::arith::int::{divisors, moebius};
use crate::arith::poly::Poly;
use crate::error::{Error, Result};
use crate::numfield::{NfElement, NfPoly};
use std::collections::HashMap;

/// Memoized division polynomials of one curve.
#[derive(Clone, Debug)]
pub struct DivisionPolys<T: Field> {
    one: T,
    two_division: Poly<T>,
    two_division_sq: Poly<T>,
    cache: HashMap<u64, Poly<T>>,
}

impl<T: Field> DivisionPolys<T> {
    /// Division polynomials for the invariants `[b2, b4, b6, b8]`.
    pub fn new(b: [T; 4]) -> Self {
        let [b2, b4, b6, b8] = b;
        let one = b2.one_like();
        let ff = Poly::new(vec![b6.clone(), b4.scale_i64(2), b2.clone(), one.scale_i64(4)]);
        let f3 = Poly::new(vec![
            b8.clone(),
            b6.scale_i64(3),
            b4.scale_i64(3),
            b2.clone(),
            one.scale_i64(3),
        ]);
        let f4 = Poly::new(vec![
            b4.times(&b8).minus(&b6.times(&b6)),
            b2.times(&b8).minus(&b4.times(&b6)),
            b8.scale_i64(10),
            b6.scale_i64(10),
            b4.scale_i64(5),
            b2.clone(),
            one.scale_i64(2),
        ]);
        let mut cache = HashMap::new();
        cache.insert(0, Poly::zero());
        cache.insert(1, Poly::constant(one.clone()));
        cache.insert(2, Poly::constant(one.clone()));
        cache.insert(3, f3);
        cache.insert(4, f4);
        DivisionPolys { one, two_division_sq: ff.mul(&ff), two_division: ff, cache }
    }

    /// `F(x) = 4x^3 + b2 x^2 + 2 b4 x + b6`.
    pub fn two_division(&self) -> &Poly<T> {
        &self.two_division
    }

    /// `f_n` in the x-only convention.
    pub fn psi(&mut self, n: u64) -> Poly<T> {
        if let Some(p) = self.cache.get(&n) {
            return p.clone();
        }
        let m = n / 2;
        let out = if n % 2 == 1 {
            let a = self.psi(m + 2).mul(&self.psi(m).pow(3));
            let b = self.psi(m - 1).mul(&self.psi(m + 1).pow(3));
            if m % 2 == 0 {
                self.two_division_sq.mul(&a).sub(&b)
            } else {
                a.sub(&self.two_division_sq.mul(&b))
            }
        } else {
            let fm1 = self.psi(m - 1);
            let fp1 = self.psi(m + 1);
            let inner = self.psi(m + 2).mul(&fm1.mul(&fm1)).sub(&self.psi(m - 2).mul(&fp1.mul(&fp1)));
            self.psi(m).mul(&inner)
        };
        self.cache.insert(n, out.clone());
        out
    }

    /// Monic polynomial whose roots are the abscissae of the points of exact order `n`.
    pub fn exact_order(&mut self, n: u64) -> Result<Poly<T>> {
        match n {
            0 => Err(Error::domain("order must be positive")),
            1 => Ok(Poly::constant(self.one.clone())),
            2 => Ok(self.two_division.monic()),
            _ => {
                let mut num = Poly::constant(self.one.clone());
                let mut den = Poly::constant(self.one.clone());
                for d in divisors(n) {
                    match moebius(n / d) {
                        1 => num = num.mul(&self.psi(d)),
                        -1 => den = den.mul(&self.psi(d)),
                        _ => {}
                    }
                }
                Ok(num.exact_div(&den)?.monic())
            }
        }
    }
}

impl Curve {
    /// Division polynomials of this model.
    pub fn division_polys(&self) -> DivisionPolys<NfElement> {
        DivisionPolys::new(self.b_invariants().clone())
    }
}

/// `f_N` of `e` (x-only convention), or with `exact_order` the monic polynomial of abscissae of
/// points of exact order `N`.
pub fn division_polys(e: &Curve, n: u64, exact_order: bool) -> Result<NfPoly> {
    if n == 0 {
        return Err(Error::domain("N must be positive"));
    }
    let mut d = e.division_polys();
    if exact_order {
        d.exact_order(n)
    } else {
        Ok(d.psi(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellcurve::curve_from_j;
    use crate::numfield::NumberField;

    #[test]
    fn small_cases() {
        let q = NumberField::rationals();
        let e = curve_from_j(&NfElement::zero(&q)).unwrap();
        let f3 = division_polys(&e, 3, false).unwrap();
        let texts: Vec<String> = f3.coeffs().iter().map(|c| c.to_text()).collect();
        assert_eq!(texts, ["0", "192", "0", "0", "3"]);
        assert!(division_polys(&e, 1, false).unwrap().coeffs()[0].eq_one());
        let e = curve_from_j(&NfElement::from_i64(&q, 1728)).unwrap();
        assert_eq!(division_polys(&e, 4, true).unwrap().degree(), 6);
        let mut d = e.division_polys();
        for n in 3..=12u64 {
            let deg = d.psi(n).degree();
            let expect = if n % 2 == 1 { (n * n - 1) / 2 } else { (n * n - 4) / 2 };
            assert_eq!(deg as u64, expect);
        }
    }
}
