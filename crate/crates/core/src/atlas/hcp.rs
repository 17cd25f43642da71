//! Hilbert class polynomials from complex approximations of singular moduli.
//!
//! For each reduced form `(a, b, c)` the value `j((-b + sqrt(D))/2a)` is computed through
//! `f(tau) = q prod (1 + q^n)^24` and `j = (256 f + 1)^3 / f`, with `1/f` evaluated directly so
//! that small `|q|` costs no relative precision. The product of `t - j_i` is rounded to integers.

use super::fixed::{Cx, Fixed};
use crate::arith::poly::UniPoly;
use crate::error::{Error, Result};
use crate::quadorder::{reduced_forms, Discriminant, QuadForm};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

/// Largest working precision attempted.
pub const MAX_PRECISION_BITS: u64 = 1 << 17;
/// Largest tolerated distance of a computed coefficient from its integer rounding.
pub const MAX_RESIDUAL: f64 = 1e-4;
const GUARD_BITS: u64 = 32;
const CONFIRM_BITS: u64 = 64;

/// `H_D(t)` with its numerical witnesses.
#[derive(Clone, Debug, Serialize)]
pub struct HilbertClassPoly {
    /// The discriminant.
    pub delta: i64,
    /// The monic integer polynomial.
    pub poly: UniPoly,
    /// Approximations `(re, im)` of the roots.
    pub j_values_float: Vec<(f64, f64)>,
    /// Precision (fractional bits) of the accepted evaluation.
    pub precision_bits: u64,
    /// Largest rounding residual over all coefficients.
    pub max_residual: f64,
}

/// Starting precision `32 + ceil(3.1 sqrt|D| sum 1/a)`.
pub fn start_precision(delta: i64) -> u64 {
    let s: f64 = reduced_forms(delta).iter().map(|f| 1.0 / f.a as f64).sum();
    32 + (3.1 * (delta.unsigned_abs() as f64).sqrt() * s).ceil() as u64
}

fn j_value(fx: &Fixed, pi: &BigInt, root_d: &BigInt, f: &QuadForm) -> Cx {
    let a = f.a;
    let mut b = f.b.rem_euclid(2 * a);
    if b > a {
        b -= 2 * a;
    }
    // q = exp(2 pi i tau) = exp(-pi sqrt|D| / a) exp(-i pi b / a)
    let x = fx.mul(pi, root_d) / BigInt::from(a);
    let big = fx.exp(&x);
    let small = fx.div(&fx.one(), &big);
    let theta = -(pi * BigInt::from(b)) / BigInt::from(a);
    let (c, s) = fx.cos_sin(&theta);
    let q = Cx::new(fx.mul(&small, &c), fx.mul(&small, &s));
    let q_inv = Cx::new(fx.mul(&big, &c), -fx.mul(&big, &s));
    let one = Cx::new(fx.one(), BigInt::zero());
    let mut prod = one.clone();
    let mut qn = q.clone();
    let unit = BigInt::from(1);
    while qn.re.abs() > unit || qn.im.abs() > unit {
        prod = fx.cmul(&prod, &one.add(&qn));
        qn = fx.cmul(&qn, &q);
    }
    let p24 = fx.cpow(&prod, 24);
    let f_val = fx.cmul(&q, &p24);
    let g_val = fx.cmul(&q_inv, &fx.cinv(&p24));
    let base = one.add(&Cx::new(f_val.re * 256, f_val.im * 256));
    fx.cmul(&fx.cpow(&base, 3), &g_val)
}

struct Attempt {
    coeffs: Vec<BigInt>,
    residual: f64,
    roots: Vec<(f64, f64)>,
}

fn attempt(forms: &[QuadForm], delta: i64, prec: u64) -> Attempt {
    let fx = Fixed { prec: prec + GUARD_BITS };
    let pi = fx.pi();
    let root_d = fx.sqrt_int(delta.unsigned_abs());
    let js: Vec<Cx> = forms.iter().map(|f| j_value(&fx, &pi, &root_d, f)).collect();
    let mut poly = vec![Cx::new(fx.one(), BigInt::zero())];
    for j in &js {
        let mut next = vec![Cx::new(BigInt::zero(), BigInt::zero()); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].sub(&fx.cmul(c, j));
        }
        poly = next;
    }
    let half = BigInt::from(1) << (fx.prec - 1);
    let mut residual = 0f64;
    let mut coeffs = Vec::with_capacity(poly.len());
    for c in &poly {
        let r = (&c.re + &half) >> fx.prec;
        let diff = &c.re - (&r << fx.prec);
        let res = fx.to_f64(&diff.abs()) + fx.to_f64(&c.im.abs());
        residual = residual.max(res);
        coeffs.push(r);
    }
    let roots = js.iter().map(|j| (fx.to_f64(&j.re), fx.to_f64(&j.im))).collect();
    Attempt { coeffs, residual, roots }
}

/// The Hilbert class polynomial of `d`.
pub fn hilbert_class_poly(d: &Discriminant) -> Result<HilbertClassPoly> {
    let forms = reduced_forms(d.delta);
    let mut prec = start_precision(d.delta);
    while prec <= MAX_PRECISION_BITS {
        let first = attempt(&forms, d.delta, prec);
        if first.residual < MAX_RESIDUAL {
            let second = attempt(&forms, d.delta, prec + CONFIRM_BITS);
            if second.residual < MAX_RESIDUAL && second.coeffs == first.coeffs {
                return Ok(HilbertClassPoly {
                    delta: d.delta,
                    poly: UniPoly::from_bigints(&first.coeffs),
                    j_values_float: first.roots,
                    precision_bits: prec,
                    max_residual: first.residual,
                });
            }
        }
        prec *= 2;
    }
    Err(Error::Resource(format!(
        "class polynomial of {} needs more than {MAX_PRECISION_BITS} bits",
        d.delta
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadorder::decompose;

    fn hcp(delta: i64) -> String {
        hilbert_class_poly(&decompose(delta).unwrap()).unwrap().poly.to_text()
    }

    #[test]
    fn small_discriminants() {
        assert_eq!(hcp(-3), "0,1");
        assert_eq!(hcp(-4), "-1728,1");
        assert_eq!(hcp(-12), "-54000,1");
        assert_eq!(hcp(-15), "-121287375,191025,1");
        assert_eq!(hcp(-23), "12771880859375,-5151296875,3491750,1");
    }

    #[test]
    fn terminates_when_powers_of_q_round_to_minus_one() {
        for delta in [-500i64, -996, -999] {
            let d = decompose(delta).unwrap();
            let p = hilbert_class_poly(&d).unwrap();
            assert_eq!(p.poly.degree() as u64, d.class_number());
        }
    }
}
