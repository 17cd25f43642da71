//! Cyclotomic polynomials.

use super::int::{divisors, euler_phi, moebius};
use super::poly::UniPoly;
use crate::error::{Error, Result};
use serde::Serialize;

/// `phi(n)` together with the cyclotomic polynomial `Phi_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclotomicData {
    /// The index n.
    pub n: u64,
    /// Euler's totient of n.
    pub phi_n: u64,
    /// The cyclotomic polynomial, in the comma-separated ascending format.
    #[serde(serialize_with = "ser_poly")]
    pub poly: UniPoly,
}

fn ser_poly<S: serde::Serializer>(p: &UniPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_text())
}

fn x_pow_minus_one(d: u64) -> UniPoly {
    let mut c = vec![0i64; d as usize + 1];
    c[0] = -1;
    c[d as usize] = 1;
    UniPoly::from_i64s(&c)
}

/// `Phi_n` as the Moebius product of the factors `x^d - 1`.
pub fn cyclotomic_poly(n: u64) -> Result<UniPoly> {
    if n == 0 {
        return Err(Error::domain("cyclotomic index must be positive"));
    }
    let mut num = UniPoly::from_i64s(&[1]);
    let mut den = UniPoly::from_i64s(&[1]);
    for d in divisors(n) {
        match moebius(n / d) {
            1 => num = num.mul(&x_pow_minus_one(d)),
            -1 => den = den.mul(&x_pow_minus_one(d)),
            _ => {}
        }
    }
    num.exact_div(&den)
}

/// Cyclotomic data for `n >= 1`.
pub fn cyclotomic_data(n: u64) -> Result<CyclotomicData> {
    let poly = cyclotomic_poly(n)?;
    Ok(CyclotomicData { n, phi_n: euler_phi(n), poly })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let c = cyclotomic_data(1).unwrap();
        assert_eq!((c.phi_n, c.poly.to_text()), (1, "-1,1".to_string()));
        let c = cyclotomic_data(9).unwrap();
        assert_eq!((c.phi_n, c.poly.to_text()), (6, "1,0,0,1,0,0,1".to_string()));
        assert_eq!(cyclotomic_data(11).unwrap().phi_n, 10);
        assert!(cyclotomic_data(0).is_err());
    }
}
