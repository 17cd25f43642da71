//! Strategies, oracles and case bodies shared by the property suites and the acceptance run.

#![allow(dead_code)]

use cmtorsion::arith::factor::factor_poly_q;
use cmtorsion::arith::field::Q;
use cmtorsion::arith::int::{is_prime, kronecker, primes_up_to};
use cmtorsion::arith::poly::UniPoly;
use cmtorsion::ellcurve::{kubert_curve, torsion_subgroup, Curve};
use cmtorsion::numfield::{NfElement, NumberField};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

/// Integer coefficient vectors of degree 1 to `max_deg`, ascending, nonzero leading term.
pub fn poly_strategy(max_deg: usize) -> impl Strategy<Value = Vec<i64>> {
    (1..=max_deg).prop_flat_map(|d| {
        (prop::collection::vec(-9i64..=9, d), prop_oneof![Just(1i64), Just(-1), 2i64..=4]).prop_map(|(mut low, lead)| {
            low.push(lead);
            low
        })
    })
}

/// Lists of one to three small polynomials.
pub fn product_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(poly_strategy(3), 1..=3)
}

/// Brute-force rational root test over candidates `p/q` with `p | a0` and `q | lead`.
pub fn has_rational_root(c: &[i64]) -> bool {
    let a0 = c[0];
    let lead = *c.last().unwrap();
    if a0 == 0 {
        return true;
    }
    let deg = c.len() - 1;
    let divs = |n: i64| (1..=n.abs()).filter(move |d| n % d == 0);
    for p in divs(a0) {
        for q in divs(lead) {
            for s in [1i64, -1] {
                // q^deg f(s p / q) as an exact integer.
                let acc: i128 = c
                    .iter()
                    .enumerate()
                    .map(|(i, &ci)| ci as i128 * ((s * p) as i128).pow(i as u32) * (q as i128).pow((deg - i) as u32))
                    .sum();
                if acc == 0 {
                    return true;
                }
            }
        }
    }
    false
}

/// Factoring the product of `parts` returns the product, with irreducible small factors.
pub fn factor_round_trip_case(parts: &[Vec<i64>]) -> Result<(), TestCaseError> {
    let f = parts.iter().fold(UniPoly::from_i64s(&[1]), |acc, c| acc.mul(&UniPoly::from_i64s(c)));
    let fac = factor_poly_q(&f).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(fac.expand(), f.clone());
    let total: usize = fac.factors.iter().map(|(g, e)| g.degree() * *e as usize).sum();
    prop_assert_eq!(total, f.degree());
    for (g, _) in &fac.factors {
        if (2..=3).contains(&g.degree()) {
            let (_, prim) = g.content_and_primitive();
            let ints: Vec<i64> = prim.iter().map(|b| i64::try_from(b).unwrap()).collect();
            prop_assert!(!has_rational_root(&ints), "reducible factor {:?}", ints);
        }
    }
    Ok(())
}

/// Modular exponentiation oracle.
pub fn pow_mod(a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u128;
    let mut b = (a % m) as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m as u128;
        }
        b = b * b % m as u128;
        e >>= 1;
    }
    r as u64
}

/// Pairs `(a, p)` with `p` an odd prime below 20000.
pub fn euler_strategy() -> impl Strategy<Value = (i64, u64)> {
    (-100_000i64..100_000, prop::sample::select(primes_up_to(20_000)[1..].to_vec()))
}

/// The Kronecker symbol at an odd prime equals Euler's criterion.
pub fn kronecker_euler_case(a: i64, p: u64) -> Result<(), TestCaseError> {
    let e = pow_mod(a.rem_euclid(p as i64) as u64, (p - 1) / 2, p);
    prop_assert!(e == 0 || e == 1 || e == p - 1);
    let expected = if e == 0 { 0 } else if e == 1 { 1 } else { -1 };
    prop_assert_eq!(kronecker(a, p as i64).unwrap(), expected);
    Ok(())
}

/// Number of points of `y^2 = x^3 + a x + b` over `F_p`, including infinity.
pub fn count_points(a: i64, b: i64, p: u64) -> u64 {
    let p = p as i64;
    let mut n = 1u64;
    for x in 0..p {
        let rhs = ((x * x % p * x + a * x + b) % p + p) % p;
        n += if rhs == 0 {
            1
        } else if pow_mod(rhs as u64, (p as u64 - 1) / 2, p as u64) == 1 {
            2
        } else {
            0
        };
    }
    n
}

/// `y^2 = x^3 + a x + b` over Q, or `None` when singular.
pub fn short_curve(a: i64, b: i64) -> Option<Curve> {
    if 4 * a.pow(3) + 27 * b * b == 0 {
        return None;
    }
    let q = NumberField::rationals();
    let z = Q::from_integer(BigInt::from(0));
    Curve::from_rationals(&q, [z.clone(), z.clone(), z, Q::from_integer(a.into()), Q::from_integer(b.into())]).ok()
}

/// Coefficient pairs for short curves over Q.
pub fn short_strategy() -> impl Strategy<Value = (i64, i64)> {
    (-30i64..30, -30i64..30)
}

/// The torsion order divides `#E(F_p)` at every good prime `5 <= p < 200`.
pub fn torsion_gcd_case(a: i64, b: i64) -> Result<(), TestCaseError> {
    let Some(e) = short_curve(a, b) else { return Ok(()) };
    let t = torsion_subgroup(&e).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(t.n % t.m, 0);
    let disc = (4 * a.pow(3) + 27 * b * b).abs();
    let mut checked = 0;
    for p in (5u64..200).filter(|&p| is_prime(p) && disc % p as i64 != 0) {
        let np = count_points(a, b, p);
        prop_assert_eq!(np % (t.m * t.n), 0, "p = {}, #E = {}, torsion {}x{}", p, np, t.m, t.n);
        checked += 1;
    }
    prop_assert!(checked > 10);
    // Over Q the group is one of Mazur's fifteen.
    prop_assert!(t.m <= 2 && (t.n <= 10 || t.n == 12));
    Ok(())
}

/// Kubert parameters over a real quadratic field `Q(sqrt d)`.
pub fn real_kubert_strategy() -> impl Strategy<Value = (i64, i64, i64, i64)> {
    (-20i64..20, -3i64..=3, -6i64..6, prop::sample::select(vec![2i64, 3, 5, 6, 7]))
}

/// Torsion over a real quadratic field has the shape `Z/n` or `Z/2 x Z/2n`.
pub fn real_shape_case(b0: i64, b1: i64, c0: i64, d: i64) -> Result<(), TestCaseError> {
    let f = NumberField::parse(&format!("{},0,1", -d)).unwrap();
    let b = NfElement::parse(&f, &format!("{}/4,{}", b0, b1)).unwrap();
    let c = NfElement::parse(&f, &format!("{}/3", c0)).unwrap();
    let Ok(e) = kubert_curve(&b, &c) else { return Ok(()) };
    let t = torsion_subgroup(&e).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(t.has_real_shape(), "shape {}x{}", t.m, t.n);
    prop_assert!(t.m <= 2);
    prop_assert_eq!(t.bound.order % (t.m * t.n), 0);
    Ok(())
}

/// Class number by direct enumeration of reduced primitive forms `(a, b, c)` with
/// `|b| <= a <= c`, `b >= 0` whenever `|b| = a` or `a = c`.
pub fn class_number_oracle(delta: i64) -> u64 {
    let n = -delta;
    let mut h = 0;
    for a in 1..=n {
        if 3 * a * a > n {
            break;
        }
        for b in -a + 1..=a {
            if (b * b + n) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b + n) / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if gcd(gcd(a, b.abs()), c) == 1 {
                h += 1;
            }
        }
    }
    h
}

/// Euclid's algorithm.
pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}
