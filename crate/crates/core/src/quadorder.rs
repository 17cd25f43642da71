//! Imaginary quadratic discriminants: decomposition, class numbers by reduced forms, genus
//! theory, real ideals, ray class field degrees and Cartan unit group orders.

use crate::arith::int::{factor_u64, gcd_i64, is_prime, kron};
use crate::error::{Error, Result};
use dashmap::DashMap;
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

static CLASS_NUMBER_CACHE: Lazy<DashMap<i64, u64>> = Lazy::new(DashMap::new);

/// An imaginary quadratic discriminant together with its arithmetic invariants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discriminant {
    /// The discriminant itself (negative, congruent to 0 or 1 mod 4).
    pub delta: i64,
    /// Discriminant of the maximal order of the same field.
    pub fundamental: i64,
    /// Conductor: `delta = conductor^2 * fundamental`.
    pub conductor: u64,
    /// Number of distinct odd primes dividing `delta`.
    pub odd_prime_count: u32,
    /// The 2-rank of the class group.
    pub nu: u32,
    /// Number of roots of unity in the field.
    pub unit_count: u32,
}

/// A binary quadratic form `a x^2 + b x y + c y^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadForm {
    /// Coefficient of `x^2`.
    pub a: i64,
    /// Coefficient of `x y`.
    pub b: i64,
    /// Coefficient of `y^2`.
    pub c: i64,
}

impl QuadForm {
    /// Whether the form is ambiguous (`b = 0`, `a = b` or `a = c`).
    pub fn is_ambiguous(&self) -> bool {
        self.b == 0 || self.a == self.b || self.a == self.c
    }
}

/// A primitive proper ideal of an imaginary quadratic order stable under complex conjugation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealIdeal {
    /// Shape 1 has basis `[a, sqrt(D)/2]`, shape 2 has basis `[a, (a + sqrt(D))/2]`.
    pub kind: u8,
    /// Index of the ideal in the order.
    pub a: u64,
    /// Z-basis as text.
    pub basis: [String; 2],
}

/// Where a ray class field degree is measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Over {
    /// Degree over the imaginary quadratic field K.
    K,
    /// Degree over Q.
    Q,
}

impl Discriminant {
    /// Class number, via the memoised reduced-form count.
    pub fn class_number(&self) -> u64 {
        class_number_of(self.delta)
    }

    /// Whether the discriminant is fundamental.
    pub fn is_fundamental(&self) -> bool {
        self.conductor == 1
    }
}

/// Decomposes a negative discriminant as `conductor^2 * fundamental` and computes its
/// genus-theoretic invariants.
pub fn decompose(delta: i64) -> Result<Discriminant> {
    if delta >= 0 || !matches!(delta.rem_euclid(4), 0 | 1) {
        return Err(Error::domain(format!(
            "{delta} is not an imaginary quadratic discriminant"
        )));
    }
    let n = delta.unsigned_abs();
    let fac = factor_u64(n);
    let mut core: i64 = -1;
    let mut square_root: u64 = 1;
    for &(p, e) in &fac {
        if e % 2 == 1 {
            core *= p as i64;
        }
        square_root *= p.pow(e / 2);
    }
    let (fundamental, conductor) = if core.rem_euclid(4) == 1 {
        (core, square_root)
    } else {
        (4 * core, square_root / 2)
    };
    let odd_prime_count = fac.iter().filter(|(p, _)| *p != 2).count() as u32;
    let r = odd_prime_count as i64;
    let nu = if delta.rem_euclid(4) == 1 || delta.rem_euclid(16) == 4 {
        r - 1
    } else if matches!(delta.rem_euclid(16), 8 | 12) || delta.rem_euclid(32) == 16 {
        r
    } else {
        r + 1
    };
    let unit_count = match fundamental {
        -3 => 6,
        -4 => 4,
        _ => 2,
    };
    Ok(Discriminant {
        delta,
        fundamental,
        conductor,
        odd_prime_count,
        nu: nu as u32,
        unit_count,
    })
}

/// Reduced primitive forms of discriminant `delta`, ordered by `(a, b)`.
pub fn reduced_forms(delta: i64) -> Vec<QuadForm> {
    let mut out = Vec::new();
    let n = -delta;
    let mut a = 1i64;
    while 3 * a * a <= n {
        let mut b = -a + 1;
        if (b - delta).rem_euclid(2) != 0 {
            b += 1;
        }
        while b <= a {
            let num = b * b - delta;
            if num % (4 * a) == 0 {
                let c = num / (4 * a);
                let boundary_neg = b < 0 && a == c;
                if c >= a && !boundary_neg && gcd_i64(gcd_i64(a, b), c) == 1 {
                    out.push(QuadForm { a, b, c });
                }
            }
            b += 2;
        }
        a += 1;
    }
    out
}

fn count_reduced_forms(delta: i64) -> u64 {
    let n = -delta;
    let mut count = 0u64;
    let mut a = 1i64;
    while 3 * a * a <= n {
        // b >= 0 branch counts each |b| in (0, a) twice when the form is not on the boundary.
        let mut b = if (a - delta).rem_euclid(2) == 0 { a } else { a - 1 };
        while b >= 0 {
            let num = b * b - delta;
            if num % (4 * a) == 0 {
                let c = num / (4 * a);
                if c >= a && gcd_i64(gcd_i64(a, b), c) == 1 {
                    count += if b == 0 || b == a || a == c { 1 } else { 2 };
                }
            }
            b -= 2;
        }
        a += 1;
    }
    count
}

/// Class number of the order of discriminant `delta` (memoised).
pub fn class_number_of(delta: i64) -> u64 {
    if let Some(h) = CLASS_NUMBER_CACHE.get(&delta) {
        return *h;
    }
    let h = count_reduced_forms(delta);
    CLASS_NUMBER_CACHE.insert(delta, h);
    h
}

/// Class number without touching the memo cache.
pub fn class_number_uncached(delta: i64) -> u64 {
    count_reduced_forms(delta)
}

/// Class number of a validated discriminant.
pub fn class_number(d: &Discriminant) -> u64 {
    class_number_of(d.delta)
}

/// Seeds the memo cache with externally stored values.
pub fn seed_class_number_cache(entries: impl IntoIterator<Item = (i64, u64)>) {
    for (d, h) in entries {
        CLASS_NUMBER_CACHE.insert(d, h);
    }
}

/// Snapshot of the memo cache sorted by `|delta|`.
pub fn class_number_cache_snapshot() -> Vec<(i64, u64)> {
    let mut v: Vec<(i64, u64)> = CLASS_NUMBER_CACHE.iter().map(|e| (*e.key(), *e.value())).collect();
    v.sort_by_key(|(d, _)| d.unsigned_abs());
    v
}

/// Number of ambiguous reduced primitive forms, which equals the order of the 2-torsion of
/// the class group.
pub fn two_torsion_class_count(d: &Discriminant) -> u64 {
    reduced_forms(d.delta).iter().filter(|f| f.is_ambiguous()).count() as u64
}

/// Whether genus theory predicts an odd class number: `delta` in {-4, -8, -16} or
/// `delta = -2^e l^(2a+1)` with `e` in {0, 2} and `l = 3 mod 4` prime.
pub fn odd_class_number_predicted(delta: i64) -> bool {
    if matches!(delta, -4 | -8 | -16) {
        return true;
    }
    let mut n = delta.unsigned_abs();
    let e = n.trailing_zeros();
    if e != 0 && e != 2 {
        return false;
    }
    n >>= e;
    let fac = factor_u64(n);
    fac.len() == 1 && fac[0].0 % 4 == 3 && fac[0].1 % 2 == 1
}

fn sqrt_text(delta: i64) -> String {
    format!("sqrt({delta})")
}

/// All primitive proper real ideals of the order, by the two divisibility shapes.
pub fn real_primitive_ideals(d: &Discriminant) -> Vec<RealIdeal> {
    let delta = d.delta;
    let n = delta.unsigned_abs();
    let mut out = Vec::new();
    for a in crate::arith::int::divisors(n) {
        let ai = a as i64;
        if delta % (4 * ai) == 0 && gcd_i64(ai, (delta / (4 * ai)).abs()) == 1 {
            out.push(RealIdeal {
                kind: 1,
                a,
                basis: [a.to_string(), format!("{}/2", sqrt_text(delta))],
            });
        }
        let num = ai as i128 * ai as i128 - delta as i128;
        if num % (4 * ai as i128) == 0 && gcd_i64(ai, (num / (4 * ai as i128)) as i64) == 1 {
            out.push(RealIdeal {
                kind: 2,
                a,
                basis: [a.to_string(), format!("({}+{})/2", a, sqrt_text(delta))],
            });
        }
    }
    out.sort_by_key(|r| (r.kind, r.a));
    out
}

/// The unit group of the maximal order as coordinate pairs `(x, y)` for `x + y w`, where
/// `w = sqrt(D)/2` if `D = 0 mod 4` and `w = (1 + sqrt(D))/2` otherwise.
fn units(delta_k: i64) -> Vec<(i64, i64)> {
    match delta_k {
        -4 => vec![(1, 0), (-1, 0), (0, 1), (0, -1)],
        // w = (1 + sqrt(-3))/2 satisfies w^2 = w - 1.
        -3 => vec![(1, 0), (-1, 0), (0, 1), (0, -1), (-1, 1), (1, -1)],
        _ => vec![(1, 0), (-1, 0)],
    }
}

/// Index `[U : U_N]` of the units congruent to 1 modulo `N O_K`, by explicit reduction.
pub fn unit_index(delta_k: i64, n: u64) -> u64 {
    let us = units(delta_k);
    let n = n as i64;
    let fixed = us
        .iter()
        .filter(|&&(x, y)| (x - 1).rem_euclid(n) == 0 && y.rem_euclid(n) == 0)
        .count() as u64;
    us.len() as u64 / fixed
}

/// Degree of the ray class field of conductor `N O_K` over K or over Q.
pub fn ray_class_degree(delta_k: i64, n: u64, over: Over) -> Result<u64> {
    if n == 0 {
        return Err(Error::domain("modulus must be positive"));
    }
    let d = decompose(delta_k)?;
    if !d.is_fundamental() {
        return Err(Error::domain(format!("{delta_k} is not a fundamental discriminant")));
    }
    let h = class_number(&d);
    let mut deg = h as u128;
    for (p, e) in factor_u64(n) {
        let p128 = p as u128;
        deg *= p128.pow(2 * (e - 1));
        deg *= match kron(delta_k, p as i64) {
            1 => (p128 - 1) * (p128 - 1),
            0 => p128 * (p128 - 1),
            _ => p128 * p128 - 1,
        };
    }
    let idx = unit_index(delta_k, n) as u128;
    if deg % idx != 0 {
        return Err(Error::Internal("unit index does not divide the ray class count".into()));
    }
    deg /= idx;
    if over == Over::Q {
        deg *= 2;
    }
    u64::try_from(deg).map_err(|_| Error::Resource("ray class degree overflows u64".into()))
}

/// Order of `(O / N O)^x`: `N^2 prod_{p | N} (1 - 1/p)(1 - (D/p)/p)`.
pub fn cartan_unit_order(d: &Discriminant, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::domain("modulus must be positive"));
    }
    let mut acc: u128 = 1;
    for (p, e) in factor_u64(n) {
        let p128 = p as u128;
        acc *= p128.pow(2 * (e - 1)) * (p128 - 1);
        acc *= match kron(d.delta, p as i64) {
            1 => p128 - 1,
            0 => p128,
            _ => p128 + 1,
        };
    }
    u64::try_from(acc).map_err(|_| Error::Resource("cartan order overflows u64".into()))
}

/// The unique prime ideal of index `ell` for a prime `ell` dividing the discriminant.
pub fn special_prime_ideal(d: &Discriminant, ell: u64) -> Result<RealIdeal> {
    if !is_prime(ell) {
        return Err(Error::domain(format!("{ell} is not prime")));
    }
    let delta = d.delta as i128;
    let l = ell as i128;
    if delta % l != 0 {
        return Err(Error::domain(format!("{ell} does not divide {}", d.delta)));
    }
    for b in 0..2 * l {
        if (b - delta).rem_euclid(2) == 0 && (b * b - delta) % (4 * l) == 0 {
            let basis1 = if b == 0 {
                format!("{}/2", sqrt_text(d.delta))
            } else {
                format!("({}+{})/2", b, sqrt_text(d.delta))
            };
            return Ok(RealIdeal {
                kind: if b == 0 { 1 } else { 2 },
                a: ell,
                basis: [ell.to_string(), basis1],
            });
        }
    }
    Err(Error::Internal("no prime ideal above a ramified prime".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decompose_examples() {
        let d = decompose(-4).unwrap();
        assert_eq!((d.fundamental, d.conductor, d.odd_prime_count, d.nu), (-4, 1, 0, 0));
        let d = decompose(-15).unwrap();
        assert_eq!((d.fundamental, d.conductor, d.odd_prime_count, d.nu), (-15, 1, 2, 1));
        let d = decompose(-28).unwrap();
        assert_eq!((d.fundamental, d.conductor), (-7, 2));
        assert_eq!(decompose(-12).unwrap().fundamental, -3);
        assert_eq!(decompose(-16).unwrap().conductor, 2);
        assert_eq!(decompose(-32).unwrap().fundamental, -8);
        assert!(decompose(5).is_err());
        assert!(decompose(-5).is_err());
    }

    #[test]
    fn class_numbers() {
        for (d, h) in [(-3, 1), (-4, 1), (-23, 3), (-47, 5), (-59, 3), (-83, 3), (-15, 2), (-84, 4)] {
            assert_eq!(class_number_of(d), h, "h({d})");
            assert_eq!(reduced_forms(d).len() as u64, h);
        }
    }

    #[test]
    fn ambiguous_counts() {
        assert_eq!(two_torsion_class_count(&decompose(-84).unwrap()), 4);
        assert_eq!(two_torsion_class_count(&decompose(-4).unwrap()), 1);
        assert_eq!(two_torsion_class_count(&decompose(-15).unwrap()), 2);
    }

    #[test]
    fn real_ideal_examples() {
        let r = real_primitive_ideals(&decompose(-4).unwrap());
        assert_eq!(r.iter().map(|x| (x.kind, x.a)).collect::<Vec<_>>(), vec![(1, 1), (2, 2)]);
        let r = real_primitive_ideals(&decompose(-3).unwrap());
        assert_eq!(r.iter().map(|x| (x.kind, x.a)).collect::<Vec<_>>(), vec![(2, 1), (2, 3)]);
        assert_eq!(real_primitive_ideals(&decompose(-15).unwrap()).len(), 4);
    }

    #[test]
    fn ray_class_and_cartan() {
        assert_eq!(ray_class_degree(-7, 7, Over::Q).unwrap(), 42);
        assert_eq!(ray_class_degree(-11, 11, Over::Q).unwrap(), 110);
        assert_eq!(ray_class_degree(-7, 1, Over::K).unwrap(), 1);
        assert!(ray_class_degree(-7, 0, Over::K).is_err());
        assert!(ray_class_degree(-28, 3, Over::K).is_err());
        assert_eq!(unit_index(-4, 2), 2);
        assert_eq!(unit_index(-3, 2), 3);
        assert_eq!(unit_index(-3, 3), 6);
        assert_eq!(cartan_unit_order(&decompose(-4).unwrap(), 5).unwrap(), 16);
        assert_eq!(cartan_unit_order(&decompose(-3).unwrap(), 2).unwrap(), 3);
        assert_eq!(cartan_unit_order(&decompose(-7).unwrap(), 7).unwrap(), 42);
    }

    #[test]
    fn special_prime_examples() {
        let p = special_prime_ideal(&decompose(-7).unwrap(), 7).unwrap();
        assert_eq!(p.basis, ["7".to_string(), "(7+sqrt(-7))/2".to_string()]);
        let p = special_prime_ideal(&decompose(-4).unwrap(), 2).unwrap();
        assert_eq!(p.basis, ["2".to_string(), "(2+sqrt(-4))/2".to_string()]);
        let p = special_prime_ideal(&decompose(-3).unwrap(), 3).unwrap();
        assert_eq!(p.basis, ["3".to_string(), "(3+sqrt(-3))/2".to_string()]);
        assert!(special_prime_ideal(&decompose(-7).unwrap(), 3).is_err());
    }
}
