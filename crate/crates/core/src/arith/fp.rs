//! Polynomials over a prime field F_p with `p < 2^32`, represented as ascending `u64` vectors.
//!
//! Used by the factorization pipeline (local factorization before Hensel lifting), by root
//! counting modulo primes and by reductions of number fields modulo primes.

use super::int::{inv_mod, mul_mod};
use num_bigint::BigUint;

/// A small deterministic xorshift generator; factorization must be reproducible.
#[derive(Clone, Debug)]
pub struct XorShift(u64);

impl XorShift {
    /// Creates a generator from a nonzero seed.
    pub fn new(seed: u64) -> Self {
        XorShift(seed.max(1))
    }
    /// Next pseudo-random value.
    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}

/// Arithmetic on polynomials over F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FpPolyRing {
    /// The prime modulus.
    pub p: u64,
}

impl FpPolyRing {
    /// Context for the prime `p`.
    pub fn new(p: u64) -> Self {
        assert!(p >= 2 && p < (1u64 << 32));
        FpPolyRing { p }
    }

    /// Removes trailing zeros.
    pub fn trim(&self, mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    /// Reduces signed integer coefficients modulo p.
    pub fn from_i64s(&self, c: &[i64]) -> Vec<u64> {
        self.trim(c.iter().map(|&a| a.rem_euclid(self.p as i64) as u64).collect())
    }

    /// Degree (`None` for zero).
    pub fn deg(&self, a: &[u64]) -> Option<usize> {
        if a.is_empty() {
            None
        } else {
            Some(a.len() - 1)
        }
    }

    /// Sum.
    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut v = vec![0; n];
        for (i, slot) in v.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0);
            *slot = x % self.p;
        }
        self.trim(v)
    }

    /// Difference.
    pub fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut v = vec![0; n];
        for (i, slot) in v.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0) + self.p - b.get(i).copied().unwrap_or(0);
            *slot = x % self.p;
        }
        self.trim(v)
    }

    /// Product.
    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let p = self.p as u128;
        let mut acc = vec![0u128; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                let s = &mut acc[i + j];
                *s += x as u128 * y as u128;
                if *s >= (1u128 << 100) {
                    *s %= p;
                }
            }
        }
        self.trim(acc.into_iter().map(|s| (s % p) as u64).collect())
    }

    /// Scalar multiple.
    pub fn scale(&self, a: &[u64], c: u64) -> Vec<u64> {
        self.trim(a.iter().map(|&x| mul_mod(x, c, self.p)).collect())
    }

    /// Monic associate.
    pub fn monic(&self, a: &[u64]) -> Vec<u64> {
        match a.last() {
            None => Vec::new(),
            Some(&l) => self.scale(a, inv_mod(l, self.p).expect("unit")),
        }
    }

    /// Division with remainder by a nonzero polynomial.
    pub fn divrem(&self, a: &[u64], d: &[u64]) -> (Vec<u64>, Vec<u64>) {
        assert!(!d.is_empty(), "division by zero polynomial");
        if a.len() < d.len() {
            return (Vec::new(), a.to_vec());
        }
        let p = self.p;
        let inv = inv_mod(*d.last().unwrap(), p).expect("unit leading coefficient");
        let mut r = a.to_vec();
        let dn = d.len();
        let qn = r.len() - dn + 1;
        let mut q = vec![0u64; qn];
        for k in (0..qn).rev() {
            let top = r[k + dn - 1];
            if top == 0 {
                continue;
            }
            let c = mul_mod(top, inv, p);
            q[k] = c;
            for (j, &dc) in d.iter().enumerate() {
                if dc != 0 {
                    r[k + j] = (r[k + j] + p - mul_mod(c, dc, p)) % p;
                }
            }
        }
        r.truncate(dn - 1);
        (self.trim(q), self.trim(r))
    }

    /// Remainder.
    pub fn rem(&self, a: &[u64], d: &[u64]) -> Vec<u64> {
        self.divrem(a, d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// Extended gcd `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn xgcd(&self, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            let t = self.sub(&t0, &self.mul(&q, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        let l = *r0.last().expect("not both zero");
        let inv = inv_mod(l, self.p).expect("unit");
        (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv))
    }

    /// Formal derivative.
    pub fn derivative(&self, a: &[u64]) -> Vec<u64> {
        if a.len() <= 1 {
            return Vec::new();
        }
        self.trim(
            a.iter().enumerate().skip(1).map(|(i, &c)| mul_mod(c, i as u64 % self.p, self.p)).collect(),
        )
    }

    /// Evaluation at a point.
    pub fn eval(&self, a: &[u64], x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in a.iter().rev() {
            acc = (mul_mod(acc, x, self.p) + c) % self.p;
        }
        acc
    }

    /// `base^e mod m` for an arbitrary-size exponent.
    pub fn powmod_big(&self, base: &[u64], e: &BigUint, m: &[u64]) -> Vec<u64> {
        let mut acc = self.rem(&[1], m);
        let b = self.rem(base, m);
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = self.rem(&self.mul(&acc, &acc), m);
            if e.bit(i) {
                acc = self.rem(&self.mul(&acc, &b), m);
            }
        }
        acc
    }

    /// `base^e mod m`.
    pub fn powmod(&self, base: &[u64], e: u64, m: &[u64]) -> Vec<u64> {
        self.powmod_big(base, &BigUint::from(e), m)
    }

    /// Whether `a` is square-free (nonzero, no repeated factor).
    pub fn is_squarefree(&self, a: &[u64]) -> bool {
        let d = self.derivative(a);
        if d.is_empty() {
            return a.len() <= 1;
        }
        self.gcd(a, &d).len() == 1
    }

    /// Distinct-degree factorization of a monic square-free polynomial: pairs `(g, d)` where
    /// `g` is the product of all irreducible factors of degree `d`.
    pub fn ddf(&self, f: &[u64]) -> Vec<(Vec<u64>, usize)> {
        let mut out = Vec::new();
        let mut f = self.monic(f);
        let x = vec![0u64, 1];
        let mut h = self.rem(&x, &f);
        let mut d = 0usize;
        while f.len() > 1 {
            d += 1;
            if 2 * d > f.len() - 1 {
                let deg = f.len() - 1;
                out.push((f.clone(), deg));
                break;
            }
            h = self.powmod(&h, self.p, &f);
            let g = self.gcd(&f, &self.sub(&h, &x));
            if g.len() > 1 {
                f = self.divrem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, d));
            }
        }
        out
    }

    /// Equal-degree splitting (Cantor-Zassenhaus) of a monic square-free polynomial whose
    /// irreducible factors all have degree `d`. Requires odd `p`.
    pub fn edf(&self, f: &[u64], d: usize, rng: &mut XorShift) -> Vec<Vec<u64>> {
        assert!(self.p % 2 == 1, "equal-degree splitting needs odd p");
        let n = f.len() - 1;
        if n == d {
            return vec![self.monic(f)];
        }
        let e = (BigUint::from(self.p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a: Vec<u64> = self.trim((0..n).map(|_| rng.next_u64() % self.p).collect());
            if a.len() <= 1 {
                continue;
            }
            let g = self.gcd(f, &a);
            let g = if g.len() > 1 && g.len() < f.len() {
                g
            } else {
                let b = self.powmod_big(&a, &e, f);
                self.gcd(f, &self.sub(&b, &[1]))
            };
            if g.len() > 1 && g.len() < f.len() {
                let other = self.divrem(f, &g).0;
                let mut out = self.edf(&g, d, rng);
                out.extend(self.edf(&self.monic(&other), d, rng));
                return out;
            }
        }
    }

    /// Monic irreducible factors of a square-free polynomial, sorted by (degree, coefficients).
    pub fn factor_squarefree(&self, f: &[u64], rng: &mut XorShift) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        for (g, d) in self.ddf(f) {
            out.extend(self.edf(&g, d, rng));
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Number of distinct roots in F_p.
    pub fn count_roots(&self, f: &[u64]) -> usize {
        if f.is_empty() {
            return self.p as usize;
        }
        let f = self.monic(f);
        if f.len() == 1 {
            return 0;
        }
        let x = vec![0u64, 1];
        let xp = self.powmod(&x, self.p, &f);
        let g = self.gcd(&f, &self.sub(&xp, &x));
        g.len() - 1
    }

    /// Distinct roots in F_p, sorted.
    pub fn roots(&self, f: &[u64], rng: &mut XorShift) -> Vec<u64> {
        let f = self.monic(f);
        if f.len() <= 1 {
            return Vec::new();
        }
        let x = vec![0u64, 1];
        let xp = self.powmod(&x, self.p, &f);
        let g = self.gcd(&f, &self.sub(&xp, &x));
        if g.len() <= 1 {
            return Vec::new();
        }
        let mut r: Vec<u64> = if self.p == 2 {
            (0..2).filter(|&a| self.eval(&g, a) == 0).collect()
        } else {
            self.edf(&g, 1, rng).into_iter().map(|l| (self.p - l[0]) % self.p).collect()
        };
        r.sort_unstable();
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_mod_p() {
        let r = FpPolyRing::new(7);
        // x^4 - 1 = (x-1)(x+1)(x^2+1) over F_7 (7 = 3 mod 4)
        let f = r.from_i64s(&[-1, 0, 0, 0, 1]);
        let mut rng = XorShift::new(1);
        let fs = r.factor_squarefree(&f, &mut rng);
        assert_eq!(fs, vec![vec![1, 1], vec![6, 1], vec![1, 0, 1]]);
        assert_eq!(r.roots(&f, &mut rng), vec![1, 6]);
        assert_eq!(r.count_roots(&f), 2);
    }

    #[test]
    fn xgcd_mod_p() {
        let r = FpPolyRing::new(11);
        let a = r.from_i64s(&[1, 0, 1]);
        let b = r.from_i64s(&[2, 1]);
        let (g, s, t) = r.xgcd(&a, &b);
        assert_eq!(g, vec![1]);
        assert_eq!(r.add(&r.mul(&s, &a), &r.mul(&t, &b)), vec![1]);
    }
}
