//! Fixed-point real and complex arithmetic on `BigInt` mantissas scaled by `2^prec`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A fixed-point context with `prec` fractional bits.
#[derive(Clone, Copy, Debug)]
pub struct Fixed {
    /// Fractional bits.
    pub prec: u64,
}

/// A complex fixed-point number.
#[derive(Clone, Debug, PartialEq)]
pub struct Cx {
    /// Real part mantissa.
    pub re: BigInt,
    /// Imaginary part mantissa.
    pub im: BigInt,
}

impl Fixed {
    /// One.
    pub fn one(&self) -> BigInt {
        BigInt::one() << self.prec
    }

    /// `a * b`.
    pub fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b) >> self.prec
    }

    /// `a / b`.
    pub fn div(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a << self.prec).div_floor(b)
    }

    /// The integer `n`.
    #[cfg(test)]
    pub fn int(&self, n: i64) -> BigInt {
        BigInt::from(n) << self.prec
    }

    /// `sqrt(n)` for a nonnegative integer.
    pub fn sqrt_int(&self, n: u64) -> BigInt {
        (BigInt::from(n) << (2 * self.prec)).sqrt()
    }

    /// `atan(1/k)` by its alternating series.
    fn atan_inv(&self, k: i64) -> BigInt {
        let k2 = BigInt::from(k * k);
        let mut term = self.one() / BigInt::from(k);
        let mut sum = BigInt::zero();
        let mut n = 1i64;
        while !term.is_zero() {
            let t = &term / BigInt::from(n);
            if (n / 2) % 2 == 0 {
                sum += t;
            } else {
                sum -= t;
            }
            term /= &k2;
            n += 2;
        }
        sum
    }

    /// `pi` by Machin's formula.
    pub fn pi(&self) -> BigInt {
        self.atan_inv(5) * 16 - self.atan_inv(239) * 4
    }

    /// `exp(x)` for `x >= 0`, by halving, Taylor series and repeated squaring.
    pub fn exp(&self, x: &BigInt) -> BigInt {
        debug_assert!(!x.is_negative());
        let mut s = 0u32;
        let mut r = x.clone();
        while r > (self.one() >> 4) {
            r >>= 1;
            s += 1;
        }
        let inner = Fixed { prec: self.prec + s as u64 + 16 };
        let shift = inner.prec - self.prec;
        let r = r << shift;
        let mut sum = inner.one();
        let mut term = inner.one();
        let mut n = 1i64;
        loop {
            term = inner.mul(&term, &r) / BigInt::from(n);
            if term.is_zero() {
                break;
            }
            sum += &term;
            n += 1;
        }
        for _ in 0..s {
            sum = inner.mul(&sum, &sum);
        }
        sum >> shift
    }

    /// `(cos t, sin t)` for `|t|` at most a few units.
    pub fn cos_sin(&self, t: &BigInt) -> (BigInt, BigInt) {
        let inner = Fixed { prec: self.prec + 16 };
        let t = t << 16;
        let t2 = inner.mul(&t, &t);
        let (mut c, mut s) = (inner.one(), t.clone());
        let (mut tc, mut ts) = (inner.one(), t.clone());
        let mut n = 1i64;
        loop {
            tc = -inner.mul(&tc, &t2) / BigInt::from((2 * n - 1) * (2 * n));
            ts = -inner.mul(&ts, &t2) / BigInt::from((2 * n) * (2 * n + 1));
            if tc.is_zero() && ts.is_zero() {
                break;
            }
            c += &tc;
            s += &ts;
            n += 1;
        }
        (c >> 16, s >> 16)
    }

    /// Complex product.
    pub fn cmul(&self, a: &Cx, b: &Cx) -> Cx {
        Cx {
            re: (&a.re * &b.re - &a.im * &b.im) >> self.prec,
            im: (&a.re * &b.im + &a.im * &b.re) >> self.prec,
        }
    }

    /// Complex inverse.
    pub fn cinv(&self, a: &Cx) -> Cx {
        let n = &a.re * &a.re + &a.im * &a.im;
        Cx { re: (&a.re << (2 * self.prec)).div_floor(&n), im: (-(&a.im) << (2 * self.prec)).div_floor(&n) }
    }

    /// Complex power by squaring.
    pub fn cpow(&self, a: &Cx, mut e: u32) -> Cx {
        let mut base = a.clone();
        let mut acc = Cx { re: self.one(), im: BigInt::zero() };
        while e > 0 {
            if e & 1 == 1 {
                acc = self.cmul(&acc, &base);
            }
            base = self.cmul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Converts to `f64` (for reporting).
    pub fn to_f64(&self, a: &BigInt) -> f64 {
        let bits = a.bits();
        if bits > 1000 {
            let sh = bits - 60;
            let top: f64 = (a >> sh).to_string().parse().unwrap_or(0.0);
            return top * 2f64.powi((sh as i64 - self.prec as i64) as i32);
        }
        let v: f64 = a.to_string().parse().unwrap_or(0.0);
        v * 2f64.powi(-(self.prec as i32))
    }
}

impl Cx {
    /// `re + i im`.
    pub fn new(re: BigInt, im: BigInt) -> Self {
        Cx { re, im }
    }

    /// Sum.
    pub fn add(&self, o: &Cx) -> Cx {
        Cx { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    /// Difference.
    pub fn sub(&self, o: &Cx) -> Cx {
        Cx { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        let f = Fixed { prec: 200 };
        assert!((f.to_f64(&f.pi()) - std::f64::consts::PI).abs() < 1e-15);
        let e = f.exp(&f.int(1));
        assert!((f.to_f64(&e) - std::f64::consts::E).abs() < 1e-14);
        let big = f.exp(&f.int(50));
        assert!((f.to_f64(&big) / 50f64.exp() - 1.0).abs() < 1e-12);
        let (c, s) = f.cos_sin(&f.pi());
        assert!((f.to_f64(&c) + 1.0).abs() < 1e-15 && f.to_f64(&s).abs() < 1e-15);
        assert!((f.to_f64(&f.sqrt_int(2)) - 2f64.sqrt()).abs() < 1e-15);
    }
}
