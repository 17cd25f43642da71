//! Factorization of polynomials over Q by the Zassenhaus method.
//!
//! Pipeline: content removal, square-free decomposition (Yun), and for each square-free part:
//! factorization modulo several small primes, intersection of the attainable factor degrees,
//! quadratic multifactor Hensel lifting past a Mignotte-type coefficient bound, and subset
//! recombination with trial division.

use super::field::Q;
use super::fp::{FpPolyRing, XorShift};
use super::int::next_prime;
use super::poly::UniPoly;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;

/// A factorization `content * prod factor^multiplicity` with monic irreducible factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    /// The rational leading coefficient.
    pub content: Q,
    /// Monic irreducible factors with multiplicities, sorted by degree then coefficients.
    pub factors: Vec<(UniPoly, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self) -> UniPoly {
        let mut acc = UniPoly::constant(self.content.clone());
        for (f, e) in &self.factors {
            acc = acc.mul(&f.pow(*e));
        }
        acc
    }

    /// Degrees of the irreducible factors, repeated by multiplicity, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(f, e)| std::iter::repeat(f.degree()).take(*e as usize))
            .collect();
        v.sort_unstable();
        v
    }

    /// Whether the input was irreducible (one factor of multiplicity one).
    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Tuning knobs for the modular stage; the result never depends on them.
#[derive(Clone, Copy, Debug)]
pub struct FactorOptions {
    /// First prime tried for local factorization.
    pub prime_start: u64,
    /// Number of usable primes whose degree patterns are intersected.
    pub primes_used: usize,
    /// Seed for the equal-degree splitting.
    pub seed: u64,
}

impl Default for FactorOptions {
    fn default() -> Self {
        FactorOptions { prime_start: 3, primes_used: 5, seed: 0x9E37_79B9_7F4A_7C15 }
    }
}

/// Factors a nonzero rational polynomial into monic irreducibles times a rational content.
pub fn factor_poly_q(f: &UniPoly) -> Result<Factorization> {
    factor_poly_q_with(f, FactorOptions::default())
}

/// [`factor_poly_q`] with explicit options for the modular stage.
pub fn factor_poly_q_with(f: &UniPoly, opts: FactorOptions) -> Result<Factorization> {
    let content = f.lc().cloned().ok_or_else(|| Error::domain("cannot factor the zero polynomial"))?;
    let mut factors = Vec::new();
    for (part, mult) in f.squarefree_decomposition() {
        let (_, prim) = part.content_and_primitive();
        for g in factor_squarefree_primitive(&prim, opts) {
            factors.push((UniPoly::from_bigints(&g).monic(), mult));
        }
    }
    factors.sort_by(|a, b| {
        a.0.degree().cmp(&b.0.degree()).then_with(|| cmp_poly(&a.0, &b.0)).then(a.1.cmp(&b.1))
    });
    Ok(Factorization { content, factors })
}

fn cmp_poly(a: &UniPoly, b: &UniPoly) -> std::cmp::Ordering {
    for (x, y) in a.coeffs().iter().zip(b.coeffs()).rev() {
        let c = x.cmp(y);
        if c != std::cmp::Ordering::Equal {
            return c;
        }
    }
    a.coeffs().len().cmp(&b.coeffs().len())
}

/// Whether a rational polynomial of positive degree is irreducible over Q.
pub fn is_irreducible_q(f: &UniPoly) -> Result<bool> {
    if f.degree() == 0 {
        return Ok(false);
    }
    Ok(factor_poly_q(f)?.is_irreducible())
}

/// Rational roots of a polynomial (distinct, ascending).
pub fn rational_roots(f: &UniPoly) -> Result<Vec<Q>> {
    let fac = factor_poly_q(f)?;
    let mut roots: Vec<Q> = fac
        .factors
        .iter()
        .filter(|(g, _)| g.degree() == 1)
        .map(|(g, _)| -g.coeffs()[0].clone())
        .collect();
    roots.sort();
    Ok(roots)
}

// ---------------------------------------------------------------------------------------------
// Integer polynomial helpers (ascending `BigInt` vectors).

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    trim(v)
}

fn zmod(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn zsymmetric(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m >> 1;
    trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn zadd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default()
            })
            .collect(),
    )
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default()
            })
            .collect(),
    )
}

/// Division by a monic polynomial modulo `m`.
fn zdivrem_monic(a: &[BigInt], d: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut r = zmod(a, m);
    if r.len() < d.len() {
        return (Vec::new(), r);
    }
    let dn = d.len();
    let qn = r.len() - dn + 1;
    let mut q = vec![BigInt::zero(); qn];
    for k in (0..qn).rev() {
        let c = r[k + dn - 1].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, dc) in d.iter().enumerate() {
            r[k + j] = (&r[k + j] - &c * dc).mod_floor(m);
        }
        q[k] = c;
    }
    r.truncate(dn - 1);
    (trim(q), zmod(&r, m))
}

/// Exact division over Z; `None` if `d` does not divide `a`.
fn zexact_div(a: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    if a.len() < d.len() {
        return if a.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut r = a.to_vec();
    let dn = d.len();
    let lc = d.last().unwrap();
    let qn = r.len() - dn + 1;
    let mut q = vec![BigInt::zero(); qn];
    for k in (0..qn).rev() {
        let top = &r[k + dn - 1];
        if top.is_zero() {
            continue;
        }
        let (c, rem) = top.div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        for (j, dc) in d.iter().enumerate() {
            r[k + j] -= &c * dc;
        }
        q[k] = c;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(trim(q))
}

fn primitive_part(a: &[BigInt]) -> Vec<BigInt> {
    let mut g = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return Vec::new();
    }
    if a.last().unwrap().is_negative() {
        g = -g;
    }
    a.iter().map(|c| c / &g).collect()
}

fn to_fp(a: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut v: Vec<u64> = a.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn from_fp(a: &[u64]) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

// ---------------------------------------------------------------------------------------------
// Hensel lifting.

/// One quadratic Hensel step: given `f = g h mod m`, `s g + t h = 1 mod m`, `h` monic, returns
/// the analogous data modulo `m2` (with `m | m2 | m^2`).
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    m2: &BigInt,
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
) -> (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>, Vec<BigInt>) {
    let e = zmod(&zsub(f, &zmul(g, h)), m2);
    let (q, r) = zdivrem_monic(&zmul(s, &e), h, m2);
    let g2 = zmod(&zadd(&zadd(g, &zmul(t, &e)), &zmul(&q, g)), m2);
    let h2 = zmod(&zadd(h, &r), m2);
    let b = zmod(&zsub(&zadd(&zmul(s, &g2), &zmul(t, &h2)), &[BigInt::one()]), m2);
    let (c, d) = zdivrem_monic(&zmul(s, &b), &h2, m2);
    let s2 = zmod(&zsub(s, &d), m2);
    let t2 = zmod(&zsub(&zsub(t, &zmul(t, &b)), &zmul(&c, &g2)), m2);
    (g2, h2, s2, t2)
}

/// Lifts `f = lc(f) * prod factors (mod p)` to monic factors modulo `pk = p^k`.
fn lift_tree(f: &[BigInt], factors: &[Vec<u64>], ring: &FpPolyRing, pk: &BigInt) -> Vec<Vec<BigInt>> {
    let p = BigInt::from(ring.p);
    if factors.len() == 1 {
        let lc = f.last().unwrap().mod_floor(pk);
        let inv = mod_inverse(&lc, pk).expect("leading coefficient is a unit");
        return vec![zmod(&f.iter().map(|c| c * &inv).collect::<Vec<_>>(), pk)];
    }
    let mid = factors.len() / 2;
    let a = factors[..mid].iter().fold(vec![1u64], |acc, x| ring.mul(&acc, x));
    let b = factors[mid..].iter().fold(vec![1u64], |acc, x| ring.mul(&acc, x));
    let lc_p = f.last().unwrap().mod_floor(&p).to_u64().unwrap();
    let g0 = ring.scale(&a, lc_p);
    let (one, s0, t0) = ring.xgcd(&g0, &b);
    debug_assert_eq!(one, vec![1]);
    let (mut g, mut h, mut s, mut t) = (from_fp(&g0), from_fp(&b), from_fp(&s0), from_fp(&t0));
    let mut m = p.clone();
    while &m < pk {
        let m2 = (&m * &m).min(pk.clone());
        let fm = zmod(f, &m2);
        let step = hensel_step(&m2, &fm, &g, &h, &s, &t);
        g = step.0;
        h = step.1;
        s = step.2;
        t = step.3;
        m = m2;
    }
    let mut out = lift_tree(&g, &factors[..mid], ring, pk);
    out.extend(lift_tree(&h, &factors[mid..], ring, pk));
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

// ---------------------------------------------------------------------------------------------
// Square-free factorization over Z.

struct LocalInfo {
    p: u64,
    factors: Vec<Vec<u64>>,
}

fn subset_sums(degrees: &[usize], n: usize) -> BTreeSet<usize> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in degrees {
        for s in (d..=n).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    (0..=n).filter(|&s| reach[s]).collect()
}

/// Factors a square-free primitive integer polynomial with positive leading coefficient into
/// primitive irreducible integer polynomials.
fn factor_squarefree_primitive(g: &[BigInt], opts: FactorOptions) -> Vec<Vec<BigInt>> {
    let n = g.len() - 1;
    if n <= 1 {
        return vec![g.to_vec()];
    }
    if g[0].is_zero() {
        // Square-free, so x divides exactly once.
        let rest: Vec<BigInt> = g[1..].to_vec();
        let mut out = vec![vec![BigInt::zero(), BigInt::one()]];
        out.extend(factor_squarefree_primitive(&rest, opts));
        return out;
    }
    let lc = g.last().unwrap().clone();
    let mut rng = XorShift::new(opts.seed);
    let mut locals: Vec<LocalInfo> = Vec::new();
    let mut allowed: BTreeSet<usize> = (0..=n).collect();
    let mut p = opts.prime_start.max(3) - 1;
    let mut attempts = 0;
    while locals.len() < opts.primes_used && attempts < 200 {
        p = next_prime(p);
        attempts += 1;
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let ring = FpPolyRing::new(p);
        let gp = to_fp(g, p);
        if !ring.is_squarefree(&gp) {
            continue;
        }
        let fs = ring.factor_squarefree(&ring.monic(&gp), &mut rng);
        if fs.len() == 1 {
            return vec![g.to_vec()];
        }
        let degs: Vec<usize> = fs.iter().map(|f| f.len() - 1).collect();
        allowed = allowed.intersection(&subset_sums(&degs, n)).cloned().collect();
        locals.push(LocalInfo { p, factors: fs });
        if allowed.len() == 2 {
            return vec![g.to_vec()];
        }
    }
    let best = locals
        .iter()
        .min_by_key(|l| (l.factors.len(), l.p))
        .expect("at least one usable prime");
    let ring = FpPolyRing::new(best.p);

    // Mignotte-type bound: any factor h of g satisfies |h|_inf <= 2^n |g|_2; the lc-scaled
    // candidate is bounded by |lc| times that; doubled for safety, and the modulus must exceed
    // twice the bound to make the symmetric representative exact.
    let norm2_sq: BigInt = g.iter().map(|c| c * c).sum();
    let norm2 = norm2_sq.sqrt() + BigInt::one();
    let bound: BigInt = lc.abs() * (BigInt::one() << n) * norm2 * 2u32;
    let target = &bound * 2u32;
    let pb = BigInt::from(best.p);
    let mut pk = pb.clone();
    while pk <= target {
        pk *= &pb;
    }
    let lifted = lift_tree(g, &best.factors, &ring, &pk);
    recombine(g, lifted, &pk, &allowed)
}

/// Iterates over k-subsets of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn recombine(
    g: &[BigInt],
    mut lifted: Vec<Vec<BigInt>>,
    pk: &BigInt,
    allowed: &BTreeSet<usize>,
) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    let mut rest = g.to_vec();
    let mut s = 1usize;
    while 2 * s <= lifted.len() {
        let r = lifted.len();
        let lc = rest.last().unwrap().clone();
        let target_const = &lc * &rest[0];
        let mut comb: Vec<usize> = (0..s).collect();
        let mut found = None;
        loop {
            let deg: usize = comb.iter().map(|&i| lifted[i].len() - 1).sum();
            if allowed.contains(&deg) {
                // Cheap constant-term test before building the full product.
                let mut c0 = lc.mod_floor(pk);
                for &i in &comb {
                    c0 = (c0 * &lifted[i][0]).mod_floor(pk);
                }
                let half = pk >> 1;
                if c0 > half {
                    c0 -= pk;
                }
                let ok = if c0.is_zero() { false } else { (&target_const % &c0).is_zero() };
                if ok {
                    let mut prod = vec![lc.clone()];
                    for &i in &comb {
                        prod = zmod(&zmul(&prod, &lifted[i]), pk);
                    }
                    let cand = primitive_part(&zsymmetric(&prod, pk));
                    if let Some(q) = zexact_div(&rest, &cand) {
                        found = Some((comb.clone(), cand, q));
                        break;
                    }
                }
            }
            if !next_combination(&mut comb, r) {
                break;
            }
        }
        match found {
            Some((comb, cand, q)) => {
                out.push(cand);
                rest = q;
                let keep: Vec<Vec<BigInt>> = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !comb.contains(i))
                    .map(|(_, f)| f)
                    .collect();
                lifted = keep;
            }
            None => s += 1,
        }
    }
    if rest.len() > 1 {
        out.push(primitive_part(&rest));
    }
    out
}

/// Bit size helper used by diagnostics.
pub fn coefficient_bits(f: &UniPoly) -> u64 {
    let (_, prim) = f.content_and_primitive();
    prim.iter().map(|c| c.magnitude().bits()).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_i64s(c)
    }

    #[test]
    fn spec_examples() {
        let f = factor_poly_q(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]);
        let f = factor_poly_q(&p(&[0, 192, 0, 0, 3])).unwrap();
        assert_eq!(f.content, Q::from_integer(3.into()));
        assert_eq!(
            f.factors,
            vec![(p(&[0, 1]), 1), (p(&[4, 1]), 1), (p(&[16, -4, 1]), 1)]
        );
        assert!(factor_poly_q(&p(&[1, -3, 0, 1])).unwrap().is_irreducible());
        assert!(factor_poly_q(&UniPoly::zero()).is_err());
    }

    #[test]
    fn swinnerton_dyer_like() {
        // x^4 - 10x^2 + 1 is irreducible but splits modulo every prime.
        assert!(factor_poly_q(&p(&[1, 0, -10, 0, 1])).unwrap().is_irreducible());
        // (x^4-10x^2+1)(x^2-2)(x^2-3)
        let f = p(&[1, 0, -10, 0, 1]).mul(&p(&[-2, 0, 1])).mul(&p(&[-3, 0, 1]));
        let fac = factor_poly_q(&f).unwrap();
        assert_eq!(fac.degrees(), vec![2, 2, 4]);
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn multiplicities_and_content() {
        let f = p(&[1, 1]).pow(3).mul(&p(&[2, 0, 1]).pow(2)).scale(&Q::new((-5).into(), 7.into()));
        let fac = factor_poly_q(&f).unwrap();
        assert_eq!(fac.factors, vec![(p(&[1, 1]), 3), (p(&[2, 0, 1]), 2)]);
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn cyclotomic_split() {
        let f = p(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        let fac = factor_poly_q(&f).unwrap();
        assert_eq!(fac.degrees(), vec![1, 1, 2, 2, 2, 4]);
    }
}
