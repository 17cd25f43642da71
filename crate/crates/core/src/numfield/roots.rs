//! Roots of a polynomial inside a number field.
//!
//! Upper bound: for a prime `p` not dividing the discriminant of the defining polynomial nor
//! any coefficient denominator, and a degree-one prime `(p, alpha - r)`, distinct roots in F stay
//! distinct modulo the prime whenever the reduced polynomial is square-free, so the number of
//! roots in F is at most the number of roots of the reduction in F_p.
//!
//! Lower bound: at a totally split prime, the roots modulo each of the `n` degree-one primes are
//! lifted to `p^K` by Newton iteration; every tuple of lifted roots determines power-basis
//! coordinates through the Vandermonde matrix of the lifted conjugates of `alpha`. Rational
//! reconstruction produces candidates, which are verified exactly. Precision doubles until the
//! two bounds meet or until the precision exceeds an a priori height bound on the coordinates
//! of any root, after which the candidates found are all the roots.
//!
//! Height bound: with `D` the lcm of the coefficient denominators of the monic `g`, every root
//! `x` has `D x` integral, so its coordinates have denominators dividing `D disc(f)`. Each
//! conjugate of `x` is bounded by the Cauchy bound of the conjugate polynomial, and Lagrange
//! interpolation at the complex roots of `f` turns these into bounds on the coordinates.

use super::element::{NfElement, NumberField};
use super::factor::factor_over_nf;
use super::NfPoly;
use crate::arith::field::{Field, Q};
use crate::arith::fp::{FpPolyRing, XorShift};
use crate::arith::int::next_prime;
use crate::error::Result;
use num_complex::Complex64;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use std::sync::Arc;

/// Diagnostics from a root search.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RootSearchStats {
    /// Prime used for lifting (0 when not used).
    pub prime: u64,
    /// Upper bound on the number of roots from reductions.
    pub upper_bound: usize,
    /// Bits of the final p-adic precision.
    pub precision_bits: u64,
    /// Whether Trager factorization decided the answer.
    pub used_fallback: bool,
}

const MAX_TUPLES: usize = 200_000;
const MAX_PRECISION_BITS: u64 = 1 << 15;
const PRIMES_FOR_BOUND: usize = 8;
const MAX_PRIMES_SCANNED: usize = 3000;

fn mod_big(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

fn inv_big(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Rational reconstruction of `u mod m` with numerator and denominator below `sqrt(m/2)`.
pub(crate) fn rational_reconstruct(u: &BigInt, m: &BigInt) -> Option<Q> {
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.abs() > bound || t1.is_zero() || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Q::new(r1, t1))
}

/// Coefficients of a polynomial over F as (numerator vectors, denominators).
struct IntegralView {
    nums: Vec<Vec<BigInt>>,
    dens: Vec<BigInt>,
}

impl IntegralView {
    fn new(g: &NfPoly) -> Self {
        IntegralView {
            nums: g.coeffs().iter().map(|c| c.numerators().to_vec()).collect(),
            dens: g.coeffs().iter().map(|c| c.denominator().clone()).collect(),
        }
    }

    /// The image of the polynomial under `alpha -> r` modulo `m` (`None` if a denominator is
    /// not invertible).
    fn specialise(&self, r: &BigInt, m: &BigInt) -> Option<Vec<BigInt>> {
        let mut out = Vec::with_capacity(self.nums.len());
        for (num, den) in self.nums.iter().zip(&self.dens) {
            let mut acc = BigInt::zero();
            for c in num.iter().rev() {
                acc = (acc * r + c).mod_floor(m);
            }
            let inv = inv_big(den, m)?;
            out.push((acc * inv).mod_floor(m));
        }
        Some(out)
    }
}

fn eval_mod(p: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = (acc * x + c).mod_floor(m);
    }
    acc
}

fn deriv(p: &[BigInt]) -> Vec<BigInt> {
    p.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()
}

/// Newton lift of a simple root `r` of `p` modulo `prime` to modulo `m = prime^K`.
fn newton_lift(p: &[BigInt], r: u64, prime: u64, m: &BigInt) -> BigInt {
    let dp = deriv(p);
    let mut x = BigInt::from(r);
    let mut modulus = BigInt::from(prime);
    while &modulus < m {
        modulus = (&modulus * &modulus).min(m.clone());
        let fx = eval_mod(p, &x, &modulus);
        let dfx = eval_mod(&dp, &x, &modulus);
        let inv = inv_big(&dfx, &modulus).expect("simple root");
        x = mod_big(&(x - fx * inv), &modulus);
    }
    x
}

/// Inverse of a square matrix modulo `m` whose determinant is a unit.
fn mat_inverse_mod(a: &[Vec<BigInt>], m: &BigInt) -> Option<Vec<Vec<BigInt>>> {
    let n = a.len();
    let mut aug: Vec<Vec<BigInt>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigInt> = row.iter().map(|x| x.mod_floor(m)).collect();
            r.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let pr = (c..n).find(|&r| inv_big(&aug[r][c], m).is_some())?;
        aug.swap(c, pr);
        let inv = inv_big(&aug[c][c], m)?;
        for x in aug[c].iter_mut() {
            *x = (&*x * &inv).mod_floor(m);
        }
        for r in 0..n {
            if r != c && !aug[r][c].is_zero() {
                let f = aug[r][c].clone();
                let pivot = aug[c].clone();
                for (x, y) in aug[r].iter_mut().zip(&pivot) {
                    *x = (&*x - &f * y).mod_floor(m);
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

struct SplitPrime {
    p: u64,
    alpha_roots: Vec<u64>,
    root_lists: Vec<Vec<u64>>,
}

/// Roots in F of a nonzero polynomial over F, without multiplicity, sorted by their text.
pub fn roots_in_field(g: &NfPoly) -> Result<(Vec<NfElement>, RootSearchStats)> {
    let stats = RootSearchStats::default();
    let field: Arc<NumberField> = match g.lc() {
        None => return Ok((Vec::new(), stats)),
        Some(c) => c.field().clone(),
    };
    if g.degree() == 0 {
        return Ok((Vec::new(), stats));
    }
    let g = g.monic();
    // A square-free reduction certifies that `g` is square-free; the gcd over F is only taken
    // when no such reduction turns up.
    match search(&g, &field, stats.clone())? {
        Some(out) => Ok(out),
        None => {
            let sq = g.exact_div(&g.gcd(&g.derivative()))?;
            match search(&sq, &field, stats)? {
                Some(out) => Ok(out),
                None => Err(crate::error::Error::Internal(
                    "square-free polynomial with no square-free reduction".into(),
                )),
            }
        }
    }
}

const MAX_NONSQUAREFREE: usize = 20;

fn search(
    sq: &NfPoly,
    field: &Arc<NumberField>,
    mut stats: RootSearchStats,
) -> Result<Option<(Vec<NfElement>, RootSearchStats)>> {
    let n = field.degree();
    let d = sq.degree();
    let view = IntegralView::new(sq);
    let fdisc = field.poly_discriminant().clone();
    let den_prod: BigInt = view.dens.iter().fold(BigInt::one(), |acc, x| acc.lcm(x));
    let fints = field.defining_ints().to_vec();

    let mut rng = XorShift::new(0x5DEE_CE66);
    let mut upper = d;
    let mut bound_primes = 0usize;
    let mut split: Option<SplitPrime> = None;
    let mut p = 1008u64;
    let mut scanned = 0usize;
    let mut nonsquarefree = 0usize;
    while scanned < MAX_PRIMES_SCANNED && (bound_primes < PRIMES_FOR_BOUND || split.is_none()) {
        p = next_prime(p);
        scanned += 1;
        let pb = BigInt::from(p);
        if (&fdisc % &pb).is_zero() || (&den_prod % &pb).is_zero() {
            continue;
        }
        let ring = FpPolyRing::new(p);
        let fp: Vec<u64> = fints.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
        let alpha_roots = ring.roots(&fp, &mut rng);
        if alpha_roots.is_empty() {
            continue;
        }
        let mut lists = Vec::with_capacity(alpha_roots.len());
        let mut ok = true;
        for &r in &alpha_roots {
            let spec = view.specialise(&BigInt::from(r), &pb).expect("unit denominators");
            let gp: Vec<u64> = ring.trim(spec.iter().map(|c| c.to_u64().unwrap()).collect());
            if gp.len() != d + 1 || !ring.is_squarefree(&gp) {
                ok = false;
                break;
            }
            lists.push(ring.roots(&gp, &mut rng));
        }
        if !ok {
            nonsquarefree += 1;
            if bound_primes == 0 && nonsquarefree >= MAX_NONSQUAREFREE {
                return Ok(None);
            }
            continue;
        }
        bound_primes += 1;
        for l in &lists {
            upper = upper.min(l.len());
        }
        if upper == 0 {
            stats.upper_bound = 0;
            return Ok(Some((Vec::new(), stats)));
        }
        if alpha_roots.len() == n {
            let tuples: usize = lists.iter().map(|l| l.len().max(1)).product();
            let better = match &split {
                None => true,
                Some(s) => tuples < s.root_lists.iter().map(|l| l.len().max(1)).product(),
            };
            if better {
                split = Some(SplitPrime { p, alpha_roots, root_lists: lists });
            }
        }
    }
    stats.upper_bound = upper;
    let split = match split {
        Some(s) if s.root_lists.iter().map(|l| l.len()).product::<usize>() <= MAX_TUPLES => s,
        _ if bound_primes == 0 => return Ok(None),
        _ => return fallback(sq, field, stats).map(Some),
    };
    stats.prime = split.p;
    let pb = BigInt::from(split.p);
    let height = coordinate_height(sq, field);
    let height_bits = height.as_ref().map(|h| h.bits);
    let mut bits = height_bits.map_or(128, |h| h.max(128));
    let mut found: Vec<NfElement> = Vec::new();
    while bits <= MAX_PRECISION_BITS {
        let k = (bits as f64 / (split.p as f64).log2()).ceil() as u32;
        let m = pb.pow(k);
        stats.precision_bits = m.bits();
        let alphas: Vec<BigInt> =
            split.alpha_roots.iter().map(|&r| newton_lift(&fints, r, split.p, &m)).collect();
        let vander: Vec<Vec<BigInt>> = alphas
            .iter()
            .map(|a| {
                let mut row = Vec::with_capacity(n);
                let mut pw = BigInt::one();
                for _ in 0..n {
                    row.push(pw.clone());
                    pw = (pw * a).mod_floor(&m);
                }
                row
            })
            .collect();
        let vinv = mat_inverse_mod(&vander, &m).expect("distinct conjugates");
        let mut lifted: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for (i, a) in alphas.iter().enumerate() {
            let gi = view.specialise(a, &m).expect("unit denominators");
            lifted.push(split.root_lists[i].iter().map(|&r| newton_lift(&gi, r, split.p, &m)).collect());
        }
        // Enumerate the tuples.
        let mut idx = vec![0usize; n];
        'tuples: loop {
            let t: Vec<&BigInt> = (0..n).map(|i| &lifted[i][idx[i]]).collect();
            let mut coords = Vec::with_capacity(n);
            let mut good = true;
            for row in &vinv {
                let mut c = BigInt::zero();
                for (v, ti) in row.iter().zip(&t) {
                    c += v * *ti;
                }
                let recovered = match &height {
                    Some(h) => h.recover(&c, &m),
                    None => rational_reconstruct(&c.mod_floor(&m), &m),
                };
                match recovered {
                    Some(q) => coords.push(q),
                    None => {
                        good = false;
                        break;
                    }
                }
            }
            if good {
                let cand = NfElement::from_coords(field, &coords)?;
                if !found.contains(&cand) && sq.eval(&cand).eq_zero() {
                    found.push(cand);
                    if found.len() == upper {
                        break 'tuples;
                    }
                }
            }
            // advance the odometer
            let mut i = 0;
            loop {
                if i == n {
                    break 'tuples;
                }
                idx[i] += 1;
                if idx[i] < lifted[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
        if found.len() == upper || height_bits.is_some_and(|h| bits >= h) {
            found.sort_by_key(|e| e.to_text());
            return Ok(Some((found, stats)));
        }
        bits *= 2;
    }
    fallback(sq, field, stats).map(Some)
}

/// Complex roots of a monic integral polynomial by Aberth iteration.
fn complex_roots(f: &[f64]) -> Option<Vec<Complex64>> {
    let n = f.len() - 1;
    let radius = 1.0 + f[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let eval = |z: Complex64| {
        let (mut v, mut dv) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for c in f.iter().rev() {
            dv = dv * z + v;
            v = v * z + c;
        }
        (v, dv)
    };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 0.4 + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (v, dv) = eval(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / dv;
            let s: Complex64 = (0..n).filter(|&k| k != i).map(|k| (z[i] - z[k]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            z[i] -= step;
            moved = moved.max(step.norm() / z[i].norm().max(1.0));
        }
        if moved < 1e-15 {
            return z.iter().all(|w| w.is_finite()).then_some(z);
        }
    }
    None
}

fn big_to_f64(x: &BigInt) -> Option<f64> {
    x.to_f64().filter(|v| v.is_finite() && v.abs() < 1e250)
}

/// A priori shape of the coordinates of any root: `den * coordinate` is an integer of absolute
/// value at most `num`.
struct Height {
    den: BigInt,
    num: BigInt,
    bits: u64,
}

impl Height {
    /// The coordinate congruent to `c` modulo `m`, if it fits the bound.
    fn recover(&self, c: &BigInt, m: &BigInt) -> Option<Q> {
        let mut v = (c * &self.den).mod_floor(m);
        if &v > &(m >> 1u32) {
            v -= m;
        }
        (v.abs() <= self.num).then(|| Q::new(v, self.den.clone()))
    }
}

/// Height bound for the roots of the monic `g`, or `None` when the numeric bound is unavailable.
fn coordinate_height(g: &NfPoly, field: &NumberField) -> Option<Height> {
    let n = field.degree();
    let f: Vec<f64> = field.defining_ints().iter().map(big_to_f64).collect::<Option<_>>()?;
    let alphas = if n == 1 { vec![Complex64::new(-f[0], 0.0)] } else { complex_roots(&f)? };
    let coeffs = &g.coeffs()[..g.degree()];
    let mut den = BigInt::one();
    let mut radii = Vec::with_capacity(n);
    for a in &alphas {
        let mut r = 0.0f64;
        for c in coeffs {
            den = den.lcm(c.denominator());
            let mut v = Complex64::new(0.0, 0.0);
            for x in c.numerators().iter().rev() {
                v = v * a + big_to_f64(x)?;
            }
            r = r.max(v.norm() / big_to_f64(c.denominator())?);
        }
        radii.push(1.0 + r);
    }
    // Lagrange basis: L_i = f(X) / ((X - alpha_i) f'(alpha_i)).
    let mut coord_bound = vec![0.0f64; n];
    for (i, a) in alphas.iter().enumerate() {
        let mut q = vec![Complex64::new(0.0, 0.0); n];
        q[n - 1] = Complex64::new(1.0, 0.0);
        for j in (1..n).rev() {
            q[j - 1] = q[j] * a + f[j];
        }
        let dfa: Complex64 = alphas.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, b)| a - b).product();
        for j in 0..n {
            coord_bound[j] += (q[j] / dfa).norm() * radii[i];
        }
    }
    let c = coord_bound.iter().fold(1.0f64, |m, &x| m.max(2.0 * x + 1.0));
    if !c.is_finite() {
        return None;
    }
    let den = den * field.poly_discriminant().abs();
    let num = &den * BigInt::from_f64(c.ceil())?;
    let bits = num.bits() + 16;
    Some(Height { den, num, bits })
}

fn fallback(
    sq: &NfPoly,
    field: &Arc<NumberField>,
    mut stats: RootSearchStats,
) -> Result<(Vec<NfElement>, RootSearchStats)> {
    stats.used_fallback = true;
    let mut roots = factor_over_nf(sq, field)?.roots();
    roots.sort_by_key(|e| e.to_text());
    Ok((roots, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::{Poly, UniPoly};
    use crate::numfield::factor::nf_poly_from_q;

    #[test]
    fn reconstruction() {
        let m = BigInt::from(1_000_003u64).pow(2);
        let q = Q::new(BigInt::from(-37), BigInt::from(91));
        let u = (q.numer() * inv_big(q.denom(), &m).unwrap()).mod_floor(&m);
        assert_eq!(rational_reconstruct(&u, &m), Some(q));
    }

    #[test]
    fn roots_in_cubic() {
        let f = NumberField::parse("1,-3,0,1").unwrap();
        let g = nf_poly_from_q(&UniPoly::from_i64s(&[1, -3, 0, 1]), &f);
        let (r, stats) = roots_in_field(&g).unwrap();
        assert_eq!(r.len(), 3);
        assert!(!stats.used_fallback);
        for x in &r {
            assert!(g.eval(x).eq_zero());
        }
        let g = nf_poly_from_q(&UniPoly::from_i64s(&[-2, 0, 1]), &f);
        assert!(roots_in_field(&g).unwrap().0.is_empty());
    }

    #[test]
    fn rational_field() {
        let q = NumberField::rationals();
        let g = nf_poly_from_q(&UniPoly::from_i64s(&[-6, 1, 1]).mul(&UniPoly::from_i64s(&[1, 0, 1])), &q);
        let (r, _) = roots_in_field(&g).unwrap();
        let texts: Vec<String> = r.iter().map(|e| e.to_text()).collect();
        assert_eq!(texts, vec!["-3", "2"]);
        let g = nf_poly_from_q(&UniPoly::from_i64s(&[-1, 3]).pow(2).mul(&UniPoly::x_q()), &q);
        let (r, _) = roots_in_field(&g).unwrap();
        assert_eq!(r.len(), 2);
    }

    #[test]
    fn roots_with_denominators() {
        // (x - (1/3 + i/5)) (x - 7) over Q(i)
        let qi = NumberField::parse("1,0,1").unwrap();
        let a = NfElement::parse(&qi, "1/3,1/5").unwrap();
        let b = NfElement::from_i64(&qi, 7);
        let g = Poly::linear_root(&a).mul(&Poly::linear_root(&b)).mul(&nf_poly_from_q(&UniPoly::from_i64s(&[1, 0, 1, 0, 1]), &qi));
        let (r, _) = roots_in_field(&g).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.contains(&a) && r.contains(&b));
    }
}
