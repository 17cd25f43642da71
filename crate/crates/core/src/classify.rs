//! Degree constraints on torsion of CM elliptic curves and the classification of torsion in
//! odd, prime and prime-squared degree.
//!
//! In odd degree the torsion subgroup is trivial, `Z/2`, `Z/4`, `Z/2 x Z/2`, `Z/l^n` with
//! `l = 3 mod 8`, or `Z/2l^n` with `l = 3 mod 4`, and in the last two cases the CM field is
//! `Q(sqrt(-l))`. An odd-degree field cannot contain the CM field, so the class number of the
//! CM order is odd and the discriminant has the shape `-2^e l^(2a+1)` with `e` in `{0, 2}`.
//!
//! A [`DegreeReport`] separates groups with an explicit construction in a degree dividing `d`
//! (`proven`) from groups that merely pass the necessary divisibility filters (`candidates`).

use crate::arith::int::{divisors, euler_phi, factor_u64, gcd_i64, is_prime, kron, isqrt};
use crate::atlas::TABLE1;
use crate::ellcurve::shape_text;
use crate::error::{Error, Result};
use crate::quadorder::{class_number_of, Discriminant};
use serde::Serialize;
use std::collections::BTreeMap;

/// The fundamental discriminants `-l` of class number one with `l` prime, `l = 3 mod 4`.
const CLASS_NUMBER_ONE_PRIMES: [u64; 6] = [7, 11, 19, 43, 67, 163];

/// Which discriminants a torsion class allows.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CmConstraint {
    /// No restriction is recorded.
    Unconstrained,
    /// An explicit finite set of discriminants.
    Discriminants {
        /// The allowed discriminants, sorted by absolute value.
        values: Vec<i64>,
    },
    /// The family `-2^e l^(2a+1)`, `a >= 0`, with `e` in `epsilons`.
    Family {
        /// The prime `l`.
        ell: u64,
        /// Allowed exponents of 2.
        epsilons: Vec<u32>,
    },
}

/// A torsion group `Z/m x Z/n` (`m | n`) with its CM constraint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionClass {
    /// Text form such as `Z/9` or `Z/2 x Z/2`.
    pub shape: String,
    /// Invariants `(m, n)`.
    pub invariants: (u64, u64),
    /// Group order.
    pub order: u64,
    /// Whether the group occurs for CM curves over Q.
    pub olson: bool,
    /// Allowed CM discriminants.
    pub cm: CmConstraint,
    /// Least odd degree of a known construction, when one applies.
    pub minimal_degree: Option<u64>,
}

impl TorsionClass {
    fn new(m: u64, n: u64, cm: CmConstraint, minimal_degree: Option<u64>) -> Self {
        TorsionClass {
            shape: shape_text(m, n),
            invariants: (m, n),
            order: m * n,
            olson: is_olson(m, n),
            cm,
            minimal_degree,
        }
    }

    fn sort_key(&self) -> (u64, u64) {
        (self.order, self.invariants.0)
    }
}

/// Whether `Z/m x Z/n` is one of the six groups occurring for CM curves over Q.
pub fn is_olson(m: u64, n: u64) -> bool {
    matches!((m, n), (1, 1) | (1, 2) | (1, 3) | (1, 4) | (1, 6) | (2, 2))
}

/// How a degree is interpreted by [`classify_degree`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeMode {
    /// Any odd degree.
    Odd,
    /// A prime degree.
    Prime,
    /// The square of a prime.
    PrimeSquared,
}

/// Torsion groups in a given degree.
#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    /// The degree.
    pub degree: u64,
    /// How the degree was interpreted.
    pub mode: DegreeMode,
    /// Groups with a construction in a degree dividing `degree`.
    pub proven: Vec<TorsionClass>,
    /// Groups passing the necessary filters; contains `proven`.
    pub candidates: Vec<TorsionClass>,
    /// Proven groups that occur in no proper divisor of `degree`.
    pub new_groups: Vec<String>,
}

fn sorted(mut v: Vec<TorsionClass>) -> Vec<TorsionClass> {
    v.sort_by_key(|t| t.sort_key());
    v
}

/// The six groups occurring for CM curves over Q, with their odd-degree CM constraints.
pub fn olson_groups() -> Vec<TorsionClass> {
    let three = || CmConstraint::Family { ell: 3, epsilons: vec![0, 2] };
    vec![
        TorsionClass::new(1, 1, CmConstraint::Unconstrained, Some(1)),
        TorsionClass::new(1, 2, CmConstraint::Unconstrained, Some(1)),
        TorsionClass::new(1, 3, three(), Some(1)),
        TorsionClass::new(1, 4, CmConstraint::Discriminants { values: vec![-4, -16] }, Some(1)),
        TorsionClass::new(1, 6, three(), Some(1)),
        TorsionClass::new(2, 2, CmConstraint::Discriminants { values: vec![-4] }, Some(1)),
    ]
}

/// The integer `(phi(N)/2) h(D) / 2^nu` that divides `[F:Q]` whenever a real field F carries an
/// `O(D)`-CM curve with an F-rational point of order `N >= 3`. When `h(D)` is odd this is
/// `phi(N) h(D) / 2`.
pub fn real_cyclotomy_divisor(d: &Discriminant, n: u64) -> Result<u64> {
    if n < 3 {
        return Err(Error::domain(format!(
            "real cyclotomy needs a point of order N >= 3 (got N = {n}); the statement is vacuous at N = 2"
        )));
    }
    let h = class_number_of(d.delta);
    let two_nu = 1u64 << d.nu;
    if h % two_nu != 0 {
        return Err(Error::Internal(format!("2^nu = {two_nu} does not divide h = {h} for {}", d.delta)));
    }
    Ok(euler_phi(n) / 2 * (h / two_nu))
}

/// The integer dividing `[FK:Q]` when an `O(D)`-CM curve over F has an F-rational point of odd
/// prime order `l`, where K is the CM field.
pub fn spy_divisor(d: &Discriminant, ell: u64) -> Result<u64> {
    if ell == 2 || !is_prime(ell) {
        return Err(Error::domain(format!("the bound needs an odd prime, got {ell}")));
    }
    let hk = class_number_of(d.fundamental);
    let w = d.unit_count as u64;
    let l = ell as i64;
    let num = match kron(d.delta, l) {
        -1 => 2 * (ell * ell - 1) * hk,
        1 => 2 * (ell - 1) * hk,
        _ => match kron(d.fundamental, l) {
            0 => return Ok((ell - 1) * hk),
            1 => 2 * (ell - 1) * (ell - 1) * hk,
            _ => 2 * (ell * ell - 1) * hk,
        },
    };
    if num % w != 0 {
        return Err(Error::Internal(format!("w = {w} does not divide {num}")));
    }
    Ok(num / w)
}

/// Which hypothesis licenses the square-root bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SqrtSpyHypothesis {
    /// `gcd(D, N) = 1` and the CM field is not inside F.
    CoprimeToDiscriminant,
    /// The caller certified full `N`-torsion over FK.
    FullTorsionCertified,
}

/// Outcome of the square-root bound `phi(N) <= sqrt([F:Q] w(K) / h(K))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SqrtSpyCheck {
    /// Whether `phi(N)^2 <= degree * w(K) / h(K)`.
    pub holds: bool,
    /// `phi(N)`.
    pub phi: u64,
    /// The largest admissible `phi(N)`, `floor(sqrt(degree * w(K) / h(K)))`.
    pub phi_bound: u64,
    /// The hypothesis invoked.
    pub hypothesis: SqrtSpyHypothesis,
}

/// Checks the square-root bound for a point of order `n` in the given degree.
pub fn sqrt_spy_check(degree: u64, d: &Discriminant, n: u64, full_torsion_certified: bool) -> Result<SqrtSpyCheck> {
    if n < 3 {
        return Err(Error::domain(format!("the square-root bound needs N >= 3, got {n}")));
    }
    let hypothesis = if gcd_i64(d.delta, n as i64) == 1 {
        SqrtSpyHypothesis::CoprimeToDiscriminant
    } else if full_torsion_certified {
        SqrtSpyHypothesis::FullTorsionCertified
    } else {
        return Err(Error::domain(format!(
            "gcd({}, {n}) > 1: the bound needs full {n}-torsion over FK to be certified",
            d.delta
        )));
    };
    let hk = class_number_of(d.fundamental);
    let w = d.unit_count as u64;
    let phi = euler_phi(n);
    // phi^2 <= degree * w / hk  <=>  phi^2 * hk <= degree * w.
    let holds = (phi as u128) * (phi as u128) * (hk as u128) <= (degree as u128) * (w as u128);
    let phi_bound = isqrt(degree * w / hk);
    Ok(SqrtSpyCheck { holds, phi, phi_bound, hypothesis })
}

/// Class number of `-2^e l^(2a+1)` (`e` in {0, 2}, `l = 3 mod 4` prime) from `h(-l)` and the
/// conductor formula.
fn family_class_number(ell: u64, a: u32, eps: u32) -> u64 {
    let dk = -(ell as i64);
    let mut h = class_number_of(dk);
    let mut f = 1u64;
    if eps == 2 {
        f *= 2;
        h *= (2 - kron(dk, 2)) as u64;
    }
    if a > 0 {
        f *= ell.pow(a);
        h *= ell.pow(a);
    }
    let unit_index = if f > 1 && ell == 3 { 3 } else { 1 };
    h / unit_index
}

fn family_delta(ell: u64, a: u32, eps: u32) -> i64 {
    -((ell.pow(2 * a + 1) << eps) as i64)
}

/// The primes `l = 3 mod 4` with `(l - 1)/2 | d`.
fn primes_for_degree(d: u64) -> Vec<u64> {
    divisors(d).into_iter().map(|k| 2 * k + 1).filter(|&l| l % 4 == 3 && is_prime(l)).collect()
}

/// Largest `a` worth trying: `h(-l^(2a+1)) >= l^a / 3`, which must stay at most `d`.
fn max_a(ell: u64, d: u64) -> u32 {
    let mut a = 0;
    while ell.saturating_pow(a + 1) <= 3 * d {
        a += 1;
    }
    a
}

/// Whether `Z/2` can be F-rational for an `O(D)`-CM curve over a field of degree `d` whose CM
/// field is `Q(sqrt(-l))`. For `D = 5 mod 8` and `l > 3` the 2-division cubic is irreducible
/// over `Q(j)`, so `3 h(D)` must divide `d`.
fn two_torsion_possible(delta: i64, ell: u64, h: u64, d: u64) -> bool {
    ell == 3 || delta.rem_euclid(8) != 5 || d % (3 * h) == 0
}

/// The odd-degree classification for an odd `d >= 1`.
pub fn odd_degree_candidates(d: u64) -> Result<DegreeReport> {
    if d == 0 || d % 2 == 0 {
        return Err(Error::domain(format!("odd degree classification needs an odd degree, got {d}")));
    }
    // (m, n) -> (minimal proven degree, proven deltas, candidate deltas)
    let mut groups: BTreeMap<(u64, u64), (Option<u64>, Vec<i64>, Vec<i64>)> = BTreeMap::new();
    for ell in primes_for_degree(d) {
        let half = (ell - 1) / 2;
        let mut n = 1u32;
        while d % (ell.pow(n - 1) * half) == 0 {
            let base = ell.pow(n - 1) * half;
            let pn = ell.pow(n);
            for a in 0..=max_a(ell, d) {
                for eps in [0u32, 2] {
                    let h = family_class_number(ell, a, eps);
                    let delta = family_delta(ell, a, eps);
                    let rc = base * h;
                    // Z/l^n needs l = 3 mod 8.
                    if ell % 8 == 3 {
                        let e = groups.entry((1, pn)).or_default();
                        if d % rc == 0 {
                            e.2.push(delta);
                        }
                        if eps == 0 {
                            e.0 = Some(e.0.map_or(rc, |m: u64| m.min(rc)));
                            if d % rc == 0 {
                                e.1.push(delta);
                            }
                        }
                    }
                    // Z/2l^n.
                    let e = groups.entry((1, 2 * pn)).or_default();
                    if d % rc == 0 && two_torsion_possible(delta, ell, h, d) {
                        e.2.push(delta);
                    }
                    if eps == 0 {
                        let m = if ell % 8 == 3 { 3 * rc } else { rc };
                        e.0 = Some(e.0.map_or(m, |x: u64| x.min(m)));
                        if d % m == 0 {
                            e.1.push(delta);
                        }
                    }
                }
            }
            n += 1;
        }
    }
    // Table 1 rows in degrees dividing d are constructions too.
    for row in TABLE1.iter() {
        let deg = row.field.split(',').count() as u64 - 1;
        if deg % 2 == 1 && d % deg == 0 && !is_olson(row.torsion.0, row.torsion.1) {
            let e = groups.entry(row.torsion).or_default();
            e.0 = Some(e.0.map_or(deg, |x: u64| x.min(deg)));
            for v in [&mut e.1, &mut e.2] {
                if !v.contains(&row.delta) {
                    v.push(row.delta);
                }
            }
        }
    }
    let olson = olson_groups();
    let mut proven = olson.clone();
    let mut candidates = olson;
    let mut new_groups = Vec::new();
    for ((m, n), (min_deg, mut pd, mut cd)) in groups {
        if is_olson(m, n) {
            continue;
        }
        for v in [&mut pd, &mut cd] {
            v.sort_by_key(|x| x.unsigned_abs());
            v.dedup();
        }
        if !pd.is_empty() {
            for x in &pd {
                if !cd.contains(x) {
                    cd.push(*x);
                }
            }
            cd.sort_by_key(|x| x.unsigned_abs());
            proven.push(TorsionClass::new(m, n, CmConstraint::Discriminants { values: pd }, min_deg));
            if min_deg == Some(d) {
                new_groups.push(shape_text(m, n));
            }
        }
        if !cd.is_empty() {
            candidates.push(TorsionClass::new(m, n, CmConstraint::Discriminants { values: cd }, min_deg));
        }
    }
    Ok(DegreeReport { degree: d, mode: DegreeMode::Odd, proven: sorted(proven), candidates: sorted(candidates), new_groups })
}

/// One entry of the prime-degree table: field, discriminant and torsion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeDegreeEntry {
    /// Defining polynomial of the field, ascending coefficients.
    pub field: String,
    /// Human-readable field name.
    pub field_name: String,
    /// CM discriminant.
    pub delta: i64,
    /// The torsion group.
    pub torsion: TorsionClass,
}

/// The non-Olson torsion in prime degree `p`: quadratic rows for `p = 2`, cubic rows for
/// `p = 3`, the quintic row for `p = 5`, nothing beyond.
pub fn prime_degree_table(p: u64) -> Result<Vec<PrimeDegreeEntry>> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    Ok(TABLE1
        .iter()
        .filter(|r| r.field.split(',').count() as u64 - 1 == p)
        .map(|r| PrimeDegreeEntry {
            field: r.field.to_string(),
            field_name: r.field_name.to_string(),
            delta: r.delta,
            torsion: TorsionClass::new(
                r.torsion.0,
                r.torsion.1,
                CmConstraint::Discriminants { values: vec![r.delta] },
                Some(p),
            ),
        })
        .collect())
}

fn family_class(n: u64) -> TorsionClass {
    let odd = n >> n.trailing_zeros();
    let ell = factor_u64(odd).first().map_or(1, |f| f.0);
    TorsionClass::new(1, n, CmConstraint::Family { ell, epsilons: vec![0, 2] }, None)
}

/// Primes `l = 3 mod 4`, `l > 3`, whose point of order `l` survives the real cyclotomy bound
/// `(l - 1)/2 * h(-l) | p^2` for a prime `p >= 7`. The class number is only computed once
/// `h = p <= sqrt(l) log(l)` leaves it possible.
fn prime_squared_exceptions(p: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for ell in [2 * p + 1, 2 * p * p + 1] {
        if ell % 4 != 3 || !is_prime(ell) {
            continue;
        }
        let cofactor = p * p / ((ell - 1) / 2);
        if CLASS_NUMBER_ONE_PRIMES.contains(&ell) {
            out.push(ell);
            continue;
        }
        if cofactor == p && (p as f64) <= (ell as f64).sqrt() * (ell as f64).ln() && class_number_of(-(ell as i64)) == p {
            out.push(ell);
        }
    }
    out
}

/// The non-Olson torsion groups of CM curves over fields of degree `p^2`.
pub fn prime_squared_groups(p: u64) -> Result<Vec<TorsionClass>> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    let unc = |m, n| TorsionClass::new(m, n, CmConstraint::Unconstrained, None);
    Ok(match p {
        2 => sorted(
            [5, 7, 8, 10, 12, 13, 21]
                .iter()
                .map(|&n| unc(1, n))
                .chain([4, 6, 8, 10].iter().map(|&n| unc(2, n)))
                .chain([3, 6].iter().map(|&n| unc(3, n)))
                .chain([unc(4, 4)])
                .collect(),
        ),
        3 => [9, 14, 18, 19, 27].iter().map(|&n| family_class(n)).collect(),
        5 => vec![family_class(11)],
        _ => sorted(prime_squared_exceptions(p).into_iter().map(family_class).collect()),
    })
}

/// Classification in degree `d` under the given interpretation.
pub fn classify_degree(d: u64, mode: DegreeMode) -> Result<DegreeReport> {
    match mode {
        DegreeMode::Odd => odd_degree_candidates(d),
        DegreeMode::Prime => {
            let table = prime_degree_table(d)?;
            let mut proven = olson_groups();
            let mut new_groups = Vec::new();
            for e in table {
                match proven.iter_mut().find(|t| t.invariants == e.torsion.invariants) {
                    Some(t) => {
                        if let CmConstraint::Discriminants { values } = &mut t.cm {
                            if !values.contains(&e.delta) {
                                values.push(e.delta);
                                values.sort_by_key(|x| x.unsigned_abs());
                            }
                        }
                    }
                    None => {
                        new_groups.push(e.torsion.shape.clone());
                        proven.push(e.torsion);
                    }
                }
            }
            let proven = sorted(proven);
            Ok(DegreeReport { degree: d, mode, candidates: proven.clone(), proven, new_groups })
        }
        DegreeMode::PrimeSquared => {
            let p = isqrt(d);
            if p * p != d || !is_prime(p) {
                return Err(Error::domain(format!("{d} is not the square of a prime")));
            }
            let in_p: Vec<(u64, u64)> =
                prime_degree_table(p)?.into_iter().map(|e| e.torsion.invariants).collect();
            let extra = prime_squared_groups(p)?;
            let new_groups =
                extra.iter().filter(|t| !in_p.contains(&t.invariants)).map(|t| t.shape.clone()).collect();
            let mut proven = olson_groups();
            proven.extend(extra);
            let proven = sorted(proven);
            Ok(DegreeReport { degree: d, mode, candidates: proven.clone(), proven, new_groups })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadorder::decompose;

    fn d(x: i64) -> Discriminant {
        decompose(x).unwrap()
    }

    #[test]
    fn family_class_numbers_match_form_counts() {
        for ell in [3u64, 7, 11, 19, 23, 31, 43] {
            for a in 0..=2u32 {
                for eps in [0u32, 2] {
                    let delta = family_delta(ell, a, eps);
                    if delta.unsigned_abs() > 2_000_000 {
                        continue;
                    }
                    assert_eq!(family_class_number(ell, a, eps), class_number_of(delta), "{delta}");
                }
            }
        }
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(real_cyclotomy_divisor(&d(-11), 11).unwrap(), 5);
        assert_eq!(real_cyclotomy_divisor(&d(-3), 9).unwrap(), 3);
        assert_eq!(real_cyclotomy_divisor(&d(-7), 7).unwrap(), 3);
        assert!(real_cyclotomy_divisor(&d(-7), 2).is_err());
        assert_eq!(spy_divisor(&d(-4), 5).unwrap(), 2);
        assert_eq!(spy_divisor(&d(-7), 7).unwrap(), 6);
        assert_eq!(spy_divisor(&d(-3), 5).unwrap(), 8);
        assert!(spy_divisor(&d(-3), 2).is_err());
    }

    #[test]
    fn sqrt_bounds() {
        assert_eq!(sqrt_spy_check(3, &d(-3), 5, false).unwrap().phi_bound, 4);
        assert_eq!(sqrt_spy_check(3, &d(-4), 5, false).unwrap().phi_bound, 3);
        assert_eq!(sqrt_spy_check(3, &d(-7), 5, false).unwrap().phi_bound, 2);
        assert!(sqrt_spy_check(3, &d(-7), 7, false).is_err());
        let c = sqrt_spy_check(3, &d(-7), 7, true).unwrap();
        assert_eq!(c.hypothesis, SqrtSpyHypothesis::FullTorsionCertified);
        assert!(!c.holds);
    }

    #[test]
    fn odd_degree_new_groups() {
        let expect: [(u64, &[&str]); 6] = [
            (3, &["Z/9", "Z/14"]),
            (5, &["Z/11"]),
            (7, &[]),
            (9, &["Z/18", "Z/19", "Z/27"]),
            (11, &[]),
            (13, &[]),
        ];
        for (deg, groups) in expect {
            let r = odd_degree_candidates(deg).unwrap();
            assert_eq!(r.new_groups, groups.to_vec(), "degree {deg}");
        }
        let one = odd_degree_candidates(1).unwrap();
        assert_eq!(one.proven.len(), 6);
        assert!(one.proven.iter().all(|t| t.olson));
        assert!(odd_degree_candidates(4).is_err());
    }

    #[test]
    fn prime_squared() {
        let shapes = |p| prime_squared_groups(p).unwrap().into_iter().map(|t| t.shape).collect::<Vec<_>>();
        assert_eq!(shapes(3), ["Z/9", "Z/14", "Z/18", "Z/19", "Z/27"]);
        assert_eq!(shapes(5), ["Z/11"]);
        for p in [7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 101] {
            assert!(shapes(p).is_empty(), "p = {p}");
        }
        assert_eq!(prime_squared_groups(2).unwrap().len(), 14);
    }

    #[test]
    fn prime_table_sizes() {
        let sizes: Vec<usize> = [2, 3, 5, 7, 13].iter().map(|&p| prime_degree_table(p).unwrap().len()).collect();
        assert_eq!(sizes, [12, 4, 1, 0, 0]);
        assert!(prime_degree_table(9).is_err());
    }
}
