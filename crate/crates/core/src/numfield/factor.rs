//! Factorization over number fields by Trager's norm method, and field-level predicates built
//! on it.

use super::element::{NfElement, NumberField};
use super::NfPoly;
use crate::arith::cyclotomic::cyclotomic_poly;
use crate::arith::factor::{factor_poly_q, is_irreducible_q};
use crate::arith::field::{Field, Q};
use crate::arith::int::euler_phi;
use crate::arith::poly::{Poly, UniPoly};
use crate::arith::resultant::interpolate;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::Signed;
use std::sync::Arc;

/// A factorization `lead * prod factor^multiplicity` over a number field, factors monic.
#[derive(Clone, Debug, PartialEq)]
pub struct NfFactorization {
    /// Leading coefficient of the input.
    pub lead: NfElement,
    /// Monic irreducible factors with multiplicities.
    pub factors: Vec<(NfPoly, u32)>,
}

impl NfFactorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self) -> NfPoly {
        let mut acc = Poly::constant(self.lead.clone());
        for (f, e) in &self.factors {
            acc = acc.mul(&f.pow(*e));
        }
        acc
    }

    /// Factor degrees repeated by multiplicity, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(f, e)| std::iter::repeat(f.degree()).take(*e as usize))
            .collect();
        v.sort_unstable();
        v
    }

    /// Roots: negated constant terms of linear factors.
    pub fn roots(&self) -> Vec<NfElement> {
        self.factors
            .iter()
            .filter(|(f, _)| f.degree() == 1)
            .map(|(f, _)| f.coeffs()[0].negate())
            .collect()
    }
}

/// Inverse of a nonzero element.
pub fn nf_inverse(alpha: &NfElement, field: &Arc<NumberField>) -> Result<NfElement> {
    if alpha.field().defining_poly() != field.defining_poly() {
        return Err(Error::domain("element does not belong to the given field"));
    }
    alpha.inverse().ok_or(Error::DivisionByZero)
}

/// Embeds a rational polynomial into `F[x]`.
pub fn nf_poly_from_q(p: &UniPoly, field: &Arc<NumberField>) -> NfPoly {
    Poly::new(p.coeffs().iter().map(|c| NfElement::from_rational(field, c)).collect())
}

fn as_q_poly(p: &NfPoly) -> Option<UniPoly> {
    let mut v = Vec::with_capacity(p.coeffs().len());
    for c in p.coeffs() {
        v.push(c.as_rational()?);
    }
    Some(Poly::new(v))
}

/// Norm `N_{F/Q}(h) = prod_sigma sigma(h)` of a polynomial over F, by evaluation at integer
/// points and interpolation.
pub fn norm_poly(h: &NfPoly) -> UniPoly {
    let field = h.lc().expect("nonzero polynomial").field().clone();
    let n = field.degree();
    let d = h.degree();
    let total = n * d;
    let mut xs = Vec::with_capacity(total + 1);
    let mut ys = Vec::with_capacity(total + 1);
    for k in 0..=total as i64 {
        let x0 = NfElement::from_i64(&field, k);
        xs.push(Q::from_integer(BigInt::from(k)));
        ys.push(h.eval(&x0).norm());
    }
    interpolate(&xs, &ys)
}

fn shift_sequence() -> impl Iterator<Item = i64> {
    (0..40i64).map(|i| if i % 2 == 0 { -(i / 2) } else { i / 2 + 1 })
}

/// Trager factorization of a monic square-free polynomial over F.
fn trager(h: &NfPoly) -> Result<Vec<NfPoly>> {
    if h.degree() <= 1 {
        return Ok(vec![h.clone()]);
    }
    let field = h.lc().unwrap().field().clone();
    let alpha = field.generator();
    for s in shift_sequence() {
        // h_s(x) = h(x - s alpha)
        let lin = Poly::new(vec![alpha.scale_i64(-s), NfElement::one(&field)]);
        let hs = h.compose(&lin);
        let n = norm_poly(&hs);
        if !n.is_squarefree() {
            continue;
        }
        let fac = factor_poly_q(&n)?;
        if fac.factors.len() == 1 {
            return Ok(vec![h.clone()]);
        }
        let back = Poly::new(vec![alpha.scale_i64(s), NfElement::one(&field)]);
        let mut out = Vec::new();
        for (ni, _) in &fac.factors {
            let g = hs.gcd(&nf_poly_from_q(ni, &field));
            if g.degree() > 0 {
                out.push(g.compose(&back).monic());
            }
        }
        let total: usize = out.iter().map(|g| g.degree()).sum();
        if total != h.degree() {
            return Err(Error::Internal("Trager pull-back lost factors".into()));
        }
        return Ok(out);
    }
    Err(Error::Internal("every Trager shift gave a non-squarefree norm".into()))
}

fn factor_squarefree_monic(h: &NfPoly, field: &Arc<NumberField>) -> Result<Vec<NfPoly>> {
    if h.degree() <= 1 {
        return Ok(vec![h.clone()]);
    }
    if let Some(q) = as_q_poly(h) {
        // Factor over Q first; each rational factor is then split over F.
        let fac = factor_poly_q(&q)?;
        let mut out = Vec::new();
        for (qi, _) in &fac.factors {
            let hi = nf_poly_from_q(qi, field);
            if field.degree() == 1 || qi.degree() == 1 {
                out.push(hi);
            } else {
                out.extend(trager(&hi)?);
            }
        }
        return Ok(out);
    }
    trager(h)
}

fn nf_poly_key(p: &NfPoly) -> String {
    p.coeffs().iter().map(|c| c.to_text()).collect::<Vec<_>>().join(";")
}

/// Irreducible factorization over F of a nonzero polynomial.
pub fn factor_over_nf(g: &NfPoly, field: &Arc<NumberField>) -> Result<NfFactorization> {
    let lead = g.lc().cloned().ok_or_else(|| Error::domain("cannot factor the zero polynomial"))?;
    let mut factors = Vec::new();
    if g.degree() > 0 {
        for (part, e) in g.monic().squarefree_decomposition() {
            for f in factor_squarefree_monic(&part, field)? {
                factors.push((f, e));
            }
        }
    }
    factors.sort_by(|a, b| {
        a.0.degree().cmp(&b.0.degree()).then_with(|| nf_poly_key(&a.0).cmp(&nf_poly_key(&b.0)))
    });
    Ok(NfFactorization { lead, factors })
}

/// Number of real roots of a square-free-or-not polynomial counted without multiplicity, by a
/// Sturm sequence.
pub fn sturm_real_root_count(f: &UniPoly) -> usize {
    if f.degree() == 0 {
        return 0;
    }
    let mut seq = vec![f.clone(), f.derivative()];
    loop {
        let k = seq.len();
        let r = seq[k - 2].rem(&seq[k - 1]).expect("nonzero");
        if r.is_zero() {
            break;
        }
        seq.push(r.neg());
    }
    let variations = |signs: Vec<i32>| {
        let nz: Vec<i32> = signs.into_iter().filter(|&s| s != 0).collect();
        nz.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let sign = |q: &Q| if q.is_positive() { 1 } else if q.is_negative() { -1 } else { 0 };
    let at_pos: Vec<i32> = seq.iter().map(|p| sign(p.lc().unwrap())).collect();
    let at_neg: Vec<i32> = seq
        .iter()
        .map(|p| {
            let s = sign(p.lc().unwrap());
            if p.degree() % 2 == 1 {
                -s
            } else {
                s
            }
        })
        .collect();
    variations(at_neg) - variations(at_pos)
}

/// Number of real embeddings of F.
pub fn real_embedding_count(field: &NumberField) -> usize {
    *field
        .real_embeddings_cell()
        .get_or_init(|| sturm_real_root_count(field.defining_poly()))
}

/// Whether `Q[x]/(f)` and `Q[x]/(g)` are isomorphic, for monic irreducible `f`, `g`.
pub fn is_isomorphic(f: &UniPoly, g: &UniPoly) -> Result<bool> {
    for p in [f, g] {
        if !is_irreducible_q(p)? {
            return Err(Error::domain(format!("{} is reducible", p.pretty("x"))));
        }
    }
    if f.degree() != g.degree() {
        return Ok(false);
    }
    let field = NumberField::new(&g.monic())?;
    let fac = factor_over_nf(&nf_poly_from_q(f, &field), &field)?;
    Ok(fac.factors.iter().any(|(h, _)| h.degree() == 1))
}

/// Order of the group of roots of unity of F.
pub fn roots_of_unity_order(field: &Arc<NumberField>) -> Result<u64> {
    let d = field.degree() as u64;
    let mut best = 1;
    // phi(n) >= sqrt(n/2), so phi(n) <= d forces n <= 2 d^2.
    for n in 1..=(2 * d * d).max(2) {
        let phi = euler_phi(n);
        if d % phi != 0 {
            continue;
        }
        let cyc = cyclotomic_poly(n)?;
        let fac = factor_over_nf(&nf_poly_from_q(&cyc, field), field)?;
        if fac.factors.iter().any(|(h, _)| h.degree() == 1) {
            best = n;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(s: &str) -> Arc<NumberField> {
        NumberField::parse(s).unwrap()
    }

    #[test]
    fn factor_examples() {
        let qi = field("1,0,1");
        let g = nf_poly_from_q(&UniPoly::from_i64s(&[1, 0, 1]), &qi);
        let fac = factor_over_nf(&g, &qi).unwrap();
        assert_eq!(fac.degrees(), vec![1, 1]);
        assert_eq!(fac.expand(), g);

        let c = field("1,-3,0,1");
        let g = nf_poly_from_q(&UniPoly::from_i64s(&[1, -3, 0, 1]), &c);
        assert_eq!(factor_over_nf(&g, &c).unwrap().degrees(), vec![1, 1, 1]);
        let g = nf_poly_from_q(&UniPoly::from_i64s(&[-2, 0, 1]), &c);
        assert_eq!(factor_over_nf(&g, &c).unwrap().degrees(), vec![2]);
    }

    #[test]
    fn non_rational_input() {
        // (x - i)^2 (x + 1 + i) over Q(i)
        let qi = field("1,0,1");
        let i = qi.generator();
        let one = NfElement::one(&qi);
        let a = Poly::new(vec![i.negate(), one.clone()]);
        let b = Poly::new(vec![one.plus(&i), one.clone()]);
        let g = a.pow(2).mul(&b).scale(&NfElement::from_i64(&qi, 3));
        let fac = factor_over_nf(&g, &qi).unwrap();
        assert_eq!(fac.expand(), g);
        assert_eq!(fac.factors.len(), 2);
    }

    #[test]
    fn embeddings_isomorphism_units() {
        assert_eq!(real_embedding_count(&field("1,0,1")), 0);
        assert_eq!(real_embedding_count(&field("1,-3,0,1")), 3);
        assert_eq!(real_embedding_count(&field("-1,-7,42,6,-9,1")), 5);
        let a = UniPoly::from_i64s(&[-1, -9, -15, 1]);
        let b = UniPoly::from_i64s(&[1, -3, 0, 1]);
        assert!(is_isomorphic(&a, &b).unwrap());
        let a = UniPoly::from_i64s(&[1, 3, -4, 1]);
        let b = UniPoly::from_i64s(&[1, 3, -186, 1]);
        assert!(is_isomorphic(&a, &b).unwrap());
        assert!(!is_isomorphic(&UniPoly::from_i64s(&[1, 0, 1]), &UniPoly::from_i64s(&[-2, 0, 1])).unwrap());
        assert!(is_isomorphic(&UniPoly::from_i64s(&[-1, 0, 1]), &b).is_err());
        assert_eq!(roots_of_unity_order(&field("1,0,1")).unwrap(), 4);
        assert_eq!(roots_of_unity_order(&field("1,-3,0,1")).unwrap(), 2);
        assert_eq!(roots_of_unity_order(&field("1,1,1")).unwrap(), 6);
    }
}
