//! Relative extensions `F[y]/(h)`, conversion to an absolute primitive element, and dimensions
//! of Q-subalgebras generated by given elements.

use super::element::{NfElement, NumberField};
use super::factor::norm_poly;
use super::NfPoly;
use crate::arith::field::{Field, Q};
use crate::arith::int::factor_u64;
use crate::arith::linalg::{solve_columns, EchelonBasis};
use crate::arith::poly::{Poly, UniPoly};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use std::sync::Arc;

/// A finite-dimensional commutative Q-algebra with coordinates.
pub trait QAlgebra {
    /// Dimension over Q.
    fn dim(&self) -> usize;
    /// Product of two coordinate vectors.
    fn mul(&self, a: &[Q], b: &[Q]) -> Vec<Q>;
    /// Coordinates of the identity.
    fn one(&self) -> Vec<Q>;
}

impl QAlgebra for Arc<NumberField> {
    fn dim(&self) -> usize {
        self.degree()
    }
    fn mul(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let x = NfElement::from_coords(self, a).expect("coordinates");
        let y = NfElement::from_coords(self, b).expect("coordinates");
        x.times(&y).coords()
    }
    fn one(&self) -> Vec<Q> {
        NfElement::one(self).coords()
    }
}

/// Dimension of the Q-subalgebra generated by `gens` (the degree of the subfield they
/// generate, when the ambient algebra is a field).
pub fn subalgebra_dimension<A: QAlgebra>(alg: &A, gens: &[Vec<Q>]) -> usize {
    let mut basis = EchelonBasis::new();
    let one = alg.one();
    basis.insert(&one);
    let mut queue = vec![one];
    while let Some(v) = queue.pop() {
        for g in gens {
            let w = alg.mul(&v, g);
            if basis.insert(&w) {
                queue.push(w);
            }
        }
    }
    basis.dim()
}

/// A relative extension `F[y]/(h)` with `h` monic and irreducible over F.
#[derive(Clone, Debug)]
pub struct Tower {
    /// The base field F.
    pub base: Arc<NumberField>,
    /// The relative defining polynomial.
    pub h: NfPoly,
}

/// An absolute model of a tower: a field `M` with the images of the base generator and of the
/// relative generator.
#[derive(Clone, Debug)]
pub struct AbsoluteTower {
    /// The absolute field.
    pub field: Arc<NumberField>,
    /// Image of the generator of the base field.
    pub alpha: NfElement,
    /// Image of the root of `h`.
    pub beta: NfElement,
}

impl AbsoluteTower {
    /// Image of a base-field element.
    pub fn embed_base(&self, c: &NfElement) -> NfElement {
        c.map_generator(&self.alpha)
    }

    /// Image of a tower element given as a polynomial in the relative generator.
    pub fn embed(&self, t: &NfPoly) -> NfElement {
        let mut acc = NfElement::zero(&self.field);
        for c in t.coeffs().iter().rev() {
            acc = acc.times(&self.beta).plus(&self.embed_base(c));
        }
        acc
    }
}

/// Rescales a monic rational polynomial to a monic integral one: returns `(P, c)` with
/// `P(x) = c^m p(x / c)`, so roots of `P` are `c` times roots of `p`.
pub fn integralize(p: &UniPoly) -> (UniPoly, BigInt) {
    let p = p.monic();
    let m = p.degree();
    let den = p.denominator_lcm();
    if den.is_one() {
        return (p, BigInt::one());
    }
    // Prime-wise minimal scaling when the denominator factors easily.
    let c = match den.to_u64() {
        Some(d) => {
            let mut c = BigInt::one();
            for (q, _) in factor_u64(d) {
                let qb = BigInt::from(q);
                let mut need = 0u32;
                for (i, coef) in p.coeffs().iter().enumerate() {
                    let k = (m - i) as u32;
                    if k == 0 {
                        continue;
                    }
                    let mut v = 0u32;
                    let mut dd = coef.denom().clone();
                    while (&dd % &qb).is_zero() {
                        dd /= &qb;
                        v += 1;
                    }
                    need = need.max(v.div_ceil(k));
                }
                c *= qb.pow(need);
            }
            c
        }
        None => den,
    };
    let mut coeffs = Vec::with_capacity(m + 1);
    let cq = Q::from_integer(c.clone());
    let mut pow = Q::one();
    for i in (0..=m).rev() {
        coeffs.push(p.coeffs()[i].clone() * pow.clone());
        pow *= cq.clone();
    }
    coeffs.reverse();
    (Poly::new(coeffs), c)
}

impl Tower {
    /// A tower over `base` defined by a monic irreducible `h`.
    pub fn new(base: Arc<NumberField>, h: NfPoly) -> Self {
        Tower { base, h: h.monic() }
    }

    /// Relative degree.
    pub fn relative_degree(&self) -> usize {
        self.h.degree()
    }

    /// Absolute degree.
    pub fn degree(&self) -> usize {
        self.base.degree() * self.h.degree()
    }

    /// Flattened coordinates (`y^j alpha^i` at index `j n + i`).
    pub fn to_coords(&self, t: &NfPoly) -> Vec<Q> {
        let n = self.base.degree();
        let e = self.h.degree();
        let mut v = vec![Q::zero(); n * e];
        for (j, c) in t.coeffs().iter().enumerate() {
            for (i, x) in c.coords().into_iter().enumerate() {
                v[j * n + i] = x;
            }
        }
        v
    }

    /// Inverse of [`Tower::to_coords`].
    pub fn from_coords(&self, v: &[Q]) -> NfPoly {
        let n = self.base.degree();
        let e = self.h.degree();
        Poly::new(
            (0..e)
                .map(|j| NfElement::from_coords(&self.base, &v[j * n..(j + 1) * n]).unwrap())
                .collect(),
        )
    }

    /// Product in the tower.
    pub fn mul_elems(&self, a: &NfPoly, b: &NfPoly) -> NfPoly {
        a.mul(b).rem(&self.h).expect("nonzero modulus")
    }

    /// The relative generator.
    pub fn beta(&self) -> NfPoly {
        Poly::x(&NfElement::one(&self.base)).rem(&self.h).unwrap()
    }

    /// A base element viewed in the tower.
    pub fn embed_base(&self, c: &NfElement) -> NfPoly {
        Poly::constant(c.clone())
    }

    /// Absolute model via a primitive element `beta + k alpha` with square-free norm.
    pub fn absolute(&self) -> Result<AbsoluteTower> {
        let base = &self.base;
        let n = base.degree();
        let e = self.h.degree();
        if e == 1 {
            let root = self.h.coeffs()[0].negate();
            return Ok(AbsoluteTower { field: base.clone(), alpha: base.generator(), beta: root });
        }
        if n == 1 {
            let q: Vec<Q> = self.h.coeffs().iter().map(|c| c.as_rational().unwrap()).collect();
            let (p, c) = integralize(&Poly::new(q));
            let field = NumberField::new_unchecked(&p);
            let beta = field
                .generator()
                .times(&NfElement::from_rational(&field, &Q::new(BigInt::one(), c)));
            return Ok(AbsoluteTower { alpha: NfElement::zero(&field), beta, field });
        }
        let alpha = base.generator();
        let one = NfElement::one(base);
        for k in (0..40i64).map(|i| if i % 2 == 0 { i / 2 + 1 } else { -(i / 2 + 1) }) {
            let lin = Poly::new(vec![alpha.scale_i64(-k), one.clone()]);
            let shifted = self.h.compose(&lin);
            let norm = norm_poly(&shifted);
            if !norm.is_squarefree() {
                continue;
            }
            let (p, c) = integralize(&norm);
            let field = NumberField::new_unchecked(&p);
            // theta = beta + k alpha; express powers of theta in the tower basis.
            let theta = self.beta().add(&Poly::constant(alpha.scale_i64(k)));
            let m = n * e;
            let mut cols = Vec::with_capacity(m);
            let mut pw: NfPoly = Poly::constant(one.clone());
            for _ in 0..m {
                cols.push(self.to_coords(&pw));
                pw = self.mul_elems(&pw, &theta);
            }
            let to_abs = |target: &NfPoly| -> Result<NfElement> {
                let sol = solve_columns(&cols, &self.to_coords(target))
                    .ok_or_else(|| Error::Internal("primitive element does not span".into()))?;
                // theta = theta' / c with theta' the generator of the integral model.
                let mut cpow = Q::one();
                let cq = Q::from_integer(c.clone());
                let coords: Vec<Q> = sol
                    .into_iter()
                    .map(|s| {
                        let v = s / cpow.clone();
                        cpow *= cq.clone();
                        v
                    })
                    .collect();
                NfElement::from_coords(&field, &coords)
            };
            let a_img = to_abs(&Poly::constant(alpha.clone()))?;
            let b_img = to_abs(&self.beta())?;
            let abs = AbsoluteTower { field, alpha: a_img, beta: b_img };
            debug_assert!(abs.embed(&self.h).eq_zero());
            return Ok(abs);
        }
        Err(Error::Internal("no primitive element found for tower".into()))
    }
}

impl QAlgebra for Tower {
    fn dim(&self) -> usize {
        self.degree()
    }
    fn mul(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        self.to_coords(&self.mul_elems(&self.from_coords(a), &self.from_coords(b)))
    }
    fn one(&self) -> Vec<Q> {
        self.to_coords(&Poly::constant(NfElement::one(&self.base)))
    }
}

/// Degree of an element over Q (dimension of `Q[a]`).
pub fn element_degree(a: &NfElement) -> usize {
    subalgebra_dimension(a.field(), &[a.coords()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::factor::nf_poly_from_q;

    #[test]
    fn tower_to_absolute() {
        // Q(i)(sqrt 2) = Q(zeta_8)
        let qi = NumberField::parse("1,0,1").unwrap();
        let h = nf_poly_from_q(&UniPoly::from_i64s(&[-2, 0, 1]), &qi);
        let t = Tower::new(qi.clone(), h.clone());
        let abs = t.absolute().unwrap();
        assert_eq!(abs.field.degree(), 4);
        let i = &abs.alpha;
        assert_eq!(i.times(i), NfElement::from_i64(&abs.field, -1));
        assert_eq!(abs.beta.times(&abs.beta), NfElement::from_i64(&abs.field, 2));
        // The subfield generated by i*sqrt(2) has degree 2.
        let isq = t.mul_elems(&t.embed_base(&qi.generator()), &t.beta());
        assert_eq!(subalgebra_dimension(&t, &[t.to_coords(&isq)]), 2);
        assert_eq!(subalgebra_dimension(&t, &[t.to_coords(&t.beta()), t.to_coords(&t.embed_base(&qi.generator()))]), 4);
    }

    #[test]
    fn integralize_scaling() {
        let p = UniPoly::parse("1/9,0,1").unwrap();
        let (q, c) = integralize(&p);
        assert_eq!(c, BigInt::from(3));
        assert_eq!(q, UniPoly::from_i64s(&[1, 0, 1]));
        let f = NumberField::new_unchecked(&q);
        assert_eq!(element_degree(&f.generator()), 2);
    }
}
