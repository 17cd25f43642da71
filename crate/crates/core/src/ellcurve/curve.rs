//! Weierstrass models and the chord-tangent group law.

use crate::arith::field::{Field, Q};
use crate::error::{Error, Result};
use crate::numfield::{roots_in_field, NfElement, NfPoly, NumberField};
use num_bigint::BigInt;
use serde::Serialize;
use std::sync::Arc;

/// A point on a Weierstrass model over a field `T`.
#[derive(Clone, Debug, PartialEq)]
pub enum Point<T = NfElement> {
    /// The point at infinity.
    Infinity,
    /// An affine point.
    Affine {
        /// x-coordinate.
        x: T,
        /// y-coordinate.
        y: T,
    },
}

impl<T> Point<T> {
    /// Whether this is the point at infinity.
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }
}

impl Point<NfElement> {
    /// `infinity` or `(x;y)` with power-basis coordinates.
    pub fn to_text(&self) -> String {
        match self {
            Point::Infinity => "infinity".into(),
            Point::Affine { x, y } => format!("({};{})", x.to_text(), y.to_text()),
        }
    }
}

/// Long Weierstrass coefficient vector `[a1, a2, a3, a4, a6]`.
pub(crate) type Coeffs<T> = [T; 5];

/// The invariants `b2, b4, b6, b8`.
pub(crate) fn b_invariants<T: Field>(a: &Coeffs<T>) -> [T; 4] {
    let [a1, a2, a3, a4, a6] = a;
    let b2 = a1.times(a1).plus(&a2.scale_i64(4));
    let b4 = a1.times(a3).plus(&a4.scale_i64(2));
    let b6 = a3.times(a3).plus(&a6.scale_i64(4));
    let b8 = a1
        .times(a1)
        .times(a6)
        .plus(&a2.times(a6).scale_i64(4))
        .minus(&a1.times(a3).times(a4))
        .plus(&a2.times(a3).times(a3))
        .minus(&a4.times(a4));
    [b2, b4, b6, b8]
}

/// The discriminant of a long Weierstrass model.
pub(crate) fn discriminant_of<T: Field>(a: &Coeffs<T>) -> T {
    let [b2, b4, b6, b8] = b_invariants(a);
    b2.times(&b2)
        .times(&b8)
        .negate()
        .minus(&b4.times(&b4).times(&b4).scale_i64(8))
        .minus(&b6.times(&b6).scale_i64(27))
        .plus(&b2.times(&b4).times(&b6).scale_i64(9))
}

/// Whether an affine point satisfies the equation.
pub(crate) fn on_curve<T: Field>(a: &Coeffs<T>, p: &Point<T>) -> bool {
    match p {
        Point::Infinity => true,
        Point::Affine { x, y } => {
            let [a1, a2, a3, a4, a6] = a;
            let lhs = y.times(y).plus(&a1.times(x).times(y)).plus(&a3.times(y));
            let rhs = x.times(x).times(x).plus(&a2.times(x).times(x)).plus(&a4.times(x)).plus(a6);
            lhs == rhs
        }
    }
}

/// Negation.
pub(crate) fn neg<T: Field>(a: &Coeffs<T>, p: &Point<T>) -> Point<T> {
    match p {
        Point::Infinity => Point::Infinity,
        Point::Affine { x, y } => {
            Point::Affine { x: x.clone(), y: y.negate().minus(&a[0].times(x)).minus(&a[2]) }
        }
    }
}

/// Group law on a long Weierstrass model.
pub(crate) fn add<T: Field>(a: &Coeffs<T>, p: &Point<T>, q: &Point<T>) -> Point<T> {
    let (x1, y1, x2, y2) = match (p, q) {
        (Point::Infinity, _) => return q.clone(),
        (_, Point::Infinity) => return p.clone(),
        (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
    };
    let [a1, a2, a3, a4, a6] = a;
    let (lambda, nu) = if x1 == x2 {
        let den = y1.plus(y2).plus(&a1.times(x2)).plus(a3);
        if den.eq_zero() {
            return Point::Infinity;
        }
        let den = y1.scale_i64(2).plus(&a1.times(x1)).plus(a3);
        let inv = den.inverse().expect("nonzero tangent denominator");
        let num_l = x1
            .times(x1)
            .scale_i64(3)
            .plus(&a2.times(x1).scale_i64(2))
            .plus(a4)
            .minus(&a1.times(y1));
        let num_n = x1
            .times(x1)
            .times(x1)
            .negate()
            .plus(&a4.times(x1))
            .plus(&a6.scale_i64(2))
            .minus(&a3.times(y1));
        (num_l.times(&inv), num_n.times(&inv))
    } else {
        let inv = x2.minus(x1).inverse().expect("distinct abscissae");
        let l = y2.minus(y1).times(&inv);
        let n = y1.times(x2).minus(&y2.times(x1)).times(&inv);
        (l, n)
    };
    let x3 = lambda.times(&lambda).plus(&a1.times(&lambda)).minus(a2).minus(x1).minus(x2);
    let y3 = lambda.plus(a1).times(&x3).negate().minus(&nu).minus(a3);
    Point::Affine { x: x3, y: y3 }
}

/// Scalar multiple by double-and-add.
pub(crate) fn mul<T: Field>(a: &Coeffs<T>, p: &Point<T>, k: i64) -> Point<T> {
    let mut base = if k < 0 { neg(a, p) } else { p.clone() };
    let mut e = k.unsigned_abs();
    let mut acc = Point::Infinity;
    while e > 0 {
        if e & 1 == 1 {
            acc = add(a, &acc, &base);
        }
        base = add(a, &base, &base);
        e >>= 1;
    }
    acc
}

/// Order of a point by repeated addition, `None` if it exceeds `limit`.
pub(crate) fn order_upto<T: Field>(a: &Coeffs<T>, p: &Point<T>, limit: u64) -> Option<u64> {
    let mut q = p.clone();
    for k in 1..=limit {
        if q.is_infinity() {
            return Some(k);
        }
        q = add(a, &q, p);
    }
    None
}

/// An elliptic curve `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` over a number field.
#[derive(Clone, Debug)]
pub struct Curve {
    field: Arc<NumberField>,
    a: Coeffs<NfElement>,
    b: [NfElement; 4],
    c4: NfElement,
    c6: NfElement,
    disc: NfElement,
    j: NfElement,
}

/// JSON view of a curve.
#[derive(Clone, Debug, Serialize, serde::Deserialize, PartialEq)]
pub struct CurveRecord {
    /// Defining polynomial of the base field.
    pub field: String,
    /// `[a1, a2, a3, a4, a6]` as power-basis vectors.
    pub coefficients: Vec<String>,
    /// j-invariant.
    pub j: String,
    /// Discriminant.
    pub discriminant: String,
}

impl Curve {
    /// Builds a curve from long Weierstrass coefficients; rejects singular models.
    pub fn new(a: [NfElement; 5]) -> Result<Self> {
        let field = a[0].field().clone();
        if a.iter().any(|c| c.field().defining_poly() != field.defining_poly()) {
            return Err(Error::domain("coefficients lie in different fields"));
        }
        let disc = discriminant_of(&a);
        if disc.eq_zero() {
            return Err(Error::Singular(format!(
                "[{}] has zero discriminant",
                a.iter().map(|c| c.to_text()).collect::<Vec<_>>().join("; ")
            )));
        }
        let b = b_invariants(&a);
        let c4 = b[0].times(&b[0]).minus(&b[1].scale_i64(24));
        let c6 = b[0]
            .times(&b[0])
            .times(&b[0])
            .negate()
            .plus(&b[0].times(&b[1]).scale_i64(36))
            .minus(&b[2].scale_i64(216));
        let j = c4.times(&c4).times(&c4).divide(&disc).expect("nonzero discriminant");
        Ok(Curve { field, a, b, c4, c6, disc, j })
    }

    /// Builds a curve from rational coefficients over `field`.
    pub fn from_rationals(field: &Arc<NumberField>, a: [Q; 5]) -> Result<Self> {
        Self::new(a.map(|c| NfElement::from_rational(field, &c)))
    }

    /// Parses `a1;a2;a3;a4;a6` with each coefficient a power-basis vector.
    pub fn parse(field: &Arc<NumberField>, s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(';').collect();
        if parts.len() != 5 {
            return Err(Error::domain("a curve needs five coefficients a1;a2;a3;a4;a6"));
        }
        let mut a = Vec::with_capacity(5);
        for p in parts {
            a.push(NfElement::parse(field, p)?);
        }
        Self::new(a.try_into().expect("five coefficients"))
    }

    /// Base field.
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    /// `[a1, a2, a3, a4, a6]`.
    pub fn coeffs(&self) -> &[NfElement; 5] {
        &self.a
    }

    /// `[b2, b4, b6, b8]`.
    pub fn b_invariants(&self) -> &[NfElement; 4] {
        &self.b
    }

    /// `c4`.
    pub fn c4(&self) -> &NfElement {
        &self.c4
    }

    /// `c6`.
    pub fn c6(&self) -> &NfElement {
        &self.c6
    }

    /// Discriminant.
    pub fn discriminant(&self) -> &NfElement {
        &self.disc
    }

    /// j-invariant `c4^3 / disc`.
    pub fn j_invariant(&self) -> &NfElement {
        &self.j
    }

    /// `(A, B)` of the isomorphic short model `y^2 = x^3 + A x + B`.
    pub fn short_coeffs(&self) -> (NfElement, NfElement) {
        let a = self.c4.negate().divide(&self.c4.from_i64_like(48)).unwrap();
        let b = self.c6.negate().divide(&self.c6.from_i64_like(864)).unwrap();
        (a, b)
    }

    /// The short model `y^2 = x^3 + A x + B` obtained by completing the square and cube.
    pub fn short_model(&self) -> Curve {
        let (a, b) = self.short_coeffs();
        let z = NfElement::zero(&self.field);
        Curve::new([z.clone(), z.clone(), z.clone(), a, b]).expect("isomorphic model")
    }

    /// Image of a point under the isomorphism to `short_model`.
    pub fn to_short_point(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => {
                let twelve = x.from_i64_like(12);
                let two = x.from_i64_like(2);
                let xs = x.plus(&self.b[0].divide(&twelve).unwrap());
                let ys = y.plus(&self.a[0].times(x).plus(&self.a[2]).divide(&two).unwrap());
                Point::Affine { x: xs, y: ys }
            }
        }
    }

    /// Whether `p` lies on the curve.
    pub fn contains(&self, p: &Point) -> bool {
        on_curve(&self.a, p)
    }

    fn check(&self, p: &Point) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::domain(format!("point {} is not on the curve", p.to_text())))
        }
    }

    /// Sum of two points.
    pub fn add(&self, p: &Point, q: &Point) -> Result<Point> {
        self.check(p)?;
        self.check(q)?;
        Ok(add(&self.a, p, q))
    }

    /// Negation.
    pub fn neg(&self, p: &Point) -> Point {
        neg(&self.a, p)
    }

    /// Scalar multiple.
    pub fn mul(&self, p: &Point, k: i64) -> Point {
        mul(&self.a, p, k)
    }

    /// Order of a point if at most `limit`.
    pub fn order_upto(&self, p: &Point, limit: u64) -> Option<u64> {
        order_upto(&self.a, p, limit)
    }

    /// Builds the affine point `(x, y)`, checking the equation.
    pub fn point(&self, x: NfElement, y: NfElement) -> Result<Point> {
        let p = Point::Affine { x, y };
        self.check(&p)?;
        Ok(p)
    }

    /// The two-division polynomial `4x^3 + b2 x^2 + 2 b4 x + b6`, the discriminant in `y` of
    /// the equation at a given abscissa.
    pub fn two_division(&self) -> NfPoly {
        let [b2, b4, b6, _] = &self.b;
        NfPoly::new(vec![b6.clone(), b4.scale_i64(2), b2.clone(), b2.from_i64_like(4)])
    }

    /// All points with abscissa `x` (zero, one or two).
    pub fn points_with_x(&self, x: &NfElement) -> Result<Vec<Point>> {
        let d = self.two_division().eval(x);
        let lin = self.a[0].times(x).plus(&self.a[2]);
        let two = x.from_i64_like(2);
        if d.eq_zero() {
            return Ok(vec![Point::Affine { x: x.clone(), y: lin.negate().divide(&two).unwrap() }]);
        }
        let sq = NfPoly::new(vec![d.negate(), x.zero_like(), x.one_like()]);
        let (roots, _) = roots_in_field(&sq)?;
        Ok(roots
            .into_iter()
            .map(|r| Point::Affine { x: x.clone(), y: r.minus(&lin).divide(&two).unwrap() })
            .collect())
    }

    /// Serializable summary.
    pub fn record(&self) -> CurveRecord {
        CurveRecord {
            field: self.field.defining_poly().to_text(),
            coefficients: self.a.iter().map(|c| c.to_text()).collect(),
            j: self.j.to_text(),
            discriminant: self.disc.to_text(),
        }
    }
}

impl PartialEq for Curve {
    fn eq(&self, o: &Self) -> bool {
        self.a == o.a
    }
}

/// The Kubert-Tate curve `y^2 + (1-c)xy - by = x^3 - bx^2`.
pub fn kubert_curve(b: &NfElement, c: &NfElement) -> Result<Curve> {
    let z = b.zero_like();
    Curve::new([b.one_like().minus(c), b.negate(), b.negate(), z.clone(), z])
}

/// A Weierstrass model of the Hesse cubic `X^3 + Y^3 + Z^3 + lambda XYZ = 0`.
///
/// The cubic is birational to `y^2 = c3 x^3 + c2 x^2 + c1 x + c0` with
/// `c3 = -4(lambda^3 + 27)/27`, `c2 = -lambda^2/3`, `c1 = -2 lambda/9`, `c0 = -1/27`; scaling
/// `x` and `y` by `c3` gives `Y^2 = X^3 + c2 X^2 + c1 c3 X + c0 c3^2`. For `lambda = 0` this is
/// `Y^2 = X^3 - 16/27`, isomorphic over Q to `y^2 = x^3 - 432`.
pub fn hesse_curve(lambda: &NfElement) -> Result<Curve> {
    let l = lambda;
    let l3 = l.times(l).times(l);
    let s = l3.plus(&l.from_i64_like(27));
    if s.eq_zero() {
        return Err(Error::Singular("Hesse parameter with lambda^3 = -27".into()));
    }
    let q = |n: i64, d: i64| l.from_rat_like(&Q::new(BigInt::from(n), BigInt::from(d)));
    let c3 = s.times(&q(-4, 27));
    let c2 = l.times(l).times(&q(-1, 3));
    let c1 = l.times(&q(-2, 9));
    let c0 = q(-1, 27);
    let z = l.zero_like();
    Curve::new([z.clone(), c2, z, c1.times(&c3), c0.times(&c3).times(&c3)])
}

/// A curve with the given j-invariant.
pub fn curve_from_j(j: &NfElement) -> Result<Curve> {
    let z = j.zero_like();
    let one = j.one_like();
    if j.eq_zero() {
        return Curve::new([z.clone(), z.clone(), z.clone(), z, j.from_i64_like(16)]);
    }
    let k = j.minus(&j.from_i64_like(1728));
    if k.eq_zero() {
        return Curve::new([z.clone(), z.clone(), z.clone(), one.negate(), z]);
    }
    let a4 = j.times(&k).scale_i64(-3);
    let a6 = j.times(&k).times(&k).scale_i64(-2);
    Curve::new([z.clone(), z.clone(), z, a4, a6])
}

/// Sum of two points on `e`; rejects points off the curve.
pub fn point_add(p: &Point, q: &Point, e: &Curve) -> Result<Point> {
    e.add(p, q)
}

/// The quadratic twist of the short model of `e` by `d`: `y^2 = x^3 + A d^2 x + B d^3`.
pub fn quadratic_twist(e: &Curve, d: &NfElement) -> Result<Curve> {
    if d.eq_zero() {
        return Err(Error::domain("twist parameter must be nonzero"));
    }
    let (a, b) = e.short_coeffs();
    let z = d.zero_like();
    Curve::new([z.clone(), z.clone(), z, a.times(d).times(d), b.times(d).times(d).times(d)])
}

/// Whether `r` is a `k`-th power in its field.
fn is_kth_power(r: &NfElement, k: usize) -> Result<bool> {
    let mut c = vec![r.zero_like(); k + 1];
    c[0] = r.negate();
    c[k] = r.one_like();
    Ok(!roots_in_field(&NfPoly::new(c))?.0.is_empty())
}

/// Whether two curves over the same field are isomorphic over that field.
pub fn curves_isomorphic(e1: &Curve, e2: &Curve) -> Result<bool> {
    if e1.field().defining_poly() != e2.field().defining_poly() {
        return Err(Error::domain("curves over different fields"));
    }
    if e1.j_invariant() != e2.j_invariant() {
        return Ok(false);
    }
    let (a1, b1) = e1.short_coeffs();
    let (a2, b2) = e2.short_coeffs();
    if b1.eq_zero() {
        // j = 1728: A2 = u^4 A1.
        return is_kth_power(&a2.divide(&a1).unwrap(), 4);
    }
    if a1.eq_zero() {
        // j = 0: B2 = u^6 B1.
        return is_kth_power(&b2.divide(&b1).unwrap(), 6);
    }
    // E2 is the twist of E1 by t = (B2/B1)/(A2/A1).
    let t = b2.times(&a1).divide(&b1.times(&a2)).unwrap();
    is_kth_power(&t, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qf() -> Arc<NumberField> {
        NumberField::rationals()
    }

    fn el(f: &Arc<NumberField>, s: &str) -> NfElement {
        NfElement::parse(f, s).unwrap()
    }

    #[test]
    fn tangent_doubling() {
        let f = qf();
        let e = curve_from_j(&NfElement::zero(&f)).unwrap();
        let p = e.point(el(&f, "0"), el(&f, "4")).unwrap();
        let two_p = e.add(&p, &p).unwrap();
        assert_eq!(two_p, Point::Affine { x: el(&f, "0"), y: el(&f, "-4") });
        assert_eq!(e.order_upto(&p, 10), Some(3));
        assert_eq!(e.add(&p, &Point::Infinity).unwrap(), p);
    }

    #[test]
    fn kubert_inverse_and_singular() {
        let f = NumberField::parse("1,0,1").unwrap();
        let i = el(&f, "0,1");
        let e = kubert_curve(&i, &i).unwrap();
        assert_eq!(e.coeffs()[0], el(&f, "1,-1"));
        assert_eq!(e.coeffs()[1], el(&f, "0,-1"));
        let o = e.point(NfElement::zero(&f), NfElement::zero(&f)).unwrap();
        assert!(e.add(&o, &e.neg(&o)).unwrap().is_infinity());
        let z = NfElement::zero(&f);
        assert!(matches!(kubert_curve(&z, &z), Err(Error::Singular(_))));
    }

    #[test]
    fn hesse_models() {
        let f = qf();
        let e = hesse_curve(&NfElement::zero(&f)).unwrap();
        assert!(e.j_invariant().eq_zero());
        assert!(matches!(hesse_curve(&el(&f, "-3")), Err(Error::Singular(_))));
        let e1 = hesse_curve(&el(&f, "1")).unwrap();
        assert!(!e1.j_invariant().eq_zero());
    }

    #[test]
    fn j_models() {
        let f = qf();
        for j in ["0", "1728", "54000", "-3375", "1/7"] {
            let e = curve_from_j(&el(&f, j)).unwrap();
            assert_eq!(e.j_invariant(), &el(&f, j));
        }
    }

    #[test]
    fn twists_and_isomorphism() {
        let f = qf();
        let e = curve_from_j(&el(&f, "1728")).unwrap();
        let t = quadratic_twist(&e, &el(&f, "-1")).unwrap();
        assert_eq!(t.coeffs(), e.coeffs());
        let e0 = curve_from_j(&el(&f, "0")).unwrap();
        let t0 = quadratic_twist(&e0, &el(&f, "4")).unwrap();
        assert_eq!(t0.coeffs()[4], el(&f, "1024"));
        assert!(curves_isomorphic(&e0, &t0).unwrap());
        let g = curve_from_j(&el(&f, "54000")).unwrap();
        assert!(curves_isomorphic(&g, &quadratic_twist(&g, &el(&f, "9")).unwrap()).unwrap());
        assert!(!curves_isomorphic(&g, &quadratic_twist(&g, &el(&f, "3")).unwrap()).unwrap());
        assert!(quadratic_twist(&g, &el(&f, "0")).is_err());
    }
}
