//! Resultants of univariate polynomials and bivariate elimination.

use super::field::{Field, Q};
use super::poly::{Poly, UniPoly};
use num_bigint::BigInt;
use num_traits::Zero;

/// Resultant of two univariate polynomials over a field, by the Euclidean remainder sequence.
///
/// Zero polynomials give resultant zero; a nonzero constant `c` against a polynomial of degree
/// `d` gives `c^d`.
pub fn resultant_univariate<T: Field>(a: &Poly<T>, b: &Poly<T>) -> Option<T> {
    let sample = a.lc().or(b.lc())?.clone();
    if a.is_zero() || b.is_zero() {
        return Some(sample.zero_like());
    }
    let mut a = a.clone();
    let mut b = b.clone();
    let mut acc = sample.one_like();
    loop {
        let da = a.degree();
        let db = b.degree();
        if db == 0 {
            return Some(acc.times(&b.lc().unwrap().pow_u64(da as u64)));
        }
        if da == 0 {
            return Some(acc.times(&a.lc().unwrap().pow_u64(db as u64)));
        }
        let r = a.rem(&b).expect("nonzero divisor");
        if r.is_zero() {
            return Some(sample.zero_like());
        }
        let dr = r.degree();
        if (da * db) % 2 == 1 {
            acc = acc.negate();
        }
        acc = acc.times(&b.lc().unwrap().pow_u64((da - dr) as u64));
        a = b;
        b = r;
    }
}

/// Resultant of two rational polynomials.
pub fn resultant_q(a: &UniPoly, b: &UniPoly) -> Q {
    resultant_univariate(a, b).unwrap_or_else(Q::zero)
}

/// Discriminant of a polynomial of degree `n >= 1`:
/// `(-1)^(n(n-1)/2) Res(f, f') / lc(f)`.
pub fn discriminant_q(f: &UniPoly) -> Q {
    let n = f.degree();
    if n == 0 {
        return Q::zero();
    }
    let r = resultant_q(f, &f.derivative());
    let s = if (n * (n - 1) / 2) % 2 == 1 { -r } else { r };
    s / f.lc().unwrap().clone()
}

/// Which variable of a bivariate polynomial is eliminated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Eliminate {
    /// Eliminate `x`, returning a polynomial in `t`.
    X,
    /// Eliminate `t`, returning a polynomial in `x`.
    T,
}

/// A dense bivariate rational polynomial: `coeffs[i][j]` multiplies `x^i t^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    coeffs: Vec<Vec<Q>>,
}

impl BiPoly {
    /// Builds from `coeffs[i][j]` (coefficient of `x^i t^j`).
    pub fn new(coeffs: Vec<Vec<Q>>) -> Self {
        BiPoly { coeffs }
    }

    /// Builds from integer coefficients.
    pub fn from_i64s(c: &[&[i64]]) -> Self {
        BiPoly {
            coeffs: c
                .iter()
                .map(|row| row.iter().map(|&n| Q::from_integer(BigInt::from(n))).collect())
                .collect(),
        }
    }

    /// A polynomial in `x` alone.
    pub fn from_x(p: &UniPoly) -> Self {
        BiPoly { coeffs: p.coeffs().iter().map(|c| vec![c.clone()]).collect() }
    }

    /// A polynomial in `t` alone.
    pub fn from_t(p: &UniPoly) -> Self {
        BiPoly { coeffs: vec![p.coeffs().to_vec()] }
    }

    /// Coefficient of `x^i t^j`.
    pub fn get(&self, i: usize, j: usize) -> Q {
        self.coeffs.get(i).and_then(|r| r.get(j)).cloned().unwrap_or_else(Q::zero)
    }

    fn dims(&self) -> (usize, usize) {
        let dx = self.coeffs.len();
        let dt = self.coeffs.iter().map(|r| r.len()).max().unwrap_or(0);
        (dx, dt)
    }

    /// Degree in `x`.
    pub fn deg_x(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|r| r.iter().any(|c| !c.eq_zero()))
            .unwrap_or(0)
    }

    /// Degree in `t`.
    pub fn deg_t(&self) -> usize {
        self.coeffs
            .iter()
            .filter_map(|r| r.iter().rposition(|c| !c.eq_zero()))
            .max()
            .unwrap_or(0)
    }

    /// Swaps the roles of `x` and `t`.
    pub fn transpose(&self) -> Self {
        let (dx, dt) = self.dims();
        let mut c = vec![vec![Q::zero(); dx]; dt];
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                c[j][i] = v.clone();
            }
        }
        BiPoly { coeffs: c }
    }

    /// Specialises `t = t0`, returning a polynomial in `x`.
    pub fn eval_t(&self, t0: &Q) -> UniPoly {
        Poly::new(
            self.coeffs
                .iter()
                .map(|row| Poly::new(row.clone()).eval(t0))
                .collect(),
        )
    }

    /// Leading coefficient in `x`, as a polynomial in `t`.
    pub fn lc_x(&self) -> UniPoly {
        Poly::new(self.coeffs.get(self.deg_x()).cloned().unwrap_or_default())
    }
}

/// Resultant of two bivariate polynomials with respect to the eliminated variable, returned as
/// a polynomial in the retained variable. Computed by specialising the retained variable at
/// integer points where neither leading coefficient vanishes, followed by interpolation.
pub fn resultant(f: &BiPoly, g: &BiPoly, eliminate: Eliminate) -> UniPoly {
    let (f, g) = match eliminate {
        Eliminate::X => (f.clone(), g.clone()),
        Eliminate::T => (f.transpose(), g.transpose()),
    };
    let (m, n) = (f.deg_x(), g.deg_x());
    let bound = m * g.deg_t() + n * f.deg_t();
    let (lf, lg) = (f.lc_x(), g.lc_x());
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut t = 0i64;
    while xs.len() < bound + 1 {
        let t0 = Q::from_integer(BigInt::from(t));
        t += 1;
        if lf.eval(&t0).eq_zero() || lg.eval(&t0).eq_zero() {
            continue;
        }
        let r = resultant_q(&f.eval_t(&t0), &g.eval_t(&t0));
        xs.push(t0);
        ys.push(r);
    }
    interpolate(&xs, &ys)
}

/// Newton interpolation through the given points.
pub fn interpolate(xs: &[Q], ys: &[Q]) -> UniPoly {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut p = UniPoly::zero();
    for i in (0..n).rev() {
        p = p
            .mul(&Poly::new(vec![-xs[i].clone(), Q::from_integer(BigInt::from(1))]))
            .add(&UniPoly::constant(coef[i].clone()));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn univariate_resultants() {
        let f = UniPoly::from_i64s(&[-2, 0, 1]);
        let g = UniPoly::from_i64s(&[-3, 0, 1]);
        assert_eq!(resultant_q(&f, &g), Q::from_integer(1.into()));
        // Res(x - c, g) = g(c)
        let lin = UniPoly::from_i64s(&[-5, 1]);
        let h = UniPoly::from_i64s(&[1, 2, 3]);
        assert_eq!(resultant_q(&lin, &h), h.eval_i64(5));
        assert_eq!(discriminant_q(&UniPoly::from_i64s(&[1, -3, 0, 1])), Q::from_integer(81.into()));
    }

    #[test]
    fn bivariate_examples() {
        // Res_x(x^2 - 2, t - x^2) = (t - 2)^2
        let f = BiPoly::from_i64s(&[&[-2], &[0], &[1]]);
        let g = BiPoly::from_i64s(&[&[0, 1], &[0], &[-1]]);
        assert_eq!(resultant(&f, &g, Eliminate::X), UniPoly::from_i64s(&[4, -4, 1]));
        // Res_x(x^2 + 1, t - x^3) = t^2 + 1
        let f = BiPoly::from_i64s(&[&[1], &[0], &[1]]);
        let g = BiPoly::from_i64s(&[&[0, 1], &[0], &[0], &[-1]]);
        assert_eq!(resultant(&f, &g, Eliminate::X), UniPoly::from_i64s(&[1, 0, 1]));
        // Eliminating t instead: Res_t(t^2+1, x - t^3)
        assert_eq!(
            resultant(&f.transpose(), &g.transpose(), Eliminate::T),
            UniPoly::from_i64s(&[1, 0, 1])
        );
    }
}
