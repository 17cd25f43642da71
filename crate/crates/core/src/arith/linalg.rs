//! Exact linear algebra over a field: incremental echelon bases and linear solves.

use super::field::Field;

/// An incrementally built row-echelon basis of a subspace of `T^n`.
#[derive(Clone, Debug)]
pub struct EchelonBasis<T> {
    rows: Vec<(usize, Vec<T>)>,
}

impl<T: Field> Default for EchelonBasis<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Field> EchelonBasis<T> {
    /// The zero subspace.
    pub fn new() -> Self {
        EchelonBasis { rows: Vec::new() }
    }

    /// Dimension of the span.
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; returns the remainder.
    pub fn reduce(&self, v: &[T]) -> Vec<T> {
        let mut v = v.to_vec();
        for (piv, row) in &self.rows {
            if !v[*piv].eq_zero() {
                let c = v[*piv].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.eq_zero() {
                        *x = x.minus(&c.times(r));
                    }
                }
            }
        }
        v
    }

    /// Whether `v` lies in the span.
    pub fn contains(&self, v: &[T]) -> bool {
        self.reduce(v).iter().all(|x| x.eq_zero())
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[T]) -> bool {
        let mut r = self.reduce(v);
        let piv = match r.iter().position(|x| !x.eq_zero()) {
            None => return false,
            Some(p) => p,
        };
        let inv = r[piv].inverse().expect("nonzero pivot");
        for x in r.iter_mut() {
            *x = x.times(&inv);
        }
        // Keep the basis fully reduced at existing pivots.
        for (_, row) in self.rows.iter_mut() {
            if !row[piv].eq_zero() {
                let c = row[piv].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    if !y.eq_zero() {
                        *x = x.minus(&c.times(y));
                    }
                }
            }
        }
        self.rows.push((piv, r));
        true
    }
}

/// Rank of a list of vectors.
pub fn rank<T: Field>(rows: &[Vec<T>]) -> usize {
    let mut b = EchelonBasis::new();
    for r in rows {
        b.insert(r);
    }
    b.dim()
}

/// Solves `sum_j c_j cols[j] = target` for `c`; `None` if there is no solution. The columns are
/// assumed linearly independent when a unique answer is wanted.
pub fn solve_columns<T: Field>(cols: &[Vec<T>], target: &[T]) -> Option<Vec<T>> {
    let n = target.len();
    let k = cols.len();
    if k == 0 {
        return if target.iter().all(|x| x.eq_zero()) { Some(Vec::new()) } else { None };
    }
    // Augmented matrix with n rows and k+1 columns.
    let zero = target[0].zero_like();
    let mut m: Vec<Vec<T>> = (0..n)
        .map(|i| {
            let mut row: Vec<T> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(pr) = (r..n).find(|&i| !m[i][c].eq_zero()) else { continue };
        m.swap(r, pr);
        let inv = m[r][c].inverse().unwrap();
        for x in m[r].iter_mut() {
            *x = x.times(&inv);
        }
        for i in 0..n {
            if i != r && !m[i][c].eq_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    if !y.eq_zero() {
                        *x = x.minus(&f.times(y));
                    }
                }
            }
        }
        pivots.push((r, c));
        r += 1;
        if r == n {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[k].eq_zero()) {
        return None;
    }
    let mut sol = vec![zero; k];
    for (row, col) in pivots {
        sol[col] = m[row][k].clone();
    }
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{qi, Q};

    fn v(x: &[i64]) -> Vec<Q> {
        x.iter().map(|&a| qi(a)).collect()
    }

    #[test]
    fn echelon_and_solve() {
        let rows = vec![v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 1, 1])];
        assert_eq!(rank(&rows), 2);
        let cols = vec![v(&[1, 0, 1]), v(&[0, 1, 1])];
        assert_eq!(solve_columns(&cols, &v(&[2, 3, 5])), Some(v(&[2, 3])));
        assert_eq!(solve_columns(&cols, &v(&[2, 3, 4])), None);
    }
}
