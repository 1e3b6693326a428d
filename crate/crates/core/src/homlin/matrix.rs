//! Exact Gaussian elimination over ℚ.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::gca::Rational;

/// Sparse rational matrix. Elimination densifies a working copy.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = RationalMatrix::zeros(k, k);
        for i in 0..k {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_dense(rows: usize, cols: usize, data: &[Vec<Rational>]) -> Self {
        let mut m = RationalMatrix::zeros(rows, cols);
        for (i, row) in data.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = RationalMatrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column {j} has wrong length");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        if x.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), x);
        }
    }

    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(i, j), x)| (i, j, x))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (&(i, j), x) in &self.entries {
            out[i][j] = x.clone();
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![Rational::zero(); self.rows];
        for (&(i, j), x) in &self.entries {
            out[i] += x * &v[j];
        }
        out
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut dense = vec![vec![Rational::zero(); other.cols]; self.rows];
        for (&(i, k), x) in &self.entries {
            for (&(_, j), y) in other.entries.range((k, 0)..(k + 1, 0)) {
                dense[i][j] += x * y;
            }
        }
        RationalMatrix::from_dense(self.rows, other.cols, &dense)
    }
}

/// Reduced row echelon form together with the pivot column of each row.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

pub fn rref(m: &RationalMatrix) -> Rref {
    let mut a = m.to_dense();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r][c..].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x -= &factor * y;
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Rref {
        rows: a,
        pivots,
        cols: m.cols,
    }
}

pub fn rank(m: &RationalMatrix) -> usize {
    rref(m).pivots.len()
}

/// Basis of the null space, one vector per free column, read off the reduced
/// echelon form.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let r = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); m.cols];
            v[f] = Rational::one();
            for (row, &p) in r.rows.iter().zip(&r.pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Incrementally built echelon basis of a subspace of ℚ^n.
#[derive(Clone, Debug, Default)]
pub struct EchelonSpan {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl EchelonSpan {
    pub fn new() -> Self {
        EchelonSpan::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let factor = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &factor * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v` to the span; returns `false` if it was already there.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let factor = row[p].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    *x -= &factor * y;
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

/// Solves `sum_j x_j columns[j] = target`, returning one solution if any.
pub fn solve(rows: usize, columns: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let mut augmented: Vec<Vec<Rational>> = columns.to_vec();
    augmented.push(target.to_vec());
    let m = RationalMatrix::from_columns(rows, &augmented);
    let r = rref(&m);
    if r.pivots.last() == Some(&columns.len()) {
        return None;
    }
    let mut x = vec![Rational::zero(); columns.len()];
    for (row, &p) in r.rows.iter().zip(&r.pivots) {
        x[p] = row[columns.len()].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gca::{rat, ratio};

    #[test]
    fn identity_has_full_rank() {
        for k in 0..5 {
            let id = RationalMatrix::identity(k);
            assert_eq!(rank(&id), k);
            assert!(kernel_basis(&id).is_empty());
        }
    }

    #[test]
    fn zero_matrix_has_full_kernel() {
        let z = RationalMatrix::zeros(3, 4);
        assert_eq!(rank(&z), 0);
        let k = kernel_basis(&z);
        assert_eq!(k.len(), 4);
        for (i, v) in k.iter().enumerate() {
            assert_eq!(v[i], rat(1));
        }
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = RationalMatrix::from_dense(
            2,
            4,
            &[
                vec![rat(1), rat(2), rat(0), ratio(1, 3)],
                vec![rat(2), rat(4), rat(1), rat(-1)],
            ],
        );
        assert_eq!(rank(&m), 2);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn echelon_span_detects_dependence() {
        let mut s = EchelonSpan::new();
        assert!(s.insert(&[rat(1), rat(1), rat(0)]));
        assert!(s.insert(&[rat(0), rat(1), rat(1)]));
        assert!(!s.insert(&[rat(2), rat(3), rat(1)]));
        assert!(s.contains(&[rat(1), rat(0), rat(-1)]));
        assert!(!s.contains(&[rat(0), rat(0), rat(1)]));
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let cols = vec![vec![rat(1), rat(0), rat(1)], vec![rat(0), rat(1), rat(1)]];
        let x = solve(3, &cols, &[rat(2), rat(3), rat(5)]).unwrap();
        assert_eq!(x, vec![rat(2), rat(3)]);
        assert!(solve(3, &cols, &[rat(1), rat(1), rat(1)]).is_none());
    }

    #[test]
    fn product_matches_dense() {
        let a = RationalMatrix::from_dense(2, 2, &[vec![rat(1), rat(2)], vec![rat(3), rat(4)]]);
        let b = RationalMatrix::from_dense(2, 1, &[vec![rat(1)], vec![rat(-1)]]);
        assert_eq!(a.mul(&b).to_dense(), vec![vec![rat(-1)], vec![rat(-1)]]);
    }
}
