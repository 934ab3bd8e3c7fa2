//! Dense linear algebra over an exact field: echelon forms, ranks, kernels.

use crate::polyring::Field;

#[derive(Clone, Debug)]
pub struct DenseMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<Vec<F::Elem>>,
}

impl<F: Field> DenseMatrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        DenseMatrix { field: field.clone(), rows, cols, data: vec![vec![field.zero(); cols]; rows] }
    }

    pub fn from_rows(field: &F, cols: usize, data: Vec<Vec<F::Elem>>) -> Self {
        debug_assert!(data.iter().all(|r| r.len() == cols));
        DenseMatrix { field: field.clone(), rows: data.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r][c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r]
    }

    pub fn into_rows(self) -> Vec<Vec<F::Elem>> {
        self.data
    }

    /// In-place reduced row echelon form; returns the pivot columns, one per
    /// nonzero row, in increasing order. Rows are permuted so that the first
    /// `rank` rows are the pivot rows.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !f.is_zero(&self.data[i][c])) else {
                continue;
            };
            self.data.swap(r, p);
            let inv = f.inv(&self.data[r][c]).expect("nonzero pivot");
            for x in self.data[r][c..].iter_mut() {
                *x = f.mul(x, &inv);
            }
            let pivot_row = std::mem::take(&mut self.data[r]);
            for (i, row) in self.data.iter_mut().enumerate() {
                if i == r || f.is_zero(&row[c]) {
                    continue;
                }
                let a = row[c].clone();
                for k in c..self.cols {
                    if !f.is_zero(&pivot_row[k]) {
                        row[k] = f.sub_mul(&row[k], &a, &pivot_row[k]);
                    }
                }
            }
            self.data[r] = pivot_row;
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Rank by forward elimination only (no back substitution).
    pub fn rank(&self) -> usize {
        let f = &self.field;
        let mut m = self.data.clone();
        let mut r = 0;
        for c in 0..self.cols {
            if r == m.len() {
                break;
            }
            let Some(p) = (r..m.len()).find(|&i| !f.is_zero(&m[i][c])) else {
                continue;
            };
            m.swap(r, p);
            let inv = f.inv(&m[r][c]).expect("nonzero pivot");
            let (top, bottom) = m.split_at_mut(r + 1);
            let pivot_row = &top[r];
            for row in bottom.iter_mut() {
                if f.is_zero(&row[c]) {
                    continue;
                }
                let a = f.mul(&row[c], &inv);
                for k in c..self.cols {
                    if !f.is_zero(&pivot_row[k]) {
                        row[k] = f.sub_mul(&row[k], &a, &pivot_row[k]);
                    }
                }
            }
            r += 1;
        }
        r
    }

    /// Basis of `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        let mut out = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = f.neg(&m.data[r][free]);
            }
            out.push(v);
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        self.data.iter().map(|row| row.iter().zip(v).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))).collect()
    }
}

/// Row space built one vector at a time; `insert` reports whether the vector
/// was independent of everything inserted before.
#[derive(Clone, Debug)]
pub struct IncrementalEchelon<F: Field> {
    field: F,
    // (pivot column, row normalized to 1 at the pivot), sorted by pivot
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> IncrementalEchelon<F> {
    pub fn new(field: &F) -> Self {
        IncrementalEchelon { field: field.clone(), rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows in place.
    pub fn reduce(&self, v: &mut [F::Elem]) {
        let f = &self.field;
        for (p, row) in &self.rows {
            if f.is_zero(&v[*p]) {
                continue;
            }
            let a = v[*p].clone();
            for k in *p..v.len() {
                if !f.is_zero(&row[k]) {
                    v[k] = f.sub_mul(&v[k], &a, &row[k]);
                }
            }
        }
    }

    pub fn insert(&mut self, mut v: Vec<F::Elem>) -> bool {
        self.reduce(&mut v);
        let f = &self.field;
        let Some(p) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[p]).expect("nonzero");
        for x in v[p..].iter_mut() {
            *x = f.mul(x, &inv);
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{PrimeField, Rationals};

    #[test]
    fn rank_and_kernel() {
        let f = PrimeField::default();
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        let m = DenseMatrix::from_rows(&f, 3, rows);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(|x| *x == 0));
    }

    #[test]
    fn rational_rref() {
        let q = Rationals;
        let rows = vec![vec![q.from_i64(2), q.from_i64(4)], vec![q.from_i64(1), q.from_i64(3)]];
        let mut m = DenseMatrix::from_rows(&q, 2, rows);
        assert_eq!(m.rref(), vec![0, 1]);
        assert_eq!(*m.get(0, 1), q.zero());
    }
}
