use super::field::Field;
use super::polynomial::{Polynomial, Ring};
use crate::error::{Error, Result};

/// A rectangular matrix of polynomials over one ring.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<F: Field> {
    ring: Ring<F>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial<F>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn from_rows(ring: &Ring<F>, rows: Vec<Vec<Polynomial<F>>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if nrows == 0 || ncols == 0 {
            return Err(Error::InvalidInput("matrix must be nonempty".into()));
        }
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::LengthMismatch { expected: ncols, got: row.len() });
            }
            for e in row {
                if !e.ring().same_space(ring) {
                    return Err(Error::RingMismatch("matrix entry from another ring".into()));
                }
                entries.push(e.in_ring(ring)?);
            }
        }
        Ok(PolyMatrix { ring: ring.clone(), rows: nrows, cols: ncols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial<F> {
        &self.entries[r * self.cols + c]
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        PolyMatrix { ring: self.ring.clone(), rows: self.cols, cols: self.rows, entries }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::InvalidInput("matrix shapes differ".into()));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect();
        Ok(PolyMatrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, entries })
    }

    /// Submatrix on the given row and column indices.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        if rows.iter().any(|&r| r >= self.rows) || cols.iter().any(|&c| c >= self.cols) {
            return Err(Error::OutOfRange("submatrix index".into()));
        }
        let entries =
            rows.iter().flat_map(|&r| cols.iter().map(move |&c| (r, c))).map(|(r, c)| self.get(r, c).clone()).collect();
        Ok(PolyMatrix { ring: self.ring.clone(), rows: rows.len(), cols: cols.len(), entries })
    }

    /// Determinant of the square submatrix on `rows` x `cols`, by Laplace
    /// expansion with memoized sub-determinants over column subsets.
    fn subdeterminant(&self, rows: &[usize], cols: &[usize]) -> Polynomial<F> {
        let k = rows.len();
        // dets[mask] = det of rows[0..popcount(mask)] x (cols selected by mask)
        let mut dets: Vec<Option<Polynomial<F>>> = vec![None; 1 << k];
        dets[0] = Some(Polynomial::one(&self.ring));
        for mask in 1usize..(1 << k) {
            let r = mask.count_ones() as usize - 1;
            let mut acc = Polynomial::zero(&self.ring);
            let mut idx = 0;
            for j in 0..k {
                if mask & (1 << j) == 0 {
                    continue;
                }
                let entry = self.get(rows[r], cols[j]);
                if !entry.is_zero() {
                    let sub = dets[mask & !(1 << j)].as_ref().expect("computed");
                    if !sub.is_zero() {
                        let term = entry.mul(sub);
                        acc = if (r + idx).is_multiple_of(2) { acc.add(&term) } else { acc.sub(&term) };
                    }
                }
                idx += 1;
            }
            dets[mask] = Some(acc);
        }
        dets.pop().flatten().expect("full mask")
    }

    pub fn determinant(&self) -> Result<Polynomial<F>> {
        if self.rows != self.cols {
            return Err(Error::InvalidInput("determinant of a non-square matrix".into()));
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.subdeterminant(&idx, &idx))
    }

    /// All `k x k` minors, row subsets outer and column subsets inner, both in
    /// lexicographic order. No deduplication.
    pub fn minors(&self, k: usize) -> Result<Vec<Polynomial<F>>> {
        if k == 0 || k > self.rows.min(self.cols) {
            return Err(Error::OutOfRange(format!("minor size {k} for a {}x{} matrix", self.rows, self.cols)));
        }
        let row_sets = subsets(self.rows, k);
        let col_sets = subsets(self.cols, k);
        let mut out = Vec::with_capacity(row_sets.len() * col_sets.len());
        for rs in &row_sets {
            for cs in &col_sets {
                out.push(self.subdeterminant(rs, cs));
            }
        }
        Ok(out)
    }
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_polynomial, MonomialOrder, PolyRing, PrimeField};
    use rand::{Rng, SeedableRng};

    fn cofactor_det<F: Field>(m: &[Vec<Polynomial<F>>], ring: &Ring<F>) -> Polynomial<F> {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = Polynomial::zero(ring);
        for j in 0..n {
            let minor: Vec<Vec<Polynomial<F>>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, e)| e.clone()).collect())
                .collect();
            let t = m[0][j].mul(&cofactor_det(&minor, ring));
            acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        acc
    }

    #[test]
    fn single_two_by_two_minor() {
        let r = PolyRing::new(&["x", "y", "z"], PrimeField::default(), MonomialOrder::DegRevLex).unwrap();
        let p = |s: &str| parse_polynomial(s, &r).unwrap();
        let m = PolyMatrix::from_rows(&r, vec![vec![p("x"), p("y")], vec![p("y"), p("z")]]).unwrap();
        let minors = m.minors(2).unwrap();
        assert_eq!(minors, vec![p("x*z-y^2")]);
        assert!(m.minors(3).is_err());
        assert!(m.minors(0).is_err());
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let r = PolyRing::new(&["a", "b", "c", "d"], PrimeField::default(), MonomialOrder::DegRevLex).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for n in 1..=4 {
            for _ in 0..5 {
                let rows: Vec<Vec<Polynomial<PrimeField>>> = (0..n)
                    .map(|_| {
                        (0..n)
                            .map(|_| {
                                let mut e = Polynomial::zero(&r);
                                for v in 0..4 {
                                    let c = r.field().from_i64(rng.random_range(-3..=3));
                                    e = e.add(&Polynomial::var(&r, v).scale(&c));
                                }
                                e
                            })
                            .collect()
                    })
                    .collect();
                let m = PolyMatrix::from_rows(&r, rows.clone()).unwrap();
                assert_eq!(m.determinant().unwrap(), cofactor_det(&rows, &r));
            }
        }
    }

    #[test]
    fn subset_counts() {
        assert_eq!(subsets(8, 4).len(), 70);
        assert_eq!(subsets(4, 2).len(), 6);
    }
}
