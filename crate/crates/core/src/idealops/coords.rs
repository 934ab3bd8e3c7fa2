use rand_chacha::ChaCha8Rng;

use super::seed::{random_scalar, Seed};
use super::Ideal;
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::polyring::{Field, Polynomial, Ring};

/// An invertible linear substitution `x_i -> sum_j matrix[i][j] x_j`,
/// stored with its inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct CoordinateChange<F: Field> {
    field: F,
    matrix: Vec<Vec<F::Elem>>,
    inverse: Vec<Vec<F::Elem>>,
}

fn invert<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> Option<Vec<Vec<F::Elem>>> {
    let n = m.len();
    let rows: Vec<Vec<F::Elem>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    let mut aug = DenseMatrix::from_rows(field, 2 * n, rows);
    let pivots = aug.rref();
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some((0..n).map(|i| aug.row(i)[n..].to_vec()).collect())
}

/// Draws an `n x n` matrix with entries in `[-bound, bound]` until it is
/// invertible over `field`.
pub fn random_invertible_matrix<F: Field>(
    field: &F,
    n: usize,
    rng: &mut ChaCha8Rng,
    bound: i64,
) -> (Vec<Vec<F::Elem>>, usize) {
    let mut attempts = 0;
    loop {
        attempts += 1;
        let m: Vec<Vec<F::Elem>> = (0..n).map(|_| (0..n).map(|_| random_scalar(rng, field, bound)).collect()).collect();
        if DenseMatrix::from_rows(field, n, m.clone()).rank() == n {
            if attempts > 1 {
                log::debug!("invertible matrix after {attempts} draws");
            }
            return (m, attempts);
        }
    }
}

impl<F: Field> CoordinateChange<F> {
    pub fn from_matrix(field: &F, matrix: Vec<Vec<F::Elem>>) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("coordinate change must be square".into()));
        }
        let inverse = invert(field, &matrix).ok_or_else(|| Error::InvalidInput("singular coordinate change".into()))?;
        Ok(CoordinateChange { field: field.clone(), matrix, inverse })
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let m: Vec<Vec<F::Elem>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect()).collect();
        CoordinateChange { field: field.clone(), matrix: m.clone(), inverse: m }
    }

    /// A seeded random change with entries in `[-bound, bound]`.
    pub fn random(field: &F, n: usize, seed: Seed, tag: &str, bound: i64) -> Self {
        let mut rng = seed.rng(tag);
        let (m, _) = random_invertible_matrix(field, n, &mut rng, bound);
        Self::from_matrix(field, m).expect("invertible by construction")
    }

    pub fn matrix(&self) -> &[Vec<F::Elem>] {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &[Vec<F::Elem>] {
        &self.inverse
    }

    pub fn inverse(&self) -> Self {
        CoordinateChange { field: self.field.clone(), matrix: self.inverse.clone(), inverse: self.matrix.clone() }
    }

    fn images(m: &[Vec<F::Elem>], ring: &Ring<F>) -> Vec<Polynomial<F>> {
        m.iter()
            .map(|row| {
                Polynomial::from_terms(
                    ring,
                    row.iter().enumerate().map(|(j, c)| (crate::polyring::Monomial::var(j, 1), c.clone())),
                )
            })
            .collect()
    }

    pub fn apply_polynomial(&self, p: &Polynomial<F>) -> Result<Polynomial<F>> {
        p.substitute(&Self::images(&self.matrix, p.ring()))
    }

    pub fn apply(&self, ideal: &Ideal<F>) -> Result<Ideal<F>> {
        if self.matrix.len() != ideal.ring().nvars() {
            return Err(Error::LengthMismatch { expected: ideal.ring().nvars(), got: self.matrix.len() });
        }
        ideal.substitute(&Self::images(&self.matrix, ideal.ring()))
    }

    pub fn apply_inverse(&self, ideal: &Ideal<F>) -> Result<Ideal<F>> {
        self.inverse().apply(ideal)
    }

    /// Entries printed with the field's formatting, for reports.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.matrix.iter().map(|r| r.iter().map(|c| self.field.format(c)).collect()).collect()
    }
}

/// Image of `ideal` under a seeded invertible linear substitution.
pub fn generic_change_of_coordinates<F: Field>(
    ideal: &Ideal<F>,
    seed: Seed,
) -> Result<(Ideal<F>, CoordinateChange<F>)> {
    let change = CoordinateChange::random(ideal.ring().field(), ideal.ring().nvars(), seed, "coordinates", 100);
    Ok((change.apply(ideal)?, change))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{MonomialOrder, PolyRing, PrimeField};

    #[test]
    fn inverse_undoes_change() {
        let r = PolyRing::new(&["x", "y", "z"], PrimeField::default(), MonomialOrder::DegRevLex).unwrap();
        let i = Ideal::parse(&r, &["x^2-y*z", "x*y*z+z^3"]).unwrap();
        let (j, ch) = generic_change_of_coordinates(&i, Seed(3)).unwrap();
        assert!(!j.same_ideal(&i).unwrap());
        let back = ch.apply_inverse(&j).unwrap();
        assert!(back.same_ideal(&i).unwrap());
    }

    #[test]
    fn identity_change_is_trivial() {
        let r = PolyRing::new(&["x", "y"], PrimeField::default(), MonomialOrder::DegRevLex).unwrap();
        let i = Ideal::parse(&r, &["x*y"]).unwrap();
        let id = CoordinateChange::identity(r.field(), 2);
        assert!(id.apply(&i).unwrap().same_ideal(&i).unwrap());
    }

    #[test]
    fn singular_matrix_rejected() {
        let f = PrimeField::default();
        let m = vec![vec![1, 2], vec![2, 4]];
        assert!(CoordinateChange::from_matrix(&f, m).is_err());
    }
}
