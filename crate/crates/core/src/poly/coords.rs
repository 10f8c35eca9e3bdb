use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Polynomial;
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};

/// Largest absolute value of a sampled matrix entry over the rationals.
const ENTRY_BOUND: i64 = 3;

/// An invertible linear substitution `x -> M x`, recorded with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateChange {
    field: FieldDescriptor,
    matrix: Vec<Vec<Scalar>>,
    inverse: Vec<Vec<Scalar>>,
}

impl CoordinateChange {
    pub fn identity(field: FieldDescriptor, n: usize) -> Self {
        let m: Vec<Vec<Scalar>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect())
            .collect();
        CoordinateChange { field, inverse: m.clone(), matrix: m }
    }

    /// Seeded random invertible `n x n` matrix with small entries; singular
    /// draws are discarded.
    pub fn random(field: FieldDescriptor, n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let matrix: Vec<Vec<Scalar>> = (0..n)
                .map(|_| (0..n).map(|_| field.sample_small(&mut rng, ENTRY_BOUND)).collect())
                .collect();
            if let Some(inverse) = invert(field, &matrix) {
                return CoordinateChange { field, matrix, inverse };
            }
        }
    }

    pub fn from_matrix(field: FieldDescriptor, matrix: Vec<Vec<Scalar>>) -> Result<Self> {
        let inverse = invert(field, &matrix).ok_or_else(|| Error::ContractViolation("singular matrix".into()))?;
        Ok(CoordinateChange { field, matrix, inverse })
    }

    pub fn matrix(&self) -> &[Vec<Scalar>] {
        &self.matrix
    }

    pub fn inverse(&self) -> CoordinateChange {
        CoordinateChange { field: self.field, matrix: self.inverse.clone(), inverse: self.matrix.clone() }
    }

    /// `p(M x)`.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        let n = self.matrix.len();
        if p.nvars() != n || p.field() != self.field {
            return Err(Error::IncompatibleOperands("coordinate change does not match polynomial".into()));
        }
        let images: Vec<Polynomial> = self
            .matrix
            .iter()
            .map(|row| {
                row.iter().enumerate().fold(Polynomial::zero(self.field, n), |acc, (j, c)| {
                    &acc + &Polynomial::var(self.field, n, j).scale(c)
                })
            })
            .collect();
        p.substitute(&images)
    }

    /// Image of a zero of `p` as a zero of `apply(p)`: `M^{-1} v`.
    pub fn map_point(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        mat_vec(self.field, &self.inverse, v)
    }

    /// Image of a parametrized curve on `p` as a curve on `apply(p)`.
    pub fn map_curve(&self, curve: &[Polynomial]) -> Result<Vec<Polynomial>> {
        if curve.len() != self.inverse.len() {
            return Err(Error::IndexOutOfRange { index: curve.len(), len: self.inverse.len() });
        }
        let first = curve.first().ok_or_else(|| Error::ContractViolation("empty curve".into()))?;
        let mut out = Vec::with_capacity(curve.len());
        for row in &self.inverse {
            let mut acc = Polynomial::zero(first.field(), first.nvars());
            for (c, comp) in row.iter().zip(curve) {
                acc = acc.checked_add(&comp.scale(c))?;
            }
            out.push(acc);
        }
        Ok(out)
    }
}

fn mat_vec(field: FieldDescriptor, m: &[Vec<Scalar>], v: &[Scalar]) -> Result<Vec<Scalar>> {
    if v.len() != m.len() {
        return Err(Error::IndexOutOfRange { index: v.len(), len: m.len() });
    }
    Ok(m.iter()
        .map(|row| row.iter().zip(v).fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b))))
        .collect())
}

/// Gauss-Jordan inverse; `None` when singular.
fn invert(field: FieldDescriptor, m: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = m.len();
    let mut a: Vec<Vec<Scalar>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !field.is_zero(&a[r][col]))?;
        a.swap(col, piv);
        let inv = field.inv(&a[col][col])?;
        for x in a[col].iter_mut() {
            *x = field.mul(x, &inv);
        }
        for r in 0..n {
            if r != col && !field.is_zero(&a[r][col]) {
                let factor = a[r][col].clone();
                for c in 0..2 * n {
                    let t = field.mul(&factor, &a[col][c]);
                    a[r][c] = field.sub(&a[r][c], &t);
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Degree;

    const Q: FieldDescriptor = FieldDescriptor::Rationals;

    #[test]
    fn identity_leaves_polynomial_unchanged() {
        let p = Polynomial::parse("x^3*w-2*y*z+7", Q, 4).unwrap();
        assert_eq!(CoordinateChange::identity(Q, 4).apply(&p).unwrap(), p);
    }

    #[test]
    fn inverse_round_trip_and_degree() {
        let fermat = Polynomial::parse("x^4+y^4+z^4+w^4", Q, 4).unwrap();
        for seed in 0..5 {
            let ch = CoordinateChange::random(Q, 4, seed);
            let moved = ch.apply(&fermat).unwrap();
            assert_eq!(moved.degree(), Degree::Finite(4));
            assert!(moved.is_homogeneous());
            assert_eq!(ch.inverse().apply(&moved).unwrap(), fermat);
        }
    }

    #[test]
    fn zeros_follow_the_substitution() {
        let p = Polynomial::parse("x*y-z*w", Q, 4).unwrap();
        let ch = CoordinateChange::random(Q, 4, 11);
        let moved = ch.apply(&p).unwrap();
        let v: Vec<Scalar> = [2, 3, 6, 1].iter().map(|&k| Q.from_i64(k)).collect();
        assert!(Q.is_zero(&p.evaluate(&v).unwrap()));
        let w = ch.map_point(&v).unwrap();
        assert!(Q.is_zero(&moved.evaluate(&w).unwrap()));
    }

    #[test]
    fn seeds_are_reproducible() {
        let f7 = FieldDescriptor::Prime(7);
        assert_eq!(CoordinateChange::random(f7, 4, 3), CoordinateChange::random(f7, 4, 3));
    }
}
