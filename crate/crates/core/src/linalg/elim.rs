//! Reduced row echelon form over an abstract exact field.
//!
//! Pivot rule: columns are scanned left to right, and the pivot for a column
//! is the lowest-indexed not-yet-used row with a nonzero entry there.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::{inv_mod, mul_mod, sub_mod, FieldDescriptor, Scalar};

/// Column count below which elimination runs on dense rows.
pub const DENSE_THRESHOLD: usize = 64;

pub trait ElimField {
    type E: Clone;
    fn zero(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
}

#[derive(Clone, Copy, Debug)]
pub struct ModP(pub u64);

impl ElimField for ModP {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.0)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        sub_mod(*a, *b, self.0)
    }
    fn inv(&self, a: &u64) -> u64 {
        inv_mod(*a, self.0)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Fractions;

impl ElimField for Fractions {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        BigRational::one() / a
    }
}

impl ElimField for FieldDescriptor {
    type E = Scalar;
    fn zero(&self) -> Scalar {
        FieldDescriptor::zero(self)
    }
    fn is_zero(&self, a: &Scalar) -> bool {
        FieldDescriptor::is_zero(self, a)
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        FieldDescriptor::mul(self, a, b)
    }
    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        FieldDescriptor::sub(self, a, b)
    }
    fn inv(&self, a: &Scalar) -> Scalar {
        FieldDescriptor::inv(self, a).expect("pivot is nonzero")
    }
}

pub type SparseRow<E> = Vec<(usize, E)>;

/// Echelon data: `rows[k]` has its leading one at column `pivots[k]` and
/// zeros in every other pivot column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon<E> {
    pub ncols: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<SparseRow<E>>,
}

pub fn rref<F: ElimField>(field: &F, rows: Vec<SparseRow<F::E>>, ncols: usize) -> Echelon<F::E> {
    if ncols < DENSE_THRESHOLD {
        rref_dense(field, rows, ncols)
    } else {
        rref_sparse(field, rows, ncols)
    }
}

/// `target - factor * src` on sorted sparse rows.
fn axpy<F: ElimField>(field: &F, target: &[(usize, F::E)], factor: &F::E, src: &[(usize, F::E)]) -> SparseRow<F::E> {
    let mut out = Vec::with_capacity(target.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < src.len() {
        let ci = target.get(i).map_or(usize::MAX, |e| e.0);
        let cj = src.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push(target[i].clone());
            i += 1;
        } else if cj < ci {
            let v = field.sub(&field.zero(), &field.mul(factor, &src[j].1));
            if !field.is_zero(&v) {
                out.push((cj, v));
            }
            j += 1;
        } else {
            let v = field.sub(&target[i].1, &field.mul(factor, &src[j].1));
            if !field.is_zero(&v) {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn rref_sparse<F: ElimField>(field: &F, rows: Vec<SparseRow<F::E>>, ncols: usize) -> Echelon<F::E> {
    let mut remaining: Vec<Option<SparseRow<F::E>>> = rows
        .into_iter()
        .map(|r| {
            let mut r: SparseRow<F::E> = r.into_iter().filter(|(_, v)| !field.is_zero(v)).collect();
            r.sort_by_key(|e| e.0);
            (!r.is_empty()).then_some(r)
        })
        .collect();
    let mut pivots = Vec::new();
    let mut done: Vec<SparseRow<F::E>> = Vec::new();
    for c in 0..ncols {
        let leads_here = |r: &Option<SparseRow<F::E>>| r.as_ref().is_some_and(|r| r[0].0 == c);
        let Some(pi) = remaining.iter().position(leads_here) else { continue };
        let mut prow = remaining[pi].take().expect("pivot row present");
        let inv = field.inv(&prow[0].1);
        for e in prow.iter_mut() {
            e.1 = field.mul(&e.1, &inv);
        }
        for slot in remaining.iter_mut().skip(pi + 1) {
            if leads_here(slot) {
                let r = slot.take().expect("row present");
                let factor = r[0].1.clone();
                let reduced = axpy(field, &r, &factor, &prow);
                *slot = (!reduced.is_empty()).then_some(reduced);
            }
        }
        for r in done.iter_mut() {
            if let Ok(k) = r.binary_search_by_key(&c, |e| e.0) {
                let factor = r[k].1.clone();
                *r = axpy(field, r, &factor, &prow);
            }
        }
        pivots.push(c);
        done.push(prow);
    }
    Echelon { ncols, pivots, rows: done }
}

pub fn rref_dense<F: ElimField>(field: &F, rows: Vec<SparseRow<F::E>>, ncols: usize) -> Echelon<F::E> {
    let mut a: Vec<Vec<F::E>> = rows
        .into_iter()
        .map(|r| {
            let mut d = vec![field.zero(); ncols];
            for (c, v) in r {
                d[c] = v;
            }
            d
        })
        .collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..ncols {
        let Some(pi) = (next..a.len()).find(|&i| !field.is_zero(&a[i][c])) else { continue };
        // keep the unused rows in original relative order
        let row = a.remove(pi);
        a.insert(next, row);
        let inv = field.inv(&a[next][c]);
        for v in a[next].iter_mut() {
            *v = field.mul(v, &inv);
        }
        for i in 0..a.len() {
            if i != next && !field.is_zero(&a[i][c]) {
                let factor = a[i][c].clone();
                for k in c..ncols {
                    let t = field.mul(&factor, &a[next][k]);
                    a[i][k] = field.sub(&a[i][k], &t);
                }
            }
        }
        pivots.push(c);
        next += 1;
    }
    let rows = a
        .into_iter()
        .take(next)
        .map(|r| r.into_iter().enumerate().filter(|(_, v)| !field.is_zero(v)).collect())
        .collect();
    Echelon { ncols, pivots, rows }
}

/// Residue-level helper used by the modular path.
pub(crate) fn reduce_row(row: &[(usize, Scalar)], p: u64) -> Option<SparseRow<u64>> {
    let target = FieldDescriptor::Prime(p);
    let mut out = Vec::with_capacity(row.len());
    for (c, v) in row {
        let r = target.convert(v).ok()?.as_residue().expect("residue");
        if r != 0 {
            out.push((*c, r));
        }
    }
    Some(out)
}
