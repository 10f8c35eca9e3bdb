//! Exact echelon forms and nullspaces.
//!
//! Over `F_p` elimination runs directly on residues. Over the rationals the
//! matrix is eliminated modulo random 62-bit primes, the echelon entries are
//! lifted by CRT and rational reconstruction, and the resulting nullspace is
//! verified by exact substitution; when no lift verifies within the prime
//! budget, plain fraction elimination takes over.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::elim::{reduce_row, rref, Echelon, Fractions, ModP, SparseRow};
use super::matrix::CoeffMatrix;
use crate::field::{inv_mod, random_prime, rational_reconstruction, FieldDescriptor, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineOptions {
    pub seed: u64,
    pub max_primes: usize,
    pub modular: bool,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions { seed: 0x5eed_0f_1f0e, max_primes: 256, modular: true }
    }
}

/// How an echelon form over the rationals was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Direct,
    Modular { primes: usize },
    Fractions,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowEchelon {
    pub field: FieldDescriptor,
    pub ncols: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<Vec<(usize, Scalar)>>,
    pub route: Route,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NullspaceBasis {
    pub field: FieldDescriptor,
    pub ncols: usize,
    /// One vector per free column, with a one there and zeros at the other
    /// free columns.
    pub vectors: Vec<Vec<Scalar>>,
    pub free_columns: Vec<usize>,
}

impl NullspaceBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

impl RowEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }

    pub fn nullspace(&self) -> NullspaceBasis {
        let f = self.field;
        let free = self.free_columns();
        let mut vectors = Vec::with_capacity(free.len());
        for &j in &free {
            let mut v = vec![f.zero(); self.ncols];
            v[j] = f.one();
            for (k, row) in self.rows.iter().enumerate() {
                if let Ok(idx) = row.binary_search_by_key(&j, |e| e.0) {
                    v[self.pivots[k]] = f.neg(&row[idx].1);
                }
            }
            vectors.push(v);
        }
        NullspaceBasis { field: f, ncols: self.ncols, vectors, free_columns: free }
    }

    pub fn dense_rows(&self) -> Vec<Vec<Scalar>> {
        self.rows
            .iter()
            .map(|r| {
                let mut d = vec![self.field.zero(); self.ncols];
                for (c, v) in r {
                    d[*c] = v.clone();
                }
                d
            })
            .collect()
    }
}

pub fn echelon_form(m: &CoeffMatrix) -> RowEchelon {
    echelon_form_with(m, &EngineOptions::default())
}

pub fn echelon_form_with(m: &CoeffMatrix, opts: &EngineOptions) -> RowEchelon {
    match m.field {
        FieldDescriptor::Prime(p) => {
            let rows = m.rows.iter().map(|r| reduce_row(r, p).expect("entries already in F_p")).collect();
            lift_residues(m.field, rref(&ModP(p), rows, m.ncols), Route::Direct)
        }
        FieldDescriptor::Rationals => {
            if opts.modular {
                if let Some(e) = modular_echelon(m, opts) {
                    return e;
                }
            }
            fraction_echelon(m)
        }
    }
}

pub fn nullspace_basis(m: &CoeffMatrix) -> NullspaceBasis {
    echelon_form(m).nullspace()
}

pub fn nullspace_basis_with(m: &CoeffMatrix, opts: &EngineOptions) -> NullspaceBasis {
    echelon_form_with(m, opts).nullspace()
}

pub fn rank(m: &CoeffMatrix) -> usize {
    echelon_form(m).rank()
}

fn lift_residues(field: FieldDescriptor, e: Echelon<u64>, route: Route) -> RowEchelon {
    let rows = e
        .rows
        .into_iter()
        .map(|r| r.into_iter().map(|(c, v)| (c, Scalar::Residue(v))).collect())
        .collect();
    RowEchelon { field, ncols: e.ncols, pivots: e.pivots, rows, route }
}

fn fraction_echelon(m: &CoeffMatrix) -> RowEchelon {
    let rows: Vec<SparseRow<BigRational>> = m
        .rows
        .iter()
        .map(|r| r.iter().map(|(c, v)| (*c, v.as_rational().expect("rational entry").clone())).collect())
        .collect();
    let e = rref(&Fractions, rows, m.ncols);
    let rows = e
        .rows
        .into_iter()
        .map(|r| r.into_iter().map(|(c, v)| (c, Scalar::Rational(v))).collect())
        .collect();
    RowEchelon { field: m.field, ncols: e.ncols, pivots: e.pivots, rows, route: Route::Fractions }
}

/// Mod-p images accumulated by CRT for one pivot pattern.
struct Accumulator {
    pivots: Vec<usize>,
    free: Vec<usize>,
    /// `residues[k][j]`: row `k`, free column `free[j]`.
    residues: Vec<Vec<BigInt>>,
    modulus: BigInt,
    primes: usize,
}

impl Accumulator {
    fn new(e: &Echelon<u64>, p: u64) -> Self {
        let free = free_of(&e.pivots, e.ncols);
        let residues = e.rows.iter().map(|r| project(r, &free).into_iter().map(BigInt::from).collect()).collect();
        Accumulator { pivots: e.pivots.clone(), free, residues, modulus: BigInt::from(p), primes: 1 }
    }

    fn absorb(&mut self, e: &Echelon<u64>, p: u64) {
        let pb = BigInt::from(p);
        let m_mod_p = (&self.modulus % &pb).try_into().expect("fits");
        let m_inv = inv_mod(m_mod_p, p);
        for (acc_row, row) in self.residues.iter_mut().zip(&e.rows) {
            for (a, b) in acc_row.iter_mut().zip(project(row, &self.free)) {
                // x = a + M * ((b - a) * M^{-1} mod p)
                let a_mod_p: u64 = a.mod_floor(&pb).try_into().expect("fits");
                let diff = crate::field::sub_mod(b, a_mod_p, p);
                let t = crate::field::mul_mod(diff, m_inv, p);
                *a += &self.modulus * BigInt::from(t);
            }
        }
        self.modulus *= pb;
        self.primes += 1;
    }

    fn reconstruct(&self, ncols: usize) -> Option<RowEchelon> {
        let mut rows = Vec::with_capacity(self.residues.len());
        let half = &self.modulus / 2u32;
        let bound = half.sqrt();
        for (k, acc_row) in self.residues.iter().enumerate() {
            let mut row = vec![(self.pivots[k], FieldDescriptor::Rationals.one())];
            // entries of one row tend to share a denominator; carrying it
            // along skips most of the extended gcd runs
            let mut den = BigInt::from(1);
            for (j, a) in acc_row.iter().enumerate() {
                let mut t = (a * &den).mod_floor(&self.modulus);
                if t > half {
                    t -= &self.modulus;
                }
                let q = if t.magnitude() <= bound.magnitude() {
                    BigRational::new(t, den.clone())
                } else {
                    let r = rational_reconstruction(&t, &self.modulus)?;
                    let q = r.clone() / BigRational::from_integer(den.clone());
                    den *= r.denom();
                    q
                };
                if !num_traits::Zero::is_zero(&q) {
                    row.push((self.free[j], Scalar::Rational(q)));
                }
            }
            row.sort_by_key(|e| e.0);
            rows.push(row);
        }
        Some(RowEchelon {
            field: FieldDescriptor::Rationals,
            ncols,
            pivots: self.pivots.clone(),
            rows,
            route: Route::Modular { primes: self.primes },
        })
    }
}

fn free_of(pivots: &[usize], ncols: usize) -> Vec<usize> {
    let mut is_pivot = vec![false; ncols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..ncols).filter(|&c| !is_pivot[c]).collect()
}

fn project(row: &[(usize, u64)], free: &[usize]) -> Vec<u64> {
    let mut out = vec![0u64; free.len()];
    let mut j = 0;
    for (c, v) in row {
        while j < free.len() && free[j] < *c {
            j += 1;
        }
        if j < free.len() && free[j] == *c {
            out[j] = *v;
        }
    }
    out
}

/// A pivot pattern from an unlucky prime has lower rank or later pivots.
fn better(candidate: &[usize], current: &[usize]) -> bool {
    candidate.len() > current.len() || (candidate.len() == current.len() && candidate < current)
}

fn modular_echelon(m: &CoeffMatrix, opts: &EngineOptions) -> Option<RowEchelon> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut acc: Option<Accumulator> = None;
    let mut integer_rows: Option<Vec<Vec<(usize, BigInt)>>> = None;
    for _ in 0..opts.max_primes {
        let p = random_prime(&mut rng, 62);
        let Some(rows) = m.rows.iter().map(|r| reduce_row(r, p)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        let e = rref(&ModP(p), rows, m.ncols);
        match acc.as_mut() {
            Some(a) if a.pivots == e.pivots => a.absorb(&e, p),
            Some(a) if !better(&e.pivots, &a.pivots) => continue,
            _ => acc = Some(Accumulator::new(&e, p)),
        }
        let a = acc.as_ref().expect("accumulator set");
        if let Some(candidate) = a.reconstruct(m.ncols) {
            let int_rows = integer_rows.get_or_insert_with(|| m.rows.iter().map(|r| clear_denominators(r)).collect());
            if candidate.nullspace().vectors.iter().all(|v| annihilates_exactly(int_rows, v)) {
                return Some(candidate);
            }
        }
    }
    None
}

/// Row scaled to integers by the lcm of its denominators.
fn clear_denominators(row: &[(usize, Scalar)]) -> Vec<(usize, BigInt)> {
    let rat = |v: &Scalar| v.as_rational().expect("rational entry").clone();
    let l = row.iter().fold(BigInt::from(1), |l, (_, v)| l.lcm(rat(v).denom()));
    row.iter().map(|(c, v)| (*c, rat(v).numer() * (&l / rat(v).denom()))).collect()
}

/// Exact `M v = 0` over integers, which avoids a gcd per product.
fn annihilates_exactly(int_rows: &[Vec<(usize, BigInt)>], v: &[Scalar]) -> bool {
    let dense: Vec<(usize, Scalar)> = v.iter().cloned().enumerate().collect();
    let w = clear_denominators(&dense);
    int_rows.iter().all(|r| {
        let mut acc = BigInt::from(0);
        for (c, a) in r {
            acc += a * &w[*c].1;
        }
        num_traits::Zero::is_zero(&acc)
    })
}
