//! Brute-force reference computations, deliberately naive: dense matrices,
//! plain fraction arithmetic, every monomial coefficient its own unknown.
//! Only raw coefficients are read from the library types.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use picard_core::{Polynomial, Scalar, SurfaceModel};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Polynomial as exponent vector -> nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, Q>,
}

impl OPoly {
    pub fn zero(nvars: usize) -> Self {
        OPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn mono(exps: Vec<u32>, c: Q) -> Self {
        let mut p = OPoly::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn from_lib(p: &Polynomial) -> Self {
        let mut out = OPoly::zero(p.nvars());
        for (m, c) in p.terms() {
            let exps = (0..p.nvars()).map(|i| m.exp(i)).collect();
            out.add_term(exps, scalar_to_q(c));
        }
        out
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Q) {
        let e = self.terms.entry(exps.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.terms.keys().map(|e| e.iter().sum::<u32>() as i64).max().unwrap_or(-1)
    }

    pub fn add(&self, o: &OPoly) -> OPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn scale(&self, c: &Q) -> OPoly {
        let mut r = OPoly::zero(self.nvars);
        for (e, v) in &self.terms {
            r.add_term(e.clone(), v * c);
        }
        r
    }

    pub fn sub(&self, o: &OPoly) -> OPoly {
        self.add(&o.scale(&q(-1)))
    }

    pub fn mul(&self, o: &OPoly) -> OPoly {
        let mut r = OPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    pub fn deriv(&self, i: usize) -> OPoly {
        let mut r = OPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                r.add_term(e2, c * q(e[i] as i64));
            }
        }
        r
    }

    /// Value of the polynomial with `x_i` replaced by a univariate `images[i]`.
    pub fn substitute_univariate(&self, images: &[Vec<Q>]) -> Vec<Q> {
        let mut out = vec![];
        for (e, c) in &self.terms {
            let mut t = vec![c.clone()];
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t = upoly_mul(&t, &images[i]);
                }
            }
            out = upoly_add(&out, &t);
        }
        out
    }

    pub fn coefficient(&self, exps: &[u32]) -> Q {
        self.terms.get(exps).cloned().unwrap_or_else(Q::zero)
    }
}

pub fn scalar_to_q(c: &Scalar) -> Q {
    match c {
        Scalar::Rational(r) => r.clone(),
        Scalar::Residue(v) => q(*v as i64),
    }
}

fn upoly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    r
}

fn upoly_add(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_else(Q::zero) + b.get(i).cloned().unwrap_or_else(Q::zero))
        .collect()
}

/// All exponent vectors in `nvars` variables of total degree exactly `k`.
pub fn monos_of(nvars: usize, k: i64) -> Vec<Vec<u32>> {
    if k < 0 {
        return vec![];
    }
    if nvars == 1 {
        return vec![vec![k as u32]];
    }
    let mut out = vec![];
    for first in (0..=k).rev() {
        for mut rest in monos_of(nvars - 1, k - first) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}

pub fn monos_upto(nvars: usize, k: i64) -> Vec<Vec<u32>> {
    (0..=k).flat_map(|j| monos_of(nvars, j)).collect()
}

/// Dense reduced row echelon form; returns (rows, pivot columns).
pub fn rref(mut a: Vec<Vec<Q>>, ncols: usize) -> (Vec<Vec<Q>>, Vec<usize>) {
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = Q::one() / &a[r][c];
        for v in a[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in 0..ncols {
                    let t = &f * &a[r][k];
                    a[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(a: Vec<Vec<Q>>, ncols: usize) -> usize {
    rref(a, ncols).1.len()
}

pub fn nullspace(a: Vec<Vec<Q>>, ncols: usize) -> Vec<Vec<Q>> {
    let (rows, pivots) = rref(a, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -rows[k][f].clone();
            }
            v
        })
        .collect()
}

pub fn mat_vec(a: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

/// Linear system from polynomial identities: each unknown contributes a
/// polynomial, and every coefficient of the sum must vanish.
struct System {
    columns: Vec<OPoly>,
}

impl System {
    fn matrix(&self) -> (Vec<Vec<Q>>, usize) {
        let mut keys: Vec<Vec<u32>> = self.columns.iter().flat_map(|c| c.terms.keys().cloned()).collect();
        keys.sort();
        keys.dedup();
        let n = self.columns.len();
        let rows = keys.iter().map(|k| self.columns.iter().map(|c| c.coefficient(k)).collect()).collect();
        (rows, n)
    }
}

/// Rows forcing an affine form `sum c_m x^m` (deg <= m) to vanish on each
/// parametrized component of the double curve.
fn adjoint_rows(s: &SurfaceModel, monos: &[Vec<u32>], m: i64) -> Vec<Vec<Q>> {
    let mut rows = vec![];
    for param in &s.double_curve.parametrizations {
        let images: Vec<Vec<Q>> = param
            .iter()
            .map(|p| {
                let op = OPoly::from_lib(p);
                let deg = op.degree().max(0) as usize;
                (0..=deg).map(|k| op.coefficient(&[k as u32])).collect()
            })
            .collect();
        let columns: Vec<Vec<Q>> = monos
            .iter()
            .map(|e| {
                let mut h = e.clone();
                h.push((m - e.iter().sum::<u32>() as i64) as u32);
                OPoly::mono(h, Q::one()).substitute_univariate(&images)
            })
            .collect();
        let len = columns.iter().map(Vec::len).max().unwrap_or(0);
        for k in 0..len {
            rows.push(columns.iter().map(|c| c.get(k).cloned().unwrap_or_else(Q::zero)).collect());
        }
    }
    if !s.double_curve.generators.is_empty() {
        assert!(!s.double_curve.parametrizations.is_empty(), "oracle needs parametrized double curves");
    }
    rows
}

pub struct PicardOracle {
    pub dim: usize,
    /// `(A, B, C, N)` per basis vector, affine in `x, y, z`.
    pub basis: Vec<[OPoly; 4]>,
    pub unknowns: usize,
}

fn picard_columns(s: &SurfaceModel) -> (Vec<OPoly>, Vec<Vec<u32>>, Vec<Vec<u32>>) {
    let d = s.degree as i64;
    let f = OPoly::from_lib(&s.affine);
    let fx = [f.deriv(0), f.deriv(1), f.deriv(2)];
    let m2 = monos_upto(3, d - 2);
    let m3 = monos_upto(3, d - 3);
    let mut cols = vec![];
    for partial in &fx {
        for e in &m2 {
            cols.push(OPoly::mono(e.clone(), Q::one()).mul(partial));
        }
    }
    for e in &m3 {
        cols.push(OPoly::mono(e.clone(), q(-1)).mul(&f));
    }
    (cols, m2, m3)
}

fn decode(v: &[Q], m2: &[Vec<u32>], m3: &[Vec<u32>]) -> [OPoly; 4] {
    let mut out: [OPoly; 4] = std::array::from_fn(|_| OPoly::zero(3));
    for (k, e) in m2.iter().enumerate() {
        for (j, part) in out.iter_mut().take(3).enumerate() {
            part.add_term(e.clone(), v[j * m2.len() + k].clone());
        }
    }
    for (k, e) in m3.iter().enumerate() {
        out[3].add_term(e.clone(), v[3 * m2.len() + k].clone());
    }
    out
}

/// Full Picard system plus adjointness of `A, B, C`, over the rationals.
fn picard_matrix(s: &SurfaceModel) -> (Vec<Vec<Q>>, usize, Vec<Vec<u32>>, Vec<Vec<u32>>) {
    let d = s.degree as i64;
    let (cols, m2, m3) = picard_columns(s);
    let (mut rows, n) = System { columns: cols }.matrix();
    let adj = adjoint_rows(s, &m2, d - 2);
    for block in 0..3 {
        for r in &adj {
            let mut row = vec![Q::zero(); n];
            for (k, v) in r.iter().enumerate() {
                row[block * m2.len() + k] = v.clone();
            }
            rows.push(row);
        }
    }
    (rows, n, m2, m3)
}

pub fn picard_oracle(s: &SurfaceModel) -> PicardOracle {
    let (rows, n, m2, m3) = picard_matrix(s);
    let basis: Vec<[OPoly; 4]> = nullspace(rows, n).iter().map(|v| decode(v, &m2, &m3)).collect();
    PicardOracle { dim: basis.len(), basis, unknowns: n }
}

/// `A f_x + B f_y + C f_z - N f` recomputed from scratch.
pub fn picard_residual(s: &SurfaceModel, sol: &[OPoly; 4]) -> OPoly {
    let f = OPoly::from_lib(&s.affine);
    sol[0]
        .mul(&f.deriv(0))
        .add(&sol[1].mul(&f.deriv(1)))
        .add(&sol[2].mul(&f.deriv(2)))
        .sub(&sol[3].mul(&f))
}

pub fn defect(sol: &[OPoly; 4]) -> OPoly {
    sol[0].deriv(0).add(&sol[1].deriv(1)).add(&sol[2].deriv(2)).sub(&sol[3])
}

/// Rank of the defect map on a basis, as coefficient vectors.
pub fn defect_rank(basis: &[[OPoly; 4]]) -> usize {
    let qs: Vec<OPoly> = basis.iter().map(defect).collect();
    let mut keys: Vec<Vec<u32>> = qs.iter().flat_map(|p| p.terms.keys().cloned()).collect();
    keys.sort();
    keys.dedup();
    let rows: Vec<Vec<Q>> = qs.iter().map(|p| keys.iter().map(|k| p.coefficient(k)).collect()).collect();
    rank(rows, keys.len())
}

/// Solutions with prescribed `A`: `None` when there are none, otherwise the
/// dimension of the fiber.
pub fn fiber_oracle(s: &SurfaceModel, a: &OPoly) -> Option<usize> {
    let (rows, n, m2, _) = picard_matrix(s);
    // augmented system in the B, C, N unknowns with A moved to the right
    let fixed: Vec<Q> = m2.iter().map(|e| a.coefficient(e)).collect();
    let free = n - m2.len();
    let aug: Vec<Vec<Q>> = rows
        .iter()
        .map(|r| {
            let rhs: Q = -(r[..m2.len()].iter().zip(&fixed).map(|(x, y)| x * y).sum::<Q>());
            let mut row = r[m2.len()..].to_vec();
            row.push(rhs);
            row
        })
        .collect();
    let (_, pivots) = rref(aug, free + 1);
    if pivots.contains(&free) {
        return None;
    }
    Some(free - pivots.len())
}

/// `sum Y_i F_i = Q F` with `Y_i` of degree `d - 3`, `Q` of degree `d - 4`,
/// and no double curve: (space dimension, Euler-family dimension).
pub fn gral_oracle(s: &SurfaceModel) -> (usize, usize) {
    assert!(s.double_curve.generators.is_empty());
    let d = s.degree as i64;
    let f = OPoly::from_lib(&s.equation);
    let my = monos_of(4, d - 3);
    let mq = monos_of(4, d - 4);
    let mut cols = vec![];
    for i in 0..4 {
        let fi = f.deriv(i);
        for e in &my {
            cols.push(OPoly::mono(e.clone(), Q::one()).mul(&fi));
        }
    }
    for e in &mq {
        cols.push(OPoly::mono(e.clone(), q(-1)).mul(&f));
    }
    let (rows, n) = System { columns: cols }.matrix();
    (nullspace(rows, n).len(), mq.len())
}

/// Triples `(a, b, c)` of forms of degree `l` with `a g_x + b g_y + c g_z = 0`.
pub fn syzygy_oracle(g: &OPoly, l: i64) -> usize {
    let ml = monos_of(3, l);
    let mut cols = vec![];
    for i in 0..3 {
        let gi = g.deriv(i);
        for e in &ml {
            cols.push(OPoly::mono(e.clone(), Q::one()).mul(&gi));
        }
    }
    let (rows, n) = System { columns: cols }.matrix();
    n - rank(rows, n)
}

// --- prime field helpers ---------------------------------------------------

pub fn mod_p(c: &Q, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let num = c.numer() % &pb;
    let den = c.denom() % &pb;
    let num: i64 = (if num.is_negative() { num + &pb } else { num }).try_into().ok()?;
    let den: i64 = (if den.is_negative() { den + &pb } else { den }).try_into().ok()?;
    if den == 0 {
        return None;
    }
    Some(num as u64 * pow_mod(den as u64, p - 2, p) % p)
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u128;
    let mut b128 = b as u128 % p as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b128 % p as u128;
        }
        b128 = b128 * b128 % p as u128;
        e >>= 1;
    }
    b = r as u64;
    b
}

/// Dense rank over `F_p`.
pub fn rank_mod_p(mut a: Vec<Vec<u64>>, ncols: usize, p: u64) -> usize {
    let pp = p as u128;
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, piv);
        let inv = pow_mod(a[r][c], p - 2, p) as u128;
        for v in a[r].iter_mut() {
            *v = (*v as u128 * inv % pp) as u64;
        }
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let f = a[i][c] as u128;
                for k in c..ncols {
                    let t = (f * a[r][k] as u128) % pp;
                    a[i][k] = ((a[i][k] as u128 + pp - t) % pp) as u64;
                }
            }
        }
        r += 1;
    }
    r
}

/// `dim K[x]_{<= bound} / (span of m * g)` over `F_p`, everything dense.
pub fn quotient_dim_mod_p(gens: &[OPoly], bound: i64, p: u64) -> usize {
    let cols = monos_upto(3, bound);
    let index: BTreeMap<Vec<u32>, usize> = cols.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let mut rows = vec![];
    for g in gens {
        for e in monos_upto(3, bound - g.degree()) {
            let mg = OPoly::mono(e, Q::one()).mul(g);
            let mut row = vec![0u64; cols.len()];
            for (k, c) in &mg.terms {
                row[index[k]] = mod_p(c, p).expect("good prime");
            }
            rows.push(row);
        }
    }
    cols.len() - rank_mod_p(rows, cols.len(), p)
}

/// Evaluate at an `F_p` point.
pub fn eval_mod_p(g: &OPoly, pt: &[u64], p: u64) -> u64 {
    let mut acc = 0u128;
    for (e, c) in &g.terms {
        let mut t = mod_p(c, p).expect("good prime") as u128;
        for (i, &k) in e.iter().enumerate() {
            t = t * pow_mod(pt[i], k as u64, p) as u128 % p as u128;
        }
        acc = (acc + t) % p as u128;
    }
    acc as u64
}

/// Number of points of `F_p^3` where every generator vanishes.
pub fn exhaustive_common_zeros(gens: &[OPoly], p: u64) -> usize {
    let mut n = 0;
    for x in 0..p {
        for y in 0..p {
            for z in 0..p {
                if gens.iter().all(|g| eval_mod_p(g, &[x, y, z], p) == 0) {
                    n += 1;
                }
            }
        }
    }
    n
}

pub fn all_reducible_mod(gens: &[OPoly], p: u64) -> bool {
    gens.iter().all(|g| g.terms.values().all(|c| mod_p(c, p).is_some()))
}

/// Library polynomial in `x, y, z` (and `w`) over the rationals.
pub fn to_lib(p: &OPoly) -> Polynomial {
    const NAMES: [&str; 4] = ["x", "y", "z", "w"];
    let mut text = String::from("0");
    for (e, c) in &p.terms {
        if c < &Q::zero() {
            text.push_str(&format!(" - {}", -c));
        } else {
            text.push_str(&format!(" + {c}"));
        }
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                text.push_str(&format!("*{}^{k}", NAMES[i]));
            }
        }
    }
    Polynomial::parse(&text, picard_core::FieldDescriptor::Rationals, p.nvars).expect("oracle text parses")
}

pub fn from_lib_solution(sol: &picard_core::PicardSolution) -> [OPoly; 4] {
    [&sol.a, &sol.b, &sol.c, &sol.n].map(OPoly::from_lib)
}

/// Coefficient vector in the oracle's unknown order.
pub fn picard_vector(s: &SurfaceModel, sol: &[OPoly; 4]) -> Vec<Q> {
    let d = s.degree as i64;
    let m2 = monos_upto(3, d - 2);
    let m3 = monos_upto(3, d - 3);
    let mut v: Vec<Q> = sol[..3].iter().flat_map(|p| m2.iter().map(|e| p.coefficient(e))).collect();
    v.extend(m3.iter().map(|e| sol[3].coefficient(e)));
    v
}

/// Whether every vector of `vs` lies in the span of `basis`.
pub fn spans(basis: &[Vec<Q>], vs: &[Vec<Q>], ncols: usize) -> bool {
    let r = rank(basis.to_vec(), ncols);
    let all: Vec<Vec<Q>> = basis.iter().chain(vs).cloned().collect();
    rank(all, ncols) == r
}
