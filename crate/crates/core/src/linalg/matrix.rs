use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::monomial::Monomial;
use crate::poly::Polynomial;

/// Sparse exact matrix, stored row-major; rows and columns carry labels
/// (monomials and unknown coefficients when built from an identity).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffMatrix {
    pub field: FieldDescriptor,
    pub nrows: usize,
    pub ncols: usize,
    /// Each row sorted by column, zero entries never stored.
    pub rows: Vec<Vec<(usize, Scalar)>>,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub provenance: String,
}

impl CoeffMatrix {
    pub fn from_dense(field: FieldDescriptor, dense: &[Vec<Scalar>], ncols: usize, provenance: &str) -> Result<Self> {
        let mut rows = Vec::with_capacity(dense.len());
        for r in dense {
            if r.len() != ncols {
                return Err(Error::IndexOutOfRange { index: r.len(), len: ncols });
            }
            rows.push(
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !field.is_zero(v))
                    .map(|(c, v)| (c, v.clone()))
                    .collect(),
            );
        }
        Ok(CoeffMatrix {
            field,
            nrows: dense.len(),
            ncols,
            rows,
            row_labels: Vec::new(),
            col_labels: Vec::new(),
            provenance: provenance.to_string(),
        })
    }

    pub fn from_i64(field: FieldDescriptor, dense: &[Vec<i64>], provenance: &str) -> Result<Self> {
        let ncols = dense.first().map_or(0, Vec::len);
        let scalars: Vec<Vec<Scalar>> = dense.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
        Self::from_dense(field, &scalars, ncols, provenance)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        let f = &self.field;
        self.rows
            .iter()
            .map(|r| r.iter().fold(f.zero(), |acc, (c, a)| f.add(&acc, &f.mul(a, &v[*c]))))
            .collect()
    }

    pub fn annihilates(&self, v: &[Scalar]) -> bool {
        v.len() == self.ncols && self.mul_vec(v).iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> CoeffMatrix {
        let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.ncols];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                cols[*c].push((r, v.clone()));
            }
        }
        CoeffMatrix {
            field: self.field,
            nrows: self.ncols,
            ncols: self.nrows,
            rows: cols,
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
            provenance: format!("transpose of {}", self.provenance),
        }
    }
}

/// An unknown polynomial written as a combination of ansatz polynomials.
#[derive(Clone, Debug)]
pub struct Unknown {
    pub name: String,
    pub ansatz: Vec<Polynomial>,
}

/// `coefficient * product(unknowns)`; linear identities have exactly one
/// unknown per term.
#[derive(Clone, Debug)]
pub struct IdentityTerm {
    pub coefficient: Polynomial,
    pub unknowns: Vec<usize>,
}

/// The identity `sum(terms) = 0`, to be solved for the ansatz coefficients.
#[derive(Clone, Debug)]
pub struct LinearIdentity {
    pub field: FieldDescriptor,
    pub nvars: usize,
    pub unknowns: Vec<Unknown>,
    pub terms: Vec<IdentityTerm>,
    pub provenance: String,
}

impl LinearIdentity {
    pub fn new(field: FieldDescriptor, nvars: usize, provenance: impl Into<String>) -> Self {
        LinearIdentity { field, nvars, unknowns: Vec::new(), terms: Vec::new(), provenance: provenance.into() }
    }

    pub fn unknown(&mut self, name: impl Into<String>, ansatz: Vec<Polynomial>) -> usize {
        self.unknowns.push(Unknown { name: name.into(), ansatz });
        self.unknowns.len() - 1
    }

    pub fn term(&mut self, coefficient: Polynomial, unknown: usize) {
        self.terms.push(IdentityTerm { coefficient, unknowns: vec![unknown] });
    }

    pub fn ncols(&self) -> usize {
        self.unknowns.iter().map(|u| u.ansatz.len()).sum()
    }

    /// Column offset of each unknown block.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.unknowns
            .iter()
            .map(|u| {
                let o = acc;
                acc += u.ansatz.len();
                o
            })
            .collect()
    }

    /// Unknown polynomials encoded by a coefficient vector.
    pub fn decode(&self, v: &[Scalar]) -> Vec<Polynomial> {
        let offsets = self.offsets();
        self.unknowns
            .iter()
            .zip(offsets)
            .map(|(u, o)| {
                u.ansatz.iter().enumerate().fold(Polynomial::zero(self.field, self.nvars), |acc, (k, b)| {
                    &acc + &b.scale(&v[o + k])
                })
            })
            .collect()
    }

    /// `sum(terms)` with the unknowns replaced by `values`, computed by
    /// polynomial arithmetic only.
    pub fn residual(&self, values: &[Polynomial]) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.field, self.nvars);
        for t in &self.terms {
            let mut prod = t.coefficient.clone();
            for &u in &t.unknowns {
                prod = prod.checked_mul(&values[u])?;
            }
            acc = acc.checked_add(&prod)?;
        }
        Ok(acc)
    }
}

/// Matrix whose nullspace is the solution set of `identity` inside the
/// declared ansatz spaces. Rows are indexed by monomials, descending.
pub fn coefficient_matrix(identity: &LinearIdentity) -> Result<CoeffMatrix> {
    let field = identity.field;
    let offsets = identity.offsets();
    let mut columns: BTreeMap<usize, Polynomial> = BTreeMap::new();
    for t in &identity.terms {
        if t.unknowns.len() != 1 {
            return Err(Error::NotLinear(format!(
                "term of {} carries {} unknowns",
                identity.provenance,
                t.unknowns.len()
            )));
        }
        let u = t.unknowns[0];
        let unknown = identity
            .unknowns
            .get(u)
            .ok_or(Error::IndexOutOfRange { index: u, len: identity.unknowns.len() })?;
        for (k, b) in unknown.ansatz.iter().enumerate() {
            let prod = t.coefficient.checked_mul(b)?;
            if prod.field() != field || prod.nvars() != identity.nvars {
                return Err(Error::IncompatibleOperands(format!("term ring differs in {}", identity.provenance)));
            }
            let col = offsets[u] + k;
            let entry = columns.entry(col).or_insert_with(|| Polynomial::zero(field, identity.nvars));
            *entry = &*entry + &prod;
        }
    }
    let mut monos: Vec<Monomial> = columns.values().flat_map(|p| p.terms().map(|(m, _)| *m)).collect();
    monos.sort_by(|a, b| b.cmp(a));
    monos.dedup();
    let row_of: BTreeMap<Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); monos.len()];
    for (col, p) in &columns {
        for (m, c) in p.terms() {
            rows[row_of[m]].push((*col, c.clone()));
        }
    }
    for r in rows.iter_mut() {
        r.sort_by_key(|e| e.0);
    }
    let row_labels = monos
        .iter()
        .map(|m| Polynomial::monomial(field, identity.nvars, *m, field.one()).to_string())
        .collect();
    let col_labels = identity
        .unknowns
        .iter()
        .flat_map(|u| (0..u.ansatz.len()).map(move |k| format!("{}[{k}]", u.name)))
        .collect();
    Ok(CoeffMatrix {
        field,
        nrows: monos.len(),
        ncols: identity.ncols(),
        rows,
        row_labels,
        col_labels,
        provenance: identity.provenance.clone(),
    })
}
