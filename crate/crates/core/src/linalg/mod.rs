//! Exact linear algebra for coefficient matrices of polynomial identities.

mod dump;
pub mod elim;
mod matrix;
mod nullspace;

pub use dump::{parse_dump, write_dump, MAX_DUMP_DIM};
pub use matrix::{coefficient_matrix, CoeffMatrix, IdentityTerm, LinearIdentity, Unknown};
pub use nullspace::{
    echelon_form, echelon_form_with, nullspace_basis, nullspace_basis_with, rank, EngineOptions, NullspaceBasis,
    Route, RowEchelon,
};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::field::{FieldDescriptor, Scalar};
use crate::poly::Polynomial;

/// Basis (in reduced echelon form over descending monomials) of the span of `polys`.
pub fn span_basis(field: FieldDescriptor, nvars: usize, polys: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let mut monos: Vec<Monomial> = polys.iter().flat_map(|p| p.terms().map(|(m, _)| *m)).collect();
    monos.sort_by(|a, b| b.cmp(a));
    monos.dedup();
    let dense: Vec<Vec<Scalar>> = polys
        .iter()
        .map(|p| {
            if p.field() != field || p.nvars() != nvars {
                return Err(Error::IncompatibleOperands("span members live in different rings".into()));
            }
            Ok(p.coefficients_on(&monos))
        })
        .collect::<Result<_>>()?;
    let m = CoeffMatrix::from_dense(field, &dense, monos.len(), "span")?;
    Ok(echelon_form(&m)
        .rows
        .into_iter()
        .map(|row| Polynomial::from_terms(field, nvars, row.into_iter().map(|(c, v)| (monos[c], v))))
        .collect())
}

/// Solves `sum_k c_k * basis_k = target`; `None` when `target` is outside the span.
pub fn express_in_span(
    field: FieldDescriptor,
    nvars: usize,
    basis: &[Polynomial],
    target: &Polynomial,
) -> Result<Option<Vec<Scalar>>> {
    let mut id = LinearIdentity::new(field, nvars, "span membership");
    let u = id.unknown("c", basis.to_vec());
    let t = id.unknown("target", vec![target.clone()]);
    id.term(Polynomial::from_i64(field, nvars, 1), u);
    id.term(Polynomial::from_i64(field, nvars, -1), t);
    let ns = nullspace_basis(&coefficient_matrix(&id)?);
    let last = basis.len();
    // the nullspace vector with the target column free carries the combination
    Ok(ns
        .vectors
        .iter()
        .zip(&ns.free_columns)
        .find(|(_, &c)| c == last)
        .map(|(v, _)| v[..last].to_vec()))
}
