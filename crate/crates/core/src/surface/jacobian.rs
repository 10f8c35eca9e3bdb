//! Length of the jacobian scheme of a coordinate pencil, counted as the
//! dimension of `K[x, y, z] / (f, f_y, f_z)`.

use super::{pencil_data, SurfaceModel};
use crate::error::{Error, Result};
use crate::linalg::{rank, CoeffMatrix};
use crate::monomial::{Degree, Monomial};
use crate::poly::Polynomial;

/// `e + 4(g - 1) + d`.
pub fn zeuthen_segre_formula(e: i64, g: i64, d: i64) -> i64 {
    e + 4 * (g - 1) + d
}

/// `dim K[x]_{<= bound} - dim (I ∩ K[x]_{<= bound})`, with the ideal part
/// approximated by the span of `m * g` for monomials `m`, `deg(m * g) <= bound`.
pub fn quotient_dimension(gens: &[Polynomial], bound: i64) -> Result<usize> {
    let Some(first) = gens.first() else { return Ok(Monomial::up_to_degree(3, bound).len()) };
    let (field, nvars) = (first.field(), first.nvars());
    let monos = Monomial::up_to_degree(nvars, bound);
    let index: std::collections::HashMap<Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut rows = Vec::new();
    for g in gens {
        let Degree::Finite(dg) = g.degree() else { continue };
        for m in Monomial::up_to_degree(nvars, bound - dg as i64) {
            let mut row: Vec<(usize, crate::field::Scalar)> =
                g.mul_monomial(&m).terms().map(|(t, c)| (index[t], c.clone())).collect();
            row.sort_by_key(|e| e.0);
            rows.push(row);
        }
    }
    let m = CoeffMatrix {
        field,
        nrows: rows.len(),
        ncols: monos.len(),
        rows,
        row_labels: Vec::new(),
        col_labels: Vec::new(),
        provenance: format!("truncated ideal in degree <= {bound}"),
    };
    Ok(monos.len() - rank(&m))
}

/// Number of solutions with multiplicity of the jacobian system of the
/// pencil `axis`. The truncation degree starts at `3d - 5` and is doubled
/// once if the count has not stabilized.
pub fn jacobian_count(s: &SurfaceModel, axis: usize) -> Result<usize> {
    if s.has_double_curve() {
        return Err(Error::UnsupportedDoubleCurve);
    }
    let gens = pencil_data(s, axis)?.jacobian_generators;
    let d = s.degree as i64;
    let start = (3 * d - 5).max(1);
    for bound in [start, 2 * start] {
        let here = quotient_dimension(&gens, bound)?;
        if here == quotient_dimension(&gens, bound + 1)? {
            return Ok(here);
        }
    }
    Err(Error::NotZeroDimensional(format!(
        "quotient by the jacobian system of axis {axis} keeps growing past degree {}",
        2 * start + 1
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDescriptor;

    #[test]
    fn formula_values() {
        assert_eq!(zeuthen_segre_formula(9, 1, 3), 12);
        assert_eq!(zeuthen_segre_formula(4, 0, 2), 2);
        assert_eq!(zeuthen_segre_formula(0, 1, 0), 0);
    }

    #[test]
    fn monomial_ideal_quotient() {
        let q = FieldDescriptor::Rationals;
        let p = |t| Polynomial::parse(t, q, 3).unwrap();
        // (x^2, y^3, z) has 6 standard monomials
        assert_eq!(quotient_dimension(&[p("x^2"), p("y^3"), p("z")], 6).unwrap(), 6);
        // (x) alone is not zero-dimensional: the count keeps growing
        assert!(quotient_dimension(&[p("x")], 4).unwrap() < quotient_dimension(&[p("x")], 5).unwrap());
    }
}
