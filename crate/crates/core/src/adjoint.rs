//! Polynomials of bounded degree vanishing on the double curve.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::linalg::{coefficient_matrix, express_in_span, nullspace_basis, span_basis, CoeffMatrix};
use crate::monomial::{Degree, Monomial};
use crate::poly::Polynomial;
use crate::surface::SurfaceModel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AdjointStrategy {
    IdealSpan,
    PointSampling,
}

impl std::str::FromStr for AdjointStrategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ideal-span" => Ok(AdjointStrategy::IdealSpan),
            "point-sampling" => Ok(AdjointStrategy::PointSampling),
            other => Err(Error::StrategyUnavailable(format!("unknown strategy {other:?}"))),
        }
    }
}

impl std::fmt::Display for AdjointStrategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            AdjointStrategy::IdealSpan => "ideal-span",
            AdjointStrategy::PointSampling => "point-sampling",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointSpace {
    pub field: FieldDescriptor,
    pub m: i64,
    /// Affine polynomials in `x, y, z` of degree at most `m`, in echelon form.
    pub basis: Vec<Polynomial>,
    pub strategy: AdjointStrategy,
    /// False when membership was only tested on an explicit finite sample.
    pub certified: bool,
}

impl AdjointSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        if p.is_zero() {
            return Ok(true);
        }
        if !p.degree().at_most(self.m) {
            return Ok(false);
        }
        Ok(express_in_span(self.field, 3, &self.basis, p)?.is_some())
    }

    /// Coefficients of `p` against `basis`, or `None` outside the space.
    pub fn coordinates(&self, p: &Polynomial) -> Result<Option<Vec<Scalar>>> {
        if !p.degree().at_most(self.m) {
            return Ok(None);
        }
        express_in_span(self.field, 3, &self.basis, p)
    }

    /// Basis homogenized to forms of degree exactly `m` in four variables.
    pub fn homogeneous_basis(&self) -> Result<Vec<Polynomial>> {
        self.basis.iter().map(|b| b.homogenize(self.m)).collect()
    }
}

/// Adjoint polynomials of degree at most `m`, using the ideal span when
/// generators are declared and point sampling otherwise.
pub fn adjoint_space(s: &SurfaceModel, m: i64) -> Result<AdjointSpace> {
    adjoint_space_with(s, m, None)
}

pub fn adjoint_space_with(s: &SurfaceModel, m: i64, strategy: Option<AdjointStrategy>) -> Result<AdjointSpace> {
    let dc = &s.double_curve;
    let has_points = !dc.samples.is_empty() || !dc.parametrizations.is_empty();
    let strategy = match strategy {
        Some(AdjointStrategy::IdealSpan) if s.has_double_curve() && dc.generators.is_empty() => {
            return Err(Error::StrategyUnavailable("ideal-span needs double-curve generators".into()))
        }
        Some(AdjointStrategy::PointSampling) if s.has_double_curve() && !has_points => {
            return Err(Error::StrategyUnavailable("point-sampling needs samples or parametrizations".into()))
        }
        Some(st) => st,
        None if dc.generators.is_empty() && s.has_double_curve() => AdjointStrategy::PointSampling,
        None => AdjointStrategy::IdealSpan,
    };
    let field = s.field;
    if m < 0 {
        return Ok(AdjointSpace { field, m, basis: Vec::new(), strategy, certified: true });
    }
    if !s.has_double_curve() {
        let basis = Monomial::up_to_degree(3, m)
            .into_iter()
            .map(|mono| Polynomial::monomial(field, 3, mono, field.one()))
            .collect();
        return Ok(AdjointSpace { field, m, basis, strategy, certified: true });
    }
    let (forms, certified) = match strategy {
        AdjointStrategy::IdealSpan => (ideal_span(s, m)?, true),
        AdjointStrategy::PointSampling => point_sampling(s, m)?,
    };
    let affine = forms.iter().map(Polynomial::dehomogenize).collect::<Result<Vec<_>>>()?;
    // dehomogenization is injective on forms of one degree, so this is a basis
    let basis = span_basis(field, 3, &affine)?;
    Ok(AdjointSpace { field, m, basis, strategy, certified })
}

/// Degree-`m` part of the ideal generated by the declared generators.
fn ideal_span(s: &SurfaceModel, m: i64) -> Result<Vec<Polynomial>> {
    let mut products = Vec::new();
    for g in &s.double_curve.generators {
        let Degree::Finite(dg) = g.degree() else { continue };
        let rest = m - dg as i64;
        if rest < 0 {
            continue;
        }
        for mono in Monomial::of_degree(4, rest as u32) {
            products.push(g.mul_monomial(&mono));
        }
    }
    span_basis(s.field, 4, &products)
}

/// Points at which degree-`m` adjoints are required to vanish, and whether
/// they certify vanishing on the whole curve.
pub fn sample_points(s: &SurfaceModel, m: i64) -> Result<(Vec<Vec<Scalar>>, bool)> {
    let field = s.field;
    let dc = &s.double_curve;
    let mut points = dc.samples.clone();
    let mut certified = !dc.parametrizations.is_empty();
    for comp in &dc.parametrizations {
        let e = comp.iter().filter_map(|p| p.degree().finite()).max().unwrap_or(0) as i64;
        let mut needed = 3 * m.max(0) * e + 1;
        if let FieldDescriptor::Prime(p) = field {
            if needed as u64 > p {
                // not enough distinct parameter values in the field
                needed = p as i64;
                certified = false;
            }
        }
        for t in 0..needed {
            let tv = [field.from_i64(t)];
            let pt = comp.iter().map(|c| c.evaluate(&tv)).collect::<Result<Vec<_>>>()?;
            if pt.iter().any(|c| !field.is_zero(c)) {
                points.push(pt);
            }
        }
    }
    Ok((points, certified))
}

fn point_sampling(s: &SurfaceModel, m: i64) -> Result<(Vec<Polynomial>, bool)> {
    let (points, certified) = sample_points(s, m)?;
    let matrix = evaluation_matrix(s.field, m, &points)?;
    let monos = Monomial::of_degree(4, m as u32);
    let ns = nullspace_basis(&matrix);
    let forms = ns
        .vectors
        .iter()
        .map(|v| Polynomial::from_terms(s.field, 4, monos.iter().copied().zip(v.iter().cloned())))
        .collect();
    Ok((forms, certified))
}

/// Rows: sample points; columns: the degree-`m` monomials in four variables.
pub fn evaluation_matrix(field: FieldDescriptor, m: i64, points: &[Vec<Scalar>]) -> Result<CoeffMatrix> {
    let monos = Monomial::of_degree(4, m.max(0) as u32);
    let mut dense = Vec::with_capacity(points.len());
    for pt in points {
        let row = monos
            .iter()
            .map(|mono| Polynomial::monomial(field, 4, *mono, field.one()).evaluate(pt))
            .collect::<Result<Vec<_>>>()?;
        dense.push(row);
    }
    let mut mat = CoeffMatrix::from_dense(field, &dense, monos.len(), &format!("vanishing in degree {m} on samples"))?;
    mat.col_labels = monos.iter().map(|mono| Polynomial::monomial(field, 4, *mono, field.one()).to_string()).collect();
    Ok(mat)
}

/// Matrix whose nullspace gives the degree-`m` part of the ideal span, for
/// debugging dumps.
pub fn ideal_span_matrix(s: &SurfaceModel, m: i64) -> Result<Option<CoeffMatrix>> {
    if m < 0 || s.double_curve.generators.is_empty() {
        return Ok(None);
    }
    let mut id = crate::linalg::LinearIdentity::new(s.field, 4, format!("degree {m} ideal span"));
    let forms = ideal_span(s, m)?;
    let u = id.unknown("c", forms);
    id.term(Polynomial::from_i64(s.field, 4, 1), u);
    Ok(Some(coefficient_matrix(&id)?))
}
