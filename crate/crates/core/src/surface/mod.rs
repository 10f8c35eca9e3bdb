//! Projected surfaces `F(x, y, z, w) = 0` together with their declared double
//! curve, and the data of the three coordinate pencils.

mod document;
mod jacobian;

pub use document::{DoubleCurveDocument, Expected, ScalarText, SurfaceDocument};
pub use jacobian::{jacobian_count, quotient_dimension, zeuthen_segre_formula};

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::monomial::Degree;
use crate::poly::{CoordinateChange, Polynomial};

/// Seed used to build the `_random` variant of a fixture.
pub const RANDOM_VARIANT_SEED: u64 = 20_240_917;

/// The double curve as declared by a fixture.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCurve {
    /// Homogeneous generators of the ideal of the curve.
    pub generators: Vec<Polynomial>,
    /// Points of the curve, four homogeneous coordinates each.
    pub samples: Vec<Vec<Scalar>>,
    /// Rational parametrizations of components, four polynomials in `t`.
    pub parametrizations: Vec<Vec<Polynomial>>,
}

impl DoubleCurve {
    pub fn is_empty(&self) -> bool {
        self.generators.is_empty() && self.samples.is_empty() && self.parametrizations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceModel {
    pub name: String,
    pub field: FieldDescriptor,
    /// Homogeneous equation in `x, y, z, w`.
    pub equation: Polynomial,
    /// Affine equation in the chart `w = 1`.
    pub affine: Polynomial,
    pub degree: u32,
    pub double_curve: DoubleCurve,
    pub ordinary: bool,
    pub generic_coordinates: bool,
    pub triple_points: Option<u32>,
    pub expected: Option<Expected>,
    pub waiver: Option<String>,
}

/// One of the coordinate pencils `x = const`, `y = const`, `z = const`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilData {
    /// 1, 2 or 3.
    pub axis: usize,
    /// `{f, f_y, f_z}` for axis 1, cyclically for the others.
    pub jacobian_generators: [Polynomial; 3],
    /// The polar surface `F_axis`.
    pub polar: Polynomial,
}

/// Parses and validates a JSON surface document.
pub fn load_surface(text: &str) -> Result<SurfaceModel> {
    let doc: SurfaceDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
        pos: e.column(),
        msg: format!("line {}: {e}", e.line()),
    })?;
    SurfaceModel::from_document(&doc)
}

fn violation(which: &str, witness: String) -> Error {
    Error::InvariantViolation { which: which.to_string(), witness }
}

fn point_text(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

impl SurfaceModel {
    pub fn from_document(doc: &SurfaceDocument) -> Result<SurfaceModel> {
        let field: FieldDescriptor = doc.field.parse()?;
        let equation = Polynomial::parse(&doc.equation, field, 4)?;
        let degree = match equation.degree() {
            Degree::Finite(d) if d >= 1 => d,
            _ => return Err(violation("surface degree must be at least 1", doc.equation.clone())),
        };
        if !equation.is_homogeneous() {
            return Err(violation("F must be homogeneous", doc.equation.clone()));
        }
        let generators = doc
            .double_curve
            .generators
            .iter()
            .map(|g| Polynomial::parse(g, field, 4))
            .collect::<Result<Vec<_>>>()?;
        let samples = doc
            .double_curve
            .samples
            .iter()
            .map(|pt| pt.iter().map(|c| field.parse_scalar(&c.as_text())).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let parametrizations = doc
            .double_curve
            .parametrizations
            .iter()
            .map(|comp| comp.iter().map(|p| Polynomial::parse(p, field, 1)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let s = SurfaceModel {
            name: doc.name.clone(),
            field,
            affine: equation.dehomogenize()?,
            equation,
            degree,
            double_curve: DoubleCurve { generators, samples, parametrizations },
            ordinary: doc.ordinary,
            generic_coordinates: doc.generic_coordinates,
            triple_points: doc.triple_points,
            expected: doc.expected.clone(),
            waiver: doc.waiver.clone(),
        };
        s.validate()?;
        Ok(s)
    }

    pub fn to_document(&self) -> SurfaceDocument {
        let dc = &self.double_curve;
        SurfaceDocument {
            name: self.name.clone(),
            field: self.field.to_string(),
            equation: self.equation.to_string(),
            double_curve: DoubleCurveDocument {
                generators: dc.generators.iter().map(ToString::to_string).collect(),
                samples: dc
                    .samples
                    .iter()
                    .map(|pt| pt.iter().map(|c| ScalarText::Text(c.to_string())).collect())
                    .collect(),
                parametrizations: dc
                    .parametrizations
                    .iter()
                    .map(|comp| comp.iter().map(ToString::to_string).collect())
                    .collect(),
            },
            ordinary: self.ordinary,
            generic_coordinates: self.generic_coordinates,
            triple_points: self.triple_points,
            expected: self.expected.clone(),
            waiver: self.waiver.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("document serializes")
    }

    /// Checks that the declared double curve lies in the singular locus and
    /// that generators, samples and parametrizations agree with each other.
    pub fn validate(&self) -> Result<()> {
        let partials = self.partials();
        let dc = &self.double_curve;
        for g in &dc.generators {
            if g.is_zero() || !g.is_homogeneous() || g.nvars() != 4 {
                return Err(violation("double-curve generators must be nonzero homogeneous forms", g.to_string()));
            }
        }
        for pt in &dc.samples {
            if pt.len() != 4 {
                return Err(violation("sample points need four coordinates", point_text(pt)));
            }
            if pt.iter().all(|c| self.field.is_zero(c)) {
                return Err(violation("sample point is the zero vector", point_text(pt)));
            }
            for g in &dc.generators {
                if !self.field.is_zero(&g.evaluate(pt)?) {
                    return Err(violation(
                        "double-curve generator vanishes at every sample",
                        format!("generator {g} at {}", point_text(pt)),
                    ));
                }
            }
            if !self.field.is_zero(&self.equation.evaluate(pt)?) {
                return Err(violation("F vanishes at every sample", point_text(pt)));
            }
            for (i, fi) in partials.iter().enumerate() {
                if !self.field.is_zero(&fi.evaluate(pt)?) {
                    return Err(violation(
                        "all partials vanish at every sample",
                        format!("F_{} at {}", i + 1, point_text(pt)),
                    ));
                }
            }
        }
        for comp in &dc.parametrizations {
            if comp.len() != 4 {
                return Err(violation("parametrizations need four coordinates", comp.len().to_string()));
            }
            if comp.iter().all(|p| p.degree() == Degree::Finite(0) || p.is_zero()) {
                return Err(violation("parametrization is constant", param_text(comp)));
            }
            let mut checks: Vec<(String, &Polynomial)> = vec![("F".into(), &self.equation)];
            checks.extend(partials.iter().enumerate().map(|(i, p)| (format!("F_{}", i + 1), p)));
            checks.extend(dc.generators.iter().map(|g| (format!("generator {g}"), g)));
            for (label, p) in checks {
                if !p.substitute(comp)?.is_zero() {
                    return Err(violation(
                        "double curve lies in the singular locus",
                        format!("{label} on {}", param_text(comp)),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn has_double_curve(&self) -> bool {
        !self.double_curve.is_empty()
    }

    /// `F` does not involve `w`: the surface is a cone with vertex `[0:0:0:1]`.
    pub fn is_cone(&self) -> bool {
        self.equation.d(3).is_zero()
    }

    /// `F_1 .. F_4`.
    pub fn partials(&self) -> [Polynomial; 4] {
        [0, 1, 2, 3].map(|i| self.equation.d(i))
    }

    /// `f_x, f_y, f_z`.
    pub fn affine_partials(&self) -> [Polynomial; 3] {
        [0, 1, 2].map(|i| self.affine.d(i))
    }

    /// Reduces coefficients, samples and parametrizations into `target`.
    pub fn reduce_to(&self, target: FieldDescriptor) -> Result<SurfaceModel> {
        if target == self.field {
            return Ok(self.clone());
        }
        let dc = &self.double_curve;
        let s = SurfaceModel {
            name: self.name.clone(),
            field: target,
            equation: self.equation.change_field(target)?,
            affine: self.affine.change_field(target)?,
            degree: self.degree,
            double_curve: DoubleCurve {
                generators: dc.generators.iter().map(|g| g.change_field(target)).collect::<Result<_>>()?,
                samples: dc
                    .samples
                    .iter()
                    .map(|pt| pt.iter().map(|c| target.convert(c)).collect::<Result<Vec<_>>>())
                    .collect::<Result<_>>()?,
                parametrizations: dc
                    .parametrizations
                    .iter()
                    .map(|comp| comp.iter().map(|p| p.change_field(target)).collect::<Result<Vec<_>>>())
                    .collect::<Result<_>>()?,
            },
            ..self.clone()
        };
        if s.equation.degree() != self.equation.degree() {
            return Err(violation("reduction keeps the degree", format!("{} over {target}", self.equation)));
        }
        // samples may collapse to zero or leave the singular locus mod p
        s.validate()?;
        Ok(s)
    }

    /// The surface in the coordinates `x -> M x`: `F(M x)`, with the double
    /// curve data transported along.
    pub fn with_coordinate_change(&self, change: &CoordinateChange) -> Result<SurfaceModel> {
        let equation = change.apply(&self.equation)?;
        let dc = &self.double_curve;
        let s = SurfaceModel {
            affine: equation.dehomogenize()?,
            equation,
            double_curve: DoubleCurve {
                generators: dc.generators.iter().map(|g| change.apply(g)).collect::<Result<_>>()?,
                samples: dc.samples.iter().map(|pt| change.map_point(pt)).collect::<Result<_>>()?,
                parametrizations: dc
                    .parametrizations
                    .iter()
                    .map(|comp| change.map_curve(comp))
                    .collect::<Result<_>>()?,
            },
            ..self.clone()
        };
        s.validate()?;
        Ok(s)
    }

    /// Seeded random coordinates; the result is flagged generic.
    pub fn randomized(&self, seed: u64) -> Result<SurfaceModel> {
        let change = CoordinateChange::random(self.field, 4, seed);
        let mut s = self.with_coordinate_change(&change)?;
        s.generic_coordinates = true;
        Ok(s)
    }
}

fn param_text(comp: &[Polynomial]) -> String {
    let parts: Vec<String> = comp.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// The jacobian system and polar surface of coordinate pencil `axis`.
pub fn pencil_data(s: &SurfaceModel, axis: usize) -> Result<PencilData> {
    if !(1..=3).contains(&axis) {
        return Err(Error::IndexOutOfRange { index: axis, len: 4 });
    }
    let [fx, fy, fz] = s.affine_partials();
    let f = s.affine.clone();
    let jacobian_generators = match axis {
        1 => [f, fy, fz],
        2 => [f, fz, fx],
        _ => [f, fx, fy],
    };
    Ok(PencilData { axis, jacobian_generators, polar: s.equation.d(axis - 1) })
}

#[cfg(test)]
mod tests {
    use super::*;

    const STEINER: &str = r#"{
        "name": "steiner",
        "F": "x^2*y^2+y^2*z^2+x^2*z^2-x*y*z*w",
        "double_curve": {
            "generators": ["x*y", "y*z", "x*z"],
            "samples": [[1, 0, 0, 0], [0, 1, 0, 5], ["0", "0", "-3/2", "1"]]
        },
        "ordinary": true
    }"#;

    #[test]
    fn steiner_loads() {
        let s = load_surface(STEINER).unwrap();
        assert_eq!(s.degree, 4);
        assert!(s.has_double_curve());
        assert!(!s.is_cone());
        let back = SurfaceModel::from_document(&s.to_document()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn off_curve_sample_is_rejected() {
        let bad = STEINER.replace("[1, 0, 0, 0]", "[1, 1, 0, 0]");
        match load_surface(&bad) {
            Err(Error::InvariantViolation { witness, .. }) => assert!(witness.contains("[1, 1, 0, 0]"), "{witness}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sample_outside_singular_locus_is_rejected() {
        let doc = r#"{"F": "x^2+y^2+z^2+w^2", "double_curve": {"samples": [["1", "0", "0", "0"]]}, "ordinary": true}"#;
        assert!(matches!(load_surface(doc), Err(Error::InvariantViolation { .. })));
    }

    #[test]
    fn malformed_documents() {
        for bad in [
            "",
            "{}",
            r#"{"F": "x^2+y", "ordinary": true}"#,
            r#"{"F": "1", "ordinary": true}"#,
            r#"{"F": "x^2", "ordinary": true, "bogus": 1}"#,
            r#"{"F": "x^2", "ordinary": true, "field": "prime:9"}"#,
        ] {
            assert!(load_surface(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn pencil_systems_are_cyclic() {
        let s = load_surface(r#"{"F": "x^4+y^4+z^4+w^4", "ordinary": true}"#).unwrap();
        let q = FieldDescriptor::Rationals;
        let p = |t| Polynomial::parse(t, q, 3).unwrap();
        let p1 = pencil_data(&s, 1).unwrap();
        assert_eq!(p1.jacobian_generators, [p("x^4+y^4+z^4+1"), p("4*y^3"), p("4*z^3")]);
        let p2 = pencil_data(&s, 2).unwrap();
        assert_eq!(p2.jacobian_generators, [p("x^4+y^4+z^4+1"), p("4*z^3"), p("4*x^3")]);
        assert!(pencil_data(&s, 0).is_err());
        let quadric = load_surface(r#"{"F": "x^2+y^2+z^2+w^2", "ordinary": true}"#).unwrap();
        assert_eq!(pencil_data(&quadric, 1).unwrap().jacobian_generators[1], p("2*y"));
    }

    #[test]
    fn randomized_transports_double_curve() {
        let s = load_surface(STEINER).unwrap();
        let r = s.randomized(3).unwrap();
        assert!(r.generic_coordinates);
        assert_eq!(r.equation.degree(), Degree::Finite(4));
        assert!(!r.is_cone());
    }

    #[test]
    fn reduction_refuses_bad_denominators() {
        let s = load_surface(r#"{"F": "1/5*x^2+y^2+z^2+w^2", "ordinary": true}"#).unwrap();
        assert!(s.reduce_to(FieldDescriptor::prime(5).unwrap()).is_err());
        let r = s.reduce_to(FieldDescriptor::prime(7).unwrap()).unwrap();
        assert_eq!(r.equation.to_string(), "3*x^2+y^2+z^2+w^2");
    }
}
