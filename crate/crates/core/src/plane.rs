//! Low-degree syzygies among the partials of a plane curve `g(x, y, z) = 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::linalg::{coefficient_matrix, nullspace_basis, rank, CoeffMatrix, LinearIdentity, NullspaceBasis};
use crate::monomial::{Degree, Monomial};
use crate::poly::Polynomial;
use crate::surface::ScalarText;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaneCurveDocument {
    #[serde(default)]
    pub name: String,
    #[serde(default = "default_field")]
    pub field: String,
    pub g: String,
    pub nodal: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub nodes: Vec<Vec<ScalarText>>,
}

fn default_field() -> String {
    "rationals".to_string()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurve {
    pub name: String,
    pub g: Polynomial,
    pub degree: u32,
    pub nodal: bool,
    pub nodes: Vec<Vec<Scalar>>,
}

pub fn load_plane_curve(text: &str) -> Result<PlaneCurve> {
    let doc: PlaneCurveDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
        pos: e.column(),
        msg: format!("line {}: {e}", e.line()),
    })?;
    PlaneCurve::from_document(&doc)
}

impl PlaneCurve {
    pub fn new(g: Polynomial, nodal: bool) -> Result<PlaneCurve> {
        let degree = match g.degree() {
            Degree::Finite(n) if n >= 1 && g.nvars() == 3 && g.is_homogeneous() => n,
            _ => {
                return Err(Error::InvariantViolation {
                    which: "plane curve is a nonconstant ternary form".into(),
                    witness: g.to_string(),
                })
            }
        };
        Ok(PlaneCurve { name: String::new(), g, degree, nodal, nodes: Vec::new() })
    }

    pub fn from_document(doc: &PlaneCurveDocument) -> Result<PlaneCurve> {
        let field: FieldDescriptor = doc.field.parse()?;
        let mut c = PlaneCurve::new(Polynomial::parse(&doc.g, field, 3)?, doc.nodal)?;
        c.name = doc.name.clone();
        c.nodes = doc
            .nodes
            .iter()
            .map(|pt| pt.iter().map(|v| field.parse_scalar(&v.as_text())).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        for pt in &c.nodes {
            if !is_node(&c.g, pt)? {
                let parts: Vec<String> = pt.iter().map(ToString::to_string).collect();
                return Err(Error::InvariantViolation {
                    which: "declared node is an ordinary double point".into(),
                    witness: format!("[{}]", parts.join(", ")),
                });
            }
        }
        Ok(c)
    }

    pub fn field(&self) -> FieldDescriptor {
        self.g.field()
    }

    /// The same curve over `target`; declared nodes must stay nodes.
    pub fn reduce_to(&self, target: FieldDescriptor) -> Result<PlaneCurve> {
        let mut c = PlaneCurve::new(self.g.change_field(target)?, self.nodal)?;
        if c.degree != self.degree {
            return Err(Error::InvariantViolation { which: "reduction keeps the degree".into(), witness: c.g.to_string() });
        }
        c.name = self.name.clone();
        for pt in &self.nodes {
            let image = pt.iter().map(|v| target.convert(v)).collect::<Result<Vec<_>>>()?;
            if !is_node(&c.g, &image)? {
                return Err(Error::InvariantViolation {
                    which: "declared node survives the reduction".into(),
                    witness: image.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
                });
            }
            c.nodes.push(image);
        }
        Ok(c)
    }
}

/// `g` and its partials vanish at `pt` and the Hessian there has rank two.
pub fn is_node(g: &Polynomial, pt: &[Scalar]) -> Result<bool> {
    let field = g.field();
    if pt.len() != 3 || pt.iter().all(|c| field.is_zero(c)) {
        return Ok(false);
    }
    if !field.is_zero(&g.evaluate(pt)?) {
        return Ok(false);
    }
    for i in 0..3 {
        if !field.is_zero(&g.d(i).evaluate(pt)?) {
            return Ok(false);
        }
    }
    let hessian = (0..3)
        .map(|i| (0..3).map(|j| g.d(i).d(j).evaluate(pt)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(rank(&CoeffMatrix::from_dense(field, &hessian, 3, "hessian")?) == 2)
}

#[derive(Clone, Debug)]
pub struct SyzygySpace {
    pub l: i64,
    pub basis: NullspaceBasis,
    /// `(P_1, P_2, P_3)` for each basis vector.
    pub triples: Vec<[Polynomial; 3]>,
}

impl SyzygySpace {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }
}

/// Triples of forms of degree `l` with `P_1 g_x + P_2 g_y + P_3 g_z = 0`.
pub fn syzygy_space(curve: &PlaneCurve, l: i64) -> Result<SyzygySpace> {
    if l < 0 {
        return Err(Error::ContractViolation(format!("syzygy degree {l} is negative")));
    }
    let field = curve.field();
    let ansatz: Vec<Polynomial> = Monomial::of_degree(3, l as u32)
        .into_iter()
        .map(|m| Polynomial::monomial(field, 3, m, field.one()))
        .collect();
    let mut id = LinearIdentity::new(field, 3, format!("syzygies of degree {l} among the partials of {}", curve.g));
    for i in 0..3 {
        let u = id.unknown(format!("P{}", i + 1), ansatz.clone());
        id.term(curve.g.d(i), u);
    }
    let basis = nullspace_basis(&coefficient_matrix(&id)?);
    let mut triples = Vec::with_capacity(basis.dim());
    for v in &basis.vectors {
        let vals = id.decode(v);
        let r = id.residual(&vals)?;
        if !r.is_zero() {
            return Err(Error::InvariantViolation { which: "emitted syzygy".into(), witness: r.to_string() });
        }
        triples.push(vals.try_into().expect("three unknowns"));
    }
    Ok(SyzygySpace { l, basis, triples })
}

/// No syzygy of degree `l <= n - 2` for a curve declared nodal.
pub fn castelnuovo_check(curve: &PlaneCurve) -> Result<bool> {
    if !curve.nodal {
        return Err(Error::ContractViolation("curve is not declared nodal".into()));
    }
    for l in 0..=(curve.degree as i64 - 2) {
        if syzygy_space(curve, l)?.dim() != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}
