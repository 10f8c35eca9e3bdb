use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::adjoint::{adjoint_space_with, AdjointStrategy};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::homogeneous::{gral_solve, homogenize_solution_in};
use crate::linalg::{CoeffMatrix, EngineOptions};
use crate::picard::{
    chart_identity_check, defect_polynomial, degree_bound_applies, integrability_defect, within_degree_bound, severi_structure_check, solve_picard_with,
    PicardSolution,
};
use crate::plane::{castelnuovo_check, syzygy_space, PlaneCurve};
use crate::surface::{jacobian_count, zeuthen_segre_formula, SurfaceModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Operation {
    Adjoint,
    Picard,
    Defect,
    Homogeneous,
    Gral,
    Severi,
    Qan,
    Pg,
    Delta,
    Czlemma,
    Scan,
}

impl Operation {
    pub const ALL: [Operation; 11] = [
        Operation::Adjoint,
        Operation::Picard,
        Operation::Defect,
        Operation::Homogeneous,
        Operation::Gral,
        Operation::Severi,
        Operation::Qan,
        Operation::Pg,
        Operation::Delta,
        Operation::Czlemma,
        Operation::Scan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Operation::Adjoint => "adjoint",
            Operation::Picard => "picard",
            Operation::Defect => "defect",
            Operation::Homogeneous => "homogeneous",
            Operation::Gral => "gral",
            Operation::Severi => "severi",
            Operation::Qan => "qan",
            Operation::Pg => "pg",
            Operation::Delta => "delta",
            Operation::Czlemma => "czlemma",
            Operation::Scan => "scan",
        }
    }
}

impl std::str::FromStr for Operation {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Operation::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| format!("unknown operation {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub ops: BTreeSet<Operation>,
    pub strategy: Option<AdjointStrategy>,
    pub engine: EngineOptions,
    /// Keep the assembled coefficient matrices in the report.
    pub keep_matrices: bool,
}

impl AnalysisOptions {
    pub fn new(ops: impl IntoIterator<Item = Operation>) -> Self {
        AnalysisOptions {
            ops: ops.into_iter().collect(),
            strategy: None,
            engine: EngineOptions::default(),
            keep_matrices: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionStrings {
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
    #[serde(rename = "C")]
    pub c: String,
    #[serde(rename = "N")]
    pub n: String,
}

impl From<&PicardSolution> for SolutionStrings {
    fn from(s: &PicardSolution) -> Self {
        let [a, b, c, n] = s.strings();
        SolutionStrings { a, b, c, n }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjointEntry {
    pub m: i64,
    pub dim: usize,
    pub strategy: AdjointStrategy,
    pub certified: bool,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectEntry {
    pub solution: usize,
    #[serde(rename = "Q")]
    pub q: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogeneousEntry {
    pub relation_ok: bool,
    pub minors_adjoint: bool,
    /// One flag per basis solution.
    pub divergence_zero: Vec<bool>,
    pub divergences: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GralEntry {
    pub space_dim: usize,
    pub trivial_dim: usize,
    pub nontrivial: bool,
    /// `[Y1, Y2, Y3, Y4, Q]` per basis vector.
    pub basis: Vec<[String; 5]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeveriEntry {
    pub passed: Vec<bool>,
    pub jacobian_points_checked: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PicardEntry {
    pub dim: usize,
    pub basis: Vec<SolutionStrings>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defects: Option<Vec<DefectEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chart_identity: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homogeneous: Option<HomogeneousEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub severi: Option<SeveriEntry>,
    pub adjoint_certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QanEntry {
    pub value: usize,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaEntry {
    pub axis: usize,
    pub value: usize,
    /// `e + 4(g - 1) + d` from the fixture's `e` and `g`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula: Option<i64>,
    /// `d (d - 1)^2`, the count for a smooth surface.
    pub smooth_count: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedRow {
    pub quantity: String,
    pub expected: i64,
    pub computed: i64,
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub op: String,
    pub kind: String,
    pub message: String,
}

impl ErrorRecord {
    pub fn new(op: &str, e: &Error) -> Self {
        ErrorRecord { op: op.to_string(), kind: e.kind().to_string(), message: e.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub surface: String,
    pub field: String,
    pub degree: u32,
    pub ordinary: bool,
    pub generic_coordinates: bool,
    pub operations: Vec<Operation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub adjoint: Option<AdjointEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub picard: Option<PicardEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gral: Option<GralEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_an: Option<QanEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_g: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<DeltaEntry>,
    pub expected: Vec<ExpectedRow>,
    pub warnings: Vec<String>,
    pub failures: Vec<String>,
    pub errors: Vec<ErrorRecord>,
    #[serde(skip)]
    pub matrices: Vec<(String, CoeffMatrix)>,
}

impl AnalysisReport {
    /// No assertion-level failures and no operation errors.
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.errors.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

/// Nonzero points of the three jacobian systems, found by exhaustive search
/// over a small prime field; empty otherwise.
pub fn jacobian_points(s: &SurfaceModel) -> Result<Vec<Vec<Scalar>>> {
    const MAX_EXHAUSTIVE_PRIME: u64 = 31;
    let FieldDescriptor::Prime(p) = s.field else { return Ok(Vec::new()) };
    if p > MAX_EXHAUSTIVE_PRIME {
        return Ok(Vec::new());
    }
    let partials = s.affine_partials();
    let mut out = Vec::new();
    for x in 0..p {
        for y in 0..p {
            for z in 0..p {
                let pt = [x, y, z].map(Scalar::Residue).to_vec();
                if !s.field.is_zero(&s.affine.evaluate(&pt)?) {
                    continue;
                }
                let zeros = partials
                    .iter()
                    .map(|q| q.evaluate(&pt).map(|v| s.field.is_zero(&v)))
                    .collect::<Result<Vec<_>>>()?;
                if zeros.iter().filter(|z| **z).count() >= 2 {
                    out.push(pt);
                }
            }
        }
    }
    Ok(out)
}

struct Ctx<'a> {
    s: &'a SurfaceModel,
    report: AnalysisReport,
}

impl Ctx<'_> {
    fn strict(&self) -> bool {
        self.s.ordinary && self.s.generic_coordinates
    }

    /// Failure on ordinary generic surfaces, warning elsewhere.
    fn conditional(&mut self, msg: String) {
        if self.strict() {
            self.report.failures.push(msg);
        } else {
            self.report.warnings.push(msg);
        }
    }

    fn error(&mut self, op: &str, e: &Error) {
        self.report.errors.push(ErrorRecord::new(op, e));
    }

    fn compare(&mut self, quantity: &str, expected: Option<i64>, computed: i64) {
        let Some(expected) = expected else { return };
        let status = if expected == computed {
            "match"
        } else if self.s.waiver.is_some() {
            self.report.warnings.push(format!(
                "{quantity}: computed {computed}, expected {expected} (waived: {})",
                self.s.waiver.as_deref().unwrap_or_default()
            ));
            "waived"
        } else if self.s.field.characteristic() != 0 {
            self.report
                .warnings
                .push(format!("{quantity}: computed {computed} in positive characteristic, expected {expected}"));
            "mismatch"
        } else {
            self.report.failures.push(format!("{quantity}: computed {computed}, expected {expected}"));
            "mismatch"
        };
        self.report.expected.push(ExpectedRow {
            quantity: quantity.to_string(),
            expected,
            computed,
            status: status.to_string(),
        });
    }
}

pub fn analyze_surface(s: &SurfaceModel, opts: &AnalysisOptions) -> AnalysisReport {
    let report = AnalysisReport {
        surface: s.name.clone(),
        field: s.field.to_string(),
        degree: s.degree,
        ordinary: s.ordinary,
        generic_coordinates: s.generic_coordinates,
        operations: opts.ops.iter().copied().collect(),
        adjoint: None,
        picard: None,
        gral: None,
        q_an: None,
        p_g: None,
        delta: None,
        expected: Vec::new(),
        warnings: Vec::new(),
        failures: Vec::new(),
        errors: Vec::new(),
        matrices: Vec::new(),
    };
    let mut cx = Ctx { s, report };
    let ops = &opts.ops;
    let d = s.degree as i64;
    let expected = s.expected.clone().unwrap_or_default();

    if ops.contains(&Operation::Adjoint) {
        match adjoint_space_with(s, d - 2, opts.strategy) {
            Ok(adj) => {
                cx.report.adjoint = Some(AdjointEntry {
                    m: adj.m,
                    dim: adj.dim(),
                    strategy: adj.strategy,
                    certified: adj.certified,
                    basis: adj.basis.iter().map(ToString::to_string).collect(),
                })
            }
            Err(e) => cx.error("adjoint", &e),
        }
    }

    let picard_ops = [Operation::Picard, Operation::Defect, Operation::Homogeneous, Operation::Severi, Operation::Qan];
    if picard_ops.iter().any(|op| ops.contains(op)) {
        match solve_picard_with(s, opts.strategy, &opts.engine) {
            Ok(space) => picard_section(&mut cx, opts, space),
            Err(e) => cx.error("picard", &e),
        }
    }
    if let Some(q) = cx.report.q_an.clone() {
        cx.compare("q_an", expected.q_an.map(|v| v as i64), q.value as i64);
        cx.compare("q_a", expected.q_a.map(|v| v as i64), q.value as i64);
    }

    if ops.contains(&Operation::Pg) {
        match adjoint_space_with(s, d - 4, opts.strategy) {
            Ok(adj) => {
                cx.report.p_g = Some(adj.dim());
                cx.compare("p_g", expected.p_g.map(|v| v as i64), adj.dim() as i64);
            }
            Err(e) => cx.error("pg", &e),
        }
    }

    if ops.contains(&Operation::Gral) {
        match gral_solve(s) {
            Ok(g) => {
                if g.nontrivial {
                    cx.report.warnings.push(format!(
                        "nontrivial solution of Y.grad F = Q F ({} beyond the trivial family)",
                        g.space_dim - g.trivial_dim
                    ));
                }
                cx.report.gral = Some(GralEntry {
                    space_dim: g.space_dim,
                    trivial_dim: g.trivial_dim,
                    nontrivial: g.nontrivial,
                    basis: g
                        .basis
                        .iter()
                        .map(|b| {
                            let [y1, y2, y3, y4] = b.y.each_ref().map(ToString::to_string);
                            [y1, y2, y3, y4, b.q.to_string()]
                        })
                        .collect(),
                });
            }
            Err(e) => cx.error("gral", &e),
        }
    }

    if ops.contains(&Operation::Delta) && !s.ordinary {
        cx.report.warnings.push("delta is only computed for ordinary surfaces without double curve".into());
    } else if ops.contains(&Operation::Delta) {
        match jacobian_count(s, 1) {
            Ok(value) => {
                let formula = match (expected.e, expected.g) {
                    (Some(e), Some(g)) => Some(zeuthen_segre_formula(e, g, d)),
                    _ => None,
                };
                if let Some(fv) = formula {
                    if fv != value as i64 {
                        cx.conditional(format!("jacobian count {value} differs from e + 4(g - 1) + d = {fv}"));
                    }
                }
                cx.report.delta = Some(DeltaEntry { axis: 1, value, formula, smooth_count: d * (d - 1) * (d - 1) });
                cx.compare("delta", expected.delta, value as i64);
            }
            Err(Error::UnsupportedDoubleCurve) => {
                cx.report.warnings.push("delta is only computed for ordinary surfaces without double curve".into())
            }
            Err(e) => cx.error("delta", &e),
        }
    }

    cx.report.warnings.sort();
    cx.report.warnings.dedup();
    cx.report
}

fn picard_section(cx: &mut Ctx<'_>, opts: &AnalysisOptions, space: crate::picard::PicardSolutionSpace) {
    let s = cx.s;
    let ops = &opts.ops;
    cx.report.warnings.extend(space.warnings.iter().cloned());
    if opts.keep_matrices {
        cx.report.matrices.push(("picard".to_string(), space.matrix.clone()));
    }
    match space.injective_on_ab() {
        Ok(true) => {}
        Ok(false) => cx.report.failures.push("a nonzero solution has A = B = 0".into()),
        Err(e) => cx.error("picard", &e),
    }
    let mut entry = PicardEntry {
        dim: space.dim(),
        basis: space.basis.iter().map(SolutionStrings::from).collect(),
        defects: None,
        chart_identity: None,
        homogeneous: None,
        severi: None,
        adjoint_certified: space.adjoint.certified,
    };

    if ops.contains(&Operation::Defect) {
        let mut defects = Vec::new();
        let mut chart_ok = true;
        for (i, sol) in space.basis.iter().enumerate() {
            let q = defect_polynomial(sol);
            match integrability_defect(s, sol) {
                Ok(_) => {}
                Err(e @ (Error::InvariantViolation { .. } | Error::DegreeBoundViolated { .. })) => {
                    cx.report.failures.push(format!("solution {i}: {e}"))
                }
                Err(e) => cx.error("defect", &e),
            }
            if !q.is_zero() {
                cx.report.warnings.push(format!("solution {i} is not closed: Q = {q}"));
            }
            if !within_degree_bound(s, &q) && !matches!(degree_bound_applies(s), Ok(true)) {
                cx.report.warnings.push(format!(
                    "solution {i}: deg Q exceeds d - 4 where the degree bound argument does not apply"
                ));
            }
            match chart_identity_check(s, sol) {
                Ok(ok) => chart_ok &= ok,
                Err(e) => cx.error("defect", &e),
            }
            defects.push(DefectEntry { solution: i, q: q.to_string() });
        }
        if !chart_ok {
            cx.report.failures.push("chart identity for the derivative of the 1-form fails".into());
        }
        entry.defects = Some(defects);
        entry.chart_identity = Some(chart_ok);
    }

    if ops.contains(&Operation::Homogeneous) {
        let mut h = HomogeneousEntry {
            relation_ok: true,
            minors_adjoint: true,
            divergence_zero: Vec::new(),
            divergences: Vec::new(),
        };
        for (i, sol) in space.basis.iter().enumerate() {
            match homogenize_solution_in(s, sol, &space.adjoint) {
                Ok(hs) => {
                    h.relation_ok &= hs.relation_ok;
                    if !hs.minors_adjoint {
                        h.minors_adjoint = false;
                        cx.conditional(format!("solution {i}: a minor of M is not adjoint"));
                    }
                    h.divergence_zero.push(hs.divergence_zero);
                    h.divergences.push(hs.divergence.to_string());
                    cx.report.warnings.extend(hs.warnings);
                }
                Err(e @ Error::DegreeOverflow { .. }) => {
                    h.relation_ok = false;
                    cx.conditional(format!("solution {i}: {e}"));
                }
                Err(e) => {
                    h.relation_ok = false;
                    cx.report.failures.push(format!("solution {i}: {e}"));
                }
            }
        }
        entry.homogeneous = Some(h);
    }

    if ops.contains(&Operation::Severi) {
        let points = match jacobian_points(s) {
            Ok(p) => p,
            Err(e) => {
                cx.error("severi", &e);
                Vec::new()
            }
        };
        let mut sv = SeveriEntry { passed: Vec::new(), jacobian_points_checked: 0 };
        for (i, sol) in space.basis.iter().enumerate() {
            match severi_structure_check(s, sol, &points) {
                Ok(rep) => {
                    if !rep.passed() {
                        cx.conditional(format!("solution {i} lacks the structure predicted by Severi"));
                    }
                    sv.passed.push(rep.passed());
                    sv.jacobian_points_checked += rep.jacobian_points_checked;
                }
                Err(e) => cx.error("severi", &e),
            }
        }
        entry.severi = Some(sv);
    }

    if ops.contains(&Operation::Qan) {
        cx.report.q_an = Some(QanEntry {
            value: space.dim(),
            certified: s.ordinary && s.generic_coordinates && space.adjoint.certified,
        });
    }
    if ops.contains(&Operation::Picard)
        || ops.contains(&Operation::Defect)
        || ops.contains(&Operation::Homogeneous)
        || ops.contains(&Operation::Severi)
    {
        cx.report.picard = Some(entry);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyzygyDim {
    pub l: i64,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveReport {
    pub curve: String,
    pub field: String,
    pub degree: u32,
    pub nodal: bool,
    pub nodes: usize,
    /// Syzygy dimensions for `l = 0 .. n - 1`.
    pub syzygy_dims: Vec<SyzygyDim>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub castelnuovo: Option<bool>,
    pub warnings: Vec<String>,
    pub failures: Vec<String>,
    pub errors: Vec<ErrorRecord>,
}

impl CurveReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.errors.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

pub fn analyze_curve(c: &PlaneCurve, ops: &BTreeSet<Operation>) -> CurveReport {
    let mut r = CurveReport {
        curve: c.name.clone(),
        field: c.field().to_string(),
        degree: c.degree,
        nodal: c.nodal,
        nodes: c.nodes.len(),
        syzygy_dims: Vec::new(),
        castelnuovo: None,
        warnings: Vec::new(),
        failures: Vec::new(),
        errors: Vec::new(),
    };
    if !ops.contains(&Operation::Czlemma) {
        r.warnings.push("no curve operation requested".into());
        return r;
    }
    for l in 0..c.degree as i64 {
        match syzygy_space(c, l) {
            Ok(sp) => r.syzygy_dims.push(SyzygyDim { l, dim: sp.dim() }),
            Err(e) => r.errors.push(ErrorRecord::new("czlemma", &e)),
        }
    }
    if let Some(top) = r.syzygy_dims.last() {
        if c.degree >= 2 && top.dim < 3 {
            r.failures.push(format!("only {} syzygies in degree n - 1; the Koszul triples give 3", top.dim));
        }
    }
    match castelnuovo_check(c) {
        Ok(ok) => {
            if !ok {
                r.failures.push("nodal curve has a syzygy of degree at most n - 2".into());
            }
            r.castelnuovo = Some(ok);
        }
        Err(e) => r.errors.push(ErrorRecord::new("czlemma", &e)),
    }
    r
}
