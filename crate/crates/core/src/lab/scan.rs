//! Random surfaces over `F_p` searched for Picard solutions whose 1-form is
//! not closed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::monomial::Monomial;
use crate::picard::{defect_polynomial, degree_bound_applies, solve_picard, PicardSolution};
use crate::poly::Polynomial;
use crate::surface::{DoubleCurveDocument, SurfaceDocument, SurfaceModel};

use super::report::SolutionStrings;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Recipe {
    /// Random form in `x, y, z, w`.
    Smooth,
    /// Random form in `x, y, z`.
    Cone,
    /// `x^2 a + x y b + y^2 c` with random `a, b, c`; double along `x = y = 0`.
    DeclaredDoubleLine,
}

impl std::str::FromStr for Recipe {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "smooth" => Ok(Recipe::Smooth),
            "cone" => Ok(Recipe::Cone),
            "declared-double-line" => Ok(Recipe::DeclaredDoubleLine),
            other => Err(format!("unknown recipe {other:?}")),
        }
    }
}

impl std::fmt::Display for Recipe {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Recipe::Smooth => "smooth",
            Recipe::Cone => "cone",
            Recipe::DeclaredDoubleLine => "declared-double-line",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub p: u64,
    pub d: u32,
    pub trials: usize,
    pub seed: u64,
    pub recipe: Recipe,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Witness {
    pub trial: usize,
    pub surface: SurfaceDocument,
    pub solution: SolutionStrings,
    pub defect: String,
    pub p: u64,
    pub d: u32,
    pub recipe: Recipe,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    pub witnesses: usize,
    /// Solutions whose defect exceeded the degree bound `d - 4`.
    pub degree_bound_violations: usize,
    /// Whether the argument for that bound applies to this surface.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_bound_applies: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub config: ScanConfig,
    pub trials: Vec<TrialRecord>,
    pub witnesses: Vec<Witness>,
}

impl ScanReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

fn random_form(field: FieldDescriptor, vars: usize, degree: i64, rng: &mut ChaCha8Rng) -> Polynomial {
    if degree < 0 {
        return Polynomial::zero(field, 4);
    }
    let terms: Vec<(Monomial, crate::field::Scalar)> =
        Monomial::of_degree(vars, degree as u32).into_iter().map(|m| (m, field.sample(rng))).collect();
    Polynomial::from_terms(field, 4, terms)
}

/// The surface of trial `trial`; every trial has its own random stream.
pub fn trial_surface(config: &ScanConfig, trial: usize) -> Result<SurfaceModel> {
    let field = FieldDescriptor::prime(config.p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(trial as u64);
    let d = config.d as i64;
    // resample the rare degenerate draw
    for _ in 0..64 {
        let (f, generators, params, ordinary, generic) = match config.recipe {
            Recipe::Smooth => (random_form(field, 4, d, &mut rng), vec![], vec![], true, true),
            Recipe::Cone => (random_form(field, 3, d, &mut rng), vec![], vec![], false, true),
            Recipe::DeclaredDoubleLine => {
                let x = Polynomial::var(field, 4, 0);
                let y = Polynomial::var(field, 4, 1);
                let a = random_form(field, 4, d - 2, &mut rng);
                let b = random_form(field, 4, d - 2, &mut rng);
                let c = random_form(field, 4, d - 2, &mut rng);
                let f = &(&(&(&x * &x) * &a) + &(&(&x * &y) * &b)) + &(&(&y * &y) * &c);
                let params = vec![vec!["0".to_string(), "0".to_string(), "t".to_string(), "1".to_string()]];
                (f, vec!["x".to_string(), "y".to_string()], params, true, false)
            }
        };
        if f.degree().finite() != Some(config.d) || f.dehomogenize()?.is_zero() {
            continue;
        }
        let doc = SurfaceDocument {
            name: format!("{}-{}", config.recipe, trial),
            field: field.to_string(),
            equation: f.to_string(),
            double_curve: DoubleCurveDocument { generators, samples: vec![], parametrizations: params },
            ordinary,
            generic_coordinates: generic,
            triple_points: None,
            expected: None,
            waiver: None,
        };
        return SurfaceModel::from_document(&doc);
    }
    Err(Error::ContractViolation("could not draw a surface of the requested degree".into()))
}

fn run_trial(config: &ScanConfig, trial: usize) -> (TrialRecord, Vec<Witness>) {
    let mut record = TrialRecord { trial, dim: None, witnesses: 0, degree_bound_violations: 0, degree_bound_applies: None, error: None };
    let mut witnesses = Vec::new();
    let outcome = (|| -> Result<()> {
        let s = trial_surface(config, trial)?;
        let space = solve_picard(&s)?;
        record.dim = Some(space.dim());
        record.degree_bound_applies = Some(degree_bound_applies(&s)?);
        let bound = config.d as i64 - 4;
        for sol in &space.basis {
            let q = defect_polynomial(sol);
            if !q.degree().at_most(bound) {
                record.degree_bound_violations += 1;
            }
            if !q.is_zero() {
                witnesses.push(Witness {
                    trial,
                    surface: s.to_document(),
                    solution: SolutionStrings::from(sol),
                    defect: q.to_string(),
                    p: config.p,
                    d: config.d,
                    recipe: config.recipe,
                });
            }
        }
        Ok(())
    })();
    if let Err(e) = outcome {
        record.error = Some(format!("{}: {e}", e.kind()));
    }
    record.witnesses = witnesses.len();
    (record, witnesses)
}

/// Runs every trial (in parallel) and merges the results by trial index.
pub fn charp_scan(config: &ScanConfig) -> Result<ScanReport> {
    if config.trials == 0 {
        return Err(Error::ContractViolation("a scan needs at least one trial".into()));
    }
    if config.d == 0 {
        return Err(Error::ContractViolation("surface degree must be positive".into()));
    }
    FieldDescriptor::prime(config.p)?;
    let results: Vec<(TrialRecord, Vec<Witness>)> =
        (0..config.trials).into_par_iter().map(|t| run_trial(config, t)).collect();
    let mut trials = Vec::with_capacity(results.len());
    let mut witnesses = Vec::new();
    for (r, w) in results {
        trials.push(r);
        witnesses.extend(w);
    }
    Ok(ScanReport { config: config.clone(), trials, witnesses })
}

pub fn parse_witness(text: &str) -> Result<Witness> {
    serde_json::from_str(text).map_err(|e| Error::Parse { pos: e.column(), msg: format!("line {}: {e}", e.line()) })
}

/// Rebuilds the surface and solution from the witness alone and checks the
/// relation and the recorded nonzero defect.
pub fn verify_witness(w: &Witness) -> Result<bool> {
    let s = SurfaceModel::from_document(&w.surface)?;
    if s.field != FieldDescriptor::prime(w.p)? || s.degree != w.d {
        return Ok(false);
    }
    let sol = PicardSolution::parse(&s, [&w.solution.a, &w.solution.b, &w.solution.c, &w.solution.n])?;
    if !sol.residual(&s)?.is_zero() {
        return Ok(false);
    }
    let adj = crate::adjoint::adjoint_space(&s, s.degree as i64 - 2)?;
    for part in [&sol.a, &sol.b, &sol.c] {
        if !adj.contains(part)? {
            return Ok(false);
        }
    }
    if !sol.n.degree().at_most(s.degree as i64 - 3) {
        return Ok(false);
    }
    let q = defect_polynomial(&sol);
    Ok(!q.is_zero() && q == Polynomial::parse(&w.defect, s.field, 3)?)
}
