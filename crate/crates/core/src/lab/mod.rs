//! Surface invariants assembled from the solvers, per-surface analysis
//! reports, and the characteristic-p scanner.

mod report;
mod scan;

pub use report::{
    analyze_curve, analyze_surface, AdjointEntry, AnalysisOptions, AnalysisReport, CurveReport, DeltaEntry,
    ErrorRecord, ExpectedRow, GralEntry, HomogeneousEntry, Operation, PicardEntry, QanEntry, SeveriEntry,
    SolutionStrings,
};
pub use scan::{charp_scan, parse_witness, verify_witness, Recipe, ScanConfig, ScanReport, TrialRecord, Witness};

use crate::adjoint::{adjoint_space, adjoint_space_with, AdjointStrategy};
use crate::error::Result;
use crate::linalg::EngineOptions;
use crate::picard::solve_picard_with;
use crate::surface::SurfaceModel;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Qan {
    pub value: usize,
    /// Ordinary surface, generic coordinates and certified adjointness.
    pub certified: bool,
}

pub fn q_an(s: &SurfaceModel) -> Result<Qan> {
    q_an_with(s, None)
}

pub fn q_an_with(s: &SurfaceModel, strategy: Option<AdjointStrategy>) -> Result<Qan> {
    let space = solve_picard_with(s, strategy, &EngineOptions::default())?;
    Ok(Qan {
        value: space.dim(),
        certified: s.ordinary && s.generic_coordinates && space.adjoint.certified,
    })
}

/// Number of independent adjoint forms of degree exactly `d - 4`.
pub fn p_g(s: &SurfaceModel) -> Result<usize> {
    Ok(adjoint_space(s, s.degree as i64 - 4)?.dim())
}

pub fn p_g_with(s: &SurfaceModel, strategy: Option<AdjointStrategy>) -> Result<usize> {
    Ok(adjoint_space_with(s, s.degree as i64 - 4, strategy)?.dim())
}
