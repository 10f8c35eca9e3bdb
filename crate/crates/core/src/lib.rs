//! Exact computations around regular 1-forms on projected surfaces: adjoint
//! spaces, Picard's relation and its integrability defect, syzygies of plane
//! curve partials, jacobian-scheme counts, and a characteristic-p scanner.

pub mod adjoint;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod homogeneous;
pub mod lab;
pub mod linalg;
pub mod monomial;
pub mod picard;
pub mod plane;
pub mod poly;
pub mod surface;

pub use adjoint::{adjoint_space, adjoint_space_with, AdjointSpace, AdjointStrategy};
pub use error::{Error, Result};
pub use field::{FieldDescriptor, Scalar};
pub use homogeneous::{gral_solve, homogenize_solution, GralResult, HomogeneousSolution};
pub use lab::{charp_scan, p_g, q_an, AnalysisReport, ScanConfig};
pub use linalg::{coefficient_matrix, nullspace_basis, CoeffMatrix, NullspaceBasis};
pub use monomial::{Degree, Monomial};
pub use picard::{
    chart_identity_check, complete_triple, degree_bound_applies, integrability_defect, severi_structure_check, solve_picard,
    PicardSolution, PicardSolutionSpace,
};
pub use plane::{castelnuovo_check, load_plane_curve, syzygy_space, PlaneCurve};
pub use poly::{CoordinateChange, Polynomial};
pub use surface::{jacobian_count, load_surface, pencil_data, zeuthen_segre_formula, PencilData, SurfaceModel};
