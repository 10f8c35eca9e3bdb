//! Homogeneous form of Picard's relation, `X_1 F_1 + .. + X_4 F_4 = 0`, and
//! the relation `Y_1 F_1 + .. + Y_4 F_4 = Q F` with adjoint `Y_i`.

use crate::adjoint::{adjoint_space, AdjointSpace};
use crate::error::{Error, Result};
use crate::linalg::{coefficient_matrix, nullspace_basis, LinearIdentity};
use crate::monomial::Monomial;
use crate::picard::{defect_polynomial, PicardSolution};
use crate::poly::Polynomial;
use crate::surface::SurfaceModel;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousSolution {
    /// Forms of degree `d - 3` in `x, y, z, w`.
    pub x: [Polynomial; 4],
    /// `X_i x_j - X_j x_i` for `i < j`, in the order 12, 13, 14, 23, 24, 34.
    pub minors: Vec<((usize, usize), Polynomial)>,
    /// `sum_i dX_i / dx_i`.
    pub divergence: Polynomial,
    pub relation_ok: bool,
    pub minors_adjoint: bool,
    pub divergence_zero: bool,
    /// Whether the equivalence `Q = 0 <=> divergence = 0` was asserted (it is
    /// skipped when the characteristic divides `d`).
    pub equivalence_checked: bool,
    pub warnings: Vec<String>,
}

/// `X_1 = hom(dA - xN)`, `X_2 = hom(dB - yN)`, `X_3 = hom(dC - zN)` and
/// `X_4 = -hom(N)`, all of degree `d - 3`.
pub fn homogenize_solution(s: &SurfaceModel, sol: &PicardSolution) -> Result<HomogeneousSolution> {
    let adj = adjoint_space(s, s.degree as i64 - 2)?;
    homogenize_solution_in(s, sol, &adj)
}

/// As [`homogenize_solution`], with the degree `d - 2` adjoint space supplied.
pub fn homogenize_solution_in(s: &SurfaceModel, sol: &PicardSolution, adj: &AdjointSpace) -> Result<HomogeneousSolution> {
    sol.verify(s)?;
    let field = s.field;
    let d = s.degree as i64;
    let target = d - 3;
    let hom = |p: &Polynomial, which: &str| -> Result<Polynomial> {
        if p.is_zero() {
            return Ok(Polynomial::zero(field, 4));
        }
        p.homogenize(target).map_err(|_| Error::DegreeOverflow { which: which.to_string(), expected: target })
    };
    let vars: Vec<Polynomial> = (0..3).map(|i| Polynomial::var(field, 3, i)).collect();
    let parts = [&sol.a, &sol.b, &sol.c];
    let mut x: Vec<Polynomial> = Vec::with_capacity(4);
    for i in 0..3 {
        let inner = &parts[i].scale_i64(d) - &(&vars[i] * &sol.n);
        x.push(hom(&inner, &format!("X_{}", i + 1))?);
    }
    x.push(-&hom(&sol.n, "X_4")?);
    let x: [Polynomial; 4] = x.try_into().expect("four components");

    let partials = s.partials();
    let relation = x.iter().zip(&partials).fold(Polynomial::zero(field, 4), |acc, (xi, fi)| &acc + &(xi * fi));
    let relation_ok = relation.is_zero();
    if !relation_ok {
        return Err(Error::InvariantViolation {
            which: "homogeneous Picard relation".into(),
            witness: relation.to_string(),
        });
    }

    let hvars: Vec<Polynomial> = (0..4).map(|i| Polynomial::var(field, 4, i)).collect();
    let mut minors = Vec::with_capacity(6);
    let mut minors_adjoint = true;
    for i in 0..4 {
        for j in i + 1..4 {
            let m = &(&x[i] * &hvars[j]) - &(&x[j] * &hvars[i]);
            minors_adjoint &= adj.contains(&m.dehomogenize()?)?;
            minors.push(((i + 1, j + 1), m));
        }
    }

    let divergence = (0..4).fold(Polynomial::zero(field, 4), |acc, i| &acc + &x[i].d(i));
    let divergence_zero = divergence.is_zero();
    let mut warnings = Vec::new();
    let p = field.characteristic();
    let equivalence_checked = p == 0 || d as u64 % p != 0;
    if equivalence_checked {
        // the dehomogenized divergence is d * Q
        let q = defect_polynomial(sol);
        let expected = q.scale_i64(d);
        let got = divergence.dehomogenize()?;
        if got != expected || q.is_zero() != divergence_zero {
            return Err(Error::InvariantViolation {
                which: "homogeneous divergence equals d times the affine defect".into(),
                witness: format!("divergence {divergence}, Q = {q}"),
            });
        }
    } else {
        warnings.push(format!("characteristic {p} divides d = {d}; affine/homogeneous equivalence not checked"));
    }
    if s.is_cone() {
        warnings.push("F does not involve w (cone); X_4 carries all of N".into());
    }
    Ok(HomogeneousSolution {
        x,
        minors,
        divergence,
        relation_ok,
        minors_adjoint,
        divergence_zero,
        equivalence_checked,
        warnings,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GralSolution {
    pub y: [Polynomial; 4],
    pub q: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GralResult {
    pub space_dim: usize,
    pub trivial_dim: usize,
    pub nontrivial: bool,
    pub basis: Vec<GralSolution>,
}

/// Solutions of `sum Y_i F_i = Q F` with `Y_i` adjoint forms of degree
/// `d - 3` and `Q` a form of degree `d - 4`, compared with the trivial family
/// `Y_i = x_i Q / d`.
pub fn gral_solve(s: &SurfaceModel) -> Result<GralResult> {
    let field = s.field;
    let d = s.degree as i64;
    let p = field.characteristic();
    if p != 0 && d as u64 % p == 0 {
        return Err(Error::CharacteristicDividesDegree { p, d: s.degree });
    }
    let y_ansatz = adjoint_space(s, d - 3)?.homogeneous_basis()?;
    let q_ansatz: Vec<Polynomial> = if d >= 4 {
        Monomial::of_degree(4, (d - 4) as u32)
            .into_iter()
            .map(|m| Polynomial::monomial(field, 4, m, field.one()))
            .collect()
    } else {
        Vec::new()
    };
    let mut id = LinearIdentity::new(field, 4, format!("homogeneous relation Y.grad F = Q F (d = {d})"));
    let partials = s.partials();
    let mut ys = Vec::with_capacity(4);
    for (i, fi) in partials.iter().enumerate() {
        let u = id.unknown(format!("Y{}", i + 1), y_ansatz.clone());
        id.term(fi.clone(), u);
        ys.push(u);
    }
    let qu = id.unknown("Q", q_ansatz);
    id.term(-&s.equation, qu);
    let ns = nullspace_basis(&coefficient_matrix(&id)?);
    let mut basis = Vec::with_capacity(ns.dim());
    for v in &ns.vectors {
        let vals = id.decode(v);
        let r = id.residual(&vals)?;
        if !r.is_zero() {
            return Err(Error::InvariantViolation { which: "emitted solution satisfies the relation".into(), witness: r.to_string() });
        }
        let [y1, y2, y3, y4, q]: [Polynomial; 5] = vals.try_into().expect("five unknowns");
        basis.push(GralSolution { y: [y1, y2, y3, y4], q });
    }
    let trivial_dim = adjoint_space(s, d - 4)?.dim();
    let space_dim = basis.len();
    Ok(GralResult { space_dim, trivial_dim, nontrivial: space_dim > trivial_dim, basis })
}

/// The trivial solution `Y_i = x_i Q / d` attached to a form `Q`.
pub fn trivial_solution(s: &SurfaceModel, q: &Polynomial) -> Result<GralSolution> {
    let field = s.field;
    let inv = field
        .inv(&field.from_i64(s.degree as i64))
        .ok_or(Error::CharacteristicDividesDegree { p: field.characteristic(), d: s.degree })?;
    let y = [0, 1, 2, 3].map(|i| (&Polynomial::var(field, 4, i) * q).scale(&inv));
    Ok(GralSolution { y, q: q.clone() })
}
