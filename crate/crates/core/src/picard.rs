//! Picard's relation `A f_x + B f_y + C f_z = N f` with `A, B, C` adjoint of
//! degree at most `d - 2` and `deg N <= d - 3`, and what can be read off its
//! solutions.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::adjoint::{adjoint_space_with, AdjointSpace, AdjointStrategy};
use crate::error::{Error, Result};
use crate::field::{random_prime, FieldDescriptor, Scalar};
use crate::linalg::{
    coefficient_matrix, echelon_form_with, express_in_span, span_basis, CoeffMatrix, EngineOptions, LinearIdentity,
    Route,
};
use crate::monomial::{Degree, Monomial};
use crate::plane::{syzygy_space, PlaneCurve};
use crate::poly::Polynomial;
use crate::surface::SurfaceModel;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicardSolution {
    pub a: Polynomial,
    pub b: Polynomial,
    pub c: Polynomial,
    pub n: Polynomial,
}

impl PicardSolution {
    pub fn zero(s: &SurfaceModel) -> Self {
        let z = Polynomial::zero(s.field, 3);
        PicardSolution { a: z.clone(), b: z.clone(), c: z.clone(), n: z }
    }

    pub fn parse(s: &SurfaceModel, parts: [&str; 4]) -> Result<Self> {
        let [a, b, c, n] = parts.map(|t| Polynomial::parse(t, s.field, 3));
        Ok(PicardSolution { a: a?, b: b?, c: c?, n: n? })
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.n.is_zero()
    }

    /// `A f_x + B f_y + C f_z - N f`.
    pub fn residual(&self, s: &SurfaceModel) -> Result<Polynomial> {
        let [fx, fy, fz] = s.affine_partials();
        let lhs = self.a.checked_mul(&fx)?.checked_add(&self.b.checked_mul(&fy)?)?.checked_add(&self.c.checked_mul(&fz)?)?;
        lhs.checked_sub(&self.n.checked_mul(&s.affine)?)
    }

    pub fn verify(&self, s: &SurfaceModel) -> Result<()> {
        let r = self.residual(s)?;
        if r.is_zero() {
            Ok(())
        } else {
            Err(Error::NotASolution { residual: r.to_string() })
        }
    }

    pub fn strings(&self) -> [String; 4] {
        [&self.a, &self.b, &self.c, &self.n].map(ToString::to_string)
    }
}

#[derive(Clone, Debug)]
pub struct PicardSolutionSpace {
    pub adjoint: AdjointSpace,
    pub basis: Vec<PicardSolution>,
    pub matrix: CoeffMatrix,
    pub route: Route,
    pub warnings: Vec<String>,
}

impl PicardSolutionSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Only the zero solution has `A = B = 0`.
    pub fn injective_on_ab(&self) -> Result<bool> {
        let Some(first) = self.basis.first() else { return Ok(true) };
        // (A, B) packed into one polynomial ring by shifting B with a power of w
        let shift = Monomial([0, 0, 0, 1]);
        let packed: Vec<Polynomial> = self
            .basis
            .iter()
            .map(|s| &s.a.extend_vars(4) + &s.b.extend_vars(4).mul_monomial(&shift))
            .collect();
        Ok(span_basis(first.a.field(), 4, &packed)?.len() == self.basis.len())
    }
}

/// The linear identity whose solutions are the Picard tuples built on `adj`.
pub fn picard_identity(s: &SurfaceModel, adj: &AdjointSpace) -> LinearIdentity {
    let field = s.field;
    let d = s.degree as i64;
    let [fx, fy, fz] = s.affine_partials();
    let mut id = LinearIdentity::new(field, 3, format!("picard relation on {} (d = {d})", display_name(s)));
    let a = id.unknown("A", adj.basis.clone());
    let b = id.unknown("B", adj.basis.clone());
    let c = id.unknown("C", adj.basis.clone());
    let n_ansatz = Monomial::up_to_degree(3, d - 3)
        .into_iter()
        .map(|m| Polynomial::monomial(field, 3, m, field.one()))
        .collect();
    let n = id.unknown("N", n_ansatz);
    id.term(fx, a);
    id.term(fy, b);
    id.term(fz, c);
    id.term(-&s.affine, n);
    id
}

fn display_name(s: &SurfaceModel) -> &str {
    if s.name.is_empty() {
        "surface"
    } else {
        &s.name
    }
}

pub fn solve_picard(s: &SurfaceModel) -> Result<PicardSolutionSpace> {
    solve_picard_with(s, None, &EngineOptions::default())
}

pub fn solve_picard_with(
    s: &SurfaceModel,
    strategy: Option<AdjointStrategy>,
    opts: &EngineOptions,
) -> Result<PicardSolutionSpace> {
    if s.affine.is_zero() {
        return Err(Error::ContractViolation("affine equation is identically zero".into()));
    }
    let d = s.degree as i64;
    let adjoint = adjoint_space_with(s, d - 2, strategy)?;
    let id = picard_identity(s, &adjoint);
    let matrix = coefficient_matrix(&id)?;
    let echelon = echelon_form_with(&matrix, opts);
    let ns = echelon.nullspace();
    let mut basis = Vec::with_capacity(ns.dim());
    for v in &ns.vectors {
        let [a, b, c, n]: [Polynomial; 4] = id.decode(v).try_into().expect("four unknowns");
        let sol = PicardSolution { a, b, c, n };
        // independent of the engine: plain polynomial arithmetic
        let r = sol.residual(s)?;
        if !r.is_zero() {
            return Err(Error::InvariantViolation {
                which: "emitted Picard solution satisfies the relation".into(),
                witness: r.to_string(),
            });
        }
        basis.push(sol);
    }
    let mut warnings = Vec::new();
    if !adjoint.certified {
        warnings.push(format!("adjoint space of degree {} is sampled, not certified", d - 2));
    }
    if !s.ordinary {
        warnings.push("surface is not flagged ordinary; dimension need not equal q_an".into());
    }
    if !s.generic_coordinates {
        warnings.push("coordinates are not flagged generic".into());
    }
    if let Some(q) = s.expected.as_ref().and_then(|e| e.q_an) {
        if s.ordinary && s.generic_coordinates && q != basis.len() {
            warnings.push(format!("solution space has dimension {} but expected q_an is {q}", basis.len()));
        }
    }
    Ok(PicardSolutionSpace { adjoint, basis, matrix, route: echelon.route, warnings })
}

/// The unique Picard solution with first component `a`.
pub fn complete_triple(s: &SurfaceModel, a: &Polynomial) -> Result<PicardSolution> {
    complete_in(s, &solve_picard(s)?, a)
}

/// Fiber of the projection `space -> A` over `a`.
pub fn complete_in(s: &SurfaceModel, space: &PicardSolutionSpace, a: &Polynomial) -> Result<PicardSolution> {
    if !space.adjoint.contains(a)? {
        return Err(Error::NoCompletion);
    }
    let a_parts: Vec<Polynomial> = space.basis.iter().map(|sol| sol.a.clone()).collect();
    let image_dim = span_basis(s.field, 3, &a_parts)?.len();
    let Some(coords) = express_in_span(s.field, 3, &a_parts, a)? else { return Err(Error::NoCompletion) };
    let fiber_dim = space.dim() - image_dim;
    if fiber_dim > 0 {
        return Err(Error::NonUniqueCompletion { fiber_dim });
    }
    Ok(combine(s, &space.basis, &coords))
}

/// `sum_k coords[k] * basis[k]`.
pub fn combine(s: &SurfaceModel, basis: &[PicardSolution], coords: &[Scalar]) -> PicardSolution {
    let mut out = PicardSolution::zero(s);
    for (sol, c) in basis.iter().zip(coords) {
        out.a = &out.a + &sol.a.scale(c);
        out.b = &out.b + &sol.b.scale(c);
        out.c = &out.c + &sol.c.scale(c);
        out.n = &out.n + &sol.n.scale(c);
    }
    out
}

/// `A_x + B_y + C_z - N`, without any checks.
pub fn defect_polynomial(sol: &PicardSolution) -> Polynomial {
    &(&(&sol.a.d(0) + &sol.b.d(1)) + &sol.c.d(2)) - &sol.n
}

/// Whether the argument for `deg Q <= d - 4` goes through: the
/// characteristic does not divide `d`, and the partials of the section
/// `F(x, y, z, 0)` admit no syzygy of degree `d - 2`, so that the top
/// components satisfy `d A_top = x N_top` and its cyclic versions.
pub fn degree_bound_applies(s: &SurfaceModel) -> Result<bool> {
    let p = s.field.characteristic();
    if p != 0 && s.degree as u64 % p == 0 {
        return Ok(false);
    }
    if s.degree < 2 {
        return Ok(true);
    }
    let section = Polynomial::from_terms(
        s.field,
        3,
        s.equation.terms().filter(|(m, _)| m.exp(3) == 0).map(|(m, c)| (*m, c.clone())),
    );
    if section.is_zero() {
        return Ok(false);
    }
    let curve = PlaneCurve::new(section, false)?;
    Ok(syzygy_space(&curve, s.degree as i64 - 2)?.dim() == 0)
}

/// The integrability defect `Q = A_x + B_y + C_z - N` of a solution. The
/// degree bound `deg Q <= d - 4` is enforced wherever its argument applies
/// (see [`degree_bound_applies`]), and so is `Q = 0` for ordinary surfaces in
/// characteristic zero.
pub fn integrability_defect(s: &SurfaceModel, sol: &PicardSolution) -> Result<Polynomial> {
    sol.verify(s)?;
    let q = defect_polynomial(sol);
    let bound = s.degree as i64 - 4;
    if !q.degree().at_most(bound) && degree_bound_applies(s)? {
        return Err(Error::DegreeBoundViolated { defect: q.to_string(), bound });
    }
    if s.ordinary && s.field.characteristic() == 0 && !q.is_zero() {
        return Err(Error::InvariantViolation {
            which: "closedness of 1-forms in characteristic 0".into(),
            witness: format!("Q = {q} for (A, B, C, N) = ({})", sol.strings().join(", ")),
        });
    }
    Ok(q)
}

/// Checks, by expansion, the numerator identity of the derivative of the form
/// `(A dy - B dx) / f_z` on the surface:
///
/// `f_z^2 (A_x + B_y) - f_z (A f_zx + A_z f_x + B f_zy + B_z f_y) + f_zz (A f_x + B f_y)`
/// `  = f_z^2 Q + f (N f_zz - f_z N_z)`.
pub fn chart_identity_check(s: &SurfaceModel, sol: &PicardSolution) -> Result<bool> {
    sol.verify(s)?;
    let f = &s.affine;
    let [fx, fy, fz] = s.affine_partials();
    let (a, b, n) = (&sol.a, &sol.b, &sol.n);
    let fz2 = &fz * &fz;
    let fzz = fz.d(2);
    let lhs = &(&(&fz2 * &(&a.d(0) + &b.d(1)))
        - &(&fz * &(&(&(a * &fz.d(0)) + &(&a.d(2) * &fx)) + &(&(b * &fz.d(1)) + &(&b.d(2) * &fy)))))
        + &(&fzz * &(&(a * &fx) + &(b * &fy)));
    let rhs = &(&fz2 * &defect_polynomial(sol)) + &(f * &(&(n * &fzz) - &(&fz * &n.d(2))));
    Ok(lhs == rhs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeveriReport {
    /// `N_top / d`, where `N_top` is the degree `d - 3` part of `N`.
    pub theta: Polynomial,
    /// `A_top = x theta`, `B_top = y theta`, `C_top = z theta`.
    pub top_components_ok: bool,
    /// The closure of `A = 0` contains the base line `x = w = 0` of the first
    /// pencil (cyclically for `B`, `C`).
    pub base_lines_ok: bool,
    /// Number of supplied points checked against some jacobian system.
    pub jacobian_points_checked: usize,
    /// `None` when no supplied point lies on a jacobian system.
    pub jacobian_vanishing_ok: Option<bool>,
}

impl SeveriReport {
    pub fn passed(&self) -> bool {
        self.top_components_ok && self.base_lines_ok && self.jacobian_vanishing_ok != Some(false)
    }
}

/// Structure of a solution predicted by Severi: same curve at infinity for
/// `A, B, C`, and vanishing of `A` on the jacobian scheme of the first pencil
/// (cyclically), tested on the affine points in `points`.
pub fn severi_structure_check(s: &SurfaceModel, sol: &PicardSolution, points: &[Vec<Scalar>]) -> Result<SeveriReport> {
    sol.verify(s)?;
    let field = s.field;
    let d = s.degree;
    let p = field.characteristic();
    if p != 0 && (d as u64) % p == 0 {
        return Err(Error::CharacteristicDividesDegree { p, d });
    }
    let top = |q: &Polynomial, k: i64| if k < 0 { Polynomial::zero(field, 3) } else { q.homogeneous_component(k as u32) };
    let d_inv = field.inv(&field.from_i64(d as i64)).expect("p does not divide d");
    let theta = top(&sol.n, d as i64 - 3).scale(&d_inv);
    let mut top_components_ok = true;
    let mut base_lines_ok = true;
    for (i, comp) in [&sol.a, &sol.b, &sol.c].into_iter().enumerate() {
        let t = top(comp, d as i64 - 2);
        top_components_ok &= t == &Polynomial::var(field, 3, i) * &theta;
        let mut on_line = vec![Polynomial::var(field, 3, 0), Polynomial::var(field, 3, 1), Polynomial::var(field, 3, 2)];
        on_line[i] = Polynomial::zero(field, 3);
        base_lines_ok &= t.substitute(&on_line)?.is_zero();
    }
    let [fx, fy, fz] = s.affine_partials();
    let partials = [fx, fy, fz];
    let comps = [&sol.a, &sol.b, &sol.c];
    let mut checked = 0;
    let mut ok = true;
    for pt in points {
        if !field.is_zero(&s.affine.evaluate(pt)?) {
            continue;
        }
        let vals = partials.iter().map(|q| q.evaluate(pt)).collect::<Result<Vec<_>>>()?;
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            // P in J_i and off the polar of the pencil's own variable
            if field.is_zero(&vals[j]) && field.is_zero(&vals[k]) && !field.is_zero(&vals[i]) {
                checked += 1;
                ok &= field.is_zero(&comps[i].evaluate(pt)?);
            }
        }
    }
    Ok(SeveriReport {
        theta,
        top_components_ok,
        base_lines_ok,
        jacobian_points_checked: checked,
        jacobian_vanishing_ok: (checked > 0).then_some(ok),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub rational_dim: usize,
    /// Primes tried in order, with the dimension found over each.
    pub attempts: Vec<(u64, usize)>,
    pub agrees: bool,
}

/// Compares the solution-space dimension over the rationals with the one
/// over random large primes; a disagreeing prime is treated as unlucky and
/// replaced, up to `max_attempts` primes.
pub fn field_change_stability(s: &SurfaceModel, seed: u64, max_attempts: usize) -> Result<StabilityReport> {
    let rational_dim = solve_picard(s)?.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = Vec::new();
    while attempts.len() < max_attempts {
        let p = random_prime(&mut rng, 62);
        if (s.degree as u64) % p == 0 {
            continue;
        }
        let Ok(reduced) = s.reduce_to(FieldDescriptor::Prime(p)) else { continue };
        let dim = solve_picard(&reduced)?.dim();
        attempts.push((p, dim));
        if dim == rational_dim {
            return Ok(StabilityReport { rational_dim, attempts, agrees: true });
        }
    }
    Ok(StabilityReport { rational_dim, attempts, agrees: false })
}

/// Whether `deg Q <= d - 4`.
pub fn within_degree_bound(s: &SurfaceModel, q: &Polynomial) -> bool {
    q.degree() == Degree::NegInfinity || q.degree().at_most(s.degree as i64 - 4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::load_surface;

    fn surface(f: &str, ordinary: bool) -> SurfaceModel {
        load_surface(&format!(r#"{{"F": "{f}", "ordinary": {ordinary}}}"#)).unwrap()
    }

    #[test]
    fn cone_cubic_solution() {
        let s = surface("x^3+y^3+z^3", false);
        let space = solve_picard(&s).unwrap();
        assert_eq!(space.dim(), 1);
        let sol = &space.basis[0];
        // normalized so that the free coordinate is one
        let expected = PicardSolution::parse(&s, ["x", "y", "z", "3"]).unwrap();
        let scale = s.field.inv(&sol.n.coeff(&Monomial::ONE)).unwrap();
        let scaled = combine(&s, &space.basis, &[s.field.mul(&scale, &s.field.from_i64(3))]);
        assert_eq!(scaled, expected);
        assert!(space.injective_on_ab().unwrap());
        assert!(integrability_defect(&s, &expected).unwrap().is_zero());
        assert!(chart_identity_check(&s, &expected).unwrap());
        let x = Polynomial::parse("x", s.field, 3).unwrap();
        assert_eq!(complete_triple(&s, &x).unwrap(), expected);
        let rep = severi_structure_check(&s, &expected, &[]).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.theta.to_string(), "1");
    }

    #[test]
    fn degree_bound_hypotheses() {
        let fermat = surface("x^4+y^4+z^4+w^4", true);
        assert!(degree_bound_applies(&fermat).unwrap());
        // p | d
        assert!(!degree_bound_applies(&fermat.reduce_to(FieldDescriptor::Prime(2)).unwrap()).unwrap());
        // smooth Klein quartic at infinity
        let klein = surface("x^3*y+y^3*z+z^3*x+w^4", true);
        assert!(degree_bound_applies(&klein).unwrap());
        // non-reduced section at infinity
        let double = surface("x^2*y^2+w^4", false);
        assert!(!degree_bound_applies(&double).unwrap());
        // section vanishes identically
        assert!(!degree_bound_applies(&surface("w^4+w*x^3", false)).unwrap());
    }

    #[test]
    fn non_solutions_are_refused() {
        let s = surface("x^3+y^3+z^3", false);
        let bad = PicardSolution::parse(&s, ["x", "y", "z", "2"]).unwrap();
        assert!(matches!(integrability_defect(&s, &bad), Err(Error::NotASolution { .. })));
        assert!(matches!(chart_identity_check(&s, &bad), Err(Error::NotASolution { .. })));
        assert!(matches!(severi_structure_check(&s, &bad, &[]), Err(Error::NotASolution { .. })));
    }

    #[test]
    fn cone_quartic_defects() {
        let s = surface("x^4+y^4+z^4", false);
        assert_eq!(solve_picard(&s).unwrap().dim(), 4);
        let euler_const = PicardSolution::parse(&s, ["1/4*x", "1/4*y", "1/4*z", "1"]).unwrap();
        assert_eq!(integrability_defect(&s, &euler_const).unwrap().to_string(), "-1/4");
        let euler_x = PicardSolution::parse(&s, ["1/4*x^2", "1/4*x*y", "1/4*x*z", "x"]).unwrap();
        assert!(integrability_defect(&s, &euler_x).unwrap().is_zero());
        assert!(chart_identity_check(&s, &euler_const).unwrap());
    }

    #[test]
    fn fermat_quartic_has_no_solutions() {
        let s = surface("x^4+y^4+z^4+w^4", true);
        let space = solve_picard(&s).unwrap();
        assert_eq!(space.dim(), 0);
        let xy = Polynomial::parse("x*y", s.field, 3).unwrap();
        assert_eq!(complete_in(&s, &space, &xy), Err(Error::NoCompletion));
        assert_eq!(complete_in(&s, &space, &Polynomial::zero(s.field, 3)).unwrap(), PicardSolution::zero(&s));
        let zero = PicardSolution::zero(&s);
        assert!(chart_identity_check(&s, &zero).unwrap());
        assert!(severi_structure_check(&s, &zero, &[]).unwrap().passed());
    }

    #[test]
    fn stability_over_large_primes() {
        let s = surface("x^3+y^3+z^3", false);
        let rep = field_change_stability(&s, 11, 4).unwrap();
        assert!(rep.agrees);
        assert_eq!(rep.rational_dim, 1);
    }
}
