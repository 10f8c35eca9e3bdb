//! Sparse multivariate polynomials over an exact field.
//!
//! Terms live in a map keyed by [`Monomial`] (graded reverse lexicographic
//! order), so iteration order is canonical and no zero coefficient is stored.

mod coords;
mod text;

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

pub use coords::CoordinateChange;
pub use text::var_names;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::monomial::{Degree, Monomial, MAX_VARS};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: FieldDescriptor,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(field: FieldDescriptor, nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        Polynomial { field, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: FieldDescriptor, nvars: usize, c: Scalar) -> Self {
        Self::monomial(field, nvars, Monomial::ONE, c)
    }

    pub fn from_i64(field: FieldDescriptor, nvars: usize, c: i64) -> Self {
        Self::constant(field, nvars, field.from_i64(c))
    }

    /// The variable `x_i` (0-based).
    pub fn var(field: FieldDescriptor, nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        Self::monomial(field, nvars, Monomial::var(i), field.one())
    }

    pub fn monomial(field: FieldDescriptor, nvars: usize, m: Monomial, c: Scalar) -> Self {
        let mut p = Self::zero(field, nvars);
        debug_assert!(m.0[nvars..].iter().all(|&e| e == 0));
        if !field.is_zero(&c) {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I>(field: FieldDescriptor, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if self.field.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = self.field.add(existing, c);
                if self.field.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.terms.keys().next_back() {
            Some(m) => Degree::Finite(m.degree()),
            None => Degree::NegInfinity,
        }
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<()> {
        if self.field != other.field || self.nvars != other.nvars {
            return Err(Error::IncompatibleOperands(format!(
                "{} in {} vars vs {} in {} vars",
                self.field, self.nvars, other.field, other.nvars
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, &self.field.neg(c));
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = Polynomial::zero(self.field, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &self.field.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if self.field.is_zero(c) {
            return Polynomial::zero(self.field, self.nvars);
        }
        let terms = self.terms.iter().map(|(m, a)| (*m, self.field.mul(a, c))).collect();
        // a field has no zero divisors, so no term vanishes
        Polynomial { field: self.field, nvars: self.nvars, terms }
    }

    pub fn scale_i64(&self, c: i64) -> Polynomial {
        self.scale(&self.field.from_i64(c))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        let terms = self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect();
        Polynomial { field: self.field, nvars: self.nvars, terms }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::from_i64(self.field, self.nvars, 1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn differentiate(&self, var: usize) -> Result<Polynomial> {
        if var >= self.nvars {
            return Err(Error::IndexOutOfRange { index: var, len: self.nvars });
        }
        let mut out = Polynomial::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            dm.0[var] -= 1;
            out.add_term(dm, &self.field.mul(c, &self.field.from_i64(e as i64)));
        }
        Ok(out)
    }

    /// Shorthand for [`differentiate`](Self::differentiate) on an index
    /// already known to be valid.
    pub fn d(&self, var: usize) -> Polynomial {
        self.differentiate(var).expect("variable index in range")
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            Some(first) => degrees.all(|d| d == first),
            None => true,
        }
    }

    /// The part of `self` of total degree exactly `k`.
    pub fn homogeneous_component(&self, k: u32) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() == k)
            .map(|(m, c)| (*m, c.clone()))
            .collect();
        Polynomial { field: self.field, nvars: self.nvars, terms }
    }

    /// Adds a trailing homogenizing variable so the result is homogeneous of
    /// degree `target`.
    pub fn homogenize(&self, target: i64) -> Result<Polynomial> {
        if self.nvars >= MAX_VARS {
            return Err(Error::IncompatibleOperands(format!(
                "cannot homogenize a polynomial in {} variables",
                self.nvars
            )));
        }
        if let Degree::Finite(d) = self.degree() {
            if (d as i64) > target {
                return Err(Error::DegreeTooSmall { target, degree: d as i64 });
            }
        }
        let h = self.nvars;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut hm = *m;
                hm.0[h] = (target - m.degree() as i64) as u32;
                (hm, c.clone())
            })
            .collect();
        Ok(Polynomial { field: self.field, nvars: self.nvars + 1, terms })
    }

    /// Sets the last variable to one.
    pub fn dehomogenize(&self) -> Result<Polynomial> {
        if self.nvars < 2 {
            return Err(Error::IncompatibleOperands(format!(
                "cannot dehomogenize a polynomial in {} variables",
                self.nvars
            )));
        }
        let last = self.nvars - 1;
        let mut out = Polynomial::zero(self.field, last);
        for (m, c) in &self.terms {
            let mut dm = *m;
            dm.0[last] = 0;
            out.add_term(dm, c);
        }
        Ok(out)
    }

    /// `sum_i x_i * dF/dx_i - deg(F) * F`, identically zero for homogeneous `F`.
    pub fn euler_residual(&self) -> Result<Polynomial> {
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let d = self.degree().finite().unwrap_or(0) as i64;
        let mut acc = self.scale_i64(-d);
        for i in 0..self.nvars {
            let xi = Polynomial::var(self.field, self.nvars, i);
            acc = &acc + &(&xi * &self.d(i));
        }
        Ok(acc)
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.nvars {
            return Err(Error::IndexOutOfRange { index: point.len(), len: self.nvars });
        }
        if let Some(bad) = point.iter().find(|s| !self.field.contains(s)) {
            return Err(Error::IncompatibleOperands(format!("{bad} is not in {}", self.field)));
        }
        let f = &self.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                if m.0[i] > 0 {
                    t = f.mul(&t, &f.pow(x, m.0[i]));
                }
            }
            acc = f.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Substitutes `images[i]` for variable `i`; the result lives in the
    /// ring of the images.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars {
            return Err(Error::IndexOutOfRange { index: images.len(), len: self.nvars });
        }
        let (field, nvars) = match images.first() {
            Some(p) => (p.field, p.nvars),
            None => (self.field, 0),
        };
        for p in images {
            if p.field != field || p.nvars != nvars || field != self.field {
                return Err(Error::IncompatibleOperands("substitution images disagree".into()));
            }
        }
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::from_i64(field, nvars, 1), p.clone()])
            .collect();
        let mut out = Polynomial::zero(field, nvars);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(field, nvars, c.clone());
            for (i, cache) in powers.iter_mut().enumerate() {
                let e = m.0[i] as usize;
                while cache.len() <= e {
                    let next = &cache[cache.len() - 1] * &images[i];
                    cache.push(next);
                }
                if e > 0 {
                    t = &t * &cache[e];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Maps coefficients into `target` (e.g. reduction of a rational
    /// polynomial modulo `p`).
    pub fn change_field(&self, target: FieldDescriptor) -> Result<Polynomial> {
        let mut out = Polynomial::zero(target, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(*m, &target.convert(c)?);
        }
        Ok(out)
    }

    /// Reinterprets the polynomial in a ring with more variables.
    pub fn extend_vars(&self, nvars: usize) -> Polynomial {
        assert!(nvars >= self.nvars && nvars <= MAX_VARS);
        Polynomial { field: self.field, nvars, terms: self.terms.clone() }
    }

    /// Coefficient vector against an explicit monomial list.
    pub fn coefficients_on(&self, monomials: &[Monomial]) -> Vec<Scalar> {
        monomials.iter().map(|m| self.coeff(m)).collect()
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    /// Panics when the operands live in different rings; see
    /// [`Polynomial::checked_add`].
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("compatible operands")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("compatible operands")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("compatible operands")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(&self.field.from_i64(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldDescriptor = FieldDescriptor::Rationals;

    fn p3(s: &str) -> Polynomial {
        Polynomial::parse(s, Q, 3).unwrap()
    }

    fn p4(s: &str) -> Polynomial {
        Polynomial::parse(s, Q, 4).unwrap()
    }

    #[test]
    fn ring_operation_examples() {
        assert_eq!(&p3("x+y") + &p3("x-y"), p3("2*x"));
        assert_eq!(&p3("x+1") * &p3("x-1"), p3("x^2-1"));
        let p = p3("3*x^2*y-7/2*z+1");
        assert!((&p * &Polynomial::zero(Q, 3)).is_zero());
        assert_eq!((&p3("x+y") * &p3("x^2-z")).degree(), Degree::Finite(3));
    }

    #[test]
    fn mismatched_operands_are_rejected() {
        let a = p3("x");
        let b = p4("x");
        assert!(matches!(a.checked_add(&b), Err(Error::IncompatibleOperands(_))));
        let c = Polynomial::parse("x", FieldDescriptor::Prime(7), 3).unwrap();
        assert!(matches!(a.checked_mul(&c), Err(Error::IncompatibleOperands(_))));
    }

    #[test]
    fn differentiation_examples() {
        assert_eq!(p3("x^2*y").differentiate(0).unwrap(), p3("2*x*y"));
        let f3 = FieldDescriptor::Prime(3);
        let cube = Polynomial::parse("x^3", f3, 3).unwrap();
        assert!(cube.differentiate(0).unwrap().is_zero());
        assert!(matches!(p3("x").differentiate(3), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn homogenization_examples() {
        assert_eq!(p3("x^2+y").homogenize(2).unwrap(), p4("x^2+y*w"));
        assert_eq!(p4("x^2+y*w").dehomogenize().unwrap(), p3("x^2+y"));
        assert!(matches!(p3("x^3").homogenize(2), Err(Error::DegreeTooSmall { .. })));
        // derivative/dehomogenization compatibility for f = x^2 + yz
        let f = p3("x^2+y*z");
        let lhs = f.homogenize(2).unwrap().d(0).dehomogenize().unwrap();
        assert_eq!(lhs, f.d(0));
        assert!(Polynomial::zero(Q, 3).homogenize(-3).unwrap().is_zero());
    }

    #[test]
    fn euler_examples() {
        assert!(p4("x^3+y^3").euler_residual().unwrap().is_zero());
        assert!(p4("x*y*z*w").euler_residual().unwrap().is_zero());
        assert!(matches!(p4("x^2+y").euler_residual(), Err(Error::NotHomogeneous)));
        // affine form: 4 f = x F1 + y F2 + z F3 + F4 at w = 1
        let big_f = p4("x^4+y^4+z^4+w^4");
        let f = big_f.dehomogenize().unwrap();
        let (x, y, z) = (p3("x"), p3("y"), p3("z"));
        let parts: Vec<_> = (0..4).map(|i| big_f.d(i).dehomogenize().unwrap()).collect();
        let rhs = &(&(&(&x * &parts[0]) + &(&y * &parts[1])) + &(&z * &parts[2])) + &parts[3];
        assert!((&f.scale_i64(4) - &rhs).is_zero());
    }

    #[test]
    fn evaluation_examples() {
        let q = |n: i64| Q.from_i64(n);
        assert_eq!(p3("x^2+y").evaluate(&[q(2), q(3), q(0)]).unwrap(), q(7));
        assert!(matches!(p3("x").evaluate(&[q(1)]), Err(Error::IndexOutOfRange { .. })));
        let steiner = p4("x^2*y^2+y^2*z^2+z^2*x^2-x*y*z*w");
        assert_eq!(steiner.evaluate(&[q(5), q(0), q(0), q(1)]).unwrap(), q(0));
    }

    #[test]
    fn substitution_and_components() {
        let f = p3("x^2+y");
        let g = f.substitute(&[p3("y"), p3("x"), p3("z")]).unwrap();
        assert_eq!(g, p3("y^2+x"));
        assert_eq!(p3("x^2+y+3").homogeneous_component(1), p3("y"));
        let param = f.extend_vars(3);
        assert_eq!(param, f);
    }
}
