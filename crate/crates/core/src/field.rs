//! Exact coefficient fields: the rationals and prime fields `F_p` with `p < 2^63`.
//!
//! Elements are carried as [`Scalar`] values; all arithmetic goes through the
//! [`FieldDescriptor`] that owns them, so a residue never meets a rational.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Largest admissible prime modulus (exclusive).
pub const MAX_PRIME: u64 = 1 << 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldDescriptor {
    Rationals,
    Prime(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue(u64),
}

impl Scalar {
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Residue(_) => None,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match self {
            Scalar::Residue(r) => Some(*r),
            Scalar::Rational(_) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Residue(r) => write!(f, "{r}"),
        }
    }
}

impl FieldDescriptor {
    /// Validated prime field.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= MAX_PRIME {
            return Err(Error::InvalidField(format!("prime {p} exceeds 2^63")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(FieldDescriptor::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::Rationals => 0,
            FieldDescriptor::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldDescriptor::Rationals => Scalar::Rational(BigRational::zero()),
            FieldDescriptor::Prime(_) => Scalar::Residue(0),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldDescriptor::Rationals => Scalar::Rational(BigRational::from_integer(v.into())),
            FieldDescriptor::Prime(p) => Scalar::Residue((v as i128).rem_euclid(*p as i128) as u64),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            FieldDescriptor::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
            FieldDescriptor::Prime(p) => Scalar::Residue(bigint_mod(v, *p)),
        }
    }

    /// Maps a rational number into this field; fails when the denominator
    /// vanishes modulo `p`.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match self {
            FieldDescriptor::Rationals => Ok(Scalar::Rational(q.clone())),
            FieldDescriptor::Prime(p) => {
                let den = bigint_mod(q.denom(), *p);
                if den == 0 {
                    return Err(Error::NotRepresentable {
                        value: format!("{q}"),
                        field: self.to_string(),
                    });
                }
                let num = bigint_mod(q.numer(), *p);
                Ok(Scalar::Residue(mul_mod(num, inv_mod(den, *p), *p)))
            }
        }
    }

    /// Reduces a scalar of `source` into `self` (identity when equal).
    pub fn convert(&self, s: &Scalar) -> Result<Scalar> {
        match (self, s) {
            (FieldDescriptor::Rationals, Scalar::Rational(_)) => Ok(s.clone()),
            (FieldDescriptor::Prime(_), Scalar::Rational(q)) => self.from_rational(q),
            (FieldDescriptor::Prime(p), Scalar::Residue(r)) if r < p => Ok(s.clone()),
            _ => Err(Error::IncompatibleOperands(format!("cannot move {s} into {self}"))),
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (FieldDescriptor::Rationals, Scalar::Rational(_)) => true,
            (FieldDescriptor::Prime(p), Scalar::Residue(r)) => r < p,
            _ => false,
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue(r) => *r == 0,
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue(r) => *r == 1,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (_, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (FieldDescriptor::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(add_mod(*x, *y, *p))
            }
            _ => mismatch(self, a, b),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (_, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x - y),
            (FieldDescriptor::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(sub_mod(*x, *y, *p))
            }
            _ => mismatch(self, a, b),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (_, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (FieldDescriptor::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(mul_mod(*x, *y, *p))
            }
            _ => mismatch(self, a, b),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (_, Scalar::Rational(x)) => Scalar::Rational(-x),
            (FieldDescriptor::Prime(p), Scalar::Residue(x)) => Scalar::Residue(sub_mod(0, *x, *p)),
            _ => mismatch(self, a, a),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        Some(match (self, a) {
            (_, Scalar::Rational(x)) => Scalar::Rational(x.recip()),
            (FieldDescriptor::Prime(p), Scalar::Residue(x)) => Scalar::Residue(inv_mod(*x, *p)),
            _ => mismatch(self, a, a),
        })
    }

    pub fn pow(&self, a: &Scalar, mut e: u32) -> Scalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Parses an integer or `a/b` literal into this field.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let q = parse_rational(text.trim()).ok_or_else(|| Error::Parse {
            pos: 0,
            msg: format!("bad number {text:?}"),
        })?;
        self.from_rational(&q)
    }

    /// Uniform random element with small height: integers in `[-bound, bound]`.
    pub fn sample_small<R: Rng>(&self, rng: &mut R, bound: i64) -> Scalar {
        self.from_i64(rng.gen_range(-bound..=bound))
    }

    /// Uniform random element: small integers over the rationals, uniform residues over `F_p`.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> Scalar {
        match self {
            FieldDescriptor::Rationals => self.sample_small(rng, 9),
            FieldDescriptor::Prime(p) => Scalar::Residue(rng.gen_range(0..*p)),
        }
    }
}

fn mismatch(field: &FieldDescriptor, a: &Scalar, b: &Scalar) -> ! {
    panic!("scalars {a:?} and {b:?} do not belong to {field}")
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "rationals"),
            FieldDescriptor::Prime(p) => write!(f, "prime:{p}"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "rationals" {
            return Ok(FieldDescriptor::Rationals);
        }
        match s.strip_prefix("prime:") {
            Some(p) => {
                let p: u64 = p
                    .parse()
                    .map_err(|_| Error::InvalidField(format!("bad prime in {s:?}")))?;
                FieldDescriptor::prime(p)
            }
            None => Err(Error::InvalidField(format!("unknown field {s:?}"))),
        }
    }
}

pub(crate) fn parse_rational(text: &str) -> Option<BigRational> {
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) || !den.map_or(true, digits) {
        return None;
    }
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = match den {
        Some(d) => d.parse().ok()?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return None;
    }
    let q = BigRational::new(n, d);
    Some(if neg { -q } else { q })
}

pub(crate) fn bigint_mod(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        ((a as u128 + p as u128) - b as u128) as u64
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Inverse modulo `p` of a nonzero residue.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "{a} not invertible mod {p}");
    old_s.rem_euclid(p as i128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Random prime in `[2^(bits-1), 2^bits)`.
pub fn random_prime<R: Rng>(rng: &mut R, bits: u32) -> u64 {
    assert!((3..=63).contains(&bits));
    let lo = 1u64 << (bits - 1);
    loop {
        let candidate = rng.gen_range(lo..2 * lo) | 1;
        if is_prime(candidate) {
            return candidate;
        }
    }
}

/// Rational reconstruction of `a mod m`: the unique `n/d` with
/// `|n|, d <= sqrt(m/2)` congruent to `a`, if one exists.
pub fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    let (n, d) = if t1.sign() == Sign::Minus { (-r1, -t1) } else { (r1, t1) };
    Some(BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn prime_field_validation() {
        assert!(FieldDescriptor::prime(101).is_ok());
        assert!(FieldDescriptor::prime(100).is_err());
        assert!(FieldDescriptor::prime(1).is_err());
        assert_eq!("prime:5".parse::<FieldDescriptor>().unwrap(), FieldDescriptor::Prime(5));
        assert_eq!("rationals".parse::<FieldDescriptor>().unwrap(), FieldDescriptor::Rationals);
        assert!("prime:9".parse::<FieldDescriptor>().is_err());
        assert!("reals".parse::<FieldDescriptor>().is_err());
    }

    #[test]
    fn modular_inverse_and_fractions() {
        let f = FieldDescriptor::Prime(5);
        let q = BigRational::new((-1).into(), 4.into());
        // -1/4 = -4 = 1 in F_5
        assert_eq!(f.from_rational(&q).unwrap(), Scalar::Residue(1));
        let bad = BigRational::new(1.into(), 10.into());
        assert!(f.from_rational(&bad).is_err());
        for a in 1..5 {
            let s = Scalar::Residue(a);
            assert!(f.is_one(&f.mul(&s, &f.inv(&s).unwrap())));
        }
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        let naive = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..5000 {
            assert_eq!(is_prime(n), naive(n), "n = {n}");
        }
        assert!(is_prime((1 << 61) - 1));
    }

    #[test]
    fn reconstruction_recovers_small_fractions() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let p = random_prime(&mut rng, 62);
        let m = BigInt::from(p);
        for (n, d) in [(3i64, 7i64), (-22, 5), (0, 1), (1, 1), (-1, 4)] {
            let q = BigRational::new(n.into(), d.into());
            let r = FieldDescriptor::Prime(p).from_rational(&q).unwrap();
            let back = rational_reconstruction(&BigInt::from(r.as_residue().unwrap()), &m).unwrap();
            assert_eq!(back, q);
        }
    }

    #[test]
    fn parse_rational_literals() {
        assert_eq!(parse_rational("-3/4"), Some(BigRational::new((-3).into(), 4.into())));
        assert_eq!(parse_rational("12"), Some(BigRational::from_integer(12.into())));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1/"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
