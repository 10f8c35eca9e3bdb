use std::cmp::Ordering;
use std::fmt;

/// Maximum number of variables any polynomial in this crate carries.
pub const MAX_VARS: usize = 4;

/// Exponent vector; slots beyond the owning polynomial's `nvars` stay zero.
///
/// Ordered by graded reverse lexicographic order with `x > y > z > w`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u32; MAX_VARS]);

/// Total degree of a polynomial; the zero polynomial has degree `-inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInfinity => None,
        }
    }

    /// `true` when the degree is at most `bound` (always for `-inf`).
    pub fn at_most(self, bound: i64) -> bool {
        match self {
            Degree::NegInfinity => true,
            Degree::Finite(d) => (d as i64) <= bound,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn var(i: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0).all(|(a, b)| *a <= b)
    }

    /// All monomials of exact degree `k` in `nvars` variables, descending.
    pub fn of_degree(nvars: usize, k: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = [0u32; MAX_VARS];
        fill(nvars, 0, k, &mut cur, &mut out);
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    /// All monomials of degree `<= k`, descending; empty for negative `k`.
    pub fn up_to_degree(nvars: usize, k: i64) -> Vec<Monomial> {
        if k < 0 {
            return Vec::new();
        }
        (0..=k as u32).rev().flat_map(|j| Monomial::of_degree(nvars, j)).collect()
    }
}

fn fill(nvars: usize, i: usize, rest: u32, cur: &mut [u32; MAX_VARS], out: &mut Vec<Monomial>) {
    if nvars == 0 {
        if rest == 0 {
            out.push(Monomial(*cur));
        }
        return;
    }
    if i + 1 == nvars {
        cur[i] = rest;
        out.push(Monomial(*cur));
        cur[i] = 0;
        return;
    }
    for e in (0..=rest).rev() {
        cur[i] = e;
        fill(nvars, i + 1, rest - e, cur, out);
    }
    cur[i] = 0;
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..MAX_VARS).rev() {
            match self.0[i].cmp(&other.0[i]) {
                Ordering::Equal => continue,
                // smaller exponent in the last differing variable wins
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
