//! Text syntax: `x^4+y^4-3/4*x*y*z*w+1`.
//!
//! Variables are `x, y, z, w` (in that order; univariate polynomials use `t`).
//! A term is a `*`-separated product of rational literals and powers.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Polynomial;
use crate::error::{Error, Result};
use crate::field::{parse_rational, FieldDescriptor};
use crate::monomial::{Monomial, MAX_VARS};

/// Per-variable exponent ceiling accepted by the parser.
pub const MAX_EXPONENT: u32 = 1 << 16;

pub fn var_names(nvars: usize) -> &'static [&'static str] {
    match nvars {
        1 => &["t"],
        2 => &["x", "y"],
        3 => &["x", "y", "z"],
        4 => &["x", "y", "z", "w"],
        _ => &[],
    }
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }
}

impl Polynomial {
    /// Parses the text syntax into a polynomial over `field` in `nvars`
    /// variables; rational literals are reduced into `field`.
    pub fn parse(text: &str, field: FieldDescriptor, nvars: usize) -> Result<Polynomial> {
        if nvars == 0 || nvars > MAX_VARS {
            return Err(Error::Parse { pos: 0, msg: format!("unsupported variable count {nvars}") });
        }
        let names = var_names(nvars);
        let mut cur = Cursor { src: text.as_bytes(), pos: 0 };
        let mut out = Polynomial::zero(field, nvars);
        cur.skip_ws();
        if cur.peek().is_none() {
            return cur.err("empty polynomial");
        }
        let mut first = true;
        loop {
            cur.skip_ws();
            let mut negative = false;
            match cur.peek() {
                Some(b'+') => cur.pos += 1,
                Some(b'-') => {
                    negative = true;
                    cur.pos += 1;
                }
                None => break,
                _ if first => {}
                Some(c) => return cur.err(format!("expected '+' or '-', found {:?}", c as char)),
            }
            first = false;
            let (mono, mut coeff) = parse_term(&mut cur, names)?;
            if negative {
                coeff = -coeff;
            }
            let c = field.from_rational(&coeff)?;
            out.add_term(mono, &c);
        }
        Ok(out)
    }
}

fn parse_term(cur: &mut Cursor<'_>, names: &[&str]) -> Result<(Monomial, BigRational)> {
    let mut mono = Monomial::ONE;
    let mut coeff = BigRational::one();
    loop {
        cur.skip_ws();
        match cur.peek() {
            Some(b) if b.is_ascii_digit() => {
                let start = cur.pos;
                let num = cur.digits();
                let lit = if cur.peek() == Some(b'/') {
                    cur.pos += 1;
                    let den = cur.digits();
                    format!("{num}/{den}")
                } else {
                    num.to_string()
                };
                match parse_rational(&lit) {
                    Some(q) => coeff *= q,
                    None => return Err(Error::Parse { pos: start, msg: format!("bad number {lit:?}") }),
                }
            }
            Some(b) if b.is_ascii_alphabetic() => {
                let start = cur.pos;
                while cur.peek().is_some_and(|b| b.is_ascii_alphanumeric() || b == b'_') {
                    cur.pos += 1;
                }
                let ident = std::str::from_utf8(&cur.src[start..cur.pos]).expect("ascii");
                let Some(idx) = names.iter().position(|n| *n == ident) else {
                    return Err(Error::Parse { pos: start, msg: format!("unknown variable {ident:?}") });
                };
                cur.skip_ws();
                let mut e = 1u32;
                if cur.peek() == Some(b'^') {
                    cur.pos += 1;
                    cur.skip_ws();
                    let digits = cur.digits();
                    e = match digits.parse::<u32>() {
                        Ok(e) if e <= MAX_EXPONENT => e,
                        _ => return cur.err(format!("bad exponent {digits:?}")),
                    };
                }
                let total = mono.0[idx] + e;
                if total > MAX_EXPONENT {
                    return cur.err("exponent too large");
                }
                mono.0[idx] = total;
            }
            Some(c) => return cur.err(format!("unexpected {:?}", c as char)),
            None => return cur.err("unexpected end of input"),
        }
        cur.skip_ws();
        if cur.peek() == Some(b'*') {
            cur.pos += 1;
        } else {
            break;
        }
    }
    if coeff.is_zero() {
        mono = Monomial::ONE;
    }
    Ok((mono, coeff))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = var_names(self.nvars);
        for (k, (m, c)) in self.terms().enumerate() {
            let text = c.to_string();
            let (negative, magnitude) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if negative {
                write!(f, "-")?;
            } else if k > 0 {
                write!(f, "+")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if *m == Monomial::ONE || magnitude != "1" {
                factors.push(magnitude);
            }
            for (i, name) in names.iter().enumerate() {
                match m.0[i] {
                    0 => {}
                    1 => factors.push((*name).to_string()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
