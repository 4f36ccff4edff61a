//! Exact coefficients in ℤ[λ], with specialization to ℚ.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

/// Rationals, used for specialized weights and concrete target algebras.
pub type Rational = BigRational;

/// A polynomial in the weight λ with integer coefficients.
///
/// Stored sparsely as exponent → coefficient with no zero entries, so two
/// polynomials are equal iff their maps are equal.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LambdaPoly {
    terms: BTreeMap<u32, BigInt>,
}

impl LambdaPoly {
    pub fn zero() -> Self {
        LambdaPoly::default()
    }

    pub fn one() -> Self {
        LambdaPoly::constant(BigInt::one())
    }

    /// The indeterminate λ.
    pub fn lambda() -> Self {
        LambdaPoly::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        LambdaPoly::monomial(c.into(), 0)
    }

    /// `c·λ^exp`.
    pub fn monomial(c: BigInt, exp: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LambdaPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(BigInt::is_one)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// Coefficient of `λ^exp`.
    pub fn coeff(&self, exp: u32) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (u32, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_monomials(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, exp: u32, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add_assign_ref(&mut self, other: &LambdaPoly) {
        for (e, c) in &other.terms {
            self.add_term(*e, c);
        }
    }

    /// `self += a * b`.
    pub fn add_product(&mut self, a: &LambdaPoly, b: &LambdaPoly) {
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                self.add_term(ea + eb, &(ca * cb));
            }
        }
    }

    /// Evaluates at `λ = value` (Horner).
    pub fn specialize(&self, value: &Rational) -> Rational {
        let Some(top) = self.degree() else {
            return Rational::zero();
        };
        let mut acc = Rational::zero();
        for e in (0..=top).rev() {
            acc = acc * value + Rational::from_integer(self.coeff(e));
        }
        acc
    }
}

pub fn poly_add(a: &LambdaPoly, b: &LambdaPoly) -> LambdaPoly {
    let mut out = a.clone();
    out.add_assign_ref(b);
    out
}

pub fn poly_mul(a: &LambdaPoly, b: &LambdaPoly) -> LambdaPoly {
    let mut out = LambdaPoly::zero();
    out.add_product(a, b);
    out
}

pub fn specialize(p: &LambdaPoly, value: &Rational) -> Rational {
    p.specialize(value)
}

impl Add for &LambdaPoly {
    type Output = LambdaPoly;
    fn add(self, rhs: &LambdaPoly) -> LambdaPoly {
        poly_add(self, rhs)
    }
}

impl Add for LambdaPoly {
    type Output = LambdaPoly;
    fn add(mut self, rhs: LambdaPoly) -> LambdaPoly {
        self.add_assign_ref(&rhs);
        self
    }
}

impl Sub for &LambdaPoly {
    type Output = LambdaPoly;
    fn sub(self, rhs: &LambdaPoly) -> LambdaPoly {
        poly_add(self, &-rhs)
    }
}

impl Mul for &LambdaPoly {
    type Output = LambdaPoly;
    fn mul(self, rhs: &LambdaPoly) -> LambdaPoly {
        poly_mul(self, rhs)
    }
}

impl Mul for LambdaPoly {
    type Output = LambdaPoly;
    fn mul(self, rhs: LambdaPoly) -> LambdaPoly {
        poly_mul(&self, &rhs)
    }
}

impl Neg for &LambdaPoly {
    type Output = LambdaPoly;
    fn neg(self) -> LambdaPoly {
        LambdaPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LambdaPoly {
    type Output = LambdaPoly;
    fn neg(self) -> LambdaPoly {
        -&self
    }
}

impl From<i64> for LambdaPoly {
    fn from(c: i64) -> Self {
        LambdaPoly::constant(c)
    }
}

/// Text form: monomials such as `3L^2`, `L`, `-2`, highest degree first,
/// joined with `+`/`-` and no spaces; zero prints as `0`.
impl fmt::Display for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "{mag}")?,
            }
            match *e {
                0 => {}
                1 => f.write_str("L")?,
                _ => write!(f, "L^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid coefficient {text:?} at byte {offset}")]
pub struct CoeffParseError {
    pub text: String,
    pub offset: usize,
}

/// Reads one polynomial starting at `pos`: an optional sign, then monomials
/// separated by `+`/`-`. Whitespace between tokens is skipped. Returns the
/// polynomial and the position after it, or `None` if no monomial is present.
pub(crate) fn scan_poly(s: &str, mut pos: usize) -> Option<(LambdaPoly, usize)> {
    let bytes = s.as_bytes();
    let skip_ws = |p: &mut usize| {
        while bytes.get(*p).is_some_and(|b| b.is_ascii_whitespace()) {
            *p += 1;
        }
    };
    let mut out = LambdaPoly::zero();
    let mut first = true;
    loop {
        let save = pos;
        skip_ws(&mut pos);
        let mut negative = false;
        match bytes.get(pos) {
            Some(b'+') if !first => pos += 1,
            Some(b'-') => {
                negative = true;
                pos += 1;
            }
            _ if first => {}
            _ => return Some((out, save)),
        }
        skip_ws(&mut pos);
        let Some((mono, next)) = scan_monomial(s, pos) else {
            if first {
                return None;
            }
            return Some((out, save));
        };
        out.add_assign_ref(&if negative { -mono } else { mono });
        pos = next;
        first = false;
    }
}

fn scan_monomial(s: &str, mut pos: usize) -> Option<(LambdaPoly, usize)> {
    let bytes = s.as_bytes();
    let start = pos;
    while bytes.get(pos).is_some_and(u8::is_ascii_digit) {
        pos += 1;
    }
    let coeff = if pos > start {
        BigInt::from_str(&s[start..pos]).ok()?
    } else {
        BigInt::one()
    };
    if bytes.get(pos) != Some(&b'L') || ident_continues(bytes, pos + 1) {
        return (pos > start).then(|| (LambdaPoly::constant(coeff), pos));
    }
    pos += 1;
    let mut exp = 1u32;
    if bytes.get(pos) == Some(&b'^') {
        let es = pos + 1;
        let mut p = es;
        while bytes.get(p).is_some_and(u8::is_ascii_digit) {
            p += 1;
        }
        if p == es {
            return None;
        }
        exp = s[es..p].parse().ok()?;
        pos = p;
    }
    Some((LambdaPoly::monomial(coeff, exp), pos))
}

fn ident_continues(bytes: &[u8], pos: usize) -> bool {
    bytes
        .get(pos)
        .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
}

impl FromStr for LambdaPoly {
    type Err = CoeffParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |offset| CoeffParseError {
            text: s.to_string(),
            offset,
        };
        let (p, end) = scan_poly(s, 0).ok_or_else(|| err(0))?;
        if !s[end..].trim().is_empty() {
            return Err(err(end));
        }
        Ok(p)
    }
}

/// Formats a rational as `n` or `n/d`.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Ok(q) = Rational::from_str(s) {
        return Some(q);
    }
    // decimal notation such as 0.5 or -1.25
    let (int, frac) = s.split_once('.')?;
    if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let negative = int.starts_with('-');
    let int_digits = int.trim_start_matches(['-', '+']);
    if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_digits}{frac}");
    let numer = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).ok()?;
    let denom = num::pow(BigInt::from(10), frac.len());
    let q = Rational::new(numer, denom);
    Some(if negative { -q } else { q })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LambdaPoly {
        s.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn addition() {
        assert!(poly_add(&p("L"), &p("-L")).is_zero());
        assert_eq!(poly_add(&p("1"), &p("L")), p("L+1"));
        assert_eq!(poly_add(&p("2L^2+1"), &p("3L")), p("2L^2+3L+1"));
    }

    #[test]
    fn multiplication() {
        assert_eq!(poly_mul(&p("L"), &p("L")), p("L^2"));
        let x = p("3L^3-L+7");
        assert_eq!(poly_mul(&LambdaPoly::one(), &x), x);
        assert_eq!(poly_mul(&p("L+1"), &p("L-1")), p("L^2-1"));
    }

    #[test]
    fn specialization() {
        assert_eq!(specialize(&p("L^2"), &q(-1, 1)), q(1, 1));
        assert_eq!(specialize(&LambdaPoly::zero(), &q(5, 7)), q(0, 1));
        assert_eq!(specialize(&p("2L+3"), &q(1, 2)), q(4, 1));
    }

    #[test]
    fn display_forms() {
        assert_eq!(p("L").to_string(), "L");
        assert_eq!(p("-2").to_string(), "-2");
        assert_eq!(p("1+3L^2").to_string(), "3L^2+1");
        assert_eq!(p("-L^2+L-1").to_string(), "-L^2+L-1");
        assert_eq!(LambdaPoly::zero().to_string(), "0");
        assert_eq!(p("2L - 1").to_string(), "2L-1");
    }

    #[test]
    fn parse_errors() {
        assert!("".parse::<LambdaPoly>().is_err());
        assert!("L^".parse::<LambdaPoly>().is_err());
        assert!("2x".parse::<LambdaPoly>().is_err());
        assert!("Lx".parse::<LambdaPoly>().is_err());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("1/2"), Some(q(1, 2)));
        assert_eq!(parse_rational("-1"), Some(q(-1, 1)));
        assert_eq!(parse_rational("0.5"), Some(q(1, 2)));
        assert_eq!(parse_rational("-1.25"), Some(q(-5, 4)));
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(format_rational(&q(-6, 1)), "-6");
        assert_eq!(format_rational(&q(3, 6)), "1/2");
    }
}
