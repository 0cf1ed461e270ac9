//! Laurent polynomials in `s = t^{1/2}` with integer coefficients.
//!
//! Exponents are stored as powers of `s`, i.e. twice the exponent of `t`,
//! so `t^{3/2}` is the key `3` and `t^{-2}` is the key `-4`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HalfLaurent {
    terms: BTreeMap<i64, BigInt>,
}

impl HalfLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `c * s^exp`, i.e. `c * t^{exp/2}`.
    pub fn monomial(s_exp: i64, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(s_exp, c.into());
        p
    }

    /// `c * t^exp` for an integral power of `t`.
    pub fn t_power(t_exp: i64, c: impl Into<BigInt>) -> Self {
        Self::monomial(2 * t_exp, c)
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// `s + s^{-1} = t^{1/2} + t^{-1/2}`.
    pub fn s_plus_inverse() -> Self {
        Self::from_terms([(1, 1), (-1, 1)])
    }

    /// `t - 1 = s^2 - 1`.
    pub fn t_minus_one() -> Self {
        Self::from_terms([(2, 1), (0, -1)])
    }

    pub fn add_term(&mut self, s_exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(s_exp).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&s_exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, s_exp: i64) -> BigInt {
        self.terms.get(&s_exp).cloned().unwrap_or_default()
    }

    /// Nonzero terms in ascending order of exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiply by `s^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute `s -> s^{-1}`, i.e. `t -> t^{-1}`.
    pub fn invert_variable(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    /// True iff every exponent of `s` is even, i.e. this is a genuine Laurent
    /// polynomial in `t`.
    pub fn is_integral_in_t(&self) -> bool {
        self.terms.keys().all(|e| e.is_even())
    }

    /// Exact quotient by `(t - 1)^k`; fails if the division leaves a remainder.
    pub fn div_exact_t_minus_one(&self, k: u32) -> Result<Self> {
        let mut cur = self.clone();
        for step in 0..k {
            cur = cur.div_once_s2_minus_one().ok_or_else(|| {
                Error::Divisibility(format!(
                    "polynomial not divisible by (t-1)^{k} (failed at power {})",
                    step + 1
                ))
            })?;
        }
        Ok(cur)
    }

    fn div_once_s2_minus_one(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        // Synthetic division by s^2 - 1 from the top: q_{e-2} += c_e, c_{e-2} += c_e.
        let mut rem = self.terms.clone();
        let mut quot = Self::zero();
        let lo = *rem.keys().next()?;
        while let Some((&e, _)) = rem.iter().next_back() {
            if e < lo + 2 {
                break;
            }
            let c = rem.remove(&e).unwrap();
            let slot = rem.entry(e - 2).or_insert_with(BigInt::zero);
            *slot += &c;
            if slot.is_zero() {
                rem.remove(&(e - 2));
            }
            quot.add_term(e - 2, c);
        }
        if rem.is_empty() {
            Some(quot)
        } else {
            None
        }
    }

    /// Value at `t = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// `sum_j a_j j^i` where `p = sum_j a_j t^j`; this is `d^i/dh^i p(e^h)` at
    /// `h = 0`. Fails if `p` has half-integral exponents.
    pub fn log_derivative_moment(&self, i: u32) -> Result<BigInt> {
        if !self.is_integral_in_t() {
            return Err(Error::InvalidArgument(
                "moment requested for a polynomial with half-integral exponents".into(),
            ));
        }
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| c * num_traits::pow(BigInt::from(e / 2), i as usize))
            .sum())
    }
}

impl Add for &HalfLaurent {
    type Output = HalfLaurent;
    fn add(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &HalfLaurent {
    type Output = HalfLaurent;
    fn sub(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &HalfLaurent {
    type Output = HalfLaurent;
    fn mul(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = HalfLaurent::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        HalfLaurent { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for HalfLaurent {
            type Output = HalfLaurent;
            fn $m(self, rhs: HalfLaurent) -> HalfLaurent {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn fmt_t_power(f: &mut fmt::Formatter<'_>, s_exp: i64) -> fmt::Result {
    if s_exp.is_even() {
        match s_exp / 2 {
            1 => write!(f, "t"),
            k => write!(f, "t^{k}"),
        }
    } else {
        write!(f, "t^({s_exp}/2)")
    }
}

/// Renders in ascending exponent order, e.g. `t + t^3 - t^4` or
/// `t^(-1/2) + t^(1/2)`.
impl fmt::Display for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if *e == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                fmt_t_power(f, *e)?;
            }
        }
        Ok(())
    }
}

impl FromStr for HalfLaurent {
    type Err = Error;

    /// Parses the output of `Display` (and tolerates missing `*` and extra
    /// whitespace).
    fn from_str(text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("polynomial {text:?}: {msg}"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty"));
        }
        if compact == "0" {
            return Ok(Self::zero());
        }
        // Split into signed terms at '+'/'-' that are not inside parentheses or
        // directly after '^'.
        let bytes = compact.as_bytes();
        let mut pieces = Vec::new();
        let mut start = 0;
        let mut depth = 0i32;
        for (i, &b) in bytes.iter().enumerate() {
            match b {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b'+' | b'-' if depth == 0 && i > start && bytes[i - 1] != b'^' => {
                    pieces.push(&compact[start..i]);
                    start = i;
                }
                _ => {}
            }
        }
        pieces.push(&compact[start..]);

        let mut out = Self::zero();
        for piece in pieces {
            let (sign, body) = match piece.as_bytes().first() {
                Some(b'-') => (-1, &piece[1..]),
                Some(b'+') => (1, &piece[1..]),
                _ => (1, piece),
            };
            if body.is_empty() {
                return Err(bad("dangling sign"));
            }
            let (coef_part, var_part) = match body.find('t') {
                Some(pos) => (&body[..pos], Some(&body[pos + 1..])),
                None => (body, None),
            };
            let coef_part = coef_part.trim_end_matches('*');
            let coef = if coef_part.is_empty() {
                BigInt::one()
            } else {
                coef_part.parse::<BigInt>().map_err(|_| bad("bad coefficient"))?
            };
            let s_exp = match var_part {
                None => 0,
                Some("") => 2,
                Some(rest) => {
                    let rest = rest.strip_prefix('^').ok_or_else(|| bad("expected '^'"))?;
                    let rest = rest.trim_start_matches('(').trim_end_matches(')');
                    if let Some((num, den)) = rest.split_once('/') {
                        if den != "2" {
                            return Err(bad("only half-integral exponents allowed"));
                        }
                        num.parse::<i64>().map_err(|_| bad("bad exponent"))?
                    } else {
                        2 * rest.parse::<i64>().map_err(|_| bad("bad exponent"))?
                    }
                }
            };
            out.add_term(s_exp, coef * sign);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> HalfLaurent {
        s.parse().unwrap()
    }

    #[test]
    fn display_ascending() {
        let trefoil = HalfLaurent::from_terms([(2, 1), (6, 1), (8, -1)]);
        assert_eq!(trefoil.to_string(), "t + t^3 - t^4");
        assert_eq!(HalfLaurent::s_plus_inverse().to_string(), "t^(-1/2) + t^(1/2)");
        assert_eq!(HalfLaurent::from_terms([(0, -2), (-4, 3)]).to_string(), "3*t^-2 - 2");
    }

    #[test]
    fn parse_display_agree() {
        for text in ["t + t^3 - t^4", "t^-2 - t^-1 + 1 - t + t^2", "-t^(-5/2) + 7*t^(3/2)", "0"] {
            assert_eq!(p(text).to_string(), text);
        }
        assert_eq!(p("2t^3 - t"), HalfLaurent::from_terms([(6, 2), (2, -1)]));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("t^x".parse::<HalfLaurent>().is_err());
        assert!("".parse::<HalfLaurent>().is_err());
        assert!("t^(1/3)".parse::<HalfLaurent>().is_err());
    }

    #[test]
    fn exact_division_by_t_minus_one() {
        let v = p("t + t^3 - t^4");
        let phi = &v - &HalfLaurent::one();
        let q = phi.div_exact_t_minus_one(2).unwrap();
        assert_eq!(&q * &HalfLaurent::t_minus_one().pow(2), phi);
        assert!(phi.div_exact_t_minus_one(3).is_err());
    }

    #[test]
    fn moments() {
        let v = p("t + t^3 - t^4");
        assert_eq!(v.log_derivative_moment(2).unwrap(), BigInt::from(-6));
        assert_eq!(v.log_derivative_moment(3).unwrap(), BigInt::from(-36));
        assert!(HalfLaurent::s_plus_inverse().log_derivative_moment(1).is_err());
    }
}
