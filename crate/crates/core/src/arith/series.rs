//! Truncated power series in `u = t - 1` over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::laurent::HalfLaurent;
use super::rational_fn::RationalFn;
use super::Rational;
use crate::error::{Error, Result};

/// `sum_{n <= order} c_n u^n + O(u^{order+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<Rational>,
}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `u` itself (i.e. `t - 1`).
    pub fn u(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    /// Takes `coeffs.len() - 1` as the truncation order.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least a constant term");
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `u^n`; `None` beyond the truncation order.
    pub fn coeff(&self, n: usize) -> Option<&Rational> {
        self.coeffs.get(n)
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Self { coeffs: self.coeffs[..=order].to_vec() }
    }

    /// Index of the first nonzero coefficient, or `None` when every known
    /// coefficient vanishes.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Self { coeffs: (0..=n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Self { coeffs: (0..=n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect() }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::InvalidArgument(
                "series with zero constant term is not invertible".into(),
            ));
        }
        let inv0 = c0.recip();
        let n = self.order();
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &out[k - j];
            }
            out.push(-acc * &inv0);
        }
        Ok(Self { coeffs: out })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Drops the constant term and divides by `u`, lowering the order by one.
    /// The constant term must be zero.
    pub fn div_u(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Divisibility("series has a nonzero constant term".into()));
        }
        if self.order() == 0 {
            return Err(Error::InvalidArgument("cannot divide an order-0 series by u".into()));
        }
        Ok(Self { coeffs: self.coeffs[1..].to_vec() })
    }
}

/// `(1 + u)^alpha` for rational `alpha`, by the binomial series.
pub fn binomial_series(alpha: &Rational, order: usize) -> TruncSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut c = Rational::one();
    coeffs.push(c.clone());
    for n in 1..=order {
        let n_r = Rational::from_integer(BigInt::from(n));
        c = c * (alpha - (&n_r - Rational::one())) / n_r;
        coeffs.push(c.clone());
    }
    TruncSeries { coeffs }
}

/// Taylor expansion of `p` at `t = 1` in powers of `u = t - 1`.
pub fn series_from_half_laurent(p: &HalfLaurent, order: usize) -> TruncSeries {
    let mut out = TruncSeries::zero(order);
    for (e, c) in p.terms() {
        let alpha = Rational::new(BigInt::from(e), BigInt::from(2));
        let term = binomial_series(&alpha, order).scale(&Rational::from_integer(c.clone()));
        out = out.add(&term);
    }
    out
}

/// Expansion of `num / (t^{1/2} + t^{-1/2})^k` at `t = 1`.
pub fn series_expand_rationalfn(x: &RationalFn, order: usize) -> TruncSeries {
    let num = series_from_half_laurent(x.numerator(), order);
    if x.denom_exponent() == 0 {
        return num;
    }
    let denom = series_from_half_laurent(&HalfLaurent::s_plus_inverse(), order)
        .pow(x.denom_exponent());
    num.mul(&denom.inverse().expect("denominator series has constant term 2^k"))
}

/// `log t = log(1 + u)`.
pub fn log_t_series(order: usize) -> TruncSeries {
    let mut s = TruncSeries::zero(order);
    for n in 1..=order {
        let sign = if n % 2 == 1 { 1 } else { -1 };
        s.coeffs[n] = Rational::new(BigInt::from(sign), BigInt::from(n));
    }
    s
}

/// `A_l = (-1/2)^l (2l-1)!!`, with `A_0 = 1`.
pub fn a_const(l: i64) -> Result<Rational> {
    if l < 0 {
        return Err(Error::InvalidArgument(format!("A_l needs l >= 0, got {l}")));
    }
    let mut acc = Rational::one();
    let minus_half = Rational::new(BigInt::from(-1), BigInt::from(2));
    for j in 1..=l {
        acc = acc * &minus_half * Rational::from_integer(BigInt::from(2 * j - 1));
    }
    Ok(acc)
}

/// `u / log(1 + u)` to the given order.
pub fn u_over_log_series(order: usize) -> TruncSeries {
    log_t_series(order + 1)
        .div_u()
        .and_then(|s| s.inverse())
        .expect("log(1+u)/u has constant term 1")
}

/// Coefficients `g_{l,0..=order}` of `A_l ((t-1)/log t)^l`.
pub fn g_coefficients(l: i64, order: usize) -> Result<Vec<Rational>> {
    let a = a_const(l)?;
    let series = u_over_log_series(order).pow(l as u32).scale(&a);
    Ok(series.coeffs)
}

fn fmt_rational_coeff(f: &mut fmt::Formatter<'_>, c: &Rational, first: bool) -> fmt::Result {
    let mag = c.abs();
    match (first, c.is_negative()) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    write!(f, "{mag}")
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            fmt_rational_coeff(f, c, first)?;
            match n {
                0 => {}
                1 => write!(f, "*u")?,
                _ => write!(f, "*u^{n}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(u^{})", self.order() + 1)
    }
}
