use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{series_expand_rationalfn, HalfLaurent, Rational, RationalFn, TruncSeries};

/// Alternating sublink sum `Φ(L)`, exact and expanded at `t = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiValue {
    pub components: usize,
    pub exact: RationalFn,
    pub series: TruncSeries,
}

impl PhiValue {
    pub(crate) fn new(components: usize, exact: RationalFn, order: usize) -> Self {
        let series = series_expand_rationalfn(&exact, order);
        Self { components, exact, series }
    }

    /// `Φ_i = i! [u^i] Φ`.
    pub fn derivative(&self, i: usize) -> Option<Rational> {
        let c = self.series.coeff(i)?;
        Some(c * Rational::from_integer(factorial(i)))
    }

    /// `φ_k = (-2)^#L [u^(#L+k)] Φ`.
    pub fn normalized(&self, k: usize) -> Option<Rational> {
        let c = self.series.coeff(self.components + k)?;
        Some(c * Rational::from_integer(BigInt::from(-2).pow(self.components as u32)))
    }

    pub fn vanishing_order(&self) -> VanishingOrder {
        vanishing_order(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VanishingOrder {
    Exactly(usize),
    /// Every computed coefficient vanishes.
    AtLeast(usize),
    /// `Φ` is identically zero.
    Infinite,
}

impl VanishingOrder {
    /// Whether the order is known to be at least `n`.
    pub fn at_least(&self, n: usize) -> bool {
        match *self {
            VanishingOrder::Exactly(k) | VanishingOrder::AtLeast(k) => k >= n,
            VanishingOrder::Infinite => true,
        }
    }
}

pub fn vanishing_order(p: &PhiValue) -> VanishingOrder {
    if p.exact.is_zero() {
        return VanishingOrder::Infinite;
    }
    match p.series.valuation() {
        Some(k) => VanishingOrder::Exactly(k),
        None => VanishingOrder::AtLeast(p.series.order() + 1),
    }
}

pub(crate) fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `X(L) = V(L) / (t^1/2 + t^-1/2)^(#L-1)`, with `X(∅) = 1`.
pub(crate) fn x_from_jones(components: usize, v: Option<&HalfLaurent>) -> RationalFn {
    match v {
        None => RationalFn::one(),
        Some(v) => RationalFn::new(v.clone(), components as u32 - 1),
    }
}
