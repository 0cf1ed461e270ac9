use super::laurent::HalfLaurent;
use crate::error::Result;

/// `numerator / (t^{1/2} + t^{-1/2})^k`.
///
/// The denominator is `2^k` at `t = 1`, so the expansion at `t = 1` always
/// exists; `(q + 1)` is likewise a unit in the cyclotomic ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFn {
    numerator: HalfLaurent,
    denom_exponent: u32,
}

impl RationalFn {
    pub fn new(numerator: HalfLaurent, denom_exponent: u32) -> Self {
        Self { numerator, denom_exponent }
    }

    pub fn zero() -> Self {
        Self::new(HalfLaurent::zero(), 0)
    }

    pub fn one() -> Self {
        Self::new(HalfLaurent::one(), 0)
    }

    pub fn numerator(&self) -> &HalfLaurent {
        &self.numerator
    }

    pub fn denom_exponent(&self) -> u32 {
        self.denom_exponent
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Rewrite over the larger denominator `(s + 1/s)^k`, `k >= denom_exponent`.
    pub fn with_denominator(&self, k: u32) -> Self {
        assert!(k >= self.denom_exponent);
        let lift = HalfLaurent::s_plus_inverse().pow(k - self.denom_exponent);
        Self::new(&self.numerator * &lift, k)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let k = self.denom_exponent.max(rhs.denom_exponent);
        let a = self.with_denominator(k);
        let b = rhs.with_denominator(k);
        Self::new(&a.numerator + &b.numerator, k)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.numerator, self.denom_exponent)
    }

    pub fn scale(&self, k: &num_bigint::BigInt) -> Self {
        Self::new(self.numerator.scale(k), self.denom_exponent)
    }

    /// Exact quotient of the numerator by `(t - 1)^k`.
    pub fn div_exact_t_minus_one(&self, k: u32) -> Result<Self> {
        Ok(Self::new(self.numerator.div_exact_t_minus_one(k)?, self.denom_exponent))
    }
}

impl std::fmt::Display for RationalFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.denom_exponent {
            0 => write!(f, "{}", self.numerator),
            k => write!(f, "({}) / (t^(1/2) + t^(-1/2))^{k}", self.numerator),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn common_denominator() {
        let a = RationalFn::new(HalfLaurent::s_plus_inverse(), 1);
        let b = RationalFn::one();
        let d = a.sub(&b);
        assert_eq!(d.denom_exponent(), 1);
        assert!(d.numerator().is_zero());
        assert_eq!(b.scale(&BigInt::from(3)).numerator(), &HalfLaurent::monomial(0, 3));
    }
}
