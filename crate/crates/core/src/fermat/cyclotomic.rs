use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{bar, is_prime};
use crate::error::{Error, Result};

/// Parameters of the ring `ℤ/r^M [q] / (1 + q + ... + q^(r-1))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycContext {
    r: u64,
    precision: u32,
}

impl CycContext {
    /// Largest modulus accepted; products of two residues must fit in `u128`
    /// and sums of `r` such products after reduction must not overflow.
    pub const MAX_MODULUS_BITS: u32 = 62;

    pub fn new(r: u64, precision: u32) -> Result<Self> {
        if r < 3 || !is_prime(r) {
            return Err(Error::InvalidArgument(format!("{r} is not an odd prime")));
        }
        if precision == 0 {
            return Err(Error::InvalidArgument("precision M must be positive".into()));
        }
        if Self::max_precision(r) < precision {
            return Err(Error::ResourceLimit(format!(
                "{r}^{precision} does not fit in {} bits (max M = {})",
                Self::MAX_MODULUS_BITS,
                Self::max_precision(r)
            )));
        }
        Ok(Self { r, precision })
    }

    /// Largest `M` with `r^M < 2^62`.
    pub fn max_precision(r: u64) -> u32 {
        let mut m = 0;
        let mut acc: u128 = 1;
        while acc * (r as u128) < (1u128 << Self::MAX_MODULUS_BITS) {
            acc *= r as u128;
            m += 1;
        }
        m
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn modulus(&self) -> u64 {
        self.r.pow(self.precision)
    }

    /// `ε = (-1)^((r-1)/2)`.
    pub fn epsilon(&self) -> i64 {
        if (self.r - 1) / 2 % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `2̄ = (r+1)/2`; `q^(1/2)` is realized as `q^2̄`.
    pub fn bar2(&self) -> u64 {
        self.r.div_ceil(2)
    }

    pub fn bar4(&self) -> u64 {
        bar(4, self.r).expect("4 is a unit mod an odd prime")
    }

    /// Largest index of a reliable `(q-1)`-expansion coefficient.
    pub fn window(&self) -> usize {
        ((self.r - 3) / 2) as usize
    }

    pub fn zero(&self) -> CycElem {
        CycElem { r: self.r, prec: self.precision, c: vec![0; (self.r - 1) as usize] }
    }

    pub fn one(&self) -> CycElem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> CycElem {
        self.monomial(&BigInt::from(n), 0)
    }

    /// `c q^k`, any integer `k`.
    pub fn monomial(&self, c: &BigInt, k: i64) -> CycElem {
        let mut x = self.zero();
        let m = self.modulus();
        let c = c.mod_floor(&BigInt::from(m)).to_u64().expect("reduced below the modulus");
        x.add_at(k.rem_euclid(self.r as i64) as usize, c);
        x
    }

    pub fn q_pow(&self, k: i64) -> CycElem {
        self.monomial(&BigInt::from(1), k)
    }

    /// Quantum integer `[k] = (q^(k/2) - q^(-k/2)) / (q^(1/2) - q^(-1/2))`,
    /// realized as `q^(-(k-1)2̄) (1 + q + ... + q^(k-1))` for `k >= 0`.
    pub fn quantum_integer(&self, k: i64) -> CycElem {
        if k < 0 {
            return self.quantum_integer(-k).neg();
        }
        let mut x = self.zero();
        let shift = -(k - 1) * self.bar2() as i64;
        for j in 0..k {
            x = x.add(&self.q_pow(shift + j));
        }
        x
    }

    /// Inverse of `[2] = q^2̄ + q^-2̄`; `(1 + q)^-1 = Σ_{j=0}^{(r-1)/2} q^(2j)`.
    pub fn inverse_quantum_two(&self) -> CycElem {
        let mut inv = self.zero();
        for j in 0..=(self.r as i64 - 1) / 2 {
            inv = inv.add(&self.q_pow(2 * j));
        }
        inv.mul(&self.q_pow(self.bar2() as i64))
    }
}

/// Element `Σ_{j=0}^{r-2} c_j q^j` with coefficients modulo `r^prec`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycElem {
    r: u64,
    prec: u32,
    c: Vec<u64>,
}

impl CycElem {
    pub fn r(&self) -> u64 {
        self.r
    }

    /// Number of `r`-adic digits known.
    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn modulus(&self) -> u64 {
        self.r.pow(self.prec)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    /// Add `v` to the coefficient of `q^k`, `0 <= k < r`, eliminating `q^(r-1)`.
    fn add_at(&mut self, k: usize, v: u64) {
        let m = self.modulus();
        let v = v % m;
        if k + 1 == self.r as usize {
            let neg = (m - v) % m;
            for x in self.c.iter_mut() {
                *x = (*x + neg) % m;
            }
        } else {
            self.c[k] = (self.c[k] + v) % m;
        }
    }

    fn check_same_ring(&self, other: &Self) {
        assert_eq!(self.r, other.r, "elements of different cyclotomic rings");
    }

    /// The same element with fewer known digits.
    pub fn reduce(&self, prec: u32) -> Self {
        assert!(prec <= self.prec, "cannot raise precision");
        let m = self.r.pow(prec);
        Self { r: self.r, prec, c: self.c.iter().map(|x| x % m).collect() }
    }

    fn align(&self, other: &Self) -> (Self, Self) {
        self.check_same_ring(other);
        let p = self.prec.min(other.prec);
        (self.reduce(p), other.reduce(p))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.align(other);
        let m = a.modulus();
        Self { r: a.r, prec: a.prec, c: a.c.iter().zip(&b.c).map(|(x, y)| (x + y) % m).collect() }
    }

    pub fn neg(&self) -> Self {
        let m = self.modulus();
        Self { r: self.r, prec: self.prec, c: self.c.iter().map(|x| (m - x) % m).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.align(other);
        let m = a.modulus() as u128;
        let r = a.r as usize;
        let mut acc = vec![0u128; r];
        for (i, &x) in a.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.c.iter().enumerate() {
                let k = (i + j) % r;
                acc[k] = (acc[k] + (x as u128) * (y as u128) % m) % m;
            }
        }
        let top = acc[r - 1];
        let c = acc[..r - 1].iter().map(|&x| ((x + m - top) % m) as u64).collect();
        Self { r: a.r, prec: a.prec, c }
    }

    pub fn scale(&self, k: i64) -> Self {
        let m = self.modulus() as i128;
        let k = (k as i128).rem_euclid(m) as u128;
        let c = self.c.iter().map(|&x| ((x as u128) * k % m as u128) as u64).collect();
        Self { r: self.r, prec: self.prec, c }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = {
            let mut one = Self { r: self.r, prec: self.prec, c: vec![0; self.c.len()] };
            one.c[0] = 1 % self.modulus();
            one
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Exact division of every coefficient by `r`; consumes one digit.
    pub fn div_r(&self) -> Result<Self> {
        if self.prec == 0 {
            return Err(Error::Divisibility("no precision left to divide by r".into()));
        }
        if let Some(j) = self.c.iter().position(|x| x % self.r != 0) {
            return Err(Error::Divisibility(format!(
                "coefficient of q^{j} not divisible by r = {}; raise the precision M",
                self.r
            )));
        }
        Ok(Self { r: self.r, prec: self.prec - 1, c: self.c.iter().map(|x| x / self.r).collect() })
    }

    /// Coefficients `a_0..=a_n` of the expansion in powers of `q - 1`, mod `r`:
    /// `a_n = Σ_j c_j binom(j, n)`. Requires `n <= r - 2`.
    pub fn q_expansion_to(&self, n: usize) -> Result<Vec<u64>> {
        let r = self.r as usize;
        if n > r.saturating_sub(2) {
            return Err(Error::InvalidArgument(format!(
                "(q-1)-expansion index {n} beyond r-2 = {}",
                r - 2
            )));
        }
        if self.prec == 0 {
            return Err(Error::Divisibility("element has no known digits".into()));
        }
        let p = self.r;
        // Pascal's triangle mod r.
        let mut row = vec![0u64; n + 1];
        row[0] = 1;
        let mut out = vec![0u64; n + 1];
        for (j, &cj) in self.c.iter().enumerate() {
            if j > 0 {
                for k in (1..=n.min(j)).rev() {
                    row[k] = (row[k] + row[k - 1]) % p;
                }
            }
            let cj = cj % p;
            for k in 0..=n.min(j) {
                out[k] = (out[k] + cj * row[k]) % p;
            }
        }
        Ok(out)
    }

    pub fn q_expansion(&self) -> QExpansion {
        let window = ((self.r - 3) / 2) as usize;
        QExpansion {
            r: self.r,
            window,
            coeffs: self.q_expansion_to(window).expect("window lies below r-2"),
        }
    }
}

impl fmt::Display for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(j, x)| match j {
                0 => x.to_string(),
                1 => format!("{x}*q"),
                _ => format!("{x}*q^{j}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")?;
        } else {
            write!(f, "{}", terms.join(" + "))?;
        }
        write!(f, " (mod {}^{})", self.r, self.prec)
    }
}

/// `(q-1)`-adic coefficients `a_{r,0..=window}` modulo `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QExpansion {
    pub r: u64,
    pub window: usize,
    pub coeffs: Vec<u64>,
}
