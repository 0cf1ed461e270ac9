//! Fermat residues, cyclotomic arithmetic at odd primes, Gauss sums, the
//! functions `H_{i,f}` and the quantum invariant `τ_r`.

mod cyclotomic;
mod gauss;
mod hfun;
mod tau;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

pub use cyclotomic::{CycContext, CycElem, QExpansion};
pub use gauss::{divide_by_gauss, gauss_sum, gauss_limit_check, tilde_g};
pub use hfun::{h_q, h_t, hlimit_check};
pub use tau::{default_precision, phi_over_q_minus_one, tau_lambda_check, tau_r};

use crate::arith::Rational;
use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Odd primes in `lo..=hi`.
pub fn odd_primes(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(3)..=hi).filter(|&p| is_prime(p)).collect()
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Legendre symbol `(a/r)` by Euler's criterion.
pub fn legendre(a: i64, r: u64) -> i64 {
    let a = a.rem_euclid(r as i64) as u64;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (r - 1) / 2, r) == 1 {
        1
    } else {
        -1
    }
}

/// `m̄ ∈ 1..r` with `m m̄ ≡ 1 (mod r)`.
pub fn bar(m: i64, r: u64) -> Result<u64> {
    let a = m.rem_euclid(r as i64) as u64;
    if a == 0 {
        return Err(Error::InvalidArgument(format!("{m} is not invertible mod {r}")));
    }
    Ok(pow_mod(a, r - 2, r))
}

/// Residue of a rational `m/n` modulo `r`, i.e. `m n̄`; `None` when `r`
/// divides the denominator.
pub fn residue(x: &Rational, r: u64) -> Option<u64> {
    let rb = BigInt::from(r);
    let den = x.denom().mod_floor(&rb).to_i64().expect("reduced below r");
    let inv = bar(den, r).ok()?;
    let num = x.numer().mod_floor(&rb).to_u64().expect("reduced below r");
    Some(num * inv % r)
}

/// Values of a function `ℙ → ℤ/r` at sample primes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FermatSamples {
    pub samples: Vec<(u64, u64)>,
}

impl FermatSamples {
    pub fn from_fn(primes: &[u64], f: impl Fn(u64) -> u64) -> Self {
        Self { samples: primes.iter().map(|&r| (r, f(r) % r)).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueCandidate(pub Rational);

/// Whether every sample agrees with `cand` modulo its prime. Primes dividing
/// the candidate's denominator are skipped.
pub fn residue_check(samples: &FermatSamples, cand: &ResidueCandidate) -> bool {
    samples
        .samples
        .iter()
        .all(|&(r, v)| residue(&cand.0, r).map_or(true, |x| x == v % r))
}

/// `D_k(r) = ((r-1)/2)! / ((r-1)/2 - k)!` modulo `r`.
pub fn fixture_d(k: i64, r: u64) -> Result<u64> {
    let h = ((r - 1) / 2) as i64;
    if h - k < 0 || h - k >= r as i64 {
        return Err(Error::InvalidArgument(format!("D_{k} undefined at r = {r}")));
    }
    let fact = |n: i64| (1..=n as u64).fold(1u64, |acc, j| acc * j % r);
    let num = fact(h);
    let den = fact(h - k);
    Ok(num * bar(den as i64, r)? % r)
}

/// Residue of `D_k`: `(-1/2)(-1/2-1)...(-1/2-(k-1))` for `k > 0`, `1` for
/// `k = 0`, and `1 / ((-1/2+1)...(-1/2+|k|))` for `k < 0`.
pub fn fixture_d_residue(k: i64) -> Rational {
    let half = Rational::new((-1).into(), 2.into());
    let one = Rational::from_integer(1.into());
    if k >= 0 {
        (0..k).fold(one, |acc, j| acc * (&half - Rational::from_integer(j.into())))
    } else {
        let p = (1..=-k).fold(one.clone(), |acc, j| acc * (&half + Rational::from_integer(j.into())));
        one / p
    }
}

/// Outcome of one residue comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// The expected value has no residue at this prime, or the index is at
    /// the edge of the reliable window.
    Inconclusive,
}

/// One line of a residue report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FermatRecord {
    pub label: String,
    pub prime: u64,
    pub index: usize,
    pub computed: u64,
    pub expected: Option<u64>,
    pub verdict: Verdict,
}

impl FermatRecord {
    pub fn compare(label: impl Into<String>, prime: u64, index: usize, computed: u64, expected: &Rational) -> Self {
        let expected = residue(expected, prime);
        let verdict = match expected {
            None => Verdict::Inconclusive,
            Some(e) if e == computed => Verdict::Pass,
            Some(_) => Verdict::Fail,
        };
        Self { label: label.into(), prime, index, computed, expected, verdict }
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }
}

/// Self-test of the residue framework on the classical Fermat functions,
/// over all odd primes in `5..=max_prime`.
pub fn fermat_fixtures(max_prime: u64) -> Vec<FermatRecord> {
    let primes = odd_primes(5, max_prime);
    let mut out = Vec::new();
    let mut push = |label: String, f: &dyn Fn(u64) -> Option<u64>, res: Rational| {
        for &r in &primes {
            if let Some(v) = f(r) {
                out.push(FermatRecord::compare(label.clone(), r, 0, v, &res));
            }
        }
    };
    push("(r-1)/2".into(), &|r| Some((r - 1) / 2), Rational::new((-1).into(), 2.into()));
    push(
        "(r-1)!".into(),
        &|r| Some((1..r).fold(1u64, |acc, j| acc * j % r)),
        Rational::from_integer((-1).into()),
    );
    for a in [2u64, 3, 10] {
        push(
            format!("{a}^(r-1)"),
            &move |r| (a % r != 0).then(|| pow_mod(a, r - 1, r)),
            Rational::from_integer(1.into()),
        );
    }
    for k in -3..=4 {
        push(format!("D_{k}"), &move |r| fixture_d(k, r).ok(), fixture_d_residue(k));
    }
    out
}
