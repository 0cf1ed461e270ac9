use num_bigint::BigInt;

use super::{divide_by_gauss, legendre, CycContext, CycElem, FermatRecord};
use crate::arith::{g_coefficients, rat, HalfLaurent, Rational, TruncSeries};
use crate::arith::series::series_from_half_laurent;
use crate::error::{Error, Result};

fn check_framing(f: i64) -> Result<()> {
    if f == 1 || f == -1 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("framing must be ±1, got {f}")))
    }
}

/// Pascal's triangle `binom(n, k)` mod `m` for `n < size`.
fn pascal(size: usize, m: u64) -> Vec<Vec<u64>> {
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(size);
    for n in 0..size {
        let mut row = vec![1u64; n + 1];
        for k in 1..n {
            row[k] = (rows[n - 1][k - 1] + rows[n - 1][k]) % m;
        }
        rows.push(row);
    }
    rows
}

/// `H_{i,f}(q)` at the prime of `ctx`; one digit of precision is used by the
/// division by `G_0`.
pub fn h_q(i: usize, f: i64, ctx: &CycContext) -> Result<CycElem> {
    check_framing(f)?;
    let r = ctx.r() as i64;
    let m = ctx.modulus();
    let half = (r - 1) / 2;
    let binom = pascal(r as usize, m);
    let b = |n: i64, k: i64| -> u64 {
        if n < 0 || k < 0 || k > n {
            0
        } else {
            binom[n as usize][k as usize]
        }
    };
    let bar4 = ctx.bar4() as i64;
    let two = ctx.quantum_integer(2);
    let mut two_pows = vec![ctx.one()];
    for _ in 1..half {
        let next = two_pows.last().unwrap().mul(&two);
        two_pows.push(next);
    }
    let mut sum = ctx.zero();
    for k in 1..=half {
        let mut inner = ctx.zero();
        let mut j = 0;
        while k - 2 * j > 0 {
            let c = (b(k - j - 1, j) as u128 * b(k - 2 * j - 1, i as i64) as u128 % m as u128) as u64;
            if c != 0 {
                let term = two_pows[(k - 2 * j - 1) as usize].scale(c as i64);
                inner = if j % 2 == 0 { inner.add(&term) } else { inner.sub(&term) };
            }
            j += 1;
        }
        if inner.is_zero() {
            continue;
        }
        let phase = ctx.q_pow((bar4 * f).rem_euclid(r) * (k * k - 1) % r);
        sum = sum.add(&phase.mul(&ctx.quantum_integer(k)).mul(&inner));
    }
    let pre = ctx
        .q_pow((3 * bar4 * f - ctx.bar2() as i64).rem_euclid(r))
        .mul(&ctx.q_pow(1).sub(&ctx.one()).pow(i as u64 + 1))
        .scale(-f * legendre(f, ctx.r()));
    divide_by_gauss(&pre.mul(&sum), ctx)
}

/// `(t + 1)^k` as a series in `u = t - 1`.
fn t_plus_one_pow(k: u32, order: usize) -> TruncSeries {
    TruncSeries::constant(rat(2, 1), order).add(&TruncSeries::u(order)).pow(k)
}

/// Taylor expansion at `t = 1` of the limit `H_{i,f}(t)` for `i <= 3`.
pub fn h_t(i: usize, f: i64, order: usize) -> Result<TruncSeries> {
    check_framing(f)?;
    let fr = rat(f, 1);
    let u = TruncSeries::u(order);
    // `Σ_m g_{1,m+k} u^(m+s)` for shifting the generating series.
    let g = g_coefficients(1, order + 4)?;
    let shifted = |k: usize, s: usize| {
        let mut c = vec![Rational::from_integer(0.into()); order + 1];
        for (n, slot) in c.iter_mut().enumerate().skip(s) {
            *slot = g[n - s + k].clone();
        }
        TruncSeries::from_coeffs(c)
    };
    Ok(match i {
        0 => TruncSeries::one(order),
        1 => TruncSeries::constant(rat(2, 1), order).add(&u).scale(&-fr),
        2 => {
            let bracket = TruncSeries::constant(&fr + rat(1, 1), order).add(&shifted(1, 0).scale(&rat(4, 1)));
            t_plus_one_pow(2, order).mul(&bracket).scale(&(fr / rat(2, 1)))
        }
        3 => {
            let tpow = series_from_half_laurent(&HalfLaurent::t_power((1 + f) / 2, BigInt::from(1)), order);
            let bracket = TruncSeries::one(order).add(&shifted(3, 1).scale(&rat(24, 1)));
            t_plus_one_pow(3, order).mul(&tpow).mul(&bracket).scale(&(-fr / rat(6, 1)))
        }
        _ => return Err(Error::InvalidArgument(format!("closed form of H_{i} is not available"))),
    })
}

/// Compares the `(q-1)`-expansion of `H_{i,f}(q)` with the residues of the
/// Taylor coefficients of `H_{i,f}(t)`, for `f = ±1`, `i <= max_i`. The
/// congruence holds for indices `n` with `i + n <= (r-3)/2`; only those are
/// compared.
pub fn hlimit_check(primes: &[u64], max_i: usize) -> Result<Vec<FermatRecord>> {
    let mut out = Vec::new();
    for &r in primes {
        let ctx = CycContext::new(r, 2)?;
        for f in [1, -1] {
            for i in 0..=max_i.min(3).min(ctx.window()) {
                let n = ctx.window() - i;
                let a = h_q(i, f, &ctx)?.q_expansion_to(n)?;
                let h = h_t(i, f, n)?;
                for (k, ak) in a.iter().enumerate() {
                    out.push(FermatRecord::compare(format!("H_{i},{f:+}"), r, k, *ak, &h.coeffs()[k]));
                }
            }
        }
    }
    Ok(out)
}
