use num_bigint::BigInt;

use super::{CycContext, CycElem, FermatRecord};
use crate::arith::g_coefficients;
use crate::error::{Error, Result};

/// `G_{2l}(q) = Σ_{k=0}^{r-1} k^{2l} q^{k²}`; `G_0` is the quadratic Gauss sum.
pub fn gauss_sum(l: u32, ctx: &CycContext) -> CycElem {
    let r = ctx.r() as i64;
    let mut x = ctx.zero();
    for k in 0..r {
        let w = BigInt::from(k).pow(2 * l);
        x = x.add(&ctx.monomial(&w, k * k));
    }
    x
}

/// The unique `y` with `y G_0 = x`, computed as `ε x G_0 / r` from
/// `G_0² = ε r`. Consumes one digit of precision.
pub fn divide_by_gauss(x: &CycElem, ctx: &CycContext) -> Result<CycElem> {
    let g0 = gauss_sum(0, ctx);
    x.mul(&g0).scale(ctx.epsilon()).div_r()
}

/// `G̃_{2l}(q) = (q-1)^l G_{2l}(q) / G_0(q)`.
pub fn tilde_g(l: u32, ctx: &CycContext) -> Result<CycElem> {
    let q_minus_one = ctx.q_pow(1).sub(&ctx.one());
    divide_by_gauss(&q_minus_one.pow(l as u64).mul(&gauss_sum(l, ctx)), ctx)
}

/// Compares the `(q-1)`-expansion of `G̃_{2l}` with the residues of the
/// coefficients `g_{l,n}` of `A_l ((t-1)/log t)^l`, for `n` up to `order`
/// (capped at each prime's window).
pub fn gauss_limit_check(l: u32, primes: &[u64], order: usize) -> Result<Vec<FermatRecord>> {
    let g = g_coefficients(l as i64, order)?;
    let mut out = Vec::new();
    for &r in primes {
        let ctx = CycContext::new(r, 2)?;
        let n = order.min(ctx.window());
        let a = tilde_g(l, &ctx)?.q_expansion_to(n)?;
        for (k, (ak, gk)) in a.iter().zip(&g).enumerate() {
            out.push(FermatRecord::compare(format!("G~_{}", 2 * l), r, k, *ak, gk));
        }
    }
    if out.is_empty() && !primes.is_empty() {
        return Err(Error::InvalidArgument("no coefficients to compare".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermat::{odd_primes, Verdict};

    #[test]
    fn gauss_sums_at_five() {
        let c = CycContext::new(5, 3).unwrap();
        let one = |k| c.q_pow(k);
        assert_eq!(gauss_sum(0, &c), c.one().add(&one(1).scale(2)).add(&one(4).scale(2)));
        assert_eq!(gauss_sum(1, &c), one(1).scale(17).add(&one(4).scale(13)));
    }

    #[test]
    fn gauss_square() {
        for r in odd_primes(3, 23) {
            let c = CycContext::new(r, 3).unwrap();
            let g = gauss_sum(0, &c);
            assert_eq!(g.mul(&g), c.from_int(c.epsilon() * r as i64), "r = {r}");
        }
    }

    #[test]
    fn division() {
        let c = CycContext::new(7, 3).unwrap();
        let g = gauss_sum(0, &c);
        assert_eq!(divide_by_gauss(&g, &c).unwrap(), c.one().reduce(2));
        let er = c.from_int(c.epsilon() * 7);
        assert_eq!(divide_by_gauss(&er, &c).unwrap(), g.reduce(2));
        let y = c.q_pow(3).add(&c.from_int(5));
        assert_eq!(divide_by_gauss(&y.mul(&g), &c).unwrap(), y.reduce(2));
        assert!(divide_by_gauss(&c.one(), &c).is_err());
    }

    #[test]
    fn tilde_g_examples() {
        let c = CycContext::new(7, 2).unwrap();
        assert_eq!(tilde_g(0, &c).unwrap(), c.one().reduce(1));
        assert_eq!(tilde_g(1, &c).unwrap().q_expansion().coeffs[0], 3);
        let c = CycContext::new(11, 2).unwrap();
        assert_eq!(tilde_g(2, &c).unwrap().q_expansion().coeffs[0], 9);
        let c = CycContext::new(5, 2).unwrap();
        let x = gauss_sum(1, &c).mul(&c.q_pow(1).sub(&c.one()));
        assert_eq!(divide_by_gauss(&x, &c).unwrap().q_expansion().coeffs[0], 2);
    }

    #[test]
    fn limit_check_small() {
        let recs = gauss_limit_check(1, &[7], 2).unwrap();
        let got: Vec<u64> = recs.iter().map(|r| r.computed).collect();
        // g_1 = -1/2 - u/4 + u^2/24 + ...
        assert_eq!(got, vec![3, 5, 5]);
        assert!(recs.iter().all(|r| r.verdict == Verdict::Pass));
        for l in 0..=3 {
            let recs = gauss_limit_check(l, &[5, 7, 11, 13], 4).unwrap();
            assert!(recs.iter().all(|r| r.passed()), "l = {l}: {recs:?}");
        }
    }
}
