use num_bigint::BigInt;

use super::bracket::kauffman_bracket;
use crate::arith::HalfLaurent;
use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};

/// Jones polynomial in the normalization `V(O) = 1`,
/// `t V(L+) - t^-1 V(L-) = (t^1/2 - t^-1/2) V(L0)`.
///
/// Equal to `(-1)^(#L-1) V_std(L; t^-1)` for the standard Jones polynomial.
/// It is `(-A^3)^-w ⟨D⟩` at `A = t^1/4`, times `(-1)^(#L-1)`.
pub(crate) fn jones_from_bracket(d: &LinkDiagram, max_boundary: usize) -> Result<HalfLaurent> {
    if d.is_empty() {
        return Err(Error::InvalidArgument(
            "the Jones polynomial of the empty link is only defined through X".into(),
        ));
    }
    let w = d.writhe();
    let sign = if (w + d.component_count() as i64 - 1).rem_euclid(2) == 0 { 1 } else { -1 };
    let mut v = HalfLaurent::zero();
    for (e, c) in kauffman_bracket(d, max_boundary)? {
        let a_exp = e - 3 * w;
        debug_assert!(a_exp % 2 == 0, "odd A-exponent in a normalized bracket");
        v.add_term(a_exp / 2, c * BigInt::from(sign));
    }
    Ok(v)
}
