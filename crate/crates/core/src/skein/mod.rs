//! Jones and Conway polynomials, the quotient `X`, and the alternating
//! sublink sum `Φ` with its normalized coefficients.

mod bracket;
mod cache;
mod conway;
mod jones;
mod phi;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub use bracket::kauffman_bracket;
pub use cache::JonesCache;
pub use phi::{vanishing_order, PhiValue, VanishingOrder};

pub(crate) use phi::binomial;

use crate::arith::{HalfLaurent, PolyZ, Rational, RationalFn};
use crate::diagram::{cable, CableTuple, LinkDiagram};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeinLimits {
    /// Largest diagram accepted by the bracket engine.
    pub max_crossings: usize,
    /// Largest contraction boundary (number of open edges).
    pub max_boundary: usize,
    /// Node budget of the Conway skein tree.
    pub max_conway_nodes: usize,
    /// Largest component count for the generic sublink sum.
    pub max_sublink_components: usize,
}

impl Default for SkeinLimits {
    fn default() -> Self {
        Self { max_crossings: 400, max_boundary: 30, max_conway_nodes: 2_000_000, max_sublink_components: 12 }
    }
}

/// Evaluates skein invariants with a per-engine memo of Jones polynomials and
/// an optional shared on-disk cache. Safe to share across threads.
#[derive(Debug, Default)]
pub struct SkeinEngine {
    limits: SkeinLimits,
    memo: Mutex<HashMap<String, HalfLaurent>>,
    cache: Option<Arc<JonesCache>>,
}

impl SkeinEngine {
    pub fn new(limits: SkeinLimits) -> Self {
        Self { limits, memo: Mutex::new(HashMap::new()), cache: None }
    }

    pub fn with_cache(mut self, cache: Arc<JonesCache>) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn limits(&self) -> &SkeinLimits {
        &self.limits
    }

    pub fn cache(&self) -> Option<&Arc<JonesCache>> {
        self.cache.as_ref()
    }

    /// Jones polynomial `V(L; t)`; undefined for the empty link.
    pub fn jones(&self, d: &LinkDiagram) -> Result<HalfLaurent> {
        if d.crossing_count() > self.limits.max_crossings {
            return Err(Error::ResourceLimit(format!(
                "{} crossings exceed the limit {}",
                d.crossing_count(),
                self.limits.max_crossings
            )));
        }
        let key = d.canonical_encoding();
        if let Some(v) = self.memo.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        if let Some(v) = self.cache.as_ref().and_then(|c| c.get(d)) {
            self.memo.lock().unwrap().insert(key, v.clone());
            return Ok(v);
        }
        let v = jones::jones_from_bracket(d, self.limits.max_boundary)?;
        if let Some(c) = &self.cache {
            c.insert(d, &v);
        }
        self.memo.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    pub fn conway(&self, d: &LinkDiagram) -> Result<PolyZ> {
        conway::ConwaySolver::new(self.limits.max_conway_nodes).conway(d)
    }

    /// `X(L) = V(L) / (t^1/2 + t^-1/2)^(#L-1)`; `X(∅) = 1`.
    pub fn x_value(&self, d: &LinkDiagram) -> Result<RationalFn> {
        if d.is_empty() {
            return Ok(phi::x_from_jones(0, None));
        }
        Ok(phi::x_from_jones(d.component_count(), Some(&self.jones(d)?)))
    }

    /// `Φ(L) = Σ_{L' ⊂ L} (-1)^(#L - #L') X(L')` over all sublinks, with
    /// `Φ(∅) = 0`, expanded to `order`.
    pub fn phi(&self, d: &LinkDiagram, order: usize) -> Result<PhiValue> {
        let mu = d.component_count();
        if mu == 0 {
            return Ok(PhiValue::new(0, RationalFn::zero(), order));
        }
        if mu > self.limits.max_sublink_components {
            return Err(Error::ResourceLimit(format!(
                "{mu} components means 2^{mu} sublinks (limit {})",
                self.limits.max_sublink_components
            )));
        }
        let top = mu as u32 - 1;
        let mut acc = RationalFn::zero().with_denominator(top);
        for mask in 0u64..(1 << mu) {
            let keep: Vec<usize> = (0..mu).filter(|c| mask >> c & 1 == 1).collect();
            let x = self.x_value(&d.sublink(&keep)?)?.with_denominator(top);
            acc = if (mu - keep.len()) % 2 == 0 { acc.add(&x) } else { acc.sub(&x) };
        }
        Ok(PhiValue::new(mu, acc, order))
    }

    /// Exact `Φ` of the zero-framed cable `L^(i)`, using that every sublink
    /// of `L^(i)` is isotopic to some `L^(j)`, `j <= i`:
    /// `Φ(L^(i)) = Σ_{j <= i} (-1)^(|i|-|j|) Π binom(i_ξ, j_ξ) X(L^(j))`.
    pub fn phi_cable_exact(&self, d: &LinkDiagram, i: &CableTuple) -> Result<RationalFn> {
        let total = i.total();
        if total == 0 {
            return Ok(RationalFn::zero());
        }
        let top = total as u32 - 1;
        let mut acc = RationalFn::zero().with_denominator(top);
        for j in i.sub_tuples() {
            let mult: BigInt = i.0.iter().zip(&j.0).map(|(&a, &b)| binomial(a, b)).product();
            let x = self.x_value(&cable(d, &j)?)?.with_denominator(top).scale(&mult);
            acc = if (total - j.total()) % 2 == 0 { acc.add(&x) } else { acc.sub(&x) };
        }
        Ok(acc)
    }

    pub fn phi_cable(&self, d: &LinkDiagram, i: &CableTuple, order: usize) -> Result<PhiValue> {
        Ok(PhiValue::new(i.total(), self.phi_cable_exact(d, i)?, order))
    }

    /// `c_n(K)`, the coefficient of `z^n` in the Conway polynomial of a knot.
    pub fn conway_coefficient(&self, d: &LinkDiagram, n: usize) -> Result<BigInt> {
        require_knot(d)?;
        if n % 2 == 1 {
            return Err(Error::InvalidArgument(format!("Conway coefficient index {n} is odd")));
        }
        Ok(self.conway(d)?.coeff(n))
    }

    /// `v_i(K) = d^i/dh^i V(K; e^h)` at `h = 0`, i.e. `Σ a_j j^i`.
    pub fn v_derivative(&self, d: &LinkDiagram, i: u32) -> Result<BigInt> {
        require_knot(d)?;
        self.jones(d)?.log_derivative_moment(i)
    }

    /// `Φ_i(L) = d^iΦ/dt^i` at `t = 1`.
    pub fn phi_i(&self, d: &LinkDiagram, i: usize) -> Result<Rational> {
        Ok(self.phi(d, i)?.derivative(i).expect("series computed to order i"))
    }

    /// `φ_k(L) = (-2)^#L / (#L+k)! Φ_(#L+k)(L)`.
    pub fn phi_small(&self, d: &LinkDiagram, k: usize) -> Result<Rational> {
        let order = d.component_count() + k;
        Ok(self.phi(d, order)?.normalized(k).expect("series computed to order #L+k"))
    }

    pub fn flush_cache(&self) -> Result<()> {
        match &self.cache {
            Some(c) => c.flush(),
            None => Ok(()),
        }
    }
}

fn require_knot(d: &LinkDiagram) -> Result<()> {
    if d.is_knot() {
        Ok(())
    } else {
        Err(Error::NotAKnot { components: d.component_count() })
    }
}

pub fn jones(d: &LinkDiagram) -> Result<HalfLaurent> {
    SkeinEngine::default().jones(d)
}

pub fn conway(d: &LinkDiagram) -> Result<PolyZ> {
    SkeinEngine::default().conway(d)
}

#[allow(non_snake_case)]
pub fn X_value(d: &LinkDiagram) -> Result<RationalFn> {
    SkeinEngine::default().x_value(d)
}

pub fn phi(d: &LinkDiagram, order: usize) -> Result<PhiValue> {
    SkeinEngine::default().phi(d, order)
}

pub fn phi_i(d: &LinkDiagram, i: usize) -> Result<Rational> {
    SkeinEngine::default().phi_i(d, i)
}

pub fn phi_small(d: &LinkDiagram, k: usize) -> Result<Rational> {
    SkeinEngine::default().phi_small(d, k)
}

pub fn conway_coefficient(d: &LinkDiagram, n: usize) -> Result<BigInt> {
    SkeinEngine::default().conway_coefficient(d, n)
}

pub fn v_derivative(d: &LinkDiagram, i: u32) -> Result<BigInt> {
    SkeinEngine::default().v_derivative(d, i)
}
