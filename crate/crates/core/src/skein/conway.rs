use std::collections::HashMap;

use crate::arith::PolyZ;
use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};

/// Conway polynomial with `∇(O) = 1`, `∇(L+) - ∇(L-) = -z ∇(L0)`; this is
/// `(-1)^(#L-1)` times the standard Conway polynomial.
///
/// Skein tree: switch the first crossing met from below when walking the
/// components from their base points, and smooth it; a diagram where every
/// crossing is first met from above is a split unlink.
pub(crate) struct ConwaySolver {
    memo: HashMap<String, PolyZ>,
    nodes: usize,
    max_nodes: usize,
}

impl ConwaySolver {
    pub fn new(max_nodes: usize) -> Self {
        Self { memo: HashMap::new(), nodes: 0, max_nodes }
    }

    pub fn conway(&mut self, d: &LinkDiagram) -> Result<PolyZ> {
        if d.is_empty() {
            return Ok(PolyZ::zero());
        }
        if d.component_count() >= 2 && d.crossingless_components() > 0 {
            return Ok(PolyZ::zero());
        }
        let key = d.canonical_encoding();
        if let Some(p) = self.memo.get(&key) {
            return Ok(p.clone());
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::ResourceLimit(format!(
                "Conway skein tree exceeded {} nodes",
                self.max_nodes
            )));
        }
        let value = match first_under_crossing(d) {
            None => {
                if d.component_count() == 1 {
                    PolyZ::one()
                } else {
                    PolyZ::zero()
                }
            }
            Some(i) => {
                let switched = self.conway(&d.switch_crossing(i))?;
                let smoothed = self.conway(&d.smooth_crossing(i))?;
                let sign = if d.crossings()[i].positive { -1 } else { 1 };
                switched.add(&smoothed.mul_monomial(sign, 1))
            }
        };
        self.memo.insert(key, value.clone());
        Ok(value)
    }
}

/// The first crossing whose first passage, walking every component from its
/// base point in component order, is along the under strand.
fn first_under_crossing(d: &LinkDiagram) -> Option<usize> {
    let mut head = vec![(0usize, 0usize); d.edge_count()];
    for (i, x) in d.crossings().iter().enumerate() {
        for s in 0..4 {
            if x.is_in_slot(s) {
                head[x.edges[s]] = (i, s);
            }
        }
    }
    let mut seen = vec![false; d.crossing_count()];
    for c in 0..d.component_count() {
        for e in d.component_edges(c) {
            let (i, s) = head[e];
            if !seen[i] {
                seen[i] = true;
                if s == 0 {
                    return Some(i);
                }
            }
        }
    }
    None
}
