//! Oriented link diagrams.
//!
//! A crossing is stored as four edge ids in planar-diagram order: the
//! incoming under-strand first, then counterclockwise. The under strand runs
//! from slot 0 to slot 2. For a positive crossing the over strand runs from
//! slot 3 to slot 1, for a negative one from slot 1 to slot 3. Edge ids are
//! numbered consecutively along each component, components in order, so a
//! component is a contiguous range of edge ids.
//!
//! Components without crossings (split trivial circles) carry no edges.

mod assemble;
mod braid;
mod cable;
mod framed;
mod pd;

use std::fmt;

pub use braid::{braid_closure, BraidWord};
pub use cable::{cable, enumerate_tuples, tuple_stats, CableTuple, TupleStats};
pub use framed::{FramedLink, FramingSummary};
pub use pd::parse_pd;

pub(crate) use assemble::Assembler;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub(crate) edges: [usize; 4],
    pub(crate) positive: bool,
}

impl Crossing {
    pub fn edges(&self) -> [usize; 4] {
        self.edges
    }

    pub fn sign(&self) -> i64 {
        if self.positive {
            1
        } else {
            -1
        }
    }

    pub(crate) fn over_in_slot(&self) -> usize {
        if self.positive {
            3
        } else {
            1
        }
    }

    pub(crate) fn is_in_slot(&self, slot: usize) -> bool {
        slot == 0 || slot == self.over_in_slot()
    }

    /// The same crossing with the strands exchanged; edges keep their ids.
    pub(crate) fn switched(&self) -> Crossing {
        let [a, b, c, d] = self.edges;
        if self.positive {
            Crossing { edges: [d, a, b, c], positive: false }
        } else {
            Crossing { edges: [b, c, d, a], positive: true }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    edge_component: Vec<usize>,
    /// Edge range `[start, start+len)` of each component; `len == 0` marks a
    /// crossingless circle.
    component_ranges: Vec<(usize, usize)>,
}

impl LinkDiagram {
    /// The empty link.
    pub fn empty() -> Self {
        Self { crossings: Vec::new(), edge_component: Vec::new(), component_ranges: Vec::new() }
    }

    /// The 0-crossing unknot.
    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    /// `n` disjoint crossingless circles.
    pub fn unlink(n: usize) -> Self {
        Self { crossings: Vec::new(), edge_component: Vec::new(), component_ranges: vec![(0, 0); n] }
    }

    pub fn component_count(&self) -> usize {
        self.component_ranges.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_component.len()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn is_empty(&self) -> bool {
        self.component_ranges.is_empty()
    }

    pub fn is_knot(&self) -> bool {
        self.component_count() == 1
    }

    pub fn component_of_edge(&self, e: usize) -> usize {
        self.edge_component[e]
    }

    /// Edges of a component in orientation order, starting at its base point.
    pub fn component_edges(&self, c: usize) -> std::ops::Range<usize> {
        let (start, len) = self.component_ranges[c];
        start..start + len
    }

    pub fn crossingless_components(&self) -> usize {
        self.component_ranges.iter().filter(|(_, len)| *len == 0).count()
    }

    /// Components of the under and over strand of crossing `i`.
    pub fn crossing_components(&self, i: usize) -> (usize, usize) {
        let x = &self.crossings[i];
        (self.edge_component[x.edges[0]], self.edge_component[x.edges[1]])
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(Crossing::sign).sum()
    }

    /// Signed count of the crossings of `component` with itself.
    pub fn self_writhe(&self, component: usize) -> Result<i64> {
        if component >= self.component_count() {
            return Err(Error::InvalidArgument(format!(
                "component {component} out of range (diagram has {})",
                self.component_count()
            )));
        }
        Ok((0..self.crossings.len())
            .filter(|&i| self.crossing_components(i) == (component, component))
            .map(|i| self.crossings[i].sign())
            .sum())
    }

    /// Symmetric matrix of pairwise linking numbers, zero diagonal.
    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.component_count();
        let mut twice = vec![vec![0i64; n]; n];
        for i in 0..self.crossings.len() {
            let (u, o) = self.crossing_components(i);
            if u != o {
                let s = self.crossings[i].sign();
                twice[u][o] += s;
                twice[o][u] += s;
            }
        }
        for row in twice.iter_mut() {
            for v in row.iter_mut() {
                debug_assert!(*v % 2 == 0, "odd signed count between two components");
                *v /= 2;
            }
        }
        twice
    }

    /// Algebraically split: every pairwise linking number vanishes.
    pub fn is_asl(&self) -> bool {
        self.first_nonzero_linking().is_none()
    }

    pub(crate) fn first_nonzero_linking(&self) -> Option<(usize, usize, i64)> {
        let lk = self.linking_matrix();
        for (i, row) in lk.iter().enumerate() {
            for (j, &v) in row.iter().enumerate().skip(i + 1) {
                if v != 0 {
                    return Some((i, j, v));
                }
            }
        }
        None
    }

    /// All crossings switched.
    pub fn mirror(&self) -> Self {
        let mut out = self.clone();
        for x in out.crossings.iter_mut() {
            *x = x.switched();
        }
        out
    }

    /// The diagram with crossing `i` switched; edge numbering is unchanged.
    pub fn switch_crossing(&self, i: usize) -> Self {
        let mut out = self.clone();
        out.crossings[i] = out.crossings[i].switched();
        out
    }

    /// Oriented smoothing of crossing `i`.
    pub fn smooth_crossing(&self, i: usize) -> Self {
        let mut asm = Assembler::new();
        let raw: Vec<usize> = (0..self.edge_count()).map(|e| asm.edge(e)).collect();
        for (j, x) in self.crossings.iter().enumerate() {
            if j != i {
                asm.crossing(x.edges.map(|e| raw[e]), x.positive);
            }
        }
        let [a, b, c, d] = self.crossings[i].edges;
        if self.crossings[i].positive {
            asm.merge(raw[a], raw[b]);
            asm.merge(raw[d], raw[c]);
        } else {
            asm.merge(raw[a], raw[d]);
            asm.merge(raw[b], raw[c]);
        }
        for _ in 0..self.crossingless_components() {
            asm.free_loop(usize::MAX);
        }
        asm.finish().expect("smoothing a valid diagram yields a valid diagram")
    }

    /// Keep only the listed components (in their original order); crossings
    /// with removed components are spliced out.
    pub fn sublink(&self, keep: &[usize]) -> Result<Self> {
        let n = self.component_count();
        let mut kept = vec![false; n];
        for &c in keep {
            if c >= n {
                return Err(Error::InvalidArgument(format!("component {c} out of range")));
            }
            kept[c] = true;
        }
        if kept.iter().all(|&k| k) {
            return Ok(self.clone());
        }
        let mut asm = Assembler::new();
        let raw: Vec<Option<usize>> = (0..self.edge_count())
            .map(|e| {
                let c = self.edge_component[e];
                kept[c].then(|| asm.edge(c))
            })
            .collect();
        for (i, x) in self.crossings.iter().enumerate() {
            let (u, o) = self.crossing_components(i);
            match (kept[u], kept[o]) {
                (true, true) => {
                    asm.crossing(x.edges.map(|e| raw[e].unwrap()), x.positive);
                }
                (true, false) => asm.merge(raw[x.edges[0]].unwrap(), raw[x.edges[2]].unwrap()),
                (false, true) => asm.merge(raw[x.edges[1]].unwrap(), raw[x.edges[3]].unwrap()),
                (false, false) => {}
            }
        }
        for (c, &(_, len)) in self.component_ranges.iter().enumerate() {
            if kept[c] && len == 0 {
                asm.free_loop(c);
            }
        }
        asm.finish()
    }

    /// Planar-diagram code with edges numbered from 1, followed by the
    /// number of crossingless circles when there are any.
    pub fn to_pd(&self) -> String {
        let mut parts: Vec<String> = self
            .crossings
            .iter()
            .map(|x| {
                let [a, b, c, d] = x.edges.map(|e| e + 1);
                format!("X({a},{b},{c},{d})")
            })
            .collect();
        let free = self.crossingless_components();
        if free > 0 {
            parts.push(format!("O^{free}"));
        }
        parts.join(" ")
    }

    /// Deterministic encoding used for memo tables and the on-disk cache.
    pub fn canonical_encoding(&self) -> String {
        let comps: Vec<String> =
            self.component_ranges.iter().map(|(s, l)| format!("{s}+{l}")).collect();
        let signs: String = self.crossings.iter().map(|x| if x.positive { '+' } else { '-' }).collect();
        format!("{}|{}|{}", self.to_pd(), comps.join(","), signs)
    }

    pub(crate) fn from_parts(
        crossings: Vec<Crossing>,
        edge_component: Vec<usize>,
        component_ranges: Vec<(usize, usize)>,
    ) -> Self {
        Self { crossings, edge_component, component_ranges }
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "(empty link)");
        }
        write!(f, "{}", self.to_pd())
    }
}
