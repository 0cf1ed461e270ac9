use std::collections::HashMap;

use super::{Crossing, LinkDiagram};
use crate::error::{Error, Result};

/// Builds a [`LinkDiagram`] from crossings over arbitrary raw edge ids.
///
/// Raw ids may be identified with [`Assembler::merge`] (splicing strands
/// through a removed crossing). Every raw id carries an ordering key;
/// components are sorted by the smallest key among their edges. Raw ids that
/// end up in no crossing become crossingless circles.
pub(crate) struct Assembler<K> {
    crossings: Vec<Crossing>,
    parent: Vec<usize>,
    keys: Vec<K>,
    free_loops: Vec<K>,
}

impl<K: Ord + Clone> Assembler<K> {
    pub fn new() -> Self {
        Self { crossings: Vec::new(), parent: Vec::new(), keys: Vec::new(), free_loops: Vec::new() }
    }

    pub fn edge(&mut self, key: K) -> usize {
        let id = self.parent.len();
        self.parent.push(id);
        self.keys.push(key);
        id
    }

    pub fn crossing(&mut self, edges: [usize; 4], positive: bool) {
        self.crossings.push(Crossing { edges, positive });
    }

    pub fn merge(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    pub fn free_loop(&mut self, key: K) {
        self.free_loops.push(key);
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn finish(mut self) -> Result<LinkDiagram> {
        let n_raw = self.parent.len();
        for i in 0..self.crossings.len() {
            for s in 0..4 {
                let e = self.crossings[i].edges[s];
                self.crossings[i].edges[s] = self.find(e);
            }
        }

        // Head (incoming) and tail (outgoing) occurrence of every root.
        let mut head: HashMap<usize, (usize, usize)> = HashMap::new();
        let mut tail: HashMap<usize, (usize, usize)> = HashMap::new();
        for (i, x) in self.crossings.iter().enumerate() {
            for s in 0..4 {
                let e = x.edges[s];
                let slot_map = if x.is_in_slot(s) { &mut head } else { &mut tail };
                if slot_map.insert(e, (i, s)).is_some() {
                    let what = if x.is_in_slot(s) { "enters" } else { "leaves" };
                    return Err(Error::Orientation(format!(
                        "an edge {what} crossings twice (crossing {i})"
                    )));
                }
            }
        }
        for e in head.keys() {
            if !tail.contains_key(e) {
                return Err(Error::Orientation("an edge has no outgoing end".into()));
            }
        }
        for e in tail.keys() {
            if !head.contains_key(e) {
                return Err(Error::Orientation("an edge has no incoming end".into()));
            }
        }

        // Components: traced cycles of roots plus crossingless classes.
        let mut comps: Vec<(K, Vec<usize>)> = Vec::new();
        let mut min_key: HashMap<usize, K> = HashMap::new();
        for raw in 0..n_raw {
            let root = self.find(raw);
            let k = self.keys[raw].clone();
            min_key
                .entry(root)
                .and_modify(|cur| {
                    if k < *cur {
                        *cur = k.clone();
                    }
                })
                .or_insert(k);
        }
        let mut visited: HashMap<usize, bool> = HashMap::new();
        let mut roots: Vec<usize> = (0..n_raw).filter(|&r| self.parent[r] == r).collect();
        roots.sort_unstable();
        for &root in &roots {
            if !head.contains_key(&root) {
                comps.push((min_key[&root].clone(), Vec::new()));
                continue;
            }
            if visited.contains_key(&root) {
                continue;
            }
            let mut cycle = Vec::new();
            let mut e = root;
            loop {
                visited.insert(e, true);
                cycle.push(e);
                let (x, s) = head[&e];
                e = self.crossings[x].edges[(s + 2) % 4];
                if e == root {
                    break;
                }
                if visited.contains_key(&e) {
                    return Err(Error::Orientation("strand tracing did not close up".into()));
                }
            }
            let key = cycle.iter().map(|r| min_key[r].clone()).min().unwrap();
            // Base point: the traced edge with the smallest raw id.
            let start = cycle.iter().enumerate().min_by_key(|(_, r)| **r).map(|(i, _)| i).unwrap();
            cycle.rotate_left(start);
            comps.push((key, cycle));
        }
        for k in self.free_loops.drain(..) {
            comps.push((k, Vec::new()));
        }
        comps.sort_by(|a, b| a.0.cmp(&b.0));

        let mut new_id: HashMap<usize, usize> = HashMap::new();
        let mut edge_component = Vec::new();
        let mut ranges = Vec::with_capacity(comps.len());
        for (ci, (_, cycle)) in comps.iter().enumerate() {
            let start = edge_component.len();
            for &r in cycle {
                new_id.insert(r, edge_component.len());
                edge_component.push(ci);
            }
            ranges.push((start, cycle.len()));
        }
        let crossings = self
            .crossings
            .iter()
            .map(|x| Crossing { edges: x.edges.map(|e| new_id[&e]), positive: x.positive })
            .collect();
        Ok(LinkDiagram::from_parts(crossings, edge_component, ranges))
    }
}
