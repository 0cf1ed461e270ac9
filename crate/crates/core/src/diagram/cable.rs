use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::braid::StrandBundle;
use super::{Assembler, LinkDiagram};
use crate::error::{Error, Result};

/// Multiplicities `(i_1, ..., i_mu)` selecting `i_ξ` parallel copies of
/// component `ξ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CableTuple(pub Vec<usize>);

impl CableTuple {
    pub fn zeros(mu: usize) -> Self {
        Self(vec![0; mu])
    }

    pub fn ones(mu: usize) -> Self {
        Self(vec![1; mu])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|i| = i_1 + ... + i_mu`, the number of components of the cable.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn max(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Number of entries equal to `j`.
    pub fn count_of(&self, j: usize) -> usize {
        self.0.iter().filter(|&&i| i == j).count()
    }

    /// All tuples `j` with `0 <= j_ξ <= i_ξ`.
    pub fn sub_tuples(&self) -> Vec<CableTuple> {
        let mut out = vec![Vec::with_capacity(self.len())];
        for &i in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=i).map(move |j| {
                        let mut p = prefix.clone();
                        p.push(j);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(CableTuple).collect()
    }
}

impl std::fmt::Display for CableTuple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All `(m+1)^mu` tuples with entries in `0..=m`, lexicographic order.
pub fn enumerate_tuples(mu: usize, m: usize) -> Vec<CableTuple> {
    CableTuple(vec![m; mu]).sub_tuples()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleStats {
    pub s1: usize,
    pub s2: usize,
    pub s3: usize,
    /// Inherited framing `prod f_ξ^{i_ξ}`.
    pub framing_product: i64,
    /// `sum of f_ξ over ξ with i_ξ = 2`.
    pub two_count_frame_sum: i64,
}

pub fn tuple_stats(t: &CableTuple, framings: &[i64]) -> Result<TupleStats> {
    if framings.len() != t.len() {
        return Err(Error::InvalidArgument(format!(
            "{} framings for a tuple of length {}",
            framings.len(),
            t.len()
        )));
    }
    if let Some((k, &f)) = framings.iter().enumerate().find(|(_, f)| f.abs() != 1) {
        return Err(Error::NotUnitFramed { component: k, framing: f });
    }
    let framing_product = t
        .0
        .iter()
        .zip(framings)
        .map(|(&i, &f)| if f < 0 && i % 2 == 1 { -1 } else { 1 })
        .product();
    let two_count_frame_sum =
        t.0.iter().zip(framings).filter(|(&i, _)| i == 2).map(|(_, &f)| f).sum();
    Ok(TupleStats {
        s1: t.count_of(1),
        s2: t.count_of(2),
        s3: t.count_of(3),
        framing_product,
        two_count_frame_sum,
    })
}

/// Zero-framed parallel cable: component `ξ` is replaced by `t[ξ]` blackboard
/// parallel copies, and `-w_ξ` full twists (with `w_ξ` the self-writhe) are
/// inserted among the copies so that every pair of copies has linking number
/// zero. Components with `t[ξ] = 0` are deleted.
pub fn cable(d: &LinkDiagram, t: &CableTuple) -> Result<LinkDiagram> {
    let mu = d.component_count();
    if t.len() != mu {
        return Err(Error::InvalidArgument(format!(
            "cable tuple {t} has length {} but the diagram has {mu} components",
            t.len()
        )));
    }
    if t.0.iter().all(|&i| i == 1) {
        return Ok(d.clone());
    }
    if t.total() == 0 {
        return Ok(LinkDiagram::empty());
    }

    let copies = |e: usize| t.0[d.component_of_edge(e)];
    let writhes: Vec<i64> = (0..mu).map(|c| d.self_writhe(c)).collect::<Result<_>>()?;

    // Components that receive compensating twists, on the copies of their
    // base edge.
    let twisted: Vec<bool> = (0..mu)
        .map(|c| t.0[c] >= 2 && writhes[c] != 0 && !d.component_edges(c).is_empty())
        .collect();

    let mut asm: Assembler<(usize, usize)> = Assembler::new();
    // ext[(e, j)]: copy j of edge e at its tail; head[(e, j)]: at its head (the
    // same id unless twists are inserted on e).
    let mut ext: HashMap<(usize, usize), usize> = HashMap::new();
    let mut head: HashMap<(usize, usize), usize> = HashMap::new();
    for e in 0..d.edge_count() {
        let c = d.component_of_edge(e);
        for j in 0..copies(e) {
            let id = asm.edge((c, j));
            ext.insert((e, j), id);
            let h = if twisted[c] && e == d.component_edges(c).start {
                asm.edge((c, j))
            } else {
                id
            };
            head.insert((e, j), h);
        }
    }
    let end = |x: &super::Crossing, slot: usize, j: usize| -> usize {
        let e = x.edges[slot];
        if x.is_in_slot(slot) {
            head[&(e, j)]
        } else {
            ext[&(e, j)]
        }
    };

    for x in d.crossings() {
        let [a, b, _, _] = x.edges;
        let mu_under = copies(a);
        let mu_over = copies(b);
        let cu = d.component_of_edge(a);
        let co = d.component_of_edge(b);
        match (mu_under, mu_over) {
            (0, 0) => {}
            (m, 0) => {
                for j in 0..m {
                    asm.merge(end(x, 0, j), end(x, 2, j));
                }
            }
            (0, m) => {
                for k in 0..m {
                    asm.merge(end(x, 1, k), end(x, 3, k));
                }
            }
            (mu_u, mu_o) => {
                // Vertical (under) line j at x = -j; horizontal (over) line k
                // at y = k if the over strand runs west-to-east (positive),
                // y = -k otherwise. Segments are indexed by position along
                // the line, from south / west.
                let vert: Vec<Vec<usize>> = (0..mu_u)
                    .map(|j| {
                        let mut seg = vec![end(x, 0, j)];
                        seg.extend((1..mu_o).map(|_| asm.edge((cu, j))));
                        seg.push(end(x, 2, j));
                        seg
                    })
                    .collect();
                let horiz: Vec<Vec<usize>> = (0..mu_o)
                    .map(|k| {
                        let mut seg = vec![end(x, 3, k)];
                        seg.extend((1..mu_u).map(|_| asm.edge((co, k))));
                        seg.push(end(x, 1, k));
                        seg
                    })
                    .collect();
                for j in 0..mu_u {
                    for k in 0..mu_o {
                        let y_rank = if x.positive { k } else { mu_o - 1 - k };
                        let x_rank = mu_u - 1 - j;
                        asm.crossing(
                            [
                                vert[j][y_rank],
                                horiz[k][x_rank + 1],
                                vert[j][y_rank + 1],
                                horiz[k][x_rank],
                            ],
                            x.positive,
                        );
                    }
                }
            }
        }
    }

    for c in 0..mu {
        if !twisted[c] {
            continue;
        }
        let m = t.0[c];
        let e0 = d.component_edges(c).start;
        let mut bundle = StrandBundle {
            current: (0..m).map(|j| ext[&(e0, j)]).collect(),
            labels: (0..m).map(|j| (c, j)).collect(),
        };
        let w = writhes[c];
        // -w full twists; each full twist is (σ_1 ... σ_{m-1})^m.
        let positive = w < 0;
        for _ in 0..w.unsigned_abs() {
            for _ in 0..m {
                for p in 0..m - 1 {
                    bundle.cross(&mut asm, p, positive);
                }
            }
        }
        for j in 0..m {
            asm.merge(bundle.current[j], head[&(e0, j)]);
        }
    }

    for c in 0..mu {
        if d.component_edges(c).is_empty() {
            for j in 0..t.0[c] {
                asm.free_loop((c, j));
            }
        }
    }
    asm.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{braid_closure, BraidWord};

    fn closure(n: usize, w: &[i64]) -> LinkDiagram {
        braid_closure(&BraidWord::new(n, w.to_vec()).unwrap())
    }

    #[test]
    fn trivial_tuples() {
        let d = closure(2, &[1, 1, 1]);
        assert_eq!(cable(&d, &CableTuple::ones(1)).unwrap(), d);
        assert!(cable(&d, &CableTuple::zeros(1)).unwrap().is_empty());
        assert!(cable(&d, &CableTuple(vec![1, 1])).is_err());
    }

    #[test]
    fn trefoil_two_cable_is_zero_framed() {
        let d = closure(2, &[1, 1, 1]);
        let c = cable(&d, &CableTuple(vec![2])).unwrap();
        assert_eq!(c.component_count(), 2);
        // 4 per original crossing plus two full twists' worth of 2 crossings each.
        assert_eq!(c.crossing_count(), 3 * 4 + 3 * 2);
        assert_eq!(c.linking_matrix(), vec![vec![0, 0], vec![0, 0]]);
    }

    #[test]
    fn higher_cables_pairwise_unlinked() {
        let d = closure(3, &[1, -2, 1, -2]);
        for m in 2..=4 {
            let c = cable(&d, &CableTuple(vec![m])).unwrap();
            assert_eq!(c.component_count(), m);
            assert!(c.is_asl(), "{m}-cable not algebraically split");
        }
        let t = closure(2, &[1, 1, 1]);
        let c = cable(&t, &CableTuple(vec![3])).unwrap();
        assert!(c.is_asl());
        assert_eq!(c.crossing_count(), 27 + 3 * 6);
    }

    #[test]
    fn unknot_cable_is_unlink() {
        let c = cable(&LinkDiagram::unknot(), &CableTuple(vec![3])).unwrap();
        assert_eq!(c, LinkDiagram::unlink(3));
    }

    #[test]
    fn mixed_tuple_on_link() {
        let whitehead_like = closure(3, &[1, 1, -2, 1, -2]);
        let mu = whitehead_like.component_count();
        for t in enumerate_tuples(mu, 2) {
            let c = cable(&whitehead_like, &t).unwrap();
            assert_eq!(c.component_count(), t.total());
        }
    }

    #[test]
    fn tuple_enumeration() {
        assert_eq!(
            enumerate_tuples(1, 2),
            vec![CableTuple(vec![0]), CableTuple(vec![1]), CableTuple(vec![2])]
        );
        assert_eq!(enumerate_tuples(2, 1).len(), 4);
        assert_eq!(enumerate_tuples(2, 3).len(), 16);
    }

    #[test]
    fn stats() {
        let s = tuple_stats(&CableTuple(vec![2, 0, 1]), &[1, -1, 1]).unwrap();
        assert_eq!(
            s,
            TupleStats { s1: 1, s2: 1, s3: 0, framing_product: 1, two_count_frame_sum: 1 }
        );
        let s = tuple_stats(&CableTuple(vec![0, 0]), &[1, -1]).unwrap();
        assert_eq!((s.s1, s.s2, s.s3, s.framing_product), (0, 0, 0, 1));
        let s = tuple_stats(&CableTuple(vec![3]), &[-1]).unwrap();
        assert_eq!((s.s3, s.framing_product), (1, -1));
        assert!(tuple_stats(&CableTuple(vec![1]), &[2]).is_err());
    }
}
