//! Kauffman bracket by planar contraction.
//!
//! Crossings are absorbed one at a time in an order that keeps the boundary
//! of the absorbed region small. A state is a pairing of the boundary edges
//! (how the smoothed arcs inside the region connect them); each state
//! carries a Laurent polynomial in `A`. Closed loops are absorbed into the
//! coefficient as factors of `δ = -A^2 - A^-2`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{CheckedAdd, CheckedSub, One, Zero};

use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};

/// Laurent polynomial in `A`: `c[i]` is the coefficient of `A^(lo+i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct APoly<T> {
    lo: i64,
    c: Vec<T>,
}

impl<T: Clone + Zero + One + CheckedAdd + CheckedSub> APoly<T> {
    fn one() -> Self {
        Self { lo: 0, c: vec![T::one()] }
    }

    fn mul_delta(&self) -> Option<Self> {
        let mut out = vec![T::zero(); self.c.len() + 4];
        for (i, x) in self.c.iter().enumerate() {
            out[i] = out[i].checked_sub(x)?;
            out[i + 4] = out[i + 4].checked_sub(x)?;
        }
        Some(Self { lo: self.lo - 2, c: out })
    }

    /// `self += other * A^shift`.
    fn add_shifted(&mut self, other: &Self, shift: i64) -> Option<()> {
        let other_lo = other.lo + shift;
        let lo = self.lo.min(other_lo);
        let hi = (self.lo + self.c.len() as i64).max(other_lo + other.c.len() as i64);
        if lo < self.lo || hi > self.lo + self.c.len() as i64 {
            let mut grown = vec![T::zero(); (hi - lo) as usize];
            let off = (self.lo - lo) as usize;
            for (i, x) in self.c.drain(..).enumerate() {
                grown[off + i] = x;
            }
            self.c = grown;
            self.lo = lo;
        }
        let off = (other_lo - self.lo) as usize;
        for (i, x) in other.c.iter().enumerate() {
            self.c[off + i] = self.c[off + i].checked_add(x)?;
        }
        Some(())
    }

    fn terms(&self) -> impl Iterator<Item = (i64, &T)> + '_ {
        self.c.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (self.lo + i as i64, x))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    /// Edge whose other end is already absorbed, at this boundary position.
    Shared(usize),
    /// Edge whose other end is outside; becomes a new boundary position.
    New,
    /// Edge with both ends at this crossing, at the given other slot.
    Twin(usize),
}

struct Step {
    slots: [Slot; 4],
    /// For each old boundary position: its new index, or the slot it meets.
    old: Vec<OldPos>,
    /// New boundary index for each slot of kind `New`.
    new_index: [usize; 4],
    new_len: usize,
}

#[derive(Clone, Copy)]
enum OldPos {
    Kept(usize),
    Meets(usize),
}

/// Contraction order: greedily absorb the crossing sharing the most edges
/// with the current region, from the start crossing giving the smallest
/// maximal boundary.
pub(crate) fn contraction_order(d: &LinkDiagram) -> (Vec<usize>, usize) {
    let n = d.crossing_count();
    if n == 0 {
        return (Vec::new(), 0);
    }
    // ends[e]: the crossings at the two ends of edge e.
    let mut ends: Vec<Vec<usize>> = vec![Vec::new(); d.edge_count()];
    for (i, x) in d.crossings().iter().enumerate() {
        for e in x.edges() {
            ends[e].push(i);
        }
    }
    let neighbors: Vec<Vec<usize>> = d
        .crossings()
        .iter()
        .enumerate()
        .map(|(i, x)| x.edges().iter().flat_map(|&e| ends[e].iter().copied()).filter(|&j| j != i).collect())
        .collect();
    let starts: Vec<usize> = if n <= 64 { (0..n).collect() } else { (0..64).map(|k| k * n / 64).collect() };

    let mut best: Option<(usize, usize, Vec<usize>)> = None;
    for &start in &starts {
        let mut inside = vec![false; n];
        // shared[j]: slots of j whose edge leads into the region.
        let mut shared = vec![0usize; n];
        let mut order = Vec::with_capacity(n);
        let mut boundary = 0usize;
        let mut peak = 0usize;
        let mut total = 0usize;
        let mut next = Some(start);
        while let Some(c) = next {
            inside[c] = true;
            order.push(c);
            let loose = 4 - 2 * twins_count(&d.crossings()[c].edges()) - shared[c];
            boundary = boundary + loose - shared[c];
            peak = peak.max(boundary);
            total += boundary;
            for &j in &neighbors[c] {
                if !inside[j] {
                    shared[j] += 1;
                }
            }
            next = (0..n)
                .filter(|&j| !inside[j])
                .max_by_key(|&j| {
                    let loose = 4 - 2 * twins_count(&d.crossings()[j].edges()) - shared[j];
                    (shared[j] as i64 * 2 - loose as i64, std::cmp::Reverse(j))
                });
        }
        if best.as_ref().map_or(true, |(p, t, _)| (peak, total) < (*p, *t)) {
            best = Some((peak, total, order));
        }
    }
    let (peak, _, order) = best.unwrap();
    (order, peak)
}

fn twins_count(edges: &[usize; 4]) -> usize {
    let mut n = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if edges[i] == edges[j] {
                n += 1;
            }
        }
    }
    n
}

fn plan(d: &LinkDiagram, order: &[usize]) -> Vec<Step> {
    let mut boundary: Vec<usize> = Vec::new();
    let mut steps = Vec::with_capacity(order.len());
    for &ci in order {
        let edges = d.crossings()[ci].edges();
        let mut slots = [Slot::New; 4];
        for s in 0..4 {
            if let Some(t) = (0..4).find(|&t| t != s && edges[t] == edges[s]) {
                slots[s] = Slot::Twin(t);
            } else if let Some(p) = boundary.iter().position(|&e| e == edges[s]) {
                slots[s] = Slot::Shared(p);
            }
        }
        let mut old = Vec::with_capacity(boundary.len());
        let mut next_boundary = Vec::new();
        for (p, &e) in boundary.iter().enumerate() {
            match (0..4).find(|&s| slots[s] == Slot::Shared(p)) {
                Some(s) => old.push(OldPos::Meets(s)),
                None => {
                    old.push(OldPos::Kept(next_boundary.len()));
                    next_boundary.push(e);
                }
            }
        }
        let mut new_index = [usize::MAX; 4];
        for s in 0..4 {
            if slots[s] == Slot::New {
                new_index[s] = next_boundary.len();
                next_boundary.push(edges[s]);
            }
        }
        steps.push(Step { slots, old, new_index, new_len: next_boundary.len() });
        boundary = next_boundary;
    }
    debug_assert!(boundary.is_empty());
    steps
}

enum End {
    Old(usize),
    Slot(usize),
}

/// Apply one smoothing to a pairing. Returns the new pairing and the number
/// of closed loops formed.
fn resolve(step: &Step, pairing: &[u16], smooth: &[usize; 4]) -> (Box<[u16]>, u32) {
    let mut visited = [false; 4];
    let walk = |mut s: usize, visited: &mut [bool; 4]| -> End {
        loop {
            visited[s] = true;
            let s2 = smooth[s];
            visited[s2] = true;
            match step.slots[s2] {
                Slot::New => return End::Slot(s2),
                Slot::Twin(s3) => s = s3,
                Slot::Shared(p) => {
                    let q = pairing[p] as usize;
                    match step.old[q] {
                        OldPos::Kept(_) => return End::Old(q),
                        OldPos::Meets(s4) => s = s4,
                    }
                }
            }
        }
    };
    let index = |e: End| match e {
        End::Old(q) => match step.old[q] {
            OldPos::Kept(k) => k,
            OldPos::Meets(_) => unreachable!(),
        },
        End::Slot(s) => step.new_index[s],
    };

    let mut out = vec![u16::MAX; step.new_len];
    for (p, o) in step.old.iter().enumerate() {
        let OldPos::Kept(k) = *o else { continue };
        if out[k] != u16::MAX {
            continue;
        }
        let q = pairing[p] as usize;
        let other = match step.old[q] {
            OldPos::Kept(kq) => kq,
            OldPos::Meets(s) => index(walk(s, &mut visited)),
        };
        out[k] = other as u16;
        out[other] = k as u16;
    }
    for s in 0..4 {
        if step.slots[s] != Slot::New || visited[s] {
            continue;
        }
        let k = step.new_index[s];
        let other = index(walk(s, &mut visited));
        out[k] = other as u16;
        out[other] = k as u16;
    }
    let mut loops = 0;
    for s in 0..4 {
        if visited[s] {
            continue;
        }
        // Everything left lies on closed loops through the crossing.
        let start = s;
        let mut cur = s;
        loop {
            visited[cur] = true;
            let s2 = smooth[cur];
            visited[s2] = true;
            cur = match step.slots[s2] {
                Slot::Twin(s3) => s3,
                Slot::Shared(p) => match step.old[pairing[p] as usize] {
                    OldPos::Meets(s4) => s4,
                    OldPos::Kept(_) => unreachable!("endpoint walks cover open arcs"),
                },
                Slot::New => unreachable!("endpoint walks cover open arcs"),
            };
            if cur == start {
                break;
            }
        }
        loops += 1;
    }
    (out.into_boxed_slice(), loops)
}

const A_SMOOTH: [usize; 4] = [1, 0, 3, 2];
const B_SMOOTH: [usize; 4] = [3, 2, 1, 0];

fn contract<T>(d: &LinkDiagram, steps: &[Step]) -> Option<APoly<T>>
where
    T: Clone + Zero + One + CheckedAdd + CheckedSub,
{
    let mut states: HashMap<Box<[u16]>, APoly<T>> = HashMap::new();
    states.insert(Box::new([]), APoly::one());
    for step in steps {
        let mut next: HashMap<Box<[u16]>, APoly<T>> = HashMap::with_capacity(states.len() * 2);
        for (pairing, poly) in &states {
            for (smooth, shift) in [(&A_SMOOTH, 1i64), (&B_SMOOTH, -1i64)] {
                let (key, loops) = resolve(step, pairing, smooth);
                let mut p = std::borrow::Cow::Borrowed(poly);
                for _ in 0..loops {
                    p = std::borrow::Cow::Owned(p.mul_delta()?);
                }
                match next.get_mut(&key) {
                    Some(acc) => acc.add_shifted(&p, shift)?,
                    None => {
                        let mut q = p.into_owned();
                        q.lo += shift;
                        next.insert(key, q);
                    }
                }
            }
        }
        states = next;
    }
    let mut total = states.remove(&[][..]).expect("contraction ends with the empty pairing");
    for _ in 0..d.crossingless_components() {
        total = total.mul_delta()?;
    }
    Some(total)
}

/// The unnormalized bracket `⟨D⟩ δ` (one extra factor `δ` for the outermost
/// loop) as `(A-exponent, coefficient)` terms.
fn bracket_times_delta(d: &LinkDiagram, max_boundary: usize) -> Result<Vec<(i64, BigInt)>> {
    let (order, peak) = contraction_order(d);
    if peak > max_boundary {
        return Err(Error::ResourceLimit(format!(
            "contraction boundary {peak} exceeds the limit {max_boundary}"
        )));
    }
    let steps = plan(d, &order);
    if let Some(p) = contract::<i128>(d, &steps) {
        return Ok(p.terms().map(|(e, c)| (e, BigInt::from(*c))).collect());
    }
    let p = contract::<BigInt>(d, &steps).expect("big integers do not overflow");
    Ok(p.terms().map(|(e, c)| (e, c.clone())).collect())
}

/// Kauffman bracket `⟨D⟩` normalized by `⟨O⟩ = 1`, as a map from
/// `A`-exponent to coefficient. The diagram must be nonempty.
pub fn kauffman_bracket(d: &LinkDiagram, max_boundary: usize) -> Result<Vec<(i64, BigInt)>> {
    if d.is_empty() {
        return Err(Error::InvalidArgument("the bracket of the empty diagram is undefined".into()));
    }
    let terms = bracket_times_delta(d, max_boundary)?;
    Ok(divide_by_delta(terms))
}

/// Exact division by `δ = -A^-2 (1 + A^4)`.
fn divide_by_delta(terms: Vec<(i64, BigInt)>) -> Vec<(i64, BigInt)> {
    let Some(lo) = terms.iter().map(|t| t.0).min() else { return Vec::new() };
    let hi = terms.iter().map(|t| t.0).max().unwrap();
    let mut c = vec![BigInt::zero(); (hi - lo + 1) as usize];
    for (e, x) in terms {
        c[(e - lo) as usize] += x;
    }
    // Divide by 1 + A^4 from the top.
    let n = c.len();
    assert!(n > 4, "a bracket times δ has span at least 4");
    let mut q = vec![BigInt::zero(); n - 4];
    for i in (4..n).rev() {
        let k = c[i].clone();
        if !k.is_zero() {
            q[i - 4] = k.clone();
            c[i] -= &k;
            c[i - 4] -= &k;
        }
    }
    debug_assert!(c.iter().all(Zero::is_zero), "bracket not divisible by δ");
    // Quotient times -A^2.
    q.into_iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (lo + i as i64 + 2, -x))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{braid_closure, parse_pd, BraidWord};

    /// Brute-force state sum over all `2^n` smoothings.
    fn naive_bracket(d: &LinkDiagram) -> Vec<(i64, BigInt)> {
        let n = d.crossing_count();
        let mut acc: HashMap<i64, BigInt> = HashMap::new();
        for mask in 0u32..(1 << n) {
            // Union-find over edges: each smoothing joins two pairs of slots.
            let mut parent: Vec<usize> = (0..d.edge_count()).collect();
            fn find(p: &mut [usize], mut x: usize) -> usize {
                while p[x] != x {
                    x = p[x];
                }
                x
            }
            let mut a_count = 0i64;
            for (i, x) in d.crossings().iter().enumerate() {
                let e = x.edges();
                let pairs = if mask >> i & 1 == 0 {
                    a_count += 1;
                    [(e[0], e[1]), (e[2], e[3])]
                } else {
                    a_count -= 1;
                    [(e[0], e[3]), (e[1], e[2])]
                };
                for (u, v) in pairs {
                    let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                    parent[ru] = rv;
                }
            }
            let loops = (0..d.edge_count()).filter(|&e| find(&mut parent, e) == e).count()
                + d.crossingless_components();
            // A^a_count * δ^(loops-1)
            let mut poly: HashMap<i64, BigInt> = HashMap::from([(a_count, BigInt::from(1))]);
            for _ in 1..loops {
                let mut next: HashMap<i64, BigInt> = HashMap::new();
                for (e, c) in &poly {
                    *next.entry(e + 2).or_default() -= c;
                    *next.entry(e - 2).or_default() -= c;
                }
                poly = next;
            }
            for (e, c) in poly {
                *acc.entry(e).or_default() += c;
            }
        }
        let mut v: Vec<(i64, BigInt)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort();
        v
    }

    fn sorted(mut v: Vec<(i64, BigInt)>) -> Vec<(i64, BigInt)> {
        v.sort();
        v
    }

    #[test]
    fn unknot_and_unlink() {
        let one = kauffman_bracket(&LinkDiagram::unknot(), 32).unwrap();
        assert_eq!(one, vec![(0, BigInt::from(1))]);
        let two = sorted(kauffman_bracket(&LinkDiagram::unlink(2), 32).unwrap());
        assert_eq!(two, vec![(-2, BigInt::from(-1)), (2, BigInt::from(-1))]);
        assert!(kauffman_bracket(&LinkDiagram::empty(), 32).is_err());
    }

    #[test]
    fn matches_state_sum() {
        let words: &[(usize, &[i64])] = &[
            (2, &[1, 1, 1]),
            (3, &[1, -2, 1, -2]),
            (2, &[1, 1]),
            (3, &[1, 1, 1, 2, -1, 2]),
            (3, &[1, -2, 1, -2, 1, -2]),
            (4, &[1, 2, 3, -1, 2, -3, 1]),
            (3, &[1, 1, 2, 2]),
            (4, &[1, 3, 2, 2, 1]),
        ];
        for (n, w) in words {
            let d = braid_closure(&BraidWord::new(*n, w.to_vec()).unwrap());
            assert_eq!(sorted(kauffman_bracket(&d, 32).unwrap()), naive_bracket(&d), "{w:?}");
        }
        let d = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        assert_eq!(sorted(kauffman_bracket(&d, 32).unwrap()), naive_bracket(&d));
    }

    #[test]
    fn kinks_and_twin_edges() {
        // One-crossing unknot diagrams: bracket is -A^{±3}.
        let pos = parse_pd("X(1,1,2,2)");
        let neg = parse_pd("X(2,1,1,2)");
        for d in [pos, neg].into_iter().flatten() {
            assert_eq!(kauffman_bracket(&d, 32).unwrap(), naive_bracket(&d));
            assert_eq!(kauffman_bracket(&d, 32).unwrap().len(), 1);
        }
    }

    #[test]
    fn resource_limit() {
        let d = braid_closure(&BraidWord::new(4, vec![1, 2, 3, 1, 2, 3]).unwrap());
        assert!(matches!(kauffman_bracket(&d, 1), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn order_covers_every_crossing() {
        let d = braid_closure(&BraidWord::new(3, vec![1, -2, 1, -2, 1, 1]).unwrap());
        let (mut order, peak) = contraction_order(&d);
        order.sort_unstable();
        assert_eq!(order, (0..d.crossing_count()).collect::<Vec<_>>());
        assert!(peak <= 8);
    }
}
