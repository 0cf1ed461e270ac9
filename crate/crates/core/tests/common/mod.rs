#![allow(dead_code)]

use num_traits::{One, Zero};
use ohtsuki_core::arith::{HalfLaurent, PolyZ, Rational};
use ohtsuki_core::diagram::{BraidWord, LinkDiagram};
use ohtsuki_core::harness::Corpus;
use ohtsuki_core::skein::SkeinEngine;

/// `(L+, L-, L0)` differing at one crossing.
pub struct SkeinTriple {
    pub plus: LinkDiagram,
    pub minus: LinkDiagram,
    pub zero: LinkDiagram,
}

pub fn triple_at(d: &LinkDiagram, i: usize) -> SkeinTriple {
    let other = d.switch_crossing(i);
    let zero = d.smooth_crossing(i);
    if d.crossings()[i].sign() > 0 {
        SkeinTriple { plus: d.clone(), minus: other, zero }
    } else {
        SkeinTriple { plus: other, minus: d.clone(), zero }
    }
}

/// One triple per crossing of every corpus diagram.
pub fn corpus_triples() -> Vec<SkeinTriple> {
    let mut out = Vec::new();
    for e in Corpus::bundled().entries() {
        let d = e.diagram().unwrap();
        for i in 0..d.crossing_count() {
            out.push(triple_at(&d, i));
        }
    }
    out
}

/// `t V(L+) - t^-1 V(L-) - (t^(1/2) - t^(-1/2)) V(L0)`.
pub fn jones_residual(e: &SkeinEngine, x: &SkeinTriple) -> HalfLaurent {
    let vp = e.jones(&x.plus).unwrap();
    let vm = e.jones(&x.minus).unwrap();
    let v0 = e.jones(&x.zero).unwrap();
    let s = HalfLaurent::from_terms([(1, 1), (-1, -1)]);
    &(&vp.shift(2) - &vm.shift(-2)) - &(&s * &v0)
}

/// `∇(L+) - ∇(L-) + z ∇(L0)`.
pub fn conway_residual(e: &SkeinEngine, x: &SkeinTriple) -> PolyZ {
    let cp = e.conway(&x.plus).unwrap();
    let cm = e.conway(&x.minus).unwrap();
    let c0 = e.conway(&x.zero).unwrap();
    cp.sub(&cm).add(&c0.mul_monomial(1, 1))
}

/// Exact determinant by fraction-free elimination over the rationals.
fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut acc = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            acc = -acc;
        }
        acc *= &m[c][c];
        for r in c + 1..n {
            let f = &m[r][c] / &m[c][c];
            for k in c..n {
                let v = &f * &m[c][k];
                m[r][k] -= v;
            }
        }
    }
    acc
}

/// Unreduced Burau image of a braid at a rational value of `t`.
fn burau(w: &BraidWord, t: &Rational) -> Vec<Vec<Rational>> {
    let n = w.strands();
    let id = |i: usize, j: usize| if i == j { Rational::one() } else { Rational::zero() };
    let mut m: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| id(i, j)).collect()).collect();
    for &l in w.letters() {
        let i = l.unsigned_abs() as usize - 1;
        let mut g: Vec<Vec<Rational>> = (0..n).map(|a| (0..n).map(|b| id(a, b)).collect()).collect();
        let one = Rational::one();
        let block = if l > 0 {
            [[&one - t, t.clone()], [one.clone(), Rational::zero()]]
        } else {
            let ti = t.recip();
            [[Rational::zero(), one.clone()], [ti.clone(), &one - &ti]]
        };
        for a in 0..2 {
            for b in 0..2 {
                g[i + a][i + b] = block[a][b].clone();
            }
        }
        m = (0..n)
            .map(|a| (0..n).map(|b| (0..n).map(|k| &m[a][k] * &g[k][b]).sum()).collect())
            .collect();
    }
    m
}

/// `det(I - ψ(β))` with the last row and column removed: the Alexander
/// polynomial of the closure at `t`, up to a unit `±t^k`.
pub fn burau_alexander(w: &BraidWord, t: &Rational) -> Rational {
    let n = w.strands();
    if n == 1 {
        return Rational::one();
    }
    let m = burau(w, t);
    let minor: Vec<Vec<Rational>> = (0..n - 1)
        .map(|a| (0..n - 1).map(|b| if a == b { Rational::one() } else { Rational::zero() } - &m[a][b]).collect())
        .collect();
    det(minor)
}

/// `∇(z)` at `z² = t - 2 + 1/t` for a polynomial with even powers only.
pub fn conway_at(p: &PolyZ, t: &Rational) -> Rational {
    let z2 = t - Rational::from_integer(2.into()) + t.recip();
    let mut acc = Rational::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        assert!(k % 2 == 0 || c.is_zero(), "odd power in a knot's Conway polynomial");
        if k % 2 == 0 {
            acc += Rational::from_integer(c.clone()) * z2.pow(k as i32 / 2);
        }
    }
    acc
}
