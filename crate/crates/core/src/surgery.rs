//! Ohtsuki invariants `λ₁, λ₂, λ₃` of homology spheres given by surgery.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{int, rational_str, Rational};
use crate::diagram::{enumerate_tuples, tuple_stats, FramedLink, LinkDiagram};
use crate::error::{Error, Result};
use crate::skein::SkeinEngine;

#[derive(Clone, Debug)]
pub enum SurgeryPresentation {
    /// `1/n` surgery on a knot.
    Knot { diagram: LinkDiagram, n: i64 },
    /// Surgery on a unit-framed algebraically split link.
    Asl(FramedLink),
    ConnectedSum(Vec<SurgeryPresentation>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LambdaSource {
    /// `λ₁ = -n v₂`, `λ₂` from `v₂, v₃, c₄`.
    KnotFormula,
    /// Sums of `φ_k` over sublinks of the parallels `L^m`.
    SublinkSum,
    ConnectedSum,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaVector {
    #[serde(with = "rational_str")]
    pub lambda1: Rational,
    #[serde(with = "rational_str::option")]
    pub lambda2: Option<Rational>,
    #[serde(with = "rational_str::option")]
    pub lambda3: Option<Rational>,
    pub source: LambdaSource,
}

impl LambdaVector {
    /// Checks `λ₁ ∈ 6ℤ`, `λ₂ ∈ 3ℤ` and `λ₁ ≡ 2λ₂ (mod 24)`; any failure is an
    /// [`Error::InvariantViolation`].
    pub fn validated(self) -> Result<Self> {
        let report = congruence_report(&self);
        if report.pass {
            Ok(self)
        } else {
            Err(Error::InvariantViolation(format!(
                "λ = ({}, {}) fails the integrality or mod-24 congruence",
                self.lambda1,
                self.lambda2.as_ref().map_or("-".to_string(), ToString::to_string)
            )))
        }
    }

    pub fn sphere() -> Self {
        Self {
            lambda1: Rational::zero(),
            lambda2: Some(Rational::zero()),
            lambda3: Some(Rational::zero()),
            source: LambdaSource::SublinkSum,
        }
    }
}

/// `λ₁(S³_{K,1/n}) = -n v₂(K)`.
pub fn lambda1_knot(engine: &SkeinEngine, k: &LinkDiagram, n: i64) -> Result<Rational> {
    let v2 = engine.v_derivative(k, 2)?;
    Ok(Rational::from_integer(-BigInt::from(n) * v2))
}

/// `λ₂(S³_{K,1/n}) = n/2 v₂ - n/3 v₃ + n² (v₂ + 5/3 v₂² - 60 c₄)`.
pub fn lambda2_knot(engine: &SkeinEngine, k: &LinkDiagram, n: i64) -> Result<Rational> {
    let v2 = Rational::from_integer(engine.v_derivative(k, 2)?);
    let v3 = Rational::from_integer(engine.v_derivative(k, 3)?);
    let c4 = Rational::from_integer(engine.conway_coefficient(k, 4)?);
    let n = int(n);
    let quadratic = &v2 + Rational::new(5.into(), 3.into()) * &v2 * &v2 - int(60) * c4;
    Ok(&n * &v2 / int(2) - &n * v3 / int(3) + &n * &n * quadratic)
}

pub fn lambda_knot(engine: &SkeinEngine, k: &LinkDiagram, n: i64) -> Result<LambdaVector> {
    LambdaVector {
        lambda1: lambda1_knot(engine, k, n)?,
        lambda2: Some(lambda2_knot(engine, k, n)?),
        lambda3: None,
        source: LambdaSource::KnotFormula,
    }
    .validated()
}

/// `λ₁..λ_maxOrder` of surgery on a unit-framed ASL as sums over the sublinks
/// of `L`, `L²` and `L³`:
///
/// - `λ₁ = Σ_{L' ⊂ L} f_{L'} φ₁(L')`
/// - `λ₂ = Σ_{L' ⊂ L} f_{L'} φ₁(L') #L'/2 + Σ_{L' ⊂ L²} f_{L'} φ₂(L') / 2^{s₂}`
/// - `λ₃ = Σ_{L' ⊂ L} f_{L'} φ₁(L') #L'(#L'-1)/8
///        + Σ_{L' ⊂ L²} f_{L'} φ₂(L') (s₁ + 2s₂ + ⅓ Σ_{i_ξ=2} f_ξ) / 2^{s₂+1}
///        + Σ_{L' ⊂ L³} f_{L'} φ₃(L') / (2^{s₂+s₃} 3^{s₃})`
///
/// where `f_{L'} = Π f_ξ^{i_ξ}` and `s_j` counts the components taken `j`
/// times.
pub fn lambda_asl(engine: &SkeinEngine, fl: &FramedLink, max_order: usize) -> Result<LambdaVector> {
    if !(1..=3).contains(&max_order) {
        return Err(Error::InvalidArgument(format!("max order {max_order} not in 1..=3")));
    }
    fl.check_unit_framed()?;
    if let Some((i, j, lk)) = fl.diagram.first_nonzero_linking() {
        return Err(Error::NotAsl(i, j, lk));
    }
    let mu = fl.diagram.component_count();
    let phi_k = |tuple: &crate::diagram::CableTuple, k: usize| -> Result<Rational> {
        if tuple.total() == 0 {
            return Ok(Rational::zero());
        }
        let order = tuple.total() + k;
        let p = engine.phi_cable(&fl.diagram, tuple, order)?;
        Ok(p.normalized(k).expect("series computed to #L'+k"))
    };

    let mut l1 = Rational::zero();
    let mut l2 = Rational::zero();
    let mut l3 = Rational::zero();
    for t in enumerate_tuples(mu, 1) {
        let st = tuple_stats(&t, &fl.framings)?;
        let term = int(st.framing_product) * phi_k(&t, 1)?;
        let size = int(t.total() as i64);
        l1 += &term;
        if max_order >= 2 {
            l2 += &term * &size / int(2);
        }
        if max_order >= 3 {
            l3 += &term * &size * (&size - int(1)) / int(8);
        }
    }
    if max_order >= 2 {
        for t in enumerate_tuples(mu, 2) {
            let st = tuple_stats(&t, &fl.framings)?;
            let term = int(st.framing_product) * phi_k(&t, 2)?;
            l2 += &term / int(1 << st.s2);
            if max_order >= 3 {
                let numer = int((st.s1 + 2 * st.s2) as i64)
                    + Rational::new(st.two_count_frame_sum.into(), 3.into());
                l3 += &term * numer / int(1 << (st.s2 + 1));
            }
        }
    }
    if max_order >= 3 {
        for t in enumerate_tuples(mu, 3) {
            let st = tuple_stats(&t, &fl.framings)?;
            let term = int(st.framing_product) * phi_k(&t, 3)?;
            let denom = int(1 << (st.s2 + st.s3)) * int(3i64.pow(st.s3 as u32));
            l3 += term / denom;
        }
    }
    let v = LambdaVector {
        lambda1: l1,
        lambda2: (max_order >= 2).then_some(l2),
        lambda3: (max_order >= 3).then_some(l3),
        source: LambdaSource::SublinkSum,
    };
    if max_order >= 2 {
        v.validated()
    } else {
        let ok = v.lambda1.is_integer() && v.lambda1.to_integer().is_multiple_of(&BigInt::from(6));
        if ok {
            Ok(v)
        } else {
            Err(Error::InvariantViolation(format!("λ₁ = {} is not in 6ℤ", v.lambda1)))
        }
    }
}

/// `λ₁` adds; `λ₂(M₁ # M₂) = λ₂(M₁) + λ₂(M₂) + λ₁(M₁) λ₁(M₂)`. `λ₃` is
/// dropped.
pub fn lambda_connected_sum(parts: &[LambdaVector]) -> Result<LambdaVector> {
    let mut l1 = Rational::zero();
    let mut l2 = Rational::zero();
    for (k, p) in parts.iter().enumerate() {
        let p2 = p.lambda2.as_ref().ok_or_else(|| {
            Error::InvalidArgument(format!("summand {k} has no λ₂"))
        })?;
        l2 = l2 + p2 + &l1 * &p.lambda1;
        l1 += &p.lambda1;
    }
    Ok(LambdaVector { lambda1: l1, lambda2: Some(l2), lambda3: None, source: LambdaSource::ConnectedSum })
}

/// The Casson invariant `λ₁/6`.
pub fn casson_from_lambda1(lambda1: &Rational) -> Result<Rational> {
    let c = lambda1 / int(6);
    if c.is_integer() {
        Ok(c)
    } else {
        Err(Error::InvariantViolation(format!("λ₁ = {lambda1} is not in 6ℤ")))
    }
}

pub fn evaluate(
    engine: &SkeinEngine,
    p: &SurgeryPresentation,
    max_order: usize,
) -> Result<LambdaVector> {
    match p {
        SurgeryPresentation::Knot { diagram, n } => lambda_knot(engine, diagram, *n),
        SurgeryPresentation::Asl(fl) => lambda_asl(engine, fl, max_order),
        SurgeryPresentation::ConnectedSum(parts) => {
            let vs = parts.iter().map(|q| evaluate(engine, q, 2)).collect::<Result<Vec<_>>>()?;
            lambda_connected_sum(&vs)?.validated()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceReport {
    #[serde(with = "rational_str")]
    pub lambda1: Rational,
    #[serde(with = "rational_str::option")]
    pub lambda2: Option<Rational>,
    pub lambda1_in_6z: bool,
    pub lambda2_in_3z: bool,
    /// `(2λ₂ - λ₁) mod 24`, when both are integers.
    pub residue_mod_24: Option<i64>,
    /// `λ₁/6 ≡ λ₂/3 (mod 4)`.
    pub casson_form: bool,
    pub pass: bool,
}

pub fn congruence_report(v: &LambdaVector) -> CongruenceReport {
    let divisible = |x: &Rational, m: i64| x.is_integer() && x.to_integer().is_multiple_of(&BigInt::from(m));
    let lambda1_in_6z = divisible(&v.lambda1, 6);
    let lambda2_in_3z = v.lambda2.as_ref().is_some_and(|x| divisible(x, 3));
    let residue_mod_24 = v.lambda2.as_ref().and_then(|l2| {
        let d = int(2) * l2 - &v.lambda1;
        d.is_integer().then(|| {
            let r = d.to_integer().mod_floor(&BigInt::from(24));
            i64::try_from(r).expect("residue below 24")
        })
    });
    let casson_form = lambda1_in_6z
        && lambda2_in_3z
        && v.lambda2.as_ref().is_some_and(|l2| {
            let d = &v.lambda1 / int(6) - l2 / int(3);
            divisible(&d, 4)
        });
    CongruenceReport {
        lambda1: v.lambda1.clone(),
        lambda2: v.lambda2.clone(),
        lambda1_in_6z,
        lambda2_in_3z,
        residue_mod_24,
        casson_form,
        pass: lambda1_in_6z && lambda2_in_3z && residue_mod_24 == Some(0) && casson_form,
    }
}

/// `λ₁/6 = n c₂(K)`, the surgery formula for the Casson invariant.
pub fn casson_matches_conway(engine: &SkeinEngine, k: &LinkDiagram, n: i64, lambda1: &Rational) -> Result<bool> {
    let c2 = engine.conway_coefficient(k, 2)?;
    Ok(casson_from_lambda1(lambda1)? == Rational::from_integer(BigInt::from(n) * c2))
}
