//! Acceptance criteria 1-12. Each criterion prints one status line to the
//! real stdout (bypassing test capture), so the lines show up in every run.

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use ohtsuki_core::arith::{int, HalfLaurent, Rational};
use ohtsuki_core::diagram::{CableTuple, FramedLink, LinkDiagram};
use ohtsuki_core::fermat::{
    fermat_fixtures, gauss_sum, h_q, h_t, hlimit_check, odd_primes, residue, tau_lambda_check, tau_r,
    gauss_limit_check, CycContext, FermatRecord, Verdict,
};
use ohtsuki_core::harness::{congruence_sweep, Corpus};
use ohtsuki_core::skein::SkeinEngine;
use ohtsuki_core::surgery::{
    congruence_report, evaluate, lambda_asl, lambda_knot, SurgeryPresentation,
};

use common::{conway_residual, corpus_triples, jones_residual};

#[derive(Debug, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    /// A stretch criterion that did not hold or did not fit its budget.
    Regression,
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn emit(line: &str) {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{line}").unwrap();
    out.flush().unwrap();
}

fn criterion(id: u32, title: &str, budget: Duration, stretch: bool, f: impl FnOnce() -> Outcome) -> Status {
    let start = Instant::now();
    let o = f();
    let took = start.elapsed();
    let in_budget = took <= budget;
    let status = match (o.ok && in_budget, stretch) {
        (true, _) => Status::Pass,
        (false, true) => Status::Regression,
        (false, false) => Status::Fail,
    };
    let tag = match status {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Regression => "REGRESSION",
    };
    let budget_note = if in_budget { String::new() } else { format!(" [over budget {budget:?}]") };
    emit(&format!("criterion {id:>2} {tag:<10} {title} ({:.2?}){budget_note}: {}", took, o.detail));
    status
}

fn corpus() -> Corpus {
    Corpus::bundled()
}

fn knot(name: &str) -> LinkDiagram {
    corpus().get(name).unwrap_or_else(|| panic!("corpus entry {name}")).diagram().unwrap()
}

fn all_pass(records: &[FermatRecord]) -> (bool, String) {
    let pass = records.iter().filter(|r| r.verdict == Verdict::Pass).count();
    let inc = records.iter().filter(|r| r.verdict == Verdict::Inconclusive).count();
    let fail = records.len() - pass - inc;
    (fail == 0, format!("{} records, {pass} pass, {inc} inconclusive, {fail} fail", records.len()))
}

fn c1_golden_polynomials() -> Outcome {
    let e = SkeinEngine::default();
    let t: HalfLaurent = "t + t^3 - t^4".parse().unwrap();
    let f8: HalfLaurent = "1 + t^-2 + t^2 - t^-1 - t".parse().unwrap();
    let vt = e.jones(&knot("trefoil+")).unwrap();
    let vf = e.jones(&knot("4_1")).unwrap();
    outcome(vt == t && vf == f8, format!("V(σ₁³) = {vt}; V(4_1) = {vf}"))
}

fn c2_derivative_table() -> Outcome {
    let e = SkeinEngine::default();
    let v = |k: &str, i| e.v_derivative(&knot(k), i).unwrap();
    let b = |x: i64| BigInt::from(x);
    let got = [
        v("trefoil+", 2),
        v("trefoil+", 3),
        v("trefoil-", 2),
        v("trefoil-", 3),
        v("4_1", 2),
        v("4_1", 3),
        e.conway_coefficient(&knot("trefoil+"), 2).unwrap(),
        e.conway_coefficient(&knot("trefoil+"), 4).unwrap(),
    ];
    let want = [b(-6), b(-36), b(-6), b(36), b(6), b(0), b(1), b(0)];
    outcome(
        got == want,
        format!(
            "v2,v3: T+ ({}, {}), T- ({}, {}), 4_1 ({}, {}); c2, c4 (trefoil) = ({}, {})",
            got[0], got[1], got[2], got[3], got[4], got[5], got[6], got[7]
        ),
    )
}

fn c3_trefoil_surgeries() -> Outcome {
    let e = SkeinEngine::default();
    let plus = lambda_knot(&e, &knot("trefoil+"), 1).unwrap();
    let minus = lambda_knot(&e, &knot("trefoil-"), 1).unwrap();
    let ok = plus.lambda1 == int(6)
        && minus.lambda1 == int(6)
        && plus.lambda2 == Some(int(63))
        && minus.lambda2 == Some(int(39));
    outcome(
        ok,
        format!(
            "T+ (σ₁³ closure): ({}, {}); T-: ({}, {})",
            plus.lambda1,
            plus.lambda2.unwrap(),
            minus.lambda1,
            minus.lambda2.unwrap()
        ),
    )
}

fn c4_formula_cross_check() -> Outcome {
    let e = SkeinEngine::default();
    let mut cells = Vec::new();
    let mut ok = true;
    for name in ["trefoil+", "trefoil-", "4_1", "5_2"] {
        let d = knot(name);
        for f in [1, -1] {
            let asl = lambda_asl(&e, &FramedLink::new(d.clone(), vec![f]).unwrap(), 2).unwrap();
            let k = lambda_knot(&e, &d, f).unwrap();
            let same = asl.lambda1 == k.lambda1 && asl.lambda2 == k.lambda2;
            ok &= same;
            cells.push(format!("{name}@{f:+} ({}, {}){}", k.lambda1, k.lambda2.unwrap(), if same { "" } else { " MISMATCH" }));
        }
    }
    outcome(ok, cells.join("; "))
}

fn c5_congruence_sweep() -> Outcome {
    let e = SkeinEngine::default();
    let c = corpus();
    let knots = c.knots().iter().filter(|k| k.name != "unknot").count();
    let r = congruence_sweep(&e, &c, &[-2, -1, 1, 2]);
    outcome(
        knots >= 10 && r.violations == 0,
        format!("{knots} nontrivial knots, {} cells, {} violations", r.rows.len(), r.violations),
    )
}

fn c6_connected_sum() -> Outcome {
    let e = SkeinEngine::default();
    let part = |name| SurgeryPresentation::Knot { diagram: knot(name), n: 1 };
    let sum = evaluate(&e, &SurgeryPresentation::ConnectedSum(vec![part("trefoil+"), part("trefoil-")]), 2).unwrap();
    let rep = congruence_report(&sum);
    outcome(
        sum.lambda2 == Some(int(138)) && rep.pass,
        format!("λ = ({}, {}), congruence {}", sum.lambda1, sum.lambda2.clone().unwrap(), rep.pass),
    )
}

fn c7_gauss_limits() -> Outcome {
    let primes = [5, 7, 11, 13, 17, 19, 23];
    let mut records = Vec::new();
    for l in 1..=3 {
        records.extend(gauss_limit_check(l, &primes, 4).unwrap());
    }
    let (ok, s) = all_pass(&records);
    outcome(ok, s)
}

fn c8_gauss_identity() -> Outcome {
    let primes = odd_primes(3, 23);
    let bad: Vec<u64> = primes
        .iter()
        .copied()
        .filter(|&r| {
            let c = CycContext::new(r, 3).unwrap();
            let g = gauss_sum(0, &c);
            g.mul(&g) != c.from_int(c.epsilon() * r as i64)
        })
        .collect();
    outcome(bad.is_empty(), format!("G0² = ε r for r ∈ {primes:?}; failures {bad:?}"))
}

fn c9_h_limits() -> Outcome {
    let primes = [5, 7, 11, 13];
    let records = hlimit_check(&primes, 3).unwrap();
    let (ok, s) = all_pass(&records);
    // Indices outside the reliable range n <= window - i, up to min(4, window).
    let mut beyond = 0;
    let mut beyond_match = 0;
    for r in primes {
        let c = CycContext::new(r, 2).unwrap();
        let top = c.window().min(4);
        for f in [1, -1] {
            for i in 0..=3usize {
                let a = h_q(i, f, &c).unwrap().q_expansion_to(top).unwrap();
                let h = h_t(i, f, top).unwrap();
                for n in (0..=top).filter(|n| n + i > c.window()) {
                    beyond += 1;
                    if residue(&h.coeffs()[n], r) == Some(a[n]) {
                        beyond_match += 1;
                    }
                }
            }
        }
    }
    outcome(
        ok,
        format!(
            "{s} on i + n <= (r-3)/2; beyond that range {beyond_match}/{beyond} coefficients agree (not required)"
        ),
    )
}

fn c10_tau_end_to_end() -> Outcome {
    let e = SkeinEngine::default();
    let mut cells = Vec::new();
    let mut ok = true;
    for (name, l2) in [("trefoil+", 63), ("trefoil-", 39)] {
        let fl = FramedLink::new(knot(name), vec![1]).unwrap();
        for r in [5, 7] {
            let c = CycContext::new(r, 3).unwrap();
            let want = [int(1), int(6), int(l2)];
            let recs = tau_lambda_check(&e, &fl, &c, &want).unwrap();
            let strict = recs.iter().all(|x| x.verdict == Verdict::Pass) && recs.len() == c.window() + 1;
            ok &= strict;
            let a: Vec<u64> = recs.iter().map(|x| x.computed).collect();
            cells.push(format!("{name} r={r} a={a:?}"));
        }
    }
    outcome(ok, cells.join("; "))
}

fn c11_lambda3() -> Outcome {
    let e = SkeinEngine::default();
    let fl = FramedLink::new(knot("trefoil+"), vec![1]).unwrap();
    let v = lambda_asl(&e, &fl, 3).unwrap();
    let l3 = v.lambda3.clone().unwrap();
    let c = CycContext::new(11, 3).unwrap();
    let a = tau_r(&e, &fl, &c).unwrap().q_expansion();
    let r3 = residue(&l3, 11);
    outcome(r3 == Some(a.coeffs[3]), format!("λ3 = {l3} ≡ {:?} (mod 11); a_11,3 = {}", r3, a.coeffs[3]))
}

fn c12_property_suites() -> Outcome {
    let e = SkeinEngine::default();
    let triples = corpus_triples();
    let skein_ok =
        triples.len() >= 50 && triples.iter().all(|x| jones_residual(&e, x).is_zero() && conway_residual(&e, x).is_zero());

    let mut vanishing_ok = true;
    for name in ["trefoil+", "4_1"] {
        let k = knot(name);
        for i in 1..=3 {
            let p = e.phi_cable(&k, &CableTuple(vec![i]), 2 * i + 1).unwrap();
            vanishing_ok &= p.vanishing_order().at_least(2 * i);
        }
    }

    let fixtures = fermat_fixtures(199);
    let fixtures_ok = fixtures.iter().all(|r| r.verdict == Verdict::Pass);

    // q^k expands to Σ binom(k, n) (q-1)^n, and expansion is multiplicative.
    let mut expansion_ok = true;
    for r in [5u64, 7, 11, 13] {
        let c = CycContext::new(r, 2).unwrap();
        for k in 0..r as i64 - 1 {
            let a = c.q_pow(k).q_expansion_to(r as usize - 2).unwrap();
            let want: Vec<u64> = (0..=r as i64 - 2)
                .map(|n| residue(&Rational::from_integer(binomial(k, n)), r).unwrap())
                .collect();
            expansion_ok &= a == want;
        }
        let x = c.q_pow(2).add(&c.from_int(3)).sub(&c.q_pow(5));
        let y = c.quantum_integer(3).add(&c.q_pow(1));
        let (ax, ay) = (x.q_expansion().coeffs, y.q_expansion().coeffs);
        let axy = x.mul(&y).q_expansion().coeffs;
        for n in 0..axy.len() {
            let conv: u64 = (0..=n).map(|j| ax[j] * ay[n - j]).sum::<u64>() % r;
            expansion_ok &= conv == axy[n];
        }
    }
    outcome(
        skein_ok && vanishing_ok && fixtures_ok && expansion_ok,
        format!(
            "skein triples {} ({}); vanishing orders {}; fixtures {} records ({}); expansion identities {}",
            triples.len(),
            skein_ok,
            vanishing_ok,
            fixtures.len(),
            fixtures_ok,
            expansion_ok
        ),
    )
}

fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::from(0);
    }
    (0..k).fold(BigInt::from(1), |acc, j| acc * (n - j) / (j + 1))
}

#[test]
fn acceptance_criteria() {
    let s = |x| Duration::from_secs(x);
    let results = [
        criterion(1, "golden Jones polynomials", s(1), false, c1_golden_polynomials),
        criterion(2, "derivative and coefficient table", s(1), false, c2_derivative_table),
        criterion(3, "+1 surgeries on the trefoils", s(1), false, c3_trefoil_surgeries),
        criterion(4, "sublink sums equal knot formulas", s(300), false, c4_formula_cross_check),
        criterion(5, "congruence sweep", s(300), false, c5_congruence_sweep),
        criterion(6, "connected sum", s(1), false, c6_connected_sum),
        criterion(7, "Gauss sum quotients vs g_{l,n}", s(60), false, c7_gauss_limits),
        criterion(8, "quadratic Gauss identity", s(1), false, c8_gauss_identity),
        criterion(9, "H-function limits", s(60), false, c9_h_limits),
        criterion(10, "tau_r end to end", s(600), false, c10_tau_end_to_end),
        criterion(11, "lambda_3 vs tau_11 (stretch)", s(7200), true, c11_lambda3),
        criterion(12, "property suites", s(300), false, c12_property_suites),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, s)| **s == Status::Fail).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
