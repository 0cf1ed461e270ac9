use std::path::Path;

use ohtsuki_core::arith::Rational;
use ohtsuki_core::diagram::{FramedLink, LinkDiagram};
use ohtsuki_core::fermat::{
    default_precision, fermat_fixtures, hlimit_check, tau_lambda_check, gauss_limit_check, CycContext, FermatRecord,
};
use ohtsuki_core::harness::{congruence_sweep, resolve_diagram, Corpus, RunConfig};
use ohtsuki_core::skein::SkeinEngine;
use ohtsuki_core::surgery::{casson_matches_conway, congruence_report, lambda_asl, lambda_knot, LambdaVector};
use ohtsuki_core::{Error, Result};
use serde_json::{json, Value};

use crate::{Command, FermatCommand, Which};

/// Result of a command: human-readable text, a JSON body and the verdict.
pub struct Outcome {
    pub text: String,
    pub body: Value,
    pub pass: bool,
}

fn corpus(path: Option<&Path>) -> Result<Corpus> {
    match path {
        Some(p) => Corpus::load(p),
        None => Ok(Corpus::bundled()),
    }
}

pub fn run(cmd: &Command, config: &RunConfig, corpus_path: Option<&Path>) -> Result<Outcome> {
    config.validate()?;
    let engine = config.engine()?;
    let out = match cmd {
        Command::Invariant { entry, which } => {
            let d = resolve_diagram(entry, &corpus(corpus_path)?)?;
            invariant(&engine, config, &d, *which)?
        }
        Command::Lambda { entry, n, framing } => {
            let d = resolve_diagram(entry, &corpus(corpus_path)?)?;
            lambda(&engine, config, d, *n, framing.clone())?
        }
        Command::Sweep { ns } => {
            let report = congruence_sweep(&engine, &corpus(corpus_path)?, ns);
            Outcome {
                text: report.text(),
                pass: report.violations == 0,
                body: serde_json::to_value(&report).expect("serializes"),
            }
        }
        Command::Fermat { sub } => fermat(&engine, config, corpus_path, sub)?,
    };
    engine.flush_cache()?;
    Ok(out)
}

fn invariant(engine: &SkeinEngine, config: &RunConfig, d: &LinkDiagram, which: Which) -> Result<Outcome> {
    let (name, text, extra) = match which {
        Which::Jones => ("jones", engine.jones(d)?.to_string(), Value::Null),
        Which::Conway => ("conway", engine.conway(d)?.to_string(), Value::Null),
        Which::Phi => {
            let p = engine.phi(d, config.order)?;
            let vo = format!("{:?}", p.vanishing_order());
            (
                "phi",
                format!("{}\nseries: {}\nvanishing order: {vo}", p.exact, p.series),
                json!({ "series": p.series.to_string(), "vanishing_order": vo }),
            )
        }
    };
    Ok(Outcome {
        text: format!("{text}\n"),
        body: json!({ "invariant": name, "value": text.lines().next().unwrap_or(""), "detail": extra }),
        pass: true,
    })
}

fn lambda_text(v: &LambdaVector) -> String {
    let mut s = format!("λ1 = {}\n", v.lambda1);
    if let Some(x) = &v.lambda2 {
        s += &format!("λ2 = {x}\n");
    }
    if let Some(x) = &v.lambda3 {
        s += &format!("λ3 = {x}\n");
    }
    s
}

fn lambda(
    engine: &SkeinEngine,
    config: &RunConfig,
    d: LinkDiagram,
    n: Option<i64>,
    framing: Option<Vec<i64>>,
) -> Result<Outcome> {
    let (v, casson) = match (n, framing) {
        (Some(n), None) => {
            let v = lambda_knot(engine, &d, n)?;
            let casson = casson_matches_conway(engine, &d, n, &v.lambda1)?;
            (v, Some(casson))
        }
        (None, Some(f)) => {
            let order = config.order.clamp(1, 3);
            config.check_cable(order)?;
            (lambda_asl(engine, &FramedLink::new(d, f)?, order)?, None)
        }
        (None, None) => return Err(Error::InvalidArgument("give --n for a knot or --framing for a link".into())),
        (Some(_), Some(_)) => return Err(Error::InvalidArgument("--n and --framing are exclusive".into())),
    };
    let rep = congruence_report(&v);
    let pass = rep.pass && casson.unwrap_or(true);
    let mut text = lambda_text(&v);
    text += &format!(
        "λ1 in 6Z: {}\nλ2 in 3Z: {}\n2λ2 - λ1 mod 24: {}\n",
        rep.lambda1_in_6z,
        rep.lambda2_in_3z,
        rep.residue_mod_24.map_or("-".to_string(), |x| x.to_string())
    );
    if let Some(c) = casson {
        text += &format!("λ1/6 = n c2: {c}\n");
    }
    text += if pass { "verdict: pass\n" } else { "verdict: FAIL\n" };
    Ok(Outcome { text, body: json!({ "lambda": v, "congruence": rep, "casson": casson }), pass })
}

fn records_outcome(records: Vec<FermatRecord>) -> Outcome {
    let mut text = format!("{:<12} {:>5} {:>3} {:>8} {:>8}  verdict\n", "label", "r", "n", "computed", "expected");
    for r in &records {
        text += &format!(
            "{:<12} {:>5} {:>3} {:>8} {:>8}  {:?}\n",
            r.label,
            r.prime,
            r.index,
            r.computed,
            r.expected.map_or("-".to_string(), |x| x.to_string()),
            r.verdict
        );
    }
    let failures = records.iter().filter(|r| !r.passed()).count();
    text += &format!("{} records, {failures} failures\n", records.len());
    Outcome { text, body: json!({ "records": records }), pass: failures == 0 }
}

fn fermat(engine: &SkeinEngine, config: &RunConfig, corpus_path: Option<&Path>, sub: &FermatCommand) -> Result<Outcome> {
    let records = match sub {
        FermatCommand::Gauss { l } => gauss_limit_check(*l, &config.primes, config.order)?,
        FermatCommand::Hlimit { max_i } => hlimit_check(&config.primes, *max_i)?,
        FermatCommand::Fixtures { max_prime } => fermat_fixtures(*max_prime),
        FermatCommand::Tau { entry, framing, prime } => {
            let d = resolve_diagram(entry, &corpus(corpus_path)?)?;
            let f = framing.clone().unwrap_or_else(|| vec![1; d.component_count()]);
            let fl = FramedLink::new(d, f)?;
            let m = config.precision_m.unwrap_or_else(|| default_precision(fl.diagram.component_count(), *prime));
            let ctx = CycContext::new(*prime, m)?;
            config.check_cable(ctx.window())?;
            let order = ctx.window().clamp(1, 3);
            config.check_cable(order)?;
            let v = lambda_asl(engine, &fl, order)?;
            let mut expected = vec![Rational::from_integer(1.into()), v.lambda1.clone()];
            expected.extend(v.lambda2.clone());
            expected.extend(v.lambda3.clone());
            tau_lambda_check(engine, &fl, &ctx, &expected)?
        }
    };
    Ok(records_outcome(records))
}

