//! Run configuration, corpus sweeps and report assembly shared by the
//! command line and the acceptance suite.

mod corpus;

use std::path::PathBuf;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use corpus::{resolve_diagram, Corpus, CorpusEntry, Notation, BUNDLED_CORPUS};

use crate::arith::{rational_str, Rational};
use crate::error::{Error, Result};
use crate::fermat::is_prime;
use crate::skein::{JonesCache, SkeinEngine, SkeinLimits};
use crate::surgery::{casson_matches_conway, congruence_report, lambda_knot, CongruenceReport};

pub const CACHE_ENV: &str = "OHTSUKI_CACHE_DIR";
pub const CACHE_FILE: &str = "jones-cache.tsv";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Truncation order of `(t-1)`-series and highest `λ` requested.
    pub order: usize,
    /// Cyclotomic precision `M`; `None` selects the per-prime default.
    pub precision_m: Option<u32>,
    pub primes: Vec<u64>,
    pub limits: SkeinLimits,
    /// Deepest parallel cable `L^m` any command may build.
    pub max_cable: usize,
    pub cache_dir: Option<PathBuf>,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            order: 2,
            precision_m: None,
            primes: vec![5, 7, 11, 13],
            limits: SkeinLimits::default(),
            max_cable: 5,
            cache_dir: None,
            format: OutputFormat::Text,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(&p) = self.primes.iter().find(|&&p| p < 3 || !is_prime(p)) {
            return Err(Error::InvalidArgument(format!("{p} is not an odd prime")));
        }
        if self.precision_m == Some(0) {
            return Err(Error::InvalidArgument("precision M must be positive".into()));
        }
        let l = &self.limits;
        if self.max_cable == 0 || l.max_crossings == 0 || l.max_boundary == 0 || l.max_conway_nodes == 0 {
            return Err(Error::InvalidArgument("resource limits must be positive".into()));
        }
        Ok(())
    }

    /// Cache directory: the environment variable wins over the configured path.
    pub fn resolved_cache_dir(&self) -> Option<PathBuf> {
        std::env::var_os(CACHE_ENV)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
            .or_else(|| self.cache_dir.clone())
    }

    /// A skein engine with this configuration's limits and cache.
    pub fn engine(&self) -> Result<SkeinEngine> {
        self.validate()?;
        let engine = SkeinEngine::new(self.limits);
        match self.resolved_cache_dir() {
            None => Ok(engine),
            Some(dir) => {
                std::fs::create_dir_all(&dir)?;
                Ok(engine.with_cache(Arc::new(JonesCache::open(dir.join(CACHE_FILE))?)))
            }
        }
    }

    pub fn check_cable(&self, m: usize) -> Result<()> {
        if m > self.max_cable {
            Err(Error::ResourceLimit(format!("needs {m}-parallel cables; max-cable is {}", self.max_cable)))
        } else {
            Ok(())
        }
    }
}

/// Reproducibility header carried by every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportHeader {
    pub tool: String,
    pub version: String,
    pub command_line: Vec<String>,
    pub config: RunConfig,
}

impl ReportHeader {
    pub fn new(command_line: Vec<String>, config: &RunConfig) -> Self {
        Self {
            tool: "ohtsuki".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command_line,
            config: config.clone(),
        }
    }

    pub fn text(&self) -> String {
        let c = &self.config;
        format!(
            "# {} {}\n# command: {}\n# order={} precision_m={} primes={:?} max_crossings={} max_cable={} cache={}\n",
            self.tool,
            self.version,
            self.command_line.join(" "),
            c.order,
            c.precision_m.map_or("default".to_string(), |m| m.to_string()),
            c.primes,
            c.limits.max_crossings,
            c.max_cable,
            c.resolved_cache_dir().map_or("off".to_string(), |p| p.display().to_string()),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report<T> {
    pub header: ReportHeader,
    pub pass: bool,
    pub body: T,
}

/// One `(knot, n)` cell of a congruence sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub entry: String,
    pub n: i64,
    pub congruence: Option<CongruenceReport>,
    /// `λ₁/6 = n c₂(K)`.
    pub casson: Option<bool>,
    #[serde(with = "rational_str::option")]
    pub c2: Option<Rational>,
    pub error: Option<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub violations: usize,
}

fn sweep_cell(engine: &SkeinEngine, e: &CorpusEntry, n: i64) -> SweepRow {
    let run = || -> Result<(CongruenceReport, bool, Rational)> {
        let d = e.diagram()?;
        let v = lambda_knot(engine, &d, n)?;
        let casson = casson_matches_conway(engine, &d, n, &v.lambda1)?;
        let c2 = Rational::from_integer(engine.conway_coefficient(&d, 2)?);
        Ok((congruence_report(&v), casson, c2))
    };
    match run() {
        Ok((rep, casson, c2)) => SweepRow {
            entry: e.name.clone(),
            n,
            pass: rep.pass && casson,
            congruence: Some(rep),
            casson: Some(casson),
            c2: Some(c2),
            error: None,
        },
        Err(err) => SweepRow {
            entry: e.name.clone(),
            n,
            congruence: None,
            casson: None,
            c2: None,
            error: Some(err.to_string()),
            pass: false,
        },
    }
}

/// Congruence and Casson checks for `1/n` surgery on every knot of the
/// corpus, in parallel; rows sorted by entry name then `n`.
pub fn congruence_sweep(engine: &SkeinEngine, corpus: &Corpus, ns: &[i64]) -> SweepReport {
    let cells: Vec<(&CorpusEntry, i64)> =
        corpus.knots().into_iter().flat_map(|e| ns.iter().map(move |&n| (e, n))).collect();
    let mut rows: Vec<SweepRow> = cells.par_iter().map(|&(e, n)| sweep_cell(engine, e, n)).collect();
    rows.sort_by(|a, b| a.entry.cmp(&b.entry).then(a.n.cmp(&b.n)));
    let violations = rows.iter().filter(|r| !r.pass).count();
    SweepReport { rows, violations }
}

impl SweepReport {
    pub fn text(&self) -> String {
        let mut s = format!("{:<12} {:>3} {:>8} {:>8} {:>4} {:>6} {:>7}  verdict\n", "entry", "n", "λ1", "λ2", "c2", "mod24", "casson");
        for r in &self.rows {
            match (&r.congruence, &r.error) {
                (Some(c), _) => s += &format!(
                    "{:<12} {:>3} {:>8} {:>8} {:>4} {:>6} {:>7}  {}\n",
                    r.entry,
                    r.n,
                    c.lambda1.to_string(),
                    c.lambda2.as_ref().map_or("-".into(), ToString::to_string),
                    r.c2.as_ref().map_or("-".into(), ToString::to_string),
                    c.residue_mod_24.map_or("-".into(), |x| x.to_string()),
                    r.casson.map_or("-", |b| if b { "ok" } else { "FAIL" }),
                    if r.pass { "pass" } else { "FAIL" }
                ),
                (None, Some(e)) => s += &format!("{:<12} {:>3}  error: {e}\n", r.entry, r.n),
                (None, None) => {}
            }
        }
        s += &format!("{} rows, {} violations\n", self.rows.len(), self.violations);
        s
    }
}
