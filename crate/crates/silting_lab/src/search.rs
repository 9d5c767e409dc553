//! Exhaustive search over graded arcs: configuration, enumeration, per-arc records and
//! checkpointing.
//!
//! Arcs are processed in chunks in enumeration order. Each chunk is mapped in parallel and its
//! records are appended to the checkpoint before the next chunk starts, so the set of finished
//! arcs is always a prefix-closed union of chunks and a resumed run computes the same records.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::algebra::GentleAlgebra;
use crate::arc::{Endpoint, GradedArc};
use crate::bridge::arc_to_complex;
use crate::fixtures::{all_words, gamma};
use crate::hom::{max_shift, HomError, Oracle};
use crate::linalg::{FieldPrime, DEFAULT_PRIME, DEFAULT_SECOND_PRIME};
use crate::simplicity::is_simple;

/// Arcs per checkpoint chunk.
pub const CHUNK: usize = 256;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{arc} needs shifts up to {needed}, above dmax_cap = {cap}")]
    DmaxCap { arc: String, needed: i32, cap: i32 },
    #[error("X({arc}) is not a complex: {msg}")]
    BadComplex { arc: String, msg: String },
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error("checkpoint {path}: {msg}")]
    Checkpoint { path: String, msg: String },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_crossings: usize,
    pub mu_window: (i32, i32),
    pub prime: FieldPrime,
    pub second_prime: FieldPrime,
    pub dmax_cap: i32,
    pub workers: usize,
    pub out: Option<PathBuf>,
    pub checkpoint: Option<PathBuf>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_crossings: 8,
            mu_window: (-8, 8),
            prime: FieldPrime::new(DEFAULT_PRIME).unwrap(),
            second_prime: FieldPrime::new(DEFAULT_SECOND_PRIME).unwrap(),
            dmax_cap: 64,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            out: None,
            checkpoint: None,
        }
    }
}

/// `LO:HI`, both ends included.
pub fn parse_window(s: &str) -> Result<(i32, i32), SearchError> {
    let bad = || SearchError::Config(format!("mu window {s:?} is not LO:HI"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?))
}

fn parse_prime(s: &str) -> Result<FieldPrime, SearchError> {
    let p: u64 = s.parse().map_err(|_| SearchError::Config(format!("{s:?} is not an integer")))?;
    FieldPrime::new(p).map_err(|e| SearchError::Config(e.to_string()))
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), SearchError> {
        let err = |m: &str| Err(SearchError::Config(m.to_string()));
        if self.max_crossings == 0 {
            return err("max_crossings must be positive");
        }
        if self.mu_window.0 > self.mu_window.1 {
            return err("mu window is empty");
        }
        if self.prime == self.second_prime {
            return err("the two primes must differ");
        }
        if self.dmax_cap <= 0 {
            return err("dmax_cap must be positive");
        }
        if self.workers == 0 {
            return err("workers must be positive");
        }
        Ok(())
    }

    /// Sets one `key = value` setting; keys are the long flag names, with `-` or `_`.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), SearchError> {
        let num = |v: &str| v.parse::<i64>().map_err(|_| SearchError::Config(format!("{key}: {v:?} is not an integer")));
        match key.replace('-', "_").as_str() {
            "max_crossings" => self.max_crossings = usize::try_from(num(value)?).map_err(|_| SearchError::Config("max_crossings must be positive".into()))?,
            "mu_window" => self.mu_window = parse_window(value)?,
            "prime" => self.prime = parse_prime(value)?,
            "second_prime" => self.second_prime = parse_prime(value)?,
            "dmax_cap" => self.dmax_cap = i32::try_from(num(value)?).map_err(|_| SearchError::Config("dmax_cap out of range".into()))?,
            "workers" => self.workers = usize::try_from(num(value)?).map_err(|_| SearchError::Config("workers must be positive".into()))?,
            "out" => self.out = Some(PathBuf::from(value)),
            "checkpoint" => self.checkpoint = Some(PathBuf::from(value)),
            _ => return Err(SearchError::Config(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    /// Applies a config file: `key = value` lines, `#` comments, blank lines ignored.
    pub fn apply_file_text(&mut self, text: &str) -> Result<(), SearchError> {
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| SearchError::Config(format!("line {}: expected key = value", i + 1)))?;
            self.set(k.trim(), v.trim())?;
        }
        Ok(())
    }

    pub fn oracle(&self) -> Oracle {
        Oracle::new(self.prime, self.second_prime)
    }

    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            max_crossings: self.max_crossings,
            mu_window: [self.mu_window.0, self.mu_window.1],
            prime: self.prime.get(),
            second_prime: self.second_prime.get(),
            dmax_cap: self.dmax_cap,
        }
    }
}

/// The part of the configuration that determines results. Worker count and paths are left out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub max_crossings: usize,
    pub mu_window: [i32; 2],
    pub prime: u64,
    pub second_prime: u64,
    pub dmax_cap: i32,
}

/// Every canonical arc with 1..=max_crossings crossings and first index in the window, once,
/// sorted by (start, word, mu1) with p before q and words compared lexicographically.
pub fn enumerate_arcs(cfg: &SearchConfig) -> Vec<GradedArc> {
    let mut out = Vec::new();
    for w in all_words(cfg.max_crossings) {
        for start in [Endpoint::P, Endpoint::Q] {
            for mu in cfg.mu_window.0..=cfg.mu_window.1 {
                let a = GradedArc::new(start, w.clone(), mu).expect("generated words are valid");
                if a.is_canonical() {
                    out.push(a);
                }
            }
        }
    }
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcRecord {
    pub arc: GradedArc,
    pub start: Endpoint,
    pub end: Endpoint,
    pub crossings: usize,
    pub presilting: bool,
    pub simple: bool,
    pub width: usize,
    /// Nonzero dim Hom(X, X[d]) as `d:dim` pairs.
    pub self_hom: String,
    /// sha256 of `self_hom`, hex.
    pub fingerprint: String,
    /// X ⊕ X(p:1,2,3@0) is presilting and the arc is not p:1,2,3@0 itself.
    pub complement: bool,
    pub hom_evaluations: u64,
}

/// Shared inputs of the per-arc computation.
pub struct Context {
    pub alg: Arc<GentleAlgebra>,
    pub oracle: Oracle,
    pub dmax_cap: i32,
    gamma: GradedArc,
    gamma_x: crate::complex::ProjComplex,
}

impl Context {
    pub fn new(cfg: &SearchConfig, alg: Arc<GentleAlgebra>) -> Self {
        let g = gamma();
        let gamma_x = arc_to_complex(&alg, &g);
        Context { alg, oracle: cfg.oracle(), dmax_cap: cfg.dmax_cap, gamma: g, gamma_x }
    }

    pub fn record(&self, arc: &GradedArc) -> Result<ArcRecord, SearchError> {
        let oracle = self.oracle.fresh();
        let x = arc_to_complex(&self.alg, arc);
        x.validate().map_err(|e| SearchError::BadComplex { arc: arc.to_string(), msg: e.to_string() })?;
        let w = x.width() as i32;
        let needed = (2 * w).max(max_shift(&self.gamma_x, &x)).max(max_shift(&x, &self.gamma_x));
        if needed > self.dmax_cap {
            return Err(SearchError::DmaxCap { arc: arc.to_string(), needed, cap: self.dmax_cap });
        }
        let presilting = oracle.is_presilting(&x)?;
        let table = oracle.hom_table(&x, &x, -(w - 1)..=(w - 1))?;
        let self_hom = table.compact();
        let fingerprint = format!("{:x}", Sha256::digest(self_hom.as_bytes()));
        let complement = presilting && *arc != self.gamma && oracle.pair_presilting(&self.gamma_x, &x)?;
        Ok(ArcRecord {
            arc: arc.clone(),
            start: arc.start,
            end: arc.end_point(),
            crossings: arc.n(),
            presilting,
            simple: is_simple(arc),
            width: x.width(),
            self_hom,
            fingerprint,
            complement,
            hom_evaluations: oracle.evaluations(),
        })
    }
}

fn checkpoint_err(path: &Path, msg: impl Into<String>) -> SearchError {
    SearchError::Checkpoint { path: path.display().to_string(), msg: msg.into() }
}

fn header(cfg: &SearchConfig) -> String {
    format!("# silting-lab checkpoint {}", serde_json::to_string(&cfg.echo()).expect("config serializes"))
}

/// Finished records of an earlier run. A final line without a newline was cut off mid-write and
/// is dropped.
fn load_checkpoint(path: &Path, cfg: &SearchConfig) -> Result<BTreeMap<GradedArc, ArcRecord>, SearchError> {
    let mut done = BTreeMap::new();
    if !path.exists() {
        return Ok(done);
    }
    let text = std::fs::read_to_string(path)?;
    if text.is_empty() {
        return Ok(done);
    }
    let complete = match text.rfind('\n') {
        Some(i) => &text[..=i],
        None => "",
    };
    let mut lines = complete.lines();
    match lines.next() {
        Some(h) if h == header(cfg) => {}
        Some(_) => return Err(checkpoint_err(path, "written for a different configuration")),
        None => return Ok(done),
    }
    for (i, line) in lines.enumerate() {
        let (arc, json) = line.split_once('\t').ok_or_else(|| checkpoint_err(path, format!("line {}: no tab", i + 2)))?;
        let rec: ArcRecord =
            serde_json::from_str(json).map_err(|e| checkpoint_err(path, format!("line {}: {e}", i + 2)))?;
        if rec.arc.to_string() != arc {
            return Err(checkpoint_err(path, format!("line {}: arc {arc} does not match its record", i + 2)));
        }
        done.insert(rec.arc.clone(), rec);
    }
    Ok(done)
}

/// Rewrites the checkpoint with only its complete lines, so appends start on a fresh line.
fn open_checkpoint(path: &Path, cfg: &SearchConfig, done: &BTreeMap<GradedArc, ArcRecord>) -> Result<File, SearchError> {
    let mut f = File::create(path)?;
    writeln!(f, "{}", header(cfg))?;
    for (a, r) in done {
        writeln!(f, "{a}\t{}", serde_json::to_string(r).expect("records serialize"))?;
    }
    f.flush()?;
    drop(f);
    Ok(OpenOptions::new().append(true).open(path)?)
}

/// Records for every enumerated arc, in enumeration order. With a checkpoint path, finished arcs
/// are read back and new ones appended chunk by chunk.
pub fn run_search(cfg: &SearchConfig, alg: Arc<GentleAlgebra>) -> Result<Vec<ArcRecord>, SearchError> {
    cfg.validate()?;
    let arcs = enumerate_arcs(cfg);
    let ctx = Context::new(cfg, alg);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| SearchError::Config(e.to_string()))?;
    let mut done = match &cfg.checkpoint {
        Some(p) => load_checkpoint(p, cfg)?,
        None => BTreeMap::new(),
    };
    let wanted: BTreeSet<&GradedArc> = arcs.iter().collect();
    if let Some(extra) = done.keys().find(|a| !wanted.contains(a)) {
        let path = cfg.checkpoint.as_deref().expect("records come from a checkpoint");
        return Err(checkpoint_err(path, format!("{extra} is not in the enumeration")));
    }
    let mut sink = match &cfg.checkpoint {
        Some(p) => Some(open_checkpoint(p, cfg, &done)?),
        None => None,
    };
    let todo: Vec<&GradedArc> = arcs.iter().filter(|a| !done.contains_key(*a)).collect();
    for chunk in todo.chunks(CHUNK) {
        let recs: Vec<ArcRecord> =
            pool.install(|| chunk.par_iter().map(|a| ctx.record(a)).collect::<Result<Vec<_>, _>>())?;
        if let Some(f) = sink.as_mut() {
            let mut buf = String::new();
            for r in &recs {
                buf += &format!("{}\t{}\n", r.arc, serde_json::to_string(r).expect("records serialize"));
            }
            f.write_all(buf.as_bytes())?;
            f.flush()?;
        }
        for r in recs {
            done.insert(r.arc.clone(), r);
        }
    }
    Ok(arcs.iter().map(|a| done.remove(a).expect("every arc has a record")).collect())
}

/// Arcs other than p:1,2,3@0 whose image forms a presilting pair with X(p:1,2,3@0).
pub fn find_complement(cfg: &SearchConfig, alg: Arc<GentleAlgebra>) -> Result<Vec<GradedArc>, SearchError> {
    Ok(run_search(cfg, alg)?.into_iter().filter(|r| r.complement).map(|r| r.arc).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::lambda_fixed;

    fn cfg(n: usize, lo: i32, hi: i32) -> SearchConfig {
        SearchConfig { max_crossings: n, mu_window: (lo, hi), workers: 2, ..Default::default() }
    }

    #[test]
    fn single_crossings() {
        let a = enumerate_arcs(&cfg(1, 0, 0));
        assert_eq!(a.iter().map(ToString::to_string).collect::<Vec<_>>(), vec!["p:1@0", "p:2@0", "p:3@0"]);
    }

    #[test]
    fn enumeration_is_canonical_and_complete() {
        let c = cfg(4, -1, 1);
        let arcs = enumerate_arcs(&c);
        let set: BTreeSet<_> = arcs.iter().cloned().collect();
        assert_eq!(set.len(), arcs.len());
        assert!(arcs.windows(2).all(|w| w[0] < w[1]));
        for w in all_words(4) {
            for s in [Endpoint::P, Endpoint::Q] {
                for m in -1..=1 {
                    let a = GradedArc::new(s, w.clone(), m).unwrap();
                    assert_eq!(set.contains(&a), a.is_canonical(), "{a}");
                }
            }
        }
        assert!(set.contains(&gamma()));
        assert!(!enumerate_arcs(&cfg(2, 0, 0)).contains(&gamma()));
        assert!(!enumerate_arcs(&cfg(3, 1, 2)).contains(&gamma()));
    }

    #[test]
    fn config_file_and_validation() {
        let mut c = SearchConfig::default();
        c.apply_file_text("# small run\nmax_crossings = 3\nmu-window = -2:1\nprime = 7\nworkers=1\n").unwrap();
        assert_eq!((c.max_crossings, c.mu_window, c.prime.get(), c.workers), (3, (-2, 1), 7, 1));
        assert!(c.validate().is_ok());
        assert!(c.apply_file_text("prime = 8").is_err());
        assert!(c.apply_file_text("colour = red").is_err());
        assert!(c.apply_file_text("max_crossings").is_err());
        c.set("second_prime", "7").unwrap();
        assert!(c.validate().is_err());
        let e = SearchConfig { mu_window: (1, 0), ..Default::default() };
        assert!(e.validate().is_err());
    }

    #[test]
    fn small_search() {
        let alg = Arc::new(lambda_fixed());
        let recs = run_search(&cfg(3, -1, 1), alg.clone()).unwrap();
        assert_eq!(recs.len(), enumerate_arcs(&cfg(3, -1, 1)).len());
        let g = recs.iter().find(|r| r.arc == gamma()).unwrap();
        assert!(g.presilting && g.simple && !g.complement);
        assert_eq!(g.self_hom, "0:1");
        assert!(recs.iter().all(|r| !r.complement));
        for r in &recs {
            assert_eq!(r.presilting, r.simple && r.start != r.end, "{}", r.arc);
        }
    }

    #[test]
    fn dmax_cap_is_a_hard_error() {
        let alg = Arc::new(lambda_fixed());
        let mut c = cfg(3, 0, 0);
        c.dmax_cap = 2;
        assert!(matches!(run_search(&c, alg), Err(SearchError::DmaxCap { .. })));
    }
}
