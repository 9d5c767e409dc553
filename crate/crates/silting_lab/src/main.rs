use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{bail, Context as _, Result};
use clap::{Args, Parser, Subcommand};

use silting_lab::algebra::{lambda_fixed, GentleAlgebra};
use silting_lab::arc::GradedArc;
use silting_lab::bridge::arc_to_complex;
use silting_lab::complex::ProjComplex;
use silting_lab::fixtures::{case_fixtures, case_sweep, evaluate};
use silting_lab::report::{classification, same_end, verify_paper};
use silting_lab::search::{find_complement, parse_window, run_search, SearchConfig};
use silting_lab::simplicity::is_simple;

#[derive(Parser)]
#[command(name = "silting-lab", version, about = "Graded arcs, string complexes and an exact Hom oracle")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Opts {
    /// `key = value` file with defaults for the flags below
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    max_crossings: Option<usize>,
    /// LO:HI, both included
    #[arg(long, global = true, allow_hyphen_values = true)]
    mu_window: Option<String>,
    #[arg(long, global = true)]
    prime: Option<u64>,
    #[arg(long, global = true)]
    second_prime: Option<u64>,
    #[arg(long, global = true)]
    dmax_cap: Option<i32>,
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// machine-readable report
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    checkpoint: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run every check and the complement search
    VerifyPaper,
    /// List arcs whose image forms a presilting pair with X(p:1,2,3@0)
    FindComplement,
    /// Compare presilting with simple and distinct endpoints, for given arcs or the whole search
    Classify { arcs: Vec<String> },
    /// dim Hom(A, B[d]); A and B are arcs, complex literal files, or literals with `;` for newlines
    Hom {
        a: String,
        b: String,
        /// DMIN:DMAX
        #[arg(long, default_value = "0:6", allow_hyphen_values = true)]
        range: String,
    },
    /// Everything known about one arc
    DescribeArc { arc: String },
    /// The case fixtures and the exhaustive case sweep
    CaseFixtures,
}

fn config(opts: &Opts) -> Result<SearchConfig> {
    let mut cfg = SearchConfig::default();
    if let Some(p) = &opts.config {
        let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        cfg.apply_file_text(&text)?;
    }
    if let Some(n) = opts.max_crossings {
        cfg.max_crossings = n;
    }
    if let Some(w) = &opts.mu_window {
        cfg.mu_window = parse_window(w)?;
    }
    if let Some(p) = opts.prime {
        cfg.set("prime", &p.to_string())?;
    }
    if let Some(p) = opts.second_prime {
        cfg.set("second_prime", &p.to_string())?;
    }
    if let Some(d) = opts.dmax_cap {
        cfg.dmax_cap = d;
    }
    if let Some(w) = opts.workers {
        cfg.workers = w;
    }
    if opts.out.is_some() {
        cfg.out = opts.out.clone();
    }
    if opts.checkpoint.is_some() {
        cfg.checkpoint = opts.checkpoint.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn complex_arg(s: &str, alg: &Arc<GentleAlgebra>) -> Result<ProjComplex> {
    if let Ok(a) = s.parse::<GradedArc>() {
        return Ok(arc_to_complex(alg, &a));
    }
    let text = if Path::new(s).is_file() { std::fs::read_to_string(s)? } else { s.replace(';', "\n") };
    let x = ProjComplex::parse_literal(&text, alg.clone()).with_context(|| format!("{s:?} is neither an arc nor a complex"))?;
    x.validate()?;
    Ok(x)
}

fn write_out(cfg: &SearchConfig, text: &str) -> Result<()> {
    if let Some(p) = &cfg.out {
        std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn describe(a: &GradedArc, alg: &Arc<GentleAlgebra>, cfg: &SearchConfig) -> Result<String> {
    let x = arc_to_complex(alg, a);
    let o = cfg.oracle();
    let w = x.width() as i32;
    let rel = a.relative_position().map_or("-".to_string(), |r| r.to_string());
    let types: Vec<String> = a.segment_types().iter().map(ToString::to_string).collect();
    let mut s = String::new();
    s += &format!("arc: {a}\ncanonical: {}\n", a.canonical());
    s += &format!("endpoints: {} -> {}\n", a.start, a.end_point());
    s += &format!("index sequence: {:?}\n", a.index_sequence());
    s += &format!("circle numbers: {}/6, reversed {}/6\n", a.circle_number(), a.circle_number_rev());
    s += &format!("contains circle: {}\n", a.contains_circle());
    s += &format!("simplest sequence: {:?} labels {:?}\n", a.simplest_sequence(), a.simplest_labels());
    s += &format!("relative position: {rel}\n");
    s += &format!("segment types: {}\n", types.join(" "));
    s += &format!("simple: {}\n", is_simple(a));
    s += &format!("is p:1,2,3 up to direction and grading: {}\n", a.is_gamma());
    s += &format!("presilting: {}\n", o.is_presilting(&x)?);
    s += &format!("self hom: {}\n", o.hom_table(&x, &x, -(w - 1)..=(w - 1))?.compact());
    s += &format!("complex:\n{}", x.to_literal());
    Ok(s)
}

fn run(cli: Cli) -> Result<bool> {
    let cfg = config(&cli.opts)?;
    let alg = Arc::new(lambda_fixed());
    match cli.cmd {
        Cmd::VerifyPaper => {
            let t = Instant::now();
            let r = verify_paper(&cfg, alg)?;
            write_out(&cfg, &r.to_json())?;
            print!("{}", r.summary(t.elapsed()));
            if let Some(f) = r.first_failure() {
                eprintln!("{f}");
            }
            Ok(r.pass)
        }
        Cmd::FindComplement => {
            let found = find_complement(&cfg, alg)?;
            println!(
                "searched 1..={} crossings, mu1 in [{}, {}]",
                cfg.max_crossings, cfg.mu_window.0, cfg.mu_window.1
            );
            let lines: Vec<String> = found.iter().map(ToString::to_string).collect();
            write_out(&cfg, &serde_json::to_string_pretty(&lines)?)?;
            if lines.is_empty() {
                println!("complements: none");
            }
            for l in &lines {
                println!("complement: {l}");
            }
            Ok(lines.is_empty())
        }
        Cmd::Classify { arcs } if !arcs.is_empty() => {
            let o = cfg.oracle();
            let mut all = true;
            for s in arcs {
                let a: GradedArc = s.parse()?;
                let pre = o.is_presilting(&arc_to_complex(&alg, &a))?;
                let simple = is_simple(&a);
                let closed = a.is_closed();
                let agree = pre == (simple && !closed);
                all &= agree;
                println!("{a}\tpresilting={pre}\tsimple={simple}\tclosed={closed}\t{}", if agree { "agree" } else { "EXCEPTION" });
            }
            Ok(all)
        }
        Cmd::Classify { .. } => {
            let recs = run_search(&cfg, alg)?;
            let c = classification(&recs);
            let e = same_end(&recs);
            write_out(&cfg, &serde_json::to_string_pretty(&(&c, &e))?)?;
            println!(
                "{} arcs, {} presilting, {} simple with distinct endpoints, {} exceptions",
                c.arcs_checked,
                c.presilting,
                c.simple_distinct_ends,
                c.exceptions.len()
            );
            println!("{} arcs with equal endpoints, {} presilting", e.arcs_checked, e.exceptions.len());
            for x in c.exceptions.iter().chain(&e.exceptions) {
                println!("exception: {x}");
            }
            Ok(c.pass && e.pass)
        }
        Cmd::Hom { a, b, range } => {
            let (lo, hi) = parse_window(&range)?;
            if lo > hi {
                bail!("empty range {range}");
            }
            let (x, y) = (complex_arg(&a, &alg)?, complex_arg(&b, &alg)?);
            let t = cfg.oracle().hom_table(&x, &y, lo..=hi)?;
            for (d, v) in &t.0 {
                println!("{d}\t{v}");
            }
            write_out(&cfg, &serde_json::to_string_pretty(&t)?)?;
            Ok(true)
        }
        Cmd::DescribeArc { arc } => {
            let a: GradedArc = arc.parse()?;
            print!("{}", describe(&a, &alg, &cfg)?);
            Ok(true)
        }
        Cmd::CaseFixtures => {
            let o = cfg.oracle();
            let mut ok = true;
            let mut results = Vec::new();
            for f in case_fixtures() {
                let r = evaluate(&f, &o, &alg)?;
                ok &= r.pass;
                println!("{}\t{}\t{}\t{}", if r.pass { "PASS" } else { "FAIL" }, r.name, r.arc, r.observed);
                results.push(r);
            }
            let sweep = case_sweep(cfg.max_crossings);
            println!(
                "sweep up to {} crossings: {} same-end and {} distinct-end arcs, {} violations",
                sweep.max_crossings,
                sweep.same_end_checked,
                sweep.distinct_end_checked,
                sweep.violations.len()
            );
            for v in &sweep.violations {
                println!("violation: {v}");
            }
            ok &= sweep.violations.is_empty();
            write_out(&cfg, &serde_json::to_string_pretty(&(&results, &sweep))?)?;
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
