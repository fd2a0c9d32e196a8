//! Command-line driver: parse triples, run the pipeline, write records.

pub mod record;
pub mod render;

use std::collections::BTreeSet;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Parser;
use rayon::prelude::*;

use euclid_belyi::belyi::{run_pipeline, Options};
use euclid_belyi::triples::{enumerate_triples, parse_cycles, Case, Permutation, PermutationTriple};
use euclid_belyi::Error;

use record::{from_error, from_result, ResultRecord};
use render::{render, Format};

pub const MAX_DEGREE: usize = 64;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug, Clone)]
#[command(name = "euclid-belyi", version, about = "Belyi maps for Euclidean permutation triples")]
pub struct JobConfig {
    /// Triple as "σa;σb;σc" (also "|" or spaces as separators), or three
    /// single cycles written back to back, e.g. "(2,4,3)(1,3,4)(1,2,3)".
    #[arg(long)]
    pub triple: Option<String>,
    /// Degree of the triple; in batch mode, the single degree to enumerate.
    #[arg(long)]
    pub degree: Option<usize>,
    /// "3,3,3", "2,3,6", "2,4,4" or "all".
    #[arg(long, default_value = "all")]
    pub orders: String,
    /// Enumerate every triple of degree 1..=D.
    #[arg(long, value_name = "D")]
    pub all_degrees_up_to: Option<usize>,
    /// Starting working precision in bits.
    #[arg(long, default_value_t = 128)]
    pub precision_bits: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// The triple satisfies "σ_c, then σ_b, then σ_a = id"; invert each
    /// permutation before running.
    #[arg(long)]
    pub invert: bool,
    #[arg(long)]
    pub no_verify: bool,
    /// Output file (single triple) or database directory (batch).
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Record wall-clock time per triple; makes output nondeterministic.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug)]
pub struct InputError(pub String);

fn input_err(e: impl ToString) -> InputError {
    InputError(e.to_string())
}

/// Splits the user's triple string into three cycle strings.
pub fn split_triple(s: &str) -> Result<[String; 3], InputError> {
    let parts: Vec<&str> = s.split([';', '|']).map(str::trim).filter(|p| !p.is_empty()).collect();
    let parts: Vec<String> = if parts.len() == 3 {
        parts.iter().map(|p| p.to_string()).collect()
    } else {
        let ws: Vec<&str> = s.split_whitespace().collect();
        if ws.len() == 3 {
            ws.iter().map(|p| p.to_string()).collect()
        } else {
            let cycles = parse_cycles(s.trim()).map_err(input_err)?;
            if cycles.len() != 3 {
                return Err(InputError(format!(
                    "cannot split {s:?} into three permutations; separate them with ';'"
                )));
            }
            cycles
                .iter()
                .map(|c| format!("({})", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
                .collect()
        }
    };
    Ok([parts[0].clone(), parts[1].clone(), parts[2].clone()])
}

fn largest_point(s: &str) -> usize {
    s.split(|c: char| !c.is_ascii_digit()).filter_map(|t| t.parse().ok()).max().unwrap_or(1)
}

pub fn parse_triple(s: &str, degree: Option<usize>, invert: bool) -> Result<PermutationTriple, InputError> {
    let [a, b, c] = split_triple(s)?;
    let d = degree.unwrap_or_else(|| largest_point(s));
    if d == 0 || d > MAX_DEGREE {
        return Err(InputError(format!("degree {d} outside 1..={MAX_DEGREE}")));
    }
    let t = PermutationTriple::new_unchecked(
        Permutation::parse(&a, d).map_err(input_err)?,
        Permutation::parse(&b, d).map_err(input_err)?,
        Permutation::parse(&c, d).map_err(input_err)?,
    )
    .map_err(input_err)?;
    Ok(if invert { t.inverted() } else { t })
}

pub fn parse_orders(s: &str) -> Result<Vec<Case>, InputError> {
    if s.trim() == "all" {
        return Ok(Case::ALL.to_vec());
    }
    let o: Vec<u32> = s
        .split([',', ' '])
        .filter(|t| !t.is_empty())
        .map(|t| t.trim_matches(['(', ')']).parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| InputError(format!("bad orders {s:?}")))?;
    if o.len() != 3 {
        return Err(InputError(format!("bad orders {s:?}")));
    }
    Ok(vec![Case::from_orders((o[0], o[1], o[2])).map_err(input_err)?])
}

fn root(e: &Error) -> &Error {
    match e {
        Error::Stage { source, .. } => root(source),
        e => e,
    }
}

/// Exit status for a pipeline error.
pub fn classify(e: &Error) -> i32 {
    match root(e) {
        Error::Parse(_)
        | Error::DegreeMismatch
        | Error::RelationViolated
        | Error::NotTransitive
        | Error::NotEuclidean(_)
        | Error::NeedsRelabel { .. } => EXIT_INPUT,
        Error::ProfileMismatch(_) => EXIT_VERIFY,
        _ => EXIT_INTERNAL,
    }
}

/// Runs one triple and returns its record with the exit status it implies.
pub fn run_one(t: &PermutationTriple, case: Option<Case>, cfg: &JobConfig) -> (ResultRecord, i32) {
    let opts = Options { precision: cfg.precision_bits, verify: !cfg.no_verify };
    let start = Instant::now();
    let out = run_pipeline(t, case, &opts);
    let ms = start.elapsed().as_millis() as u64;
    let (mut rec, code) = match out {
        Ok(r) => {
            let rec = from_result(&r);
            let code = if rec.verification.status == "failed" { EXIT_VERIFY } else { EXIT_OK };
            (rec, code)
        }
        Err(e) => {
            let code = classify(&e);
            (from_error(t, case, &e.to_string(), code == EXIT_VERIFY), code)
        }
    };
    if cfg.timing {
        rec.timing_ms = Some(ms);
    }
    (rec, code)
}

fn worst(codes: impl IntoIterator<Item = i32>) -> i32 {
    codes.into_iter().fold(EXIT_OK, |acc, c| match (acc, c) {
        (EXIT_INTERNAL, _) | (_, EXIT_INTERNAL) => EXIT_INTERNAL,
        (EXIT_VERIFY, _) | (_, EXIT_VERIFY) => EXIT_VERIFY,
        (EXIT_INPUT, _) | (_, EXIT_INPUT) => EXIT_INPUT,
        _ => EXIT_OK,
    })
}

/// One bucket of the database: every triple of one case and degree.
pub fn run_bucket(case: Case, d: usize, cfg: &JobConfig) -> Vec<(ResultRecord, i32)> {
    enumerate_triples(d, case).par_iter().map(|t| run_one(t, Some(case), cfg)).collect()
}

pub fn bucket_file(dir: &Path, case: Case, d: usize) -> PathBuf {
    let (a, b, c) = case.orders();
    dir.join(format!("{a}-{b}-{c}_d{d:02}.jsonl"))
}

/// Appends the records whose triple is not yet in the file.
fn append_bucket(path: &Path, recs: &[ResultRecord]) -> std::io::Result<usize> {
    let mut have: BTreeSet<[String; 3]> = BTreeSet::new();
    if path.exists() {
        for line in BufReader::new(fs::File::open(path)?).lines() {
            if let Ok(r) = serde_json::from_str::<ResultRecord>(&line?) {
                have.insert(r.triple);
            }
        }
    }
    let mut f = fs::OpenOptions::new().create(true).append(true).open(path)?;
    let mut n = 0;
    for r in recs.iter().filter(|r| !have.contains(&r.triple)) {
        writeln!(f, "{}", render(r, Format::Json))?;
        n += 1;
    }
    Ok(n)
}

fn emit(out: &mut dyn Write, recs: &[ResultRecord], format: Format) -> std::io::Result<()> {
    for (k, r) in recs.iter().enumerate() {
        if format == Format::Text && k > 0 {
            writeln!(out)?;
        }
        let s = render(r, format);
        out.write_all(s.as_bytes())?;
        if !s.ends_with('\n') {
            writeln!(out)?;
        }
    }
    Ok(())
}

fn write_output(cfg: &JobConfig, recs: &[ResultRecord]) -> std::io::Result<()> {
    match &cfg.out {
        Some(p) => {
            let mut f = fs::File::create(p)?;
            emit(&mut f, recs, cfg.format)
        }
        None => emit(&mut std::io::stdout().lock(), recs, cfg.format),
    }
}

/// Runs a job and returns the process exit status.
pub fn run(cfg: &JobConfig) -> i32 {
    match run_inner(cfg) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.0);
            EXIT_INPUT
        }
    }
}

fn run_inner(cfg: &JobConfig) -> Result<i32, InputError> {
    if cfg.precision_bits < 64 {
        return Err(InputError("precision must be at least 64 bits".into()));
    }
    let cases = parse_orders(&cfg.orders)?;
    if let Some(s) = &cfg.triple {
        let t = parse_triple(s, cfg.degree, cfg.invert)?;
        let case = if cfg.orders.trim() == "all" { None } else { Some(cases[0]) };
        let (rec, code) = run_one(&t, case, cfg);
        if let Some(e) = &rec.error {
            eprintln!("error: {e}");
        }
        write_output(cfg, &[rec]).map_err(input_err)?;
        return Ok(code);
    }
    let degrees: Vec<usize> = match (cfg.all_degrees_up_to, cfg.degree) {
        (Some(d), _) => (1..=d).collect(),
        (None, Some(d)) => vec![d],
        (None, None) => return Err(InputError("give --triple, --degree or --all-degrees-up-to".into())),
    };
    if degrees.iter().any(|&d| d > MAX_DEGREE) {
        return Err(InputError(format!("degree above the cap of {MAX_DEGREE}")));
    }
    let mut codes = Vec::new();
    let mut all = Vec::new();
    if let Some(dir) = &cfg.out {
        fs::create_dir_all(dir).map_err(input_err)?;
    }
    for &case in &cases {
        for &d in &degrees {
            let (recs, cs): (Vec<ResultRecord>, Vec<i32>) = run_bucket(case, d, cfg).into_iter().unzip();
            codes.extend(cs);
            match &cfg.out {
                Some(dir) => {
                    if !recs.is_empty() {
                        let path = bucket_file(dir, case, d);
                        let n = append_bucket(&path, &recs).map_err(input_err)?;
                        eprintln!("{case} d = {d}: {} triples, {n} new, {}", recs.len(), path.display());
                    }
                }
                None => all.extend(recs),
            }
        }
    }
    if cfg.out.is_none() {
        emit(&mut std::io::stdout().lock(), &all, cfg.format).map_err(input_err)?;
    }
    Ok(worst(codes))
}
