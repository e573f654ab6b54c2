//! Command-line front end.
//!
//! Every command prints JSON on stdout and diagnostics on stderr. Exit codes:
//! 0 when the command completed (whatever the mathematical answer), 1 when
//! `verify-theorem` finds a constellation, 2 on invalid input, 3 on I/O or
//! JSON syntax errors.

use std::fs;
use std::io::Write;
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::dessin::Dessin;
use crate::homology::{LoopJson, LoopSpace};
use crate::model::{paper_family_datum, BranchDatum};
use crate::search::{
    count_constellations, decide_realizability, verify_witness, Constellation, SearchOptions,
    WitnessJson,
};

pub const DEFAULT_MAX_LOOP_LEN: usize = 6;

#[derive(Debug, Parser)]
#[command(
    name = "hurwitz",
    version,
    about = "Realizability of branch data over the sphere"
)]
pub struct Cli {
    /// Also write a run report (command, input digest, payload, timing) to this file.
    #[arg(long, global = true, value_name = "FILE")]
    pub report: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a branch datum is realizable.
    Decide(DecideArgs),
    /// Exhaustively check the exceptional family for h = 2..=h_max.
    VerifyTheorem(VerifyArgs),
    /// Build the dessin of a witness and analyze loops in its dual graph.
    Analyze(AnalyzeArgs),
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Disable the centralizer symmetry reduction.
    #[arg(long)]
    pub no_reduce: bool,
    /// Worker threads.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: u32,
}

impl SearchArgs {
    fn options(&self) -> SearchOptions {
        SearchOptions {
            use_centralizer_reduction: !self.no_reduce,
            parallelism_hint: self.jobs as usize,
        }
    }
}

#[derive(Debug, Args)]
pub struct DecideArgs {
    /// JSON file `{"degree": d, "partitions": [[...], ...]}`.
    #[arg(long, value_name = "FILE")]
    pub datum: PathBuf,
    /// Also count all constellations with the fixed permutation frozen.
    #[arg(long)]
    pub count: bool,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_name = "H")]
    pub h_max: usize,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Witness JSON, or the output of `decide`.
    #[arg(long, value_name = "FILE")]
    pub witness: PathBuf,
    /// Write a Graphviz rendering of the dessin here.
    #[arg(long, value_name = "FILE")]
    pub dot: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_MAX_LOOP_LEN)]
    pub max_loop_len: usize,
}

#[derive(Debug)]
pub enum Failure {
    /// Input was read but is not acceptable.
    Invalid(String),
    /// Input could not be read or is not JSON of the expected shape.
    Io(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Invalid(_) => 2,
            Failure::Io(_) => 3,
        }
    }
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

struct Outcome {
    stdout: String,
    payload: serde_json::Value,
    exit: i32,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub input_digest: String,
    pub payload: serde_json::Value,
    pub elapsed_ms: u128,
    pub engine_version: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceSummary {
    pub id: usize,
    /// Number of polygon sides, twice the face degree.
    pub size: usize,
    pub embedded: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoopCount {
    pub length: usize,
    pub simple: u64,
    pub nontrivial: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Analysis {
    pub degree: usize,
    pub euler_characteristic: i64,
    pub genus: i64,
    pub faces: Vec<FaceSummary>,
    /// Fewest steps of a non-trivial simple dual loop, if one exists within
    /// `max_loop_len`.
    pub systole: Option<usize>,
    pub systole_loop: Option<LoopJson>,
    pub loop_counts: Vec<LoopCount>,
    pub max_loop_len: usize,
}

pub fn analyze_dessin(dessin: &Dessin, max_loop_len: usize) -> Analysis {
    let space = LoopSpace::new(dessin);
    let mut systole = None;
    let mut loop_counts = Vec::new();
    for n in 1..=max_loop_len {
        let (mut simple, mut nontrivial) = (0, 0);
        let _ = space.for_each_simple_loop(n, |l| {
            simple += 1;
            if !space.is_trivial(&l).expect("enumerated loops are simple") {
                nontrivial += 1;
                if systole.is_none() {
                    systole = Some(l);
                }
            }
            ControlFlow::Continue(())
        });
        loop_counts.push(LoopCount {
            length: n,
            simple,
            nontrivial,
        });
    }
    Analysis {
        degree: dessin.edge_count(),
        euler_characteristic: dessin.euler_characteristic(),
        genus: dessin.genus(),
        faces: dessin
            .face_walks()
            .iter()
            .map(|w| FaceSummary {
                id: w.face_id,
                size: w.len(),
                embedded: dessin.is_face_embedded(w.face_id).expect("valid face"),
            })
            .collect(),
        systole: systole.as_ref().map(|l| l.len()),
        systole_loop: systole.map(|l| space.to_json(&l).expect("enumerated loops are simple")),
        loop_counts,
        max_loop_len,
    }
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let start = Instant::now();
    let (name, digest, result) = match &cli.command {
        Command::Decide(a) => ("decide", file_digest(&a.datum), decide(a)),
        Command::VerifyTheorem(a) => (
            "verify-theorem",
            text_digest(&format!(
                "h_max={} no_reduce={}",
                a.h_max, a.search.no_reduce
            )),
            verify_theorem(a, err),
        ),
        Command::Analyze(a) => ("analyze", file_digest(&a.witness), analyze(a)),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(f) => {
            let (Failure::Invalid(m) | Failure::Io(m)) = &f;
            let _ = writeln!(err, "error: {m}");
            return f.exit_code();
        }
    };
    if out
        .write_all(outcome.stdout.as_bytes())
        .and_then(|_| out.flush())
        .is_err()
    {
        return 3;
    }
    if let Some(path) = &cli.report {
        let report = RunReport {
            command: name.to_string(),
            input_digest: digest,
            payload: outcome.payload,
            elapsed_ms: start.elapsed().as_millis(),
            engine_version: env!("CARGO_PKG_VERSION").to_string(),
        };
        let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
        if let Err(e) = fs::write(path, text) {
            let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
            return 3;
        }
    }
    outcome.exit
}

fn text_digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn file_digest(path: &Path) -> String {
    fs::read(path)
        .map(|bytes| hex::encode(Sha256::digest(&bytes)))
        .unwrap_or_default()
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

fn decide(args: &DecideArgs) -> Result<Outcome, Failure> {
    let text = read_text(&args.datum)?;
    let datum = BranchDatum::from_json(&text)
        .map_err(|e| Failure::Io(format!("{}: {e}", args.datum.display())))??;
    let opts = args.search.options();
    let mut decision = decide_realizability(&datum, &opts)?;
    if args.count {
        decision.count = Some(count_constellations(&datum, &opts)?.count);
    }
    let stdout = decision.to_json() + "\n";
    Ok(Outcome {
        payload: serde_json::from_str(&stdout).expect("decision JSON parses"),
        stdout,
        exit: 0,
    })
}

#[derive(Serialize)]
struct FamilyLine {
    h: usize,
    degree: usize,
    candidates: u128,
    examined: u64,
    reduced: bool,
    count: u64,
}

#[derive(Serialize)]
struct FamilySummary {
    h_max: usize,
    status: &'static str,
}

fn verify_theorem(args: &VerifyArgs, err: &mut dyn Write) -> Result<Outcome, Failure> {
    if args.h_max < 2 {
        return Err(Failure::Invalid(format!(
            "h_max must be at least 2, got {}",
            args.h_max
        )));
    }
    let opts = args.search.options();
    let mut stdout = String::new();
    let mut lines = Vec::new();
    let mut pass = true;
    for h in 2..=args.h_max {
        let datum = paper_family_datum(h)?;
        let start = Instant::now();
        let r = count_constellations(&datum, &opts)?;
        let _ = writeln!(
            err,
            "h={h} d={} {datum}: {} constellations, {} of {} candidates examined in {:.2?}",
            datum.degree(),
            r.count,
            r.candidates_examined,
            r.candidates_total,
            start.elapsed()
        );
        pass &= r.count == 0;
        let line = FamilyLine {
            h,
            degree: datum.degree(),
            candidates: r.candidates_total,
            examined: r.candidates_examined,
            reduced: r.reduced,
            count: r.count,
        };
        stdout += &serde_json::to_string(&line).expect("line serializes");
        stdout.push('\n');
        lines.push(serde_json::to_value(&line).expect("line serializes"));
    }
    let summary = FamilySummary {
        h_max: args.h_max,
        status: if pass { "PASS" } else { "FAIL" },
    };
    stdout += &serde_json::to_string(&summary).expect("summary serializes");
    stdout.push('\n');
    if !pass {
        let _ = writeln!(
            err,
            "FAIL: found a constellation for the exceptional family"
        );
    }
    Ok(Outcome {
        stdout,
        payload: serde_json::json!({ "runs": lines, "status": summary.status }),
        exit: if pass { 0 } else { 1 },
    })
}

/// Accepts a bare witness or a `decide` result carrying one.
fn load_witness(path: &Path) -> Result<WitnessJson, Failure> {
    let text = read_text(path)?;
    let syntax = |e: serde_json::Error| Failure::Io(format!("{}: {e}", path.display()));
    let mut value: serde_json::Value = serde_json::from_str(&text).map_err(syntax)?;
    if let Some(w) = value.get_mut("witness") {
        if w.is_null() {
            return Err(Failure::Invalid("decision carries no witness".into()));
        }
        value = w.take();
    }
    serde_json::from_value(value).map_err(syntax)
}

fn analyze(args: &AnalyzeArgs) -> Result<Outcome, Failure> {
    let w = load_witness(&args.witness)?;
    let c = Constellation::from_json(&w)?;
    let datum = match &w.partitions {
        Some(p) => BranchDatum::new(w.degree as i64, p)?,
        None => c.induced_datum()?,
    };
    let check = verify_witness(&datum, &c)?;
    if !check.passes() {
        return Err(Failure::Invalid(format!(
            "witness does not realize {datum}: product identity {}, cycle types {:?}, transitive {}",
            check.product_is_identity, check.cycle_types_match, check.transitive
        )));
    }
    let dessin = Dessin::from_constellation(&c)?;
    if let Some(path) = &args.dot {
        fs::write(path, dessin.to_dot())
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))?;
    }
    let analysis = analyze_dessin(&dessin, args.max_loop_len);
    let stdout = serde_json::to_string(&analysis).expect("analysis serializes") + "\n";
    Ok(Outcome {
        payload: serde_json::to_value(&analysis).expect("analysis serializes"),
        stdout,
        exit: 0,
    })
}
