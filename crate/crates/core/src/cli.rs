//! Command-line front end. [`run`] does all the work and returns the exit
//! code with the text to print, so it can be driven from tests.
//!
//! Exit codes: 0 yes/true/success, 1 no/false, 2 unknown, 64 usage error,
//! 65 bad input (parse errors, invalid graphs, violated preconditions),
//! 70 internal error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::{BigInt, BigUint};
use serde_json::{json, Value};

use crate::bs1n::Bs1nGroup;
use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::hgroup::{find_separating_quotient, HGroup};
use crate::ntheory::{in_xi, multiplicative_order};
use crate::primes::PrimeSet;
use crate::radical::cyclic_radical;
use crate::separability::{
    conjugacy_separable_gbs, fusion_witness, residually_c_gbs, Answer, Verdict,
    DEFAULT_SEARCH_BOUND,
};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATAERR: i32 = 65;
pub const EXIT_SOFTWARE: i32 = 70;

/// Environment variable overriding the default search bound.
pub const BOUND_ENV: &str = "GBS_SEP_BOUND";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "gbs-sep",
    version,
    about = "Conjugacy and separability in BS(1,n), H(n,r,s) and GBS groups"
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Labeled graphs of GBS groups.
    #[command(subcommand)]
    Gbs(GbsCommand),
    /// The group BS(1, n).
    #[command(subcommand)]
    Bs(BsCommand),
    /// Finite quotients H(n, r, s).
    #[command(subcommand)]
    H(HCommand),
    /// Number theory.
    #[command(subcommand)]
    Num(NumCommand),
}

#[derive(Subcommand, Debug)]
enum GbsCommand {
    /// Reduce and classify.
    Classify { graph: PathBuf },
    /// Collapse until reduced; prints the graph JSON.
    Reduce { graph: PathBuf },
    /// Modular homomorphism on the reduced, tree-positive form.
    Modular { graph: PathBuf },
    /// Cyclic radical indices on the reduced, tree-positive form.
    Radical { graph: PathBuf },
    /// Is the group residually a C-group?
    Residual(VerdictArgs),
    /// Is the group conjugacy C-separable?
    Conjsep(VerdictArgs),
}

#[derive(Args, Debug)]
struct VerdictArgs {
    graph: PathBuf,
    #[arg(long)]
    primes: String,
    #[arg(long)]
    bound: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum BsCommand {
    /// Decide conjugacy; prints a conjugator when one exists.
    Conj {
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        x: String,
        y: String,
        /// Also print the conjugation check.
        #[arg(long)]
        witness: bool,
    },
    /// Search for a finite quotient H(n, r, s) separating two elements.
    Separate {
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        #[arg(long)]
        primes: String,
        #[arg(long)]
        smax: u64,
        x: String,
        y: String,
    },
    /// Non-conjugate pair fused in every admissible finite quotient.
    Fusion {
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        #[arg(long)]
        primes: String,
        #[arg(long)]
        missing: u64,
    },
}

#[derive(Subcommand, Debug)]
enum HCommand {
    /// Decide conjugacy of the images of two words.
    Conj {
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        s: u64,
        x: String,
        y: String,
        /// Enumerate conjugators instead of using the criterion.
        #[arg(long)]
        brute: bool,
    },
}

#[derive(Subcommand, Debug)]
enum NumCommand {
    /// Membership of s in Xi(n, P).
    Xi {
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        #[arg(long)]
        s: String,
        #[arg(long)]
        primes: String,
    },
}

struct Report {
    code: i32,
    text: String,
    json: Value,
}

impl Report {
    fn answer(answer: Answer, text: String, mut json: Value) -> Self {
        if let Value::Object(map) = &mut json {
            map.insert("answer".into(), json!(answer));
        }
        Report {
            code: exit_code(answer),
            text,
            json,
        }
    }

    fn success(text: String, json: Value) -> Self {
        Report {
            code: EXIT_YES,
            text,
            json,
        }
    }
}

pub fn exit_code(answer: Answer) -> i32 {
    match answer {
        Answer::Yes => EXIT_YES,
        Answer::No => EXIT_NO,
        Answer::Unknown => EXIT_UNKNOWN,
    }
}

fn error_code(err: &Error) -> i32 {
    match err {
        Error::BoundExceeded { .. } => EXIT_UNKNOWN,
        Error::Usage(_) => EXIT_USAGE,
        Error::Internal(_) => EXIT_SOFTWARE,
        _ => EXIT_DATAERR,
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_YES };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let as_json = cli.json;
    match dispatch(cli.command) {
        Ok(report) => Outcome {
            code: report.code,
            stdout: if as_json {
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&report.json).expect("json")
                )
            } else {
                report.text
            },
            stderr: String::new(),
        },
        Err(err) => {
            let code = error_code(&err);
            Outcome {
                code,
                stdout: if as_json {
                    format!("{}\n", json!({"error": err.to_string(), "code": code}))
                } else {
                    String::new()
                },
                stderr: format!("error: {err}\n"),
            }
        }
    }
}

fn dispatch(command: Command) -> Result<Report> {
    match command {
        Command::Gbs(c) => gbs(c),
        Command::Bs(c) => bs(c),
        Command::H(c) => h(c),
        Command::Num(c) => num(c),
    }
}

fn read_graph(path: &Path) -> Result<LabeledGraph> {
    let text = std::fs::read_to_string(path)?;
    LabeledGraph::from_json(&text)
}

fn parse_int(text: &str, what: &str) -> Result<BigInt> {
    text.parse()
        .map_err(|_| Error::Parse(format!("invalid integer for {what}: `{text}`")))
}

fn search_bound(flag: Option<u64>) -> Result<u64> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BOUND_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Usage(format!("{BOUND_ENV} must be a non-negative integer"))),
        Err(_) => Ok(DEFAULT_SEARCH_BOUND),
    }
}

fn gbs(c: GbsCommand) -> Result<Report> {
    match c {
        GbsCommand::Classify { graph } => {
            let class = read_graph(&graph)?.reduce().classify()?;
            Ok(Report::success(format!("{class}\n"), json!(class)))
        }
        GbsCommand::Reduce { graph } => {
            let reduced = read_graph(&graph)?.reduce();
            Ok(Report::success(
                format!("{}\n", reduced.to_json()),
                serde_json::to_value(&reduced)?,
            ))
        }
        GbsCommand::Modular { graph } => {
            let (g, span) = read_graph(&graph)?.positive_form();
            let image = g.modular_image(&span)?;
            let mut text = format!("classification: {}\n", image.classification());
            for (e, d) in image.generators() {
                let _ = writeln!(text, "t.{e}: {d}");
            }
            Ok(Report::success(
                text,
                json!({"modular": image, "spanning": span, "graph": g}),
            ))
        }
        GbsCommand::Radical { graph } => {
            let (g, span) = read_graph(&graph)?.positive_form();
            let radical = cyclic_radical(&g, &span)?;
            let mut text = format!("mu = {}\n", radical.mu);
            for (v, idx) in &radical.radical_exponent {
                let _ = writeln!(text, "mu({v}) = {idx}");
            }
            Ok(Report::success(
                text,
                json!({"radical": radical, "spanning": span, "graph": g}),
            ))
        }
        GbsCommand::Residual(a) => verdict(a, residually_c_gbs),
        GbsCommand::Conjsep(a) => verdict(a, conjugacy_separable_gbs),
    }
}

fn verdict(
    a: VerdictArgs,
    engine: fn(&LabeledGraph, &PrimeSet, u64) -> Result<Verdict>,
) -> Result<Report> {
    let set: PrimeSet = a.primes.parse()?;
    let bound = search_bound(a.bound)?;
    let v = engine(&read_graph(&a.graph)?, &set, bound)?;
    Ok(Report {
        code: exit_code(v.answer),
        text: format!("{v}\n"),
        json: serde_json::to_value(&v)?,
    })
}

fn bs(c: BsCommand) -> Result<Report> {
    match c {
        BsCommand::Conj { n, x, y, witness } => {
            let g = Bs1nGroup::new(parse_int(&n, "--n")?)?;
            let (ex, ey) = (g.parse_word(&x)?, g.parse_word(&y)?);
            match g.find_conjugator(&ex, &ey) {
                Some(c) => {
                    let mut text = format!("conjugate\nconjugator: {}\n", c.to_word());
                    if witness {
                        let check = g.conjugate(&ex, &c);
                        let _ = writeln!(
                            text,
                            "check: ({})^-1 ({}) ({}) = {}",
                            c.to_word(),
                            ex.to_word(),
                            c.to_word(),
                            check.to_word()
                        );
                    }
                    Ok(Report::answer(
                        Answer::Yes,
                        text,
                        json!({"conjugate": true, "conjugator": c.to_word().to_string(),
                               "conjugator_triple": c}),
                    ))
                }
                None => Ok(Report::answer(
                    Answer::No,
                    "not conjugate\n".into(),
                    json!({"conjugate": false}),
                )),
            }
        }
        BsCommand::Separate {
            n,
            primes,
            smax,
            x,
            y,
        } => {
            let set: PrimeSet = primes.parse()?;
            let g = Bs1nGroup::new(parse_int(&n, "--n")?)?;
            let (ex, ey) = (g.parse_word(&x)?, g.parse_word(&y)?);
            if g.are_conjugate(&ex, &ey) {
                return Ok(Report::answer(
                    Answer::No,
                    "elements are conjugate; no quotient separates them\n".into(),
                    json!({"conjugate": true}),
                ));
            }
            match find_separating_quotient(&g, &ex, &ey, &set, smax)? {
                Some(h) => Ok(Report::answer(
                    Answer::Yes,
                    format!("H({}, {}, {})\n", h.n(), h.r(), h.s()),
                    json!({"quotient": {"n": h.n().to_string(), "r": h.r(), "s": h.s()}}),
                )),
                None => Ok(Report::answer(
                    Answer::Unknown,
                    format!("no separating quotient with s <= {smax}\n"),
                    json!({"bound": smax}),
                )),
            }
        }
        BsCommand::Fusion { n, primes, missing } => {
            let set: PrimeSet = primes.parse()?;
            let f = fusion_witness(&parse_int(&n, "--n")?, &set, missing)?;
            Ok(Report::success(
                format!("u={} v={} w={} q={}\n", f.u, f.v, f.w, f.q),
                serde_json::to_value(&f)?,
            ))
        }
    }
}

fn h(c: HCommand) -> Result<Report> {
    let HCommand::Conj {
        n,
        r,
        s,
        x,
        y,
        brute,
    } = c;
    let n = parse_int(&n, "--n")?;
    let grp = HGroup::new(n.clone(), r, s)?;
    let g = Bs1nGroup::new(n)?;
    let ex = grp.natural_hom(&g, &g.parse_word(&x)?)?;
    let ey = grp.natural_hom(&g, &g.parse_word(&y)?)?;
    let conj = if brute {
        grp.are_conjugate_bruteforce(ex, ey)?
    } else {
        grp.are_conjugate_criterion(ex, ey)
    };
    let (answer, text) = if conj {
        (Answer::Yes, "conjugate\n")
    } else {
        (Answer::No, "not conjugate\n")
    };
    Ok(Report::answer(
        answer,
        text.into(),
        json!({"conjugate": conj, "x": ex, "y": ey,
               "method": if brute { "brute-force" } else { "criterion" }}),
    ))
}

fn num(c: NumCommand) -> Result<Report> {
    let NumCommand::Xi { n, s, primes } = c;
    let n = parse_int(&n, "--n")?;
    let s: BigUint = s
        .parse()
        .map_err(|_| Error::Parse(format!("invalid modulus `{s}`")))?;
    if s == BigUint::default() {
        return Err(Error::Domain("s must be positive".into()));
    }
    let set: PrimeSet = primes.parse()?;
    let member = in_xi(&n, &s, &set);
    let order = multiplicative_order(&n, &s).ok().map(|o| o.to_string());
    Ok(Report::answer(
        if member { Answer::Yes } else { Answer::No },
        format!("{member}\n"),
        json!({"in_xi": member, "order": order}),
    ))
}
