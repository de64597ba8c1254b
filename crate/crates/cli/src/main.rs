//! `annular-skein`: enumeration, ranks, reduction, rewriting, comultiplication
//! and the verification suites.
//!
//! Exit codes: 0 when everything passes, 1 on a verification failure, 2 on a
//! usage or validation error.

mod verify;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use annular_skein::homology::comult;
use annular_skein::intlinalg::Int;
use annular_skein::matchings::{catalan, ArrowGraph, Arrow, Matching, MAX_MATCHING_N};
use annular_skein::skein::{DottedConfig, SkeinModule, SkeinVector, TypeIIMove};
use annular_skein::springer::{frobenius_obstruction, FrobeniusReport, SpringerRing};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::verify::Suite;

/// Ceiling for `matchings` and `ranks` unless overridden.
const LISTING_N: usize = 5;
const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser)]
#[command(name = "annular-skein", version, about = "Exact computations in the annular Bar-Natan skein module")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format; each command accepts a subset.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed for sampled spot checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Lift the per-command size ceilings up to the library limits.
    #[arg(long, global = true)]
    limit_override: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Matchings, arrows and the total order.
    Matchings {
        #[arg(long)]
        n: NRange,
    },
    /// Skein and Springer graded ranks with the degree-reversal comparison.
    Ranks {
        #[arg(long)]
        n: NRange,
    },
    /// Coordinates of a skein vector (JSON file) in the quotient basis.
    Reduce { input: PathBuf },
    /// Type II moves from an all-dotted configuration (or a bare matching) to the outermost one.
    Rewrite { input: PathBuf },
    /// Comultiplication of a skein vector (JSON file).
    Comult { input: PathBuf },
    /// Run verification suites.
    Verify {
        #[arg(long)]
        n: NRange,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
    },
    /// The Frobenius obstruction report.
    Frobenius {
        #[arg(long)]
        n: NRange,
    },
    /// DOT rendering of the arrow digraph.
    ExportGraph {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

/// `A` or `A..B` (inclusive).
#[derive(Clone, Copy, Debug)]
struct NRange {
    lo: usize,
    hi: usize,
}

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad n `{t}`: {e}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo == 0 {
            return Err("n must be at least 1".into());
        }
        if lo > hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        Ok(NRange { lo, hi })
    }
}

impl NRange {
    fn iter(self) -> impl Iterator<Item = usize> {
        self.lo..=self.hi
    }
}

/// Failure modes mapped onto exit codes.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Verification(String),
}

impl From<annular_skein::Error> for Failure {
    fn from(e: annular_skein::Error) -> Self {
        match e {
            annular_skein::Error::Internal(_) | annular_skein::Error::Overflow(_) => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(String, bool), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, pass)) => {
            if let Err(e) = emit(cli.output.as_deref(), &text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if pass { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn emit(path: Option<&Path>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn format_for(cli: &Cli, allowed: &[Format], default: Format) -> Result<Format, Failure> {
    let f = cli.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        let names: Vec<String> = allowed.iter().map(|f| format!("{f:?}").to_lowercase()).collect();
        Err(Failure::Usage(format!("format {f:?} is not available here; use one of {}", names.join(", "))))
    }
}

fn check_ceiling(n: NRange, ceiling: usize, override_limit: usize, cli: &Cli, what: &str) -> Result<(), Failure> {
    let limit = if cli.limit_override { override_limit } else { ceiling };
    if n.hi > limit {
        let hint = if cli.limit_override { "" } else { " (see --limit-override)" };
        return Err(Failure::Usage(format!("{what} supports n <= {limit}{hint}")));
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values serialize");
    s.push('\n');
    s
}

fn read_input(path: &Path) -> Result<serde_json::Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: parse error: {e}", path.display())))
}

fn parse_as<T: serde::de::DeserializeOwned>(path: &Path, value: serde_json::Value) -> Result<T, Failure> {
    serde_json::from_value(value).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Matchings { n } => cmd_matchings(cli, *n),
        Command::Ranks { n } => cmd_ranks(cli, *n),
        Command::Reduce { input } => cmd_reduce(cli, input),
        Command::Rewrite { input } => cmd_rewrite(cli, input),
        Command::Comult { input } => cmd_comult(cli, input),
        Command::Verify { n, suite } => verify::run(cli, *n, *suite),
        Command::Frobenius { n } => cmd_frobenius(cli, *n),
        Command::ExportGraph { n } => {
            format_for(cli, &[Format::Dot], Format::Dot)?;
            let n = NRange { lo: *n, hi: *n };
            check_ceiling(n, LISTING_N, MAX_MATCHING_N, cli, "export-graph")?;
            Ok((ArrowGraph::new(n.lo)?.to_dot(), true))
        }
    }
}

#[derive(Serialize)]
struct MatchingsRecord {
    n: usize,
    count: usize,
    matchings: Vec<Matching>,
    total_order: Vec<Matching>,
    arrows: Vec<Arrow>,
}

fn cmd_matchings(cli: &Cli, n: NRange) -> Outcome {
    let format = format_for(cli, &[Format::Json, Format::Text, Format::Dot], Format::Json)?;
    if n.lo == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    check_ceiling(n, LISTING_N, MAX_MATCHING_N, cli, "matchings")?;
    let mut records = Vec::new();
    let mut text = String::new();
    for k in n.iter() {
        let g = ArrowGraph::new(k)?;
        if format == Format::Dot {
            text.push_str(&g.to_dot());
            continue;
        }
        let record = MatchingsRecord {
            n: k,
            count: g.matchings().len(),
            matchings: g.matchings().to_vec(),
            total_order: g.total_order()?,
            arrows: g.arrows().to_vec(),
        };
        if format == Format::Text {
            writeln!(text, "n={k}: {} matchings (C_{k} = {})", record.count, catalan(k)).unwrap();
            for m in &record.total_order {
                writeln!(text, "  {m}").unwrap();
            }
            writeln!(text, "  {} arrows", record.arrows.len()).unwrap();
            for a in &record.arrows {
                writeln!(text, "  {} -> {} via {:?}", a.source, a.target, a.quad).unwrap();
            }
        }
        records.push(record);
    }
    if format == Format::Json {
        text = to_json(&records);
    }
    Ok((text, true))
}

#[derive(Serialize)]
struct RanksRecord {
    n: usize,
    skein: Vec<usize>,
    ring: Vec<usize>,
    ring_reversed: Vec<usize>,
    invariant_factors_all_one: bool,
    matches: bool,
}

pub(crate) fn rank_comparison(n: usize) -> Result<RanksRecord, Failure> {
    let module = SkeinModule::new(n)?;
    let ring = SpringerRing::new(n)?;
    let skein = module.rank_list();
    let ring_ranks = ring.graded_ranks();
    let mut ring_reversed = ring_ranks.clone();
    ring_reversed.reverse();
    let invariant_factors_all_one = module.graded_ranks().iter().all(|r| r.invariant_factors.iter().all(|x| *x == Int::from(1)))
        && ring.invariant_factors().iter().flatten().all(|x| *x == Int::from(1));
    Ok(RanksRecord { n, matches: skein == ring_reversed, skein, ring: ring_ranks, ring_reversed, invariant_factors_all_one })
}

fn cmd_ranks(cli: &Cli, n: NRange) -> Outcome {
    let format = format_for(cli, &[Format::Json, Format::Csv, Format::Text], Format::Text)?;
    check_ceiling(n, LISTING_N, annular_skein::springer::MAX_RING_N, cli, "ranks")?;
    let records = n.iter().map(rank_comparison).collect::<Result<Vec<_>, _>>()?;
    let pass = records.iter().all(|r| r.matches);
    let text = match format {
        Format::Json => to_json(&records),
        Format::Csv => {
            let mut s = String::from("n,degree,skein_rank,ring_rank_reversed,match\n");
            for r in &records {
                let len = r.skein.len().max(r.ring_reversed.len());
                for d in 0..len {
                    let (a, b) = (r.skein.get(d).copied().unwrap_or(0), r.ring_reversed.get(d).copied().unwrap_or(0));
                    writeln!(s, "{},{},{a},{b},{}", r.n, 2 * d, a == b).unwrap();
                }
            }
            s
        }
        _ => {
            let mut s = String::new();
            for r in &records {
                let verdict = if r.matches { "PASS" } else { "FAIL" };
                writeln!(s, "n={}: skein {:?}, ring {:?}, reversed ring {:?}: {verdict}", r.n, r.skein, r.ring, r.ring_reversed)
                    .unwrap();
            }
            s
        }
    };
    Ok((text, pass))
}

#[derive(Serialize)]
struct ReduceOutput {
    n: usize,
    basis: Vec<DottedConfig>,
    #[serde(with = "annular_skein::serde_int::vec")]
    coordinates: Vec<Int>,
    /// The class rewritten on basis configurations.
    class: SkeinVector,
}

fn cmd_reduce(cli: &Cli, input: &Path) -> Outcome {
    let format = format_for(cli, &[Format::Json, Format::Text], Format::Json)?;
    let v: SkeinVector = parse_as(input, read_input(input)?)?;
    let module = SkeinModule::new(v.n())?;
    let coordinates = module.reduce(&v)?;
    let basis = module.flat_basis();
    let class = SkeinVector::from_terms(v.n(), basis.iter().cloned().zip(coordinates.iter().cloned()))?;
    let out = ReduceOutput { n: v.n(), basis, coordinates, class };
    let text = match format {
        Format::Json => to_json(&out),
        _ => format!("{:?}\n", out.class),
    };
    Ok((text, true))
}

#[derive(Serialize)]
struct RewriteOutput {
    n: usize,
    start: DottedConfig,
    end: DottedConfig,
    moves: Vec<TypeIIMove>,
    /// Each move is a generated Type II relation and preserves the class.
    replay_verified: bool,
}

fn cmd_rewrite(cli: &Cli, input: &Path) -> Outcome {
    let format = format_for(cli, &[Format::Json, Format::Text], Format::Json)?;
    let value = read_input(input)?;
    let start: DottedConfig = if value.get("dots").is_some() {
        let c: DottedConfig = parse_as(input, value)?;
        if c.dot_count() != c.n() {
            return Err(Failure::Usage(format!("{c} is not all-dotted")));
        }
        c
    } else {
        DottedConfig::all_dotted(parse_as::<Matching>(input, value)?)
    };
    let n = start.n();
    let module = SkeinModule::new(n)?;
    let moves = module.rewrite_all_dotted(start.matching())?;
    let mut replay_verified = true;
    for mv in &moves {
        let from = SkeinVector::from_config(DottedConfig::all_dotted(mv.from.clone()));
        let to = SkeinVector::from_config(DottedConfig::all_dotted(mv.to.clone()));
        let step = from.sub(&to)?;
        let relation = module.relation_for_move(mv);
        let is_relation = relation.is_some_and(|r| {
            let mut neg = SkeinVector::zero(n);
            neg.add_scaled(&r.vector, &Int::from(-1)).is_ok() && (step == r.vector || step == neg)
        });
        replay_verified &= is_relation && module.equal_in_quotient(&from, &to)?;
    }
    let out = RewriteOutput { n, end: DottedConfig::all_dotted(Matching::outermost(n)), start, moves, replay_verified };
    let text = match format {
        Format::Json => to_json(&out),
        _ => {
            let mut s = format!("{} Type II moves from {}\n", out.moves.len(), out.start);
            for mv in &out.moves {
                writeln!(s, "  {} => {}", mv.from, mv.to).unwrap();
            }
            writeln!(s, "replay verified: {}", out.replay_verified).unwrap();
            s
        }
    };
    Ok((text, out.replay_verified))
}

fn cmd_comult(cli: &Cli, input: &Path) -> Outcome {
    let format = format_for(cli, &[Format::Json, Format::Text], Format::Json)?;
    let v: SkeinVector = parse_as(input, read_input(input)?)?;
    let t = comult(&v);
    let text = match format {
        Format::Json => to_json(&t),
        _ => format!("{t:?}\n"),
    };
    Ok((text, true))
}

/// The literal check for `n >= 2`; `n = 1` is reported as outside the argument.
pub(crate) fn frobenius_verdict(r: &FrobeniusReport) -> Option<bool> {
    (!r.outside_hypothesis).then(|| r.holds())
}

fn cmd_frobenius(cli: &Cli, n: NRange) -> Outcome {
    let format = format_for(cli, &[Format::Json, Format::Text], Format::Text)?;
    check_ceiling(n, annular_skein::springer::MAX_RING_N, annular_skein::springer::MAX_RING_N, cli, "frobenius")?;
    let reports = n.iter().map(|k| Ok(frobenius_obstruction(&SpringerRing::new(k)?)?)).collect::<Result<Vec<_>, Failure>>()?;
    let pass = reports.iter().all(|r| frobenius_verdict(r) != Some(false));
    let text = match format {
        Format::Json => to_json(&reports),
        _ => {
            let mut s = String::new();
            for r in &reports {
                let verdict = match frobenius_verdict(r) {
                    Some(true) => "PASS",
                    Some(false) => "FAIL",
                    None => "SKIP (outside hypothesis)",
                };
                writeln!(
                    s,
                    "n={}: top degree {} rank {} (claim: 2), annihilation {} over {} products: {verdict}",
                    r.n, r.top_degree, r.top_rank, r.annihilation, r.products_checked
                )
                .unwrap();
                writeln!(s, "  {}", r.conclusion).unwrap();
            }
            s
        }
    };
    Ok((text, pass))
}
