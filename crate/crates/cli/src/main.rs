//! `arrcomb`: command-line front end for the `arrangements` crate.
//!
//! Standard output carries only the requested document and is byte-identical
//! across runs; diagnostics and search progress go to standard error.
//! Exit status: 0 success, 1 negative answer or failed verdict, 2 usage or
//! input error, 3 resource limit.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use arrangements::catalog::{catalog, CatalogEntry, CATALOG_NAMES};
use arrangements::chern::{chern_numbers, m_chern_invariant_check};
use arrangements::config::{FilterConfig, Mode};
use arrangements::enumeration::{enumerate, m_list, EnumerationResult};
use arrangements::freeness::{freeness_compatible, FreenessVerdict};
use arrangements::geometry::{intersection_summary, simplicial_certificate, RationalArrangement};
use arrangements::output::{
    markdown_table, rows_csv, rows_json, rows_markdown, to_json, verdicts_markdown, verify_json,
    Document,
};
use arrangements::realizability::{
    packing_max, wiring_search, SearchLimits, SearchOutcome, SearchStatus,
};
use arrangements::report::{classify, realize, RealizabilityReport};
use arrangements::syzygy::{defining_polynomial, is_free_exact, mdr, SyzygyLimits};
use arrangements::{Error, WeakCombinatorics};

#[derive(Parser)]
#[command(name = "arrcomb", version, about = "Weak combinatorics of line arrangements")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format; enumerations default to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write the document here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Worker threads for enumeration (output does not depend on it).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Md,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    PaperTable,
    ScriptCompat,
    Strict,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::PaperTable => Mode::PaperTable,
            ModeArg::ScriptCompat => Mode::ScriptCompat,
            ModeArg::Strict => Mode::Strict,
        }
    }
}

/// Inclusive degree range `a..b`, `a..=b` or a single `a`.
#[derive(Clone, Copy, Debug)]
struct DegreeRange(u32, u32);

impl FromStr for DegreeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("bad degree {t:?}: {e}"));
        match s.split_once("..") {
            Some((a, b)) => Ok(DegreeRange(num(a)?, num(b.strip_prefix('=').unwrap_or(b))?)),
            None => num(s).map(|d| DegreeRange(d, d)),
        }
    }
}

#[derive(Args)]
struct EnumArgs {
    /// Degree range, inclusive.
    #[arg(long = "d")]
    degrees: Option<DegreeRange>,
    #[arg(long, value_enum, default_value = "paper-table")]
    mode: ModeArg,
    /// Add the script's unconditional cond4 (script-compat mode only).
    #[arg(long)]
    cond4: bool,
}

impl EnumArgs {
    fn config(&self) -> FilterConfig {
        FilterConfig::for_mode(self.mode.into(), self.cond4)
    }
}

#[derive(Args, Default)]
struct Input {
    /// Weak combinatorics `d,n2,n3,n4`.
    #[arg(long)]
    wc: Option<WeakCombinatorics>,
    /// Extra multiplicities `k=n_k`; combine with --wc or --lines.
    #[arg(long = "counts", value_parser = parse_count)]
    counts: Vec<(u32, u64)>,
    /// Number of lines when only --counts is given.
    #[arg(long)]
    lines: Option<u32>,
    /// Arrangement file: one line `a b c` per projective line, rationals allowed.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Catalog entry, e.g. `near-pencil(5)` or `klein`.
    #[arg(long)]
    catalog: Option<String>,
}

fn parse_count(s: &str) -> Result<(u32, u64), String> {
    let (k, n) = s.split_once('=').ok_or_else(|| format!("expected k=n, got {s:?}"))?;
    let k = k.trim().parse().map_err(|e| format!("bad multiplicity {k:?}: {e}"))?;
    let n = n.trim().parse().map_err(|e| format!("bad count {n:?}: {e}"))?;
    Ok((k, n))
}

enum Source {
    Combinatorics(WeakCombinatorics),
    Arrangement(RationalArrangement),
}

impl Source {
    fn combinatorics(&self) -> WeakCombinatorics {
        match self {
            Source::Combinatorics(w) => w.clone(),
            Source::Arrangement(a) => intersection_summary(a).weak_combinatorics,
        }
    }
}

impl Input {
    fn resolve(&self) -> Result<Source, Failure> {
        let given = [self.wc.is_some() || !self.counts.is_empty(), self.file.is_some(), self.catalog.is_some()];
        if given.iter().filter(|&&g| g).count() != 1 {
            return Err(Failure::usage("give exactly one of --wc/--counts, --file, --catalog"));
        }
        if let Some(path) = &self.file {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
            return Ok(Source::Arrangement(text.parse()?));
        }
        if let Some(name) = &self.catalog {
            return Ok(match catalog(name)? {
                CatalogEntry::Coordinates(a) => Source::Arrangement(a),
                CatalogEntry::Record(r) => Source::Combinatorics(r.weak_combinatorics),
            });
        }
        if self.counts.is_empty() {
            return Ok(Source::Combinatorics(self.wc.clone().expect("checked above")));
        }
        let d = match (&self.wc, self.lines) {
            (Some(w), None) => w.d(),
            (None, Some(d)) => d,
            (Some(w), Some(d)) if w.d() == d => d,
            _ => return Err(Failure::usage("--counts needs the line count from exactly one of --wc or --lines")),
        };
        let mut counts = self.wc.as_ref().map(|w| w.counts().clone()).unwrap_or_default();
        for &(k, n) in &self.counts {
            counts.insert(k, n);
        }
        Ok(Source::Combinatorics(WeakCombinatorics::new(d, counts)?))
    }

    fn combinatorics_only(&self) -> Result<WeakCombinatorics, Failure> {
        Ok(self.resolve()?.combinatorics())
    }

    fn arrangement_only(&self) -> Result<RationalArrangement, Failure> {
        match self.resolve()? {
            Source::Arrangement(a) => Ok(a),
            Source::Combinatorics(_) => Err(Failure::usage("this command needs line equations (--file or a catalog entry with coordinates)")),
        }
    }
}

#[derive(Args)]
struct LimitArgs {
    /// Abort after this many search nodes.
    #[arg(long)]
    limit_nodes: Option<u64>,
    /// Abort after this many seconds.
    #[arg(long)]
    limit_seconds: Option<f64>,
    /// Lift the default limits (needed for d >= 15 wiring searches; may run for days).
    #[arg(long)]
    long: bool,
}

fn progress(nodes: u64, secs: f64) {
    eprintln!("progress: {nodes} nodes, {secs:.1} s");
}

impl LimitArgs {
    fn limits(&self) -> SearchLimits {
        let mut l = if self.long { SearchLimits::unlimited() } else { SearchLimits::default() };
        if self.limit_nodes.is_some() {
            l.max_nodes = self.limit_nodes;
        }
        if self.limit_seconds.is_some() {
            l.max_seconds = self.limit_seconds;
        }
        l.progress = Some(progress);
        l
    }
}

#[derive(Subcommand)]
enum Command {
    /// Weak combinatorics passing a filter pipeline.
    Enumerate(EnumArgs),
    /// Admissible M-arrangement combinatorics.
    MList(EnumArgs),
    /// Every filter verdict, freeness and Chern data, and flags.
    Classify {
        #[command(flatten)]
        input: Input,
        /// Also run the packing and wiring searches.
        #[arg(long)]
        realize: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Log Chern numbers and, for M-arrangements, the ratio bound.
    Chern {
        #[command(flatten)]
        input: Input,
    },
    /// Minimal degree of a Jacobian syzygy, by exact elimination.
    Mdr {
        #[command(flatten)]
        input: Input,
    },
    /// Exact freeness from line equations, or freeness compatibility from --wc.
    Free {
        #[command(flatten)]
        input: Input,
    },
    /// Packing and wiring-diagram searches for a weak combinatorics.
    Realize {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Maximum family of k-subsets of a v-set pairwise sharing at most one point.
    Pack {
        #[arg(long)]
        v: u32,
        #[arg(long, default_value_t = 4)]
        k: u32,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Wiring-diagram (pseudoline) search.
    Wiring {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// List catalog names, or show one entry.
    Catalog {
        name: Option<String>,
        /// Print a coordinate entry as an arrangement file.
        #[arg(long)]
        as_file: bool,
    },
    /// Re-parse and revalidate a JSON document (`-` for standard input).
    Verify { path: PathBuf },
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::ResourceLimit(_)) { 3 } else { 2 };
        Self { code, message: e.to_string() }
    }
}

/// Rendered output plus exit status.
struct Reply {
    text: String,
    code: u8,
}

fn status_code(s: SearchStatus) -> u8 {
    match s {
        SearchStatus::WitnessFound => 0,
        SearchStatus::ExhaustedNone => 1,
        SearchStatus::LimitReached => 3,
    }
}

/// A definitive negative outranks a limit, which outranks success.
fn combine(codes: impl IntoIterator<Item = u8>) -> u8 {
    codes.into_iter().fold(0, |acc, c| match (acc, c) {
        (1, _) | (_, 1) => 1,
        (3, _) | (_, 3) => 3,
        _ => 0,
    })
}

fn realizability_code(r: &RealizabilityReport) -> u8 {
    combine(std::iter::once(&r.packing).chain(r.wiring.as_ref()).map(|o: &SearchOutcome| status_code(o.status)))
}

fn render_enumeration(result: &EnumerationResult, format: Format) -> String {
    match format {
        Format::Csv => rows_csv(&result.rows),
        Format::Json => rows_json(&result.rows),
        Format::Md => rows_markdown(&result.rows),
    }
}

/// Markdown for a document: verdict tables where present, otherwise one row
/// per top-level field.
fn document_markdown(doc: &Document) -> String {
    let report = match doc {
        Document::Report(r) => Some(r),
        Document::Arrangement { report, .. } => Some(report),
        _ => None,
    };
    let mut out = String::new();
    if let Some(r) = report {
        out.push_str(&format!("weak combinatorics {} (tau = {})\n\n", r.weak_combinatorics, r.tau));
        out.push_str(&verdicts_markdown(&r.verdicts));
        if !r.flags.is_empty() {
            out.push('\n');
            for f in &r.flags {
                out.push_str(&format!("- {}\n", serde_json::to_string(f).expect("serializable")));
            }
        }
        return out;
    }
    let value = serde_json::to_value(doc).expect("serializable");
    let rows: Vec<Vec<String>> = value
        .as_object()
        .map(|m| {
            m.iter()
                .map(|(k, v)| {
                    let cell = match v {
                        serde_json::Value::String(s) => s.replace('\n', "; "),
                        other => other.to_string(),
                    };
                    vec![k.clone(), cell]
                })
                .collect()
        })
        .unwrap_or_default();
    markdown_table(&["field", "value"], &rows)
}

fn render(doc: &Document, format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => Ok(to_json(doc)),
        Format::Md => Ok(document_markdown(doc)),
        Format::Csv => Err(Failure::usage("csv output is only available for enumerate and m-list")),
    }
}

fn run(cli: &Cli) -> Result<Reply, Failure> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .map_err(|e| Failure::usage(format!("cannot set up {n} workers: {e}")))?;
    }
    let doc_format = cli.format.unwrap_or(Format::Json);
    let reply = |doc: Document, code: u8| -> Result<Reply, Failure> {
        Ok(Reply { text: render(&doc, doc_format)?, code })
    };
    match &cli.command {
        Command::Enumerate(args) => {
            let DegreeRange(a, b) = args.degrees.unwrap_or(DegreeRange(3, 18));
            let result = enumerate(a, b, &args.config())?;
            Ok(Reply { text: render_enumeration(&result, cli.format.unwrap_or(Format::Csv)), code: 0 })
        }
        Command::MList(args) => {
            let DegreeRange(a, b) = args.degrees.unwrap_or(DegreeRange(4, 18));
            let result = m_list(a, b, &args.config())?;
            Ok(Reply { text: render_enumeration(&result, cli.format.unwrap_or(Format::Csv)), code: 0 })
        }
        Command::Classify { input, realize: search, limits } => {
            let source = input.resolve()?;
            let wc = source.combinatorics();
            let mut report = classify(&wc);
            let mut code = if report.any_failure() { 1 } else { 0 };
            if *search {
                let r = realize(&wc, limits.limits())?;
                code = combine([code, realizability_code(&r)]);
                report.realizability = Some(r);
            }
            let doc = match source {
                Source::Combinatorics(_) => Document::Report(report),
                Source::Arrangement(arr) => Document::Arrangement {
                    arrangement: arr.to_text(),
                    summary: intersection_summary(&arr),
                    simplicial: simplicial_certificate(&arr),
                    report,
                },
            };
            reply(doc, code)
        }
        Command::Chern { input } => {
            let wc = input.combinatorics_only()?;
            let chern = chern_numbers(&wc)?;
            let m_chern = m_chern_invariant_check(&wc).ok();
            let code = match &m_chern {
                Some(m) if !m.c2_matches || m.ratio_bound.fails() => 1,
                _ => 0,
            };
            reply(Document::Chern { weak_combinatorics: wc, chern, m_chern }, code)
        }
        Command::Mdr { input } => {
            let arr = input.arrangement_only()?;
            let r = mdr(&defining_polynomial(&arr), SyzygyLimits::default())?;
            reply(
                Document::Mdr {
                    arrangement: arr.to_text(),
                    weak_combinatorics: intersection_summary(&arr).weak_combinatorics,
                    mdr: r,
                },
                0,
            )
        }
        Command::Free { input } => match input.resolve()? {
            Source::Arrangement(arr) => {
                let report = is_free_exact(&arr, SyzygyLimits::default())?;
                let code = if report.free { 0 } else { 1 };
                reply(
                    Document::Free { arrangement: arr.to_text(), summary: intersection_summary(&arr), report },
                    code,
                )
            }
            Source::Combinatorics(wc) => {
                let report = freeness_compatible(&wc)?;
                let code = if report.verdict == FreenessVerdict::NotCompatible { 1 } else { 0 };
                reply(Document::Freeness { weak_combinatorics: wc, report }, code)
            }
        },
        Command::Realize { input, limits } => {
            let wc = input.combinatorics_only()?;
            let report = realize(&wc, limits.limits())?;
            let code = realizability_code(&report);
            reply(Document::Realize { weak_combinatorics: wc, report }, code)
        }
        Command::Pack { v, k, limits } => {
            let result = packing_max(*v, *k, limits.limits())?;
            let code = if result.exhaustive { 0 } else { 3 };
            reply(Document::Pack(result), code)
        }
        Command::Wiring { input, limits } => {
            let wc = input.combinatorics_only()?;
            if wc.d() >= 13 && !limits.long && limits.limit_nodes.is_none() && limits.limit_seconds.is_none() {
                eprintln!("note: d = {} is beyond desk scale; the default limits will likely be hit (see --long)", wc.d());
            }
            let outcome = wiring_search(&wc, limits.limits())?;
            let code = status_code(outcome.status);
            reply(Document::Wiring { weak_combinatorics: wc, outcome }, code)
        }
        Command::Catalog { name: None, .. } => reply(
            Document::CatalogIndex { names: CATALOG_NAMES.iter().map(|s| s.to_string()).collect() },
            0,
        ),
        Command::Catalog { name: Some(name), as_file } => match catalog(name)? {
            CatalogEntry::Coordinates(arr) if *as_file => Ok(Reply { text: arr.to_text(), code: 0 }),
            CatalogEntry::Coordinates(arr) => {
                let summary = intersection_summary(&arr);
                reply(
                    Document::Arrangement {
                        arrangement: arr.to_text(),
                        simplicial: simplicial_certificate(&arr),
                        report: classify(&summary.weak_combinatorics),
                        summary,
                    },
                    0,
                )
            }
            CatalogEntry::Record(_) if *as_file => {
                Err(Failure::usage(format!("{name} has no bundled coordinates")))
            }
            CatalogEntry::Record(r) => reply(Document::Record(r), 0),
        },
        Command::Verify { path } => {
            let mut text = String::new();
            if path.as_os_str() == "-" {
                io::stdin()
                    .read_to_string(&mut text)
                    .map_err(|e| Failure::usage(format!("cannot read standard input: {e}")))?;
            } else {
                text = fs::read_to_string(path)
                    .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
            }
            match verify_json(&text) {
                Ok(summary) => Ok(Reply { text: format!("{summary}\n"), code: 0 }),
                Err(e) => Ok(Reply { text: format!("invalid: {e}\n"), code: 1 }),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(reply) => {
            let written = match &cli.output {
                Some(path) => fs::write(path, &reply.text),
                None => io::stdout().lock().write_all(reply.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(reply.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
