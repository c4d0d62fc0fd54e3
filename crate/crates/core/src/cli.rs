//! Command-line front end and the serialized output formats.
//!
//! Text polynomials use the `Display` form of [`Poly`]. JSON polynomials are
//! lists of `{"x": a, "y": b, "coeff": "c"}` in ascending `(a, b)` order with
//! coefficients as decimal strings.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::barstate::MAX_Q_ENV;
use crate::board::Board;
use crate::census::{Census, CensusKind, PositionReport};
use crate::error::{Error, Result};
use crate::oracle::{brute_poly, DEFAULT_CAP};
use crate::polynomial::BivariatePolynomial as Poly;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "domcensus", version, about = "Count Domineering positions with bar-state matrices")]
#[command(after_help = "Environment:\n  DOMCENSUS_MAX_Q  largest bar length accepted (default 12 for all and end counts, 8 for maximal)")]
pub struct Cli {
    /// Cap the number of worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Polynomial of a rectangle or a board file.
    Poly(PolyArgs),
    /// Reproduce the play-position or Right-end tables as CSV.
    Table(TableArgs),
    /// Split a position into components and count what can follow.
    Analyze(AnalyzeArgs),
    /// Compare the engine against exhaustive enumeration.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    All,
    Maximal,
    RightEnd,
    LeftEnd,
}

impl From<KindArg> for CensusKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::All => CensusKind::All,
            KindArg::Maximal => CensusKind::Maximal,
            KindArg::RightEnd => CensusKind::RightEnd,
            KindArg::LeftEnd => CensusKind::LeftEnd,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Geometry {
    #[arg(long, requires = "cols", conflicts_with = "board")]
    pub rows: Option<usize>,
    #[arg(long, requires = "rows", conflicts_with = "board")]
    pub cols: Option<usize>,
    /// Board file: lines of '.' and '#', '%' starts a comment line.
    #[arg(long)]
    pub board: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PolyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub kind: KindArg,
    #[command(flatten)]
    pub geometry: Geometry,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Report elapsed time (stderr for text, a field for JSON).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[command(subcommand)]
    pub which: TableWhich,
}

#[derive(Subcommand, Debug)]
pub enum TableWhich {
    /// `n,play,ratio` for square boards 1..=N.
    Play {
        #[arg(long, default_value_t = 6)]
        max: usize,
    },
    /// `m,n,right_ends` for all m <= ROWS, n <= COLS, grouped by n.
    RightEnds {
        #[arg(long, default_value_t = 8)]
        rows: usize,
        #[arg(long, default_value_t = 8)]
        cols: usize,
    },
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    pub file: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub geometry: Geometry,
    /// File of boards separated by blank lines.
    #[arg(long, conflicts_with_all = ["rows", "cols", "board"])]
    pub corpus: Option<PathBuf>,
    /// Kinds to check; repeat or separate with commas.
    #[arg(long, value_enum, value_delimiter = ',', default_values = ["all", "maximal", "right-end", "left-end"])]
    pub kind: Vec<KindArg>,
    /// Largest number of playable cells the oracle will enumerate.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
}

/// One `x^a y^b` term of a serialized polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTerm {
    pub x: u32,
    pub y: u32,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometryDoc {
    pub rows: usize,
    pub cols: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub board: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDoc {
    pub geometry: GeometryDoc,
    pub terms: Vec<PolyTerm>,
}

/// Everything a command reports, in a fixed field order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub version: String,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub geometry: GeometryDoc,
    pub terms: Vec<PolyTerm>,
    pub total: String,
    pub play: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<ComponentDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub play_terms: Option<Vec<PolyTerm>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left_moves: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right_moves: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl OutputDocument {
    fn new(command: &str, kind: Option<CensusKind>, geometry: GeometryDoc, poly: &Poly) -> Self {
        OutputDocument {
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            kind: kind.map(|k| k.name().to_string()),
            geometry,
            terms: poly_to_terms(poly),
            total: poly.total().to_string(),
            play: poly.play_filter(0).total().to_string(),
            components: None,
            play_terms: None,
            left_moves: None,
            right_moves: None,
            timing_ms: None,
        }
    }

    pub fn poly(&self) -> Result<Poly> {
        poly_from_terms(&self.terms)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

pub fn poly_to_terms(p: &Poly) -> Vec<PolyTerm> {
    p.terms().map(|((x, y), c)| PolyTerm { x, y, coeff: c.to_string() }).collect()
}

pub fn poly_from_terms(terms: &[PolyTerm]) -> Result<Poly> {
    let parsed = terms
        .iter()
        .map(|t| {
            t.coeff
                .parse::<BigInt>()
                .map(|c| (t.x, t.y, c))
                .map_err(|_| Error::Json(format!("bad coefficient {:?}", t.coeff)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::from_terms(parsed))
}

/// Serializes a bare polynomial as a JSON array of terms.
pub fn poly_to_json(p: &Poly) -> String {
    serde_json::to_string(&poly_to_terms(p)).expect("terms serialize")
}

pub fn poly_from_json(text: &str) -> Result<Poly> {
    let terms: Vec<PolyTerm> = serde_json::from_str(text)?;
    poly_from_terms(&terms)
}

/// First exponent pair, in ascending order, where two polynomials disagree.
pub fn first_difference(a: &Poly, b: &Poly) -> Option<((u32, u32), BigInt, BigInt)> {
    let mut keys: Vec<(u32, u32)> = a.terms().chain(b.terms()).map(|(e, _)| e).collect();
    keys.sort_unstable();
    keys.dedup();
    keys.into_iter().find_map(|(x, y)| {
        let (ca, cb) = (a.coeff(x, y), b.coeff(x, y));
        (ca != cb).then_some(((x, y), ca, cb))
    })
}

fn monomial_name(x: u32, y: u32) -> String {
    Poly::monomial(1, x, y).to_string()
}

fn geometry_doc(b: &Board, rect: bool) -> GeometryDoc {
    GeometryDoc {
        rows: b.rows(),
        cols: b.cols(),
        board: (!rect).then(|| b.to_string().lines().map(str::to_string).collect()),
    }
}

fn read_board(path: &Path) -> Result<Board> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Board::parse(&text)
}

/// Splits a corpus file on blank lines; comment-only chunks are dropped.
pub fn parse_corpus(text: &str) -> Result<Vec<Board>> {
    let mut boards = Vec::new();
    let mut chunk = String::new();
    let mut flush = |chunk: &mut String| -> Result<()> {
        if chunk.lines().any(|l| !l.trim().is_empty() && !l.starts_with('%')) {
            boards.push(Board::parse(chunk)?);
        }
        chunk.clear();
        Ok(())
    };
    for line in text.lines() {
        if line.trim().is_empty() {
            flush(&mut chunk)?;
        } else {
            chunk.push_str(line);
            chunk.push('\n');
        }
    }
    flush(&mut chunk)?;
    Ok(boards)
}

impl Geometry {
    fn resolve(&self) -> Result<(Board, bool)> {
        match (self.rows, self.cols, &self.board) {
            (Some(m), Some(n), None) => Ok((Board::rectangle(m, n)?, true)),
            (None, None, Some(path)) => Ok((read_board(path)?, false)),
            _ => Err(Error::InvalidPattern("give either --rows and --cols or --board".into())),
        }
    }
}

/// Parses `args` and runs the command, writing to `out` and `err`.
/// Returns the process exit code.
pub fn run_from<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
            } else {
                let _ = out.write_all(rendered.as_bytes());
            }
            code
        }
    }
}

pub fn run(cli: Cli, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32 {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        builder = builder.num_threads(t.max(1));
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    let result = pool.install(|| dispatch(&cli.command, out, err));
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if matches!(e, Error::SizeLimit { .. }) {
                let _ = writeln!(err, "hint: set {MAX_Q_ENV} to raise the limit");
            }
            EXIT_INPUT
        }
    }
}

fn dispatch(cmd: &Command, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> Result<i32> {
    let census = Census::global();
    match cmd {
        Command::Poly(a) => cmd_poly(census, a, out, err),
        Command::Table(t) => cmd_table(census, &t.which, out),
        Command::Analyze(a) => cmd_analyze(census, a, out),
        Command::Verify(v) => cmd_verify(census, v, out),
    }
}

fn cmd_poly(census: Census<'_>, a: &PolyArgs, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> Result<i32> {
    let (board, rect) = a.geometry.resolve()?;
    let kind = CensusKind::from(a.kind);
    let start = Instant::now();
    let poly = if rect {
        census.rect(kind, board.rows(), board.cols())?
    } else {
        census.board(kind, &board)?
    };
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    let mut doc = OutputDocument::new("poly", Some(kind), geometry_doc(&board, rect), &poly);
    match a.format {
        Format::Text => {
            writeln!(out, "{poly}")?;
            writeln!(out, "total: {}", doc.total)?;
            writeln!(out, "play: {}", doc.play)?;
            if a.timing {
                writeln!(err, "time: {elapsed:.3} ms")?;
            }
        }
        Format::Json => {
            if a.timing {
                doc.timing_ms = Some(elapsed);
            }
            writeln!(out, "{}", doc.to_json()?)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_table(census: Census<'_>, which: &TableWhich, out: &mut (dyn Write + Send)) -> Result<i32> {
    match *which {
        TableWhich::Play { max } => {
            writeln!(out, "n,play,ratio")?;
            for row in census.play_rows(max) {
                let row = row?;
                writeln!(out, "{},{},{}", row.n, row.play, row.ratio)?;
                out.flush()?;
            }
        }
        TableWhich::RightEnds { rows, cols } => {
            if rows == 0 || cols == 0 {
                return Err(Error::InvalidSize(rows, cols));
            }
            writeln!(out, "m,n,right_ends")?;
            for n in 1..=cols {
                for (i, count) in census.right_end_column(n, rows)?.into_iter().enumerate() {
                    writeln!(out, "{},{},{}", i + 1, n, count)?;
                }
                out.flush()?;
            }
        }
    }
    Ok(EXIT_OK)
}

/// Builds the JSON document for an analyzed position.
pub fn analysis_document(board: &Board, report: &PositionReport) -> OutputDocument {
    let mut doc = OutputDocument::new("analyze", None, geometry_doc(board, false), &report.product);
    doc.components = Some(
        report
            .components
            .iter()
            .map(|c| ComponentDoc { geometry: geometry_doc(&c.board, false), terms: poly_to_terms(&c.poly) })
            .collect(),
    );
    doc.play_terms = Some(poly_to_terms(&report.play));
    doc.left_moves = Some(report.left_moves().to_string());
    doc.right_moves = Some(report.right_moves().to_string());
    doc
}

fn cmd_analyze(census: Census<'_>, a: &AnalyzeArgs, out: &mut (dyn Write + Send)) -> Result<i32> {
    let board = read_board(&a.file)?;
    let report = census.analyze_position(&board)?;
    match a.format {
        Format::Text => {
            writeln!(out, "components: {}", report.components.len())?;
            for (i, c) in report.components.iter().enumerate() {
                writeln!(out, "component {} ({}x{}, {} cells):", i + 1, c.board.rows(), c.board.cols(), c.board.playable_count())?;
                for line in c.board.to_string().lines() {
                    writeln!(out, "  {line}")?;
                }
                writeln!(out, "  {}", c.poly)?;
            }
            writeln!(out, "product: {}", report.product)?;
            writeln!(out, "play: {}", report.play)?;
            writeln!(out, "total: {}", report.product.total())?;
            writeln!(out, "play total: {}", report.play.total())?;
            writeln!(out, "left moves: {}", report.left_moves())?;
            writeln!(out, "right moves: {}", report.right_moves())?;
        }
        Format::Json => writeln!(out, "{}", analysis_document(&board, &report).to_json()?)?,
    }
    Ok(EXIT_OK)
}

fn cmd_verify(census: Census<'_>, v: &VerifyArgs, out: &mut (dyn Write + Send)) -> Result<i32> {
    let boards: Vec<(String, Board, bool)> = match &v.corpus {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            parse_corpus(&text)?
                .into_iter()
                .enumerate()
                .map(|(i, b)| (format!("#{}", i + 1), b, false))
                .collect()
        }
        None => {
            let (b, rect) = v.geometry.resolve()?;
            vec![(format!("{}x{}", b.rows(), b.cols()), b, rect)]
        }
    };
    for (_, b, _) in &boards {
        let cells = b.playable_count();
        if cells > v.cap {
            return Err(Error::OracleCap { cells, cap: v.cap });
        }
    }

    let mut kinds: Vec<CensusKind> = v.kind.iter().map(|&k| k.into()).collect();
    kinds.dedup();
    let mut mismatches = 0usize;
    for (label, b, rect) in &boards {
        for &kind in &kinds {
            let engine = if *rect { census.rect(kind, b.rows(), b.cols())? } else { census.board(kind, b)? };
            let oracle = brute_poly(b, kind, v.cap)?;
            match first_difference(&engine, &oracle) {
                None => writeln!(out, "MATCH {label} {kind} total={}", engine.total())?,
                Some(((x, y), ce, co)) => {
                    mismatches += 1;
                    writeln!(out, "MISMATCH {label} {kind} at {}: engine {ce}, oracle {co}", monomial_name(x, y))?;
                }
            }
        }
    }
    let checked = boards.len() * kinds.len();
    writeln!(out, "{} of {checked} checks matched", checked - mismatches)?;
    Ok(if mismatches == 0 { EXIT_OK } else { EXIT_MISMATCH })
}
