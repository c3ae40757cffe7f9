//! Command-line front end.
//!
//! Exit codes: 0 success, 2 usage or data errors, 3 algebra build
//! failures, 10 when enumeration stops at the node budget.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use crate::catalog::{catalog_with_char, quiver_shape};
use crate::error::{Error, Result};
use crate::mutation::{enumerate, EnumOptions, Status};
use crate::quiver_algebra::{algebra_from_json, AlgebraFile, BoundAlgebra, Quiver};
use crate::quiver_screens::screen;
use crate::schur::{classify, p_core, s2r_edges, s2r_quiver, table_text, young_character, Partition};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUILD: i32 = 3;
pub const EXIT_BUDGET: i32 = 10;

#[derive(Parser, Debug)]
#[command(name = "sttilt", version, about = "Support tau-tilting pairs, quiver screens and Schur algebra tables")]
pub struct Cli {
    /// Prime characteristic overriding the algebra's default.
    #[arg(long = "char", global = true)]
    pub characteristic: Option<u32>,
    /// Write the main artifact here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format (default: json for `stt`, text elsewhere).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Inspect an algebra.
    #[command(subcommand)]
    Alg(AlgCommand),
    /// Enumerate support tau-tilting pairs by left mutation.
    Stt {
        /// Catalog name or path to an algebra JSON file.
        algebra: String,
        /// Stop after this many pairs.
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
        /// Print the count of pairs of each support rank.
        #[arg(long)]
        strata: bool,
        /// Worker threads (1 is the sequential reference mode).
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        jobs: Option<u64>,
    },
    /// Quiver-shape finiteness screens.
    #[command(subcommand)]
    Screen(ScreenCommand),
    /// Schur algebra combinatorics and classification.
    #[command(subcommand)]
    Schur(SchurCommand),
}

#[derive(Subcommand, Debug)]
pub enum AlgCommand {
    /// Dimension, Cartan matrix, radical part of the center, blocks.
    Show { algebra: String },
}

#[derive(Subcommand, Debug)]
pub enum ScreenCommand {
    /// Screen a quiver given as a file, a shipped quiver name, or a catalog algebra.
    Quiver { source: String },
}

#[derive(Subcommand, Debug)]
pub enum SchurCommand {
    /// Constituents of the character of the Young module Y^(r-k,k).
    Character {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
    },
    /// Ext-quiver of S(2,r) from the arrow recursion.
    Quiver {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        dot: bool,
    },
    /// p-core of a partition given as comma-separated parts.
    Pcore {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        partition: String,
    },
    /// Representation type and tau-tilting finiteness of S(n,r).
    Classify {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// Verdict letters for n = 2..=nmax and r = 1..=rmax.
    Table {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        nmax: usize,
        #[arg(long)]
        rmax: usize,
    },
}

/// Maps a library error to an exit code.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::RelationType(_)
        | Error::NotAdmissible { .. }
        | Error::QuotientZero
        | Error::NonSplitBrick(_)
        | Error::NotLeftMutable(_)
        | Error::Inconsistent => EXIT_BUILD,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing normal output to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Alg(AlgCommand::Show { algebra }) => {
            let a = load_algebra(algebra, cli.characteristic)?;
            emit(cli, out, &alg_report(&a)?)?;
            Ok(EXIT_OK)
        }
        Command::Stt { algebra, budget, strata, jobs } => cmd_stt(cli, algebra, *budget, *strata, *jobs, out, err),
        Command::Screen(ScreenCommand::Quiver { source }) => {
            let q = load_quiver(source, cli.characteristic)?;
            let report = screen(&q);
            let text = if cli.format == Some(Format::Json) {
                serde_json::to_string_pretty(&report)? + "\n"
            } else {
                let mut s = match &report.witness {
                    Some(w) => format!("INFINITE via {} on {{{}}}\n", w.pattern, w.labels.join("; ")),
                    None if !report.rad_square_zero_finite => {
                        "INFINITE via separated quiver (A/rad^2 A is tau-tilting infinite)\n".to_string()
                    }
                    None => "no quiver-shape obstruction found\n".to_string(),
                };
                match &report.separated_types {
                    Some(t) => s.push_str(&format!("separated quiver: Dynkin ({})\n", t.join(" + "))),
                    None => s.push_str("separated quiver: not a union of Dynkin diagrams\n"),
                }
                s
            };
            emit(cli, out, &text)?;
            Ok(EXIT_OK)
        }
        Command::Schur(sc) => {
            let text = schur_command(cli, sc)?;
            emit(cli, out, &text)?;
            Ok(EXIT_OK)
        }
    }
}

fn emit(cli: &Cli, out: &mut dyn Write, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Resolves an algebra argument: an existing file path is parsed as
/// algebra JSON, anything else is looked up in the catalog.
pub fn load_algebra(source: &str, p: Option<u32>) -> Result<BoundAlgebra> {
    let path = Path::new(source);
    if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        return algebra_from_json(&text, p);
    }
    catalog_with_char(source, p)
}

/// Resolves a quiver argument: a file, a shipped quiver shape (with or
/// without `.json`), or the quiver of a catalog algebra.
pub fn load_quiver(source: &str, p: Option<u32>) -> Result<Quiver> {
    let path = Path::new(source);
    if path.is_file() {
        let file: AlgebraFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        return file.quiver();
    }
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(source);
    if let Ok(q) = quiver_shape(stem) {
        return Ok(q);
    }
    Ok(catalog_with_char(source, p)?.quiver().clone())
}

fn alg_report(a: &BoundAlgebra) -> Result<String> {
    let mut s = a.describe();
    s.push_str(&format!("dim {}\n", a.dim()));
    s.push_str(&format!("Cartan matrix (rows/columns {}):\n", a.vertices().join(", ")));
    for row in a.cartan_matrix() {
        let cells: Vec<String> = row.iter().map(|c| format!("{c:>3}")).collect();
        s.push_str(&format!("  {}\n", cells.join("")));
    }
    let (center, rad_center) = a.center_basis();
    s.push_str(&format!("center: dim {}; center ∩ rad: dim {}\n", center.len(), rad_center.len()));
    for z in &rad_center {
        s.push_str(&format!("  {}\n", a.elem_to_string(z)));
    }
    let blocks = a.block_decompose()?;
    s.push_str(&format!("blocks: {}\n", blocks.len()));
    for b in &blocks {
        s.push_str(&format!("  {} (vertices {})\n", b, b.vertices().join(", ")));
    }
    Ok(s)
}

fn cmd_stt(
    cli: &Cli,
    source: &str,
    budget: u64,
    strata: bool,
    jobs: Option<u64>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let alg = Arc::new(load_algebra(source, cli.characteristic)?);
    let opts = EnumOptions { budget: budget as usize, jobs: jobs.map(|j| j as usize) };
    let graph = enumerate(&alg, opts)?;
    let n = alg.num_vertices();
    let format = cli.format.unwrap_or(Format::Json);
    let artifact = match format {
        Format::Json => graph.to_json()? + "\n",
        Format::Dot => graph.to_dot(),
        Format::Text => graph.to_text(),
    };
    let counts = graph.strata_counts(n).ok();
    let status = match graph.status {
        Status::Complete => "complete",
        Status::BudgetExceeded => "budget-exceeded",
    };
    let strata_str = match &counts {
        Some(c) => format!("[{}]", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")),
        None => "undecided".to_string(),
    };
    let summary = format!("nodes={} status={} strata={}\n", graph.len(), status, strata_str);
    // The summary goes to stdout unless the artifact already occupies it.
    let artifact_on_stdout = cli.out.is_none();
    emit(cli, out, &artifact)?;
    let sink: &mut dyn Write = if artifact_on_stdout && format != Format::Text { err } else { out };
    sink.write_all(summary.as_bytes())?;
    if strata {
        match &counts {
            Some(c) => {
                for (s, a) in c.iter().enumerate() {
                    writeln!(sink, "a_{s} = {a}")?;
                }
            }
            None => writeln!(sink, "strata unavailable: enumeration stopped at the budget")?,
        }
    }
    Ok(if graph.is_complete() { EXIT_OK } else { EXIT_BUDGET })
}

fn schur_command(cli: &Cli, sc: &SchurCommand) -> Result<String> {
    let json = cli.format == Some(Format::Json);
    Ok(match sc {
        SchurCommand::Character { p, r, k } => {
            let parts = young_character(*p, *r, *k)?;
            if json {
                let v: Vec<String> = parts.iter().map(|x| x.to_string()).collect();
                serde_json::to_string(&v)? + "\n"
            } else {
                let terms: Vec<String> = parts.iter().map(|x| format!("chi({x})")).collect();
                format!("ch Y({}) = {}\n", Partition::two_part(*r, *k), terms.join(" + "))
            }
        }
        SchurCommand::Quiver { p, r, dot } => schur_quiver_text(*p, *r, *dot)?,
        SchurCommand::Pcore { p, partition } => {
            if *p < 2 {
                return Err(Error::NotPrime(*p as u32));
            }
            let lam = Partition::parse(partition)?;
            format!("{}\n", p_core(&lam, *p))
        }
        SchurCommand::Classify { p, n, r } => {
            let c = classify(*p, *n, *r)?;
            if json {
                serde_json::to_string_pretty(&c)? + "\n"
            } else {
                let fin = match c.verdict.tau_tilting_finite() {
                    Some(true) => "τ-tilting finite",
                    Some(false) => "τ-tilting infinite",
                    None => "τ-tilting finiteness open",
                };
                let head = match c.verdict {
                    crate::schur::Verdict::WildFinite | crate::schur::Verdict::WildInfinite | crate::schur::Verdict::Open => {
                        "wild".to_string()
                    }
                    v => v.to_string(),
                };
                format!("{head} → {fin}\nrule: {}\n", c.rule)
            }
        }
        SchurCommand::Table { p, nmax, rmax } => table_text(*p, *nmax, *rmax)?,
    })
}

fn schur_quiver_text(p: usize, r: usize, dot: bool) -> Result<String> {
    let q = s2r_quiver(p, r)?;
    let labels = q.vertices();
    let edges = s2r_edges(p, r)?;
    let comps = q.components();
    if dot {
        let mut s = format!("graph \"S(2,{r}) p={p}\" {{\n");
        for (k, comp) in comps.iter().enumerate() {
            s.push_str(&format!("  subgraph cluster_{k} {{\n"));
            for &v in comp {
                s.push_str(&format!("    \"{}\";\n", labels[v]));
            }
            s.push_str("  }\n");
        }
        for (a, b) in &edges {
            s.push_str(&format!("  \"{a}\" -- \"{b}\";\n"));
        }
        s.push_str("}\n");
        return Ok(s);
    }
    let mut s = format!("S(2,{r}) over characteristic {p}: {} vertices, {} components\n", labels.len(), comps.len());
    for comp in &comps {
        let core = p_core(&Partition::parse(&labels[comp[0]])?, p);
        let names: Vec<&str> = comp.iter().map(|&v| labels[v].as_str()).collect();
        s.push_str(&format!("component (core {}): {}\n", if core.is_empty() { "empty".to_string() } else { core.to_string() }, names.join("  ")));
    }
    for (a, b) in &edges {
        s.push_str(&format!("  ({a}) <-> ({b})\n"));
    }
    Ok(s)
}
