//! Command-line front end of the `ncluster` binary.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::dyck::build_path;
use crate::error::{Error, Result};
use crate::family::{EnumOptions, FamilyEnumerator, FamilySet, GreenSupport, DEFAULT_FAMILY_CAP};
use crate::formula::{family_columns, FamilySummer};
use crate::lemmas::verify_lemmas;
use crate::oracle::{verify_theorem, ChainCache, DEFAULT_MARGIN};
use crate::serial::PolyDump;
use crate::word::render_columns;

#[derive(Parser, Debug)]
#[command(name = "ncluster", version, about = "Non-commutative rank-2 cluster variables from colored Dyck paths")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print x_{n-1} (or another family sum) on D_n.
    Compute(ComputeArgs),
    /// Compare the formula against the certified oracle.
    Verify(VerifyArgs),
    /// Count families.
    Count(SetArgs),
    /// List families.
    Enumerate(SetArgs),
    /// Run the lemma instance checks.
    Lemmas(VerifyArgs),
    /// Show D_n and its colored subpaths.
    Render(Common),
}

#[derive(Args, Debug, Clone)]
struct Common {
    #[arg(long, env = "NCC_R")]
    r: u32,
    #[arg(long, env = "NCC_N")]
    n: u32,
    #[arg(long, env = "NCC_WORKERS", default_value_t = 1)]
    workers: usize,
    #[arg(long = "family-cap", env = "NCC_FAMILY_CAP", default_value_t = DEFAULT_FAMILY_CAP)]
    family_cap: u64,
    /// Which elements may support a green subpath's preceding edges.
    #[arg(long, env = "NCC_MODE", value_enum, default_value_t = Mode::Any)]
    mode: Mode,
}

#[derive(Args, Debug)]
struct ComputeArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, env = "NCC_FORMAT", value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Matrix output only: one padded row per family, at least this many columns.
    #[arg(long, env = "NCC_PAD")]
    pad: Option<usize>,
    #[arg(long, env = "NCC_SET", default_value = "F")]
    set: FamilySet,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, env = "NCC_MARGIN", default_value_t = DEFAULT_MARGIN)]
    margin: i64,
    #[arg(long = "cache-dir", env = "NCC_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[arg(long, env = "NCC_FORMAT", value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug)]
struct SetArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, env = "NCC_SET", default_value = "F")]
    set: FamilySet,
    #[arg(long, env = "NCC_FORMAT", value_enum, default_value_t = Format::Words)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Matrix,
    Words,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Any,
    Singles,
}

impl Common {
    fn validate(&self, formula: bool) -> Result<EnumOptions> {
        crate::dyck::check_r(self.r)?;
        if formula && self.n < 4 {
            return Err(Error::Validation(format!("n = {} is out of range; need n >= 4", self.n)));
        }
        if self.workers == 0 {
            return Err(Error::Validation("workers must be at least 1".into()));
        }
        Ok(EnumOptions {
            support: match self.mode {
                Mode::Any => GreenSupport::AnyElement,
                Mode::Singles => GreenSupport::SinglesOnly,
            },
            cap: self.family_cap,
        })
    }
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
    exit_code: i32,
}

#[derive(Serialize)]
struct ErrorJson<'a> {
    error: ErrorBody<'a>,
}

fn write_error(err: &mut dyn Write, kind: &str, message: String, code: i32) {
    let body = ErrorJson {
        error: ErrorBody {
            kind,
            message,
            exit_code: code,
        },
    };
    let _ = writeln!(err, "{}", serde_json::to_string(&body).unwrap_or_default());
}

/// Parses `args` (including the program name), runs the command, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            write_error(err, "usage", e.to_string().trim().to_string(), 2);
            return 2;
        }
    };
    let workers = match &cli.command {
        Command::Compute(a) => a.common.workers,
        Command::Verify(a) | Command::Lemmas(a) => a.common.workers,
        Command::Count(a) | Command::Enumerate(a) => a.common.workers,
        Command::Render(a) => a.workers,
    }
    .max(1);
    let result = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Validation(e.to_string()))
        .and_then(|pool| {
            let mut buf = Vec::new();
            let code = pool.install(|| dispatch(&cli.command, &mut buf));
            out.write_all(&buf)?;
            code
        });
    match result {
        Ok(code) => code,
        Err(e) => {
            let code = e.exit_code();
            write_error(err, e.kind(), e.to_string(), code);
            code
        }
    }
}

fn dispatch(cmd: &Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Compute(a) => cmd_compute(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Count(a) => cmd_count(a, out),
        Command::Enumerate(a) => cmd_enumerate(a, out),
        Command::Lemmas(a) => cmd_lemmas(a, out),
        Command::Render(a) => cmd_render(a, out),
    }
}

fn poly_name(set: FamilySet, n: u32) -> String {
    match set {
        FamilySet::F => format!("x_{}", n - 1),
        FamilySet::Ftilde => format!("z_{}", n - 1),
        FamilySet::Tgeq(u) => format!("T>={u}(D_{n})"),
        FamilySet::Tband(u) => format!("band{u}(D_{n})"),
    }
}

fn cmd_compute(a: &ComputeArgs, out: &mut dyn Write) -> Result<i32> {
    let opts = a.common.validate(true)?;
    let (r, n) = (a.common.r, a.common.n);
    a.set.validate(n)?;
    let path = build_path(r, n)?;
    let summer = FamilySummer::new(&path, opts)?;
    if a.format == Format::Matrix {
        if let Some(pad) = a.pad {
            // one padded row per family, in enumeration order
            let mut rows = Vec::new();
            summer.enumerator().for_each(a.set, |chain, singles| rows.push(chain.family(singles)))?;
            for fam in rows {
                let mut cols = family_columns(&path, &fam)?;
                if cols.len() < pad {
                    cols.resize(pad, (0, 0));
                }
                writeln!(out, "{}", render_columns(&cols))?;
            }
            return Ok(0);
        }
    }
    let p = summer.sum(a.set)?;
    match a.format {
        Format::Json => writeln!(out, "{}", PolyDump::new(r, n, poly_name(a.set, n), &p).to_json()?)?,
        Format::Words => {
            for (w, c) in p.sorted_terms() {
                writeln!(out, "{c}*{w}")?;
            }
        }
        Format::Matrix => {
            for (w, c) in p.sorted_terms() {
                writeln!(out, "{c}*{}", w.render_matrix(None))?;
            }
        }
    }
    Ok(0)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let opts = a.common.validate(true)?;
    let cache = a.cache_dir.as_ref().map(ChainCache::new).transpose()?;
    let rep = verify_theorem(a.common.r, a.common.n, opts, a.margin, cache.as_ref())?;
    if a.format == Format::Json {
        writeln!(out, "{}", serde_json::to_string_pretty(&rep)?)?;
    } else {
        writeln!(
            out,
            "{} r = {} n = {}: {} terms, coefficient sum {}",
            if rep.passed() { "PASS" } else { "FAIL" },
            rep.r,
            rep.n,
            rep.term_count,
            rep.coeff_sum
        )?;
    }
    if rep.passed() {
        Ok(0)
    } else {
        Err(Error::Mismatch(format!("{} differs from the certified oracle", rep.name)))
    }
}

#[derive(Serialize)]
struct CountReport {
    r: u32,
    n: u32,
    set: String,
    count: crate::integer::Integer,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    bands: Vec<(u32, crate::integer::Integer)>,
}

fn cmd_count(a: &SetArgs, out: &mut dyn Write) -> Result<i32> {
    let opts = a.common.validate(false)?;
    let path = build_path(a.common.r, a.common.n)?;
    let e = FamilyEnumerator::new(&path, opts)?;
    let count = e.count(a.set)?;
    let mut bands = Vec::new();
    if let FamilySet::Tgeq(u) = a.set {
        for b in u..=a.common.n.saturating_sub(2) {
            bands.push((b, e.count(FamilySet::Tband(b))?));
        }
    }
    let rep = CountReport {
        r: a.common.r,
        n: a.common.n,
        set: a.set.to_string(),
        count,
        bands,
    };
    if a.format == Format::Json {
        writeln!(out, "{}", serde_json::to_string_pretty(&rep)?)?;
    } else {
        writeln!(out, "{}", rep.count)?;
        for (u, c) in &rep.bands {
            writeln!(out, "band {u}: {c}")?;
        }
    }
    Ok(0)
}

fn cmd_enumerate(a: &SetArgs, out: &mut dyn Write) -> Result<i32> {
    let opts = a.common.validate(false)?;
    let path = build_path(a.common.r, a.common.n)?;
    let e = FamilyEnumerator::new(&path, opts)?;
    let mut lines = Vec::new();
    e.for_each(a.set, |chain, singles| lines.push(chain.family(singles).to_string()))?;
    if a.format == Format::Json {
        writeln!(out, "{}", serde_json::to_string_pretty(&lines)?)?;
    } else {
        for l in lines {
            writeln!(out, "{l}")?;
        }
    }
    Ok(0)
}

fn cmd_lemmas(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let opts = a.common.validate(true)?;
    let rep = verify_lemmas(a.common.r, a.common.n, a.margin, opts)?;
    if a.format == Format::Json {
        writeln!(out, "{}", serde_json::to_string_pretty(&rep)?)?;
    } else {
        write!(out, "{rep}")?;
    }
    if rep.passed() {
        Ok(0)
    } else {
        Err(Error::Mismatch(format!(
            "lemma checks failed for r = {}, n = {}",
            a.common.r, a.common.n
        )))
    }
}

fn cmd_render(a: &Common, out: &mut dyn Write) -> Result<i32> {
    a.validate(false)?;
    let path = build_path(a.r, a.n)?;
    writeln!(out, "D_{} (r = {}): {}x{} rectangle", a.n, a.r, path.width(), path.height())?;
    writeln!(out, "edges: {}", path.edge_word())?;
    let marked: Vec<String> = (0..=path.height())
        .map(|j| {
            let (x, y) = path.marked_vertex(j);
            format!("v{j}=({x},{y})")
        })
        .collect();
    writeln!(out, "marked: {}", marked.join(" "))?;
    for sp in crate::family::subpath_catalog(&path)? {
        writeln!(out, "{sp} edges {}..={}", sp.span.0, sp.span.1)?;
    }
    Ok(0)
}
