use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use binmat::constructs::{self, TargetString, CATALOG};
use binmat::format::{self, MatroidDocument};
use binmat::isomorph::{canonical_form, find_isomorphism};
use binmat::minors::{classify_shape, find_minor, has_induced_minor, shape_tags};
use binmat::verify::{self, EnumerationScope, Filter, VerificationReport, Verifier};
use binmat::{BinaryMatroid, Error};

/// Simple binary matroids: induced minors, conings, projective targets and
/// exhaustive verification.
#[derive(Parser)]
#[command(name = "binmat", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank, size, connectivity and class predicates of a matroid.
    Info { matroid: String },
    /// Whether two matroids are isomorphic (exit 1 if not).
    Iso { a: String, b: String },
    /// Search for PATTERN as an induced minor of HOST (exit 1 if absent).
    InducedMinor { host: String, pattern: String },
    /// Search for PATTERN as a minor of HOST (exit 1 if absent).
    Minor { host: String, pattern: String },
    /// Coning of a matroid.
    Cone(ConeArgs),
    /// Generalized parallel connection across projective flats.
    Gpc(GpcArgs),
    /// Projective target of a 0-1 string.
    Target {
        bits: String,
        #[arg(short, long, default_value = "-")]
        out: String,
    },
    /// Whether a matroid is a projective target (exit 1 if not).
    IsTarget { matroid: String },
    /// The binary r-spike with tip, optionally with cotip.
    Spike {
        r: usize,
        #[arg(long)]
        cotip: bool,
        #[arg(short, long, default_value = "-")]
        out: String,
    },
    /// A catalog matroid; `--list` prints the catalog.
    Named {
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        #[arg(long)]
        list: bool,
        #[arg(short, long, default_value = "-")]
        out: String,
    },
    /// One representative per isomorphism class, one document per line.
    Enumerate {
        #[command(flatten)]
        scope: ScopeArgs,
        /// Print only the number of classes.
        #[arg(long)]
        count: bool,
    },
    /// Run a registered check, or `all`, and write a report.
    Verify {
        theorem: String,
        #[command(flatten)]
        scope: ScopeArgs,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(short, long, default_value = "-")]
        out: String,
    },
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("kind").required(true).args(["tipped", "tipless"])))]
struct ConeArgs {
    matroid: String,
    #[arg(long)]
    tipped: bool,
    #[arg(long)]
    tipless: bool,
    #[arg(short, long, default_value = "-")]
    out: String,
}

#[derive(Args)]
struct GpcArgs {
    a: String,
    b: String,
    /// Elements of A's projective flat, comma separated (indices or labels).
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    flat_a: Vec<String>,
    /// Elements of B's flat, matched positionally with `--flat-a`.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    flat_b: Vec<String>,
    #[arg(short, long, default_value = "-")]
    out: String,
}

#[derive(Args)]
struct ScopeArgs {
    #[arg(long)]
    max_rank: usize,
    #[arg(long)]
    max_elements: Option<usize>,
    /// connected, 3-connected, triangle-free or top-rank; repeatable.
    #[arg(long = "filter")]
    filters: Vec<Filter>,
}

impl ScopeArgs {
    fn scope(&self) -> EnumerationScope {
        let mut s = EnumerationScope::new(self.max_rank).with_filters(&self.filters);
        if let Some(n) = self.max_elements {
            s = s.with_max_elements(n);
        }
        s
    }
}

/// Failures that map to exit status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(e: Error) -> anyhow::Error {
    anyhow!(Usage(e.to_string()))
}

fn load(arg: &str) -> Result<BinaryMatroid> {
    if let Some(name) = arg.strip_prefix("name:") {
        return constructs::named(name).map_err(usage);
    }
    if arg == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).context("reading stdin")?;
        return format::from_json(&text).map_err(usage);
    }
    format::read_matroid(Path::new(arg)).map_err(usage)
}

fn emit(out: &str, text: &str) -> Result<()> {
    if out == "-" {
        let mut stdout = io::stdout().lock();
        stdout.write_all(text.as_bytes())?;
        stdout.write_all(b"\n")?;
        Ok(())
    } else {
        fs::write(out, format!("{text}\n")).with_context(|| format!("writing {out}"))
    }
}

fn emit_matroid(out: &str, m: &BinaryMatroid) -> Result<()> {
    emit(out, &format::to_json(m))
}

fn emit_value(v: &Value) -> Result<()> {
    emit("-", &serde_json::to_string_pretty(v)?)
}

fn element(m: &BinaryMatroid, s: &str) -> Result<usize> {
    if let Some(i) = m.find_label(s) {
        return Ok(i);
    }
    match s.parse::<usize>() {
        Ok(i) if i < m.len() => Ok(i),
        _ => bail!(Usage(format!("no element {s:?} in a {}-element matroid", m.len()))),
    }
}

fn cache_path(scope: &EnumerationScope) -> Option<PathBuf> {
    let dir = std::env::var_os("MATROID_CACHE_DIR")?;
    let filters: Vec<&str> = scope.filters.iter().map(|f| f.as_str()).collect();
    let tag = if filters.is_empty() { "all".to_string() } else { filters.join("+") };
    Some(PathBuf::from(dir).join(format!(
        "classes-r{}-n{}-{}-v{}.json",
        scope.max_rank,
        scope.max_elements,
        tag,
        env!("CARGO_PKG_VERSION")
    )))
}

/// Enumerates the scope, reading and filling `MATROID_CACHE_DIR` if set.
fn population(scope: &EnumerationScope) -> Result<Vec<BinaryMatroid>> {
    let path = cache_path(scope);
    if let Some(p) = &path {
        if let Ok(text) = fs::read_to_string(p) {
            let docs: Vec<MatroidDocument> =
                serde_json::from_str(&text).with_context(|| format!("corrupt cache {}", p.display()))?;
            return docs
                .into_iter()
                .map(|d| BinaryMatroid::try_from(d).map_err(anyhow::Error::from))
                .collect();
        }
    }
    let classes = verify::enumerate_matroids(scope).map_err(usage)?;
    if let Some(p) = &path {
        let docs: Vec<MatroidDocument> = classes.iter().map(MatroidDocument::from).collect();
        if let Some(dir) = p.parent() {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        }
        fs::write(p, serde_json::to_string(&docs)?).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(classes)
}

fn run_verify(theorem: &str, scope: EnumerationScope, out: &str) -> Result<bool> {
    scope.validate().map_err(usage)?;
    let ids: Vec<&str> = if theorem == "all" {
        verify::check_ids()
    } else {
        vec![verify::resolve_id(theorem).ok_or_else(|| anyhow!(Usage(format!("unknown theorem id {theorem:?}"))))?]
    };
    let classes = population(&scope)?;
    let verifier = Verifier::with_population(scope, classes).map_err(usage)?;
    let mut reports: Vec<VerificationReport> = Vec::new();
    for id in ids {
        let r = verifier.verify(id).map_err(usage)?;
        eprintln!(
            "{:<8} {} population={} violations={} {}ms",
            r.theorem_id,
            if r.passed() { "pass" } else { "FAIL" },
            r.population,
            r.violations.len(),
            r.elapsed_ms
        );
        reports.push(r);
    }
    let ok = reports.iter().all(VerificationReport::passed);
    let text = if theorem == "all" {
        serde_json::to_string_pretty(&reports)?
    } else {
        reports[0].to_json()
    };
    emit(out, &text)?;
    Ok(ok)
}

fn info(m: &BinaryMatroid) -> Value {
    let conn = m.connectivity();
    json!({
        "rank": m.rank(),
        "elements": m.len(),
        "ambient_rank": m.ambient_rank(),
        "connected": conn.connected,
        "three_connected": conn.three_connected,
        "chordal": m.is_chordal(),
        "round": m.is_round(),
        "triangle_free": m.is_triangle_free(),
        "shape": classify_shape(m).as_str(),
        "tags": shape_tags(m).iter().map(|t| t.as_str()).collect::<Vec<_>>(),
        "canonical_form": canonical_form(m).hex(),
    })
}

/// Runs a command; `Ok(false)` means a negative answer (exit 1).
fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Info { matroid } => {
            emit_value(&info(&load(&matroid)?))?;
            Ok(true)
        }
        Command::Iso { a, b } => {
            let (a, b) = (load(&a)?, load(&b)?);
            let map = find_isomorphism(&a, &b);
            emit_value(&json!({"isomorphic": map.is_some(), "map": map}))?;
            Ok(map.is_some())
        }
        Command::InducedMinor { host, pattern } => {
            let (m, n) = (load(&host)?, load(&pattern)?);
            let w = has_induced_minor(&m, &n);
            let v = match &w {
                Some(w) => json!({
                    "found": true,
                    "contracted_flat": w.inner.elements.to_vec(),
                    "restricted_flat": w.outer.elements.to_vec(),
                    "minor": MatroidDocument::from(&w.minor),
                    "to_pattern": w.to_pattern,
                }),
                None => json!({"found": false}),
            };
            emit_value(&v)?;
            Ok(w.is_some())
        }
        Command::Minor { host, pattern } => {
            let (m, n) = (load(&host)?, load(&pattern)?);
            let w = find_minor(&m, &n);
            let v = match &w {
                Some(w) => json!({
                    "found": true,
                    "contracted_flat": w.contracted.elements.to_vec(),
                    "host": MatroidDocument::from(&w.host),
                    "embedding": w.embedding.iter().map(|p| p.to_column(w.host.ambient_rank())).collect::<Vec<_>>(),
                }),
                None => json!({"found": false}),
            };
            emit_value(&v)?;
            Ok(w.is_some())
        }
        Command::Cone(args) => {
            let m = load(&args.matroid)?;
            emit_matroid(&args.out, &constructs::cone(&m, args.tipped).matroid)?;
            Ok(true)
        }
        Command::Gpc(args) => {
            let (a, b) = (load(&args.a)?, load(&args.b)?);
            if args.flat_a.len() != args.flat_b.len() {
                bail!(Usage("--flat-a and --flat-b need the same number of elements".into()));
            }
            let glue = args
                .flat_a
                .iter()
                .zip(&args.flat_b)
                .map(|(x, y)| Ok((element(&a, x)?, element(&b, y)?)))
                .collect::<Result<Vec<_>>>()?;
            let g = constructs::gpc_across_pg(&a, &b, &glue).map_err(usage)?;
            emit_matroid(&args.out, &g.matroid)?;
            Ok(true)
        }
        Command::Target { bits, out } => {
            let s = TargetString::parse(&bits).map_err(usage)?;
            emit_matroid(&out, &constructs::target_from_bits(&s))?;
            Ok(true)
        }
        Command::IsTarget { matroid } => {
            let m = load(&matroid)?;
            let flag = constructs::is_projective_target(&m);
            emit_value(&json!({"target": flag.is_some(), "flag": flag}))?;
            Ok(flag.is_some())
        }
        Command::Spike { r, cotip, out } => {
            emit_matroid(&out, &constructs::spike(r, cotip).map_err(usage)?)?;
            Ok(true)
        }
        Command::Named { name, list, out } => {
            if list {
                let entries: Vec<Value> = CATALOG
                    .iter()
                    .map(|e| json!({"name": e.name, "description": e.description, "rank": e.rank, "elements": e.size}))
                    .collect();
                emit(&out, &serde_json::to_string_pretty(&entries)?)?;
            } else {
                emit_matroid(&out, &constructs::named(name.as_deref().unwrap()).map_err(usage)?)?;
            }
            Ok(true)
        }
        Command::Enumerate { scope, count } => {
            let scope = scope.scope();
            scope.validate().map_err(usage)?;
            let classes = population(&scope)?;
            if count {
                emit("-", &classes.len().to_string())?;
            } else {
                let mut stdout = io::BufWriter::new(io::stdout().lock());
                for m in &classes {
                    writeln!(stdout, "{}", format::to_json(m))?;
                }
                stdout.flush()?;
            }
            Ok(true)
        }
        Command::Verify { theorem, scope, jobs, out } => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.max(1))
                .build()
                .context("starting worker pool")?;
            pool.install(|| run_verify(&theorem, scope.scope(), &out))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("binmat: {e:#}");
            ExitCode::from(if e.is::<Usage>() { 2 } else { 1 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn elements_by_label_or_index() {
        let m = constructs::cone(&BinaryMatroid::projective(2), true).matroid;
        assert_eq!(element(&m, "p").unwrap(), m.find_label("p").unwrap());
        assert_eq!(element(&m, "0").unwrap(), 0);
        assert!(element(&m, "99").is_err());
    }
}
