//! The `oced-forge` command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 unreadable or unparseable input,
//! 3 conformance errors in the OCEDD, 4 validation errors under `--strict`.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use flate2::read::GzDecoder;

use crate::mapper::{convert_with, parse_descriptor, ConvertOptions};
use crate::rdf::{parse_turtle, serialize_turtle, Graph, PrefixMap};
use crate::tools::{bgp_query, parse_query, stats, validate};
use crate::vocab::{
    builtin_ocedo, check_conformance, load_ocedd, output_prefixes, rdfs_closure, standard_prefixes, ExtensionModel,
    Severity, OCEDO_TTL,
};
use crate::xes::parse_xes;

const MAX_LISTED_FINDINGS: usize = 20;

#[derive(Debug, Parser)]
#[command(name = "oced-forge", version, about = "Build OCEDR knowledge graphs from XES event logs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Convert an XES log into a Turtle graph.
    Convert(ConvertArgs),
    /// Check a graph against OCEDO and an OCEDD.
    Validate(ValidateArgs),
    /// Print graph statistics.
    Stats(StatsArgs),
    /// Evaluate a basic graph pattern and print TSV bindings.
    Query(QueryArgs),
    /// Print the embedded OCEDO ontology.
    Ontology(OntologyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Ttl,
}

#[derive(Debug, Args)]
struct ConvertArgs {
    /// XES log, optionally gzip-compressed.
    #[arg(long)]
    xes: PathBuf,
    #[arg(long)]
    ocedd: PathBuf,
    #[arg(long)]
    descriptor: PathBuf,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Materialize the RDFS closure with OCEDO and the OCEDD.
    #[arg(long)]
    reason: bool,
    /// Skip events with bad timestamps and fail on validation errors.
    #[arg(long)]
    strict: bool,
    #[arg(long, value_enum, default_value = "ttl")]
    format: Format,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    ocedd: PathBuf,
    /// Exit with status 4 when the report has errors.
    #[arg(long)]
    strict: bool,
}

#[derive(Debug, Args)]
struct StatsArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Extension used to recognise object relations.
    #[arg(long)]
    ocedd: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct QueryArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Pattern text, one triple pattern per line, or a file holding it.
    #[arg(long)]
    pattern: String,
}

#[derive(Debug, Args)]
struct OntologyArgs {
    #[arg(long, required = true)]
    emit: bool,
}

enum Failure {
    Input(String),
    Conformance,
    Validation,
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => 2,
            Failure::Conformance => 3,
            Failure::Validation => 4,
        }
    }
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    color: bool,
}

impl Ctx<'_> {
    fn label(&self, severity: Severity) -> String {
        match (self.color, severity) {
            (false, s) => s.to_string(),
            (true, Severity::Error) => "\x1b[31merror\x1b[0m".into(),
            (true, Severity::Warning) => "\x1b[33mwarning\x1b[0m".into(),
        }
    }

    fn diag(&mut self, severity: Severity, message: impl std::fmt::Display) {
        let label = self.label(severity);
        let _ = writeln!(self.err, "{label}: {message}");
    }

    fn diag_list<T: std::fmt::Display>(&mut self, severity: Severity, items: &[T]) {
        for item in items.iter().take(MAX_LISTED_FINDINGS) {
            self.diag(severity, item);
        }
        if items.len() > MAX_LISTED_FINDINGS {
            let rest = items.len() - MAX_LISTED_FINDINGS;
            let _ = writeln!(self.err, "... and {rest} more");
        }
    }
}

/// Runs the tool and returns its exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                1
            } else {
                let _ = write!(stdout, "{e}");
                0
            };
        }
    };
    let color = std::env::var("OCED_FORGE_COLOR").is_ok_and(|v| v == "1");
    let mut ctx = Ctx { out: stdout, err: stderr, color };
    let result = match cli.command {
        Command::Convert(a) => cmd_convert(&mut ctx, &a),
        Command::Validate(a) => cmd_validate(&mut ctx, &a),
        Command::Stats(a) => cmd_stats(&mut ctx, &a),
        Command::Query(a) => cmd_query(&mut ctx, &a),
        Command::Ontology(_) => write_out(ctx.out, OCEDO_TTL.as_bytes()),
    };
    match result {
        Ok(()) => 0,
        Err(f) => {
            if let Failure::Input(msg) = &f {
                ctx.diag(Severity::Error, msg);
            }
            f.code()
        }
    }
}

fn write_out(out: &mut dyn Write, bytes: &[u8]) -> Result<(), Failure> {
    out.write_all(bytes)
        .and_then(|_| out.flush())
        .map_err(|e| Failure::Input(format!("cannot write output: {e}")))
}

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn open_xes(path: &Path) -> Result<Box<dyn BufRead>, Failure> {
    let io_err = |e: io::Error| Failure::Input(format!("{}: {e}", path.display()));
    let mut file = BufReader::new(File::open(path).map_err(io_err)?);
    let gz = file.fill_buf().map_err(io_err)?.starts_with(&[0x1f, 0x8b]);
    Ok(if gz {
        Box::new(BufReader::new(GzDecoder::new(file)))
    } else {
        Box::new(file)
    })
}

/// File name without `.gz` and `.xes`, used as the source in event IRIs.
fn source_name(path: &Path) -> String {
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let name = name.strip_suffix(".gz").unwrap_or(&name);
    name.strip_suffix(".xes").unwrap_or(name).to_owned()
}

fn load_graph(path: &Path) -> Result<(Graph, PrefixMap), Failure> {
    let text = read_text(path)?;
    parse_turtle(&text).map_err(|e| Failure::Input(format!("{}:{e}", path.display())))
}

/// Loads an OCEDD, printing its conformance findings. Errors abort with 3.
fn load_extension(ctx: &mut Ctx<'_>, path: &Path, ocedo: &Graph) -> Result<ExtensionModel, Failure> {
    let text = read_text(path)?;
    let ext = load_ocedd(&text).map_err(|e| Failure::Input(format!("{}:{e}", path.display())))?;
    let report = check_conformance(&ext, ocedo);
    for f in &report.findings {
        ctx.diag(f.severity, format_args!("{}: {} {}: {}", path.display(), f.code, f.subject.as_str(), f.message));
    }
    if report.error_count() > 0 {
        return Err(Failure::Conformance);
    }
    Ok(ext)
}

fn cmd_convert(ctx: &mut Ctx<'_>, a: &ConvertArgs) -> Result<(), Failure> {
    let Format::Ttl = a.format;
    let started = Instant::now();
    let (ocedo, _) = builtin_ocedo();
    let ext = load_extension(ctx, &a.ocedd, &ocedo)?;

    let mut prefixes = standard_prefixes();
    prefixes.merge(&ext.prefixes);
    let d = parse_descriptor(&read_text(&a.descriptor)?, &prefixes)
        .map_err(|e| Failure::Input(format!("{}: {e}", a.descriptor.display())))?;

    let log = parse_xes(open_xes(&a.xes)?, &source_name(&a.xes))
        .map_err(|e| Failure::Input(format!("{}:{e}", a.xes.display())))?;
    let xes_warnings: Vec<String> = log.warnings.iter().map(|w| format!("{}:{w}", a.xes.display())).collect();
    ctx.diag_list(Severity::Warning, &xes_warnings);

    let conversion = convert_with(&log, &d, &ext, &ConvertOptions { strict: a.strict });
    let s = &conversion.stats;
    let mut graph = conversion.graph;
    if a.reason {
        let mut all = graph;
        all.extend_from(&ocedo);
        all.extend_from(ext.graph());
        graph = rdfs_closure(&all);
    }

    let mut failed = false;
    if a.strict {
        let report = validate(&graph, &ocedo, &ext);
        let errors: Vec<String> = report
            .findings
            .iter()
            .filter(|f| f.severity == Severity::Error)
            .map(|f| f.to_string())
            .collect();
        ctx.diag_list(Severity::Error, &errors);
        failed = !errors.is_empty() || s.errors().next().is_some();
    }

    let turtle = serialize_turtle(&graph, &output_prefixes(&ext.prefixes, &d.resource_namespace));
    match &a.out {
        Some(path) => std::fs::write(path, turtle.as_bytes())
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?,
        None => write_out(ctx.out, turtle.as_bytes())?,
    }

    let errors: Vec<String> = s.errors().map(|f| f.to_string()).collect();
    let warnings: Vec<String> = s.warnings().map(|f| f.to_string()).collect();
    ctx.diag_list(Severity::Error, &errors);
    ctx.diag_list(Severity::Warning, &warnings);
    let unmapped: Vec<String> = s.unmapped_keys.iter().map(|(k, n)| format!("{k} ({n})")).collect();
    let _ = writeln!(
        ctx.err,
        "events: {} in, {} converted, {} skipped\nobjects: {} ({} bindings skipped)\ntriples: {}{}\nunmapped keys: {}\nelapsed: {:.3}s",
        s.events_in,
        s.events,
        s.skipped_events,
        s.objects,
        s.skipped_objects,
        graph.len(),
        if a.reason { " (with closure)" } else { "" },
        if unmapped.is_empty() { "none".into() } else { unmapped.join(", ") },
        started.elapsed().as_secs_f64()
    );
    if failed {
        Err(Failure::Validation)
    } else {
        Ok(())
    }
}

fn cmd_validate(ctx: &mut Ctx<'_>, a: &ValidateArgs) -> Result<(), Failure> {
    let (ocedo, _) = builtin_ocedo();
    let ext = load_extension(ctx, &a.ocedd, &ocedo)?;
    let (graph, _) = load_graph(&a.graph)?;
    let report = validate(&graph, &ocedo, &ext);
    write_out(ctx.out, format!("{report}\n").as_bytes())?;
    if a.strict && !report.is_valid() {
        return Err(Failure::Validation);
    }
    Ok(())
}

fn cmd_stats(ctx: &mut Ctx<'_>, a: &StatsArgs) -> Result<(), Failure> {
    let ext = match &a.ocedd {
        Some(path) => Some(load_extension(ctx, path, &builtin_ocedo().0)?),
        None => None,
    };
    let (graph, _) = load_graph(&a.graph)?;
    write_out(ctx.out, format!("{}\n", stats(&graph, ext.as_ref())).as_bytes())
}

fn cmd_query(ctx: &mut Ctx<'_>, a: &QueryArgs) -> Result<(), Failure> {
    let (graph, graph_prefixes) = load_graph(&a.graph)?;
    let mut prefixes = standard_prefixes();
    prefixes.merge(&graph_prefixes);
    let as_path = Path::new(&a.pattern);
    let (text, origin) = if as_path.is_file() {
        let mut s = String::new();
        File::open(as_path)
            .and_then(|mut f| f.read_to_string(&mut s))
            .map_err(|e| Failure::Input(format!("{}: {e}", as_path.display())))?;
        (s, as_path.display().to_string())
    } else {
        (a.pattern.clone(), "pattern".to_owned())
    };
    let patterns = parse_query(&text, &prefixes).map_err(|e| Failure::Input(format!("{origin}:{e}")))?;
    if patterns.is_empty() {
        return Err(Failure::Input(format!("{origin}: no triple patterns")));
    }
    let result = bgp_query(&graph, &patterns);
    write_out(ctx.out, result.to_tsv(&prefixes).as_bytes())
}
