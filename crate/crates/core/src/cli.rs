//! The `etymograph` command line.
//!
//! Results go to stdout (or `--out`), logs and diagnostics of secondary
//! steps to stderr. Exit codes: 0 success, 1 findings or input failure,
//! 2 usage error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::diagnostic::{sort_diagnostics, Diagnostic, Location, Severity};
use crate::graph::{self, ExportFormat};
use crate::langtag::{AbbrevTable, RegistrySnapshot};
use crate::lift::{self, NormalizeOptions};
use crate::lint::{self, RuleConfig, RuleConfigFile};
use crate::model::{CitationKind, Document, EtymologyBlock, NodePath, Step};
use crate::tei;

pub const REGISTRY_ENV: &str = "ETYMOGRAPH_REGISTRY";

#[derive(Parser, Debug)]
#[command(name = "etymograph", version, about = "Check, convert and graph TEI etymologies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse files and print entry and citation counts.
    Parse {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
        format: TextOrJson,
    },
    /// Run the rule catalogue.
    Lint {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
        format: TextOrJson,
        #[command(flatten)]
        rules: RuleFlags,
        #[arg(long)]
        link_across_files: bool,
    },
    /// Build the lexical network and export it.
    Graph {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, value_enum)]
        format: GraphFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        link_across_files: bool,
    },
    /// Print the diachronies leading into an entry or sense.
    Trace {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        anchor: String,
        #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
        format: TextOrJson,
        #[arg(long)]
        link_across_files: bool,
    },
    /// Lift legacy etymologies, normalize, and write TEI.
    Convert {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        aggressive: bool,
        #[arg(long)]
        abbrev: Option<PathBuf>,
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct RuleFlags {
    /// JSON config: rule overrides, notations, registry and abbreviation paths.
    #[arg(long, alias = "config")]
    rules: Option<PathBuf>,
    /// Override a severity, as RULE=error|warning|info. Repeatable.
    #[arg(long = "severity", value_name = "RULE=LEVEL")]
    severity: Vec<String>,
    /// Disable a rule. Repeatable.
    #[arg(long = "disable", value_name = "RULE")]
    disable: Vec<String>,
    #[arg(long)]
    max_chain_length: Option<usize>,
    /// Skip the registry check of language tags.
    #[arg(long)]
    no_registry: bool,
    /// Registry snapshot in record-jar format.
    #[arg(long)]
    registry: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum TextOrJson {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GraphFormat {
    Dot,
    Graphml,
    Json,
}

impl From<GraphFormat> for ExportFormat {
    fn from(f: GraphFormat) -> Self {
        match f {
            GraphFormat::Dot => ExportFormat::Dot,
            GraphFormat::Graphml => ExportFormat::GraphMl,
            GraphFormat::Json => ExportFormat::Json,
        }
    }
}

/// Config file shape shared by `lint --rules` and `convert --config`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    #[serde(default)]
    severity_overrides: std::collections::BTreeMap<String, String>,
    #[serde(default)]
    disabled_rules: Vec<String>,
    max_chain_length: Option<usize>,
    check_registry: Option<bool>,
    #[serde(default)]
    known_notations: Vec<String>,
    abbrev_table: Option<PathBuf>,
    registry: Option<PathBuf>,
}

impl ConfigFile {
    fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let mut cfg: Self = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        // relative paths inside the config are relative to the config file
        let base = path.parent().unwrap_or(Path::new("."));
        cfg.abbrev_table = cfg.abbrev_table.map(|p| base.join(p));
        cfg.registry = cfg.registry.map(|p| base.join(p));
        Ok(cfg)
    }
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

enum Failure {
    Usage(String),
    Input(String),
}

type Outcome = Result<i32, Failure>;

/// Run with the process's stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Run against arbitrary writers; returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let mut io = Io { out, err };
    let result = match cli.command {
        Command::Parse { files, format } => cmd_parse(&mut io, &files, format),
        Command::Lint {
            files,
            format,
            rules,
            link_across_files,
        } => cmd_lint(&mut io, &files, format, &rules, link_across_files),
        Command::Graph {
            files,
            format,
            out,
            link_across_files,
        } => cmd_graph(&mut io, &files, format.into(), out.as_deref(), link_across_files),
        Command::Trace {
            files,
            anchor,
            format,
            link_across_files,
        } => cmd_trace(&mut io, &files, &anchor, format, link_across_files),
        Command::Convert {
            files,
            out,
            aggressive,
            abbrev,
            config,
        } => cmd_convert(&mut io, &files, &out, aggressive, abbrev.as_deref(), config.as_deref()),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(io.err, "etymograph: {m}");
            2
        }
        Err(Failure::Input(m)) => {
            let _ = writeln!(io.err, "etymograph: {m}");
            1
        }
    }
}

fn source_name(path: &Path) -> String {
    path.display().to_string()
}

fn parse_all(files: &[PathBuf]) -> Result<Vec<(Document, Vec<Diagnostic>)>, Failure> {
    files
        .iter()
        .map(|f| {
            let bytes = std::fs::read(f).map_err(|e| Failure::Input(format!("cannot read {}: {e}", f.display())))?;
            tei::parse_document(&bytes, &source_name(f)).map_err(|e| Failure::Input(e.to_string()))
        })
        .collect()
}

fn collection(parsed: Vec<(Document, Vec<Diagnostic>)>, link: bool) -> Vec<(Document, Vec<Diagnostic>)> {
    if !link || parsed.len() < 2 {
        return parsed;
    }
    let name: Vec<&str> = parsed.iter().map(|(d, _)| d.source_name.as_str()).collect();
    let name = name.join("+");
    let docs: Vec<Document> = parsed.iter().map(|(d, _)| d.clone()).collect();
    let diags = parsed.into_iter().flat_map(|(_, d)| d).collect();
    vec![(Document::merge(&name, &docs), diags)]
}

fn write_all(io: &mut Io, bytes: &[u8]) -> Result<(), Failure> {
    io.out
        .write_all(bytes)
        .map_err(|e| Failure::Input(format!("cannot write output: {e}")))
}

fn etymon_count(doc: &Document) -> usize {
    doc.citations().filter(|(_, c)| c.kind == CitationKind::Etymon).count()
}

fn cmd_parse(io: &mut Io, files: &[PathBuf], format: TextOrJson) -> Outcome {
    let mut failed = false;
    for f in files {
        let bytes = match std::fs::read(f) {
            Ok(b) => b,
            Err(e) => {
                let _ = writeln!(io.err, "etymograph: cannot read {}: {e}", f.display());
                failed = true;
                continue;
            }
        };
        match tei::parse_document(&bytes, &source_name(f)) {
            Ok((doc, diags)) => {
                let line = match format {
                    TextOrJson::Text => format!(
                        "{}: {} entries, {} citations, {} etymons, {} parser notes\n",
                        doc.source_name,
                        doc.entries.len(),
                        doc.citation_count(),
                        etymon_count(&doc),
                        diags.len()
                    ),
                    TextOrJson::Json => format!(
                        "{}\n",
                        serde_json::json!({
                            "file": doc.source_name,
                            "entries": doc.entries.len(),
                            "citations": doc.citation_count(),
                            "etymons": etymon_count(&doc),
                            "notes": diags.len(),
                        })
                    ),
                };
                write_all(io, line.as_bytes())?;
            }
            Err(e) => {
                let _ = writeln!(io.err, "etymograph: {e}");
                failed = true;
            }
        }
    }
    Ok(i32::from(failed))
}

fn registry_path(flag: Option<&Path>, cfg: Option<&Path>) -> Option<PathBuf> {
    flag.map(Path::to_path_buf)
        .or_else(|| std::env::var_os(REGISTRY_ENV).map(PathBuf::from))
        .or_else(|| cfg.map(Path::to_path_buf))
}

fn rule_config(flags: &RuleFlags) -> Result<RuleConfig, Failure> {
    let file = match &flags.rules {
        Some(p) => ConfigFile::load(p).map_err(Failure::Usage)?,
        None => ConfigFile::default(),
    };
    let mut cfg = RuleConfig::default();
    cfg.apply(RuleConfigFile {
        severity_overrides: file.severity_overrides,
        disabled_rules: file.disabled_rules,
        max_chain_length: file.max_chain_length,
        check_registry: file.check_registry,
        known_notations: file.known_notations,
    })
    .map_err(|e| Failure::Usage(e.to_string()))?;
    for spec in &flags.severity {
        let (id, level) = spec
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("--severity expects RULE=LEVEL, got {spec:?}")))?;
        let sev = Severity::parse(level).ok_or_else(|| Failure::Usage(format!("unknown severity {level:?}")))?;
        cfg.override_severity(id, sev).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    for id in &flags.disable {
        cfg.disable(id).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    if let Some(n) = flags.max_chain_length {
        cfg.max_chain_length = n;
    }
    if flags.no_registry {
        cfg.check_registry = false;
    }
    if let Some(p) = registry_path(flags.registry.as_deref(), file.registry.as_deref()) {
        let snap = RegistrySnapshot::load(&p).map_err(|e| Failure::Usage(e.to_string()))?;
        cfg.registry = Some(Arc::new(snap));
    }
    Ok(cfg)
}

fn cmd_lint(io: &mut Io, files: &[PathBuf], format: TextOrJson, flags: &RuleFlags, link: bool) -> Outcome {
    let cfg = rule_config(flags)?;
    let parsed = collection(parse_all(files)?, link);
    let mut all = Vec::new();
    for (doc, parse_diags) in &parsed {
        let mut diags: Vec<Diagnostic> = parse_diags
            .iter()
            .filter(|d| cfg.is_enabled(d.rule))
            .map(|d| Diagnostic {
                severity: cfg.severity_of(d.rule),
                ..d.clone()
            })
            .collect();
        diags.extend(lint::lint_document(doc, &cfg));
        sort_diagnostics(&mut diags);
        all.extend(diags);
    }
    let mut text = String::new();
    for d in &all {
        match format {
            TextOrJson::Text => text.push_str(&d.to_string()),
            TextOrJson::Json => text.push_str(&d.to_json_line()),
        }
        text.push('\n');
    }
    if format == TextOrJson::Text {
        let errors = all.iter().filter(|d| d.is_error()).count();
        let _ = writeln!(io.err, "{} findings, {errors} errors", all.len());
    }
    write_all(io, text.as_bytes())?;
    Ok(i32::from(all.iter().any(Diagnostic::is_error)))
}

fn build(io: &mut Io, files: &[PathBuf], link: bool) -> Result<graph::EtymGraph, Failure> {
    let docs: Vec<Document> = collection(parse_all(files)?, link).into_iter().map(|(d, _)| d).collect();
    let (g, stats) = graph::build_network_with_stats(&docs);
    if stats.unresolved_refs > 0 {
        let _ = writeln!(io.err, "etymograph: {} unresolved pointers left out of the graph", stats.unresolved_refs);
    }
    Ok(g)
}

fn cmd_graph(io: &mut Io, files: &[PathBuf], format: ExportFormat, out: Option<&Path>, link: bool) -> Outcome {
    let g = build(io, files, link)?;
    let mut bytes = graph::export(&g, format);
    if format == ExportFormat::Json {
        bytes.push(b'\n');
    }
    match out {
        Some(p) => std::fs::write(p, &bytes).map_err(|e| Failure::Input(format!("cannot write {}: {e}", p.display())))?,
        None => write_all(io, &bytes)?,
    }
    Ok(0)
}

fn cmd_trace(io: &mut Io, files: &[PathBuf], anchor: &str, format: TextOrJson, link: bool) -> Outcome {
    let g = build(io, files, link)?;
    let paths = graph::trace(&g, anchor).map_err(|e| Failure::Input(e.to_string()))?;
    let mut s = String::new();
    match format {
        TextOrJson::Json => {
            s = serde_json::to_string(&paths).expect("paths serialize");
            s.push('\n');
        }
        TextOrJson::Text => {
            if paths.is_empty() {
                s.push_str(&format!("{anchor}: no etymology\n"));
            }
            for (i, p) in paths.iter().enumerate() {
                let target = g.node(&p.target).map(|n| n.label()).unwrap_or_default();
                let n = p.stages.len();
                s.push_str(&format!(
                    "path {} into {target} (entry {}), {n} stage{}:\n",
                    i + 1,
                    p.anchored_entry,
                    if n == 1 { "" } else { "s" }
                ));
                for st in &p.stages {
                    let label = g.node(&st.node).map(|n| n.label()).unwrap_or_default();
                    s.push_str(&format!("  {label}  --{}-->\n", st.relation));
                }
                s.push_str(&format!("  {target}\n"));
            }
        }
    }
    write_all(io, s.as_bytes())?;
    Ok(0)
}

fn lift_blocks(
    blocks: &mut [EtymologyBlock],
    base: &NodePath,
    table: &AbbrevTable,
    loc: &Location,
    diags: &mut Vec<Diagnostic>,
) -> usize {
    let mut lifted = 0;
    for (i, b) in blocks.iter_mut().enumerate() {
        let path = base.child(Step::Etym(i));
        let here = Location {
            path: Some(path.clone()),
            ..loc.clone()
        }
        .with_span(b.span);
        if let Ok((nb, d)) = lift::lift_flat_etym_at(b, table, &here) {
            *b = nb;
            diags.extend(d);
            lifted += 1;
        }
        lifted += lift_blocks(&mut b.nested, &path, table, loc, diags);
    }
    lifted
}

fn cmd_convert(
    io: &mut Io,
    files: &[PathBuf],
    out: &Path,
    aggressive: bool,
    abbrev: Option<&Path>,
    config: Option<&Path>,
) -> Outcome {
    let file_cfg = match config {
        Some(p) => ConfigFile::load(p).map_err(Failure::Usage)?,
        None => ConfigFile::default(),
    };
    let mut table = AbbrevTable::starter();
    if let Some(p) = abbrev.map(Path::to_path_buf).or(file_cfg.abbrev_table) {
        let user = AbbrevTable::load(&p).map_err(|e| Failure::Usage(e.to_string()))?;
        table.merge(user);
    }
    std::fs::create_dir_all(out).map_err(|e| Failure::Input(format!("cannot create {}: {e}", out.display())))?;
    let opts = NormalizeOptions { aggressive };
    let mut summary = String::new();
    for f in files {
        let (doc, _) = parse_all(std::slice::from_ref(f))?.remove(0);
        let mut diags = Vec::new();
        let mut lifted = 0;
        let mut entries = Vec::with_capacity(doc.entries.len());
        for (ei, e) in doc.entries.iter().enumerate() {
            let mut e = e.clone();
            let loc = Location {
                file: doc.source_name.clone(),
                entry: Some(ei),
                entry_id: e.id.clone(),
                ..Location::default()
            };
            let root = NodePath::entry(ei);
            lifted += lift_blocks(&mut e.etymologies, &root, &table, &loc, &mut diags);
            for (si, s) in e.senses.iter_mut().enumerate() {
                lifted += lift_blocks(&mut s.etymologies, &root.child(Step::Sense(si)), &table, &loc, &mut diags);
            }
            let (e, d) = lift::normalize_entry_at(&e, opts, &doc.source_name, ei);
            diags.extend(d);
            entries.push(e);
        }
        let converted = Document::from_entries(&doc.source_name, entries);
        let name = f.file_name().map(PathBuf::from).unwrap_or_else(|| PathBuf::from("out.xml"));
        let target = out.join(name);
        std::fs::write(&target, tei::emit_tei(&converted))
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", target.display())))?;
        sort_diagnostics(&mut diags);
        for d in &diags {
            let _ = writeln!(io.err, "{d}");
        }
        summary.push_str(&format!(
            "{} -> {}: {lifted} etymologies lifted, {} changes reported\n",
            doc.source_name,
            target.display(),
            diags.len()
        ));
    }
    write_all(io, summary.as_bytes())?;
    Ok(0)
}
