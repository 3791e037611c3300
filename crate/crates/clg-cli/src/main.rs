//! Command-line controlled-language checker.
//!
//! Exit codes: 0 clean, 1 at least one error-severity diagnostic,
//! 2 usage/IO/parse failure.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use clg_core::doc::Document;
use clg_core::morph::Lexicon;
use clg_core::reuse::compute_reuse_stats;
use clg_core::rules::{check_document, Diagnostic, RuleConfig, Severity};
use clg_core::termbase::{evaluate_preferred_term, TermFinding, TermStatus, Termbase};

mod report;

use report::{format_diagnostics, Format};

#[derive(Parser)]
#[command(
    name = "clg",
    version,
    about = "Controlled-language checker for German technical documentation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check XML documents against style and terminology rules.
    Check(CheckArgs),
    /// Evaluate termbase entries against the term-selection rules.
    TermLint(TermLintArgs),
    /// Compute module-reuse statistics over an XML corpus.
    Reuse(ReuseArgs),
}

#[derive(Args)]
struct ResourceArgs {
    /// Morpheme/verb lexicon file.
    #[arg(long, env = "CLG_LEXICON")]
    lexicon: PathBuf,
    /// Termbase file.
    #[arg(long, env = "CLG_TERMBASE")]
    termbase: PathBuf,
    /// Rule configuration overrides (defaults apply when absent).
    #[arg(long, env = "CLG_RULES")]
    rules: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    resources: ResourceArgs,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// XML files or directories (searched recursively for *.xml).
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
}

#[derive(Args)]
struct TermLintArgs {
    #[command(flatten)]
    resources: ResourceArgs,
    /// Concept id to evaluate; all concepts when omitted.
    concept: Option<String>,
}

#[derive(Args)]
struct ReuseArgs {
    /// Attribute that identifies reusable modules.
    #[arg(long, default_value = "id")]
    id_attribute: String,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// XML files or directories (searched recursively for *.xml).
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("clg: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Check(args) => run_check(args),
        Command::TermLint(args) => run_term_lint(args),
        Command::Reuse(args) => run_reuse(args),
    }
}

fn load_resources(resources: &ResourceArgs) -> Result<(Lexicon, Termbase, RuleConfig)> {
    let lexicon = Lexicon::load(&resources.lexicon)
        .with_context(|| format!("loading lexicon {}", resources.lexicon.display()))?;
    let termbase = Termbase::load(&resources.termbase)
        .with_context(|| format!("loading termbase {}", resources.termbase.display()))?;
    let config = match &resources.rules {
        Some(path) => RuleConfig::load(path)
            .with_context(|| format!("loading rule config {}", path.display()))?,
        None => RuleConfig::default(),
    };
    Ok((lexicon, termbase, config))
}

/// Expands files and directories into a lexicographically sorted,
/// deduplicated list of XML files.
fn collect_xml_files(inputs: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for input in inputs {
        if input.is_dir() {
            for entry in walkdir::WalkDir::new(input).sort_by_file_name() {
                let entry = entry.with_context(|| format!("reading {}", input.display()))?;
                if entry.file_type().is_file() && has_xml_extension(entry.path()) {
                    files.push(entry.into_path());
                }
            }
        } else if input.is_file() {
            files.push(input.clone());
        } else {
            bail!("no such file or directory: {}", input.display());
        }
    }
    files.sort_by(|a, b| a.to_string_lossy().cmp(&b.to_string_lossy()));
    files.dedup();
    Ok(files)
}

fn has_xml_extension(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("xml"))
}

fn parse_file(path: &Path) -> Result<(String, Document)> {
    let source = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let doc = Document::parse(&source)
        .map_err(|e| anyhow!("{}:{e}", path.display()))?;
    Ok((source, doc))
}

fn run_check(args: CheckArgs) -> Result<u8> {
    let (lexicon, termbase, config) = load_resources(&args.resources)?;
    let files = collect_xml_files(&args.inputs)?;
    if files.is_empty() {
        bail!("no XML files found in the given inputs");
    }

    let mut diagnostics: Vec<Diagnostic> = Vec::new();
    let mut sources: BTreeMap<String, String> = BTreeMap::new();
    for file in &files {
        let name = file.to_string_lossy().into_owned();
        let (source, doc) = parse_file(file)?;
        diagnostics.extend(check_document(&doc, &lexicon, &termbase, &config, &name));
        sources.insert(name, source);
    }

    print!("{}", format_diagnostics(&diagnostics, args.format, &sources));
    let failed = diagnostics.iter().any(|d| d.severity == Severity::Error);
    Ok(if failed { 1 } else { 0 })
}

fn run_term_lint(args: TermLintArgs) -> Result<u8> {
    let (lexicon, termbase, _) = load_resources(&args.resources)?;

    let concepts: Vec<&str> = match &args.concept {
        Some(id) => {
            if termbase.concept(id).is_none() {
                bail!("unknown concept id {id:?}");
            }
            vec![id.as_str()]
        }
        None => termbase.concepts().map(|c| c.id.as_str()).collect(),
    };

    let mut worst = Severity::Info;
    for id in concepts {
        let concept = termbase.concept(id).expect("validated above");
        let german = termbase.terms_of(id, "de");
        if german.is_empty() {
            continue;
        }
        let candidates: Vec<(&str, _)> = german
            .iter()
            .map(|t| (t.surface.as_str(), t.feature_focus))
            .collect();
        let ranked = evaluate_preferred_term(&candidates, concept.semantic_class, &lexicon)?;

        for term in &ranked {
            for finding in &term.findings {
                let severity = finding_severity(finding);
                println!(
                    "{severity} {} {id}: {:?}: {finding}",
                    finding.rule_id(),
                    term.surface
                );
                worst = worst.min(severity);
            }
        }
        let stored = german
            .iter()
            .find(|t| t.status == TermStatus::Preferred)
            .map(|t| t.surface.clone());
        if let Some(stored) = stored {
            let winner = &ranked[0].surface;
            if stored != *winner {
                println!(
                    "warning TERM-PREFERRED-MISMATCH {id}: stored preferred {stored:?} but the ranking prefers {winner:?}"
                );
                worst = worst.min(Severity::Warning);
            }
        }
    }

    Ok(if worst == Severity::Error { 1 } else { 0 })
}

/// More than 4 lexical morphemes is a hard violation; everything else in
/// term evaluation stays advisory.
fn finding_severity(finding: &TermFinding) -> Severity {
    match finding {
        TermFinding::MorphemeCountExceeded { .. } => Severity::Error,
        TermFinding::PatternMismatch { .. } | TermFinding::Unsegmentable => Severity::Warning,
        TermFinding::MorphemeCountAtLimit { .. } => Severity::Info,
    }
}

fn run_reuse(args: ReuseArgs) -> Result<u8> {
    let files = collect_xml_files(&args.inputs)?;
    let mut documents = Vec::new();
    for file in &files {
        let (_, doc) = parse_file(file)?;
        documents.push(doc);
    }
    let stats = compute_reuse_stats(&documents, &args.id_attribute);
    match args.format {
        Format::Text => {
            println!("total instances: {}", stats.total_instances);
            println!("unique modules: {}", stats.unique_modules);
            println!("reuse ratio: {:.4}", stats.reuse_ratio);
        }
        Format::Machine => {
            println!(
                "{}\t{}\t{:.4}",
                stats.total_instances, stats.unique_modules, stats.reuse_ratio
            );
        }
    }
    Ok(0)
}
