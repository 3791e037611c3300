//! Diagnostic rendering.
//!
//! Machine format is one line per diagnostic, splittable on the first
//! three `:` separators: `file:line:col: severity rule-id message`.
//! Text format adds the source line, a caret marker, and the suggestion.

use std::collections::BTreeMap;
use std::fmt;

use clap::ValueEnum;
use clg_core::rules::Diagnostic;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Machine => "machine",
        })
    }
}

/// Renders diagnostics; output is byte-stable for fixed input.
pub fn format_diagnostics(
    diagnostics: &[Diagnostic],
    format: Format,
    sources: &BTreeMap<String, String>,
) -> String {
    let mut out = String::new();
    for d in diagnostics {
        out.push_str(&format!(
            "{}:{}:{}: {} {} {}\n",
            d.file,
            d.span.line,
            d.span.column,
            d.severity,
            d.rule,
            d.message
        ));
        if format == Format::Machine {
            continue;
        }
        if let Some(line) = source_line(sources, &d.file, d.span.line) {
            let shown: String = line
                .chars()
                .map(|c| if c == '\t' { ' ' } else { c })
                .collect();
            out.push_str(&format!("    {shown}\n"));
            let caret_len = caret_length(sources, d).max(1);
            out.push_str(&format!(
                "    {}{}\n",
                " ".repeat(d.span.column - 1),
                "^".repeat(caret_len)
            ));
        }
        if let Some(suggestion) = &d.suggestion {
            out.push_str(&format!("    suggestion: {suggestion}\n"));
        }
    }
    out
}

fn source_line<'a>(
    sources: &'a BTreeMap<String, String>,
    file: &str,
    line: usize,
) -> Option<&'a str> {
    sources
        .get(file)?
        .lines()
        .nth(line.checked_sub(1)?)
        .map(|l| l.trim_end_matches('\r'))
}

/// Characters of the span on its first line.
fn caret_length(sources: &BTreeMap<String, String>, d: &Diagnostic) -> usize {
    let Some(source) = sources.get(&d.file) else {
        return 1;
    };
    source
        .get(d.span.start..d.span.end)
        .and_then(|s| s.split('\n').next())
        .map(|s| s.chars().count())
        .unwrap_or(1)
}
