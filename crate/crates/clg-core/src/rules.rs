//! Element-context rule engine.
//!
//! Rules are bound to element-path contexts via suffix selectors
//! (`safetyadvice/cause` distinguishes a hazard cause from an error cause
//! by its parent). Severities are configuration, which models the move
//! from loose recommendations to prescriptions: element rules default to
//! error, passive-voice avoidance stays a warning.

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::doc::{Document, Sentence, Span, Terminal, TextBlock};
use crate::morph::Lexicon;
use crate::termbase::{Termbase, TermStatus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Error,
    Warning,
    Info,
    Off,
}

impl Severity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
            Severity::Info => "info",
            Severity::Off => "off",
        }
    }

    pub fn parse(s: &str) -> Option<Severity> {
        match s {
            "error" => Some(Severity::Error),
            "warning" => Some(Severity::Warning),
            "info" => Some(Severity::Info),
            "off" => Some(Severity::Off),
            _ => None,
        }
    }

    /// One level milder; used for borderline findings.
    fn demoted(self) -> Severity {
        match self {
            Severity::Error => Severity::Warning,
            Severity::Warning | Severity::Info => Severity::Info,
            Severity::Off => Severity::Off,
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    StepImperative,
    CauseSafetyEllipsis,
    CauseSafetyExclaim,
    CauseErrorSentence,
    CauseErrorPeriod,
    SymptomNoQuestion,
    NoPassive,
    CompoundLength,
    TermDeprecated,
    TermAmbiguous,
    MaxTokens,
    AnalysisSkipped,
}

impl RuleId {
    pub const ALL: [RuleId; 12] = [
        RuleId::StepImperative,
        RuleId::CauseSafetyEllipsis,
        RuleId::CauseSafetyExclaim,
        RuleId::CauseErrorSentence,
        RuleId::CauseErrorPeriod,
        RuleId::SymptomNoQuestion,
        RuleId::NoPassive,
        RuleId::CompoundLength,
        RuleId::TermDeprecated,
        RuleId::TermAmbiguous,
        RuleId::MaxTokens,
        RuleId::AnalysisSkipped,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            RuleId::StepImperative => "STEP-IMPERATIVE",
            RuleId::CauseSafetyEllipsis => "CAUSE-SAFETY-ELLIPSIS",
            RuleId::CauseSafetyExclaim => "CAUSE-SAFETY-EXCLAIM",
            RuleId::CauseErrorSentence => "CAUSE-ERROR-SENTENCE",
            RuleId::CauseErrorPeriod => "CAUSE-ERROR-PERIOD",
            RuleId::SymptomNoQuestion => "SYMPTOM-NO-QUESTION",
            RuleId::NoPassive => "NO-PASSIVE",
            RuleId::CompoundLength => "COMPOUND-LENGTH",
            RuleId::TermDeprecated => "TERM-DEPRECATED",
            RuleId::TermAmbiguous => "TERM-AMBIGUOUS",
            RuleId::MaxTokens => "MAX-TOKENS",
            RuleId::AnalysisSkipped => "ANALYSIS-SKIPPED",
        }
    }

    pub fn parse(s: &str) -> Option<RuleId> {
        RuleId::ALL.iter().copied().find(|r| r.as_str() == s)
    }

    fn default_setting(&self) -> RuleSetting {
        let (selector, severity) = match self {
            RuleId::StepImperative => ("action/step", Severity::Error),
            RuleId::CauseSafetyEllipsis => ("safetyadvice/cause", Severity::Error),
            RuleId::CauseSafetyExclaim => ("safetyadvice/cause", Severity::Error),
            RuleId::CauseErrorSentence => ("errordescription/cause", Severity::Error),
            RuleId::CauseErrorPeriod => ("errordescription/cause", Severity::Error),
            RuleId::SymptomNoQuestion => ("symptom", Severity::Error),
            RuleId::NoPassive => ("*", Severity::Warning),
            RuleId::CompoundLength => ("*", Severity::Error),
            RuleId::TermDeprecated => ("*", Severity::Error),
            RuleId::TermAmbiguous => ("*", Severity::Info),
            RuleId::MaxTokens => ("cause", Severity::Info),
            RuleId::AnalysisSkipped => ("*", Severity::Info),
        };
        RuleSetting {
            selector: Selector::parse(selector),
            severity,
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Element-path suffix pattern: `*` matches everything,
/// `safetyadvice/cause` matches any path ending in those two segments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Selector {
    Any,
    Suffix(Vec<String>),
}

impl Selector {
    pub fn parse(s: &str) -> Selector {
        if s == "*" {
            Selector::Any
        } else {
            Selector::Suffix(s.split('/').map(str::to_string).collect())
        }
    }

    pub fn matches(&self, element_path: &[String]) -> bool {
        match self {
            Selector::Any => true,
            Selector::Suffix(suffix) => element_path.ends_with(suffix),
        }
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selector::Any => f.write_str("*"),
            Selector::Suffix(parts) => f.write_str(&parts.join("/")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSetting {
    pub selector: Selector,
    pub severity: Severity,
}

#[derive(Debug, Error)]
pub enum RuleConfigError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: unknown rule id {id:?}")]
    UnknownRule { line: usize, id: String },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

/// Per-rule context selectors and severities, merged over built-in
/// defaults. `off` disables a rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleConfig {
    settings: Vec<(RuleId, RuleSetting)>,
    /// Threshold for MAX-TOKENS ("short and expressive" is unquantified,
    /// so the limit is configuration, not prescription).
    pub max_tokens: usize,
}

impl Default for RuleConfig {
    fn default() -> Self {
        RuleConfig {
            settings: RuleId::ALL
                .iter()
                .map(|&r| (r, r.default_setting()))
                .collect(),
            max_tokens: 12,
        }
    }
}

impl RuleConfig {
    /// Loads overrides from `rule_id<TAB>selector<TAB>severity` lines. A
    /// missing file means defaults apply; any other IO failure is an error.
    pub fn load(path: impl AsRef<Path>) -> Result<RuleConfig, RuleConfigError> {
        let path = path.as_ref();
        match std::fs::read_to_string(path) {
            Ok(text) => Self::parse(&text),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(RuleConfig::default()),
            Err(source) => Err(RuleConfigError::Io {
                path: path.to_path_buf(),
                source,
            }),
        }
    }

    pub fn parse(text: &str) -> Result<RuleConfig, RuleConfigError> {
        let mut cfg = RuleConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = raw.split('\t').collect();
            if fields.len() != 3 {
                return Err(RuleConfigError::Malformed {
                    line,
                    message: format!("expected 3 tab-separated fields, got {}", fields.len()),
                });
            }
            let rule = RuleId::parse(fields[0]).ok_or_else(|| RuleConfigError::UnknownRule {
                line,
                id: fields[0].to_string(),
            })?;
            let severity = Severity::parse(fields[2]).ok_or_else(|| RuleConfigError::Malformed {
                line,
                message: format!("invalid severity {:?}", fields[2]),
            })?;
            cfg.set(
                rule,
                RuleSetting {
                    selector: Selector::parse(fields[1]),
                    severity,
                },
            );
        }
        Ok(cfg)
    }

    pub fn set(&mut self, rule: RuleId, setting: RuleSetting) {
        for (r, s) in &mut self.settings {
            if *r == rule {
                *s = setting;
                return;
            }
        }
        self.settings.push((rule, setting));
    }

    pub fn setting(&self, rule: RuleId) -> &RuleSetting {
        self.settings
            .iter()
            .find(|(r, _)| *r == rule)
            .map(|(_, s)| s)
            .expect("every built-in rule has a setting")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub rule: RuleId,
    pub severity: Severity,
    pub file: String,
    pub span: Span,
    pub element_path: Vec<String>,
    pub message: String,
    pub suggestion: Option<String>,
}

/// Runs every enabled rule whose selector matches a block's element path.
/// Diagnostics come back sorted by (line, column, rule id); analysis
/// failures surface as ANALYSIS-SKIPPED diagnostics, never as errors.
pub fn check_document(
    doc: &Document,
    lex: &Lexicon,
    tb: &Termbase,
    cfg: &RuleConfig,
    file: &str,
) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let blocks = doc.text_blocks();
    for block in &blocks {
        let sentences = doc.sentences(block);
        if sentences.is_empty() {
            continue;
        }
        for rule in RuleId::ALL {
            let setting = cfg.setting(rule);
            if setting.severity == Severity::Off || !setting.selector.matches(&block.element_path)
            {
                continue;
            }
            let mut ctx = RuleCx {
                doc,
                lex,
                tb,
                cfg,
                file,
                block,
                severity: setting.severity,
                rule,
                out: &mut out,
            };
            ctx.run(&sentences);
        }
    }
    out.sort_by(|a, b| {
        (a.span.line, a.span.column, a.rule.as_str()).cmp(&(
            b.span.line,
            b.span.column,
            b.rule.as_str(),
        ))
    });
    out
}

struct RuleCx<'a> {
    doc: &'a Document,
    lex: &'a Lexicon,
    tb: &'a Termbase,
    cfg: &'a RuleConfig,
    file: &'a str,
    block: &'a TextBlock,
    severity: Severity,
    rule: RuleId,
    out: &'a mut Vec<Diagnostic>,
}

impl RuleCx<'_> {
    fn emit(&mut self, span: Span, message: String, suggestion: Option<String>) {
        self.emit_with_severity(self.severity, span, message, suggestion);
    }

    fn emit_with_severity(
        &mut self,
        severity: Severity,
        span: Span,
        message: String,
        suggestion: Option<String>,
    ) {
        self.out.push(Diagnostic {
            rule: self.rule,
            severity,
            file: self.file.to_string(),
            span,
            element_path: self.block.element_path.clone(),
            message,
            suggestion,
        });
    }

    /// Span from the last token to the end of the sentence (covers the
    /// terminal punctuation, or its absence).
    fn tail_span(&self, sentence: &Sentence) -> Span {
        let last = sentence.tokens.last().expect("sentences have tokens");
        self.doc.span_at(last.span.start, sentence.span.end)
    }

    fn run(&mut self, sentences: &[Sentence]) {
        match self.rule {
            RuleId::StepImperative => self.step_imperative(sentences),
            RuleId::CauseSafetyEllipsis => self.no_finite_verb(
                sentences,
                "a hazard cause must be an ellipsis without a finite verb",
            ),
            RuleId::CauseSafetyExclaim => self.require_terminal(
                sentences,
                Terminal::Exclamation,
                "a hazard cause must end with an exclamation point",
            ),
            RuleId::CauseErrorSentence => self.require_finite_verb(
                sentences,
                "an error cause must be a full sentence with a finite verb",
            ),
            RuleId::CauseErrorPeriod => self.require_terminal(
                sentences,
                Terminal::Period,
                "an error cause must end with a period",
            ),
            RuleId::SymptomNoQuestion => self.symptom_no_question(sentences),
            RuleId::NoPassive => self.no_passive(sentences),
            RuleId::CompoundLength => self.compound_length(sentences),
            RuleId::TermDeprecated => self.term_deprecated(sentences),
            RuleId::TermAmbiguous => self.term_ambiguous(sentences),
            RuleId::MaxTokens => self.max_tokens(sentences),
            RuleId::AnalysisSkipped => self.analysis_skipped(sentences),
        }
    }

    /// The first sentence must open with an infinitive immediately
    /// followed by "Sie" (formal imperative).
    fn step_imperative(&mut self, sentences: &[Sentence]) {
        let first = &sentences[0];
        let ok = first.tokens.len() >= 2
            && self.lex.is_infinitive(&first.tokens[0].surface)
            && first.tokens[1].surface == "Sie";
        if !ok {
            self.emit(
                first.tokens[0].span,
                "a step must start with the formal imperative (infinitive + \"Sie\")".to_string(),
                None,
            );
        }
    }

    fn no_finite_verb(&mut self, sentences: &[Sentence], message: &str) {
        for sentence in sentences {
            if let Some(token) = sentence
                .tokens
                .iter()
                .find(|t| self.lex.is_finite_verb_form(&t.surface))
            {
                self.emit(
                    token.span,
                    format!("{message}; found {:?}", token.surface),
                    None,
                );
            }
        }
    }

    fn require_finite_verb(&mut self, sentences: &[Sentence], message: &str) {
        for sentence in sentences {
            let has_finite = sentence
                .tokens
                .iter()
                .any(|t| self.lex.is_finite_verb_form(&t.surface));
            if !has_finite {
                self.emit(sentence.span, message.to_string(), None);
            }
        }
    }

    fn require_terminal(&mut self, sentences: &[Sentence], wanted: Terminal, message: &str) {
        for sentence in sentences {
            if sentence.terminal != wanted {
                self.emit(self.tail_span(sentence), message.to_string(), None);
            }
        }
    }

    fn symptom_no_question(&mut self, sentences: &[Sentence]) {
        for sentence in sentences {
            let first = &sentence.tokens[0];
            if self.lex.is_question_word(&first.surface) {
                self.emit(
                    first.span,
                    "a symptom must be a statement, not a question".to_string(),
                    None,
                );
            } else if sentence.terminal == Terminal::Question {
                self.emit(
                    self.tail_span(sentence),
                    "a symptom must be a statement, not a question".to_string(),
                    None,
                );
            }
            let has_finite = sentence
                .tokens
                .iter()
                .any(|t| self.lex.is_finite_verb_form(&t.surface));
            if !has_finite {
                self.emit(
                    sentence.span,
                    "a symptom must be a full sentence with a finite verb".to_string(),
                    None,
                );
            }
        }
    }

    /// Finite form of "werden" followed by a known participle or a
    /// ge…t/ge…en token. Never fires without the finite werden form.
    fn no_passive(&mut self, sentences: &[Sentence]) {
        let werden = match self.lex.verb("werden") {
            Some(v) => v,
            None => return,
        };
        for sentence in sentences {
            let aux = sentence
                .tokens
                .iter()
                .position(|t| werden.finite_forms.contains(&t.surface.to_lowercase()));
            let aux = match aux {
                Some(i) => i,
                None => continue,
            };
            let participle = sentence.tokens[aux + 1..].iter().find(|t| {
                self.lex.is_participle(&t.surface) || looks_like_participle(&t.surface)
            });
            if let Some(participle) = participle {
                let span = self
                    .doc
                    .span_at(sentence.tokens[aux].span.start, participle.span.end);
                self.emit(
                    span,
                    format!(
                        "passive construction {:?} … {:?}; prefer active voice",
                        sentence.tokens[aux].surface, participle.surface
                    ),
                    None,
                );
            }
        }
    }

    fn compound_length(&mut self, sentences: &[Sentence]) {
        for sentence in sentences {
            for token in &sentence.tokens {
                if !self.is_noun_candidate(&token.surface) {
                    continue;
                }
                match self.lex.lexical_morpheme_count(&token.surface) {
                    Ok(count) if count > 4 => {
                        let severity = self.severity;
                        self.emit_with_severity(
                            severity,
                            token.span,
                            format!(
                                "compound {:?} has {count} lexical morphemes (more than 4)",
                                token.surface
                            ),
                            None,
                        );
                    }
                    Ok(4) => {
                        let severity = self.severity.demoted();
                        self.emit_with_severity(
                            severity,
                            token.span,
                            format!(
                                "compound {:?} has 4 lexical morphemes (3 are preferred)",
                                token.surface
                            ),
                            None,
                        );
                    }
                    _ => {}
                }
            }
        }
    }

    /// Capitalized mid-sentence words that the lexicon cannot segment.
    /// Sentence-initial tokens are skipped: without part-of-speech tagging
    /// they are indistinguishable from capitalized non-nouns.
    fn analysis_skipped(&mut self, sentences: &[Sentence]) {
        for sentence in sentences {
            for token in sentence.tokens.iter().skip(1) {
                if !self.is_noun_candidate(&token.surface) {
                    continue;
                }
                if self.lex.lexical_morpheme_count(&token.surface).is_err() {
                    self.emit(
                        token.span,
                        format!(
                            "{:?} could not be analyzed against the morpheme lexicon",
                            token.surface
                        ),
                        None,
                    );
                }
            }
        }
    }

    /// Noun-shaped token: capitalized, purely alphabetic, not an acronym,
    /// not the formal pronoun "Sie", and not a known verb or question word.
    fn is_noun_candidate(&self, surface: &str) -> bool {
        let mut chars = surface.chars();
        let first_upper = chars.next().is_some_and(char::is_uppercase);
        first_upper
            && surface.chars().count() >= 2
            && surface.chars().all(char::is_alphabetic)
            && !surface.chars().all(char::is_uppercase)
            && surface != "Sie"
            && !self.lex.is_finite_verb_form(surface)
            && !self.lex.is_infinitive(surface)
            && !self.lex.is_question_word(surface)
    }

    fn term_deprecated(&mut self, sentences: &[Sentence]) {
        for sentence in sentences {
            let surfaces: Vec<&str> = sentence.tokens.iter().map(|t| t.surface.as_str()).collect();
            for occurrence in self.tb.find_occurrences(&surfaces) {
                if occurrence.status != TermStatus::Deprecated {
                    continue;
                }
                let token = &sentence.tokens[occurrence.token_index];
                let preferred = self
                    .tb
                    .preferred_term(&occurrence.concept_id, "de")
                    .map(|t| t.surface.clone());
                let message = match &preferred {
                    Some(p) => format!(
                        "{:?} is deprecated; the preferred term is {p:?}",
                        token.surface
                    ),
                    None => format!("{:?} is deprecated", token.surface),
                };
                self.emit(token.span, message, preferred);
            }
        }
    }

    fn term_ambiguous(&mut self, sentences: &[Sentence]) {
        for sentence in sentences {
            let surfaces: Vec<&str> = sentence.tokens.iter().map(|t| t.surface.as_str()).collect();
            let occurrences = self.tb.find_occurrences(&surfaces);
            for (index, token) in sentence.tokens.iter().enumerate() {
                let concepts: BTreeSet<&str> = occurrences
                    .iter()
                    .filter(|o| o.token_index == index)
                    .map(|o| o.concept_id.as_str())
                    .collect();
                if concepts.len() >= 2 {
                    let list = concepts.into_iter().collect::<Vec<_>>().join(", ");
                    self.emit(
                        token.span,
                        format!("{:?} is ambiguous between concepts: {list}", token.surface),
                        None,
                    );
                }
            }
        }
    }

    fn max_tokens(&mut self, sentences: &[Sentence]) {
        for sentence in sentences {
            if sentence.tokens.len() > self.cfg.max_tokens {
                self.emit(
                    sentence.span,
                    format!(
                        "sentence has {} tokens (more than {})",
                        sentence.tokens.len(),
                        self.cfg.max_tokens
                    ),
                    None,
                );
            }
        }
    }
}

/// ge…t / ge…en with at least two characters in between; catches regular
/// participles not listed in the verb table. Short function words like
/// "geht" or "gegen" stay below the length floor.
fn looks_like_participle(surface: &str) -> bool {
    let folded = surface.to_lowercase();
    let Some(core) = folded.strip_prefix("ge") else {
        return false;
    };
    let stem = core.strip_suffix("en").or_else(|| core.strip_suffix('t'));
    stem.is_some_and(|s| s.chars().count() >= 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morph::Lexicon;
    use crate::termbase::Termbase;

    const LEX: &str = "\
M\twalze\troot\tobject\t1
M\tmaschine\troot\tnone\t0
M\tschaden\troot\tnone\t0
M\twerk\troot\tnone\t0
M\tzeug\troot\tnone\t0
M\tkraft\troot\tnone\t0
M\tstoff\troot\tnone\t0
M\ttank\troot\tnone\t0
M\tmast\troot\tnone\t0
M\tarm\troot\tnone\t0
M\ttaste\troot\tnone\t0
M\tchrom\troot\tmaterial\t0
M\tfeucht\troot\tfunction\t0
M\treib\troot\tfunction\t0
M\tschutz\troot\tnone\t0
M\twend\troot\tfunction\t0
M\tung\tderivational-suffix\tnone\t0
M\tn\tlinking-element\tnone\t0
M\ts\tlinking-element\tnone\t0
M\ten\tlinking-element\tnone\t0
M\te\tlinking-element\tnone\t0
V\tsein\tist,sind,war,waren\tgewesen
V\thaben\that,habe,haben,hatte,hatten\tgehabt
V\tführen\tführt,führen,führte\tgeführt
V\tfahren\tfährt,fahre,fahren,fuhr\tgefahren
V\twerden\twird,werden,wurde,wurden,wirst,werdet\tgeworden
V\tdrücken\tdrückt,drücke,drücken,drückte\tgedrückt
V\treinigen\treinigt,reinige,reinigen,reinigte\tgereinigt
Q\twer
Q\twie
Q\twas
Q\twarum
Q\twann
Q\two
Q\twelche
";

    const TB: &str = "\
C\tc-walze-feucht-reib\tpart\tRoller
C\tc-wenden\tprocess\tTurning
C\tc-wende-einheit\tdevice\tTurning unit
T\tc-walze-feucht-reib\tde\tFeuchtreibwalze\tpreferred\tfunction
T\tc-walze-feucht-reib\tde\tChromwalze\tdeprecated\tmaterial
T\tc-wenden\tde\tWenden\tpreferred\tnone
T\tc-wenden\tde\tWendung\tadmitted\tnone
T\tc-wende-einheit\tde\tWendung\tpreferred\tnone
";

    fn fixtures() -> (Lexicon, Termbase, RuleConfig) {
        (
            Lexicon::parse(LEX).unwrap(),
            Termbase::parse(TB).unwrap(),
            RuleConfig::default(),
        )
    }

    fn check(xml: &str) -> Vec<Diagnostic> {
        let (lex, tb, cfg) = fixtures();
        let doc = Document::parse(xml).unwrap();
        check_document(&doc, &lex, &tb, &cfg, "test.xml")
    }

    fn rule_ids(diags: &[Diagnostic]) -> Vec<&'static str> {
        diags.iter().map(|d| d.rule.as_str()).collect()
    }

    #[test]
    fn safety_cause_positive_example_is_clean() {
        let diags =
            check("<safetyadvice><cause>Maschinenschaden durch liegengebliebenes Werkzeug!</cause></safetyadvice>");
        assert_eq!(diags, Vec::new());
    }

    #[test]
    fn safety_cause_negative_example_flags_ellipsis_and_exclaim() {
        let diags =
            check("<safetyadvice><cause>Liegengebliebenes Werkzeug führt zu Maschinenschaden.</cause></safetyadvice>");
        assert_eq!(
            rule_ids(&diags),
            ["CAUSE-SAFETY-ELLIPSIS", "CAUSE-SAFETY-EXCLAIM"]
        );
    }

    #[test]
    fn error_cause_negative_example_needs_finite_verb() {
        let diags =
            check("<errordescription><cause>Kein Kraftstoff im Tank.</cause></errordescription>");
        assert_eq!(rule_ids(&diags), ["CAUSE-ERROR-SENTENCE"]);
    }

    #[test]
    fn error_cause_positive_example_is_clean() {
        let diags = check(
            "<errordescription><cause>Kein Kraftstoff ist im Tank.</cause></errordescription>",
        );
        assert_eq!(diags, Vec::new());
    }

    #[test]
    fn symptom_statement_is_clean() {
        let diags = check("<symptom>Mastarm fährt nicht richtig hoch.</symptom>");
        assert_eq!(diags, Vec::new());
    }

    #[test]
    fn symptom_question_is_flagged() {
        let diags = check("<symptom>Warum fährt der Mastarm nicht hoch?</symptom>");
        assert_eq!(rule_ids(&diags), ["SYMPTOM-NO-QUESTION"]);
    }

    #[test]
    fn step_formal_imperative_is_clean_and_infinitive_phrase_is_not() {
        let good = check("<action><step>Drücken Sie die Taste.</step></action>");
        assert_eq!(good, Vec::new());
        let bad = check("<action><step>Die Taste drücken.</step></action>");
        assert_eq!(rule_ids(&bad), ["STEP-IMPERATIVE"]);
    }

    #[test]
    fn passive_is_flagged_in_any_context() {
        let diags = check("<descriptive>Die Walze wird gereinigt.</descriptive>");
        assert_eq!(rule_ids(&diags), ["NO-PASSIVE"]);
        assert_eq!(diags[0].severity, Severity::Warning);
        let text = "Die Walze wird gereinigt.";
        let snippet = "wird gereinigt";
        let start = diags[0].span.start;
        let end = diags[0].span.end;
        let source = format!("<descriptive>{text}</descriptive>");
        assert_eq!(&source[start..end], snippet);
    }

    #[test]
    fn passive_needs_the_finite_werden_form() {
        // Participle present, werden absent: the precision guard holds.
        let diags = check("<descriptive>Die Walze ist gereinigt.</descriptive>");
        assert_eq!(diags, Vec::new());
    }

    #[test]
    fn short_ge_words_are_not_participles() {
        assert!(!looks_like_participle("geht"));
        assert!(!looks_like_participle("gegen"));
        assert!(looks_like_participle("gereinigt"));
        assert!(looks_like_participle("geblieben"));
    }

    #[test]
    fn compound_length_boundaries() {
        // 3 roots: fine. 4 roots: demoted finding. 5 roots: violation.
        let three = check("<d>Die Feuchtreibwalze dreht.</d>");
        assert_eq!(three, Vec::new());
        let four = check("<d>Der Maschinenwerkzeugschutz fehlt gut.</d>");
        assert_eq!(rule_ids(&four), ["COMPOUND-LENGTH"]);
        assert_eq!(four[0].severity, Severity::Warning);
        let five = check("<d>Der Werkzeugschutzkrafttank fehlt gut.</d>");
        assert_eq!(rule_ids(&five), ["COMPOUND-LENGTH"]);
        assert_eq!(five[0].severity, Severity::Error);
    }

    #[test]
    fn unknown_mid_sentence_noun_yields_analysis_skipped() {
        let diags = check("<d>Der Zylinderkopf fehlt.</d>");
        assert_eq!(rule_ids(&diags), ["ANALYSIS-SKIPPED"]);
        assert_eq!(diags[0].severity, Severity::Info);
        // Sentence-initial capitalized words are exempt.
        let initial = check("<d>Zylinderkopf fehlt gut.</d>");
        assert_eq!(initial, Vec::new());
    }

    #[test]
    fn deprecated_term_comes_with_suggestion() {
        let diags = check("<d>Die Chromwalze dreht.</d>");
        assert_eq!(rule_ids(&diags), ["TERM-DEPRECATED"]);
        assert_eq!(diags[0].suggestion.as_deref(), Some("Feuchtreibwalze"));
    }

    #[test]
    fn ambiguous_term_lists_all_concepts() {
        let diags = check("<d>Die Wendung startet.</d>");
        assert_eq!(rule_ids(&diags), ["TERM-AMBIGUOUS"]);
        assert!(diags[0].message.contains("c-wende-einheit"));
        assert!(diags[0].message.contains("c-wenden"));
        assert_eq!(diags[0].severity, Severity::Info);
    }

    #[test]
    fn max_tokens_applies_to_cause_contexts() {
        let long = "Der Tank hat viel zu wenig Kraftstoff und die Walze dreht nicht mehr richtig gut.";
        let diags = check(&format!(
            "<errordescription><cause>{long}</cause></errordescription>"
        ));
        assert!(rule_ids(&diags).contains(&"MAX-TOKENS"));
        let elsewhere = check(&format!("<descriptive>{long}</descriptive>"));
        assert!(!rule_ids(&elsewhere).contains(&"MAX-TOKENS"));
    }

    #[test]
    fn disabled_rule_produces_nothing() {
        let (lex, tb, mut cfg) = fixtures();
        cfg.set(
            RuleId::NoPassive,
            RuleSetting {
                selector: Selector::parse("*"),
                severity: Severity::Off,
            },
        );
        let doc = Document::parse("<d>Die Walze wird gereinigt.</d>").unwrap();
        let diags = check_document(&doc, &lex, &tb, &cfg, "test.xml");
        assert_eq!(diags, Vec::new());
    }

    #[test]
    fn severity_override_changes_only_severity() {
        let (lex, tb, cfg) = fixtures();
        let doc = Document::parse("<d>Die Walze wird gereinigt.</d>").unwrap();
        let before = check_document(&doc, &lex, &tb, &cfg, "t.xml");

        let mut stricter = cfg.clone();
        stricter.set(
            RuleId::NoPassive,
            RuleSetting {
                selector: Selector::parse("*"),
                severity: Severity::Error,
            },
        );
        let after = check_document(&doc, &lex, &tb, &stricter, "t.xml");
        assert_eq!(before.len(), after.len());
        for (a, b) in before.iter().zip(&after) {
            assert_eq!(a.span, b.span);
            assert_eq!(a.rule, b.rule);
        }
        assert_eq!(before[0].severity, Severity::Warning);
        assert_eq!(after[0].severity, Severity::Error);
    }

    #[test]
    fn config_parsing_defaults_offs_and_unknowns() {
        let empty = RuleConfig::parse("").unwrap();
        assert_eq!(empty, RuleConfig::default());

        let off = RuleConfig::parse("NO-PASSIVE\t*\toff").unwrap();
        assert_eq!(off.setting(RuleId::NoPassive).severity, Severity::Off);

        assert!(matches!(
            RuleConfig::parse("BOGUS\t*\terror"),
            Err(RuleConfigError::UnknownRule { line: 1, .. })
        ));
        assert!(matches!(
            RuleConfig::parse("NO-PASSIVE\t*\tloud"),
            Err(RuleConfigError::Malformed { line: 1, .. })
        ));
    }

    #[test]
    fn diagnostics_are_sorted_and_stable() {
        let xml = "<safetyadvice><cause>Liegengebliebenes Werkzeug führt zu Maschinenschaden.</cause></safetyadvice>";
        let first = check(xml);
        let second = check(xml);
        assert_eq!(first, second);
        let positions: Vec<(usize, usize)> =
            first.iter().map(|d| (d.span.line, d.span.column)).collect();
        let mut sorted = positions.clone();
        sorted.sort();
        assert_eq!(positions, sorted);
    }

    #[test]
    fn diagnostic_span_contains_offending_token() {
        let xml = "<safetyadvice><cause>Liegengebliebenes Werkzeug führt zu Maschinenschaden.</cause></safetyadvice>";
        let diags = check(xml);
        let ellipsis = diags
            .iter()
            .find(|d| d.rule == RuleId::CauseSafetyEllipsis)
            .unwrap();
        assert_eq!(&xml[ellipsis.span.start..ellipsis.span.end], "führt");
    }
}
