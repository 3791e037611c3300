//! Concept-oriented terminology store.
//!
//! The concept is the primary record; terms (synonyms, languages, statuses)
//! attach to it. The store supports rule-based evaluation of preferred
//! terms, ambiguity detection, and occurrence finding over token sequences.
//! Semantic classes are supplied by the terminologist and never inferred.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::morph::{fold, Feature, FormationPattern, Lexicon};

const LANGUAGES: [&str; 7] = ["de", "en", "fr", "nl", "ru", "sv", "es"];

/// Suffixes stripped for inflection-tolerant lookup.
const STRIP_SUFFIXES: [&str; 5] = ["en", "es", "n", "s", "e"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SemanticClass {
    Process,
    Device,
    Part,
    Other,
}

impl SemanticClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            SemanticClass::Process => "process",
            SemanticClass::Device => "device",
            SemanticClass::Part => "part",
            SemanticClass::Other => "other",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "process" => Some(SemanticClass::Process),
            "device" => Some(SemanticClass::Device),
            "part" => Some(SemanticClass::Part),
            "other" => Some(SemanticClass::Other),
            _ => None,
        }
    }
}

impl fmt::Display for SemanticClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationKind {
    /// Target is the superordinate concept.
    Hypernym,
    /// Target is a subordinate concept.
    Hyponym,
    /// This concept is a part of the target.
    PartOf,
}

impl RelationKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            RelationKind::Hypernym => "hypernym",
            RelationKind::Hyponym => "hyponym",
            RelationKind::PartOf => "part-of",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "hypernym" => Some(RelationKind::Hypernym),
            "hyponym" => Some(RelationKind::Hyponym),
            "part-of" => Some(RelationKind::PartOf),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TermStatus {
    Preferred,
    Admitted,
    Deprecated,
}

impl TermStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            TermStatus::Preferred => "preferred",
            TermStatus::Admitted => "admitted",
            TermStatus::Deprecated => "deprecated",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "preferred" => Some(TermStatus::Preferred),
            "admitted" => Some(TermStatus::Admitted),
            "deprecated" => Some(TermStatus::Deprecated),
            _ => None,
        }
    }
}

impl fmt::Display for TermStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Concept {
    pub id: String,
    pub definition: String,
    pub semantic_class: SemanticClass,
    pub relations: Vec<(RelationKind, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermEntry {
    pub concept_id: String,
    /// Lowercase two-letter code (de, en, fr, nl, ru, sv, es).
    pub language: String,
    pub surface: String,
    pub status: TermStatus,
    /// Feature category of the distinguishing morpheme, if recorded.
    pub feature_focus: Option<Feature>,
}

/// A term occurrence in a token sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Occurrence {
    pub token_index: usize,
    pub concept_id: String,
    pub status: TermStatus,
}

#[derive(Debug, Error)]
pub enum TermbaseError {
    #[error("failed to access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("duplicate concept id {0:?}")]
    DuplicateConcept(String),
    #[error("invalid term entry: {0}")]
    InvalidTerm(String),
    #[error("two preferred terms for concept {concept_id:?}, language {language:?}")]
    DuplicatePreferred {
        concept_id: String,
        language: String,
    },
    #[error("concept {concept_id:?} has a {kind} relation to missing concept {target:?}")]
    DanglingRelation {
        concept_id: String,
        kind: &'static str,
        target: String,
    },
    #[error("term {surface:?} references missing concept {concept_id:?}")]
    TermWithoutConcept {
        concept_id: String,
        surface: String,
    },
    #[error("no candidates to evaluate")]
    NoCandidates,
    #[error("unknown concept id {0:?}")]
    UnknownConcept(String),
}

/// Soft integrity findings, reported rather than rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntegrityFinding {
    MissingGermanPreferred { concept_id: String },
    DuplicatePreferred { concept_id: String, language: String },
    DanglingRelation { concept_id: String, target: String },
    TermWithoutConcept { concept_id: String, surface: String },
}

impl fmt::Display for IntegrityFinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntegrityFinding::MissingGermanPreferred { concept_id } => {
                write!(f, "concept {concept_id:?} has no preferred German term")
            }
            IntegrityFinding::DuplicatePreferred {
                concept_id,
                language,
            } => write!(
                f,
                "concept {concept_id:?} has more than one preferred term for {language:?}"
            ),
            IntegrityFinding::DanglingRelation { concept_id, target } => {
                write!(f, "concept {concept_id:?} relates to missing {target:?}")
            }
            IntegrityFinding::TermWithoutConcept {
                concept_id,
                surface,
            } => write!(f, "term {surface:?} references missing {concept_id:?}"),
        }
    }
}

/// Concept-oriented termbase. Immutable once loaded; mutation happens via
/// load/save cycles, so shared read access is safe.
#[derive(Debug, Default)]
pub struct Termbase {
    concepts: BTreeMap<String, Concept>,
    /// Kept sorted by (concept_id, language, surface, status).
    terms: Vec<TermEntry>,
    index: HashMap<String, BTreeSet<(String, TermStatus)>>,
    /// Folded surface to the display surface first seen in canonical order.
    display: HashMap<String, String>,
}

impl PartialEq for Termbase {
    fn eq(&self, other: &Self) -> bool {
        self.concepts == other.concepts && self.terms == other.terms
    }
}

impl Termbase {
    pub fn new() -> Termbase {
        Termbase::default()
    }

    /// Loads and validates a termbase from the line-based TSV format.
    ///
    /// Records: `C<TAB>id<TAB>class<TAB>definition`,
    /// `R<TAB>id<TAB>kind<TAB>target-id`,
    /// `T<TAB>concept-id<TAB>lang<TAB>surface<TAB>status<TAB>feature?`.
    /// Lines starting with `#` are comments.
    pub fn load(path: impl AsRef<Path>) -> Result<Termbase, TermbaseError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| TermbaseError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Parses and validates termbase records; see [`Termbase::load`].
    pub fn parse(text: &str) -> Result<Termbase, TermbaseError> {
        let mut tb = Termbase::new();

        // First pass: concepts, so relations and terms can arrive in any order.
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = raw.split('\t').collect();
            if fields[0] != "C" {
                continue;
            }
            if fields.len() != 4 {
                return Err(TermbaseError::Malformed {
                    line,
                    message: format!("concept record needs 4 fields, got {}", fields.len()),
                });
            }
            let semantic_class = SemanticClass::parse(fields[2]).ok_or_else(|| {
                TermbaseError::Malformed {
                    line,
                    message: format!("unknown semantic class {:?}", fields[2]),
                }
            })?;
            if fields[1].is_empty() {
                return Err(TermbaseError::Malformed {
                    line,
                    message: "empty concept id".into(),
                });
            }
            tb.insert_concept(Concept {
                id: fields[1].to_string(),
                definition: fields[3].to_string(),
                semantic_class,
                relations: Vec::new(),
            })?;
        }

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = raw.split('\t').collect();
            let malformed =
                |message: String| TermbaseError::Malformed { line, message };
            match fields[0] {
                "C" => {}
                "R" => {
                    if fields.len() != 4 {
                        return Err(malformed(format!(
                            "relation record needs 4 fields, got {}",
                            fields.len()
                        )));
                    }
                    let kind = RelationKind::parse(fields[2])
                        .ok_or_else(|| malformed(format!("unknown relation kind {:?}", fields[2])))?;
                    let concept = tb
                        .concepts
                        .get_mut(fields[1])
                        .ok_or_else(|| malformed(format!("unknown concept id {:?}", fields[1])))?;
                    concept.relations.push((kind, fields[3].to_string()));
                }
                "T" => {
                    if fields.len() != 5 && fields.len() != 6 {
                        return Err(malformed(format!(
                            "term record needs 5 or 6 fields, got {}",
                            fields.len()
                        )));
                    }
                    let status = TermStatus::parse(fields[4])
                        .ok_or_else(|| malformed(format!("unknown term status {:?}", fields[4])))?;
                    let feature_focus = match fields.get(5).copied().unwrap_or("none") {
                        "none" | "" => None,
                        other => Some(Feature::parse(other).ok_or_else(|| {
                            malformed(format!("unknown feature {other:?}"))
                        })?),
                    };
                    tb.insert_term(TermEntry {
                        concept_id: fields[1].to_string(),
                        language: fields[2].to_string(),
                        surface: fields[3].to_string(),
                        status,
                        feature_focus,
                    })?;
                }
                other => {
                    return Err(malformed(format!("unknown record tag {other:?}")));
                }
            }
        }

        tb.validate()?;
        Ok(tb)
    }

    /// Writes the termbase in canonical order; `load(save(tb))` reproduces
    /// the same structure.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), TermbaseError> {
        let path = path.as_ref();
        std::fs::write(path, self.to_text()).map_err(|source| TermbaseError::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for concept in self.concepts.values() {
            out.push_str(&format!(
                "C\t{}\t{}\t{}\n",
                concept.id, concept.semantic_class, concept.definition
            ));
        }
        for concept in self.concepts.values() {
            for (kind, target) in &concept.relations {
                out.push_str(&format!("R\t{}\t{}\t{}\n", concept.id, kind.as_str(), target));
            }
        }
        for term in &self.terms {
            let feature = term
                .feature_focus
                .map(|f| f.as_str())
                .unwrap_or("none");
            out.push_str(&format!(
                "T\t{}\t{}\t{}\t{}\t{}\n",
                term.concept_id, term.language, term.surface, term.status, feature
            ));
        }
        out
    }

    pub fn insert_concept(&mut self, concept: Concept) -> Result<(), TermbaseError> {
        if self.concepts.contains_key(&concept.id) {
            return Err(TermbaseError::DuplicateConcept(concept.id));
        }
        self.concepts.insert(concept.id.clone(), concept);
        Ok(())
    }

    /// Inserts a term, keeping canonical order. Referential integrity is
    /// checked by [`Termbase::validate`], not here, so that inconsistent
    /// states can be constructed and inspected via
    /// [`Termbase::integrity_findings`].
    pub fn insert_term(&mut self, term: TermEntry) -> Result<(), TermbaseError> {
        if term.surface.is_empty() || term.surface.contains('\t') {
            return Err(TermbaseError::InvalidTerm(format!(
                "bad surface {:?}",
                term.surface
            )));
        }
        if !LANGUAGES.contains(&term.language.as_str()) {
            return Err(TermbaseError::InvalidTerm(format!(
                "unsupported language code {:?}",
                term.language
            )));
        }
        let key = |t: &TermEntry| {
            (
                t.concept_id.clone(),
                t.language.clone(),
                t.surface.clone(),
                t.status,
            )
        };
        let pos = self
            .terms
            .binary_search_by_key(&key(&term), key)
            .unwrap_or_else(|p| p);
        self.terms.insert(pos, term);
        self.rebuild_index();
        Ok(())
    }

    fn rebuild_index(&mut self) {
        self.index.clear();
        self.display.clear();
        for term in &self.terms {
            let folded = fold(&term.surface);
            self.index
                .entry(folded.clone())
                .or_default()
                .insert((term.concept_id.clone(), term.status));
            self.display.entry(folded).or_insert_with(|| term.surface.clone());
        }
    }

    /// Strict integrity: at most one preferred term per (concept, language),
    /// no dangling relations, no terms for unknown concepts.
    pub fn validate(&self) -> Result<(), TermbaseError> {
        let mut preferred: BTreeSet<(&str, &str)> = BTreeSet::new();
        for term in &self.terms {
            if !self.concepts.contains_key(&term.concept_id) {
                return Err(TermbaseError::TermWithoutConcept {
                    concept_id: term.concept_id.clone(),
                    surface: term.surface.clone(),
                });
            }
            if term.status == TermStatus::Preferred
                && !preferred.insert((&term.concept_id, &term.language))
            {
                return Err(TermbaseError::DuplicatePreferred {
                    concept_id: term.concept_id.clone(),
                    language: term.language.clone(),
                });
            }
        }
        for concept in self.concepts.values() {
            for (kind, target) in &concept.relations {
                if !self.concepts.contains_key(target) {
                    return Err(TermbaseError::DanglingRelation {
                        concept_id: concept.id.clone(),
                        kind: kind.as_str(),
                        target: target.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Reports soft integrity findings: concepts without a preferred German
    /// term, duplicate preferred terms, dangling relations, orphaned terms.
    pub fn integrity_findings(&self) -> Vec<IntegrityFinding> {
        let mut findings = Vec::new();
        for concept in self.concepts.values() {
            let has_german_preferred = self.terms.iter().any(|t| {
                t.concept_id == concept.id
                    && t.language == "de"
                    && t.status == TermStatus::Preferred
            });
            if !has_german_preferred {
                findings.push(IntegrityFinding::MissingGermanPreferred {
                    concept_id: concept.id.clone(),
                });
            }
            for (_, target) in &concept.relations {
                if !self.concepts.contains_key(target) {
                    findings.push(IntegrityFinding::DanglingRelation {
                        concept_id: concept.id.clone(),
                        target: target.clone(),
                    });
                }
            }
        }
        let mut preferred_seen: BTreeSet<(String, String)> = BTreeSet::new();
        let mut preferred_dup: BTreeSet<(String, String)> = BTreeSet::new();
        for term in &self.terms {
            if !self.concepts.contains_key(&term.concept_id) {
                findings.push(IntegrityFinding::TermWithoutConcept {
                    concept_id: term.concept_id.clone(),
                    surface: term.surface.clone(),
                });
            }
            if term.status == TermStatus::Preferred {
                let key = (term.concept_id.clone(), term.language.clone());
                if !preferred_seen.insert(key.clone()) {
                    preferred_dup.insert(key);
                }
            }
        }
        for (concept_id, language) in preferred_dup {
            findings.push(IntegrityFinding::DuplicatePreferred {
                concept_id,
                language,
            });
        }
        findings
    }

    pub fn concepts(&self) -> impl Iterator<Item = &Concept> {
        self.concepts.values()
    }

    pub fn concept(&self, id: &str) -> Option<&Concept> {
        self.concepts.get(id)
    }

    pub fn terms(&self) -> &[TermEntry] {
        &self.terms
    }

    pub fn terms_of(&self, concept_id: &str, language: &str) -> Vec<&TermEntry> {
        self.terms
            .iter()
            .filter(|t| t.concept_id == concept_id && t.language == language)
            .collect()
    }

    pub fn preferred_term(&self, concept_id: &str, language: &str) -> Option<&TermEntry> {
        self.terms.iter().find(|t| {
            t.concept_id == concept_id
                && t.language == language
                && t.status == TermStatus::Preferred
        })
    }

    /// Case-folded exact match plus inflection-tolerant match via suffix
    /// stripping over {-n, -en, -s, -es, -e}.
    pub fn lookup(&self, surface: &str) -> BTreeSet<(String, TermStatus)> {
        let folded = fold(surface);
        let mut hits = BTreeSet::new();
        if let Some(set) = self.index.get(&folded) {
            hits.extend(set.iter().cloned());
        }
        for suffix in STRIP_SUFFIXES {
            if let Some(stem) = folded.strip_suffix(suffix) {
                if stem.chars().count() >= 2 {
                    if let Some(set) = self.index.get(stem) {
                        hits.extend(set.iter().cloned());
                    }
                }
            }
        }
        hits
    }

    /// Surfaces indexed under two or more distinct concepts, sorted
    /// lexicographically by folded surface.
    pub fn ambiguous_terms(&self) -> Vec<(String, BTreeSet<String>)> {
        let mut folded_keys: Vec<&String> = self.index.keys().collect();
        folded_keys.sort();
        let mut out = Vec::new();
        for key in folded_keys {
            let concepts: BTreeSet<String> = self.index[key]
                .iter()
                .map(|(concept_id, _)| concept_id.clone())
                .collect();
            if concepts.len() >= 2 {
                let display = self.display.get(key).cloned().unwrap_or_else(|| key.clone());
                out.push((display, concepts));
            }
        }
        out
    }

    /// Single-token matching with inflection tolerance as in
    /// [`Termbase::lookup`]; multi-token terms are not matched.
    pub fn find_occurrences<T: AsRef<str>>(&self, tokens: &[T]) -> Vec<Occurrence> {
        let mut out = Vec::new();
        for (token_index, token) in tokens.iter().enumerate() {
            for (concept_id, status) in self.lookup(token.as_ref()) {
                out.push(Occurrence {
                    token_index,
                    concept_id,
                    status,
                });
            }
        }
        out
    }
}

/// Per-candidate evaluation result of [`evaluate_preferred_term`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluatedTerm {
    pub surface: String,
    pub feature_focus: Option<Feature>,
    pub pattern: Option<FormationPattern>,
    pub lexical_count: Option<usize>,
    pub findings: Vec<TermFinding>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermFinding {
    /// Formation pattern does not indicate the concept's semantic class.
    PatternMismatch {
        class: SemanticClass,
        found: FormationPattern,
    },
    /// More than 4 lexical morphemes; disqualifying.
    MorphemeCountExceeded { count: usize },
    /// Exactly 4 lexical morphemes; 3 or fewer are preferred.
    MorphemeCountAtLimit { count: usize },
    Unsegmentable,
}

impl TermFinding {
    pub fn rule_id(&self) -> &'static str {
        match self {
            TermFinding::PatternMismatch { class, .. } => match class {
                SemanticClass::Process => "TERM-USE-CONVERSION",
                SemanticClass::Device => "TERM-USE-NOMINALIZATION",
                SemanticClass::Part => "TERM-USE-HYPERNYM",
                SemanticClass::Other => "TERM-PATTERN",
            },
            TermFinding::MorphemeCountExceeded { .. } => "TERM-MORPHEME-LIMIT",
            TermFinding::MorphemeCountAtLimit { .. } => "TERM-MORPHEME-LIMIT",
            TermFinding::Unsegmentable => "TERM-UNSEGMENTABLE",
        }
    }
}

impl fmt::Display for TermFinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermFinding::PatternMismatch { class, found } => {
                let wanted = match class {
                    SemanticClass::Process => "conversion",
                    SemanticClass::Device => "-ung or -er/-or nominalization",
                    SemanticClass::Part => "a hypernym compound",
                    SemanticClass::Other => "another pattern",
                };
                write!(f, "a {class} term should use {wanted}, found {found}")
            }
            TermFinding::MorphemeCountExceeded { count } => {
                write!(f, "{count} lexical morphemes (more than 4)")
            }
            TermFinding::MorphemeCountAtLimit { count } => {
                write!(f, "{count} lexical morphemes (3 are preferred)")
            }
            TermFinding::Unsegmentable => {
                f.write_str("cannot be segmented against the morpheme lexicon")
            }
        }
    }
}

/// The semantic class a formation pattern positively indicates, if any.
/// Simplex words and unmarked formations carry no signal.
fn indicated_class(pattern: FormationPattern) -> Option<SemanticClass> {
    match pattern {
        FormationPattern::Conversion => Some(SemanticClass::Process),
        FormationPattern::UngNominalization | FormationPattern::ErOrNominalization => {
            Some(SemanticClass::Device)
        }
        FormationPattern::HypernymCompound => Some(SemanticClass::Part),
        FormationPattern::Simplex | FormationPattern::Other => None,
    }
}

/// 0 = pattern indicates the class, 1 = no signal, 2 = indicates a
/// different class (a violation).
fn pattern_score(class: SemanticClass, pattern: FormationPattern) -> u8 {
    if class == SemanticClass::Other {
        return 0;
    }
    match indicated_class(pattern) {
        Some(indicated) if indicated == class => 0,
        None => 1,
        Some(_) => 2,
    }
}

/// Ranks synonym candidates for a concept of the given semantic class.
///
/// Ordered criteria: (1) the word-formation pattern indicates the class,
/// (2) at most 3 lexical morphemes beat exactly 4, more than 4 disqualify,
/// (3) feature rank (function best, temporal worst), then lexicographic
/// surface order. The winner is invariant under permutation of the input.
pub fn evaluate_preferred_term(
    candidates: &[(&str, Option<Feature>)],
    class: SemanticClass,
    lex: &Lexicon,
) -> Result<Vec<EvaluatedTerm>, TermbaseError> {
    if candidates.is_empty() {
        return Err(TermbaseError::NoCandidates);
    }
    let mut evaluated: Vec<EvaluatedTerm> = candidates
        .iter()
        .map(|(surface, feature_focus)| {
            let mut findings = Vec::new();
            let (pattern, lexical_count) = match (
                lex.formation_pattern(surface),
                lex.lexical_morpheme_count(surface),
            ) {
                (Ok(p), Ok(c)) => (Some(p), Some(c)),
                _ => (None, None),
            };
            match pattern {
                Some(p) if pattern_score(class, p) == 2 => {
                    findings.push(TermFinding::PatternMismatch { class, found: p });
                }
                Some(_) => {}
                None => findings.push(TermFinding::Unsegmentable),
            }
            match lexical_count {
                Some(c) if c > 4 => findings.push(TermFinding::MorphemeCountExceeded { count: c }),
                Some(4) => findings.push(TermFinding::MorphemeCountAtLimit { count: 4 }),
                _ => {}
            }
            EvaluatedTerm {
                surface: surface.to_string(),
                feature_focus: *feature_focus,
                pattern,
                lexical_count,
                findings,
            }
        })
        .collect();

    evaluated.sort_by_key(|e| {
        let disqualified = match e.lexical_count {
            None => 2u8,
            Some(c) if c > 4 => 1,
            Some(_) => 0,
        };
        let pattern_penalty = match e.pattern {
            Some(p) => pattern_score(class, p),
            None => 2,
        };
        let count_penalty = match e.lexical_count {
            Some(c) if c <= 3 => 0u8,
            Some(4) => 1,
            _ => 2,
        };
        let feature_rank = e.feature_focus.map(|f| f.rank()).unwrap_or(7);
        (
            disqualified,
            pattern_penalty,
            count_penalty,
            feature_rank,
            e.surface.clone(),
        )
    });
    Ok(evaluated)
}
