//! Controlled-language checking for German technical documentation.
//!
//! The library has five parts: a morpheme/verb lexicon with compound
//! segmentation ([`morph`]), a concept-oriented termbase ([`termbase`]), a
//! span-preserving XML document model ([`doc`]), an element-context rule
//! engine ([`rules`]), and corpus reuse statistics ([`reuse`]).
//!
//! Everything is immutable after loading and safe to share across threads.

pub mod doc;
pub mod morph;
pub mod reuse;
pub mod rules;
pub mod termbase;

#[cfg(feature = "test-oracle")]
pub mod oracle;

pub use doc::{Document, Sentence, Span, TextBlock, Token};
pub use morph::{FormationPattern, Lexicon, Segmentation};
pub use reuse::{compute_reuse_stats, ReuseStats};
pub use rules::{check_document, Diagnostic, RuleConfig, RuleId, Severity};
pub use termbase::{evaluate_preferred_term, SemanticClass, TermStatus, Termbase};
