//! Property tests over the seed lexicon.

use std::path::PathBuf;
use std::sync::OnceLock;

use proptest::prelude::*;

use clg_core::doc::{tokenize, Document};
use clg_core::morph::{Feature, FormationPattern, Lexicon, MorphemeKind};
use clg_core::termbase::{evaluate_preferred_term, SemanticClass};

fn lexicon() -> &'static Lexicon {
    static LEX: OnceLock<Lexicon> = OnceLock::new();
    LEX.get_or_init(|| {
        let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/lexicon.tsv");
        Lexicon::load(path).expect("seed lexicon loads")
    })
}

fn roots() -> Vec<String> {
    lexicon()
        .morphemes()
        .iter()
        .filter(|m| m.kind == MorphemeKind::Root)
        .map(|m| m.surface.clone())
        .collect()
}

const LINKS: [&str; 7] = ["", "s", "n", "en", "e", "er", "es"];

/// Strategy: a compound built from 1..=4 seed roots with arbitrary
/// linking elements, returned with the number of roots used.
fn compound() -> impl Strategy<Value = (String, usize)> {
    let roots = roots();
    let root = prop::sample::select(roots);
    let link = prop::sample::select(LINKS.to_vec());
    prop::collection::vec((root, link), 1..=4).prop_map(|parts| {
        let count = parts.len();
        let mut word = String::new();
        for (i, (root, link)) in parts.iter().enumerate() {
            word.push_str(root);
            if i + 1 < count {
                word.push_str(link);
            }
        }
        (word, count)
    })
}

proptest! {
    /// The minimum can never exceed the number of roots used to build the
    /// word, and the fast count always agrees with full segmentation.
    #[test]
    fn segmentation_is_minimal_and_consistent((word, built_roots) in compound()) {
        let lex = lexicon();
        let count = lex.lexical_morpheme_count(&word).expect("constructed words segment");
        prop_assert!(count >= 1);
        prop_assert!(count <= built_roots, "{word}: {count} > {built_roots}");
        let seg = lex.segment(&word).unwrap();
        prop_assert_eq!(seg.lexical_count, count);
    }

    /// Case-folded concatenation of the parts reproduces the input.
    #[test]
    fn segmentation_reconstructs_the_word((word, _) in compound()) {
        let seg = lexicon().segment(&word).unwrap();
        let joined: String = seg.parts.iter().map(|p| p.surface.as_str()).collect();
        prop_assert_eq!(joined.to_lowercase(), word.to_lowercase());
    }

    /// Identical input yields identical segmentation.
    #[test]
    fn segmentation_is_deterministic((word, _) in compound()) {
        let lex = lexicon();
        prop_assert_eq!(lex.segment(&word).unwrap(), lex.segment(&word).unwrap());
    }

    /// The ranking winner does not depend on candidate order.
    #[test]
    fn preferred_term_winner_is_permutation_invariant(
        indices in prop::sample::subsequence(vec![0usize, 1, 2, 3, 4], 1..=5),
        seed in any::<u64>(),
    ) {
        let pool: [(&str, Option<Feature>); 5] = [
            ("Chromwalze", Some(Feature::Material)),
            ("Feuchtreibwalze", Some(Feature::Function)),
            ("Farbreibwalze", None),
            ("Wendung", None),
            ("Wenden", None),
        ];
        let mut candidates: Vec<(&str, Option<Feature>)> =
            indices.iter().map(|&i| pool[i]).collect();
        let forward =
            evaluate_preferred_term(&candidates, SemanticClass::Part, lexicon()).unwrap();
        // Deterministic pseudo-shuffle.
        let len = candidates.len();
        for i in 0..len {
            let j = (seed as usize).wrapping_mul(31).wrapping_add(i * 7) % len;
            candidates.swap(i, j);
        }
        let shuffled =
            evaluate_preferred_term(&candidates, SemanticClass::Part, lexicon()).unwrap();
        prop_assert_eq!(&forward[0].surface, &shuffled[0].surface);
    }

    /// Token spans always slice back to the exact substring.
    #[test]
    fn token_spans_slice_equality(text in "[A-Za-zäöüß0-9 .,;!?()-]{0,80}") {
        for token in tokenize(&text) {
            prop_assert_eq!(&text[token.span.start..token.span.end], token.surface.as_str());
        }
    }

    /// Trailing whitespace never changes the token count of a block.
    #[test]
    fn trailing_whitespace_is_ignored(pad in " {0,5}") {
        let base = Document::parse("<d>Öl fehlt im Tank</d>").unwrap();
        let padded = Document::parse(&format!("<d>Öl fehlt im Tank{pad}</d>")).unwrap();
        let count = |doc: &Document| {
            let blocks = doc.text_blocks();
            doc.sentences(&blocks[0])
                .iter()
                .map(|s| s.tokens.len())
                .sum::<usize>()
        };
        prop_assert_eq!(count(&base), count(&padded));
    }
}

/// Every capitalized infinitive in the verb table classifies as
/// conversion.
#[test]
fn capitalized_infinitives_classify_as_conversion() {
    let lex = lexicon();
    for verb in lex.verbs() {
        let mut chars = verb.infinitive.chars();
        let first = chars.next().unwrap().to_uppercase().to_string();
        let capitalized = format!("{first}{}", chars.as_str());
        assert_eq!(
            lex.formation_pattern(&capitalized).unwrap(),
            FormationPattern::Conversion,
            "{capitalized}"
        );
    }
}

/// Finite-verb recognition never guesses beyond the table.
#[test]
fn finite_verb_recognition_does_not_guess() {
    let lex = lexicon();
    for verb in lex.verbs() {
        for form in &verb.finite_forms {
            assert!(lex.is_finite_verb_form(form));
            assert!(
                !lex.is_finite_verb_form(&format!("{form}x")),
                "{form}x must not be recognized"
            );
        }
    }
    assert!(!lex.is_finite_verb_form("Werkzeug"));
    assert!(!lex.is_finite_verb_form("liegengebliebenes"));
}
