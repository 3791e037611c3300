//! Independent brute-force reference for compound segmentation.
//!
//! Test support only (behind the `test-oracle` feature). The oracle
//! enumerates every cover of a word by lexicon morphemes under the same
//! validity contract as [`crate::morph::Lexicon::segment`] — analyses start
//! with a root, a linking element is followed by a root or ends the word —
//! and reports the minimal number of roots. It deliberately shares no code
//! with the trie/DP implementation it checks: candidates are matched by
//! linear scan over per-first-char buckets and explored recursively.

use std::collections::HashMap;

use crate::morph::{Lexicon, MorphemeKind};

pub struct Oracle {
    by_first: HashMap<char, Vec<(Vec<char>, MorphemeKind)>>,
}

impl Oracle {
    pub fn new(lex: &Lexicon) -> Oracle {
        let mut by_first: HashMap<char, Vec<(Vec<char>, MorphemeKind)>> = HashMap::new();
        for m in lex.morphemes() {
            let chars: Vec<char> = m.surface.chars().collect();
            by_first.entry(chars[0]).or_default().push((chars, m.kind));
        }
        Oracle { by_first }
    }

    /// Minimal root count over all valid covers, `None` if uncoverable.
    pub fn min_lexical_count(&self, word: &str) -> Option<usize> {
        let folded: Vec<char> = word
            .chars()
            .map(|c| c.to_lowercase().next().unwrap_or(c))
            .collect();
        let mut best = None;
        self.search(&folded, 0, true, 0, &mut best);
        best
    }

    fn search(
        &self,
        word: &[char],
        pos: usize,
        root_required: bool,
        roots: usize,
        best: &mut Option<usize>,
    ) {
        if let Some(b) = *best {
            // A completed cover would use at least `roots` roots; an equal
            // count cannot improve the minimum, so cut the branch.
            if roots >= b {
                return;
            }
        }
        if pos == word.len() {
            *best = Some(roots);
            return;
        }
        let candidates = match self.by_first.get(&word[pos]) {
            Some(c) => c,
            None => return,
        };
        for (surface, kind) in candidates {
            if root_required && *kind != MorphemeKind::Root {
                continue;
            }
            if !word[pos..].starts_with(surface) {
                continue;
            }
            let (added, next_required) = match kind {
                MorphemeKind::Root => (1, false),
                MorphemeKind::DerivationalSuffix => (0, false),
                MorphemeKind::LinkingElement => (0, true),
            };
            self.search(word, pos + surface.len(), next_required, roots + added, best);
        }
    }
}
