//! Corpus-level module-reuse statistics over modular XML documents.
//!
//! Module identity is attribute-value equality; the attribute name is
//! configurable (default "id"). The reuse ratio is the fraction of module
//! instances that repeat an already-used module.

use std::collections::HashSet;

use crate::doc::{Document, Element, Node};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReuseStats {
    pub total_instances: usize,
    pub unique_modules: usize,
    /// (total − unique) / total, 0 for an empty corpus.
    pub reuse_ratio: f64,
}

/// Counts every element carrying `id_attribute` across the corpus;
/// uniqueness is by attribute value. Pure aggregation, invariant under
/// permutation of the document list.
pub fn compute_reuse_stats(documents: &[Document], id_attribute: &str) -> ReuseStats {
    let mut total = 0usize;
    let mut values: HashSet<String> = HashSet::new();
    for doc in documents {
        collect(doc.root(), id_attribute, &mut total, &mut values);
    }
    let unique = values.len();
    let reuse_ratio = if total == 0 {
        0.0
    } else {
        (total - unique) as f64 / total as f64
    };
    ReuseStats {
        total_instances: total,
        unique_modules: unique,
        reuse_ratio,
    }
}

fn collect(element: &Element, id_attribute: &str, total: &mut usize, values: &mut HashSet<String>) {
    if let Some(value) = element.attribute(id_attribute) {
        *total += 1;
        values.insert(value.to_string());
    }
    for child in &element.children {
        if let Node::Element(el) = child {
            collect(el, id_attribute, total, values);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn docs(sources: &[&str]) -> Vec<Document> {
        sources.iter().map(|s| Document::parse(s).unwrap()).collect()
    }

    #[test]
    fn repeated_id_counts_as_reuse() {
        let corpus = docs(&[
            "<m><step id=\"A\"/><step id=\"B\"/></m>",
            "<m><step id=\"A\"/></m>",
        ]);
        let stats = compute_reuse_stats(&corpus, "id");
        assert_eq!(stats.total_instances, 3);
        assert_eq!(stats.unique_modules, 2);
        assert_eq!(stats.reuse_ratio, 1.0 / 3.0);
    }

    #[test]
    fn all_distinct_ids_mean_zero_reuse() {
        let corpus = docs(&["<m><a id=\"A\"/><b id=\"B\"/></m>"]);
        let stats = compute_reuse_stats(&corpus, "id");
        assert_eq!(stats.reuse_ratio, 0.0);
    }

    #[test]
    fn empty_corpus_is_the_degenerate_case() {
        let stats = compute_reuse_stats(&[], "id");
        assert_eq!(stats.total_instances, 0);
        assert_eq!(stats.unique_modules, 0);
        assert_eq!(stats.reuse_ratio, 0.0);
    }

    #[test]
    fn ratio_is_permutation_invariant() {
        let a = docs(&["<m><x id=\"A\"/></m>", "<m><x id=\"A\"/><x id=\"B\"/></m>"]);
        let b = docs(&["<m><x id=\"A\"/><x id=\"B\"/></m>", "<m><x id=\"A\"/></m>"]);
        assert_eq!(
            compute_reuse_stats(&a, "id"),
            compute_reuse_stats(&b, "id")
        );
    }

    #[test]
    fn adding_known_ids_raises_ratio_and_keeps_unique() {
        let base = docs(&["<m><x id=\"A\"/><x id=\"B\"/></m>"]);
        let more = docs(&[
            "<m><x id=\"A\"/><x id=\"B\"/></m>",
            "<m><x id=\"B\"/></m>",
        ]);
        let before = compute_reuse_stats(&base, "id");
        let after = compute_reuse_stats(&more, "id");
        assert!(after.total_instances > before.total_instances);
        assert_eq!(after.unique_modules, before.unique_modules);
        assert!(after.reuse_ratio > before.reuse_ratio);
    }

    #[test]
    fn attribute_name_is_configurable() {
        let corpus = docs(&["<m><x ref=\"A\"/><x id=\"A\"/></m>"]);
        let stats = compute_reuse_stats(&corpus, "ref");
        assert_eq!(stats.total_instances, 1);
    }
}
