use criterion::{black_box, criterion_group, criterion_main, Criterion};

use clg_bench::{seed_lexicon, seed_termbase, SAMPLE_DOCUMENT};
use clg_core::doc::Document;
use clg_core::rules::{check_document, RuleConfig};

fn bench_segmentation(c: &mut Criterion) {
    let lex = seed_lexicon();
    let mut group = c.benchmark_group("segment");
    for word in [
        "Walze",
        "Chromwalze",
        "Farbreibwalze",
        "Farbwerkwalzenschutzvorrichtung",
    ] {
        group.bench_function(word, |b| {
            b.iter(|| lex.segment(black_box(word)).unwrap())
        });
    }
    group.finish();
}

fn bench_parse(c: &mut Criterion) {
    c.bench_function("parse_document", |b| {
        b.iter(|| Document::parse(black_box(SAMPLE_DOCUMENT)).unwrap())
    });
}

fn bench_check(c: &mut Criterion) {
    let lex = seed_lexicon();
    let tb = seed_termbase();
    let cfg = RuleConfig::default();
    let doc = Document::parse(SAMPLE_DOCUMENT).unwrap();
    c.bench_function("check_document", |b| {
        b.iter(|| check_document(black_box(&doc), &lex, &tb, &cfg, "bench.xml"))
    });
}

fn bench_lookup(c: &mut Criterion) {
    let tb = seed_termbase();
    c.bench_function("termbase_lookup", |b| {
        b.iter(|| tb.lookup(black_box("Feuchtreibwalzen")))
    });
}

criterion_group!(
    benches,
    bench_segmentation,
    bench_parse,
    bench_check,
    bench_lookup
);
criterion_main!(benches);
