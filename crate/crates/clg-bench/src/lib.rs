//! Shared fixtures for the benchmark targets.

use std::path::PathBuf;

use clg_core::morph::Lexicon;
use clg_core::termbase::Termbase;

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

pub fn seed_lexicon() -> Lexicon {
    Lexicon::load(data("lexicon.tsv")).expect("seed lexicon loads")
}

pub fn seed_termbase() -> Termbase {
    Termbase::load(data("termbase.tsv")).expect("seed termbase loads")
}

pub const SAMPLE_DOCUMENT: &str = "\
<module id=\"m-bench-001\">
  <errordescription>
    <symptom>Pumpe hat zu wenig Leistung.</symptom>
    <cause>Kein Kraftstoff ist im Tank.</cause>
    <solution>
      <action>
        <step>Prüfen Sie den Tank.</step>
        <step>Wechseln Sie den Kraftstoff.</step>
      </action>
    </solution>
  </errordescription>
  <safetyadvice>
    <cause>Maschinenschaden durch liegengebliebenes Werkzeug!</cause>
  </safetyadvice>
  <descriptive>Die Feuchtreibwalze wird von der Arbeitshydraulik gespannt.</descriptive>
</module>
";
