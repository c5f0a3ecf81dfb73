//! Agent-Event-Target ("TEA") networks from dependency-parsed text.
//!
//! The pipeline reads CoNLL-U parses ([`conllu`]), normalizes relation
//! labels ([`schema`]), extracts Agent-Event-Target triples with passive
//! voice remapping ([`extract`]), builds tripartite networks ([`graph`]) and
//! computes comparative corpus statistics ([`analytics`]). [`benchmark`]
//! scores extractors against gold annotations.

pub mod analytics;
pub mod benchmark;
pub mod conllu;
pub mod error;
pub mod extract;
pub mod graph;
pub mod lexicon;
pub mod record;
pub mod schema;

#[cfg(test)]
pub(crate) mod testkit;

pub use conllu::{parse_conllu, parse_conllu_str, write_conllu, Corpus, Sentence, Token};
pub use error::{Error, Result};
pub use extract::{extract_baseline, extract_svos, passive_info, PassiveInfo, PassiveSignal};
pub use record::{EventLabel, Relation, Role, SvoRecord, NONE};
pub use schema::{apply_schema, CanonicalLabel, DeprelSchema};

/// Hand-annotated benchmark parses shipped with the crate.
pub const BENCH_CONLLU: &str = include_str!("../data/bench/bench.conllu");
/// Gold triples for [`BENCH_CONLLU`].
pub const BENCH_GOLD: &str = include_str!("../data/bench/gold.tsv");

/// Parses CoNLL-U text and applies `schema` in one step.
pub fn load_corpus(text: &str, default_doc_id: &str, schema: &DeprelSchema) -> Result<Corpus> {
    Ok(schema.apply(parse_conllu_str(text, default_doc_id)?))
}
