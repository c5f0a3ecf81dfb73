use crate::conllu::{parse_conllu_str, Sentence};
use crate::schema::DeprelSchema;
use crate::BENCH_CONLLU;

/// Builds a clear-schema sentence from `form lemma upos xpos head deprel` rows.
pub fn sentence(rows: &str) -> Sentence {
    sentence_with(rows, &DeprelSchema::clear())
}

pub fn sentence_with(rows: &str, schema: &DeprelSchema) -> Sentence {
    let mut text = String::new();
    for (i, row) in rows.lines().map(str::trim).filter(|l| !l.is_empty()).enumerate() {
        let c: Vec<&str> = row.split_whitespace().collect();
        assert_eq!(c.len(), 6, "bad row `{row}`");
        text.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t_\t{}\t{}\t_\t_\n",
            i + 1,
            c[0],
            c[1],
            c[2],
            c[3],
            c[4],
            c[5]
        ));
    }
    let corpus = schema.apply(parse_conllu_str(&text, "t").expect("test parse"));
    corpus.documents[0].1[0].clone()
}

/// A sentence of the shipped benchmark by id.
pub fn bench(sent_id: &str) -> Sentence {
    let corpus = DeprelSchema::clear().apply(parse_conllu_str(BENCH_CONLLU, "bench").unwrap());
    let found = corpus.sentences().find(|s| s.sent_id == sent_id).cloned();
    found.unwrap_or_else(|| panic!("no benchmark sentence {sent_id}"))
}

pub fn index_of(s: &Sentence, surface: &str) -> usize {
    s.tokens
        .iter()
        .find(|t| t.surface == surface)
        .unwrap_or_else(|| panic!("no token `{surface}`"))
        .index
}
