//! Root-verb-only extractor used as a comparison point: one record per
//! sentence, first subject, first object, no coordination, inheritance or
//! phrase bundling.

use crate::conllu::{Corpus, Sentence, Token};
use crate::record::{EventLabel, SvoRecord, NONE};
use crate::schema::CanonicalLabel;

use super::{by_phrase_object, number_records};

fn first_object(sentence: &Sentence, root: &Token) -> Option<usize> {
    const DIRECT: [CanonicalLabel; 5] = [
        CanonicalLabel::ObjDirect,
        CanonicalLabel::ObjPrep,
        CanonicalLabel::Attr,
        CanonicalLabel::Acomp,
        CanonicalLabel::CompClausal,
    ];
    for label in DIRECT {
        if let Some(t) = sentence.children_with(root.index, label).next() {
            return Some(t.index);
        }
    }
    for child in sentence.children(root.index) {
        let nested = match child.deprel {
            CanonicalLabel::Prep => sentence
                .children_with(child.index, CanonicalLabel::ObjPrep)
                .next(),
            CanonicalLabel::CompOpen => sentence.children(child.index).find(|t| {
                matches!(t.deprel, CanonicalLabel::ObjDirect | CanonicalLabel::ObjPrep)
            }),
            _ => None,
        };
        if let Some(t) = nested {
            return Some(t.index);
        }
    }
    None
}

pub fn extract_baseline_sentence(sentence: &Sentence) -> SvoRecord {
    let Some(root) = sentence.root() else {
        unreachable!("parsed sentences always have a root")
    };
    let subject = sentence.children(root.index).find(|t| t.deprel.is_subject());
    let object = first_object(sentence, root);
    let agent_token = by_phrase_object(sentence, root.index);
    let has_agent_child = sentence
        .children_with(root.index, CanonicalLabel::Agent)
        .next()
        .is_some();
    let passive = subject.is_some_and(|s| s.deprel == CanonicalLabel::SubjPass) || has_agent_child;

    let subject = subject.map(|t| t.index);
    let (agent, target, approx) = match (passive, agent_token) {
        (false, _) => (subject, object, false),
        (true, Some(a)) => (Some(a), subject.or(object), false),
        (true, None) => (subject, object, true),
    };
    let lemma = |i: Option<usize>| match i {
        Some(i) => sentence.token(i).lemma.to_lowercase(),
        None => NONE.to_string(),
    };
    let event = if root.is_verbal() {
        EventLabel::single(&root.lemma)
    } else {
        EventLabel::none()
    };
    SvoRecord {
        triple_id: 0,
        doc_id: sentence.doc_id.clone(),
        sent_id: sentence.sent_id.clone(),
        agent: lemma(agent),
        event,
        target: lemma(target),
        is_passive: passive,
        passive_approx: passive && approx,
        verb_index: root.index,
        raw_phrase: root.surface.clone(),
    }
}

/// Exactly one record per sentence, ids counting from 0.
pub fn extract_baseline(corpus: &Corpus) -> Vec<SvoRecord> {
    let mut records: Vec<SvoRecord> = corpus.sentences().map(extract_baseline_sentence).collect();
    number_records(&mut records, 0);
    records
}
