//! Agent-Event-Target extraction from canonical-labelled dependency trees.
//!
//! Each verb candidate contributes the Cartesian product of its subjects and
//! objects. Passive verbs are remapped: a by-phrase object becomes the Agent
//! and the grammatical subject the Target; without a by-phrase the subject
//! stays in the Agent slot and the record is marked `passive_approx`.

mod baseline;
mod passive;

use crate::conllu::{Corpus, Sentence};
use crate::record::{EventLabel, SvoRecord, NONE};
use crate::schema::CanonicalLabel;

pub use baseline::{extract_baseline, extract_baseline_sentence};
pub use passive::{
    by_phrase_object, passive_info, PassiveInfo, PassiveSignal, NON_PASSIVE_AUXILIARIES,
};

const NON_PREDICATE: [CanonicalLabel; 6] = [
    CanonicalLabel::Aux,
    CanonicalLabel::AuxPass,
    CanonicalLabel::Acomp,
    CanonicalLabel::Prep,
    CanonicalLabel::Attr,
    CanonicalLabel::Oprd,
];

/// VERB/AUX tokens that are not themselves auxiliaries, adjectival or prepositional dependents.
pub fn find_verb_candidates(sentence: &Sentence) -> Vec<usize> {
    sentence
        .tokens
        .iter()
        .filter(|t| t.is_verbal() && !NON_PREDICATE.contains(&t.deprel))
        .map(|t| t.index)
        .collect()
}

/// Subjects of `verb`, with coordinated subjects expanded. A subjectless
/// active conjunct inherits the subjects of the verb it is conjoined to;
/// passive verbs never inherit.
pub fn extract_subjects(sentence: &Sentence, verb: usize) -> Vec<usize> {
    subjects_bounded(sentence, verb, sentence.len())
}

fn subjects_bounded(sentence: &Sentence, verb: usize, budget: usize) -> Vec<usize> {
    let direct: Vec<usize> = sentence
        .children(verb)
        .filter(|t| t.deprel.is_subject())
        .map(|t| t.index)
        .collect();
    if !direct.is_empty() {
        return expand_coordination(sentence, direct);
    }
    if passive_info(sentence, verb).is_passive {
        return Vec::new();
    }
    let token = sentence.token(verb);
    if token.deprel == CanonicalLabel::Conj && token.head != 0 && budget > 0 {
        let head = sentence.token(token.head);
        if head.is_verbal() {
            return subjects_bounded(sentence, head.index, budget - 1);
        }
    }
    Vec::new()
}

/// Objects of `verb` in token order: direct, prepositional and dative
/// objects, attributes and adjectival complements, and clausal complements
/// (the complement head when nominal, its own objects otherwise). A verb
/// with no objects of its own inherits those of the verb it is conjoined to.
pub fn extract_objects(sentence: &Sentence, verb: usize) -> Vec<usize> {
    let budget = sentence.len();
    let mut objects = own_objects(sentence, verb, budget);
    if objects.is_empty() {
        let mut cur = sentence.token(verb);
        let mut steps = 0;
        while cur.deprel == CanonicalLabel::Conj && cur.head != 0 && steps < budget {
            let head = sentence.token(cur.head);
            if !head.is_verbal() {
                break;
            }
            objects = own_objects(sentence, head.index, budget);
            if !objects.is_empty() {
                break;
            }
            cur = head;
            steps += 1;
        }
    }
    objects
}

fn own_objects(sentence: &Sentence, verb: usize, budget: usize) -> Vec<usize> {
    let mut found = Vec::new();
    for child in sentence.children(verb) {
        match child.deprel {
            CanonicalLabel::ObjDirect
            | CanonicalLabel::ObjPrep
            | CanonicalLabel::ObjDative
            | CanonicalLabel::Attr
            | CanonicalLabel::Acomp => found.push(child.index),
            CanonicalLabel::Prep => found.extend(
                sentence
                    .children_with(child.index, CanonicalLabel::ObjPrep)
                    .map(|t| t.index),
            ),
            CanonicalLabel::CompClausal | CanonicalLabel::CompOpen => {
                if child.is_nominal() {
                    found.push(child.index);
                } else if budget > 0 {
                    found.extend(own_objects(sentence, child.index, budget - 1));
                }
            }
            _ => {}
        }
    }
    found.sort_unstable();
    found.dedup();
    expand_coordination(sentence, found)
}

/// Adds non-verbal CONJ descendants of each argument ("Alice and Bob").
fn expand_coordination(sentence: &Sentence, heads: Vec<usize>) -> Vec<usize> {
    let mut out = Vec::with_capacity(heads.len());
    let mut stack: Vec<usize> = heads.into_iter().rev().collect();
    while let Some(i) = stack.pop() {
        if out.contains(&i) {
            continue;
        }
        out.push(i);
        let conjuncts: Vec<usize> = sentence
            .children_with(i, CanonicalLabel::Conj)
            .filter(|t| !t.is_verbal())
            .map(|t| t.index)
            .collect();
        stack.extend(conjuncts.into_iter().rev());
    }
    out
}

fn event_tokens(sentence: &Sentence, verb: usize) -> Vec<usize> {
    let mut tokens = vec![verb];
    let mut frontier = vec![verb];
    let mut budget = sentence.len();
    while let Some(v) = frontier.pop() {
        for child in sentence.children(v) {
            match child.deprel {
                CanonicalLabel::Aux
                | CanonicalLabel::AuxPass
                | CanonicalLabel::Neg
                | CanonicalLabel::Advmod
                    if v == verb =>
                {
                    tokens.push(child.index)
                }
                CanonicalLabel::CompOpen | CanonicalLabel::CompClausal
                    if child.is_verbal() && budget > 0 =>
                {
                    budget -= 1;
                    tokens.push(child.index);
                    frontier.push(child.index);
                }
                _ => {}
            }
        }
    }
    tokens.sort_unstable();
    tokens.dedup();
    tokens
}

/// Verb phrase of `verb`: its auxiliaries, negation and adverbs, the verb,
/// and verbs chained through open or clausal complements, in surface order.
pub fn build_event_label(sentence: &Sentence, verb: usize) -> EventLabel {
    let tokens = event_tokens(sentence, verb);
    let phrase = tokens
        .iter()
        .map(|&i| sentence.token(i).lemma.to_lowercase())
        .collect::<Vec<_>>()
        .join(" ");
    EventLabel {
        phrase,
        head_lemma: sentence.token(verb).lemma.to_lowercase(),
    }
}

fn surface_phrase(sentence: &Sentence, verb: usize) -> String {
    event_tokens(sentence, verb)
        .iter()
        .map(|&i| sentence.token(i).surface.as_str())
        .collect::<Vec<_>>()
        .join(" ")
}

fn lemma_of(sentence: &Sentence, index: Option<usize>) -> String {
    match index {
        Some(i) => sentence.token(i).lemma.to_lowercase(),
        None => NONE.to_string(),
    }
}

fn pairs(agents: &[usize], targets: &[usize]) -> Vec<(Option<usize>, Option<usize>)> {
    match (agents.is_empty(), targets.is_empty()) {
        (true, true) => Vec::new(),
        (false, true) => agents.iter().map(|&a| (Some(a), None)).collect(),
        (true, false) => targets.iter().map(|&t| (None, Some(t))).collect(),
        (false, false) => agents
            .iter()
            .flat_map(|&a| targets.iter().map(move |&t| (Some(a), Some(t))))
            .collect(),
    }
}

/// Records for one sentence, all with `triple_id` 0; see [`number_records`].
pub fn extract_sentence(sentence: &Sentence) -> Vec<SvoRecord> {
    let mut records = Vec::new();
    for verb in find_verb_candidates(sentence) {
        let info = passive_info(sentence, verb);
        let subjects = extract_subjects(sentence, verb);
        let objects = extract_objects(sentence, verb);

        let (agents, targets, approx) = match (info.is_passive, info.agent_token) {
            (false, _) => (subjects, objects, false),
            (true, Some(agent)) => {
                let targets = if subjects.is_empty() { objects } else { subjects };
                (expand_coordination(sentence, vec![agent]), targets, false)
            }
            (true, None) => (subjects, objects, true),
        };

        let event = build_event_label(sentence, verb);
        let raw_phrase = surface_phrase(sentence, verb);
        for (a, t) in pairs(&agents, &targets) {
            records.push(SvoRecord {
                triple_id: 0,
                doc_id: sentence.doc_id.clone(),
                sent_id: sentence.sent_id.clone(),
                agent: lemma_of(sentence, a),
                event: event.clone(),
                target: lemma_of(sentence, t),
                is_passive: info.is_passive,
                passive_approx: approx,
                verb_index: verb,
                raw_phrase: raw_phrase.clone(),
            });
        }
    }
    records
}

/// Assigns consecutive triple ids starting at `first`; returns the next free id.
pub fn number_records(records: &mut [SvoRecord], first: u64) -> u64 {
    let mut id = first;
    for r in records.iter_mut() {
        r.triple_id = id;
        id += 1;
    }
    id
}

/// Extracts every sentence of `corpus` in input order, ids counting from 0.
pub fn extract_svos(corpus: &Corpus) -> Vec<SvoRecord> {
    let mut records: Vec<SvoRecord> = corpus.sentences().flat_map(extract_sentence).collect();
    number_records(&mut records, 0);
    records
}

/// True when any verb candidate in the sentence is passive.
pub fn sentence_is_passive(sentence: &Sentence) -> bool {
    find_verb_candidates(sentence)
        .into_iter()
        .any(|v| passive_info(sentence, v).is_passive)
}
