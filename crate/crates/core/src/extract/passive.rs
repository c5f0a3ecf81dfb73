//! Passive-voice detection over canonical dependency labels.

use serde::{Deserialize, Serialize};

use crate::conllu::Sentence;
use crate::schema::CanonicalLabel;

/// Auxiliary lemmas that never mark a passive on their own.
pub const NON_PASSIVE_AUXILIARIES: [&str; 12] = [
    "be", "have", "do", "will", "shall", "would", "should", "could", "might", "may", "must", "can",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PassiveSignal {
    None,
    /// Passive auxiliary or passive subject attached to the verb.
    Canonical,
    /// Participle under a non-modal, non-copular auxiliary ("felt abused").
    Feel,
    /// Participle with a by-phrase.
    AgentPhrase,
    /// Participle conjoined to a passive verb.
    Conjunct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PassiveInfo {
    pub is_passive: bool,
    pub signal: PassiveSignal,
    /// Token naming the semantic agent (object of the by-phrase).
    pub agent_token: Option<usize>,
}

impl PassiveInfo {
    pub const ACTIVE: PassiveInfo = PassiveInfo {
        is_passive: false,
        signal: PassiveSignal::None,
        agent_token: None,
    };

    fn passive(signal: PassiveSignal, agent_token: Option<usize>) -> Self {
        PassiveInfo {
            is_passive: true,
            signal,
            agent_token,
        }
    }
}

/// Classifies `verb` (1-based index). Signals are tried in a fixed order and
/// the first one that fires wins.
pub fn passive_info(sentence: &Sentence, verb: usize) -> PassiveInfo {
    passive_info_bounded(sentence, verb, sentence.len())
}

fn passive_info_bounded(sentence: &Sentence, verb: usize, budget: usize) -> PassiveInfo {
    let token = sentence.token(verb);
    let agent = by_phrase_object(sentence, verb);

    let canonical = sentence.children(verb).any(|c| {
        matches!(c.deprel, CanonicalLabel::AuxPass | CanonicalLabel::SubjPass)
    });
    if canonical {
        return PassiveInfo::passive(PassiveSignal::Canonical, agent);
    }

    let participle = token.is_past_participle();
    if !participle {
        return PassiveInfo::ACTIVE;
    }

    let feel = sentence
        .children_with(verb, CanonicalLabel::Aux)
        .any(|aux| !NON_PASSIVE_AUXILIARIES.contains(&aux.lemma.as_str()));
    if feel {
        return PassiveInfo::passive(PassiveSignal::Feel, agent);
    }

    if sentence.children_with(verb, CanonicalLabel::Agent).next().is_some() {
        return PassiveInfo::passive(PassiveSignal::AgentPhrase, agent);
    }

    if token.deprel == CanonicalLabel::Conj && token.head != 0 && budget > 0 {
        let head = sentence.token(token.head);
        if head.is_verbal() {
            let head_info = passive_info_bounded(sentence, token.head, budget - 1);
            if head_info.is_passive {
                return PassiveInfo::passive(
                    PassiveSignal::Conjunct,
                    agent.or(head_info.agent_token),
                );
            }
        }
    }
    PassiveInfo::ACTIVE
}

/// The nominal of the verb's by-phrase: the prepositional object under an
/// AGENT child, or the AGENT child itself when it is already nominal (UD).
pub fn by_phrase_object(sentence: &Sentence, verb: usize) -> Option<usize> {
    sentence
        .children_with(verb, CanonicalLabel::Agent)
        .find_map(|agent| {
            sentence
                .children_with(agent.index, CanonicalLabel::ObjPrep)
                .next()
                .map(|t| t.index)
                .or_else(|| agent.is_nominal().then_some(agent.index))
        })
}
