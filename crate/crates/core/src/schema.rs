//! Canonical dependency labels and the tables that map parser-specific
//! relation names onto them.
//!
//! Two schemas ship with the crate: `clear` (the ClearNLP-style labels
//! emitted by English spaCy pipelines) and `ud` (Universal Dependencies v2).
//! A user mapping can be loaded from a two-column TSV file.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::conllu::Corpus;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CanonicalLabel {
    Subj,
    SubjPass,
    ObjDirect,
    ObjPrep,
    ObjDative,
    CompClausal,
    CompOpen,
    Aux,
    AuxPass,
    Neg,
    Conj,
    Agent,
    Prep,
    Attr,
    Acomp,
    Oprd,
    Advmod,
    Other,
}

impl CanonicalLabel {
    pub const ALL: [CanonicalLabel; 18] = [
        CanonicalLabel::Subj,
        CanonicalLabel::SubjPass,
        CanonicalLabel::ObjDirect,
        CanonicalLabel::ObjPrep,
        CanonicalLabel::ObjDative,
        CanonicalLabel::CompClausal,
        CanonicalLabel::CompOpen,
        CanonicalLabel::Aux,
        CanonicalLabel::AuxPass,
        CanonicalLabel::Neg,
        CanonicalLabel::Conj,
        CanonicalLabel::Agent,
        CanonicalLabel::Prep,
        CanonicalLabel::Attr,
        CanonicalLabel::Acomp,
        CanonicalLabel::Oprd,
        CanonicalLabel::Advmod,
        CanonicalLabel::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CanonicalLabel::Subj => "SUBJ",
            CanonicalLabel::SubjPass => "SUBJ_PASS",
            CanonicalLabel::ObjDirect => "OBJ_DIRECT",
            CanonicalLabel::ObjPrep => "OBJ_PREP",
            CanonicalLabel::ObjDative => "OBJ_DATIVE",
            CanonicalLabel::CompClausal => "COMP_CLAUSAL",
            CanonicalLabel::CompOpen => "COMP_OPEN",
            CanonicalLabel::Aux => "AUX",
            CanonicalLabel::AuxPass => "AUX_PASS",
            CanonicalLabel::Neg => "NEG",
            CanonicalLabel::Conj => "CONJ",
            CanonicalLabel::Agent => "AGENT",
            CanonicalLabel::Prep => "PREP",
            CanonicalLabel::Attr => "ATTR",
            CanonicalLabel::Acomp => "ACOMP",
            CanonicalLabel::Oprd => "OPRD",
            CanonicalLabel::Advmod => "ADVMOD",
            CanonicalLabel::Other => "OTHER",
        }
    }

    pub fn is_subject(self) -> bool {
        matches!(self, CanonicalLabel::Subj | CanonicalLabel::SubjPass)
    }
}

impl fmt::Display for CanonicalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CanonicalLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CanonicalLabel::ALL
            .iter()
            .copied()
            .find(|l| l.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Config(format!("unknown canonical label `{s}`")))
    }
}

const CLEAR_TABLE: &[(&str, CanonicalLabel)] = &[
    ("nsubj", CanonicalLabel::Subj),
    ("nsubjpass", CanonicalLabel::SubjPass),
    ("dobj", CanonicalLabel::ObjDirect),
    ("pobj", CanonicalLabel::ObjPrep),
    ("dative", CanonicalLabel::ObjDative),
    ("agent", CanonicalLabel::Agent),
    ("auxpass", CanonicalLabel::AuxPass),
    ("aux", CanonicalLabel::Aux),
    ("neg", CanonicalLabel::Neg),
    ("conj", CanonicalLabel::Conj),
    ("ccomp", CanonicalLabel::CompClausal),
    ("xcomp", CanonicalLabel::CompOpen),
    ("prep", CanonicalLabel::Prep),
    ("attr", CanonicalLabel::Attr),
    ("acomp", CanonicalLabel::Acomp),
    ("oprd", CanonicalLabel::Oprd),
    ("advmod", CanonicalLabel::Advmod),
];

// Subtyped UD labels not listed here fall back to their base label.
const UD_TABLE: &[(&str, CanonicalLabel)] = &[
    ("nsubj", CanonicalLabel::Subj),
    ("nsubj:pass", CanonicalLabel::SubjPass),
    ("obj", CanonicalLabel::ObjDirect),
    ("obl", CanonicalLabel::ObjPrep),
    ("obl:tmod", CanonicalLabel::Other),
    ("obl:npmod", CanonicalLabel::Other),
    ("iobj", CanonicalLabel::ObjDative),
    ("obl:agent", CanonicalLabel::Agent),
    ("aux", CanonicalLabel::Aux),
    ("aux:pass", CanonicalLabel::AuxPass),
    ("cop", CanonicalLabel::Aux),
    ("conj", CanonicalLabel::Conj),
    ("ccomp", CanonicalLabel::CompClausal),
    ("xcomp", CanonicalLabel::CompOpen),
    ("advmod", CanonicalLabel::Advmod),
];

/// Maps raw dependency labels to [`CanonicalLabel`]s.
#[derive(Debug, Clone, PartialEq)]
pub struct DeprelSchema {
    name: String,
    mapping: HashMap<String, CanonicalLabel>,
    /// `advmod` tokens with one of these lemmas are relabelled NEG (UD has no `neg`).
    neg_advmod_lemmas: Vec<String>,
    subtype_fallback: bool,
}

impl DeprelSchema {
    pub fn clear() -> Self {
        DeprelSchema {
            name: "clear".into(),
            mapping: table(CLEAR_TABLE),
            neg_advmod_lemmas: Vec::new(),
            subtype_fallback: false,
        }
    }

    pub fn ud() -> Self {
        DeprelSchema {
            name: "ud".into(),
            mapping: table(UD_TABLE),
            neg_advmod_lemmas: vec!["not".into(), "n't".into()],
            subtype_fallback: true,
        }
    }

    /// Looks up one of the shipped schemas by name.
    pub fn by_name(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "clear" => Ok(Self::clear()),
            "ud" => Ok(Self::ud()),
            other => Err(Error::Config(format!(
                "unknown schema `{other}` (expected `clear` or `ud`)"
            ))),
        }
    }

    /// Reads a `raw_label<TAB>CANONICAL_LABEL` table. Blank lines and `#` comments are skipped.
    pub fn from_tsv(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut mapping = HashMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() != 2 {
                return Err(Error::load(path, n + 1, "expected raw_label<TAB>canonical_label"));
            }
            let label = cols[1]
                .parse::<CanonicalLabel>()
                .map_err(|e| Error::load(path, n + 1, e.to_string()))?;
            mapping.insert(cols[0].trim().to_string(), label);
        }
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "custom".into());
        Ok(DeprelSchema {
            name,
            mapping,
            neg_advmod_lemmas: Vec::new(),
            subtype_fallback: false,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Canonical label for a raw relation; `lemma` is consulted only for negation adverbs.
    pub fn map(&self, raw: &str, lemma: &str) -> CanonicalLabel {
        let label = self.lookup(raw);
        if label == CanonicalLabel::Advmod && self.neg_advmod_lemmas.iter().any(|l| l == lemma) {
            return CanonicalLabel::Neg;
        }
        label
    }

    fn lookup(&self, raw: &str) -> CanonicalLabel {
        if let Some(label) = self.mapping.get(raw) {
            return *label;
        }
        if self.subtype_fallback {
            if let Some((base, _)) = raw.split_once(':') {
                if let Some(label) = self.mapping.get(base) {
                    return *label;
                }
            }
        }
        CanonicalLabel::Other
    }

    /// Relabels every token of `corpus` from its raw relation.
    pub fn apply(&self, mut corpus: Corpus) -> Corpus {
        for (_, sentences) in corpus.documents.iter_mut() {
            for sentence in sentences.iter_mut() {
                for token in sentence.tokens.iter_mut() {
                    token.deprel = self.map(&token.deprel_raw, &token.lemma);
                }
            }
        }
        corpus
    }
}

fn table(rows: &[(&str, CanonicalLabel)]) -> HashMap<String, CanonicalLabel> {
    rows.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// Free-function form of [`DeprelSchema::apply`].
pub fn apply_schema(corpus: Corpus, schema: &DeprelSchema) -> Corpus {
    schema.apply(corpus)
}
