//! Immutable lexical resources: word valence, synonym groups, word-emotion
//! associations and per-lemma scalar norms.
//!
//! Every loader has a `parse_*` twin working on in-memory text, which is what
//! the shipped resources below use.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// VADER valence lexicon (MIT licensed, see `data/lexicons/VADER_LICENSE.txt`).
pub const VADER_LEXICON: &str = include_str!("../data/lexicons/vader_lexicon.txt");
/// Small hand-made synonym groups for examples and tests.
pub const SAMPLE_SYNONYMS: &str = include_str!("../data/lexicons/synonyms.tsv");
/// Small hand-made word-emotion associations in NRC layout.
pub const SAMPLE_EMOTIONS: &str = include_str!("../data/lexicons/emotions.tsv");
/// Small hand-made concreteness ratings on a 1-5 scale.
pub const SAMPLE_CONCRETENESS: &str = include_str!("../data/lexicons/concreteness.tsv");

/// Data lines of a TSV resource: 1-based line number and fields, skipping
/// blank lines and `#` comments.
fn rows(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.trim().is_empty() || line.starts_with('#') {
            None
        } else {
            Some((i + 1, line.split('\t').collect()))
        }
    })
}

fn parse_score(field: &str, source: &str, line: usize) -> Result<f64> {
    field
        .trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::load(source, line, format!("non-numeric score `{field}`")))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::load(path, 0, e.to_string()))
}

fn lemma_key(field: &str, source: &str, line: usize) -> Result<String> {
    let key = field.trim().to_lowercase();
    if key.is_empty() {
        return Err(Error::load(source, line, "empty lemma"));
    }
    Ok(key)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Positive,
    Negative,
    Neutral,
}

impl Polarity {
    pub fn as_str(self) -> &'static str {
        match self {
            Polarity::Positive => "positive",
            Polarity::Negative => "negative",
            Polarity::Neutral => "neutral",
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Polarity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "positive" => Ok(Polarity::Positive),
            "negative" => Ok(Polarity::Negative),
            "neutral" => Ok(Polarity::Neutral),
            _ => Err(Error::Data(format!("unknown polarity `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValenceLexicon {
    entries: BTreeMap<String, f64>,
    neg_max: f64,
    pos_min: f64,
    /// Rows that overwrote an earlier row for the same lemma.
    pub duplicates: usize,
}

impl Default for ValenceLexicon {
    fn default() -> Self {
        ValenceLexicon {
            entries: BTreeMap::new(),
            neg_max: -0.05,
            pos_min: 0.05,
            duplicates: 0,
        }
    }
}

impl ValenceLexicon {
    /// Parses `lemma<TAB>score[<TAB>...]`; extra columns are ignored.
    pub fn parse(text: &str, source: &str) -> Result<Self> {
        let mut lex = ValenceLexicon::default();
        for (line, cols) in rows(text) {
            if cols.len() < 2 {
                return Err(Error::load(source, line, "expected lemma and score"));
            }
            let score = parse_score(cols[1], source, line)?;
            if lex.entries.insert(lemma_key(cols[0], source, line)?, score).is_some() {
                lex.duplicates += 1;
            }
        }
        Ok(lex)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&read(path)?, &path.display().to_string())
    }

    /// The shipped VADER lexicon.
    pub fn vader() -> Self {
        Self::parse(VADER_LEXICON, "vader_lexicon.txt").expect("shipped lexicon parses")
    }

    /// Replaces the neutral band; requires `neg_max <= pos_min`.
    pub fn with_thresholds(mut self, neg_max: f64, pos_min: f64) -> Result<Self> {
        // NaN fails this too
        if neg_max.partial_cmp(&pos_min).is_none_or(|o| o.is_gt()) {
            return Err(Error::Config(format!(
                "polarity thresholds out of order: {neg_max} > {pos_min}"
            )));
        }
        self.neg_max = neg_max;
        self.pos_min = pos_min;
        Ok(self)
    }

    pub fn thresholds(&self) -> (f64, f64) {
        (self.neg_max, self.pos_min)
    }

    pub fn score(&self, lemma: &str) -> Option<f64> {
        self.entries.get(&lemma.to_lowercase()).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Mean score of the words of `label` found in the lexicon.
    pub fn label_score(&self, label: &str) -> Option<f64> {
        let found: Vec<f64> = label.split_whitespace().filter_map(|w| self.score(w)).collect();
        (!found.is_empty()).then(|| found.iter().sum::<f64>() / found.len() as f64)
    }

    pub fn classify(&self, lemma: &str) -> Polarity {
        match self.label_score(lemma) {
            Some(s) if s < self.neg_max => Polarity::Negative,
            Some(s) if s > self.pos_min => Polarity::Positive,
            _ => Polarity::Neutral,
        }
    }

    pub fn to_tsv(&self) -> String {
        self.entries.iter().map(|(k, v)| format!("{k}\t{v}\n")).collect()
    }
}

/// Polarity of `lemma`: absent → neutral, below `neg_max` → negative, above
/// `pos_min` → positive. Multiword labels use the mean of their found words.
pub fn classify_polarity(lex: &ValenceLexicon, lemma: &str) -> Polarity {
    lex.classify(lemma)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SynonymTable {
    groups: Vec<BTreeSet<String>>,
    index: BTreeMap<String, BTreeSet<usize>>,
}

impl SynonymTable {
    /// One group per line, members separated by tabs.
    pub fn parse(text: &str, source: &str) -> Result<Self> {
        let mut table = SynonymTable::default();
        for (line, cols) in rows(text) {
            let group = cols
                .iter()
                .map(|c| lemma_key(c, source, line))
                .collect::<Result<BTreeSet<_>>>()?;
            table.push(group);
        }
        Ok(table)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&read(path)?, &path.display().to_string())
    }

    pub fn sample() -> Self {
        Self::parse(SAMPLE_SYNONYMS, "synonyms.tsv").expect("shipped synonyms parse")
    }

    pub fn from_groups<I, G, S>(groups: I) -> Self
    where
        I: IntoIterator<Item = G>,
        G: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut table = SynonymTable::default();
        for g in groups {
            table.push(g.into_iter().map(|s| s.as_ref().to_lowercase()).collect());
        }
        table
    }

    fn push(&mut self, group: BTreeSet<String>) {
        let id = self.groups.len();
        for lemma in &group {
            self.index.entry(lemma.clone()).or_default().insert(id);
        }
        self.groups.push(group);
    }

    pub fn groups(&self) -> &[BTreeSet<String>] {
        &self.groups
    }

    pub fn are_synonymous(&self, a: &str, b: &str) -> bool {
        let (a, b) = (a.to_lowercase(), b.to_lowercase());
        if a == b {
            return false;
        }
        match (self.index.get(&a), self.index.get(&b)) {
            (Some(ga), Some(gb)) => !ga.is_disjoint(gb),
            _ => false,
        }
    }

    pub fn to_tsv(&self) -> String {
        self.groups
            .iter()
            .filter(|g| !g.is_empty())
            .map(|g| g.iter().cloned().collect::<Vec<_>>().join("\t") + "\n")
            .collect()
    }
}

/// True iff `a != b` and they share a synonym group.
pub fn are_synonymous(tab: &SynonymTable, a: &str, b: &str) -> bool {
    tab.are_synonymous(a, b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Emotion {
    Anger,
    Anticipation,
    Disgust,
    Fear,
    Joy,
    Sadness,
    Surprise,
    Trust,
}

impl Emotion {
    pub const ALL: [Emotion; 8] = [
        Emotion::Anger,
        Emotion::Anticipation,
        Emotion::Disgust,
        Emotion::Fear,
        Emotion::Joy,
        Emotion::Sadness,
        Emotion::Surprise,
        Emotion::Trust,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Emotion::Anger => "anger",
            Emotion::Anticipation => "anticipation",
            Emotion::Disgust => "disgust",
            Emotion::Fear => "fear",
            Emotion::Joy => "joy",
            Emotion::Sadness => "sadness",
            Emotion::Surprise => "surprise",
            Emotion::Trust => "trust",
        }
    }
}

impl fmt::Display for Emotion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Emotion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Emotion::ALL
            .into_iter()
            .find(|e| e.as_str() == s)
            .ok_or_else(|| Error::Data(format!("unknown emotion `{s}`")))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EmotionLexicon {
    entries: BTreeMap<String, BTreeSet<Emotion>>,
    pub duplicates: usize,
}

impl EmotionLexicon {
    /// NRC layout `lemma<TAB>emotion<TAB>0|1`. The NRC sentiment columns
    /// `positive`/`negative` are skipped; every lemma seen joins the vocabulary.
    pub fn parse(text: &str, source: &str) -> Result<Self> {
        let mut lex = EmotionLexicon::default();
        let mut seen = BTreeSet::new();
        for (line, cols) in rows(text) {
            if cols.len() != 3 {
                return Err(Error::load(source, line, "expected lemma, emotion and 0/1 flag"));
            }
            let lemma = lemma_key(cols[0], source, line)?;
            let label = cols[1].trim().to_lowercase();
            let flag = match cols[2].trim() {
                "1" => true,
                "0" => false,
                other => return Err(Error::load(source, line, format!("flag `{other}` is not 0/1"))),
            };
            let set = lex.entries.entry(lemma.clone()).or_default();
            if label == "positive" || label == "negative" {
                continue;
            }
            let emotion: Emotion = label
                .parse()
                .map_err(|_| Error::load(source, line, format!("unknown emotion `{label}`")))?;
            if !seen.insert((lemma, emotion)) {
                lex.duplicates += 1;
            }
            if flag {
                set.insert(emotion);
            } else {
                set.remove(&emotion);
            }
        }
        Ok(lex)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&read(path)?, &path.display().to_string())
    }

    pub fn sample() -> Self {
        Self::parse(SAMPLE_EMOTIONS, "emotions.tsv").expect("shipped emotions parse")
    }

    pub fn from_entries<I, S>(entries: I) -> Self
    where
        I: IntoIterator<Item = (S, Vec<Emotion>)>,
        S: AsRef<str>,
    {
        let mut lex = EmotionLexicon::default();
        for (lemma, emotions) in entries {
            lex.entries
                .entry(lemma.as_ref().to_lowercase())
                .or_default()
                .extend(emotions);
        }
        lex
    }

    pub fn emotions(&self, lemma: &str) -> Option<&BTreeSet<Emotion>> {
        self.entries.get(&lemma.to_lowercase())
    }

    pub fn has(&self, lemma: &str, emotion: Emotion) -> bool {
        self.emotions(lemma).is_some_and(|s| s.contains(&emotion))
    }

    /// Every lemma in the lexicon, sorted.
    pub fn vocabulary(&self) -> Vec<&str> {
        self.entries.keys().map(String::as_str).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (lemma, set) in &self.entries {
            for e in Emotion::ALL {
                out.push_str(&format!("{lemma}\t{e}\t{}\n", u8::from(set.contains(&e))));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ScalarNorms {
    pub name: String,
    entries: BTreeMap<String, f64>,
    pub duplicates: usize,
}

impl ScalarNorms {
    /// `lemma<TAB>score` rows.
    pub fn parse(text: &str, name: &str, source: &str) -> Result<Self> {
        let mut norms = ScalarNorms {
            name: name.to_string(),
            ..ScalarNorms::default()
        };
        for (line, cols) in rows(text) {
            if cols.len() != 2 {
                return Err(Error::load(source, line, "expected lemma and score"));
            }
            let score = parse_score(cols[1], source, line)?;
            if norms.entries.insert(lemma_key(cols[0], source, line)?, score).is_some() {
                norms.duplicates += 1;
            }
        }
        Ok(norms)
    }

    pub fn load(path: &Path, name: &str) -> Result<Self> {
        Self::parse(&read(path)?, name, &path.display().to_string())
    }

    pub fn concreteness_sample() -> Self {
        Self::parse(SAMPLE_CONCRETENESS, "concreteness", "concreteness.tsv")
            .expect("shipped norms parse")
    }

    pub fn lookup(&self, lemma: &str) -> Option<f64> {
        self.entries.get(&lemma.to_lowercase()).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_tsv(&self) -> String {
        self.entries.iter().map(|(k, v)| format!("{k}\t{v}\n")).collect()
    }
}

pub fn load_valence(path: &Path) -> Result<ValenceLexicon> {
    ValenceLexicon::load(path)
}

pub fn load_synonyms(path: &Path) -> Result<SynonymTable> {
    SynonymTable::load(path)
}

pub fn load_emotions(path: &Path) -> Result<EmotionLexicon> {
    EmotionLexicon::load(path)
}

pub fn load_norms(path: &Path, name: &str) -> Result<ScalarNorms> {
    ScalarNorms::load(path, name)
}
