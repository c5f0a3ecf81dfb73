//! Extracted triples and their two-rows-per-triple CSV table.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Placeholder for an empty Agent, Event or Target slot.
pub const NONE: &str = "__none__";

pub const CSV_HEADER: [&str; 11] = [
    "triple_id",
    "doc_id",
    "sent_id",
    "relation",
    "source",
    "source_role",
    "target",
    "target_role",
    "event_phrase",
    "is_passive",
    "passive_approx",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Role {
    Agent,
    Event,
    Target,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Agent => "AGENT",
            Role::Event => "EVENT",
            Role::Target => "TARGET",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "agent" | "subject" => Ok(Role::Agent),
            "event" | "verb" => Ok(Role::Event),
            "target" | "object" => Ok(Role::Target),
            other => Err(Error::Usage(format!("unknown role `{other}`"))),
        }
    }
}

impl std::fmt::Display for Role {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Pairwise relation type of a syntactic edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "AGENT_EVENT")]
    AgentEvent,
    #[serde(rename = "EVENT_TARGET")]
    EventTarget,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::AgentEvent => "AGENT_EVENT",
            Relation::EventTarget => "EVENT_TARGET",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "AGENT_EVENT" => Ok(Relation::AgentEvent),
            "EVENT_TARGET" => Ok(Relation::EventTarget),
            other => Err(Error::Usage(format!("unknown relation `{other}`"))),
        }
    }

    pub fn roles(self) -> (Role, Role) {
        match self {
            Relation::AgentEvent => (Role::Agent, Role::Event),
            Relation::EventTarget => (Role::Event, Role::Target),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EventLabel {
    /// Lowercased lemmas of auxiliaries, negation, adverbs, the verb and chained complements.
    pub phrase: String,
    pub head_lemma: String,
}

impl EventLabel {
    pub fn none() -> Self {
        EventLabel {
            phrase: NONE.into(),
            head_lemma: NONE.into(),
        }
    }

    pub fn single(lemma: &str) -> Self {
        EventLabel {
            phrase: lemma.to_lowercase(),
            head_lemma: lemma.to_lowercase(),
        }
    }

    pub fn is_none(&self) -> bool {
        self.head_lemma == NONE
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SvoRecord {
    pub triple_id: u64,
    pub doc_id: String,
    pub sent_id: String,
    pub agent: String,
    pub event: EventLabel,
    pub target: String,
    pub is_passive: bool,
    pub passive_approx: bool,
    /// Index of the head verb in its sentence; 0 when read back from a table.
    pub verb_index: usize,
    /// Surface form of the event phrase, kept for display only.
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub raw_phrase: String,
}

impl SvoRecord {
    pub fn has_agent(&self) -> bool {
        self.agent != NONE
    }

    pub fn has_target(&self) -> bool {
        self.target != NONE
    }

    /// Label of the slot for `role`; events are keyed by head lemma.
    pub fn slot(&self, role: Role) -> &str {
        match role {
            Role::Agent => &self.agent,
            Role::Event => &self.event.head_lemma,
            Role::Target => &self.target,
        }
    }
}

fn flag(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

/// Writes the pairwise table: an AGENT_EVENT and an EVENT_TARGET row per triple.
pub fn write_svo_csv<W: Write>(records: &[SvoRecord], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        let id = r.triple_id.to_string();
        let (p, a) = (flag(r.is_passive), flag(r.passive_approx));
        w.write_record([
            id.as_str(),
            &r.doc_id,
            &r.sent_id,
            "AGENT_EVENT",
            &r.agent,
            "AGENT",
            &r.event.head_lemma,
            "EVENT",
            &r.event.phrase,
            p,
            a,
        ])?;
        w.write_record([
            id.as_str(),
            &r.doc_id,
            &r.sent_id,
            "EVENT_TARGET",
            &r.event.head_lemma,
            "EVENT",
            &r.target,
            "TARGET",
            &r.event.phrase,
            p,
            a,
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn svo_csv_string(records: &[SvoRecord]) -> String {
    let mut buf = Vec::new();
    write_svo_csv(records, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("utf-8 input")
}

/// Reads a table written by [`write_svo_csv`]. Rows of one triple are
/// merged; a triple missing one of its rows gets `__none__` on that side.
pub fn read_svo_csv<R: Read>(input: R) -> Result<Vec<SvoRecord>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header = rdr.headers()?.clone();
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(Error::Data(format!(
            "unexpected SVO table header `{}`",
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut order: Vec<u64> = Vec::new();
    let mut by_id: BTreeMap<u64, SvoRecord> = BTreeMap::new();
    for (n, row) in rdr.records().enumerate() {
        let row = row?;
        let line = n + 2;
        let bad = |msg: String| Error::Data(format!("SVO table row {line}: {msg}"));
        let id: u64 = row[0]
            .parse()
            .map_err(|_| bad(format!("non-integer triple_id `{}`", &row[0])))?;
        let parse_flag = |s: &str| match s {
            "0" => Ok(false),
            "1" => Ok(true),
            other => Err(bad(format!("flag must be 0 or 1, got `{other}`"))),
        };
        let is_passive = parse_flag(&row[9])?;
        let passive_approx = parse_flag(&row[10])?;
        let relation = Relation::parse(&row[3]).map_err(|e| bad(e.to_string()))?;
        let entry = by_id.entry(id).or_insert_with(|| {
            order.push(id);
            SvoRecord {
                triple_id: id,
                doc_id: row[1].to_string(),
                sent_id: row[2].to_string(),
                agent: NONE.into(),
                event: EventLabel::none(),
                target: NONE.into(),
                is_passive,
                passive_approx,
                verb_index: 0,
                raw_phrase: String::new(),
            }
        });
        entry.event.phrase = row[8].to_string();
        match relation {
            Relation::AgentEvent => {
                entry.agent = row[4].to_string();
                entry.event.head_lemma = row[6].to_string();
            }
            Relation::EventTarget => {
                entry.event.head_lemma = row[4].to_string();
                entry.target = row[6].to_string();
            }
        }
    }
    Ok(order
        .into_iter()
        .map(|id| by_id.remove(&id).expect("id recorded"))
        .collect())
}

/// Concatenates tables, shifting each table's ids past the largest id seen so far.
pub fn merge_svo_tables(tables: Vec<Vec<SvoRecord>>) -> Vec<SvoRecord> {
    let mut merged = Vec::new();
    let mut next: u64 = 0;
    for table in tables {
        let offset = next;
        for mut r in table {
            r.triple_id += offset;
            next = next.max(r.triple_id + 1);
            merged.push(r);
        }
    }
    merged
}
