//! Tripartite Agent-Event-Target networks built from extracted records.
//!
//! Nodes are identified by `(label, role)`, so "uncle" as an Agent and
//! "uncle" as a Target are different nodes. Syntactic edges join Agents to
//! Events and Events to Targets and count how often each pair occurred;
//! optional synonym edges join same-role nodes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::BufRead;

use quick_xml::events::Event as XmlEvent;
use quick_xml::Reader;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lexicon::{Polarity, SynonymTable, ValenceLexicon};
use crate::record::{Relation, Role, SvoRecord, NONE};

/// Which event label becomes the Event node.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum EventKey {
    #[default]
    HeadLemma,
    Phrase,
}

impl EventKey {
    pub fn label(self, record: &SvoRecord) -> &str {
        match self {
            EventKey::HeadLemma => &record.event.head_lemma,
            EventKey::Phrase => &record.event.phrase,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
/// Orders by role first, so an edge's lower endpoint is its Agent-side node.
pub struct NodeKey {
    pub role: Role,
    pub label: String,
}

impl NodeKey {
    pub fn new(label: impl Into<String>, role: Role) -> Self {
        NodeKey {
            label: label.into(),
            role,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EdgeKind {
    Syntactic,
    Synonym,
}

impl EdgeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeKind::Syntactic => "SYNTACTIC",
            EdgeKind::Synonym => "SYNONYM",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        match s {
            "SYNTACTIC" => Ok(EdgeKind::Syntactic),
            "SYNONYM" => Ok(EdgeKind::Synonym),
            other => Err(Error::Data(format!("unknown edge kind `{other}`"))),
        }
    }
}

/// Voice breakdown of a syntactic edge's occurrences.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VoiceCounts {
    pub active: u64,
    pub passive_agent: u64,
    pub passive_approx: u64,
}

impl VoiceCounts {
    pub fn total(&self) -> u64 {
        self.active + self.passive_agent + self.passive_approx
    }

    fn record(&mut self, r: &SvoRecord) {
        match (r.is_passive, r.passive_approx) {
            (false, _) => self.active += 1,
            (true, false) => self.passive_agent += 1,
            (true, true) => self.passive_approx += 1,
        }
    }
}

/// Undirected edge; endpoints are stored with `a < b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeKey {
    pub a: NodeKey,
    pub b: NodeKey,
    pub kind: EdgeKind,
}

impl EdgeKey {
    pub fn new(x: NodeKey, y: NodeKey, kind: EdgeKind) -> Self {
        if x <= y {
            EdgeKey { a: x, b: y, kind }
        } else {
            EdgeKey { a: y, b: x, kind }
        }
    }

    pub fn other(&self, node: &NodeKey) -> &NodeKey {
        if &self.a == node {
            &self.b
        } else {
            &self.a
        }
    }

    /// Relation type of a syntactic edge between adjacent roles.
    pub fn relation(&self) -> Option<Relation> {
        match (self.kind, self.a.role, self.b.role) {
            (EdgeKind::Syntactic, Role::Agent, Role::Event) => Some(Relation::AgentEvent),
            (EdgeKind::Syntactic, Role::Event, Role::Target) => Some(Relation::EventTarget),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EdgeData {
    pub weight: u64,
    pub counts: VoiceCounts,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TeaGraph {
    pub nodes: BTreeMap<NodeKey, Polarity>,
    pub edges: BTreeMap<EdgeKey, EdgeData>,
    pub provenance: Vec<String>,
}

impl TeaGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn syntactic_edges(&self) -> impl Iterator<Item = (&EdgeKey, &EdgeData)> + '_ {
        self.edges.iter().filter(|(k, _)| k.kind == EdgeKind::Syntactic)
    }

    /// Edges touching `node`, in key order.
    pub fn incident<'a>(&'a self, node: &'a NodeKey) -> impl Iterator<Item = (&'a EdgeKey, &'a EdgeData)> + 'a {
        self.edges.iter().filter(move |(k, _)| &k.a == node || &k.b == node)
    }

    pub fn edge(&self, x: &NodeKey, y: &NodeKey, kind: EdgeKind) -> Option<&EdgeData> {
        self.edges.get(&EdgeKey::new(x.clone(), y.clone(), kind))
    }

    /// Number of distinct nodes joined to `node` by syntactic edges.
    pub fn degree(&self, node: &NodeKey) -> usize {
        self.incident(node).filter(|(k, _)| k.kind == EdgeKind::Syntactic).count()
    }

    /// Adds another graph's nodes and edges, summing syntactic counts.
    pub fn merge(&mut self, other: &TeaGraph) {
        for (k, p) in &other.nodes {
            self.nodes.insert(k.clone(), *p);
        }
        for (k, d) in &other.edges {
            let e = self.edges.entry(k.clone()).or_default();
            match k.kind {
                EdgeKind::Syntactic => {
                    e.weight += d.weight;
                    e.counts.active += d.counts.active;
                    e.counts.passive_agent += d.counts.passive_agent;
                    e.counts.passive_approx += d.counts.passive_approx;
                }
                EdgeKind::Synonym => e.weight = 1,
            }
        }
        self.provenance.extend(other.provenance.iter().cloned());
    }

    /// Problems found by the almost-tripartite scan: syntactic edges outside
    /// AGENT-EVENT/EVENT-TARGET, cross-role synonym edges, self-loops, weight
    /// not matching voice counts, and edges to unknown nodes.
    pub fn structural_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (k, d) in &self.edges {
            if k.a == k.b {
                out.push(format!("self-loop on {}|{}", k.a.label, k.a.role));
            }
            if !self.nodes.contains_key(&k.a) || !self.nodes.contains_key(&k.b) {
                out.push(format!("dangling edge {}-{}", k.a.label, k.b.label));
            }
            match k.kind {
                EdgeKind::Syntactic => {
                    if k.relation().is_none() {
                        out.push(format!("syntactic edge {}-{} joins {} and {}", k.a.label, k.b.label, k.a.role, k.b.role));
                    }
                    if d.weight != d.counts.total() || d.weight == 0 {
                        out.push(format!("edge {}-{} weight {} vs counts {:?}", k.a.label, k.b.label, d.weight, d.counts));
                    }
                }
                EdgeKind::Synonym => {
                    if k.a.role != k.b.role {
                        out.push(format!("cross-role synonym edge {}-{}", k.a.label, k.b.label));
                    }
                    if d.weight != 1 {
                        out.push(format!("synonym edge {}-{} weight {}", k.a.label, k.b.label, d.weight));
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct GraphOptions {
    pub event_key: EventKey,
}

/// Builds the network. `__none__` slots contribute no node and no edge.
pub fn build_graph(records: &[SvoRecord], valence: &ValenceLexicon, synonyms: Option<&SynonymTable>) -> TeaGraph {
    build_graph_with(records, valence, synonyms, GraphOptions::default())
}

pub fn build_graph_with(
    records: &[SvoRecord],
    valence: &ValenceLexicon,
    synonyms: Option<&SynonymTable>,
    options: GraphOptions,
) -> TeaGraph {
    let mut g = TeaGraph::default();
    let add_node = |g: &mut TeaGraph, label: &str, role: Role| {
        let key = NodeKey::new(label, role);
        g.nodes.entry(key.clone()).or_insert_with(|| valence.classify(label));
        key
    };
    for r in records {
        let event = options.event_key.label(r);
        if event == NONE || r.event.is_none() {
            continue;
        }
        let e = add_node(&mut g, event, Role::Event);
        for (label, role) in [(&r.agent, Role::Agent), (&r.target, Role::Target)] {
            if label == NONE {
                continue;
            }
            let n = add_node(&mut g, label, role);
            let data = g.edges.entry(EdgeKey::new(n, e.clone(), EdgeKind::Syntactic)).or_default();
            data.weight += 1;
            data.counts.record(r);
        }
    }
    let mut seen = std::collections::BTreeSet::new();
    for r in records {
        if seen.insert(r.doc_id.as_str()) {
            g.provenance.push(r.doc_id.clone());
        }
    }
    if let Some(tab) = synonyms {
        add_synonym_edges(&mut g, tab);
    }
    g
}

fn add_synonym_edges(g: &mut TeaGraph, tab: &SynonymTable) {
    let keys: Vec<NodeKey> = g.nodes.keys().cloned().collect();
    for (i, x) in keys.iter().enumerate() {
        for y in &keys[i + 1..] {
            if x.role == y.role && tab.are_synonymous(&x.label, &y.label) {
                g.edges.insert(
                    EdgeKey::new(x.clone(), y.clone(), EdgeKind::Synonym),
                    EdgeData { weight: 1, counts: VoiceCounts::default() },
                );
            }
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Voice {
    Active,
    Passive,
    #[default]
    Any,
}

impl std::str::FromStr for Voice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "active" => Ok(Voice::Active),
            "passive" => Ok(Voice::Passive),
            "any" => Ok(Voice::Any),
            other => Err(Error::Usage(format!("unknown voice `{other}`"))),
        }
    }
}

/// Triple-level constraints; `None` fields match anything.
#[derive(Debug, Clone, Default)]
pub struct RecordFilter {
    pub agent: Option<String>,
    /// Matches either the head lemma or the full phrase.
    pub event: Option<String>,
    pub target: Option<String>,
    pub voice: Voice,
    pub exclude_approx: bool,
}

impl RecordFilter {
    pub fn matches(&self, r: &SvoRecord) -> bool {
        let eq = |want: &Option<String>, got: &str| want.as_deref().is_none_or(|w| w.eq_ignore_ascii_case(got));
        eq(&self.agent, &r.agent)
            && eq(&self.target, &r.target)
            && (eq(&self.event, &r.event.head_lemma) || eq(&self.event, &r.event.phrase))
            && match self.voice {
                Voice::Active => !r.is_passive,
                Voice::Passive => r.is_passive,
                Voice::Any => true,
            }
            && !(self.exclude_approx && r.passive_approx)
    }
}

pub fn filter_records(records: &[SvoRecord], filter: &RecordFilter) -> Vec<SvoRecord> {
    records.iter().filter(|r| filter.matches(r)).cloned().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    GraphMl,
    Json,
    EdgeList,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "graphml" => Ok(ExportFormat::GraphMl),
            "json" => Ok(ExportFormat::Json),
            "edgelist" | "tsv" => Ok(ExportFormat::EdgeList),
            other => Err(Error::Usage(format!("unknown export format `{other}`"))),
        }
    }
}

pub fn export_graph(graph: &TeaGraph, format: ExportFormat) -> String {
    match format {
        ExportFormat::GraphMl => to_graphml(graph),
        ExportFormat::Json => to_json(graph),
        ExportFormat::EdgeList => to_edgelist(graph),
    }
}

#[derive(Serialize, Deserialize)]
struct JsonNode {
    label: String,
    role: Role,
    polarity: Polarity,
}

#[derive(Serialize, Deserialize)]
struct JsonEdge {
    source_label: String,
    source_role: Role,
    target_label: String,
    target_role: Role,
    kind: EdgeKind,
    weight: u64,
    active: u64,
    passive_agent: u64,
    passive_approx: u64,
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    #[serde(default)]
    provenance: Vec<String>,
    nodes: Vec<JsonNode>,
    edges: Vec<JsonEdge>,
}

pub fn to_json(graph: &TeaGraph) -> String {
    let doc = JsonGraph {
        provenance: graph.provenance.clone(),
        nodes: graph
            .nodes
            .iter()
            .map(|(k, p)| JsonNode { label: k.label.clone(), role: k.role, polarity: *p })
            .collect(),
        edges: graph
            .edges
            .iter()
            .map(|(k, d)| JsonEdge {
                source_label: k.a.label.clone(),
                source_role: k.a.role,
                target_label: k.b.label.clone(),
                target_role: k.b.role,
                kind: k.kind,
                weight: d.weight,
                active: d.counts.active,
                passive_agent: d.counts.passive_agent,
                passive_approx: d.counts.passive_approx,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("graph serializes") + "\n"
}

pub fn from_json(text: &str) -> Result<TeaGraph> {
    let doc: JsonGraph = serde_json::from_str(text)?;
    let mut g = TeaGraph { provenance: doc.provenance, ..TeaGraph::default() };
    for n in doc.nodes {
        g.nodes.insert(NodeKey::new(n.label, n.role), n.polarity);
    }
    for e in doc.edges {
        let key = EdgeKey::new(NodeKey::new(e.source_label, e.source_role), NodeKey::new(e.target_label, e.target_role), e.kind);
        let counts = VoiceCounts { active: e.active, passive_agent: e.passive_agent, passive_approx: e.passive_approx };
        g.edges.insert(key, EdgeData { weight: e.weight, counts });
    }
    Ok(g)
}

fn xml_escape(s: &str) -> String {
    quick_xml::escape::escape(s).into_owned()
}

pub fn to_graphml(graph: &TeaGraph) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n");
    for (id, on, ty) in [
        ("provenance", "graph", "string"),
        ("label", "node", "string"),
        ("role", "node", "string"),
        ("polarity", "node", "string"),
        ("kind", "edge", "string"),
        ("weight", "edge", "long"),
        ("active", "edge", "long"),
        ("passive_agent", "edge", "long"),
        ("passive_approx", "edge", "long"),
    ] {
        let _ = writeln!(out, "  <key id=\"{id}\" for=\"{on}\" attr.name=\"{id}\" attr.type=\"{ty}\"/>");
    }
    out.push_str("  <graph id=\"tea\" edgedefault=\"undirected\">\n");
    let _ = writeln!(out, "    <data key=\"provenance\">{}</data>", xml_escape(&graph.provenance.join("\t")));
    let ids: BTreeMap<&NodeKey, usize> = graph.nodes.keys().enumerate().map(|(i, k)| (k, i)).collect();
    for (k, p) in &graph.nodes {
        let _ = writeln!(
            out,
            "    <node id=\"n{}\"><data key=\"label\">{}</data><data key=\"role\">{}</data><data key=\"polarity\">{}</data></node>",
            ids[k],
            xml_escape(&k.label),
            k.role,
            p
        );
    }
    for (i, (k, d)) in graph.edges.iter().enumerate() {
        let _ = writeln!(
            out,
            "    <edge id=\"e{i}\" source=\"n{}\" target=\"n{}\"><data key=\"kind\">{}</data><data key=\"weight\">{}</data><data key=\"active\">{}</data><data key=\"passive_agent\">{}</data><data key=\"passive_approx\">{}</data></edge>",
            ids[&k.a],
            ids[&k.b],
            k.kind.as_str(),
            d.weight,
            d.counts.active,
            d.counts.passive_agent,
            d.counts.passive_approx
        );
    }
    out.push_str("  </graph>\n</graphml>\n");
    out
}

fn attr(e: &quick_xml::events::BytesStart<'_>, name: &[u8]) -> Result<Option<String>> {
    for a in e.attributes() {
        let a = a.map_err(|err| Error::Xml(err.to_string()))?;
        if a.key.as_ref() == name {
            let v = a.unescape_value().map_err(|err| Error::Xml(err.to_string()))?;
            return Ok(Some(v.into_owned()));
        }
    }
    Ok(None)
}

/// Reads GraphML written by [`to_graphml`].
pub fn from_graphml(text: &str) -> Result<TeaGraph> {
    #[derive(Default)]
    struct Element {
        id: String,
        source: String,
        target: String,
        data: BTreeMap<String, String>,
    }
    let mut reader = Reader::from_reader(text.as_bytes());
    let mut buf = Vec::new();
    let mut nodes: BTreeMap<String, Element> = BTreeMap::new();
    let mut edges: Vec<Element> = Vec::new();
    let mut graph_data: BTreeMap<String, String> = BTreeMap::new();
    let mut current: Option<(bool, Element)> = None;
    let mut data_key: Option<String> = None;
    let mut data_text = String::new();
    loop {
        let event = reader.read_event_into(&mut buf).map_err(|e| Error::Xml(e.to_string()))?;
        match event {
            XmlEvent::Start(e) | XmlEvent::Empty(e) if matches!(e.name().as_ref(), b"node" | b"edge") => {
                let is_node = e.name().as_ref() == b"node";
                let el = Element {
                    id: attr(&e, b"id")?.unwrap_or_default(),
                    source: attr(&e, b"source")?.unwrap_or_default(),
                    target: attr(&e, b"target")?.unwrap_or_default(),
                    data: BTreeMap::new(),
                };
                current = Some((is_node, el));
            }
            XmlEvent::Start(e) if e.name().as_ref() == b"data" => {
                data_key = attr(&e, b"key")?;
                data_text.clear();
            }
            XmlEvent::Text(t) if data_key.is_some() => {
                data_text.push_str(&t.unescape().map_err(|e| Error::Xml(e.to_string()))?);
            }
            XmlEvent::End(e) if e.name().as_ref() == b"data" => {
                if let Some(k) = data_key.take() {
                    let v = std::mem::take(&mut data_text);
                    match current.as_mut() {
                        Some((_, el)) => {
                            el.data.insert(k, v);
                        }
                        None => {
                            graph_data.insert(k, v);
                        }
                    }
                }
            }
            XmlEvent::End(e) if matches!(e.name().as_ref(), b"node" | b"edge") => {
                if let Some((is_node, el)) = current.take() {
                    if is_node {
                        nodes.insert(el.id.clone(), el);
                    } else {
                        edges.push(el);
                    }
                }
            }
            XmlEvent::Eof => break,
            _ => {}
        }
        buf.clear();
    }

    let field = |el: &Element, k: &str| -> Result<String> {
        el.data
            .get(k)
            .cloned()
            .ok_or_else(|| Error::Xml(format!("element `{}` lacks `{k}`", el.id)))
    };
    let number = |el: &Element, k: &str| -> Result<u64> {
        field(el, k)?.parse().map_err(|_| Error::Xml(format!("element `{}`: `{k}` is not an integer", el.id)))
    };
    let mut g = TeaGraph::default();
    if let Some(p) = graph_data.get("provenance").filter(|p| !p.is_empty()) {
        g.provenance = p.split('\t').map(str::to_string).collect();
    }
    let mut keys: BTreeMap<String, NodeKey> = BTreeMap::new();
    for (id, el) in &nodes {
        let key = NodeKey::new(field(el, "label")?, Role::parse(&field(el, "role")?).map_err(|e| Error::Xml(e.to_string()))?);
        let polarity = field(el, "polarity")?.parse().map_err(|e: Error| Error::Xml(e.to_string()))?;
        g.nodes.insert(key.clone(), polarity);
        keys.insert(id.clone(), key);
    }
    for el in &edges {
        let end = |id: &str| keys.get(id).cloned().ok_or_else(|| Error::Xml(format!("edge refers to unknown node `{id}`")));
        let key = EdgeKey::new(end(&el.source)?, end(&el.target)?, EdgeKind::parse(&field(el, "kind")?)?);
        let counts = VoiceCounts {
            active: number(el, "active")?,
            passive_agent: number(el, "passive_agent")?,
            passive_approx: number(el, "passive_approx")?,
        };
        g.edges.insert(key, EdgeData { weight: number(el, "weight")?, counts });
    }
    Ok(g)
}

pub fn to_edgelist(graph: &TeaGraph) -> String {
    let mut out = String::from("source_label\tsource_role\ttarget_label\ttarget_role\tkind\tweight\n");
    for (k, d) in &graph.edges {
        let _ = writeln!(out, "{}\t{}\t{}\t{}\t{}\t{}", k.a.label, k.a.role, k.b.label, k.b.role, k.kind.as_str(), d.weight);
    }
    out
}

/// One line per triple: its id followed by `ROLE:label` for every non-empty member.
pub fn export_hypergraph(records: &[SvoRecord], event_key: EventKey) -> String {
    let mut out = String::new();
    for r in records {
        let _ = write!(out, "{}", r.triple_id);
        for (role, label) in [(Role::Agent, r.agent.as_str()), (Role::Event, event_key.label(r)), (Role::Target, r.target.as_str())] {
            if label != NONE {
                let _ = write!(out, "\t{role}:{label}");
            }
        }
        out.push('\n');
    }
    out
}

/// Parses [`export_hypergraph`] output back into (triple id, members).
pub fn read_hypergraph<R: BufRead>(input: R) -> Result<Vec<(u64, Vec<NodeKey>)>> {
    let mut out = Vec::new();
    for (n, line) in input.lines().enumerate() {
        let line = line?;
        let mut cols = line.split('\t');
        let id = cols
            .next()
            .and_then(|c| c.parse().ok())
            .ok_or_else(|| Error::Data(format!("hypergraph line {}: bad triple id", n + 1)))?;
        let members = cols
            .map(|c| {
                let (role, label) = c
                    .split_once(':')
                    .ok_or_else(|| Error::Data(format!("hypergraph line {}: bad member `{c}`", n + 1)))?;
                Ok(NodeKey::new(label, Role::parse(role)?))
            })
            .collect::<Result<Vec<_>>>()?;
        out.push((id, members));
    }
    Ok(out)
}
