use std::collections::BTreeMap;

use serde::Serialize;

use crate::graph::{build_graph_with, EdgeKind, EventKey, GraphOptions, NodeKey, TeaGraph};
use crate::lexicon::ValenceLexicon;
use crate::record::{Relation, Role, SvoRecord};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodeMetrics {
    pub label: String,
    pub role: Role,
    /// Distinct cross-role syntactic neighbours.
    pub k: u64,
    /// `K_i / Σ_{j≠i} K_j` over same-role nodes; `None` when undefined.
    pub k_star: Option<f64>,
    /// Occurrences: summed weight of the node's syntactic edges.
    pub f: u64,
    /// Repetitiveness index `F / K`.
    pub ri: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct MetricsTable {
    pub rows: Vec<NodeMetrics>,
}

impl MetricsTable {
    pub fn get(&self, label: &str, role: Role) -> Option<&NodeMetrics> {
        self.rows.iter().find(|r| r.label == label && r.role == role)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("label\trole\tK\tK_star\tF\tRI\n");
        for r in &self.rows {
            let k_star = r.k_star.map_or_else(|| "NA".to_string(), |v| format!("{v:.6}"));
            out.push_str(&format!("{}\t{}\t{}\t{}\t{}\t{:.6}\n", r.label, r.role, r.k, k_star, r.f, r.ri));
        }
        out
    }
}

/// K, F and RI for every `role` node of `graph`, sorted by K descending then label.
pub fn graph_node_metrics(graph: &TeaGraph, role: Role) -> MetricsTable {
    let mut acc: BTreeMap<&NodeKey, (u64, u64)> = BTreeMap::new();
    for (key, data) in graph.syntactic_edges() {
        for node in [&key.a, &key.b] {
            if node.role == role {
                let e = acc.entry(node).or_default();
                e.0 += 1;
                e.1 += data.weight;
            }
        }
    }
    let mut rows: Vec<NodeMetrics> = acc
        .into_iter()
        .map(|(node, (k, f))| NodeMetrics {
            label: node.label.clone(),
            role,
            k,
            k_star: None,
            f,
            ri: f as f64 / k as f64,
        })
        .collect();
    rows.sort_by(|x, y| y.k.cmp(&x.k).then_with(|| x.label.cmp(&y.label)));
    MetricsTable { rows }
}

pub fn node_metrics(records: &[SvoRecord], role: Role, event_key: EventKey) -> MetricsTable {
    let graph = build_graph_with(records, &ValenceLexicon::default(), None, GraphOptions { event_key });
    graph_node_metrics(&graph, role)
}

/// Fills `k_star` with `K_i / Σ_{j≠i} K_j`. Left `None` when the other
/// nodes sum to zero, which happens when the role has a single node.
pub fn relative_degree(mut table: MetricsTable) -> MetricsTable {
    let mut totals: BTreeMap<Role, u64> = BTreeMap::new();
    for r in &table.rows {
        *totals.entry(r.role).or_default() += r.k;
    }
    for r in &mut table.rows {
        let others = totals[&r.role] - r.k;
        r.k_star = (others > 0).then(|| r.k as f64 / others as f64);
    }
    table
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeWeight {
    pub source: String,
    pub target: String,
    pub relation: Relation,
    pub subcorpus: String,
    pub f: u64,
    pub nw: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct EdgeWeightTable {
    pub rows: Vec<EdgeWeight>,
}

impl EdgeWeightTable {
    pub fn get(&self, source: &str, target: &str) -> Option<&EdgeWeight> {
        self.rows.iter().find(|r| r.source == source && r.target == target)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("source\ttarget\trelation\tsubcorpus\tF\tNW\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{:.10}\n",
                r.source, r.target, r.relation.as_str(), r.subcorpus, r.f, r.nw
            ));
        }
        out
    }
}

/// `NW_e = F_e / Σ F` over the `relation` edges of one sub-corpus, sorted by
/// F descending then endpoints.
pub fn normalized_edge_weights(
    records: &[SvoRecord],
    relation: Relation,
    subcorpus: &str,
    event_key: EventKey,
) -> EdgeWeightTable {
    let graph = build_graph_with(records, &ValenceLexicon::default(), None, GraphOptions { event_key });
    graph_edge_weights(&graph, relation, subcorpus)
}

pub fn graph_edge_weights(graph: &TeaGraph, relation: Relation, subcorpus: &str) -> EdgeWeightTable {
    let edges: Vec<_> = graph
        .edges
        .iter()
        .filter(|(k, _)| k.kind == EdgeKind::Syntactic && k.relation() == Some(relation))
        .collect();
    let total: u64 = edges.iter().map(|(_, d)| d.weight).sum();
    let mut rows: Vec<EdgeWeight> = edges
        .into_iter()
        .map(|(k, d)| EdgeWeight {
            source: k.a.label.clone(),
            target: k.b.label.clone(),
            relation,
            subcorpus: subcorpus.to_string(),
            f: d.weight,
            nw: d.weight as f64 / total as f64,
        })
        .collect();
    rows.sort_by(|x, y| {
        y.f.cmp(&x.f)
            .then_with(|| x.source.cmp(&y.source))
            .then_with(|| x.target.cmp(&y.target))
    });
    EdgeWeightTable { rows }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Prominence {
    pub source: String,
    pub target: String,
    pub relation: Relation,
    pub nw_a: f64,
    pub nw_b: f64,
    /// `NW_a − NW_b`.
    pub p: f64,
}

/// `P_e = NW_{e,A} − NW_{e,B}` for every edge in either table, an absent
/// edge counting as 0. Sorted by P descending, ties by endpoints.
pub fn prominence(a: &EdgeWeightTable, b: &EdgeWeightTable) -> Vec<Prominence> {
    type Key = (String, String, Relation);
    let mut union: BTreeMap<Key, (f64, f64)> = BTreeMap::new();
    for r in &a.rows {
        union.entry((r.source.clone(), r.target.clone(), r.relation)).or_default().0 += r.nw;
    }
    for r in &b.rows {
        union.entry((r.source.clone(), r.target.clone(), r.relation)).or_default().1 += r.nw;
    }
    let mut out: Vec<Prominence> = union
        .into_iter()
        .map(|((source, target, relation), (nw_a, nw_b))| Prominence {
            source,
            target,
            relation,
            nw_a,
            nw_b,
            p: nw_a - nw_b,
        })
        .collect();
    out.sort_by(|x, y| {
        y.p.total_cmp(&x.p)
            .then_with(|| x.source.cmp(&y.source))
            .then_with(|| x.target.cmp(&y.target))
    });
    out
}
