use std::collections::BTreeMap;

use serde::Serialize;

use super::metrics::{normalized_edge_weights, EdgeWeightTable};
use crate::graph::{EventKey, NodeKey};
use crate::record::{Relation, Role, SvoRecord};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KendallResult {
    /// Kendall's τ-b; `None` when fewer than two pairs or a side is constant.
    pub tau: Option<f64>,
    /// Two-sided p-value from the tie-corrected normal approximation, in (0, 1].
    pub p: Option<f64>,
    pub n: usize,
}

/// Sizes of runs of equal values in a sorted slice.
fn tie_groups(sorted: &[f64]) -> Vec<u64> {
    sorted
        .chunk_by(|a, b| a == b)
        .map(|g| g.len() as u64)
        .filter(|&t| t > 1)
        .collect()
}

/// Counts inversions while merge-sorting `v`.
fn count_swaps(v: &mut [f64], buf: &mut Vec<f64>) -> u64 {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut swaps = count_swaps(&mut v[..mid], buf) + count_swaps(&mut v[mid..], buf);
    buf.clear();
    let (mut i, mut j) = (0, mid);
    while i < mid && j < n {
        if v[j] < v[i] {
            swaps += (mid - i) as u64;
            buf.push(v[j]);
            j += 1;
        } else {
            buf.push(v[i]);
            i += 1;
        }
    }
    buf.extend_from_slice(&v[i..mid]);
    buf.extend_from_slice(&v[j..n]);
    v.copy_from_slice(buf);
    swaps
}

/// Kendall's τ-b in O(n log n) with the tie-corrected variance of the
/// statistic `S = n_c − n_d` for the p-value.
pub fn kendall_tau_b(x: &[f64], y: &[f64]) -> KendallResult {
    assert_eq!(x.len(), y.len(), "paired samples");
    let n = x.len();
    let undefined = KendallResult { tau: None, p: None, n };
    if n < 2 {
        return undefined;
    }
    let mut pairs: Vec<(f64, f64)> = x.iter().copied().zip(y.iter().copied()).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));

    let xs: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let x_ties = tie_groups(&xs);
    let joint_ties: u64 = pairs
        .chunk_by(|a, b| a == b)
        .map(|g| g.len() as u64)
        .map(|t| t * (t - 1) / 2)
        .sum();
    let mut ys: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    let swaps = count_swaps(&mut ys, &mut Vec::with_capacity(n));
    let y_ties = tie_groups(&ys);

    let pairs_of = |g: &[u64]| g.iter().map(|t| t * (t - 1) / 2).sum::<u64>();
    let n0 = (n as u64) * (n as u64 - 1) / 2;
    let (n1, n2) = (pairs_of(&x_ties), pairs_of(&y_ties));
    let s = n0 as f64 - n1 as f64 - n2 as f64 + joint_ties as f64 - 2.0 * swaps as f64;
    let denom = ((n0 - n1) as f64 * (n0 - n2) as f64).sqrt();
    if denom == 0.0 {
        return undefined;
    }
    let tau = (s / denom).clamp(-1.0, 1.0);

    let nf = n as f64;
    let sum = |g: &[u64], f: &dyn Fn(f64) -> f64| g.iter().map(|&t| f(t as f64)).sum::<f64>();
    let v0 = nf * (nf - 1.0) * (2.0 * nf + 5.0);
    let vt = sum(&x_ties, &|t| t * (t - 1.0) * (2.0 * t + 5.0));
    let vu = sum(&y_ties, &|t| t * (t - 1.0) * (2.0 * t + 5.0));
    let v1 = sum(&x_ties, &|t| t * (t - 1.0)) * sum(&y_ties, &|t| t * (t - 1.0)) / (2.0 * nf * (nf - 1.0));
    let v2 = if n > 2 {
        sum(&x_ties, &|t| t * (t - 1.0) * (t - 2.0)) * sum(&y_ties, &|t| t * (t - 1.0) * (t - 2.0))
            / (9.0 * nf * (nf - 1.0) * (nf - 2.0))
    } else {
        0.0
    };
    let var = (v0 - vt - vu) / 18.0 + v1 + v2;
    let p = if var > 0.0 {
        let z = s / var.sqrt();
        statrs::function::erf::erfc(z.abs() / std::f64::consts::SQRT_2)
    } else {
        1.0
    };
    KendallResult {
        tau: Some(tau),
        p: Some(p.clamp(f64::MIN_POSITIVE, 1.0)),
        n,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharedEdge {
    pub source: String,
    pub target: String,
    pub nw_a: f64,
    pub nw_b: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharedTau {
    pub result: KendallResult,
    pub relation: Relation,
    pub edges: Vec<SharedEdge>,
}

/// Relation whose edges are compared for an anchor of the given role:
/// Agent-Event for Agent and Event anchors, Event-Target for Target anchors.
pub fn anchor_relation(role: Role) -> Relation {
    match role {
        Role::Agent | Role::Event => Relation::AgentEvent,
        Role::Target => Relation::EventTarget,
    }
}

fn incident(table: &EdgeWeightTable, anchor: &NodeKey, relation: Relation) -> BTreeMap<(String, String), f64> {
    let (src_role, _) = relation.roles();
    table
        .rows
        .iter()
        .filter(|r| {
            if anchor.role == src_role {
                r.source == anchor.label
            } else {
                r.target == anchor.label
            }
        })
        .map(|r| ((r.source.clone(), r.target.clone()), r.nw))
        .collect()
}

/// Kendall's τ-b between the normalized weights, in corpus A and corpus B,
/// of the anchor's edges present in both corpora.
pub fn kendall_tau_shared(a: &[SvoRecord], b: &[SvoRecord], anchor: &NodeKey, event_key: EventKey) -> SharedTau {
    let relation = anchor_relation(anchor.role);
    let nw_a = incident(&normalized_edge_weights(a, relation, "a", event_key), anchor, relation);
    let nw_b = incident(&normalized_edge_weights(b, relation, "b", event_key), anchor, relation);
    let edges: Vec<SharedEdge> = nw_a
        .iter()
        .filter_map(|(k, &wa)| {
            nw_b.get(k).map(|&wb| SharedEdge {
                source: k.0.clone(),
                target: k.1.clone(),
                nw_a: wa,
                nw_b: wb,
            })
        })
        .collect();
    let x: Vec<f64> = edges.iter().map(|e| e.nw_a).collect();
    let y: Vec<f64> = edges.iter().map(|e| e.nw_b).collect();
    SharedTau {
        result: kendall_tau_b(&x, &y),
        relation,
        edges,
    }
}
