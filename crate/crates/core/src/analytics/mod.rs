//! Network metrics and corpus comparison statistics.
//!
//! * degree `K`, relative degree `K*`, frequency `F` and repetitiveness
//!   `RI = F / K` per node;
//! * normalized edge weights `NW` per relation and sub-corpus, and the
//!   prominence `P = NW_A − NW_B` of edges between two sub-corpora;
//! * Kendall's τ-b over the edges two corpora share around an anchor node;
//! * emotion z-scores against a seeded random baseline;
//! * per-lemma norm joins and the Mann-Whitney rank-sum test.

mod emotion;
mod kendall;
mod metrics;
mod norms;
mod ranksum;

pub use emotion::{emotion_zscores, EmotionProfile, EmotionScore, DEFAULT_SAMPLES, MIN_SAMPLES, Z_CRITICAL};
pub use kendall::{anchor_relation, kendall_tau_b, kendall_tau_shared, KendallResult, SharedEdge, SharedTau};
pub use metrics::{
    graph_edge_weights, graph_node_metrics, node_metrics, normalized_edge_weights, prominence, relative_degree,
    EdgeWeight, EdgeWeightTable, MetricsTable, NodeMetrics, Prominence,
};
pub use norms::{join_norms, NormJoin, NormMode};
pub use ranksum::{rank_sum_test, RankSumMethod, RankSumResult, EXACT_LIMIT};

pub use crate::record::merge_svo_tables;
