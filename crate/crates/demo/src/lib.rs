//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each export takes plain strings and returns JSON text; the page does the
//! rendering. The `*_json` functions hold the logic so they can be tested
//! natively.

use serde_json::{json, Value};
use teanet::analytics::{graph_node_metrics, rank_sum_test};
use teanet::graph::{build_graph_with, EdgeKind, EventKey, GraphOptions};
use teanet::lexicon::{SynonymTable, ValenceLexicon};
use teanet::{extract_svos, load_corpus, DeprelSchema, Error, Result, Role};
use wasm_bindgen::prelude::*;

fn corpus(conllu: &str, schema: &str) -> Result<teanet::Corpus> {
    load_corpus(conllu, "input", &DeprelSchema::by_name(schema)?)
}

fn event_key(name: &str) -> EventKey {
    if name == "phrase" {
        EventKey::Phrase
    } else {
        EventKey::HeadLemma
    }
}

pub fn extract_json(conllu: &str, schema: &str) -> Result<String> {
    let records = extract_svos(&corpus(conllu, schema)?);
    let rows: Vec<Value> = records
        .iter()
        .map(|r| {
            json!({
                "id": r.triple_id,
                "sentence": r.sent_id,
                "agent": r.agent,
                "event": r.event.head_lemma,
                "phrase": r.event.phrase,
                "target": r.target,
                "passive": r.is_passive,
                "approx": r.passive_approx,
            })
        })
        .collect();
    Ok(Value::Array(rows).to_string())
}

pub fn network_json(conllu: &str, schema: &str, key: &str) -> Result<String> {
    let records = extract_svos(&corpus(conllu, schema)?);
    let syn = SynonymTable::sample();
    let g = build_graph_with(
        &records,
        &ValenceLexicon::vader(),
        Some(&syn),
        GraphOptions { event_key: event_key(key) },
    );
    let mut nodes = Vec::new();
    for role in [Role::Agent, Role::Event, Role::Target] {
        for m in graph_node_metrics(&g, role).rows {
            let polarity = g.nodes[&teanet::graph::NodeKey::new(m.label.as_str(), role)];
            nodes.push(json!({
                "label": m.label,
                "role": role.as_str(),
                "polarity": polarity.as_str(),
                "k": m.k,
                "f": m.f,
                "ri": m.ri,
            }));
        }
    }
    let edges: Vec<Value> = g
        .edges
        .iter()
        .map(|(k, d)| {
            json!({
                "a": [k.a.role.as_str(), k.a.label],
                "b": [k.b.role.as_str(), k.b.label],
                "synonym": k.kind == EdgeKind::Synonym,
                "weight": d.weight,
            })
        })
        .collect();
    Ok(json!({ "nodes": nodes, "edges": edges }).to_string())
}

fn numbers(text: &str) -> Result<Vec<f64>> {
    text.split(|c: char| c.is_whitespace() || c == ',' || c == ';')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|_| Error::Usage(format!("`{t}` is not a number"))))
        .collect()
}

pub fn rank_sum_json(a: &str, b: &str) -> Result<String> {
    let r = rank_sum_test(&numbers(a)?, &numbers(b)?)?;
    Ok(json!({
        "u": r.u,
        "p": r.p,
        "method": format!("{:?}", r.method).to_lowercase(),
        "n_a": r.n_a,
        "n_b": r.n_b,
    })
    .to_string())
}

fn js(r: Result<String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

/// The bundled benchmark parses, used as the page's sample input.
#[wasm_bindgen(js_name = sampleConllu)]
pub fn sample_conllu() -> String {
    teanet::BENCH_CONLLU.to_string()
}

#[wasm_bindgen]
pub fn extract(conllu: &str, schema: &str) -> Result<String, JsError> {
    js(extract_json(conllu, schema))
}

#[wasm_bindgen]
pub fn network(conllu: &str, schema: &str, event_key: &str) -> Result<String, JsError> {
    js(network_json(conllu, schema, event_key))
}

#[wasm_bindgen(js_name = rankSum)]
pub fn rank_sum(a: &str, b: &str) -> Result<String, JsError> {
    js(rank_sum_json(a, b))
}
