//! Naive reference implementations and random input generators shared by
//! the integration tests and the acceptance suite. Everything here is
//! written for clarity rather than speed and avoids the library's own code
//! paths for the quantity being checked.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::IndexedRandom;
use rand::Rng;
use teanet::conllu::Sentence;
use teanet::record::{EventLabel, Relation, Role, SvoRecord, NONE};
use teanet::DeprelSchema;

const AGENTS: [&str; 6] = ["i", "you", "she", "uncle", "police", "people"];
const EVENTS: [&str; 6] = ["think", "say", "hurt", "help", "see", "go"];
const TARGETS: [&str; 6] = ["i", "people", "it", "money", "uncle", "house"];

/// Random records over small vocabularies so that pairs repeat.
pub fn random_records<R: Rng>(rng: &mut R, max_rows: usize, doc: &str) -> Vec<SvoRecord> {
    let n = rng.random_range(0..=max_rows);
    (0..n)
        .map(|i| {
            let (agent, target) = match rng.random_range(0..5) {
                0 => (NONE, *TARGETS.choose(rng).unwrap()),
                1 => (*AGENTS.choose(rng).unwrap(), NONE),
                _ => (*AGENTS.choose(rng).unwrap(), *TARGETS.choose(rng).unwrap()),
            };
            let is_passive = rng.random_bool(0.3);
            let passive_approx = is_passive && rng.random_bool(0.5);
            let head = *EVENTS.choose(rng).unwrap();
            let phrase = if rng.random_bool(0.2) { format!("do not {head}") } else { head.to_string() };
            SvoRecord {
                triple_id: i as u64,
                doc_id: doc.to_string(),
                sent_id: format!("s{}", i / 2 + 1),
                agent: agent.to_string(),
                event: EventLabel { phrase, head_lemma: head.to_string() },
                target: target.to_string(),
                is_passive,
                passive_approx,
                verb_index: 0,
                raw_phrase: String::new(),
            }
        })
        .collect()
}

/// (K, F) per node of `role` by scanning every record.
pub fn naive_node_metrics(records: &[SvoRecord], role: Role) -> BTreeMap<String, (u64, u64)> {
    let mut neighbours: BTreeMap<String, BTreeSet<(Role, String)>> = BTreeMap::new();
    let mut freq: BTreeMap<String, u64> = BTreeMap::new();
    for r in records {
        let e = r.event.head_lemma.clone();
        let sides = [(Role::Agent, r.agent.clone()), (Role::Target, r.target.clone())];
        for (side_role, label) in sides {
            if label == NONE {
                continue;
            }
            // each non-empty side is one occurrence of an Event-side pair
            if role == Role::Event {
                neighbours.entry(e.clone()).or_default().insert((side_role, label.clone()));
                *freq.entry(e.clone()).or_default() += 1;
            } else if role == side_role {
                neighbours.entry(label.clone()).or_default().insert((Role::Event, e.clone()));
                *freq.entry(label.clone()).or_default() += 1;
            }
        }
    }
    neighbours
        .into_iter()
        .map(|(label, n)| {
            let f = freq[&label];
            (label, (n.len() as u64, f))
        })
        .collect()
}

/// NW per (source, target) of one relation by scanning every record.
pub fn naive_edge_weights(records: &[SvoRecord], relation: Relation) -> BTreeMap<(String, String), f64> {
    let mut counts: BTreeMap<(String, String), u64> = BTreeMap::new();
    for r in records {
        let pair = match relation {
            Relation::AgentEvent => (r.agent.clone(), r.event.head_lemma.clone()),
            Relation::EventTarget => (r.event.head_lemma.clone(), r.target.clone()),
        };
        if pair.0 != NONE && pair.1 != NONE {
            *counts.entry(pair).or_default() += 1;
        }
    }
    let total: u64 = counts.values().sum();
    counts.into_iter().map(|(k, c)| (k, c as f64 / total as f64)).collect()
}

/// Kendall's τ-b by enumerating all pairs.
pub fn naive_tau_b(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len();
    let (mut conc, mut disc, mut tie_x, mut tie_y) = (0i64, 0i64, 0i64, 0i64);
    for i in 0..n {
        for j in i + 1..n {
            let dx = x[i] - x[j];
            let dy = y[i] - y[j];
            if dx == 0.0 && dy == 0.0 {
                continue;
            } else if dx == 0.0 {
                tie_x += 1;
            } else if dy == 0.0 {
                tie_y += 1;
            } else if (dx > 0.0) == (dy > 0.0) {
                conc += 1;
            } else {
                disc += 1;
            }
        }
    }
    let denom = (((conc + disc + tie_x) * (conc + disc + tie_y)) as f64).sqrt();
    (denom > 0.0).then(|| (conc - disc) as f64 / denom)
}

/// Mann-Whitney U of `a` by direct pairwise comparison.
pub fn naive_u(a: &[f64], b: &[f64]) -> f64 {
    let mut u = 0.0;
    for x in a {
        for y in b {
            if x > y {
                u += 1.0;
            } else if x == y {
                u += 0.5;
            }
        }
    }
    u
}

/// Exact two-sided p by enumerating every way of splitting the pooled
/// sample into groups of sizes `a.len()` and `b.len()`.
pub fn enumerated_p(a: &[f64], b: &[f64]) -> f64 {
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let n = pooled.len();
    let k = a.len();
    let observed = naive_u(a, b);
    let (mut total, mut le, mut ge) = (0u64, 0u64, 0u64);
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let chosen: BTreeSet<usize> = idx.iter().copied().collect();
        let ga: Vec<f64> = idx.iter().map(|&i| pooled[i]).collect();
        let gb: Vec<f64> = (0..n).filter(|i| !chosen.contains(i)).map(|i| pooled[i]).collect();
        let u = naive_u(&ga, &gb);
        total += 1;
        if u <= observed {
            le += 1;
        }
        if u >= observed {
            ge += 1;
        }
        // next k-combination in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return (2.0 * le.min(ge) as f64 / total as f64).min(1.0);
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Null distribution of U for tie-free samples of sizes m and n using the
/// classic recurrence `f(m, n, u) = f(m-1, n, u-n) + f(m, n-1, u)`.
pub struct MannWhitneyTable {
    memo: BTreeMap<(usize, usize), Vec<u128>>,
}

impl MannWhitneyTable {
    pub fn new() -> Self {
        MannWhitneyTable { memo: BTreeMap::new() }
    }

    pub fn counts(&mut self, m: usize, n: usize) -> Vec<u128> {
        if let Some(v) = self.memo.get(&(m, n)) {
            return v.clone();
        }
        let v = if m == 0 || n == 0 {
            vec![1]
        } else {
            let with_top_in_a = self.counts(m - 1, n);
            let with_top_in_b = self.counts(m, n - 1);
            let mut v = vec![0u128; m * n + 1];
            for (u, c) in with_top_in_a.iter().enumerate() {
                v[u + n] += c;
            }
            for (u, c) in with_top_in_b.iter().enumerate() {
                v[u] += c;
            }
            v
        };
        self.memo.insert((m, n), v.clone());
        v
    }

    /// Two-sided exact p for integral `u` with tie-free samples.
    pub fn p(&mut self, m: usize, n: usize, u: usize) -> f64 {
        let c = self.counts(m, n);
        let total: u128 = c.iter().sum();
        let le: u128 = c[..=u].iter().sum();
        let ge: u128 = c[u..].iter().sum();
        (2.0 * le.min(ge) as f64 / total as f64).min(1.0)
    }
}

/// Normal approximation p of the tie-free Mann-Whitney U with continuity correction.
pub fn normal_p_no_ties(m: usize, n: usize, u: f64) -> f64 {
    let (m, n) = (m as f64, n as f64);
    let mu = m * n / 2.0;
    let sigma = (m * n * (m + n + 1.0) / 12.0).sqrt();
    let z = ((u - mu).abs() - 0.5).max(0.0) / sigma;
    statrs::function::erf::erfc(z / std::f64::consts::SQRT_2)
}

/// A synthetic sentence in which an active verb governs a passive
/// participle through `conj`, optionally followed by a second participle
/// conjoined to the first.
#[derive(Debug, Clone)]
pub struct GuardTree {
    pub conllu: String,
    pub ancestor_subject: String,
}

const NAMES: [&str; 8] = ["ann", "bea", "cal", "dee", "eli", "fay", "gus", "hal"];

struct Node {
    form: String,
    lemma: String,
    upos: &'static str,
    xpos: &'static str,
    parent: Option<usize>,
    deprel: &'static str,
}

fn node(form: &str, upos: &'static str, xpos: &'static str, parent: Option<usize>, deprel: &'static str) -> Node {
    Node {
        form: form.to_string(),
        lemma: form.to_lowercase(),
        upos,
        xpos,
        parent,
        deprel,
    }
}

pub fn random_guard_tree<R: Rng>(rng: &mut R) -> GuardTree {
    let mut names: Vec<&str> = NAMES.to_vec();
    let mut take = |rng: &mut R| {
        let i = rng.random_range(0..names.len());
        names.swap_remove(i).to_string()
    };
    let mut nodes = Vec::new();
    // optional outer active verb the ancestor itself is conjoined to
    let outer = rng.random_bool(0.3);
    let ancestor_subject = take(rng);
    if outer {
        nodes.push(node("began", "VERB", "VBD", None, "ROOT"));
        nodes.push(node(&ancestor_subject, "PROPN", "NNP", Some(0), "nsubj"));
        nodes.push(node("left", "VERB", "VBD", Some(0), "conj"));
    } else {
        nodes.push(node("left", "VERB", "VBD", None, "ROOT"));
        nodes.push(node(&ancestor_subject, "PROPN", "NNP", Some(0), "nsubj"));
    }
    let ancestor = nodes.len() - if outer { 1 } else { 2 };
    if !outer && rng.random_bool(0.5) {
        let obj = take(rng);
        nodes.push(node(&obj, "PROPN", "NNP", Some(ancestor), "dobj"));
    }
    nodes.push(node("and", "CCONJ", "CC", Some(ancestor), "cc"));
    let passive = nodes.len();
    nodes.push(node("hurt", "VERB", "VBN", Some(ancestor), "conj"));
    match rng.random_range(0..4) {
        0 => nodes.push(node("got", "AUX", "VBD", Some(passive), "auxpass")),
        1 => nodes.push(node("was", "AUX", "VBD", Some(passive), "auxpass")),
        2 => nodes.push(node("felt", "AUX", "VBD", Some(passive), "aux")),
        _ => {}
    }
    let forced_by = nodes.last().map(|n| n.form.as_str()) == Some("hurt");
    if forced_by || rng.random_bool(0.4) {
        let by = nodes.len();
        nodes.push(node("by", "ADP", "IN", Some(passive), "agent"));
        let agent = take(rng);
        nodes.push(node(&agent, "PROPN", "NNP", Some(by), "pobj"));
        if rng.random_bool(0.3) {
            let agent2 = take(rng);
            let first = nodes.len() - 1;
            nodes.push(node("and", "CCONJ", "CC", Some(first), "cc"));
            nodes.push(node(&agent2, "PROPN", "NNP", Some(first), "conj"));
        }
    }
    if rng.random_bool(0.3) {
        let own = take(rng);
        nodes.push(node(&own, "PROPN", "NNP", Some(passive), "nsubjpass"));
    }
    if rng.random_bool(0.5) {
        nodes.push(node("and", "CCONJ", "CC", Some(passive), "cc"));
        nodes.push(node("robbed", "VERB", "VBN", Some(passive), "conj"));
    }
    if rng.random_bool(0.5) {
        nodes.push(node("badly", "ADV", "RB", Some(passive), "advmod"));
    }
    nodes.push(node(".", "PUNCT", ".", Some(0), "punct"));

    // random surface order
    let mut order: Vec<usize> = (0..nodes.len()).collect();
    for i in (1..order.len()).rev() {
        let j = rng.random_range(0..=i);
        order.swap(i, j);
    }
    let mut position = vec![0; nodes.len()];
    for (pos, &n) in order.iter().enumerate() {
        position[n] = pos + 1;
    }
    let mut conllu = String::from("# sent_id = g\n");
    for &n in &order {
        let nd = &nodes[n];
        let head = nd.parent.map_or(0, |p| position[p]);
        conllu.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t_\t{}\t{}\t_\t_\n",
            position[n], nd.form, nd.lemma, nd.upos, nd.xpos, head, nd.deprel
        ));
    }
    GuardTree { conllu, ancestor_subject }
}

/// Agents a passive participle may legitimately receive, found by walking
/// the raw tree: the by-phrase objects of the verb (or of the passive verb
/// it is conjoined to), else its own subjects, else nothing.
pub fn allowed_passive_agents(s: &Sentence, verb: usize) -> BTreeSet<String> {
    let children = |i: usize| s.tokens.iter().filter(move |t| t.head == i);
    let by_objects = |v: usize| -> Vec<String> {
        let mut out = Vec::new();
        for by in children(v).filter(|t| t.deprel_raw == "agent") {
            for obj in children(by.index).filter(|t| t.deprel_raw == "pobj") {
                out.push(obj.lemma.clone());
                for c in children(obj.index).filter(|t| t.deprel_raw == "conj") {
                    out.push(c.lemma.clone());
                }
            }
        }
        out
    };
    let mut allowed: BTreeSet<String> = by_objects(verb).into_iter().collect();
    let tok = s.token(verb);
    if allowed.is_empty() && tok.deprel_raw == "conj" && s.token(tok.head).xpos == "VBN" {
        allowed.extend(by_objects(tok.head));
    }
    if allowed.is_empty() {
        allowed.extend(
            children(verb)
                .filter(|t| t.deprel_raw == "nsubj" || t.deprel_raw == "nsubjpass")
                .map(|t| t.lemma.clone()),
        );
    }
    allowed.insert(NONE.to_string());
    allowed
}

pub fn parse_clear(text: &str) -> Sentence {
    let corpus = DeprelSchema::clear().apply(teanet::parse_conllu_str(text, "g").expect("synthetic tree parses"));
    corpus.documents[0].1[0].clone()
}
