//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the report is always printed; exits non-zero when any
//! criterion fails.

#[path = "../../core/tests/oracle/mod.rs"]
mod oracle;

use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use teanet::analytics::{
    kendall_tau_shared, node_metrics, normalized_edge_weights, prominence, rank_sum_test, relative_degree,
    RankSumMethod, EXACT_LIMIT,
};
use teanet::benchmark::{parse_gold, run_benchmark, Extractor};
use teanet::extract::{extract_sentence, find_verb_candidates, passive_info};
use teanet::graph::{build_graph, from_graphml, from_json, to_graphml, to_json, EventKey, NodeKey};
use teanet::lexicon::{SynonymTable, ValenceLexicon};
use teanet::{load_corpus, DeprelSchema, EventLabel, Relation, Role, SvoRecord, NONE};

// Pinned tolerances.
const C1_MAX_RUNTIME: Duration = Duration::from_secs(1);
const C3_TREES: usize = 1000;
const C4_RI_TOL: f64 = 0.05;
const C4_FLOAT_EPS: f64 = 1e-9;
const C4_PROMINENCE_TOL: f64 = 1e-12;
const C5_TABLES: usize = 200;
const C5_MAX_ROWS: usize = 50;
const C5_VALUE_TOL: f64 = 1e-12;
const C5_NW_SUM_TOL: f64 = 1e-9;
const C6_EXACT_TOL: f64 = 1e-12;
const C6_TIED_MAX_SPLITS: u128 = 5000;
const C6_NORMAL_N: usize = 30;
const C6_NORMAL_SAMPLES: usize = 100;
const C6_NORMAL_TOL: f64 = 0.005;
const C7_SETS: usize = 100;
const C8_JOBS: [u16; 2] = [1, 8];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn bench() -> teanet::Corpus {
    load_corpus(teanet::BENCH_CONLLU, "bench", &DeprelSchema::clear()).unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let corpus = bench();
    let gold = parse_gold(teanet::BENCH_GOLD, "gold.tsv").unwrap();
    let report = run_benchmark(&corpus, &gold, Extractor::Tea).unwrap();
    let elapsed = start.elapsed();

    let mut strict_ok = true;
    let mut agree_ok = true;
    let mut parts = Vec::new();
    for role in [Role::Agent, Role::Event, Role::Target] {
        let s = report.roles.role(role);
        strict_ok &= s.correct == s.total;
        agree_ok &= s.correct + s.none_agree == s.total;
        parts.push(format!(
            "{role} strict {}/{} = {:.3}, agreement {:.3}",
            s.correct, s.total, s.accuracy, s.agreement
        ));
    }
    let passive_ok = report.passive.passive.accuracy == 1.0 && report.passive.active.accuracy == 1.0;
    let pass = strict_ok && passive_ok && elapsed < C1_MAX_RUNTIME;
    let mut detail = format!(
        "{} sentences; {}; passive {:.3}/{:.3}; {:.0} ms",
        gold.len(),
        parts.join("; "),
        report.passive.passive.accuracy,
        report.passive.active.accuracy,
        elapsed.as_secs_f64() * 1e3
    );
    if !strict_ok && agree_ok {
        detail.push_str(
            "; every slot agrees with gold, but the strict rule never credits a both-__none__ slot, \
             so gold __none__ slots cap strict accuracy below 1",
        );
    }
    outcome(pass, detail)
}

fn criterion_2() -> Outcome {
    let corpus = bench();
    let sentence = |id: &str| corpus.sentences().find(|s| s.sent_id == id).unwrap().clone();
    let expected: [(&str, [&str; 3], bool, bool); 6] = [
        ("p01", ["uncle", "rape", "i"], true, false),
        ("p02", ["window", "break", NONE], true, true),
        ("p03", ["police", "arrest", "he"], true, false),
        ("p04", ["he", "abuse", "i"], true, false),
        ("p05", ["i", "hold", NONE], true, true),
        ("c01", ["she", "get", "lucky"], false, false),
    ];
    let mut failures = Vec::new();
    for (id, [a, e, t], passive, approx) in expected {
        let got: Vec<_> = extract_sentence(&sentence(id))
            .into_iter()
            .map(|r| (r.agent, r.event.head_lemma, r.target, r.is_passive, r.passive_approx))
            .collect();
        let want = vec![(a.to_string(), e.to_string(), t.to_string(), passive, approx)];
        if got != want {
            failures.push(format!("{id}: {got:?}"));
        }
    }
    // "I was held down and raped": the conjoined participle is passive and never gets "i" as an active agent
    let s = sentence("p05");
    let raped = s.tokens.iter().find(|t| t.surface == "raped").unwrap().index;
    if !passive_info(&s, raped).is_passive {
        failures.push("p05: raped not passive".into());
    }
    if extract_sentence(&s).iter().any(|r| r.verb_index == raped && r.agent == "i" && !r.is_passive) {
        failures.push("p05: i is an active agent of raped".into());
    }
    let pass = failures.is_empty();
    outcome(pass, if pass { "6/6 fixtures exact".into() } else { failures.join("; ") })
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut checked, mut bad) = (0usize, Vec::new());
    for _ in 0..C3_TREES {
        let tree = oracle::random_guard_tree(&mut rng);
        let s = oracle::parse_clear(&tree.conllu);
        let records = extract_sentence(&s);
        for v in find_verb_candidates(&s).into_iter().filter(|&v| s.token(v).xpos == "VBN") {
            checked += 1;
            let allowed = oracle::allowed_passive_agents(&s, v);
            for r in records.iter().filter(|r| r.verb_index == v) {
                if r.agent == tree.ancestor_subject || !allowed.contains(&r.agent) {
                    bad.push(format!("{} on\n{}", r.agent, tree.conllu));
                }
            }
        }
    }
    outcome(
        bad.is_empty() && checked >= C3_TREES,
        format!("{C3_TREES} trees, {checked} passive participles, {} disagreements with the tree walk", bad.len()),
    )
}

/// (label, K, F, RI) in thousands, published rounded to one decimal.
type Row = (&'static str, f64, Option<f64>, Option<f64>);

const PUBLISHED_AGENT_HIGH: [Row; 20] = [
    ("you", 18.1, Some(56.6), Some(3.1)), ("we", 17.6, Some(69.5), Some(3.9)), ("I", 16.8, Some(64.9), Some(3.9)),
    ("it", 9.0, Some(89.0), Some(9.9)), ("they", 4.9, Some(79.9), Some(16.3)), ("people", 4.9, Some(31.6), Some(6.5)),
    ("that", 4.6, Some(150.7), Some(32.7)), ("who", 3.8, Some(37.2), Some(9.7)), ("those", 3.0, Some(13.2), Some(4.4)),
    ("this", 2.3, Some(75.1), Some(32.7)), ("which", 2.1, Some(27.6), Some(12.9)), ("one", 2.1, Some(30.2), Some(14.3)),
    ("government", 2.0, Some(20.6), Some(10.1)), ("trump", 1.9, Some(9.3), Some(5.0)), ("man", 1.8, Some(9.4), Some(5.1)),
    ("all", 1.8, Some(38.8), Some(21.1)), ("god", 1.6, Some(10.3), Some(6.2)), ("some", 1.6, Some(14.3), Some(8.9)),
    ("what", 1.6, Some(30.8), Some(19.2)), ("anyone", 1.3, Some(3.0), Some(2.2)),
];
const PUBLISHED_EVENT_HIGH: [Row; 20] = [
    ("be", 77.7, Some(418.9), Some(5.4)), ("have", 13.9, Some(114.6), Some(8.3)), ("say", 12.2, Some(25.1), Some(2.1)),
    ("make", 6.6, Some(19.8), Some(3.0)), ("see", 6.5, Some(17.6), Some(2.7)), ("know", 5.8, Some(21.1), Some(3.7)),
    ("take", 5.6, Some(16.1), Some(2.9)), ("call", 5.6, Some(12.3), Some(2.2)), ("be not", 5.6, None, None),
    ("use", 5.2, Some(19.1), Some(3.7)), ("tell", 4.7, Some(10.2), Some(2.2)), ("become", 4.6, Some(9.3), Some(2.0)),
    ("give", 4.6, Some(11.0), Some(2.4)), ("get", 4.3, Some(15.0), Some(3.5)), ("include", 4.3, Some(8.7), Some(2.1)),
    ("do", 4.1, Some(53.7), Some(13.1)), ("go", 3.9, Some(20.8), Some(5.4)), ("think", 3.9, Some(10.1), Some(2.6)),
    ("find", 3.8, Some(9.5), Some(2.5)), ("come", 3.8, Some(14.3), Some(3.8)),
];
const PUBLISHED_AGENT_LOW: [Row; 20] = [
    ("you", 2.6, Some(3.4), Some(1.3)), ("we", 1.8, Some(4.1), Some(2.2)), ("it", 1.6, Some(10.9), Some(6.8)),
    ("I", 1.1, Some(2.4), Some(2.1)), ("that", 0.9, Some(20.5), Some(22.4)), ("people", 0.6, Some(2.8), Some(4.6)),
    ("who", 0.6, Some(4.1), Some(7.3)), ("which", 0.5, Some(4.7), Some(8.8)), ("those", 0.4, Some(1.4), Some(3.1)),
    ("researcher", 0.4, Some(0.9), Some(2.6)), ("scientist", 0.4, Some(1.0), Some(2.6)), ("they", 0.4, Some(5.2), Some(14.3)),
    ("this", 0.4, Some(9.7), Some(26.7)), ("company", 0.3, Some(1.4), Some(4.4)), ("one", 0.3, Some(3.9), Some(13.0)),
    ("some", 0.3, Some(2.1), Some(7.4)), ("group", 0.3, Some(1.4), Some(5.1)), ("study", 0.3, Some(2.6), Some(9.6)),
    ("what", 0.3, Some(2.2), Some(8.4)), ("woman", 0.3, Some(0.9), Some(3.6)),
];
const PUBLISHED_EVENT_LOW: [Row; 20] = [
    ("be", 12.8, Some(58.6), Some(4.6)), ("say", 4.2, Some(5.0), Some(1.2)), ("have", 2.6, Some(16.5), Some(6.3)),
    ("find", 1.6, Some(2.3), Some(1.5)), ("show", 1.4, Some(2.2), Some(1.6)), ("use", 1.4, Some(4.0), Some(2.9)),
    ("include", 1.3, Some(2.2), Some(1.6)), ("make", 1.3, Some(3.0), Some(2.3)), ("take", 1.3, Some(2.3), Some(1.9)),
    ("report", 1.1, Some(2.9), Some(2.6)), ("tell", 1.0, Some(1.0), Some(1.0)), ("call", 1.0, Some(1.5), Some(1.6)),
    ("see", 0.9, Some(1.9), Some(2.0)), ("give", 0.8, Some(1.2), Some(1.5)), ("cause", 0.8, Some(2.1), Some(2.6)),
    ("know", 0.7, Some(1.9), Some(2.5)), ("be not", 0.7, None, None), ("provide", 0.7, Some(0.9), Some(1.3)),
    ("add", 0.7, Some(0.9), Some(1.3)), ("write", 0.7, Some(0.7), Some(1.0)),
];

fn record(id: u64, agent: &str, event: &str) -> SvoRecord {
    SvoRecord {
        triple_id: id,
        doc_id: "t".into(),
        sent_id: format!("s{id}"),
        agent: agent.into(),
        event: EventLabel::single(event),
        target: NONE.into(),
        is_passive: false,
        passive_approx: false,
        verb_index: 0,
        raw_phrase: String::new(),
    }
}

/// RI of a node with `k` distinct neighbours and `f` incident triples, computed by the library.
fn library_ri(role: Role, k: u64, f: u64) -> f64 {
    assert!(f >= k && k > 0);
    let mut records = Vec::new();
    for j in 0..k {
        let copies = if j == 0 { f - k + 1 } else { 1 };
        let other = format!("n{j}");
        for _ in 0..copies {
            let id = records.len() as u64;
            records.push(match role {
                Role::Agent => record(id, "x", &other),
                _ => record(id, &other, "x"),
            });
        }
    }
    node_metrics(&records, role, EventKey::HeadLemma).get("x", role).unwrap().ri
}

fn criterion_4() -> Outcome {
    // K and F are published in thousands to one decimal, so each lies within
    // ±0.05 of its printed value. Counting in units of 0.05 thousand makes the
    // printed value 2·v and its rounding bounds 2·v ± 1.
    let units = |v: f64| (v * 20.0).round() as u64;
    let (mut rows, mut consistent, mut naive_hits) = (0, 0, 0);
    let mut bad = Vec::new();
    let tables = [
        (Role::Agent, &PUBLISHED_AGENT_HIGH),
        (Role::Event, &PUBLISHED_EVENT_HIGH),
        (Role::Agent, &PUBLISHED_AGENT_LOW),
        (Role::Event, &PUBLISHED_EVENT_LOW),
    ];
    for (role, table) in tables {
        for &(label, k, f, ri) in table.iter() {
            let (Some(f), Some(ri)) = (f, ri) else { continue };
            rows += 1;
            let (ku, fu) = (units(k), units(f));
            if (library_ri(role, ku, fu) - ri).abs() <= C4_RI_TOL + C4_FLOAT_EPS {
                naive_hits += 1;
            }
            let lo = library_ri(role, ku + 1, (fu - 1).max(ku + 1));
            let hi = library_ri(role, ku - 1, fu + 1);
            if hi >= ri - C4_RI_TOL - C4_FLOAT_EPS && lo <= ri + C4_RI_TOL + C4_FLOAT_EPS {
                consistent += 1;
            } else {
                bad.push(format!("{label} RI in [{lo:.3}, {hi:.3}] vs {ri}"));
            }
        }
    }
    let i_ri = library_ri(Role::Agent, units(16.8), units(64.9));
    let i_ok = (i_ri - 3.9).abs() <= C4_RI_TOL;

    // Prominence: I-think with NW 0.0078 in A and 0.0019 in B.
    let corpus = |hits: usize| -> Vec<SvoRecord> {
        (0..10_000)
            .map(|i| if i < hits { record(i as u64, "i", "think") } else { record(i as u64, "i", &format!("v{i}")) })
            .collect()
    };
    let nw_a = normalized_edge_weights(&corpus(78), Relation::AgentEvent, "high", EventKey::HeadLemma);
    let nw_b = normalized_edge_weights(&corpus(19), Relation::AgentEvent, "low", EventKey::HeadLemma);
    let p = prominence(&nw_a, &nw_b).into_iter().find(|p| p.target == "think").unwrap();
    let prom_ok = (p.nw_a - 0.0078).abs() <= C4_PROMINENCE_TOL
        && (p.nw_b - 0.0019).abs() <= C4_PROMINENCE_TOL
        && (p.p - 0.0059).abs() <= C4_PROMINENCE_TOL
        && format!("{:.4}", p.p) == "0.0059";

    // The criterion is judged on F/K from the printed values. The rounding
    // interval check is diagnostic only: it shows whether a miss is explained
    // by K and F having been rounded before publication.
    let pass = naive_hits == rows && i_ok && prom_ok;
    let mut detail = format!(
        "F/K from printed values within ±{C4_RI_TOL}: {naive_hits}/{rows} rows; \
         consistent once K and F rounding is allowed for: {consistent}/{rows}; \
         I: {i_ri:.4} → 3.9; prominence {:.4} − {:.4} = {:.4}",
        p.nw_a, p.nw_b, p.p
    );
    if !bad.is_empty() {
        detail.push_str(&format!("; inconsistent: {}", bad.join(", ")));
    }
    outcome(pass, detail)
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let tables: Vec<Vec<SvoRecord>> = (0..C5_TABLES)
        .map(|i| oracle::random_records(&mut rng, C5_MAX_ROWS, &format!("d{i}")))
        .collect();
    let mut failures = Vec::new();
    let mut nw_groups = 0;
    for (i, records) in tables.iter().enumerate() {
        for role in [Role::Agent, Role::Event, Role::Target] {
            let table = relative_degree(node_metrics(records, role, EventKey::HeadLemma));
            let naive = oracle::naive_node_metrics(records, role);
            let k_total: u64 = naive.values().map(|v| v.0).sum();
            let same = table.rows.len() == naive.len()
                && table.rows.iter().all(|r| {
                    let Some(&(k, f)) = naive.get(&r.label) else { return false };
                    let others = k_total - k;
                    let k_star_ok = match r.k_star {
                        Some(v) => others > 0 && (v - k as f64 / others as f64).abs() <= C5_VALUE_TOL,
                        None => others == 0,
                    };
                    r.k == k && r.f == f && (r.ri - f as f64 / k as f64).abs() <= C5_VALUE_TOL && k_star_ok
                });
            if !same {
                failures.push(format!("table {i}: node metrics for {role}"));
            }
        }
        let other = &tables[(i + 1) % tables.len()];
        for relation in [Relation::AgentEvent, Relation::EventTarget] {
            let nw = normalized_edge_weights(records, relation, "a", EventKey::HeadLemma);
            let naive = oracle::naive_edge_weights(records, relation);
            let same = nw.rows.len() == naive.len()
                && nw.rows.iter().all(|r| {
                    naive
                        .get(&(r.source.clone(), r.target.clone()))
                        .is_some_and(|v| (v - r.nw).abs() <= C5_VALUE_TOL)
                });
            if !same {
                failures.push(format!("table {i}: NW for {}", relation.as_str()));
            }
            if !nw.rows.is_empty() {
                nw_groups += 1;
                let sum: f64 = nw.rows.iter().map(|r| r.nw).sum();
                if (sum - 1.0).abs() > C5_NW_SUM_TOL {
                    failures.push(format!("table {i}: NW sums to {sum}"));
                }
            }

            let nw_b = normalized_edge_weights(other, relation, "b", EventKey::HeadLemma);
            let naive_b = oracle::naive_edge_weights(other, relation);
            let mut keys: Vec<_> = naive.keys().chain(naive_b.keys()).cloned().collect();
            keys.sort();
            keys.dedup();
            let got: BTreeMap<_, _> = prominence(&nw, &nw_b)
                .into_iter()
                .map(|p| ((p.source, p.target), p.p))
                .collect();
            let same = got.len() == keys.len()
                && keys.iter().all(|k| {
                    let want = naive.get(k).copied().unwrap_or(0.0) - naive_b.get(k).copied().unwrap_or(0.0);
                    got.get(k).is_some_and(|v| (v - want).abs() <= C5_VALUE_TOL)
                });
            if !same {
                failures.push(format!("table {i}: prominence for {}", relation.as_str()));
            }
        }

        for anchor in [
            NodeKey::new("i", Role::Agent),
            NodeKey::new("she", Role::Agent),
            NodeKey::new("think", Role::Event),
            NodeKey::new("people", Role::Target),
        ] {
            let relation = if anchor.role == Role::Target { Relation::EventTarget } else { Relation::AgentEvent };
            let na = oracle::naive_edge_weights(records, relation);
            let nb = oracle::naive_edge_weights(other, relation);
            let touches = |(s, t): &(String, String)| match anchor.role {
                Role::Agent => *s == anchor.label,
                Role::Event => *t == anchor.label,
                Role::Target => *t == anchor.label,
            };
            let shared: Vec<_> = na.keys().filter(|k| touches(k) && nb.contains_key(*k)).collect();
            let x: Vec<f64> = shared.iter().map(|k| na[*k]).collect();
            let y: Vec<f64> = shared.iter().map(|k| nb[*k]).collect();
            let want = oracle::naive_tau_b(&x, &y);
            let got = kendall_tau_shared(records, other, &anchor, EventKey::HeadLemma);
            let same = got.result.n == shared.len()
                && match (got.result.tau, want) {
                    (Some(a), Some(b)) => (a - b).abs() <= C5_VALUE_TOL,
                    (None, None) => true,
                    _ => false,
                };
            if !same {
                failures.push(format!("table {i}: tau around {}:{}", anchor.role, anchor.label));
            }
        }
    }
    let pass = failures.is_empty();
    let detail = format!(
        "{C5_TABLES} tables of ≤{C5_MAX_ROWS} rows, {nw_groups} NW groups summing to 1±{C5_NW_SUM_TOL:e}; {} disagreements{}",
        failures.len(),
        failures.first().map_or(String::new(), |f| format!(" (first: {f})"))
    );
    outcome(pass, detail)
}

fn shuffled_distinct(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n).map(|i| i as f64 + rng.random::<f64>() * 0.5).collect();
    for i in (1..v.len()).rev() {
        v.swap(i, rng.random_range(0..=i));
    }
    v
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut table = oracle::MannWhitneyTable::new();
    let (mut pairs, mut tied_cases, mut max_exact, mut failures) = (0usize, 0usize, 0f64, Vec::new());
    for m in 1..=EXACT_LIMIT {
        for n in 1..=EXACT_LIMIT / m {
            pairs += 1;
            let pool = shuffled_distinct(&mut rng, m + n);
            let (a, b) = pool.split_at(m);
            let r = rank_sum_test(a, b).unwrap();
            let want_u = oracle::naive_u(a, b);
            let want_p = table.p(m, n, want_u as usize);
            max_exact = max_exact.max((r.p - want_p).abs());
            if r.method != RankSumMethod::Exact || r.u != want_u || (r.p - want_p).abs() > C6_EXACT_TOL {
                failures.push(format!("{m}x{n}: U {} vs {want_u}, p {} vs {want_p}", r.u, r.p));
            }
            if oracle::binomial((m + n) as u64, m as u64) <= C6_TIED_MAX_SPLITS {
                tied_cases += 1;
                let a: Vec<f64> = (0..m).map(|_| rng.random_range(0..4) as f64).collect();
                let b: Vec<f64> = (0..n).map(|_| rng.random_range(0..4) as f64).collect();
                let r = rank_sum_test(&a, &b).unwrap();
                let want_u = oracle::naive_u(&a, &b);
                let want_p = oracle::enumerated_p(&a, &b);
                max_exact = max_exact.max((r.p - want_p).abs());
                if r.u != want_u || (r.p - want_p).abs() > C6_EXACT_TOL {
                    failures.push(format!("tied {m}x{n}: U {} vs {want_u}, p {} vs {want_p}", r.u, r.p));
                }
            }
        }
    }

    let n = C6_NORMAL_N;
    let (mut max_normal, mut max_vs_exact) = (0f64, 0f64);
    for _ in 0..C6_NORMAL_SAMPLES {
        let pool = shuffled_distinct(&mut rng, 2 * n);
        let (a, b) = pool.split_at(n);
        let r = rank_sum_test(a, b).unwrap();
        if r.method != RankSumMethod::Normal || r.u != oracle::naive_u(a, b) {
            failures.push(format!("{n}x{n}: method {:?}, U {}", r.method, r.u));
        }
        max_normal = max_normal.max((r.p - oracle::normal_p_no_ties(n, n, r.u)).abs());
        max_vs_exact = max_vs_exact.max((r.p - table.p(n, n, r.u as usize)).abs());
    }
    if max_normal > C6_NORMAL_TOL || max_vs_exact > C6_NORMAL_TOL {
        failures.push(format!("{n}x{n}: |Δp| {max_normal:.2e} vs normal, {max_vs_exact:.2e} vs exact"));
    }
    let pass = failures.is_empty();
    let detail = format!(
        "{pairs} size pairs with n_a·n_b ≤ {EXACT_LIMIT} (+{tied_cases} tied, enumerated): max |Δp| {max_exact:.1e}; \
         {n}x{n} on {C6_NORMAL_SAMPLES} samples: max |Δp| {max_normal:.1e} vs normal formula, {max_vs_exact:.1e} vs exact{}",
        failures.first().map_or(String::new(), |f| format!("; first failure: {f}"))
    );
    outcome(pass, detail)
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let vader = ValenceLexicon::vader();
    let syn = SynonymTable::sample();
    let mut failures = Vec::new();
    for i in 0..C7_SETS {
        let records = oracle::random_records(&mut rng, C5_MAX_ROWS, &format!("d{i}"));
        let g = build_graph(&records, &vader, Some(&syn));
        if !g.structural_violations().is_empty() {
            failures.push(format!("set {i}: {:?}", g.structural_violations()));
        }
        for (relation, has) in [
            (Relation::AgentEvent, (|r: &SvoRecord| r.agent != NONE) as fn(&SvoRecord) -> bool),
            (Relation::EventTarget, |r: &SvoRecord| r.target != NONE),
        ] {
            let weight: u64 = g
                .syntactic_edges()
                .filter(|(k, _)| k.relation() == Some(relation))
                .map(|(_, d)| d.weight)
                .sum();
            let want = records.iter().filter(|r| has(r)).count() as u64;
            if weight != want {
                failures.push(format!("set {i}: {} weight {weight} vs {want} triples", relation.as_str()));
            }
        }
        if from_json(&to_json(&g)).ok().as_ref() != Some(&g) {
            failures.push(format!("set {i}: JSON round trip"));
        }
        if from_graphml(&to_graphml(&g)).ok().as_ref() != Some(&g) {
            failures.push(format!("set {i}: GraphML round trip"));
        }
    }
    let pass = failures.is_empty();
    outcome(
        pass,
        format!(
            "{C7_SETS} record sets: tripartite scan, weight conservation, JSON and GraphML round trips; {} failures{}",
            failures.len(),
            failures.first().map_or(String::new(), |f| format!(" (first: {f})"))
        ),
    )
}

/// The benchmark split into documents of eight sentences each.
fn multi_document_bench() -> String {
    let mut out = String::new();
    let blocks = teanet::BENCH_CONLLU
        .split("\n\n")
        .map(|b| b.lines().filter(|l| !l.starts_with("# newdoc")).collect::<Vec<_>>().join("\n"))
        .filter(|b| !b.trim().is_empty());
    for (i, block) in blocks.enumerate() {
        if i % 8 == 0 {
            out.push_str(&format!("# newdoc id = part{}\n", i / 8));
        }
        out.push_str(&block);
        out.push_str("\n\n");
    }
    out
}

fn run_teanet(jobs: u16, args: &[&str], dir: &Path) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_teanet"))
        .current_dir(dir)
        .arg("--jobs")
        .arg(jobs.to_string())
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

/// Runs the extract, emotions and validate pipeline and returns every output.
fn pipeline(jobs: u16, dir: &Path) -> Result<Vec<Vec<u8>>, String> {
    let svo = format!("svo-{jobs}.csv");
    run_teanet(jobs, &["extract", "-i", "multi.conllu", "-o", &svo], dir)?;
    Ok(vec![
        std::fs::read(dir.join(&svo)).map_err(|e| e.to_string())?,
        run_teanet(jobs, &["--seed", "42", "emotions", "-i", &svo, "--samples", "1000"], dir)?,
        run_teanet(jobs, &["--seed", "42", "emotions", "-i", &svo, "--anchor", "agent:i"], dir)?,
        run_teanet(jobs, &["validate", "--conllu", "multi.conllu", "--gold", "gold.tsv"], dir)?,
        run_teanet(jobs, &["validate", "--conllu", "multi.conllu", "--gold", "gold.tsv", "--json"], dir)?,
    ])
}

fn criterion_8() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("multi.conllu"), multi_document_bench()).unwrap();
    std::fs::write(dir.path().join("gold.tsv"), teanet::BENCH_GOLD).unwrap();
    let runs: Result<Vec<_>, String> = [C8_JOBS[0], C8_JOBS[0], C8_JOBS[1], C8_JOBS[1]]
        .into_iter()
        .map(|j| pipeline(j, dir.path()))
        .collect();
    match runs {
        Err(e) => outcome(false, format!("command failed: {e}")),
        Ok(runs) => {
            let identical = runs.windows(2).all(|w| w[0] == w[1]);
            let bytes: usize = runs[0].iter().map(Vec::len).sum();
            outcome(
                identical,
                format!(
                    "extract, emotions (seed 42) and validate over 8 documents: two runs each with --jobs {} and --jobs {}, {} outputs of {bytes} bytes {}",
                    C8_JOBS[0],
                    C8_JOBS[1],
                    runs[0].len(),
                    if identical { "byte-identical" } else { "differ" }
                ),
            )
        }
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("gold-parse extraction exactness", criterion_1),
        ("passive remapping fixtures", criterion_2),
        ("passive inheritance guard", criterion_3),
        ("metric arithmetic vs published table", criterion_4),
        ("oracle equivalence", criterion_5),
        ("rank-sum correctness", criterion_6),
        ("structural invariants", criterion_7),
        ("determinism", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        println!("criterion {}: {} {name}: {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
