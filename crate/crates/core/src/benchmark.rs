//! Scoring extractors against gold triples and gold voice labels.
//!
//! Role accuracy follows the strict rule: a role is a true positive only
//! when prediction and gold are both non-empty and equal. Slots where both
//! sides are `__none__` are counted in the total but not as correct; they
//! are reported separately as `none_agree` so that exact agreement can be
//! read off as `(correct + none_agree) / total`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::conllu::Corpus;
use crate::error::{Error, Result};
use crate::extract::{extract_baseline_sentence, extract_sentence, sentence_is_passive};
use crate::record::{Role, SvoRecord, NONE};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldTriple {
    pub sent_id: String,
    pub agent: String,
    pub event: String,
    pub target: String,
    pub is_passive: bool,
    pub passive_approx: bool,
}

impl GoldTriple {
    pub fn slot(&self, role: Role) -> &str {
        match role {
            Role::Agent => &self.agent,
            Role::Event => &self.event,
            Role::Target => &self.target,
        }
    }
}

/// Parses `sent_id, agent, event, target, is_passive, passive_approx` rows.
pub fn parse_gold(text: &str, source: &str) -> Result<Vec<GoldTriple>> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 6 {
            return Err(Error::load(source, line_no, format!("expected 6 columns, found {}", cols.len())));
        }
        let flag = |s: &str| match s.trim() {
            "0" => Ok(false),
            "1" => Ok(true),
            other => Err(Error::load(source, line_no, format!("flag `{other}` is not 0/1"))),
        };
        let slot = |s: &str| {
            let s = s.trim().to_lowercase();
            if s.is_empty() {
                NONE.to_string()
            } else {
                s
            }
        };
        let gold = GoldTriple {
            sent_id: cols[0].trim().to_string(),
            agent: slot(cols[1]),
            event: slot(cols[2]),
            target: slot(cols[3]),
            is_passive: flag(cols[4])?,
            passive_approx: flag(cols[5])?,
        };
        if gold.passive_approx && !gold.is_passive {
            return Err(Error::load(source, line_no, "passive_approx set on an active sentence"));
        }
        if !seen.insert(gold.sent_id.clone()) {
            return Err(Error::load(source, line_no, format!("duplicate sent_id `{}`", gold.sent_id)));
        }
        out.push(gold);
    }
    Ok(out)
}

pub fn load_gold(path: &Path) -> Result<Vec<GoldTriple>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::load(path, 0, e.to_string()))?;
    parse_gold(&text, &path.display().to_string())
}

/// The single (agent, event head, target) compared against gold for one
/// sentence: Agent and Event from the first record with an Agent (else the
/// Event of the first record with a Target, else of the first record), and
/// Target from the first record with a Target.
pub fn sentence_triple(records: &[&SvoRecord]) -> (String, String, String) {
    let with_agent = records.iter().find(|r| r.has_agent());
    let with_target = records.iter().find(|r| r.has_target());
    let agent = with_agent.map_or(NONE, |r| r.agent.as_str());
    let event = with_agent
        .or(with_target)
        .or(records.first())
        .map_or(NONE, |r| r.event.head_lemma.as_str());
    let target = with_target.map_or(NONE, |r| r.target.as_str());
    (agent.to_lowercase(), event.to_lowercase(), target.to_lowercase())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoleScore {
    pub role: Role,
    /// Both non-empty and equal.
    pub correct: usize,
    /// Both `__none__`.
    pub none_agree: usize,
    pub total: usize,
    /// `correct / total`.
    pub accuracy: f64,
    /// `(correct + none_agree) / total`.
    pub agreement: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Mismatch {
    pub sent_id: String,
    pub role: Role,
    pub gold: String,
    pub predicted: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoleReport {
    pub roles: Vec<RoleScore>,
    pub mismatches: Vec<Mismatch>,
}

impl RoleReport {
    pub fn role(&self, role: Role) -> &RoleScore {
        self.roles.iter().find(|r| r.role == role).expect("all roles scored")
    }
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Per-role accuracy of `predicted` against `gold`. Sentences without a
/// prediction count as `__none__` in every role; predictions for sentences
/// absent from gold are ignored.
pub fn evaluate_roles(predicted: &[SvoRecord], gold: &[GoldTriple]) -> RoleReport {
    let mut by_sentence: BTreeMap<&str, Vec<&SvoRecord>> = BTreeMap::new();
    for r in predicted {
        by_sentence.entry(r.sent_id.as_str()).or_default().push(r);
    }
    let mut roles = Vec::new();
    let mut mismatches = Vec::new();
    let triples: Vec<(String, String, String)> = gold
        .iter()
        .map(|g| sentence_triple(by_sentence.get(g.sent_id.as_str()).map_or(&[][..], Vec::as_slice)))
        .collect();
    for role in [Role::Agent, Role::Event, Role::Target] {
        let (mut correct, mut none_agree) = (0, 0);
        for (g, (a, e, t)) in gold.iter().zip(&triples) {
            let predicted = match role {
                Role::Agent => a,
                Role::Event => e,
                Role::Target => t,
            };
            let want = g.slot(role);
            match (want == NONE, predicted == NONE) {
                (true, true) => none_agree += 1,
                (false, false) if want == predicted => correct += 1,
                _ => mismatches.push(Mismatch {
                    sent_id: g.sent_id.clone(),
                    role,
                    gold: want.to_string(),
                    predicted: predicted.clone(),
                }),
            }
        }
        let total = gold.len();
        roles.push(RoleScore {
            role,
            correct,
            none_agree,
            total,
            accuracy: ratio(correct, total),
            agreement: ratio(correct + none_agree, total),
        });
    }
    RoleReport { roles, mismatches }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassScore {
    pub class: String,
    pub correct: usize,
    pub total: usize,
    pub accuracy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PassiveReport {
    pub passive: ClassScore,
    pub active: ClassScore,
    /// Mean of the two per-class accuracies.
    pub macro_accuracy: f64,
    /// Pooled `correct / total` over both classes.
    pub overall_accuracy: f64,
    pub errors: Vec<String>,
}

/// Per-class accuracy of sentence-level passive predictions.
pub fn evaluate_passive(predicted: &BTreeMap<String, bool>, gold: &BTreeMap<String, bool>) -> Result<PassiveReport> {
    if predicted.len() != gold.len() || predicted.keys().ne(gold.keys()) {
        let missing: Vec<&String> = gold.keys().filter(|k| !predicted.contains_key(*k)).collect();
        let extra: Vec<&String> = predicted.keys().filter(|k| !gold.contains_key(*k)).collect();
        return Err(Error::Usage(format!(
            "passive evaluation key mismatch: {} missing predictions {:?}, {} unexpected {:?}",
            missing.len(),
            missing.iter().take(5).collect::<Vec<_>>(),
            extra.len(),
            extra.iter().take(5).collect::<Vec<_>>()
        )));
    }
    let (mut pc, mut pt, mut ac, mut at) = (0, 0, 0, 0);
    let mut errors = Vec::new();
    for (id, &g) in gold {
        let ok = predicted[id] == g;
        if g {
            pt += 1;
            pc += usize::from(ok);
        } else {
            at += 1;
            ac += usize::from(ok);
        }
        if !ok {
            errors.push(id.clone());
        }
    }
    Ok(passive_report(pc, pt, ac, at, errors))
}

fn passive_report(pc: usize, pt: usize, ac: usize, at: usize, errors: Vec<String>) -> PassiveReport {
    let passive = ClassScore { class: "passive".into(), correct: pc, total: pt, accuracy: ratio(pc, pt) };
    let active = ClassScore { class: "active".into(), correct: ac, total: at, accuracy: ratio(ac, at) };
    PassiveReport {
        macro_accuracy: (passive.accuracy + active.accuracy) / 2.0,
        overall_accuracy: ratio(pc + ac, pt + at),
        passive,
        active,
        errors,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Extractor {
    Tea,
    Baseline,
}

impl Extractor {
    pub fn display_name(self) -> &'static str {
        match self {
            Extractor::Tea => "TEA Nets",
            Extractor::Baseline => "Baseline",
        }
    }
}

impl std::str::FromStr for Extractor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tea" => Ok(Extractor::Tea),
            "baseline" => Ok(Extractor::Baseline),
            other => Err(Error::Usage(format!("unknown extractor `{other}`"))),
        }
    }
}

/// Records and sentence-level passive predictions of one extractor.
pub fn predict(corpus: &Corpus, extractor: Extractor) -> (Vec<SvoRecord>, BTreeMap<String, bool>) {
    let mut records = Vec::new();
    let mut flags = BTreeMap::new();
    for s in corpus.sentences() {
        match extractor {
            Extractor::Tea => {
                records.extend(extract_sentence(s));
                flags.insert(s.sent_id.clone(), sentence_is_passive(s));
            }
            Extractor::Baseline => {
                let r = extract_baseline_sentence(s);
                flags.insert(s.sent_id.clone(), r.is_passive);
                records.push(r);
            }
        }
    }
    crate::extract::number_records(&mut records, 0);
    (records, flags)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchmarkReport {
    pub extractor: Extractor,
    pub sentences: usize,
    pub roles: RoleReport,
    pub passive: PassiveReport,
}

/// Scores `extractor` on `corpus` against `gold`. The gold must cover
/// exactly the corpus sentences.
pub fn run_benchmark(corpus: &Corpus, gold: &[GoldTriple], extractor: Extractor) -> Result<BenchmarkReport> {
    let (records, predicted_flags) = predict(corpus, extractor);
    let gold_flags: BTreeMap<String, bool> = gold.iter().map(|g| (g.sent_id.clone(), g.is_passive)).collect();
    Ok(BenchmarkReport {
        extractor,
        sentences: gold.len(),
        roles: evaluate_roles(&records, gold),
        passive: evaluate_passive(&predicted_flags, &gold_flags)?,
    })
}

/// Fixed-width role table: Extractor, Role, Correct, Total, Accuracy, plus
/// the both-empty agreement columns.
pub fn role_table(reports: &[&BenchmarkReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<10} {:<7} {:>7} {:>6} {:>8} {:>9} {:>9}",
        "Extractor", "Role", "Correct", "Total", "Accuracy", "BothNone", "Agreement"
    );
    for r in reports {
        for s in &r.roles.roles {
            let role = match s.role {
                Role::Agent => "Agent",
                Role::Event => "Event",
                Role::Target => "Target",
            };
            let _ = writeln!(
                out,
                "{:<10} {:<7} {:>7} {:>6} {:>8.3} {:>9} {:>9.3}",
                r.extractor.display_name(),
                role,
                s.correct,
                s.total,
                s.accuracy,
                s.none_agree,
                s.agreement
            );
        }
    }
    out
}

/// Fixed-width passive table: Passive and Active rows, pooled Overall and
/// Macro Avg (mean of the class accuracies).
pub fn passive_table(report: &PassiveReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<10} {:>7} {:>6} {:>8}", "Class", "Correct", "Total", "Accuracy");
    for c in [&report.passive, &report.active] {
        let name = if c.class == "passive" { "Passive" } else { "Active" };
        let _ = writeln!(out, "{:<10} {:>7} {:>6} {:>8.3}", name, c.correct, c.total, c.accuracy);
    }
    let _ = writeln!(
        out,
        "{:<10} {:>7} {:>6} {:>8.3}",
        "Overall",
        report.passive.correct + report.active.correct,
        report.passive.total + report.active.total,
        report.overall_accuracy
    );
    let _ = writeln!(out, "{:<10} {:>7} {:>6} {:>8.3}", "Macro Avg", "", "", report.macro_accuracy);
    out
}
