use serde::Serialize;

use crate::error::Error;
use crate::lexicon::ScalarNorms;

/// How multiword labels are scored.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum NormMode {
    /// One score per found word ("big argument" gives two entries).
    #[default]
    Split,
    /// One score per label: the mean over its found words.
    Mean,
}

impl std::str::FromStr for NormMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "split" => Ok(NormMode::Split),
            "mean" => Ok(NormMode::Mean),
            other => Err(Error::Usage(format!("unknown norm mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct NormJoin {
    /// (word or label, score) in input order.
    pub scores: Vec<(String, f64)>,
    /// Labels with no word in the norms.
    pub omitted: usize,
}

impl NormJoin {
    pub fn values(&self) -> Vec<f64> {
        self.scores.iter().map(|(_, v)| *v).collect()
    }
}

pub fn join_norms<S: AsRef<str>>(labels: &[S], norms: &ScalarNorms, mode: NormMode) -> NormJoin {
    let mut out = NormJoin::default();
    for label in labels {
        let label = label.as_ref();
        let found: Vec<(&str, f64)> = label
            .split_whitespace()
            .filter_map(|w| norms.lookup(w).map(|v| (w, v)))
            .collect();
        if found.is_empty() {
            out.omitted += 1;
            continue;
        }
        match mode {
            NormMode::Split => out.scores.extend(found.into_iter().map(|(w, v)| (w.to_string(), v))),
            NormMode::Mean => {
                let mean = found.iter().map(|(_, v)| v).sum::<f64>() / found.len() as f64;
                out.scores.push((label.to_string(), mean));
            }
        }
    }
    out
}
