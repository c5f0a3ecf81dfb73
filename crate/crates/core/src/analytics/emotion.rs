use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lexicon::{Emotion, EmotionLexicon};

pub const MIN_SAMPLES: usize = 100;
pub const DEFAULT_SAMPLES: usize = 1000;
/// Two-sided 5% critical value.
pub const Z_CRITICAL: f64 = 1.96;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmotionScore {
    pub emotion: Emotion,
    pub observed: u64,
    pub mu: f64,
    pub sigma: f64,
    /// `None` when the baseline has zero spread.
    pub z: Option<f64>,
    #[serde(rename = "significant@1.96")]
    pub significant: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmotionProfile {
    pub samples: usize,
    pub seed: u64,
    pub words: usize,
    pub scores: Vec<EmotionScore>,
}

impl EmotionProfile {
    pub fn score(&self, emotion: Emotion) -> &EmotionScore {
        self.scores.iter().find(|s| s.emotion == emotion).expect("all emotions present")
    }
}

fn count(words: impl Iterator<Item = impl AsRef<str>>, lex: &EmotionLexicon) -> [u64; 8] {
    let mut counts = [0u64; 8];
    for w in words {
        if let Some(set) = lex.emotions(w.as_ref()) {
            for e in set {
                counts[*e as usize] += 1;
            }
        }
    }
    counts
}

/// Emotion z-scores of `words` against `samples` random word lists of the
/// same length drawn uniformly, with replacement, from the lexicon
/// vocabulary. Sample `j` uses its own ChaCha stream of `seed`, so a longer
/// word list extends each baseline sample rather than redrawing it.
pub fn emotion_zscores<S: AsRef<str>>(words: &[S], lex: &EmotionLexicon, samples: usize, seed: u64) -> Result<EmotionProfile> {
    if samples < MIN_SAMPLES {
        return Err(Error::Usage(format!("emotion baseline needs at least {MIN_SAMPLES} samples, got {samples}")));
    }
    let observed = count(words.iter(), lex);
    let vocab = lex.vocabulary();
    let n = words.len();

    let mut sums = [0f64; 8];
    let mut sq = [0f64; 8];
    let mut draws = Vec::with_capacity(n);
    for j in 0..samples {
        draws.clear();
        if !vocab.is_empty() {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(j as u64);
            draws.extend((0..n).map(|_| vocab[rng.random_range(0..vocab.len())]));
        }
        let c = count(draws.iter(), lex);
        for e in 0..8 {
            let v = c[e] as f64;
            sums[e] += v;
            sq[e] += v * v;
        }
    }
    let m = samples as f64;
    let scores = Emotion::ALL
        .iter()
        .map(|&emotion| {
            let e = emotion as usize;
            let mu = sums[e] / m;
            let var = ((sq[e] - m * mu * mu) / (m - 1.0)).max(0.0);
            let sigma = var.sqrt();
            let z = (sigma > 0.0).then(|| (observed[e] as f64 - mu) / sigma);
            EmotionScore {
                emotion,
                observed: observed[e],
                mu,
                sigma,
                z,
                significant: z.is_some_and(|z| z.abs() >= Z_CRITICAL),
            }
        })
        .collect();
    Ok(EmotionProfile { samples, seed, words: n, scores })
}
