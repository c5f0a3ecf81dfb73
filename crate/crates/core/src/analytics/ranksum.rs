use serde::Serialize;

use crate::error::{Error, Result};

/// Largest `n_a · n_b` for which the exact null distribution is used.
pub const EXACT_LIMIT: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RankSumMethod {
    Exact,
    Normal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RankSumResult {
    /// Mann-Whitney U of the first sample.
    pub u: f64,
    /// Two-sided p-value.
    pub p: f64,
    pub method: RankSumMethod,
    pub n_a: usize,
    pub n_b: usize,
}

/// Midranks of the pooled sample, doubled so they stay integral.
fn doubled_midranks(pooled: &[f64]) -> Vec<u64> {
    let mut order: Vec<usize> = (0..pooled.len()).collect();
    order.sort_by(|&i, &j| pooled[i].total_cmp(&pooled[j]));
    let mut ranks = vec![0; pooled.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && pooled[order[end]] == pooled[order[start]] {
            end += 1;
        }
        // positions start+1 ..= end share the midrank (start+1+end)/2
        let doubled = (start + 1 + end) as u64;
        for &i in &order[start..end] {
            ranks[i] = doubled;
        }
        start = end;
    }
    ranks
}

/// Mann-Whitney U test, two-sided. Exact null distribution over all
/// equally likely splits of the (midranked) pooled sample when
/// `n_a · n_b ≤ 400`, otherwise the tie-corrected normal approximation with
/// continuity correction.
pub fn rank_sum_test(a: &[f64], b: &[f64]) -> Result<RankSumResult> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Usage("rank-sum test needs two non-empty samples".into()));
    }
    if a.iter().chain(b).any(|v| v.is_nan()) {
        return Err(Error::Data("rank-sum test input contains NaN".into()));
    }
    let (n_a, n_b) = (a.len(), b.len());
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let ranks = doubled_midranks(&pooled);
    let doubled_w_a: u64 = ranks[..n_a].iter().sum();
    // 2U_a = 2W_a − n_a(n_a + 1)
    let doubled_u = doubled_w_a - (n_a * (n_a + 1)) as u64;
    let u = doubled_u as f64 / 2.0;

    if n_a * n_b <= EXACT_LIMIT {
        let p = exact_p(&ranks, n_a, doubled_u);
        Ok(RankSumResult { u, p, method: RankSumMethod::Exact, n_a, n_b })
    } else {
        let p = normal_p(&pooled, n_a, n_b, u);
        Ok(RankSumResult { u, p, method: RankSumMethod::Normal, n_a, n_b })
    }
}

/// Two-sided exact p for doubled statistic `doubled_u` of the first `n_a`
/// entries. Counts subsets of the smaller sample's size by doubled rank sum.
fn exact_p(ranks: &[u64], n_a: usize, doubled_u: u64) -> f64 {
    let n = ranks.len();
    let n_b = n - n_a;
    let (m, swapped) = if n_b < n_a { (n_b, true) } else { (n_a, false) };
    let max_sum: u64 = {
        let mut sorted = ranks.to_vec();
        sorted.sort_unstable_by(|x, y| y.cmp(x));
        sorted[..m].iter().sum()
    };
    let width = max_sum as usize + 1;
    // counts[k * width + s]: k-subsets with doubled rank sum s
    let mut counts = vec![0u128; (m + 1) * width];
    counts[0] = 1;
    for &r in ranks {
        let r = r as usize;
        for k in (1..=m).rev() {
            for s in (r..width).rev() {
                let add = counts[(k - 1) * width + s - r];
                if add != 0 {
                    counts[k * width + s] += add;
                }
            }
        }
    }
    let offset = (m * (m + 1)) as u64;
    let doubled_nn = 2 * (n_a * n_b) as u64;
    // statistic of the enumerated sample
    let target = if swapped { doubled_nn - doubled_u } else { doubled_u };
    let row = &counts[m * width..];
    let (mut total, mut le, mut ge) = (0u128, 0u128, 0u128);
    for (s, &c) in row.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let du = s as u64 - offset;
        total += c;
        if du <= target {
            le += c;
        }
        if du >= target {
            ge += c;
        }
    }
    let tail = le.min(ge);
    (2.0 * (tail as f64) / (total as f64)).min(1.0)
}

fn normal_p(pooled: &[f64], n_a: usize, n_b: usize, u: f64) -> f64 {
    let n = (n_a + n_b) as f64;
    let mut sorted = pooled.to_vec();
    sorted.sort_by(f64::total_cmp);
    let tie_term: f64 = sorted
        .chunk_by(|x, y| x == y)
        .map(|g| {
            let t = g.len() as f64;
            t * t * t - t
        })
        .sum();
    let nn = (n_a * n_b) as f64;
    let mu = nn / 2.0;
    let var = nn / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if var <= 0.0 {
        return 1.0;
    }
    let z = ((u - mu).abs() - 0.5).max(0.0) / var.sqrt();
    statrs::function::erf::erfc(z / std::f64::consts::SQRT_2).min(1.0)
}
