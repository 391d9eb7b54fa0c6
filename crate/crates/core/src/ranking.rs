//! Rankings, Spearman correlation and top-K agreement curves.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RankingError {
    #[error("score vectors have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("need at least two distinct scores in each vector")]
    DegenerateInput,
    #[error("K = {k} outside 2..={n}")]
    KOutOfRange { k: usize, n: usize },
}

/// Descending-score order of a score vector with average ranks for ties.
#[derive(Debug, Clone, PartialEq)]
pub struct Ranking {
    /// Node indices, best first; equal scores keep index order.
    pub order: Vec<usize>,
    /// 1-based rank per node; tied nodes share the mean of their positions.
    pub ranks: Vec<f64>,
}

fn descending(a: f64, b: f64) -> Ordering {
    b.partial_cmp(&a).unwrap_or(Ordering::Equal)
}

impl Ranking {
    pub fn from_scores(scores: &[f64]) -> Self {
        let mut order: Vec<usize> = (0..scores.len()).collect();
        order.sort_by(|&i, &j| descending(scores[i], scores[j]).then(i.cmp(&j)));
        let mut ranks = vec![0.0; scores.len()];
        let mut start = 0;
        while start < order.len() {
            let mut end = start + 1;
            while end < order.len() && scores[order[end]] == scores[order[start]] {
                end += 1;
            }
            // positions start+1 ..= end share their mean
            let mean = (start + 1 + end) as f64 / 2.0;
            for &node in &order[start..end] {
                ranks[node] = mean;
            }
            start = end;
        }
        Self { order, ranks }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

fn pearson(x: &[f64], y: &[f64]) -> Result<f64, RankingError> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(RankingError::DegenerateInput);
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Spearman's rho: Pearson correlation of the average-rank vectors.
pub fn spearman(a: &[f64], b: &[f64]) -> Result<f64, RankingError> {
    if a.len() != b.len() {
        return Err(RankingError::LengthMismatch(a.len(), b.len()));
    }
    if a.len() < 2 {
        return Err(RankingError::DegenerateInput);
    }
    pearson(&Ranking::from_scores(a).ranks, &Ranking::from_scores(b).ranks)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankComparison {
    pub rho_full: f64,
    /// `(K, rho)`: top-K nodes of `a` against their positions in `b`.
    pub curve_ab: Vec<(usize, f64)>,
    /// `(K, rho)`: top-K nodes of `b` against their positions in `a`.
    pub curve_ba: Vec<(usize, f64)>,
}

/// Roughly logarithmic grid of `K` values in `2..=n`, always ending at `n`.
pub fn default_k_grid(n: usize) -> Vec<usize> {
    let mut ks = Vec::new();
    let mut x = 2.0f64;
    while (x.round() as usize) < n {
        let k = x.round() as usize;
        if ks.last() != Some(&k) {
            ks.push(k);
        }
        x *= 10f64.powf(0.1);
    }
    if n >= 2 {
        ks.push(n);
    }
    ks
}

/// One point of a top-K curve: the top `k` nodes by `lead` (in `lead`'s
/// order) ranked against their global ranks in `other`.
///
/// Returns NaN when either side is constant over those nodes, which only
/// happens with tied scores.
fn topk_point(lead: &Ranking, other: &Ranking, k: usize) -> f64 {
    let top = &lead.order[..k];
    let local: Vec<f64> = top.iter().map(|&i| lead.ranks[i]).collect();
    let global: Vec<f64> = top.iter().map(|&i| other.ranks[i]).collect();
    // Re-rank both sides among the K nodes. Negating keeps "rank 1 is best",
    // so at K = N the rank vectors are exactly those behind `spearman(a, b)`.
    let neg = |v: &[f64]| v.iter().map(|r| -r).collect::<Vec<_>>();
    spearman(&neg(&local), &neg(&global)).unwrap_or(f64::NAN)
}

/// Bidirectional top-K Spearman curves.
///
/// The two directions generally differ before `K = N` because the first
/// `K` nodes of each measure need not coincide; at `K = N` both equal
/// `rho_full`.
pub fn topk_curve(a: &[f64], b: &[f64], ks: &[usize]) -> Result<RankComparison, RankingError> {
    if a.len() != b.len() {
        return Err(RankingError::LengthMismatch(a.len(), b.len()));
    }
    let n = a.len();
    if let Some(&k) = ks.iter().find(|&&k| k < 2 || k > n) {
        return Err(RankingError::KOutOfRange { k, n });
    }
    let rho_full = spearman(a, b)?;
    let ra = Ranking::from_scores(a);
    let rb = Ranking::from_scores(b);
    let curve = |lead: &Ranking, other: &Ranking| ks.iter().map(|&k| (k, topk_point(lead, other, k))).collect();
    Ok(RankComparison {
        rho_full,
        curve_ab: curve(&ra, &rb),
        curve_ba: curve(&rb, &ra),
    })
}

/// For each `(method, scores)` column, the `n` best node labels in
/// descending score order; equal scores are ordered by label.
pub fn top_n_table(results: &[(&str, &[f64])], labels: &[String], n: usize) -> Vec<(String, Vec<String>)> {
    results
        .iter()
        .map(|(method, scores)| {
            let mut idx: Vec<usize> = (0..scores.len()).collect();
            idx.sort_by(|&i, &j| descending(scores[i], scores[j]).then_with(|| labels[i].cmp(&labels[j])));
            let top = idx.iter().take(n).map(|&i| labels[i].clone()).collect();
            (method.to_string(), top)
        })
        .collect()
}
