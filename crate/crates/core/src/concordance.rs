//! Rank-agreement statistics: Kendall's tau-b between ranking pairs and
//! Kendall's W across the whole ensemble of rankings.
//!
//! Tau and W both use the tie corrections; with 74 zero-degree journals in
//! the data the uncorrected forms would be badly misleading. W works on
//! mid-ranks of the underlying values by default, with a variant that ranks
//! by the competition convention for sensitivity checks.

use serde::Serialize;
use thiserror::Error;

use crate::centrality::{competition_ranks, CentralityReport};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConcordanceError {
    #[error("rankings have different lengths: {0} vs {1}")]
    ShapeError(usize, usize),
    #[error("statistic undefined: all values tied")]
    UndefinedStatistic,
}

/// m rankings of the same n items as mid-rank values (ties averaged).
/// Each row sums to n(n+1)/2.
#[derive(Clone, Debug, PartialEq)]
pub struct RankMatrix {
    pub ranks: Vec<Vec<f64>>,
}

impl RankMatrix {
    /// Mid-ranks each judge's value list (descending).
    pub fn from_values(value_lists: &[Vec<f64>]) -> Result<Self, ConcordanceError> {
        let n = value_lists.first().map_or(0, Vec::len);
        for row in value_lists {
            if row.len() != n {
                return Err(ConcordanceError::ShapeError(n, row.len()));
            }
        }
        Ok(RankMatrix {
            ranks: value_lists.iter().map(|v| midranks(v)).collect(),
        })
    }

    pub fn judges(&self) -> usize {
        self.ranks.len()
    }

    pub fn items(&self) -> usize {
        self.ranks.first().map_or(0, Vec::len)
    }
}

/// Mid-ranks of `values` in descending order: tied values receive the
/// arithmetic mean of the rank positions they span.
pub fn midranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).expect("no NaN values"));
    let mut ranks = vec![0.0f64; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let mid = (i + j) as f64 / 2.0 + 1.0;
        for &idx in &order[i..=j] {
            ranks[idx] = mid;
        }
        i = j + 1;
    }
    ranks
}

/// Sum of t^3 - t over the tie groups of `values`.
fn tie_correction(values: &[f64]) -> f64 {
    let mut sorted: Vec<f64> = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("no NaN values"));
    let mut total = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j + 1 < sorted.len() && sorted[j + 1] == sorted[i] {
            j += 1;
        }
        let t = (j - i + 1) as f64;
        total += t * t * t - t;
        i = j + 1;
    }
    total
}

/// Tie-corrected Kendall's tau-b:
/// `(C - D) / sqrt((P - Tx)(P - Ty))` with `P = n(n-1)/2` and Tx, Ty the
/// tie-pair counts of the two lists.
pub fn kendall_tau_b(x: &[f64], y: &[f64]) -> Result<f64, ConcordanceError> {
    if x.len() != y.len() {
        return Err(ConcordanceError::ShapeError(x.len(), y.len()));
    }
    let n = x.len();
    let mut concordant = 0i64;
    let mut discordant = 0i64;
    let mut ties_x = 0i64;
    let mut ties_y = 0i64;
    for i in 0..n {
        for j in i + 1..n {
            let dx = x[i].partial_cmp(&x[j]).expect("no NaN values");
            let dy = y[i].partial_cmp(&y[j]).expect("no NaN values");
            match (dx.is_eq(), dy.is_eq()) {
                (true, true) => {
                    ties_x += 1;
                    ties_y += 1;
                }
                (true, false) => ties_x += 1,
                (false, true) => ties_y += 1,
                (false, false) => {
                    if dx == dy {
                        concordant += 1;
                    } else {
                        discordant += 1;
                    }
                }
            }
        }
    }
    let pairs = (n * (n - 1) / 2) as i64;
    let denom = ((pairs - ties_x) as f64 * (pairs - ties_y) as f64).sqrt();
    if denom == 0.0 {
        return Err(ConcordanceError::UndefinedStatistic);
    }
    Ok((concordant - discordant) as f64 / denom)
}

/// Tie-corrected Kendall's coefficient of concordance:
/// `W = 12 S / (m^2 (n^3 - n) - m sum(T_j))` where S is the squared
/// deviation of rank sums from their mean and T_j the tie correction of
/// judge j's ranking.
pub fn kendall_w(ranks: &RankMatrix) -> Result<f64, ConcordanceError> {
    kendall_w_from_rank_rows(&ranks.ranks)
}

/// W formula applied to arbitrary rank rows (one row per judge). The squared
/// deviations are taken from the empirical mean rank sum, which reduces to
/// `m(n+1)/2` when the rows are proper mid-ranks but also accepts
/// competition-ranked rows for the sensitivity variant.
pub fn kendall_w_from_rank_rows(rows: &[Vec<f64>]) -> Result<f64, ConcordanceError> {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    if m < 2 || n < 2 {
        return Err(ConcordanceError::ShapeError(m, n));
    }
    for row in rows {
        if row.len() != n {
            return Err(ConcordanceError::ShapeError(n, row.len()));
        }
    }
    let rank_sums: Vec<f64> = (0..n).map(|i| rows.iter().map(|r| r[i]).sum()).collect();
    let mean = rank_sums.iter().sum::<f64>() / n as f64;
    let s: f64 = rank_sums.iter().map(|r| (r - mean) * (r - mean)).sum();
    let nf = n as f64;
    let mf = m as f64;
    let ties: f64 = rows.iter().map(|row| tie_correction(row)).sum();
    let denom = mf * mf * (nf * nf * nf - nf) - mf * ties;
    if denom == 0.0 {
        return Err(ConcordanceError::UndefinedStatistic);
    }
    Ok(12.0 * s / denom)
}

/// Concordance of the three centrality rankings of one report.
#[derive(Clone, Debug, Serialize)]
pub struct ConcordanceResult {
    pub items: usize,
    /// W from mid-ranks of the underlying values (the default reading).
    pub w: f64,
    /// W with every judge ranked by the competition convention instead;
    /// quantifies how sensitive the statistic is to the tie handling.
    pub w_competition_ranks: f64,
    /// Pairwise tau-b over (degree, closeness, betweenness), row-major 3x3.
    pub tau: [[f64; 3]; 3],
}

/// Computes Kendall's W and the pairwise tau-b matrix across the degree,
/// closeness and betweenness columns of a centrality report.
pub fn centrality_concordance(
    report: &CentralityReport,
) -> Result<ConcordanceResult, ConcordanceError> {
    let n = report.len();
    if n < 2 {
        return Err(ConcordanceError::ShapeError(n, 2));
    }
    let degree: Vec<f64> = report.degree.iter().map(|&d| d as f64).collect();
    let columns = [&degree, &report.closeness, &report.betweenness];

    let values: Vec<Vec<f64>> = columns.iter().map(|c| (*c).clone()).collect();
    let w = kendall_w(&RankMatrix::from_values(&values)?)?;

    // sensitivity variant: the raw competition ranks go into the W formula
    // (mid-ranking them would reproduce `w` exactly, the tie structure is
    // the same)
    let comp: Vec<Vec<f64>> = columns
        .iter()
        .map(|c| competition_ranks(c).iter().map(|&r| r as f64).collect())
        .collect();
    let w_competition_ranks = kendall_w_from_rank_rows(&comp)?;

    let mut tau = [[0.0f64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            tau[i][j] = kendall_tau_b(columns[i], columns[j])?;
        }
    }
    Ok(ConcordanceResult {
        items: n,
        w,
        w_competition_ranks,
        tau,
    })
}
