//! Fixed-size approximate bands.
//!
//! * `find_sum`: starts from the largest chain band of size at most `k`
//!   and extends it greedily; area at most `sqrt(n) + 1` times optimal.
//! * `find_inf`: picks the `k - 1` series closest to the seed in the
//!   sup norm; width at most twice optimal.
//! * `peel`: the classic baseline, repeatedly deleting the series whose
//!   removal shrinks the envelope area most (seed always kept).

use crate::chain::BandChain;
use crate::model::{envelope, Band, SeriesMatrix};
use crate::{Error, Result};

/// Which algorithm produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    FindSum,
    FindInf,
    Peel,
    Oracle,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::FindSum => "findsum",
            Algorithm::FindInf => "findinf",
            Algorithm::Peel => "peel",
            Algorithm::Oracle => "oracle",
        }
    }
}

/// Candidate pool used by the greedy phase of `find_sum`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateMode {
    /// Candidates drawn from the next chain band.
    NextBand,
    /// Candidates drawn from all remaining series.
    AllRemaining,
}

/// A fixed-size band and how it was obtained.
#[derive(Debug, Clone)]
pub struct ApproxResult {
    pub band: Band,
    pub k: usize,
    pub algorithm: Algorithm,
    /// Chain index the greedy phase started from (`find_sum` only).
    pub base_band_index: Option<usize>,
    pub candidate_mode: Option<CandidateMode>,
    /// Largest sup-norm distance among selected series (`find_inf` only).
    pub max_selected_distance: Option<f64>,
}

/// Resolves a `k` argument that may be a fraction: values in (0, 1) mean
/// `floor(k * n)`, values >= 1 must be integers.
pub fn resolve_k(k: f64, n: usize) -> Result<usize> {
    if !k.is_finite() || k <= 0.0 {
        return Err(Error::KOutOfRange);
    }
    let resolved = if k < 1.0 {
        (k * n as f64).floor() as usize
    } else {
        if k.fract() != 0.0 {
            return Err(Error::KOutOfRange);
        }
        k as usize
    };
    if resolved < 1 || resolved > n {
        return Err(Error::KOutOfRange);
    }
    Ok(resolved)
}

/// Approximates the minimum-area band of size `k` using the chain.
pub fn find_sum(matrix: &SeriesMatrix, k: usize, chain: &BandChain) -> Result<ApproxResult> {
    let n = matrix.series_count();
    if k < 1 || k > n {
        return Err(Error::KOutOfRange);
    }
    let j = match chain
        .bands
        .iter()
        .rposition(|b| b.members.len() <= k)
    {
        Some(j) => j,
        None => {
            return Err(Error::KBelowMinimalBand {
                minimal: chain.bands[0].members.len(),
            })
        }
    };
    let base = &chain.bands[j];

    // sqrt(n) compared as a real, unrounded.
    let wants_next_band = (base.members.len() as f64) <= k as f64 - (n as f64).sqrt();
    let (pool, mode) = if wants_next_band && j + 1 < chain.bands.len() {
        let next = &chain.bands[j + 1];
        let pool: Vec<usize> = next
            .members
            .iter()
            .copied()
            .filter(|l| !base.contains(*l))
            .collect();
        (pool, CandidateMode::NextBand)
    } else {
        let pool: Vec<usize> = (0..n).filter(|&l| !base.contains(l)).collect();
        (pool, CandidateMode::AllRemaining)
    };

    let members = greedy_extend(matrix, &base.members, &pool, k - base.members.len())?;
    Ok(ApproxResult {
        band: envelope(matrix, &members)?,
        k,
        algorithm: Algorithm::FindSum,
        base_band_index: Some(j),
        candidate_mode: Some(mode),
        max_selected_distance: None,
    })
}

/// Adds `count` series from `pool` to `base`, each step picking the
/// candidate that minimizes the resulting envelope area (ties broken by
/// lowest series index).
pub fn greedy_extend(
    matrix: &SeriesMatrix,
    base: &[usize],
    pool: &[usize],
    count: usize,
) -> Result<Vec<usize>> {
    if pool.len() < count {
        return Err(Error::InsufficientCandidates);
    }
    let band = envelope(matrix, base)?;
    let m = matrix.position_count();
    let mut lower = band.lower;
    let mut upper = band.upper;
    let mut members = band.members;
    let mut remaining: Vec<usize> = {
        let mut p = pool.to_vec();
        p.sort_unstable();
        p.dedup();
        p.retain(|l| members.binary_search(l).is_err());
        p
    };
    if remaining.len() < count {
        return Err(Error::InsufficientCandidates);
    }

    for _ in 0..count {
        let mut best: Option<(f64, usize, usize)> = None; // (marginal, series, slot)
        for (slot, &cand) in remaining.iter().enumerate() {
            let row = matrix.series(cand);
            let mut marginal = 0.0;
            for i in 0..m {
                marginal += (row[i] - upper[i]).max(0.0) + (lower[i] - row[i]).max(0.0);
            }
            // remaining is sorted, so strict < keeps the lowest index on ties
            if best.map_or(true, |(b, _, _)| marginal < b) {
                best = Some((marginal, cand, slot));
            }
        }
        let (_, chosen, slot) = best.expect("non-empty pool");
        remaining.remove(slot);
        let row = matrix.series(chosen);
        for i in 0..m {
            lower[i] = lower[i].min(row[i]);
            upper[i] = upper[i].max(row[i]);
        }
        members.push(chosen);
    }
    members.sort_unstable();
    Ok(members)
}

/// Selects the seed plus the `k - 1` series closest to it in sup norm.
pub fn find_inf(matrix: &SeriesMatrix, k: usize) -> Result<ApproxResult> {
    let n = matrix.series_count();
    if k < 1 || k > n {
        return Err(Error::KOutOfRange);
    }
    let seed = matrix.seed_index();
    let seed_row = matrix.seed();
    let mut distances: Vec<(f64, usize)> = (0..n)
        .filter(|&l| l != seed)
        .map(|l| {
            let d = matrix
                .series(l)
                .iter()
                .zip(seed_row)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max);
            (d, l)
        })
        .collect();
    distances.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let mut members = vec![seed];
    let mut max_distance = 0.0f64;
    for &(d, l) in distances.iter().take(k - 1) {
        members.push(l);
        max_distance = max_distance.max(d);
    }
    members.sort_unstable();
    Ok(ApproxResult {
        band: envelope(matrix, &members)?,
        k,
        algorithm: Algorithm::FindInf,
        base_band_index: None,
        candidate_mode: None,
        max_selected_distance: Some(max_distance),
    })
}

/// Baseline: starting from all series, repeatedly removes the non-seed
/// series whose removal decreases the envelope area the most (ties broken
/// by lowest index) until `k` remain.
pub fn peel(matrix: &SeriesMatrix, k: usize) -> Result<ApproxResult> {
    let n = matrix.series_count();
    if k < 1 || k > n {
        return Err(Error::KOutOfRange);
    }
    let seed = matrix.seed_index();
    let mut members: Vec<usize> = matrix.all_indices();
    while members.len() > k {
        let mut best: Option<(f64, usize, usize)> = None; // (area after removal, series, slot)
        for (slot, &cand) in members.iter().enumerate() {
            if cand == seed {
                continue;
            }
            let rest: Vec<usize> = members
                .iter()
                .copied()
                .filter(|&l| l != cand)
                .collect();
            let area = envelope(matrix, &rest)?.area;
            if best.map_or(true, |(b, _, _)| area < b) {
                best = Some((area, cand, slot));
            }
        }
        let (_, _, slot) = best.expect("k >= 1 leaves the seed");
        members.remove(slot);
    }
    Ok(ApproxResult {
        band: envelope(matrix, &members)?,
        k,
        algorithm: Algorithm::Peel,
        base_band_index: None,
        candidate_mode: None,
        max_selected_distance: None,
    })
}
