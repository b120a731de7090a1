//! Shared helpers for integration tests: small random instances on an
//! integer value grid, and subset enumeration utilities independent of
//! the library's solvers.
#![allow(dead_code)] // not every test binary uses every helper

use confband::SeriesMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random instance with n in [2, 8], m in [1, 5], integer values in [0, 9].
pub fn random_small_instance(rng: &mut ChaCha8Rng) -> SeriesMatrix {
    random_instance(rng, 2, 8, 1, 5)
}

pub fn random_instance(
    rng: &mut ChaCha8Rng,
    n_min: usize,
    n_max: usize,
    m_min: usize,
    m_max: usize,
) -> SeriesMatrix {
    let n = rng.gen_range(n_min..=n_max);
    let m = rng.gen_range(m_min..=m_max);
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..m).map(|_| rng.gen_range(0..10) as f64).collect())
        .collect();
    let seed_index = rng.gen_range(0..n);
    SeriesMatrix::new(rows, seed_index).unwrap()
}

/// Alpha drawn from the grid {0.1, 0.2, ..., 5.0}.
pub fn random_alpha(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(1..=50) as f64 / 10.0
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All seed-containing subsets as (members, area, width) triples,
/// computed directly from the matrix without the library's envelope
/// helper so the enumeration stays an independent check.
pub fn enumerate_subsets(matrix: &SeriesMatrix) -> Vec<(Vec<usize>, f64, f64)> {
    let n = matrix.series_count();
    let seed = matrix.seed_index();
    let others: Vec<usize> = (0..n).filter(|&l| l != seed).collect();
    let m = matrix.position_count();
    let mut out = Vec::with_capacity(1 << others.len());
    for mask in 0..(1u32 << others.len()) {
        let mut members = vec![seed];
        for (bit, &l) in others.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                members.push(l);
            }
        }
        members.sort_unstable();
        let mut area = 0.0;
        let mut width = 0.0f64;
        for i in 0..m {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for &l in &members {
                lo = lo.min(matrix.value(l, i));
                hi = hi.max(matrix.value(l, i));
            }
            area += hi - lo;
            width = width.max(hi - lo);
        }
        out.push((members, area, width));
    }
    out
}

/// Inclusion-maximal minimizer of `area - alpha * |members|` over the
/// pre-enumerated subsets (union of all optimizers within tolerance).
pub fn brute_regband(subsets: &[(Vec<usize>, f64, f64)], alpha: f64) -> (Vec<usize>, f64) {
    let mut best = f64::INFINITY;
    for (members, area, _) in subsets {
        best = best.min(area - alpha * members.len() as f64);
    }
    let tol = 1e-9 * (1.0 + best.abs());
    let mut union: Vec<usize> = Vec::new();
    for (members, area, _) in subsets {
        if area - alpha * members.len() as f64 <= best + tol {
            union.extend(members.iter().copied());
        }
    }
    union.sort_unstable();
    union.dedup();
    (union, best)
}
