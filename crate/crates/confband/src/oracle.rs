//! Brute-force exact solvers and random-instance generation.
//!
//! The exact solvers enumerate every seed-containing subset and serve as
//! ground truth for the cut-based and greedy algorithms; they are capped
//! at [`ORACLE_CAP`] series.

use crate::model::{envelope, Band, SeriesMatrix};
use crate::{Error, Result};
use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Maximum `n` the exhaustive solvers accept.
pub const ORACLE_CAP: usize = 12;

const EPS: f64 = 1e-9;

fn non_seed_indices(matrix: &SeriesMatrix) -> Vec<usize> {
    (0..matrix.series_count())
        .filter(|&l| l != matrix.seed_index())
        .collect()
}

fn check_cap(matrix: &SeriesMatrix) -> Result<()> {
    if matrix.series_count() > ORACLE_CAP {
        return Err(Error::InstanceTooLarge);
    }
    Ok(())
}

/// Exact minimum-area band of size `k`. Among score ties the
/// lexicographically smallest member set wins.
pub fn exact_sumband(matrix: &SeriesMatrix, k: usize) -> Result<Band> {
    exact_fixed_size(matrix, k, |band| band.area)
}

/// Exact minimum-width band of size `k`, same tie-break as
/// [`exact_sumband`].
pub fn exact_infband(matrix: &SeriesMatrix, k: usize) -> Result<Band> {
    exact_fixed_size(matrix, k, |band| band.width)
}

fn exact_fixed_size(
    matrix: &SeriesMatrix,
    k: usize,
    score: impl Fn(&Band) -> f64,
) -> Result<Band> {
    check_cap(matrix)?;
    if k < 1 || k > matrix.series_count() {
        return Err(Error::KOutOfRange);
    }
    let others = non_seed_indices(matrix);
    let mut best: Option<(f64, Band)> = None;
    // combinations() yields lexicographic order, so keeping only strict
    // improvements leaves the lexicographically smallest optimum.
    for combo in others.iter().copied().combinations(k - 1) {
        let mut members = combo;
        members.push(matrix.seed_index());
        let band = envelope(matrix, &members)?;
        let s = score(&band);
        if best.as_ref().map_or(true, |(b, _)| s < b - EPS) {
            best = Some((s, band));
        }
    }
    Ok(best.expect("at least one subset").1)
}

/// Exact regularized band: minimizes `s1(U) - alpha * |U|` over all
/// seed-containing subsets and returns the inclusion-maximal optimizer
/// (the union of all optimizers, which is itself optimal because the
/// minimizers of a submodular function form a lattice).
pub fn exact_regband(matrix: &SeriesMatrix, alpha: f64) -> Result<Band> {
    check_cap(matrix)?;
    if !(alpha > 0.0) {
        return Err(Error::InvalidAlpha);
    }
    let others = non_seed_indices(matrix);
    let seed = matrix.seed_index();
    let mut best = f64::INFINITY;
    let mut scored: Vec<(f64, Vec<usize>)> = Vec::new();
    for mask in 0..(1u32 << others.len()) {
        let mut members = vec![seed];
        for (bit, &l) in others.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                members.push(l);
            }
        }
        let band = envelope(matrix, &members)?;
        let q = band.area - alpha * band.members.len() as f64;
        if q < best {
            best = q;
        }
        scored.push((q, band.members));
    }
    let tol = EPS * (1.0 + best.abs());
    let mut union: Vec<usize> = Vec::new();
    for (q, members) in scored {
        if q <= best + tol {
            union.extend(members);
        }
    }
    union.sort_unstable();
    union.dedup();
    envelope(matrix, &union)
}

/// Shape of a randomly generated instance.
#[derive(Debug, Clone)]
pub struct InstanceSpec {
    pub n: usize,
    pub m: usize,
    /// Values are snapped to multiples of this step (0 keeps them
    /// continuous).
    pub resolution: f64,
    pub seed: u64,
    pub flavor: Flavor,
}

#[derive(Debug, Clone)]
pub enum Flavor {
    /// Independent values uniform in `[0, 10)`.
    Uniform,
    /// Each series is a random walk from a uniform start.
    RandomWalk,
    /// A tight bundle around a common base curve plus scattered outliers.
    Clustered { outliers: usize },
}

/// Deterministically generates a matrix from the spec; series 0 is the
/// seed (for the clustered flavor it sits at the bundle center).
pub fn generate(spec: &InstanceSpec) -> Result<SeriesMatrix> {
    if spec.n == 0 || spec.m == 0 {
        return Err(Error::InvalidMatrix("empty instance spec".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let snap = |v: f64| {
        if spec.resolution > 0.0 {
            (v / spec.resolution).round() * spec.resolution
        } else {
            v
        }
    };
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(spec.n);
    match spec.flavor {
        Flavor::Uniform => {
            for _ in 0..spec.n {
                rows.push((0..spec.m).map(|_| snap(rng.gen_range(0.0..10.0))).collect());
            }
        }
        Flavor::RandomWalk => {
            for _ in 0..spec.n {
                let mut v = rng.gen_range(0.0..10.0);
                let mut row = Vec::with_capacity(spec.m);
                for _ in 0..spec.m {
                    row.push(snap(v));
                    v += rng.gen_range(-1.0..1.0);
                }
                rows.push(row);
            }
        }
        Flavor::Clustered { outliers } => {
            let outliers = outliers.min(spec.n - 1);
            let base: Vec<f64> = (0..spec.m).map(|_| rng.gen_range(4.0..6.0)).collect();
            let bundle_spread = rng.gen_range(0.1..0.3);
            for l in 0..spec.n {
                let outlier = l >= spec.n - outliers;
                let spread = if l == 0 {
                    0.0
                } else if outlier {
                    rng.gen_range(2.0..5.0)
                } else {
                    bundle_spread
                };
                rows.push(
                    base.iter()
                        .map(|&b| {
                            // Bundle members deviate by exactly +-spread
                            // so the bundle envelope saturates after a few
                            // members and the whole bundle forms one band.
                            let dev = if outlier {
                                rng.gen_range(-1.0..1.0)
                            } else if rng.gen_bool(0.5) {
                                1.0
                            } else {
                                -1.0
                            };
                            snap(b + dev * spread)
                        })
                        .collect(),
                );
            }
        }
    }
    SeriesMatrix::new(rows, 0)
}
