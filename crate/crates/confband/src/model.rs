//! Time-series data model, envelopes, and the band objective functions.

use crate::{Error, Result};

/// A fixed set of `n` time series of common length `m` with a designated
/// seed series. Immutable after construction; every solver in the crate
/// reads from this.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesMatrix {
    values: Vec<Vec<f64>>,
    seed_index: usize,
    labels: Option<Vec<String>>,
}

impl SeriesMatrix {
    /// Builds a matrix, validating shape and finiteness.
    pub fn new(values: Vec<Vec<f64>>, seed_index: usize) -> Result<Self> {
        Self::with_labels(values, seed_index, None)
    }

    pub fn with_labels(
        values: Vec<Vec<f64>>,
        seed_index: usize,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidMatrix("no series".into()));
        }
        let m = values[0].len();
        if m == 0 {
            return Err(Error::InvalidMatrix("zero-length series".into()));
        }
        for (idx, row) in values.iter().enumerate() {
            if row.len() != m {
                return Err(Error::InvalidMatrix(format!(
                    "series {} has length {}, expected {}",
                    idx,
                    row.len(),
                    m
                )));
            }
            if let Some(pos) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::InvalidMatrix(format!(
                    "non-finite value in series {} at position {}",
                    idx, pos
                )));
            }
        }
        if seed_index >= values.len() {
            return Err(Error::IndexOutOfRange(seed_index));
        }
        if let Some(ref l) = labels {
            if l.len() != values.len() {
                return Err(Error::InvalidMatrix("label count mismatch".into()));
            }
        }
        Ok(SeriesMatrix {
            values,
            seed_index,
            labels,
        })
    }

    /// Number of series `n`.
    pub fn series_count(&self) -> usize {
        self.values.len()
    }

    /// Number of positions `m`.
    pub fn position_count(&self) -> usize {
        self.values[0].len()
    }

    pub fn seed_index(&self) -> usize {
        self.seed_index
    }

    pub fn value(&self, series: usize, position: usize) -> f64 {
        self.values[series][position]
    }

    pub fn series(&self, series: usize) -> &[f64] {
        &self.values[series]
    }

    pub fn seed(&self) -> &[f64] {
        &self.values[self.seed_index]
    }

    pub fn label(&self, series: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[series].as_str())
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// All series indices, seed included.
    pub fn all_indices(&self) -> Vec<usize> {
        (0..self.series_count()).collect()
    }
}

/// A subset of series together with its envelope and scores.
#[derive(Debug, Clone, PartialEq)]
pub struct Band {
    /// Sorted member indices; always contains the seed.
    pub members: Vec<usize>,
    /// Per-position minimum over members.
    pub lower: Vec<f64>,
    /// Per-position maximum over members.
    pub upper: Vec<f64>,
    /// Sum over positions of `upper - lower`.
    pub area: f64,
    /// Maximum over positions of `upper - lower`.
    pub width: f64,
}

impl Band {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, series: usize) -> bool {
        self.members.binary_search(&series).is_ok()
    }
}

fn validated_members(matrix: &SeriesMatrix, members: &[usize]) -> Result<Vec<usize>> {
    if members.is_empty() {
        return Err(Error::EmptyBand);
    }
    let mut sorted: Vec<usize> = members.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if let Some(&bad) = sorted.iter().find(|&&i| i >= matrix.series_count()) {
        return Err(Error::IndexOutOfRange(bad));
    }
    if sorted.binary_search(&matrix.seed_index()).is_err() {
        return Err(Error::SeedNotInBand);
    }
    Ok(sorted)
}

/// Computes the envelope of `members` (per-position min/max) with both
/// scores populated. Members must be non-empty and include the seed.
pub fn envelope(matrix: &SeriesMatrix, members: &[usize]) -> Result<Band> {
    let members = validated_members(matrix, members)?;
    let m = matrix.position_count();
    let mut lower = vec![f64::INFINITY; m];
    let mut upper = vec![f64::NEG_INFINITY; m];
    for &l in &members {
        let row = matrix.series(l);
        for i in 0..m {
            lower[i] = lower[i].min(row[i]);
            upper[i] = upper[i].max(row[i]);
        }
    }
    let mut area = 0.0;
    let mut width: f64 = 0.0;
    for i in 0..m {
        let d = upper[i] - lower[i];
        area += d;
        width = width.max(d);
    }
    Ok(Band {
        members,
        lower,
        upper,
        area,
        width,
    })
}

/// Envelope area `s1(U)`: sum over positions of the envelope extent.
pub fn area_score(matrix: &SeriesMatrix, members: &[usize]) -> Result<f64> {
    envelope(matrix, members).map(|b| b.area)
}

/// Envelope width `s_inf(U)`: maximum envelope extent over positions.
pub fn width_score(matrix: &SeriesMatrix, members: &[usize]) -> Result<f64> {
    envelope(matrix, members).map(|b| b.width)
}

/// Regularized score `q(U; alpha) = s1(U) - alpha * |U|`.
pub fn reg_score(matrix: &SeriesMatrix, members: &[usize], alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidAlpha);
    }
    let band = envelope(matrix, members)?;
    Ok(band.area - alpha * band.members.len() as f64)
}

/// Seed construction policy when the input has no designated seed series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedPolicy {
    /// Point-wise lower median (element at rank `(n-1)/2` of the sorted
    /// values), so the seed is built from observed values where possible.
    Median,
    /// Point-wise arithmetic mean.
    Mean,
}

/// Appends a synthetic seed series (point-wise median or mean) to `rows`
/// and returns a matrix with the new series marked as seed.
///
/// Callers that enforce a size constraint `k` must solve for `k + 1` on
/// the returned matrix, since the appended seed does not count toward the
/// caller's `k`.
pub fn derive_seed(
    rows: Vec<Vec<f64>>,
    labels: Option<Vec<String>>,
    policy: SeedPolicy,
) -> Result<SeriesMatrix> {
    if rows.is_empty() {
        return Err(Error::InvalidMatrix("no series".into()));
    }
    let m = rows[0].len();
    let n = rows.len();
    let mut seed = Vec::with_capacity(m);
    let mut column = Vec::with_capacity(n);
    for i in 0..m {
        column.clear();
        for row in &rows {
            if i >= row.len() {
                return Err(Error::InvalidMatrix("ragged rows".into()));
            }
            column.push(row[i]);
        }
        let v = match policy {
            SeedPolicy::Median => {
                column.sort_by(|a, b| a.partial_cmp(b).unwrap());
                column[(n - 1) / 2]
            }
            SeedPolicy::Mean => column.iter().sum::<f64>() / n as f64,
        };
        seed.push(v);
    }
    let mut rows = rows;
    rows.push(seed);
    let labels = labels.map(|mut l| {
        l.push(
            match policy {
                SeedPolicy::Median => "median",
                SeedPolicy::Mean => "mean",
            }
            .to_string(),
        );
        l
    });
    SeriesMatrix::with_labels(rows, n, labels)
}
