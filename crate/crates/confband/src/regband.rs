//! Exact regularized bands via a minimum-cut reduction.
//!
//! For a fixed `alpha > 0` the regularized objective
//! `q(U; alpha) = s1(U) - alpha * |U|` over seed-containing subsets is
//! minimized exactly by a minimum cut on a layered graph: one node per
//! distinct observed value per position (a-nodes), one node per series
//! (b-nodes), plus source and sink. The inclusion-maximal source-side
//! minimum cut realizes the "prefer larger |U|" tie-break.
//!
//! All capacities are uniformly rescaled by `alpha / m` relative to the
//! textbook weights. This keeps the argmin unchanged while avoiding
//! division by small `alpha`; the unscaled cut value is recovered by
//! multiplying the flow by `m / alpha`.

use crate::flow::FlowNetwork;
use crate::model::{envelope, Band, SeriesMatrix};
use crate::{Error, Result};

/// Per-position sorted distinct values with cumulative counts; the
/// skeleton of the cut graph.
#[derive(Debug, Clone)]
pub struct ValueGrid {
    positions: Vec<PositionGrid>,
    /// Matrix series index per grid ordinal.
    series: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct PositionGrid {
    /// Strictly increasing distinct values at this position.
    pub values: Vec<f64>,
    /// `cum_counts[j]` = number of series at this position with value
    /// `<= values[j]`; the last entry equals the series count.
    pub cum_counts: Vec<usize>,
    /// Rank of the seed's value within `values`.
    pub seed_rank: usize,
    /// Rank of each series' value (indexed by grid ordinal).
    pub ranks: Vec<usize>,
}

impl ValueGrid {
    pub fn positions(&self) -> &[PositionGrid] {
        &self.positions
    }

    /// Matrix series indices covered by the grid, in ordinal order.
    pub fn series(&self) -> &[usize] {
        &self.series
    }

    /// Number of series covered.
    pub fn series_count(&self) -> usize {
        self.series.len()
    }
}

/// Builds the value grid over all series of the matrix.
pub fn build_value_grid(matrix: &SeriesMatrix) -> ValueGrid {
    build_value_grid_for(matrix, &matrix.all_indices())
}

/// Builds the value grid restricted to `active` series. The seed must be
/// among them.
pub(crate) fn build_value_grid_for(matrix: &SeriesMatrix, active: &[usize]) -> ValueGrid {
    debug_assert!(active.contains(&matrix.seed_index()));
    let n = active.len();
    let m = matrix.position_count();
    let mut positions = Vec::with_capacity(m);
    for i in 0..m {
        let mut values: Vec<f64> = active.iter().map(|&l| matrix.value(l, i)).collect();
        values.sort_by(|a, b| a.partial_cmp(b).unwrap());
        values.dedup();
        let rank_of = |v: f64| values.partition_point(|&p| p < v);
        let mut cum_counts = vec![0usize; values.len()];
        let mut ranks = Vec::with_capacity(n);
        for &l in active {
            let r = rank_of(matrix.value(l, i));
            cum_counts[r] += 1;
            ranks.push(r);
        }
        for j in 1..cum_counts.len() {
            cum_counts[j] += cum_counts[j - 1];
        }
        let seed_rank = rank_of(matrix.value(matrix.seed_index(), i));
        positions.push(PositionGrid {
            values,
            cum_counts,
            seed_rank,
            ranks,
        });
    }
    ValueGrid {
        positions,
        series: active.to_vec(),
    }
}

/// Node ids of the constructed network.
#[derive(Debug, Clone)]
pub struct NetworkMap {
    pub source: usize,
    pub sink: usize,
    /// Node id of the first a-node of each position; rank `j` at
    /// position `i` is `a_offset[i] + j`.
    pub a_offset: Vec<usize>,
    /// Node id of the b-node of grid ordinal `l` is `b_offset + l`.
    pub b_offset: usize,
}

/// Builds the cut network for the grid at the given `alpha`, with all
/// capacities rescaled by `alpha / m`. `pinned` optionally gives a
/// (lower, upper) envelope that is connected to the source with big
/// arcs, forcing its value range into every returned cut.
pub fn build_network(
    grid: &ValueGrid,
    matrix: &SeriesMatrix,
    alpha: f64,
    pinned: Option<(&[f64], &[f64])>,
) -> Result<(FlowNetwork, NetworkMap)> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidAlpha);
    }
    let n = grid.series_count();
    let m = matrix.position_count();
    let scale = alpha / m as f64;

    let mut a_offset = Vec::with_capacity(m);
    let mut next = 2; // 0 = source, 1 = sink
    for pg in &grid.positions {
        a_offset.push(next);
        next += pg.values.len();
    }
    let b_offset = next;
    let node_count = next + n;
    let map = NetworkMap {
        source: 0,
        sink: 1,
        a_offset,
        b_offset,
    };

    let mut net = FlowNetwork::new(node_count, map.source, map.sink);
    for (i, pg) in grid.positions.iter().enumerate() {
        let a = |j: usize| map.a_offset[i] + j;
        let x = pg.values[pg.seed_rank];
        let last = pg.values.len() - 1;

        // Chains leading away from the seed value, toward the extremes.
        for j in (pg.seed_rank + 1)..=last {
            let cap = scale * (n - pg.cum_counts[j - 1]) as f64 + (pg.values[j - 1] - x);
            net.add_arc(a(j - 1), a(j), cap);
        }
        for j in (0..pg.seed_rank).rev() {
            let cap = scale * pg.cum_counts[j] as f64 + (x - pg.values[j + 1]);
            net.add_arc(a(j + 1), a(j), cap);
        }

        net.add_big_arc(map.source, a(pg.seed_rank));
        net.add_arc(a(last), map.sink, pg.values[last] - x);
        net.add_arc(a(0), map.sink, x - pg.values[0]);

        if let Some((lower, upper)) = pinned {
            let lo = pg.values.partition_point(|&p| p < lower[i]);
            let hi = pg.values.partition_point(|&p| p < upper[i]);
            debug_assert!(pg.values[lo] == lower[i] && pg.values[hi] == upper[i]);
            net.add_big_arc(map.source, a(lo));
            net.add_big_arc(map.source, a(hi));
        }

        for (ordinal, &rank) in pg.ranks.iter().enumerate() {
            net.add_arc(a(rank), map.b_offset + ordinal, scale);
            net.add_big_arc(map.b_offset + ordinal, a(rank));
        }
    }
    Ok((net, map))
}

/// Exact solution of the regularized band problem for one `alpha`.
#[derive(Debug, Clone)]
pub struct RegBandSolution {
    pub band: Band,
    pub alpha: f64,
    /// `q(band; alpha) = area - alpha * |band|`.
    pub objective: f64,
    /// Cut value in unscaled units; equals `n*m + (m/alpha) * objective`
    /// up to floating-point tolerance.
    pub cut_value: f64,
}

/// Solves the regularized band problem exactly. Among all optimal member
/// sets the inclusion-maximal one is returned (the size tie-break).
pub fn solve_regband(matrix: &SeriesMatrix, alpha: f64) -> Result<RegBandSolution> {
    let grid = build_value_grid(matrix);
    let (mut net, map) = build_network(&grid, matrix, alpha, None)?;
    let flow = net.max_flow();
    let cut = net.min_cut_max_side()?;
    let members = members_from_cut(&grid, &map, &cut.source_side);
    let band = envelope(matrix, &members)?;
    let objective = band.area - alpha * band.members.len() as f64;
    let m = matrix.position_count() as f64;
    Ok(RegBandSolution {
        band,
        alpha,
        objective,
        cut_value: flow * m / alpha,
    })
}

/// Restricted solve used by the chain enumeration: only `active` series
/// participate, and `pinned` (when given) is an envelope of an already
/// discovered band that must stay selected. Returns the member set as
/// matrix series indices.
pub(crate) fn solve_restricted(
    matrix: &SeriesMatrix,
    alpha: f64,
    active: &[usize],
    pinned: Option<(&[f64], &[f64])>,
) -> Result<Vec<usize>> {
    let grid = build_value_grid_for(matrix, active);
    let (mut net, map) = build_network(&grid, matrix, alpha, pinned)?;
    net.max_flow();
    let cut = net.min_cut_max_side()?;
    Ok(members_from_cut(&grid, &map, &cut.source_side))
}

fn members_from_cut(grid: &ValueGrid, map: &NetworkMap, source_side: &[usize]) -> Vec<usize> {
    source_side
        .iter()
        .filter(|&&node| node >= map.b_offset)
        .map(|&node| grid.series()[node - map.b_offset])
        .collect()
}
