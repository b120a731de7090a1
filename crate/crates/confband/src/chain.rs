//! Enumeration of all regularized bands and the resulting nested chain.
//!
//! Regularized bands for growing `alpha` form a chain
//! `B_0 ⊂ B_1 ⊂ … ⊂ B_L` of at most `n + 1` bands. A divide-and-conquer
//! scheme discovers all of them: given two known bands `U ⊊ V`, solving
//! at `gamma = (s1(V) - s1(U)) / (|V| - |U|) - delta / n^2` either finds
//! a strictly intermediate band or proves there is none.

use crate::model::{envelope, Band, SeriesMatrix};
use crate::regband::{build_value_grid, solve_regband, solve_restricted};
use crate::{Error, Result};

/// The nested sequence of all regularized bands with their breakpoints.
#[derive(Debug, Clone)]
pub struct BandChain {
    /// `bands[0] ⊂ bands[1] ⊂ …`; the last band is the full series set.
    pub bands: Vec<Band>,
    /// `breakpoints[i]` is the area-per-series ratio between `bands[i]`
    /// and `bands[i + 1]`: the `alpha` threshold where the solution jumps.
    pub breakpoints: Vec<f64>,
    /// Per series, the index of the smallest band containing it.
    pub first_inclusion: Vec<usize>,
    /// Minimal positive gap between observed values at a common position;
    /// zero for degenerate (all-identical) data.
    pub delta: f64,
    /// Number of regularized-band solves performed.
    pub regband_calls: usize,
    /// True when the `gamma` perturbation underflowed in double precision
    /// and a relative nudge was used instead.
    pub gamma_adjusted: bool,
}

impl BandChain {
    pub fn len(&self) -> usize {
        self.bands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bands.is_empty()
    }
}

/// Options for [`enumerate_chain_with`].
#[derive(Debug, Clone, Copy)]
pub struct ChainOptions {
    /// Solve subproblems on restricted instances (series outside `V`
    /// dropped, `U` replaced by its pinned envelope). Results are
    /// identical either way; restriction only speeds things up.
    pub restrict_subproblems: bool,
}

impl Default for ChainOptions {
    fn default() -> Self {
        ChainOptions {
            restrict_subproblems: true,
        }
    }
}

/// Minimal positive difference between two observed values at the same
/// position. Errors with [`Error::DegenerateData`] when every position
/// holds a single distinct value.
pub fn delta_gap(matrix: &SeriesMatrix) -> Result<f64> {
    let grid = build_value_grid(matrix);
    let mut delta = f64::INFINITY;
    for pg in grid.positions() {
        for w in pg.values.windows(2) {
            delta = delta.min(w[1] - w[0]);
        }
    }
    if delta.is_finite() {
        Ok(delta)
    } else {
        Err(Error::DegenerateData)
    }
}

/// Enumerates every distinct regularized band, with subproblem
/// restriction enabled.
pub fn enumerate_chain(matrix: &SeriesMatrix) -> Result<BandChain> {
    enumerate_chain_with(matrix, ChainOptions::default())
}

pub fn enumerate_chain_with(matrix: &SeriesMatrix, options: ChainOptions) -> Result<BandChain> {
    let n = matrix.series_count();
    let full: Vec<usize> = matrix.all_indices();

    let delta = match delta_gap(matrix) {
        Ok(d) => d,
        Err(Error::DegenerateData) => {
            // All subsets have zero area; the tie-break takes everything.
            let band = envelope(matrix, &full)?;
            return Ok(BandChain {
                first_inclusion: vec![0; n],
                bands: vec![band],
                breakpoints: Vec::new(),
                delta: 0.0,
                regband_calls: 0,
                gamma_adjusted: false,
            });
        }
        Err(e) => return Err(e),
    };

    let mut state = EnumState {
        matrix,
        options,
        delta_term: delta / (n as f64 * n as f64),
        discovered: Vec::new(),
        regband_calls: 0,
        gamma_adjusted: false,
    };

    // B_0: the solution as alpha -> 0+, represented by alpha = delta/n^2.
    // Not literally {seed}: zero-area companions of the seed are always
    // included by the tie-break.
    let b0 = solve_regband(matrix, state.delta_term)?;
    state.regband_calls += 1;
    let b0_members = b0.band.members.clone();
    state.discovered.push(b0.band);

    if b0_members.len() < n {
        let full_band = envelope(matrix, &full)?;
        state.discovered.push(full_band.clone());
        state.split(&b0_members, &full_band)?;
    }

    state.finish()
}

struct EnumState<'a> {
    matrix: &'a SeriesMatrix,
    options: ChainOptions,
    delta_term: f64,
    discovered: Vec<Band>,
    regband_calls: usize,
    gamma_adjusted: bool,
}

impl<'a> EnumState<'a> {
    /// Searches for a band strictly between `lower` (members) and
    /// `upper`; recurses on both sides when one is found.
    fn split(&mut self, lower: &[usize], upper: &Band) -> Result<()> {
        let lower_band = envelope(self.matrix, lower)?;
        let ratio = (upper.area - lower_band.area)
            / (upper.members.len() - lower_band.members.len()) as f64;
        let mut gamma = ratio - self.delta_term;
        if gamma >= ratio {
            // The perturbation vanished in double precision; use a
            // relative nudge that preserves the strict inequality.
            gamma = ratio * (1.0 - 2f64.powi(-40));
            self.gamma_adjusted = true;
        }

        let middle = if self.options.restrict_subproblems {
            solve_restricted(
                self.matrix,
                gamma,
                &upper.members,
                Some((&lower_band.lower, &lower_band.upper)),
            )?
        } else {
            solve_regband(self.matrix, gamma)?.band.members
        };
        self.regband_calls += 1;

        if middle.len() > lower.len() && middle.len() < upper.members.len() {
            let middle_band = envelope(self.matrix, &middle)?;
            self.discovered.push(middle_band.clone());
            self.split(lower, &middle_band)?;
            self.split(&middle, upper)?;
        }
        Ok(())
    }

    fn finish(self) -> Result<BandChain> {
        let mut bands = self.discovered;
        bands.sort_by_key(|b| b.members.len());

        let mut breakpoints = Vec::with_capacity(bands.len().saturating_sub(1));
        for pair in bands.windows(2) {
            breakpoints.push(
                (pair[1].area - pair[0].area)
                    / (pair[1].members.len() - pair[0].members.len()) as f64,
            );
        }

        let n = self.matrix.series_count();
        let mut first_inclusion = vec![bands.len() - 1; n];
        for (idx, band) in bands.iter().enumerate().rev() {
            for &l in &band.members {
                first_inclusion[l] = idx;
            }
        }

        Ok(BandChain {
            bands,
            breakpoints,
            first_inclusion,
            delta: self.delta_term * (n as f64 * n as f64),
            regband_calls: self.regband_calls,
            gamma_adjusted: self.gamma_adjusted,
        })
    }
}
