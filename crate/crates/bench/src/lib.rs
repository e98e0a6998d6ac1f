//! Fixed workloads shared by the benchmarks.

use delannoy_core::theorems::{sweep, TheoremError};
use delannoy_core::{CoeffTable, Family, PolyCache, Sign, SumSpec, TheoremId};

/// The Delannoy grid `n <= n_max`, `h, m, a <= 3`, both signs.
pub fn delannoy_grid(n_max: u32) -> Vec<SumSpec> {
    SumSpec::grid(&[Family::Delannoy], 1..=n_max, 1..=3, 1..=3, 1..=3, &[Sign::Plus, Sign::Minus])
}

/// Runs one theorem sweep from a cold cache and returns the number of passing reports.
pub fn cold_sweep(theorem: TheoremId, specs: &[SumSpec]) -> Result<usize, TheoremError> {
    let cache = PolyCache::new();
    Ok(sweep(theorem, specs, &cache)?.iter().filter(|r| r.pass).count())
}

/// Fills the tilde table for every tuple of `len` indices in `0..=max`
/// from a cold table and returns the number of rows built.
pub fn cold_tilde_rows(len: usize, max: u32, h: u32) -> usize {
    let table = CoeffTable::new();
    let mut idx = vec![0u32; len];
    let mut rows = 0;
    loop {
        table.a_tilde_row(&idx, h).expect("tilde row");
        rows += 1;
        let Some(pos) = idx.iter().position(|&v| v < max) else { break };
        idx[pos] += 1;
        idx[..pos].fill(0);
    }
    rows
}
