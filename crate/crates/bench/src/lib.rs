//! Fixtures shared by the criterion benches.

use altroute_core::synth::{grid, GridCase, GridSpec};
use altroute_core::Path;

/// `n`×`n` corridor grid and a route of `hops` edges along the corridor,
/// centred horizontally.
pub fn corridor(n: usize, hops: usize, seed: u64) -> (GridCase, Path) {
    assert!(hops < n, "route longer than the grid");
    let g = grid(GridSpec::with_corridor(n, seed)).expect("grid");
    let c0 = (n - 1 - hops) / 2;
    let q = g.row_path(n / 2, c0, c0 + hops).expect("corridor route");
    (g, q)
}
