//! Ground truth by exhaustion: simple path enumeration, brute-force optima
//! with independently written split computations, and the subset-sum gadget.

mod brute;
mod enumerate;
mod gadget;

pub use brute::{brute_force_optimum, is_feasible, oracle_quotient_split, oracle_so_split, OracleConfig, OracleSolution};
pub use enumerate::{enumerate_simple_paths, DEFAULT_PATH_LIMIT};
pub use gadget::{build_gadget, subsetsum_brute, GadgetInstance, GADGET_DEMAND, MAX_BRUTE_SET};
