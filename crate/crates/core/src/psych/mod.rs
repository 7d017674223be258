//! Psychological models: how `d` agents split between the original route
//! `Q` and a suggested alternative `P`, and the resulting overall travel time.

mod cfunc;
mod model;
mod split;

pub use cfunc::{check_quotient_conformity, CFunction, CONFORMITY_GRID};
pub use model::{score, FixedFraction, IndicatorModel, PsychModel, SplitPlugin};
pub use split::{overall_cost, split_quotient, split_system_optimum, split_ue_closed_form, Boundary, PathParts, SplitResult};
