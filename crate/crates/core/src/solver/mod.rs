//! Deciders for orthogonal representations: exhaustive search over prime
//! fields, the vertex-cover parameterized algorithm, list-restricted search,
//! plus coloring, real-system emission and normalization utilities.

pub mod coloring;
pub mod etr;
pub mod normalize;
pub mod orthrep;
pub mod search;

pub use coloring::{check_coloring, chromatic_number, coloring_to_orthrep, decide_coloring};
pub use etr::{emit_etr_system, etr_counts};
pub use normalize::{normalize_first_entry, random_real_representation, real_residual};
pub use orthrep::{verify_orthrep, OrthRep, Violation};
pub use search::{decide_od, decide_subchoose, fpt_decide_vc, SearchLimits, SubChooseInstance, DEFAULT_NODE_BUDGET};
