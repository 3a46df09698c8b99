//! Finite topological spaces and topological quandles on them.
//!
//! Continuity between finite spaces is monotonicity for the specialization
//! preorder, so every check here runs on the preorder. The open-set
//! definitions are kept alongside as reference checks.

mod space;
mod topquandle;

pub use space::{validate_topology, FiniteSpace, TopologyJson, TopologyReport, MAX_POINTS};
pub use topquandle::{
    enumerate_top_quandles, enumerate_top_quandles_with, homeomorphisms, homeomorphisms_by_opens,
    is_continuous_op, is_continuous_op_by_preimages, is_continuous_table, is_topological_quandle, top_quandle_isomorphic,
    TopCheck, TopFailure, TopQuandle,
};
