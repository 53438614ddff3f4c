//! Fault-free domino tilings of rectangles, cylinders, tori and Möbius strips.

pub mod cache;
pub mod chart;
pub mod classify;
pub mod expand;
pub mod gf2;
pub mod necessity;
pub mod par;
pub mod render;
pub mod search;
pub mod tiling;
pub mod topology;
pub mod witness;

pub use cache::{CacheError, WitnessStore};
pub use chart::{Chart, ChartError};
pub use classify::{classify, Family, Reason, Verdict};
pub use expand::{expand, expand_by, ExpandAxis, ExpandError};
pub use necessity::{
    build_parity_system, counting_feasible, min_required_tiles, CrossingProfile, FeasibilityReport, ParitySystem,
};
pub use search::{
    count_tilings, fault_free_exists_oracle, find_fault_free, find_fault_free_with, find_tiling, Oracle, SearchBudget,
    SearchError, SearchOptions, SearchOutcome, SearchStatus, TilingCount,
};
pub use tiling::{decode, decode_for, encode, verify, Tiling, TilingError, VerificationReport};
pub use topology::{BoardError, BoardSpec, Cell, CrossingEdge, FaultCurve, LineAxis, Placement, Topology};
pub use witness::{base_cases, base_witness, witness, BaseCase, Witness, WitnessError, WitnessSource};
