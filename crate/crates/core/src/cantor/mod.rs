//! Middle Cantor sets, their invariants and classical intersection tests.

pub mod criteria;
pub mod difference;
pub mod interval;
pub mod set;
pub mod spec;
pub mod system;
pub mod thickness;

pub use criteria::{criteria_report, hausdorff_dimension, hd_sum_sign, is_linked, CriteriaReport, Verdict};
pub use difference::{difference_scan, difference_scan_capped, intersect_oracle, DIFFERENCE_CAP};
pub use interval::{Interval, IntervalSet};
pub use set::{make_middle_cantor, HomogeneousCantorSet, PlacedCantorSet, DEFAULT_REFINE_CAP, MAX_LEVEL};
pub use spec::{parse_set_spec, set_spec_json};
pub use system::{AffineCantorSystem, Transition};
pub use thickness::{
    gap_triples, homogeneous_thickness, homogeneous_thickness_brute, system_thickness,
    thickness_of_level, GapTriple, Thickness,
};
