//! The recurrence argument: the compact region, the interval families, the
//! square grid and the coverings behind the two lemmas and the theorem.

pub mod cases;
pub mod certificate;
pub mod constants;
pub mod cover;
pub mod intervals;
pub mod lemma1;
pub mod lemma2;
pub mod options;
pub mod oracle;
pub mod paving;
pub mod plot;
pub mod region;
pub mod squares;
pub mod table;
pub mod theorem;

pub use constants::{consts, Consts};
pub use cover::{Chain, CoverProblem};
pub use intervals::{endpoints, interval_family, j_affine, j_interval, Endpoints, Family, RecurrentIntervals};
pub use paving::{PavingState, Step, StepRecord, Walk, WalkError};
pub use region::{HalfPlane, RegionL, Sense};
pub use squares::{bad_set, project, square_family_14, square_grid_16, Square};
