//! Relative configurations `(s, t)` and the renormalization operators acting
//! on them.

pub mod config;
pub mod json;
pub mod operator;
pub mod return_map;
pub mod steer;

pub use config::{compose_k, compose_kprime, l_inverse, l_map, AffinePair, Configuration};
pub use json::{configuration_json, parse_configuration};
pub use operator::{gamma_lattice, min_lattice_gap, s_star, ElementaryOperator, PairOperators, Side};
pub use return_map::{block_intercept, corner, horner, return_map, ReturnMap, A_LEN, B_LEN};
pub use steer::{steer, steer_block, SteerOptions, SteerResult, Target};
