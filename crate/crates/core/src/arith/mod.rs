//! Exact arithmetic: rationals with decimal/gamma-friendly denominators,
//! symbolic gamma powers, and affine-in-`s` tables.

mod affine;
mod gamma;
mod parse;
mod rat;

pub use affine::{Affine, AffineTable};
pub use gamma::{gamma, GammaPower, GAMMA_DEN, GAMMA_NUM};
pub use parse::{parse_rational, parse_rational_at};
pub use rat::{common_numerators, Rat, Rounding};
