use super::Rat;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Div, Mul};

pub const GAMMA_NUM: i64 = 10_321;
pub const GAMMA_DEN: i64 = 10_000;

/// `gamma = 10321/10000` exactly.
pub fn gamma() -> Rat {
    Rat::ratio(GAMMA_NUM, GAMMA_DEN)
}

/// A power `gamma^exponent`; products stay symbolic until `value` is asked for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GammaPower {
    pub exponent: i64,
}

impl GammaPower {
    pub const fn new(exponent: i64) -> Self {
        GammaPower { exponent }
    }

    pub const fn one() -> Self {
        GammaPower { exponent: 0 }
    }

    /// `p = gamma^40`.
    pub const fn p() -> Self {
        GammaPower { exponent: 40 }
    }

    /// `q = gamma^31`.
    pub const fn q() -> Self {
        GammaPower { exponent: 31 }
    }

    /// `p^i / q^j = gamma^(40 i - 31 j)`.
    pub const fn lattice(i: i64, j: i64) -> Self {
        GammaPower {
            exponent: 40 * i - 31 * j,
        }
    }

    pub fn pow(self, k: i64) -> Self {
        GammaPower {
            exponent: self.exponent * k,
        }
    }

    pub fn inv(self) -> Self {
        GammaPower {
            exponent: -self.exponent,
        }
    }

    pub fn value(self) -> Rat {
        let e = self.exponent;
        if e >= 0 {
            let n = num_traits::pow(BigInt::from(GAMMA_NUM), e as usize);
            Rat::from_parts(n, [e as u32, 0])
        } else {
            let n = num_traits::pow(BigInt::from(GAMMA_DEN), (-e) as usize);
            Rat::from_parts(n, [0, (-e) as u32])
        }
    }
}

impl Mul for GammaPower {
    type Output = GammaPower;
    fn mul(self, o: GammaPower) -> GammaPower {
        GammaPower::new(self.exponent + o.exponent)
    }
}

impl Div for GammaPower {
    type Output = GammaPower;
    fn div(self, o: GammaPower) -> GammaPower {
        GammaPower::new(self.exponent - o.exponent)
    }
}

impl fmt::Display for GammaPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gamma^{}", self.exponent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_agrees_with_rational_power() {
        for e in [-7i64, -1, 0, 1, 5, 40] {
            assert_eq!(GammaPower::new(e).value(), gamma().pow(e as i32));
        }
    }

    #[test]
    fn resonance() {
        assert_eq!(GammaPower::p().pow(31), GammaPower::q().pow(40));
        assert_eq!(GammaPower::lattice(7, 9), GammaPower::new(1));
        assert_eq!(GammaPower::lattice(24, 31), GammaPower::new(-1));
    }
}
