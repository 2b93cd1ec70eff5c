use super::interval::{Interval, IntervalSet};
use crate::arith::{GammaPower, Rat};
use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::One;

/// Default bound on intervals materialized by [`HomogeneousCantorSet::refine`].
pub const DEFAULT_REFINE_CAP: usize = 1 << 16;
/// Levels beyond this are refused even symbolically.
pub const MAX_LEVEL: u32 = 32;

/// Middle Cantor set on `[0, 1]` with branches `[0, 1/p]` and `[1 - 1/p, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousCantorSet {
    p: Rat,
    gamma_exp: Option<i64>,
}

pub fn make_middle_cantor(p: Rat) -> Result<HomogeneousCantorSet> {
    if p <= Rat::from_int(2) {
        return Err(Error::InvalidParameter(format!(
            "ratio denominator p = {p} must exceed 2"
        )));
    }
    Ok(HomogeneousCantorSet { p, gamma_exp: None })
}

impl HomogeneousCantorSet {
    /// `p = gamma^e`; remembers the exponent so later tests can stay symbolic.
    pub fn from_gamma(e: i64) -> Result<Self> {
        let mut k = make_middle_cantor(GammaPower::new(e).value())?;
        k.gamma_exp = Some(e);
        Ok(k)
    }

    pub fn p(&self) -> &Rat {
        &self.p
    }

    pub fn gamma_exp(&self) -> Option<i64> {
        self.gamma_exp
    }

    /// Removed middle proportion `1 - 2/p`.
    pub fn alpha(&self) -> Rat {
        &Rat::one() - &(&Rat::from_int(2) / &self.p)
    }

    pub fn branches(&self) -> [Interval; 2] {
        let inv = self.p.recip();
        [
            Interval::new(Rat::zero(), inv.clone()),
            Interval::new(&Rat::one() - &inv, Rat::one()),
        ]
    }

    /// Number of level-`n` intervals and their common length.
    pub fn level_summary(&self, n: u32) -> Result<(BigUint, Rat)> {
        if n > MAX_LEVEL {
            return Err(Error::ResourceLimit(format!(
                "level {n} exceeds the cap {MAX_LEVEL}"
            )));
        }
        Ok((BigUint::one() << n as usize, self.p.pow(-(n as i32))))
    }

    pub fn refine(&self, n: u32) -> Result<IntervalSet> {
        self.refine_capped(n, DEFAULT_REFINE_CAP)
    }

    pub fn refine_capped(&self, n: u32, cap: usize) -> Result<IntervalSet> {
        if n > MAX_LEVEL || (n < usize::BITS && (1usize << n) > cap) {
            return Err(Error::ResourceLimit(format!(
                "level {n} needs 2^{n} intervals, cap is {cap}"
            )));
        }
        let inv = self.p.recip();
        let shift = &Rat::one() - &inv;
        let mut lefts = vec![Rat::zero()];
        let mut len = Rat::one();
        for _ in 0..n {
            len = &len * &inv;
            let mut next = Vec::with_capacity(lefts.len() * 2);
            for x in &lefts {
                next.push(x * &inv);
            }
            for x in &lefts {
                next.push(&(x * &inv) + &shift);
            }
            lefts = next;
        }
        let ivs = lefts
            .into_iter()
            .map(|x| {
                let hi = &x + &len;
                Interval::new(x, hi)
            })
            .collect();
        IntervalSet::new(ivs)
    }
}

/// A homogeneous set placed on the line by `x -> scale * x + offset`.
///
/// Negative scales are folded into the offset because middle sets are
/// symmetric about `1/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlacedCantorSet {
    pub shape: HomogeneousCantorSet,
    scale: Rat,
    offset: Rat,
}

impl PlacedCantorSet {
    pub fn new(shape: HomogeneousCantorSet, scale: Rat, offset: Rat) -> Result<Self> {
        if scale.is_zero() {
            return Err(Error::InvalidParameter("placement scale must be nonzero".into()));
        }
        let (scale, offset) = if scale.is_negative() {
            let s = scale.abs();
            let o = &offset - &s;
            (s, o)
        } else {
            (scale, offset)
        };
        Ok(PlacedCantorSet {
            shape,
            scale,
            offset,
        })
    }

    pub fn unit(shape: HomogeneousCantorSet) -> Self {
        PlacedCantorSet {
            shape,
            scale: Rat::one(),
            offset: Rat::zero(),
        }
    }

    pub fn scale(&self) -> &Rat {
        &self.scale
    }

    pub fn offset(&self) -> &Rat {
        &self.offset
    }

    pub fn hull(&self) -> Interval {
        Interval::new(self.offset.clone(), &self.offset + &self.scale)
    }

    pub fn refine(&self, n: u32) -> Result<IntervalSet> {
        Ok(self.shape.refine(n)?.map_affine(&self.scale, &self.offset))
    }
}

impl From<HomogeneousCantorSet> for PlacedCantorSet {
    fn from(k: HomogeneousCantorSet) -> Self {
        PlacedCantorSet::unit(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ternary_levels() {
        let k = make_middle_cantor(Rat::from_int(3)).unwrap();
        assert_eq!(k.alpha(), Rat::ratio(1, 3));
        let l1 = k.refine(1).unwrap();
        assert_eq!(
            l1.intervals(),
            &[
                Interval::new(Rat::zero(), Rat::ratio(1, 3)),
                Interval::new(Rat::ratio(2, 3), Rat::one())
            ]
        );
        let l2 = k.refine(2).unwrap();
        assert_eq!(l2.len(), 4);
        assert!(l2.intervals().iter().all(|iv| iv.len() == Rat::ratio(1, 9)));
        assert!(l2.is_subset_of(&l1));
    }

    #[test]
    fn rejects_small_p() {
        assert!(make_middle_cantor(Rat::from_int(2)).is_err());
        assert!(make_middle_cantor(Rat::ratio(3, 2)).is_err());
    }

    #[test]
    fn refine_cap() {
        let k = make_middle_cantor(Rat::from_int(4)).unwrap();
        assert!(matches!(k.refine(20), Err(Error::ResourceLimit(_))));
        let (count, len) = k.level_summary(31).unwrap();
        assert_eq!(count, BigUint::one() << 31usize);
        assert_eq!(len, Rat::from_int(4).pow(-31));
    }

    #[test]
    fn negative_scale_folds() {
        let k = make_middle_cantor(Rat::from_int(3)).unwrap();
        let a = PlacedCantorSet::new(k.clone(), Rat::from_int(-2), Rat::from_int(1)).unwrap();
        let b = PlacedCantorSet::new(k, Rat::from_int(2), Rat::from_int(-1)).unwrap();
        assert_eq!(a.refine(3).unwrap(), b.refine(3).unwrap());
    }
}
