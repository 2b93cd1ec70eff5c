use super::rat::common_numerators;
use super::Rat;
use num_bigint::{BigInt, Sign};
use std::ops::{Add, Neg, Sub};

/// A value `c0 + c1 * s` that depends affinely on a parameter `s`.
///
/// Every inequality in the recurrence certificate has this shape, so its sign
/// over an interval of `s` is decided by the two endpoint values.
#[derive(Clone, Debug, PartialEq)]
pub struct Affine {
    pub c0: Rat,
    pub c1: Rat,
}

impl Affine {
    pub fn new(c0: Rat, c1: Rat) -> Self {
        Affine { c0, c1 }
    }

    pub fn constant(c0: Rat) -> Self {
        Affine { c0, c1: Rat::zero() }
    }

    pub fn linear(c1: Rat) -> Self {
        Affine { c0: Rat::zero(), c1 }
    }

    pub fn eval(&self, s: &Rat) -> Rat {
        &self.c0 + &(&self.c1 * s)
    }

    pub fn scale(&self, k: &Rat) -> Affine {
        Affine::new(&self.c0 * k, &self.c1 * k)
    }

    /// Minimum and maximum over `s` in `[lo, hi]`.
    pub fn range(&self, lo: &Rat, hi: &Rat) -> (Rat, Rat) {
        let a = self.eval(lo);
        let b = self.eval(hi);
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }
}

impl Add for &Affine {
    type Output = Affine;
    fn add(self, o: &Affine) -> Affine {
        Affine::new(&self.c0 + &o.c0, &self.c1 + &o.c1)
    }
}

impl Sub for &Affine {
    type Output = Affine;
    fn sub(self, o: &Affine) -> Affine {
        Affine::new(&self.c0 - &o.c0, &self.c1 - &o.c1)
    }
}

impl Neg for &Affine {
    type Output = Affine;
    fn neg(self) -> Affine {
        Affine::new(-&self.c0, -&self.c1)
    }
}

/// A batch of affine functions brought to a common integer form, so that
/// evaluating all of them at one `s` costs two multiplications each and the
/// results compare as plain integers.
#[derive(Clone, Debug)]
pub struct AffineTable {
    c0: Vec<BigInt>,
    c1: Vec<BigInt>,
    /// Common denominator: `c0[k] = items[k].c0 * den`.
    den: Rat,
}

impl AffineTable {
    pub fn new(items: &[Affine]) -> Self {
        let mut refs: Vec<&Rat> = Vec::with_capacity(items.len() * 2);
        for a in items {
            refs.push(&a.c0);
        }
        for a in items {
            refs.push(&a.c1);
        }
        let mut nums = common_numerators(&refs);
        let den = refs
            .iter()
            .zip(&nums)
            .find(|(r, _)| !r.is_zero())
            .map(|(r, n)| &Rat::from_bigint(n.clone()) / *r)
            .unwrap_or_else(Rat::one);
        let c1 = nums.split_off(items.len());
        AffineTable { c0: nums, c1, den }
    }

    pub fn len(&self) -> usize {
        self.c0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c0.is_empty()
    }

    /// The positive factor applied by [`AffineTable::eval`] at `s`.
    pub fn unit(&self, s: &Rat) -> Rat {
        &self.den * &Rat::from_bigint(BigInt::from_biguint(Sign::Plus, s.denom()))
    }

    /// All values at `s`, each multiplied by the same positive factor.
    pub fn eval(&self, s: &Rat) -> Vec<BigInt> {
        let d = BigInt::from_biguint(Sign::Plus, s.denom());
        let n = s.numer();
        self.c0
            .iter()
            .zip(&self.c1)
            .map(|(a, b)| a * &d + b * n)
            .collect()
    }
}
