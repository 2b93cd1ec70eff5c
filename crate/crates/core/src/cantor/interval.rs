use crate::arith::{common_numerators, Rat};
use crate::error::{Error, Result};
use std::cmp::Ordering;

/// Closed interval `[lo, hi]` with exact endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rat,
    pub hi: Rat,
}

impl Interval {
    /// Panics when `lo > hi`.
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "interval with lo > hi");
        Interval { lo, hi }
    }

    pub fn len(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, o: &Interval) -> bool {
        self.lo <= o.lo && o.hi <= self.hi
    }

    pub fn intersects(&self, o: &Interval) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    /// Image under `x -> a x + b` (endpoints swap when `a < 0`).
    pub fn map_affine(&self, a: &Rat, b: &Rat) -> Interval {
        let x = &(a * &self.lo) + b;
        let y = &(a * &self.hi) + b;
        if x <= y {
            Interval { lo: x, hi: y }
        } else {
            Interval { lo: y, hi: x }
        }
    }
}

/// Sorted, pairwise disjoint closed intervals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntervalSet {
    ivs: Vec<Interval>,
}

impl IntervalSet {
    /// Validates the ordering invariant.
    pub fn new(ivs: Vec<Interval>) -> Result<Self> {
        for w in ivs.windows(2) {
            if w[0].hi >= w[1].lo {
                return Err(Error::InvalidStructure(
                    "intervals must be sorted and disjoint".into(),
                ));
            }
        }
        Ok(IntervalSet { ivs })
    }

    pub fn single(iv: Interval) -> Self {
        IntervalSet { ivs: vec![iv] }
    }

    /// Union of arbitrary closed intervals; touching intervals merge.
    pub fn from_union(mut ivs: Vec<Interval>) -> Self {
        if ivs.len() <= 1 {
            return IntervalSet { ivs };
        }
        let keys = {
            let mut refs: Vec<&Rat> = Vec::with_capacity(ivs.len() * 2);
            for iv in &ivs {
                refs.push(&iv.lo);
            }
            for iv in &ivs {
                refs.push(&iv.hi);
            }
            common_numerators(&refs)
        };
        let n = ivs.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| keys[a].cmp(&keys[b]).then(keys[n + b].cmp(&keys[n + a])));
        let mut slots: Vec<Option<Interval>> = ivs.drain(..).map(Some).collect();
        let mut out: Vec<Interval> = Vec::new();
        let mut cur_hi_key: Option<usize> = None;
        for idx in order {
            let iv = slots[idx].take().expect("each index once");
            match cur_hi_key {
                Some(h) if keys[idx] <= keys[n + h] => {
                    if keys[n + idx] > keys[n + h] {
                        out.last_mut().expect("open run").hi = iv.hi;
                        cur_hi_key = Some(idx);
                    }
                }
                _ => {
                    out.push(iv);
                    cur_hi_key = Some(idx);
                }
            }
        }
        IntervalSet { ivs: out }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.ivs
    }

    pub fn into_intervals(self) -> Vec<Interval> {
        self.ivs
    }

    pub fn len(&self) -> usize {
        self.ivs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ivs.is_empty()
    }

    pub fn hull(&self) -> Option<Interval> {
        Some(Interval::new(
            self.ivs.first()?.lo.clone(),
            self.ivs.last()?.hi.clone(),
        ))
    }

    pub fn contains(&self, x: &Rat) -> bool {
        let i = self.ivs.partition_point(|iv| &iv.hi < x);
        i < self.ivs.len() && self.ivs[i].lo <= *x
    }

    /// Every interval of `self` lies inside one interval of `other`.
    pub fn is_subset_of(&self, other: &IntervalSet) -> bool {
        self.ivs.iter().all(|iv| {
            let i = other.ivs.partition_point(|o| o.hi < iv.lo);
            i < other.ivs.len() && other.ivs[i].contains_interval(iv)
        })
    }

    pub fn total_length(&self) -> Rat {
        self.ivs.iter().fold(Rat::zero(), |acc, iv| &acc + &iv.len())
    }

    pub fn largest(&self) -> Option<&Interval> {
        self.ivs.iter().max_by(|a, b| match a.len().cmp(&b.len()) {
            // keep the leftmost among equals
            Ordering::Equal => Ordering::Greater,
            o => o,
        })
    }

    /// Bounded complementary intervals, as `(hi_k, lo_{k+1})` pairs.
    pub fn gaps(&self) -> Vec<Interval> {
        self.ivs
            .windows(2)
            .map(|w| Interval::new(w[0].hi.clone(), w[1].lo.clone()))
            .collect()
    }

    pub fn map_affine(&self, a: &Rat, b: &Rat) -> IntervalSet {
        let mut ivs: Vec<Interval> = self.ivs.iter().map(|iv| iv.map_affine(a, b)).collect();
        if a.is_negative() {
            ivs.reverse();
        }
        IntervalSet { ivs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: i64, b: i64) -> Interval {
        Interval::new(Rat::from_int(a), Rat::from_int(b))
    }

    #[test]
    fn union_merges_touching_and_nested() {
        let u = IntervalSet::from_union(vec![iv(5, 6), iv(0, 2), iv(2, 3), iv(1, 2), iv(8, 9)]);
        assert_eq!(u.intervals(), &[iv(0, 3), iv(5, 6), iv(8, 9)]);
        assert!(u.contains(&Rat::ratio(5, 2)));
        assert!(!u.contains(&Rat::from_int(4)));
        assert_eq!(u.gaps(), vec![iv(3, 5), iv(6, 8)]);
    }

    #[test]
    fn subset_and_reflection() {
        let a = IntervalSet::from_union(vec![iv(0, 1), iv(3, 4)]);
        let b = IntervalSet::from_union(vec![iv(-1, 2), iv(3, 5)]);
        assert!(a.is_subset_of(&b));
        assert!(!b.is_subset_of(&a));
        let r = a.map_affine(&Rat::from_int(-1), &Rat::zero());
        assert_eq!(r.intervals(), &[iv(-4, -3), iv(-1, 0)]);
    }

    #[test]
    fn new_rejects_overlap() {
        assert!(IntervalSet::new(vec![iv(0, 2), iv(1, 3)]).is_err());
    }
}
