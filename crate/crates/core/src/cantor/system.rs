use super::interval::{Interval, IntervalSet};
use super::set::HomogeneousCantorSet;
use crate::arith::Rat;
use crate::error::{Error, Result};

/// One allowed transition `(from, to)`: the sub-interval `I(from, to)` of
/// `I(from)` that the branch `x -> p x + q` maps onto `I(to)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub from: usize,
    pub to: usize,
    pub sub: Interval,
    pub p: Rat,
    pub q: Rat,
}

/// Affine Cantor set given by a Markov partition and affine branches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineCantorSystem {
    intervals: Vec<Interval>,
    transitions: Vec<Transition>,
}

impl AffineCantorSystem {
    pub fn new(intervals: Vec<Interval>, transitions: Vec<Transition>) -> Result<Self> {
        let n = intervals.len();
        if n == 0 {
            return Err(Error::InvalidStructure("empty alphabet".into()));
        }
        let mut sorted: Vec<&Interval> = intervals.iter().collect();
        sorted.sort_by(|a, b| a.lo.cmp(&b.lo));
        for w in sorted.windows(2) {
            if w[0].hi >= w[1].lo {
                return Err(Error::InvalidStructure("partition intervals overlap".into()));
            }
        }
        for t in &transitions {
            if t.from >= n || t.to >= n {
                return Err(Error::InvalidStructure(format!(
                    "transition ({}, {}) outside alphabet",
                    t.from, t.to
                )));
            }
            if t.p.abs() <= Rat::one() {
                return Err(Error::InvalidParameter(format!(
                    "branch ({}, {}) is not expanding",
                    t.from, t.to
                )));
            }
            if !intervals[t.from].contains_interval(&t.sub) {
                return Err(Error::InvalidStructure(format!(
                    "I({}, {}) is not inside I({})",
                    t.from, t.to, t.from
                )));
            }
            if t.sub.map_affine(&t.p, &t.q) != intervals[t.to] {
                return Err(Error::InvalidStructure(format!(
                    "branch ({}, {}) does not map I({}, {}) onto I({})",
                    t.from, t.to, t.from, t.to, t.to
                )));
            }
        }
        for a in 0..n {
            let mut subs: Vec<&Interval> = transitions
                .iter()
                .filter(|t| t.from == a)
                .map(|t| &t.sub)
                .collect();
            if subs.is_empty() {
                return Err(Error::InvalidStructure(format!("letter {a} has no transition")));
            }
            subs.sort_by(|x, y| x.lo.cmp(&y.lo));
            for w in subs.windows(2) {
                if w[0].hi >= w[1].lo {
                    return Err(Error::InvalidStructure(format!(
                        "sub-intervals of I({a}) overlap"
                    )));
                }
            }
        }
        Ok(AffineCantorSystem {
            intervals,
            transitions,
        })
    }

    /// The middle set as a two-letter full shift with branches `p x` and
    /// `p x - p + 1`.
    pub fn from_homogeneous(k: &HomogeneousCantorSet) -> Self {
        let p = k.p().clone();
        let [k1, k2] = k.branches();
        let letters = [k1, k2];
        let q = [Rat::zero(), &Rat::one() - &p];
        let inv = p.recip();
        let mut transitions = Vec::new();
        for from in 0..2 {
            for to in 0..2 {
                let sub = letters[to].map_affine(&inv, &(&(-&q[from]) * &inv));
                transitions.push(Transition {
                    from,
                    to,
                    sub,
                    p: p.clone(),
                    q: q[from].clone(),
                });
            }
        }
        AffineCantorSystem {
            intervals: letters.to_vec(),
            transitions,
        }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    /// Union of the cylinders of words with `level + 1` letters.
    pub fn refine(&self, level: u32, cap: usize) -> Result<IntervalSet> {
        let n = self.intervals.len();
        let mut per_letter: Vec<Vec<Interval>> =
            self.intervals.iter().map(|iv| vec![iv.clone()]).collect();
        for _ in 0..level {
            let mut next: Vec<Vec<Interval>> = vec![Vec::new(); n];
            let mut total = 0usize;
            for t in &self.transitions {
                let inv = t.p.recip();
                let shift = &(-&t.q) * &inv;
                for iv in &per_letter[t.to] {
                    next[t.from].push(iv.map_affine(&inv, &shift));
                }
                total += per_letter[t.to].len();
                if total > cap {
                    return Err(Error::ResourceLimit(format!(
                        "refinement exceeds {cap} cylinders"
                    )));
                }
            }
            per_letter = next;
        }
        Ok(IntervalSet::from_union(per_letter.into_iter().flatten().collect()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::set::make_middle_cantor;

    #[test]
    fn homogeneous_system_matches_refine() {
        let k = make_middle_cantor(Rat::ratio(7, 2)).unwrap();
        let sys = AffineCantorSystem::from_homogeneous(&k);
        let rebuilt = AffineCantorSystem::new(
            sys.intervals().to_vec(),
            sys.transitions().to_vec(),
        )
        .unwrap();
        assert_eq!(rebuilt, sys);
        for level in 0..4 {
            assert_eq!(sys.refine(level, 1 << 10).unwrap(), k.refine(level + 1).unwrap());
        }
    }

    #[test]
    fn rejects_non_expanding_and_mismatched_branches() {
        let i0 = Interval::new(Rat::zero(), Rat::ratio(1, 3));
        let bad = Transition {
            from: 0,
            to: 0,
            sub: i0.clone(),
            p: Rat::one(),
            q: Rat::zero(),
        };
        assert!(AffineCantorSystem::new(vec![i0.clone()], vec![bad]).is_err());
        let wrong = Transition {
            from: 0,
            to: 0,
            sub: Interval::new(Rat::zero(), Rat::ratio(1, 9)),
            p: Rat::from_int(2),
            q: Rat::zero(),
        };
        assert!(AffineCantorSystem::new(vec![i0], vec![wrong]).is_err());
    }
}
