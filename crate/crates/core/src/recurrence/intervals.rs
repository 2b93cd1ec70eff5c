use super::constants::consts;
use crate::arith::{Affine, Rat};
use crate::cantor::{Interval, IntervalSet};
use crate::error::{Error, Result};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    Minus,
    Plus,
}

impl Family {
    /// `-` iff `s* <= 1`.
    pub fn for_scale(s: &Rat) -> Family {
        if s <= &consts().s_split {
            Family::Minus
        } else {
            Family::Plus
        }
    }

    pub fn sign(self) -> char {
        match self {
            Family::Minus => '-',
            Family::Plus => '+',
        }
    }
}

/// Endpoints as affine functions of `s`, in `t` units.
#[derive(Clone, Debug)]
pub struct Endpoints {
    pub a1: Affine,
    pub b1: Affine,
    pub a2m: Affine,
    pub b2m: Affine,
    pub a2p: Affine,
    pub b2p: Affine,
    pub a3: Affine,
    pub b3: Affine,
}

pub fn endpoints() -> &'static Endpoints {
    static E: std::sync::OnceLock<Endpoints> = std::sync::OnceLock::new();
    E.get_or_init(|| {
        let c = consts();
        let one = Rat::one();
        let w = c.margin.clone();
        let v = &one - &c.q.recip();
        let long = &v * &(&one + &c.q.pow(-39));
        let pinv = c.p.recip();
        let pbar = &one - &pinv;
        let qinv = c.q.recip();
        Endpoints {
            a1: Affine::linear(&w - &one),
            b1: Affine::new(pinv.clone(), -&long),
            a2m: Affine::linear(&w - &qinv),
            b2m: Affine::new(one.clone(), -&long),
            a2p: Affine::new(pbar.clone(), &w - &one),
            b2p: Affine::new(pinv, -&w),
            a3: Affine::new(pbar, &w - &qinv),
            b3: Affine::new(one, -&w),
        }
    })
}

impl Endpoints {
    /// The three pieces `[a1,b1], [a2,b2], [a3,b3]` of the given family.
    pub fn pieces(&self, fam: Family) -> [(Affine, Affine); 3] {
        let (a2, b2) = match fam {
            Family::Minus => (&self.a2m, &self.b2m),
            Family::Plus => (&self.a2p, &self.b2p),
        };
        [
            (self.a1.clone(), self.b1.clone()),
            (a2.clone(), b2.clone()),
            (self.a3.clone(), self.b3.clone()),
        ]
    }

    /// `(a1, b3)`, the slice of the region away from the cut corners.
    pub fn outer(&self) -> (Affine, Affine) {
        (self.a1.clone(), self.b3.clone())
    }
}

/// `I_s` at a fixed scale.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrentIntervals {
    pub family: Family,
    pub s: Rat,
    pub pieces: [Interval; 3],
}

impl RecurrentIntervals {
    pub fn contains(&self, t: &Rat) -> bool {
        self.pieces.iter().any(|iv| iv.contains(t))
    }

    /// Whether `t` is inside the interior of the union.
    pub fn interior_contains(&self, t: &Rat) -> bool {
        self.union()
            .intervals()
            .iter()
            .any(|iv| &iv.lo < t && t < &iv.hi)
    }

    pub fn union(&self) -> IntervalSet {
        IntervalSet::from_union(self.pieces.to_vec())
    }
}

/// `I_s^+-` for `s` in `[s1, s2]`.
pub fn interval_family(s: &Rat, family: Family) -> Result<RecurrentIntervals> {
    let c = consts();
    if s < &c.s1 || s > &c.s2 {
        return Err(Error::OutOfRange(format!(
            "s = {} outside [s1, s2]",
            s.to_sig(12)
        )));
    }
    let e = endpoints();
    let pieces = e
        .pieces(family)
        .map(|(a, b)| Interval::new(a.eval(s), b.eval(s)));
    Ok(RecurrentIntervals {
        family,
        s: s.clone(),
        pieces,
    })
}

/// `J_s = [-(1-1/q+1/q^2) s/q^38, 1/p^29 - (1-1/q) s/q^39]`.
pub fn j_interval(s: &Rat) -> Interval {
    let (lo, hi) = j_affine();
    Interval::new(lo.eval(s), hi.eval(s))
}

pub fn j_affine() -> (Affine, Affine) {
    let c = consts();
    let one = Rat::one();
    let qi = c.q.recip();
    let lo_coef = -&(&(&(&one - &qi) + &qi.pow(2)) / &c.q.pow(38));
    (
        Affine::linear(lo_coef),
        Affine::new(c.p.pow(-29), -&c.margin),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pieces_ordered_inside_range() {
        let c = consts();
        for s in [c.s1.clone(), c.s_split.clone(), c.s2.clone()] {
            let fam = Family::for_scale(&s);
            let i = interval_family(&s, fam).unwrap();
            for iv in &i.pieces {
                assert!(iv.lo < iv.hi);
            }
        }
        assert!(interval_family(&c.s_lo, Family::Minus).is_err());
    }

    #[test]
    fn families_meet_at_split() {
        let c = consts();
        let m = interval_family(&c.s_split, Family::Minus).unwrap();
        let p = interval_family(&c.s_split, Family::Plus).unwrap();
        assert_eq!(m.pieces, p.pieces);
    }

    #[test]
    fn touching_at_ends() {
        let c = consts();
        for s in [&c.s1, &c.s2] {
            let i = interval_family(s, Family::for_scale(s)).unwrap();
            assert_eq!(i.pieces[0].hi, i.pieces[1].lo);
            assert_eq!(i.pieces[1].hi, i.pieces[2].lo);
            assert!(i.interior_contains(&i.pieces[0].hi));
        }
    }
}
