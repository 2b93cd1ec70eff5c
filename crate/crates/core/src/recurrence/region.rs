use super::constants::consts;
use super::intervals::{endpoints, Family};
use crate::arith::Rat;
use crate::renorm::Target;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sense {
    Lt,
    Gt,
    Le,
    Ge,
}

/// `t + u s  (sense)  w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfPlane {
    pub name: &'static str,
    pub u: Rat,
    pub w: Rat,
    pub sense: Sense,
}

impl HalfPlane {
    pub fn value(&self, s: &Rat, t: &Rat) -> Rat {
        t + &(&self.u * s)
    }

    pub fn holds(&self, s: &Rat, t: &Rat) -> bool {
        let v = self.value(s, t);
        match self.sense {
            Sense::Lt => v < self.w,
            Sense::Gt => v > self.w,
            Sense::Le => v <= self.w,
            Sense::Ge => v >= self.w,
        }
    }

    /// The closed half-plane bounding the same side.
    pub fn closure(&self) -> HalfPlane {
        let sense = match self.sense {
            Sense::Lt | Sense::Le => Sense::Le,
            Sense::Gt | Sense::Ge => Sense::Ge,
        };
        HalfPlane {
            sense,
            ..self.clone()
        }
    }

    /// `t` where the boundary line crosses the vertical line at `s`.
    pub fn t_at(&self, s: &Rat) -> Rat {
        &self.w - &(&self.u * s)
    }
}

/// `L = Delta \ (Delta_1 u Delta_2)`, with `Delta_1`, `Delta_2` the open
/// triangles cut by `L1..L3` and `L4..L6`.
#[derive(Clone, Debug)]
pub struct RegionL {
    pub delta1: [HalfPlane; 3],
    pub delta2: [HalfPlane; 3],
}

impl Default for RegionL {
    fn default() -> Self {
        RegionL::new()
    }
}

impl RegionL {
    pub fn new() -> Self {
        let c = consts();
        let one = Rat::one();
        let w = c.margin.clone();
        let v = &one - &c.q.recip();
        let long = &v * &(&one + &c.q.pow(-39));
        let pinv = c.p.recip();
        let pbar = &one - &pinv;
        let mid = &c.q.recip() - &w;
        let hp = |name, u: &Rat, rhs: &Rat, sense| HalfPlane {
            name,
            u: u.clone(),
            w: rhs.clone(),
            sense,
        };
        RegionL {
            delta1: [
                hp("L1", &long, &one, Sense::Gt),
                hp("L2", &w, &pinv, Sense::Gt),
                hp("L3", &mid, &pbar, Sense::Lt),
            ],
            delta2: [
                hp("L4", &(&one - &w), &pbar, Sense::Lt),
                hp("L5", &mid, &Rat::zero(), Sense::Lt),
                hp("L6", &long, &pinv, Sense::Gt),
            ],
        }
    }

    pub fn t_bounds(s: &Rat) -> (Rat, Rat) {
        let e = endpoints();
        (e.a1.eval(s), e.b3.eval(s))
    }

    pub fn contains(&self, s: &Rat, t: &Rat, interior: bool) -> bool {
        let c = consts();
        let (lo, hi) = Self::t_bounds(s);
        if interior {
            if !(&c.s_lo < s && s < &c.s_hi && lo < *t && *t < hi) {
                return false;
            }
            let closed_in = |hs: &[HalfPlane; 3]| hs.iter().all(|h| h.closure().holds(s, t));
            !closed_in(&self.delta1) && !closed_in(&self.delta2)
        } else {
            if !(&c.s_lo <= s && s <= &c.s_hi && lo <= *t && *t <= hi) {
                return false;
            }
            let open_in = |hs: &[HalfPlane; 3]| hs.iter().all(|h| h.holds(s, t));
            !open_in(&self.delta1) && !open_in(&self.delta2)
        }
    }

    /// Closed pieces of the slice at `s` (empty outside the `s`-range).
    pub fn slice(&self, s: &Rat) -> Vec<(Rat, Rat)> {
        let c = consts();
        if s < &c.s_lo || s > &c.s_hi {
            return Vec::new();
        }
        let e = endpoints();
        let (a1, b3) = (e.a1.eval(s), e.b3.eval(s));
        let fam = Family::for_scale(s);
        let [_, (a2, b2), _] = e.pieces(fam);
        let (b1, a2, b2, a3) = (e.b1.eval(s), a2.eval(s), b2.eval(s), e.a3.eval(s));
        let mut out = Vec::new();
        let mut cur = a1;
        // Delta_2 removes (b1, a2) and Delta_1 removes (b2, a3) when open.
        for (g0, g1) in [(b1, a2), (b2, a3)] {
            if g0 < g1 {
                out.push((cur, g0));
                cur = g1;
            }
        }
        out.push((cur, b3));
        out
    }

    /// Open pieces of the interior slice; touching points of closed pieces
    /// and corner vertices are excluded.
    pub fn interior_slice(&self, s: &Rat) -> Target {
        let c = consts();
        if s <= &c.s_lo || s >= &c.s_hi {
            return Target::new(Vec::new());
        }
        let e = endpoints();
        if s < &c.s1 || s > &c.s2 {
            return Target::new(vec![(e.a1.eval(s), e.b3.eval(s))]);
        }
        let fam = Family::for_scale(s);
        Target::new(
            e.pieces(fam)
                .iter()
                .map(|(a, b)| (a.eval(s), b.eval(s)))
                .collect(),
        )
    }
}
