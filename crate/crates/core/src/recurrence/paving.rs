//! Block-growing induction.
//!
//! A block `[0, 1/p^(i+1)] x [0, 1/q^(j+1)]` of level-`(m, n)` squares has a
//! projection interval covered by the good sets of its squares. Adding the
//! translate by `(1-1/p)/p^i` horizontally (condition 1) or by `(1-1/q)/q^j`
//! vertically (condition 2) keeps the union an interval as long as the
//! translate overlaps the block; the walk repeats this down to `(0, 0)`.
//!
//! Everything is measured in `u = p^m t` and is affine in `s`.

use super::constants::consts;
use super::cover::CoverProblem;
use crate::arith::{Affine, GammaPower, Rat};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Step {
    /// Condition (1): grow horizontally, `i -> i - 1`.
    Horizontal,
    /// Condition (2): grow vertically, `j -> j - 1`.
    Vertical,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PavingState {
    pub i: usize,
    pub j: usize,
    pub history: Vec<Step>,
}

impl PavingState {
    pub fn new(i: usize, j: usize) -> Self {
        PavingState {
            i,
            j,
            history: Vec::new(),
        }
    }

    pub fn done(&self) -> bool {
        self.i == 0 && self.j == 0
    }
}

/// Geometry of one induction.
#[derive(Clone, Debug)]
pub struct Walk {
    pub m: usize,
    pub n: usize,
    pub start: (usize, usize),
    /// Lemma 1 blocks drop the top-left and bottom-right squares.
    pub corner_excluded: bool,
    /// `p^m / q^n`; the target scale is `rho s`.
    pub rho: Rat,
    /// Left and right shrinkage of a square's good set, in `u`.
    pub mu: (Affine, Affine),
    /// Mutual exclusion of the two conditions is part of the claim.
    pub exclusive: bool,
    ppow: Vec<Rat>,
    qpow: Vec<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub from: (usize, usize),
    pub step: Step,
    /// Slack of the chosen condition (positive when it holds), in `t` units.
    pub slack: Rat,
    /// Slack of the other condition (nonpositive when it fails).
    pub other: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WalkError {
    Neither { at: (usize, usize) },
    Both { at: (usize, usize) },
    Edge { at: (usize, usize) },
}

impl std::fmt::Display for WalkError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WalkError::Neither { at } => write!(f, "neither condition holds at {at:?}"),
            WalkError::Both { at } => write!(f, "both conditions hold at {at:?}"),
            WalkError::Edge { at } => write!(f, "condition leaves the grid at {at:?}"),
        }
    }
}

impl Walk {
    fn with(m: usize, n: usize, corner_excluded: bool, mu: (Affine, Affine), exclusive: bool) -> Walk {
        let c = consts();
        let ppow = (0..=m).map(|k| c.p.pow(k as i32)).collect();
        let qpow = (0..=n).map(|k| c.q.pow(k as i32)).collect();
        Walk {
            m,
            n,
            start: (m - 1, n - 1),
            corner_excluded,
            rho: GammaPower::lattice(m as i64, n as i64).value(),
            mu,
            exclusive,
            ppow,
            qpow,
        }
    }

    /// The return-map induction of the first lemma, from `D_1` at `(27, 36)`.
    pub fn lemma1() -> Walk {
        let zero = Affine::constant(Rat::zero());
        let mut w = Walk::with(31, 40, true, (zero.clone(), zero), true);
        w.start = (27, 36);
        w
    }

    /// From a single level-`(m, n)` square, landing in the open interval
    /// `(a(s'), b(s'))` at the new scale `s' = p^m s / q^n`.
    pub fn open_target(m: usize, n: usize, a: &Affine, b: &Affine) -> Walk {
        let rho = GammaPower::lattice(m as i64, n as i64).value();
        let one = Rat::one();
        // mu_L = a(s') + s', mu_R = 1 - b(s')
        let mu_l = Affine::new(a.c0.clone(), &rho * &(&a.c1 + &one));
        let mu_r = Affine::new(&one - &b.c0, -&(&rho * &b.c1));
        Walk::with(m, n, false, (mu_l, mu_r), false)
    }

    pub fn scale_factor(&self) -> &Rat {
        &self.ppow[self.m]
    }

    /// Left end of the block hull.
    pub fn hull_left(&self, j: usize) -> Affine {
        let c = consts();
        let one = Rat::one();
        let top = &self.qpow[self.n - 1 - j];
        if self.corner_excluded {
            Affine::linear(-&(top - &(&c.q - &one)))
        } else {
            Affine::linear(-&(&self.rho * top))
        }
    }

    pub fn hull_right(&self, i: usize) -> Affine {
        let c = consts();
        let one = Rat::one();
        let right = self.ppow[self.m - 1 - i].clone();
        if self.corner_excluded {
            Affine::new(right, -&(&c.q - &one))
        } else {
            Affine::constant(right)
        }
    }

    /// The interval covered by the good sets of block `(i, j)`.
    pub fn covered(&self, i: usize, j: usize) -> (Affine, Affine) {
        (
            &self.hull_left(j) + &self.mu.0,
            &self.hull_right(i) - &self.mu.1,
        )
    }

    pub fn dx(&self, i: usize) -> Rat {
        &(&consts().p - &Rat::one()) * &self.ppow[self.m - 1 - i]
    }

    pub fn dy(&self, j: usize) -> Affine {
        let q1 = &consts().q - &Rat::one();
        Affine::linear(&(&self.rho * &q1) * &self.qpow[self.n - 1 - j])
    }

    /// Slacks of conditions (1) and (2) at block `(i, j)`, in `u`.
    pub fn condition_slacks(&self, i: usize, j: usize) -> (Affine, Affine) {
        let (l, r) = self.covered(i, j);
        let w = &r - &l;
        let c1 = &w - &Affine::constant(self.dx(i));
        let c2 = &w - &self.dy(j);
        (c1, c2)
    }

    /// One step from `state` at scale `s`.
    pub fn step(&self, state: &PavingState, s: &Rat) -> Result<(PavingState, StepRecord), WalkError> {
        let (i, j) = (state.i, state.j);
        let (a1, a2) = self.condition_slacks(i, j);
        let u = self.scale_factor();
        let (v1, v2) = (&a1.eval(s) / u, &a2.eval(s) / u);
        let h1 = v1.is_positive();
        let h2 = v2.is_positive();
        let at = (i, j);
        let pick = match (h1, h2) {
            (false, false) => return Err(WalkError::Neither { at }),
            (true, true) if self.exclusive => return Err(WalkError::Both { at }),
            (true, true) => {
                if i > 0 {
                    Step::Horizontal
                } else {
                    Step::Vertical
                }
            }
            (true, false) => Step::Horizontal,
            (false, true) => Step::Vertical,
        };
        let mut next = state.clone();
        let rec = match pick {
            Step::Horizontal => {
                if i == 0 {
                    return Err(WalkError::Edge { at });
                }
                next.i -= 1;
                StepRecord {
                    from: at,
                    step: pick,
                    slack: v1,
                    other: v2,
                }
            }
            Step::Vertical => {
                if j == 0 {
                    return Err(WalkError::Edge { at });
                }
                next.j -= 1;
                StepRecord {
                    from: at,
                    step: pick,
                    slack: v2,
                    other: v1,
                }
            }
        };
        next.history.push(pick);
        Ok((next, rec))
    }

    /// Walks from the start block to `(0, 0)`.
    pub fn run(&self, s: &Rat) -> Result<Vec<StepRecord>, (Vec<StepRecord>, WalkError)> {
        let mut state = PavingState::new(self.start.0, self.start.1);
        let mut recs = Vec::with_capacity(self.start.0 + self.start.1);
        while !state.done() {
            match self.step(&state, s) {
                Ok((next, rec)) => {
                    recs.push(rec);
                    state = next;
                }
                Err(e) => return Err((recs, e)),
            }
        }
        Ok(recs)
    }

    /// Re-evaluates a fixed path at another `s`.
    pub fn replay(&self, path: &[StepRecord], s: &Rat) -> Vec<StepRecord> {
        let u = self.scale_factor();
        path.iter()
            .map(|r| {
                let (a1, a2) = self.condition_slacks(r.from.0, r.from.1);
                let (v1, v2) = (&a1.eval(s) / u, &a2.eval(s) / u);
                let (slack, other) = match r.step {
                    Step::Horizontal => (v1, v2),
                    Step::Vertical => (v2, v1),
                };
                StepRecord {
                    from: r.from,
                    step: r.step,
                    slack,
                    other,
                }
            })
            .collect()
    }

    pub fn record_ok(&self, r: &StepRecord) -> bool {
        r.slack.is_positive() && (!self.exclusive || !r.other.is_positive())
    }

    /// The four translates of block `(0, 0)` against one source interval
    /// `[lo(s), hi(s)]`.
    pub fn final_cover(&self, lo: &Affine, hi: &Affine) -> CoverProblem {
        let (l, r) = self.covered(0, 0);
        let sx = Affine::constant(self.dx(0));
        let sy = -&self.dy(0);
        let zero = Affine::constant(Rat::zero());
        let mut parts = Vec::with_capacity(4);
        for dx in [&zero, &sx] {
            for dy in [&zero, &sy] {
                let shift = dx + dy;
                parts.push((&l + &shift, &r + &shift));
            }
        }
        let u = self.scale_factor();
        CoverProblem::new((lo.scale(u), hi.scale(u)), parts, self.corner_excluded)
    }

    /// Good set of the single start square is nonempty.
    pub fn base_width(&self) -> Affine {
        let (l, r) = self.covered(self.start.0, self.start.1);
        &r - &l
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::intervals::{endpoints, Family};

    #[test]
    fn lemma1_walk_reaches_origin() {
        let c = consts();
        let w = Walk::lemma1();
        for s in [&c.s1, &c.s2] {
            let recs = w.run(s).expect("walk");
            assert_eq!(recs.len(), 63);
            assert!(recs.iter().all(|r| w.record_ok(r)));
        }
    }

    #[test]
    fn lemma1_final_cover() {
        let c = consts();
        let w = Walk::lemma1();
        let e = endpoints();
        for s in [&c.s1, &c.s_split, &c.s2] {
            for (a, b) in e.pieces(Family::for_scale(s)) {
                let p = w.final_cover(&a, &b);
                let ch = p.find_chain(s).expect("chain");
                assert!(p.slack_ok(&p.chain_slack(&ch, s)));
            }
        }
    }

    #[test]
    fn lemma2_walk_low_range() {
        let c = consts();
        let e = endpoints();
        let w = Walk::open_target(31, 40, &e.a1, &e.b3);
        let recs = w.run(&c.s_lo).expect("walk");
        assert_eq!(recs.len(), 69);
        let p = w.final_cover(&e.a1, &e.b3);
        assert!(p.find_chain(&c.s_lo).is_some());
    }
}
