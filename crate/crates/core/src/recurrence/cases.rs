//! Intercept-difference windows for the rescue cases and the relation-(3)
//! lattice bounds.

use super::constants::consts;
use super::intervals::endpoints;
use super::squares::Square;
use crate::arith::{Affine, GammaPower, Rat};
use serde::Serialize;
use std::sync::OnceLock;

/// Range-wide window constants over `s` in `[s1, s2]`.
#[derive(Clone, Debug)]
pub struct Windows {
    /// `max (a2 - b1)`, each family taken over the full range.
    pub gap: Rat,
    /// `min (b1 - a1)`.
    pub first: Rat,
    /// `max (1 - b1)`.
    pub end: Rat,
    /// `min (b3 - a1)`.
    pub span: Rat,
}

pub fn windows() -> &'static Windows {
    static W: OnceLock<Windows> = OnceLock::new();
    W.get_or_init(|| {
        let c = consts();
        let e = endpoints();
        let one = Affine::constant(Rat::one());
        let max = |a: &Affine, lo: &Rat, hi: &Rat| a.range(lo, hi).1;
        let min = |a: &Affine, lo: &Rat, hi: &Rat| a.range(lo, hi).0;
        // both signs over the whole range
        let gm = max(&(&e.a2m - &e.b1), &c.s1, &c.s2);
        let gp = max(&(&e.a2p - &e.b1), &c.s1, &c.s2);
        Windows {
            gap: gm.max(gp),
            first: min(&(&e.b1 - &e.a1), &c.s1, &c.s2),
            end: max(&(&one - &e.b1), &c.s1, &c.s2),
            span: min(&(&e.b3 - &e.a1), &c.s1, &c.s2),
        }
    })
}

/// Which rescue rule an intercept difference `a_C - a_R` supports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Overlap {
    /// (i): a gap component of `C` lands in the first piece under `T_R`.
    Gap,
    /// (ii): the right end component lands in the first piece.
    End,
    /// Mirror of (i): a gap component lands in the last piece.
    GapMirror,
    /// Mirror of (ii): the left end component lands in the last piece.
    EndMirror,
    None,
}

impl Overlap {
    pub fn window(self) -> Option<(Rat, Rat)> {
        let w = windows();
        match self {
            Overlap::Gap => Some((w.gap.clone(), w.first.clone())),
            Overlap::End => Some((w.end.clone(), w.span.clone())),
            Overlap::GapMirror => Some((-&w.first, -&w.gap)),
            Overlap::EndMirror => Some((-&w.span, -&w.end)),
            Overlap::None => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Overlap::Gap => "(i)",
            Overlap::End => "(ii)",
            Overlap::GapMirror => "(i) mirrored",
            Overlap::EndMirror => "(ii) mirrored",
            Overlap::None => "none",
        }
    }
}

/// Classifies an enclosure `[lo, hi]` of an intercept difference.
pub fn overlap_conditions(lo: &Rat, hi: &Rat) -> Overlap {
    for o in [Overlap::Gap, Overlap::End, Overlap::GapMirror, Overlap::EndMirror] {
        let (a, b) = o.window().expect("window");
        if &a < lo && hi < &b {
            return o;
        }
    }
    Overlap::None
}

/// `a_C - a_R` as a function of `s`.
pub fn intercept_diff(c: &Square, r: &Square) -> Affine {
    &c.intercept() - &r.intercept()
}

/// Exact extremes of an affine quantity over `[s1, s2]`.
pub fn lemma1_range(a: &Affine) -> (Rat, Rat) {
    let c = consts();
    a.range(&c.s1, &c.s2)
}

/// A printed window check from the rescue cases.
#[derive(Clone, Debug)]
pub struct CaseWindow {
    pub id: &'static str,
    pub bad: Square,
    pub rescuer: Square,
    pub claimed: Overlap,
    pub paper: Option<(&'static str, &'static str)>,
}

pub fn case_windows() -> Vec<CaseWindow> {
    let g = Square::grid;
    let w = |id, bad, rescuer, claimed, paper| CaseWindow {
        id,
        bad,
        rescuer,
        claimed,
        paper,
    };
    vec![
        w("case1.a31_a42", g(3, 1), g(4, 2), Overlap::Gap, Some(("0.613086242", "0.651483003"))),
        w("case1.a31_a41", g(3, 1), g(4, 1), Overlap::EndMirror, Some(("-1.925836829", "-1.887440068"))),
        w("case2.a42_a31", g(4, 2), g(3, 1), Overlap::GapMirror, None),
        w("case3.a32_a21", g(3, 2), g(2, 1), Overlap::Gap, Some(("0.599935514", "0.663790257"))),
        w("case5.a12_a43", g(1, 2), g(4, 3), Overlap::GapMirror, Some(("-0.608256623", "-0.467608362"))),
        w("base.a85_a14", Square::c85(), g(1, 4), Overlap::Gap, Some(("0.025457501", "0.438403979"))),
    ]
}

/// Finds, for the given bad square, a grid rescuer whose difference window
/// holds over the whole range, in grid order.
pub fn find_rescuer(bad: &Square, rule: Overlap) -> Option<(Square, Rat, Rat)> {
    let (a, b) = rule.window()?;
    for i in 1..=4 {
        for j in 1..=4 {
            let r = Square::grid(i, j);
            if r.label == bad.label {
                continue;
            }
            let (lo, hi) = lemma1_range(&intercept_diff(bad, &r));
            if a < lo && hi < b {
                return Some((r, lo, hi));
            }
        }
    }
    None
}

/// `(p-2)(q-1)/((p-1) delta1) - 1`.
pub fn r1(delta1: &Rat) -> Rat {
    let c = consts();
    let one = Rat::one();
    let two = Rat::from_int(2);
    &(&(&(&c.p - &two) * &(&c.q - &one)) / &(&(&c.p - &one) * delta1)) - &one
}

/// `1 - (q-1)/((p-1)(q-2) delta2)`.
pub fn r2(delta2: &Rat) -> Rat {
    let c = consts();
    let one = Rat::one();
    let two = Rat::from_int(2);
    &one - &(&(&c.q - &one) / &(&(&(&c.p - &one) * &(&c.q - &two)) * delta2))
}

/// `2(q-1)p^i/q^39`.
pub fn m1(i: i64) -> Rat {
    let c = consts();
    let two = Rat::from_int(2);
    &(&two * &(&c.q - &Rat::one())) * &GammaPower::new(40 * i - 31 * 39).value()
}

/// `2(q-1)p^i/((q-2)q^39)`.
pub fn m2(i: i64) -> Rat {
    let c = consts();
    &m1(i) / &(&c.q - &Rat::from_int(2))
}

/// Smallest margin `|p^i/q^j - 1| - bound` over `1 <= j <= 37`, where the
/// bound is `r1 + m1(i)` above one and `r2 + m2(i)` below; with the `j`
/// attaining it.
pub fn relation3_slack(i: i64, r1v: &Rat, r2v: &Rat) -> (Rat, i64) {
    let one = Rat::one();
    let up = r1v + &m1(i);
    let down = r2v + &m2(i);
    let mut best: Option<(Rat, i64)> = None;
    for j in 1..=37 {
        let r = GammaPower::lattice(i, j).value();
        let slack = if r > one {
            &(&r - &one) - &up
        } else {
            &(&one - &r) - &down
        };
        if best.as_ref().is_none_or(|(b, _)| &slack < b) {
            best = Some((slack, j));
        }
    }
    best.expect("nonempty range")
}

/// `min |p^i/q^j - 1|` over `1 <= j <= 37`.
pub fn lattice_distance(i: i64) -> Rat {
    let one = Rat::one();
    (1..=37)
        .map(|j| (&GammaPower::lattice(i, j).value() - &one).abs())
        .min()
        .expect("nonempty range")
}

/// `min |40 i - 31 j|` over `1 <= i <= imax`, `1 <= j <= jmax`, with a minimizer.
pub fn min_exponent_gap(imax: i64, jmax: i64) -> (i64, i64, i64) {
    let mut best = (i64::MAX, 0, 0);
    for i in 1..=imax {
        for j in 1..=jmax {
            let d = (40 * i - 31 * j).abs();
            if d < best.0 {
                best = (d, i, j);
            }
        }
    }
    best
}
