//! The single-interval case on `[s_lo, s1]` and `[s2, s_hi]`: block growth
//! from one square, then the four translates of the full block.

use super::certificate::{Aggregate, Entry, Obs};
use super::constants::consts;
use super::cover::{open_union_chain, open_union_terms};
use super::intervals::endpoints;
use super::options::{sample_points, short_between, Mode, VerifyOptions};
use super::paving::{Step, Walk};
use crate::arith::{Affine, AffineTable, GammaPower, Rat};
use num_bigint::BigInt;

/// The two parameter ranges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Range {
    Low,
    High,
}

impl Range {
    pub fn name(self) -> &'static str {
        match self {
            Range::Low => "low",
            Range::High => "high",
        }
    }

    pub fn bounds(self) -> (Rat, Rat) {
        let c = consts();
        match self {
            Range::Low => (c.s_lo.clone(), c.s1.clone()),
            Range::High => (c.s2.clone(), c.s_hi.clone()),
        }
    }
}

/// Walk, base square and final cover in one integer table. The landing
/// interval is `(a1, b3)` at the new scale. The four translates cover an
/// open interval `(A, B)` inside `(-s, 1)`; the rest of `(-s, 1)` is pushed
/// into it by the long operators `t -> P t + (P - 1) s` and
/// `t -> P t - P + 1`, `P = p^31`, which fix `-s` and `1`.
pub struct Lemma2Checker {
    pub walk: Walk,
    table: AffineTable,
    base: usize,
    /// `slack[i][j] = (condition (1), condition (2))`.
    slack: Vec<Vec<(usize, usize)>>,
    parts: Vec<(usize, usize)>,
    /// `margins[k][l]`: left and right margins with first part `k` and
    /// last part `l`.
    margins: Vec<Vec<(usize, usize)>>,
}

struct Eval {
    v: Vec<BigInt>,
    inv_t_unit: Rat,
}

impl Eval {
    fn t(&self, x: &BigInt) -> Rat {
        &Rat::from_bigint(x.clone()) * &self.inv_t_unit
    }
}

type Path = Vec<((usize, usize), Step)>;

impl Lemma2Checker {
    pub fn new(m: usize, n: usize) -> Self {
        let e = endpoints();
        let walk = Walk::open_target(m, n, &e.a1, &e.b3);
        let mut items = Vec::new();
        items.push(walk.base_width());
        let mut slack = Vec::with_capacity(m);
        for i in 0..m {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let (c1, c2) = walk.condition_slacks(i, j);
                items.push(c1);
                items.push(c2);
                row.push((items.len() - 2, items.len() - 1));
            }
            slack.push(row);
        }
        let u = walk.scale_factor().clone();
        let src = (Affine::linear(-&u), Affine::constant(u.clone()));
        let cover = walk.final_cover(&Affine::linear(-Rat::one()), &Affine::constant(Rat::one()));
        debug_assert_eq!(cover.target, src);
        let mut parts = Vec::with_capacity(4);
        for (a, b) in &cover.parts {
            items.push(a.clone());
            items.push(b.clone());
            parts.push((items.len() - 2, items.len() - 1));
        }
        // left: B + s - P (A + s) > 0; right: 1 - P (1 - B) - A > 0 (in u)
        let big = consts().p31.clone();
        let mut margins = Vec::with_capacity(4);
        for (ak, _) in &cover.parts {
            let mut row = Vec::with_capacity(4);
            for (_, bl) in &cover.parts {
                let left = &(bl - &src.0) - &(&(ak - &src.0)).scale(&big);
                let right = &(&src.1 - &(&src.1 - bl).scale(&big)) - ak;
                items.push(left);
                items.push(right);
                row.push((items.len() - 2, items.len() - 1));
            }
            margins.push(row);
        }
        Lemma2Checker {
            walk,
            table: AffineTable::new(&items),
            base: 0,
            slack,
            parts,
            margins,
        }
    }

    fn eval(&self, s: &Rat) -> Eval {
        let unit = &self.table.unit(s) * self.walk.scale_factor();
        Eval {
            v: self.table.eval(s),
            inv_t_unit: unit.recip(),
        }
    }

    /// The walk on integer values; the first condition wins ties.
    fn walk_at(&self, ev: &Eval) -> Result<Path, (usize, usize)> {
        let zero = BigInt::from(0);
        let (mut i, mut j) = self.walk.start;
        let mut path = Vec::with_capacity(i + j);
        while i > 0 || j > 0 {
            let (c1, c2) = self.slack[i][j];
            if i > 0 && ev.v[c1] > zero {
                path.push(((i, j), Step::Horizontal));
                i -= 1;
            } else if j > 0 && ev.v[c2] > zero {
                path.push(((i, j), Step::Vertical));
                j -= 1;
            } else {
                return Err((i, j));
            }
        }
        Ok(path)
    }

    fn chosen(&self, at: (usize, usize), step: Step) -> usize {
        let (c1, c2) = self.slack[at.0][at.1];
        match step {
            Step::Horizontal => c1,
            Step::Vertical => c2,
        }
    }

    fn parts(&self, ev: &Eval) -> Vec<(BigInt, BigInt)> {
        self.parts
            .iter()
            .map(|&(a, b)| (ev.v[a].clone(), ev.v[b].clone()))
            .collect()
    }

    fn final_chain(&self, ev: &Eval) -> Option<Vec<usize>> {
        open_union_chain(&self.parts(ev))
    }

    /// Smallest of the chain overlaps and the two margins.
    fn final_slack(&self, ev: &Eval, chain: &[usize]) -> BigInt {
        let first = chain[0];
        let last = *chain.last().expect("nonempty chain");
        let (l, r) = self.margins[first][last];
        let mut terms = open_union_terms(&self.parts(ev), chain);
        terms.push(ev.v[l].clone());
        terms.push(ev.v[r].clone());
        terms.into_iter().min().expect("terms")
    }

    /// Observations at one `s`, under the id prefix.
    pub fn check_point(&self, s: &Rat, prefix: &str) -> Vec<Obs> {
        let ev = self.eval(s);
        let mut out = Vec::with_capacity(4);
        let base = ev.t(&ev.v[self.base]);
        let ok = base.is_positive();
        out.push(Obs::new(format!("{prefix}.base"), base_desc(), base, ok));
        match self.walk_at(&ev) {
            Ok(path) => {
                let min = path
                    .iter()
                    .map(|&(at, st)| &ev.v[self.chosen(at, st)])
                    .min()
                    .cloned()
                    .unwrap_or_else(|| BigInt::from(1));
                let ok = min > BigInt::from(0);
                out.push(Obs::new(format!("{prefix}.walk"), walk_desc(), ev.t(&min), ok));
                let n = Rat::from_int(path.len() as i64);
                let ok = path.len() <= self.walk.m + self.walk.n;
                out.push(Obs::new(format!("{prefix}.steps"), steps_desc(), n, ok));
                for (k, &(at, st)) in path.iter().enumerate() {
                    let v = &ev.v[self.chosen(at, st)];
                    out.push(Obs::new(step_id(prefix, k), step_desc(k, at, st), ev.t(v), v > &BigInt::from(0)));
                }
            }
            Err(at) => {
                out.push(Obs::new(
                    format!("{prefix}.walk"),
                    format!("walk trapped at ({}, {})", at.0, at.1),
                    Rat::from_int(-1),
                    false,
                ));
            }
        }
        let v = match self.final_chain(&ev) {
            Some(ch) => {
                let m = self.final_slack(&ev, &ch);
                (ev.t(&m), m > BigInt::from(0))
            }
            None => (Rat::from_int(-1), false),
        };
        out.push(Obs::new(format!("{prefix}.final"), final_desc(), v.0, v.1));
        out
    }

    /// Whole-interval check with the witness taken at the midpoint.
    fn check_interval(&self, lo: &Rat, hi: &Rat, prefix: &str) -> Option<Vec<Obs>> {
        let mid = short_between(lo, hi, &Rat::ratio(1, 2));
        let em = self.eval(&mid);
        let path = self.walk_at(&em).ok()?;
        let chain = self.final_chain(&em)?;
        let zero = BigInt::from(0);
        let ends = [self.eval(lo), self.eval(hi)];
        let mut out = Vec::new();
        let mut walk_v = Vec::new();
        let mut base_v = Vec::new();
        let mut fin_v = Vec::new();
        for ev in &ends {
            let base = &ev.v[self.base];
            // the path replayed: chosen conditions hold at the ends
            let min = path
                .iter()
                .map(|&(at, st)| &ev.v[self.chosen(at, st)])
                .min()
                .cloned()
                .unwrap_or_else(|| BigInt::from(1));
            let fin = self.final_slack(ev, &chain);
            if base <= &zero || min <= zero || fin <= zero {
                return None;
            }
            base_v.push(ev.t(base));
            walk_v.push(ev.t(&min));
            fin_v.push(ev.t(&fin));
        }
        let hull = |v: &[Rat]| (v[0].clone().min(v[1].clone()), v[0].clone().max(v[1].clone()));
        for (id, d, v) in [("base", base_desc(), &base_v), ("walk", walk_desc(), &walk_v), ("final", final_desc(), &fin_v)] {
            let (l, h) = hull(v);
            out.push(Obs::range(format!("{prefix}.{id}"), d, l, h, true));
        }
        let n = Rat::from_int(path.len() as i64);
        out.push(Obs::new(format!("{prefix}.steps"), steps_desc(), n, path.len() <= self.walk.m + self.walk.n));
        for (k, &(at, st)) in path.iter().enumerate() {
            let c = self.chosen(at, st);
            let (a, b) = (ends[0].t(&ends[0].v[c]), ends[1].t(&ends[1].v[c]));
            let (l, h) = if a <= b { (a, b) } else { (b, a) };
            out.push(Obs::range(step_id(prefix, k), step_desc(k, at, st), l, h, true));
        }
        Some(out)
    }

    fn certify(&self, lo: &Rat, hi: &Rat, depth: u32, prefix: &str, out: &mut Vec<Obs>) {
        if let Some(obs) = self.check_interval(lo, hi, prefix) {
            out.extend(obs);
            return;
        }
        if depth == 0 {
            out.extend(self.check_point(lo, prefix));
            out.push(Obs::range(
                format!("{prefix}.interval_failure"),
                "s-subinterval where no midpoint witness held at both ends",
                lo.clone(),
                hi.clone(),
                false,
            ));
            return;
        }
        let mid = short_between(lo, hi, &Rat::ratio(1, 2));
        self.certify(lo, &mid, depth - 1, prefix, out);
        self.certify(&mid, hi, depth - 1, prefix, out);
    }

    /// Runs the checks over `[lo, hi]` per the options.
    pub fn verify_range(&self, lo: &Rat, hi: &Rat, opts: &VerifyOptions, prefix: &str) -> Vec<Obs> {
        let mut out = Vec::new();
        match &opts.mode {
            Mode::Sample { grid } => {
                for s in sample_points(lo, hi, *grid) {
                    out.extend(self.check_point(&s, prefix));
                }
            }
            Mode::Rigorous { pieces, depth } => {
                let pts = sample_points(lo, hi, (*pieces).max(1) + 1);
                for w in pts.windows(2) {
                    self.certify(&w[0], &w[1], *depth, prefix, &mut out);
                }
            }
        }
        out
    }
}

fn base_desc() -> String {
    "good set of the start square is nonempty: width".to_string()
}

fn walk_desc() -> String {
    "block growth reaches (0, 0): smallest slack of the condition used".to_string()
}

fn steps_desc() -> String {
    "number of growth steps (at most 71)".to_string()
}

fn step_id(prefix: &str, k: usize) -> String {
    format!("{prefix}.step{:02}", k + 1)
}

fn step_desc(k: usize, (i, j): (usize, usize), st: Step) -> String {
    let (to, cond) = match st {
        Step::Horizontal => ((i - 1, j), "(1)"),
        Step::Vertical => ((i, j - 1), "(2)"),
    };
    format!("growth step {}: ({i}, {j}) -> ({}, {}) by condition {cond}: slack", k + 1, to.0, to.1)
}

fn final_desc() -> String {
    "(-s, 1) reached from the four translates of the full block and the two long operators: smallest overlap or margin".to_string()
}

/// Lattice bounds behind the no-trap argument: with `r = p^i/q^j` the walk
/// can only stop when `s1 < r s < s2`.
pub fn trap_entries() -> Vec<Entry> {
    let c = consts();
    let mut out = Vec::new();
    // exponents 40 i - 31 j over 0 <= i <= 30, 0 <= j <= 39
    let mut above = i64::MAX;
    let mut below = i64::MIN;
    let mut at_above = (0, 0);
    let mut at_below = (0, 0);
    for i in 0..=30i64 {
        for j in 0..=39i64 {
            let e = 40 * i - 31 * j;
            if e > 0 && e < above {
                above = e;
                at_above = (i, j);
            }
            if e < 0 && e > below {
                below = e;
                at_below = (i, j);
            }
        }
    }
    let r_up = GammaPower::new(above).value();
    let r_down = GammaPower::new(below).value();
    out.push(
        Entry::exact(
            "lemma2.lattice.above_one",
            format!(
                "smallest p^i/q^j above one is gamma^{above}, at (i, j) = ({}, {})",
                at_above.0, at_above.1
            ),
            r_up.clone(),
            above == 1 && at_above == (7, 9),
        ),
    );
    out.push(Entry::exact(
        "lemma2.lattice.below_one",
        format!(
            "largest p^i/q^j below one is gamma^{below}, at (i, j) = ({}, {})",
            at_below.0, at_below.1
        ),
        r_down.clone(),
        below == -1 && at_below == (24, 31),
    ));
    // low range: r >= gamma pushes r s past s2, r <= 1/gamma keeps it below s1
    let low_up = &(&r_up * &c.s_lo) - &c.s2;
    out.push(Entry::exact(
        "lemma2.low.no_trap_above",
        "gamma s_lo - s2 (must be >= 0)",
        low_up.clone(),
        !low_up.is_negative(),
    ));
    let low_down = &c.s1 - &(&r_down * &c.s1);
    out.push(Entry::exact(
        "lemma2.low.no_trap_below",
        "s1 - s1/gamma (must be > 0)",
        low_down.clone(),
        low_down.is_positive(),
    ));
    let high_up = &(&r_up * &c.s2) - &c.s2;
    out.push(Entry::exact(
        "lemma2.high.no_trap_above",
        "gamma s2 - s2 (must be > 0)",
        high_up.clone(),
        high_up.is_positive(),
    ));
    let high_down = &c.s1 - &(&r_down * &c.s_hi);
    out.push(Entry::exact(
        "lemma2.high.no_trap_below",
        "s1 - s_hi/gamma (must be >= 0)",
        high_down.clone(),
        !high_down.is_negative(),
    ));
    out
}

/// Every check for both ranges.
pub fn verify_lemma2(opts: &VerifyOptions) -> Vec<Entry> {
    let chk = Lemma2Checker::new(31, 40);
    let mut agg = Aggregate::new();
    for r in [Range::Low, Range::High] {
        let (lo, hi) = r.bounds();
        agg.extend(chk.verify_range(&lo, &hi, opts, &format!("lemma2.{}", r.name())));
    }
    let mut out = agg.finish();
    out.extend(trap_entries());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_ranges_pass_at_ends() {
        let chk = Lemma2Checker::new(31, 40);
        for r in [Range::Low, Range::High] {
            let (lo, hi) = r.bounds();
            for s in [&lo, &hi] {
                let obs = chk.check_point(s, "x");
                assert!(obs.iter().all(|o| o.ok), "{r:?} {obs:?}");
            }
        }
    }

    #[test]
    fn integer_walk_matches_exact_walk() {
        let c = consts();
        let chk = Lemma2Checker::new(31, 40);
        let path = chk.walk_at(&chk.eval(&c.s_lo)).unwrap();
        let recs = chk.walk.run(&c.s_lo).unwrap();
        assert_eq!(path.len(), recs.len());
        assert!(path.iter().zip(&recs).all(|(a, b)| a.0 == b.from && a.1 == b.step));
    }

    #[test]
    fn trap_window_is_avoided() {
        assert!(trap_entries().iter().all(Entry::passed));
    }
}
