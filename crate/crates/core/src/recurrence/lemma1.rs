//! Covering checks on `[s1, s2]`: the 16-square cover of `J_s`, bad-set
//! rescue, the 64-square base block, the paving walk and the four final
//! translates.

use super::certificate::{Aggregate, Entry, Obs};
use super::constants::consts;
use super::cover::{chain_terms, greedy_chain};
use super::intervals::{endpoints, j_affine, Family};
use super::options::{short_between, sample_points, Mode, VerifyOptions};
use super::paving::{Step, StepRecord, Walk};
use super::squares::{square_grid_16, Square};
use crate::arith::{Affine, AffineTable, Rat};
use crate::renorm::{A_LEN, B_LEN};
use num_bigint::BigInt;

type Pair = (usize, usize);

/// Every quantity is an affine function of `s` in one table, in `u = p^31 t`.
pub struct Lemma1Checker {
    pub family: Family,
    items: Vec<Affine>,
    table: AffineTable,
    pieces: [Pair; 3],
    labels: Vec<String>,
    /// Good sets of the 16 grid squares, three per square.
    good16: Vec<[Pair; 3]>,
    /// Members of the 14-square family, as grid indices.
    fam14: Vec<usize>,
    /// Bad-set candidates per grid square: left end, two gaps, right end.
    comps: Vec<[Pair; 4]>,
    proj: Vec<Pair>,
    j: Pair,
    d1_hull: Pair,
    d1_parts: Vec<Pair>,
    finals: Vec<(Pair, Vec<Pair>)>,
    walk: Walk,
    path: Vec<(StepRecord, usize, usize)>,
}

fn push(items: &mut Vec<Affine>, a: Affine) -> usize {
    items.push(a);
    items.len() - 1
}

fn pair(items: &mut Vec<Affine>, a: Affine, b: Affine) -> Pair {
    (push(items, a), push(items, b))
}

/// The 64 squares of the base block: free bits at the three last positions
/// of both words.
pub fn base_block_squares() -> Vec<Square> {
    let mut out = Vec::with_capacity(64);
    for x in 0..8u8 {
        for y in 0..8u8 {
            let mut a = vec![0u8; A_LEN];
            let mut b = vec![0u8; B_LEN];
            for k in 0..3 {
                a[A_LEN - 3 + k] = (x >> (2 - k)) & 1;
                b[B_LEN - 3 + k] = (y >> (2 - k)) & 1;
            }
            out.push(Square::new(format!("D{x}{y}"), a, b));
        }
    }
    out
}

impl Lemma1Checker {
    /// Builds the table; the paving path is taken at `reference`.
    pub fn new(family: Family, reference: &Rat) -> Self {
        let c = consts();
        let e = endpoints();
        let mut items = Vec::new();
        let one = Affine::constant(Rat::one());
        let s_aff = Affine::linear(Rat::one());
        let ps = e.pieces(family);
        let pieces = [
            pair(&mut items, ps[0].0.clone(), ps[0].1.clone()),
            pair(&mut items, ps[1].0.clone(), ps[1].1.clone()),
            pair(&mut items, ps[2].0.clone(), ps[2].1.clone()),
        ];
        let grid = square_grid_16();
        let mut good16 = Vec::with_capacity(16);
        let mut comps = Vec::with_capacity(16);
        let mut proj = Vec::with_capacity(16);
        for sq in &grid {
            let a = sq.intercept();
            let g = |k: usize| (&ps[k].0 - &a, &ps[k].1 - &a);
            let gs = [g(0), g(1), g(2)];
            good16.push([
                pair(&mut items, gs[0].0.clone(), gs[0].1.clone()),
                pair(&mut items, gs[1].0.clone(), gs[1].1.clone()),
                pair(&mut items, gs[2].0.clone(), gs[2].1.clone()),
            ]);
            let left = &(-&a) - &s_aff;
            let right = &one - &a;
            comps.push([
                pair(&mut items, left.clone(), gs[0].0.clone()),
                pair(&mut items, gs[0].1.clone(), gs[1].0.clone()),
                pair(&mut items, gs[1].1.clone(), gs[2].0.clone()),
                pair(&mut items, gs[2].1.clone(), right.clone()),
            ]);
            proj.push(pair(&mut items, left, right));
        }
        let fam14 = grid
            .iter()
            .enumerate()
            .filter(|(_, sq)| sq.label != "C41" && sq.label != "C14")
            .map(|(k, _)| k)
            .collect();
        let (jl, jh) = j_affine();
        let j = pair(&mut items, jl.scale(&c.p31), jh.scale(&c.p31));
        let walk = Walk::lemma1();
        let (hl, hh) = walk.covered(walk.start.0, walk.start.1);
        let d1_hull = pair(&mut items, hl, hh);
        let mut d1_parts = Vec::with_capacity(192);
        for sq in base_block_squares() {
            let a = sq.intercept();
            for (lo, hi) in &ps {
                d1_parts.push(pair(&mut items, lo - &a, hi - &a));
            }
        }
        let mut finals = Vec::with_capacity(3);
        for (lo, hi) in &ps {
            let p = walk.final_cover(lo, hi);
            let t = pair(&mut items, p.target.0.clone(), p.target.1.clone());
            let parts = p
                .parts
                .iter()
                .map(|(a, b)| pair(&mut items, a.clone(), b.clone()))
                .collect();
            finals.push((t, parts));
        }
        let mut path = Vec::new();
        if let Ok(recs) = walk.run(reference) {
            for r in recs {
                let (c1, c2) = walk.condition_slacks(r.from.0, r.from.1);
                let (chosen, other) = match r.step {
                    Step::Horizontal => (c1, c2),
                    Step::Vertical => (c2, c1),
                };
                let ci = push(&mut items, chosen);
                let oi = push(&mut items, other);
                path.push((r, ci, oi));
            }
        }
        let table = AffineTable::new(&items);
        Lemma1Checker {
            family,
            items,
            table,
            pieces,
            labels: grid.iter().map(|s| s.label.clone()).collect(),
            good16,
            fam14,
            comps,
            proj,
            j,
            d1_hull,
            d1_parts,
            finals,
            walk,
            path,
        }
    }

    pub fn table_len(&self) -> usize {
        self.items.len()
    }
}

/// Values of the table at one `s`, with conversion back to `t` units.
struct Eval {
    v: Vec<BigInt>,
    /// Reciprocal of the integer per unit of `u`.
    inv_unit: Rat,
    /// Reciprocal of the integer per unit of `t`.
    inv_t_unit: Rat,
}

impl Eval {
    fn u(&self, x: BigInt) -> Rat {
        &Rat::from_bigint(x) * &self.inv_unit
    }

    fn t(&self, x: BigInt) -> Rat {
        &Rat::from_bigint(x) * &self.inv_t_unit
    }

    fn get(&self, p: Pair) -> (BigInt, BigInt) {
        (self.v[p.0].clone(), self.v[p.1].clone())
    }
}

/// A witness for one `s`-interval: chains and the paving path.
#[derive(Clone, Debug)]
struct Witness {
    j: Option<Vec<usize>>,
    d1: Option<Vec<usize>>,
    finals: Vec<Option<Vec<usize>>>,
}

fn desc(id: &str) -> String {
    let d = match id {
        "lemma1.delta_window" => "delta1 <= s* <= delta2 over the range".to_string(),
        "lemma1.family_order" => "a1 < b1, a2 < b2, a3 < b3: smallest piece length".to_string(),
        "lemma1.j_cover" => "J_s covered by good sets of the 16 grid squares: chain slack".to_string(),
        "lemma1.j_hull" => "J_s equals the hull of the 14 square projections: endpoint discrepancy".to_string(),
        "lemma1.bad_set.components" => "bad-set component count: 4 inside (s1, s2), 2 at s1 and s2".to_string(),
        "lemma1.base_block.cover" => "base block hull covered by the good sets of its 64 squares: chain slack".to_string(),
        _ => {
            if let Some(l) = id.strip_prefix("lemma1.rescue.") {
                format!("bad-set components of {l} inside J_s covered by good sets of the other grid squares (point checks)")
            } else if let Some(k) = id.strip_prefix("lemma1.paving.final.piece") {
                format!("piece {k} of I_s inside the four translates of the full block: chain slack")
            } else {
                String::new()
            }
        }
    };
    d
}

fn step_desc(k: usize, r: &StepRecord) -> String {
    let (i, j) = r.from;
    let (to, cond) = match r.step {
        Step::Horizontal => ((i - 1, j), "(1)"),
        Step::Vertical => ((i, j - 1), "(2)"),
    };
    format!(
        "paving step {k}: ({i}, {j}) -> ({}, {}) by condition {cond}; the other condition fails",
        to.0, to.1
    )
}

impl Lemma1Checker {
    fn eval(&self, s: &Rat) -> Eval {
        let v = self.table.eval(s);
        let unit = self.table.unit(s);
        let t_unit = &unit * &consts().p31;
        Eval {
            v,
            inv_unit: unit.recip(),
            inv_t_unit: t_unit.recip(),
        }
    }

    fn good_parts(&self, ev: &Eval, skip: Option<usize>) -> Vec<(BigInt, BigInt)> {
        let mut parts = Vec::with_capacity(48);
        for (k, g) in self.good16.iter().enumerate() {
            if Some(k) == skip {
                continue;
            }
            for p in g {
                parts.push(ev.get(*p));
            }
        }
        parts
    }

    fn d1_values(&self, ev: &Eval) -> Vec<(BigInt, BigInt)> {
        self.d1_parts.iter().map(|p| ev.get(*p)).collect()
    }

    fn final_values(&self, ev: &Eval, k: usize) -> ((BigInt, BigInt), Vec<(BigInt, BigInt)>) {
        let (t, parts) = &self.finals[k];
        (ev.get(*t), parts.iter().map(|p| ev.get(*p)).collect())
    }

    fn witness(&self, s: &Rat) -> Witness {
        let ev = self.eval(s);
        let (jl, jh) = ev.get(self.j);
        let (hl, hh) = ev.get(self.d1_hull);
        Witness {
            j: greedy_chain(&jl, &jh, &self.good_parts(&ev, None), false),
            d1: greedy_chain(&hl, &hh, &self.d1_values(&ev), false),
            finals: (0..3)
                .map(|k| {
                    let ((a, b), parts) = self.final_values(&ev, k);
                    greedy_chain(&a, &b, &parts, true)
                })
                .collect(),
        }
    }

    /// Chain inequality values at `s` for a fixed witness.
    fn chain_values(&self, ev: &Eval, w: &Witness) -> Vec<Option<Vec<BigInt>>> {
        let mut out = Vec::with_capacity(5);
        let (jl, jh) = ev.get(self.j);
        out.push(w.j.as_ref().map(|c| chain_terms(&jl, &jh, &self.good_parts(ev, None), c)));
        let (hl, hh) = ev.get(self.d1_hull);
        out.push(w.d1.as_ref().map(|c| chain_terms(&hl, &hh, &self.d1_values(ev), c)));
        for k in 0..3 {
            let ((a, b), parts) = self.final_values(ev, k);
            out.push(w.finals[k].as_ref().map(|c| chain_terms(&a, &b, &parts, c)));
        }
        out
    }

    fn chain_ids() -> [&'static str; 5] {
        [
            "lemma1.j_cover",
            "lemma1.base_block.cover",
            "lemma1.paving.final.piece1",
            "lemma1.paving.final.piece2",
            "lemma1.paving.final.piece3",
        ]
    }

    /// Point checks that are not part of the interval argument.
    fn point_checks(&self, s: &Rat, delta1: &Rat, out: &mut Vec<Obs>) {
        let c = consts();
        let ev = self.eval(s);
        let sstar = c.s_star(s);
        let ok = delta1 <= &sstar && sstar <= c.delta2;
        out.push(Obs::new("lemma1.delta_window", desc("lemma1.delta_window"), sstar, ok));
        let order = self
            .pieces
            .iter()
            .map(|p| {
                let (a, b) = ev.get(*p);
                b - a
            })
            .min()
            .expect("three pieces");
        let order = ev.u(order);
        let ok = order.is_positive();
        out.push(Obs::new("lemma1.family_order", desc("lemma1.family_order"), order, ok));
        let (jl, jh) = ev.get(self.j);
        let lo = self.fam14.iter().map(|&k| ev.v[self.proj[k].0].clone()).min().expect("squares");
        let hi = self.fam14.iter().map(|&k| ev.v[self.proj[k].1].clone()).max().expect("squares");
        let gap: BigInt = (&lo - &jl).magnitude().clone().into();
        let gap2: BigInt = (&hi - &jh).magnitude().clone().into();
        let gap = ev.t(gap.max(gap2));
        let ok = gap.is_zero();
        out.push(Obs::new("lemma1.j_hull", desc("lemma1.j_hull"), gap, ok));
        let boundary = s == &c.s1 || s == &c.s2;
        let expect = if boundary { 2 } else { 4 };
        let mut counts_ok = true;
        let mut count_min = i64::MAX;
        let mut count_max = i64::MIN;
        for &k in &self.fam14 {
            let comps: Vec<(BigInt, BigInt)> = self.comps[k]
                .iter()
                .map(|p| ev.get(*p))
                .filter(|(a, b)| a < b)
                .collect();
            let n = comps.len() as i64;
            count_min = count_min.min(n);
            count_max = count_max.max(n);
            counts_ok &= n == expect;
            let parts = self.good_parts(&ev, Some(k));
            let mut slack: Option<BigInt> = None;
            let mut ok = true;
            for (a, b) in comps {
                let lo = a.max(jl.clone());
                let hi = b.min(jh.clone());
                if lo > hi {
                    continue;
                }
                let v = match greedy_chain(&lo, &hi, &parts, false) {
                    Some(ch) => chain_terms(&lo, &hi, &parts, &ch).into_iter().min().expect("terms"),
                    None => {
                        ok = false;
                        BigInt::from(-1)
                    }
                };
                if v <= BigInt::from(0) {
                    ok = false;
                }
                slack = Some(match slack {
                    Some(x) => x.min(v),
                    None => v,
                });
            }
            let id = format!("lemma1.rescue.{}", self.labels[k]);
            let v = slack.map(|x| ev.t(x)).unwrap_or_else(Rat::zero);
            out.push(Obs::new(id.clone(), desc(&id), v, ok));
        }
        out.push(Obs::range(
            "lemma1.bad_set.components",
            desc("lemma1.bad_set.components"),
            Rat::from_int(count_min),
            Rat::from_int(count_max),
            counts_ok,
        ));
    }

    fn path_obs(&self, ends: &[&Eval], out: &mut Vec<Obs>) -> bool {
        let mut all = true;
        for (k, (rec, ci, oi)) in self.path.iter().enumerate() {
            let mut vals = Vec::new();
            let mut ok = true;
            for ev in ends {
                let zero = BigInt::from(0);
                ok &= ev.v[*ci] > zero && ev.v[*oi] <= zero;
                vals.push(ev.t(ev.v[*ci].clone()));
            }
            all &= ok;
            let lo = vals.iter().min().expect("ends").clone();
            let hi = vals.iter().max().expect("ends").clone();
            out.push(Obs::range(
                format!("lemma1.paving.step{:02}", k + 1),
                step_desc(k + 1, rec),
                lo,
                hi,
                ok,
            ));
        }
        all
    }

    /// All checks at one `s`.
    pub fn check_point(&self, s: &Rat, delta1: &Rat) -> Vec<Obs> {
        let mut out = Vec::new();
        self.point_checks(s, delta1, &mut out);
        let ev = self.eval(s);
        let w = self.witness(s);
        for (id, vals) in Self::chain_ids().iter().zip(self.chain_values(&ev, &w)) {
            let closed = id.contains("final");
            let (v, ok) = match vals {
                Some(v) => {
                    let m = v.into_iter().min().expect("terms");
                    let ok = if closed { m >= BigInt::from(0) } else { m > BigInt::from(0) };
                    (ev.t(m), ok)
                }
                None => (Rat::from_int(-1), false),
            };
            out.push(Obs::new(*id, desc(id), v, ok));
        }
        if !self.path_obs(&[&ev], &mut out) || self.path.is_empty() {
            self.walk_fallback(s, &mut out);
        }
        out
    }

    /// Reports a walk that deviates from the reference path.
    fn walk_fallback(&self, s: &Rat, out: &mut Vec<Obs>) {
        match self.walk.run(s) {
            Ok(recs) => {
                let ok = recs.iter().all(|r| self.walk.record_ok(r));
                let v = recs.iter().map(|r| r.slack.clone()).min().unwrap_or_else(Rat::zero);
                out.push(Obs::new(
                    "lemma1.paving.walk",
                    "paving walk from the base block to (0, 0) at points off the reference path",
                    v,
                    ok,
                ));
            }
            Err((_, e)) => out.push(Obs::new(
                "lemma1.paving.walk",
                format!("paving walk stuck: {e}"),
                Rat::from_int(-1),
                false,
            )),
        }
    }

    /// Interval checks on `[lo, hi]`; `None` when the midpoint witness does
    /// not hold at both ends.
    fn check_interval(&self, lo: &Rat, hi: &Rat) -> Option<Vec<Obs>> {
        let mid = short_between(lo, hi, &Rat::ratio(1, 2));
        let w = self.witness(&mid);
        let e0 = self.eval(lo);
        let e1 = self.eval(hi);
        let v0 = self.chain_values(&e0, &w);
        let v1 = self.chain_values(&e1, &w);
        let mut out = Vec::new();
        for ((id, a), b) in Self::chain_ids().iter().zip(v0).zip(v1) {
            let closed = id.contains("final");
            let (a, b) = (a?, b?);
            let zero = BigInt::from(0);
            let good = |x: &BigInt| if closed { x >= &zero } else { x > &zero };
            if !a.iter().chain(b.iter()).all(good) {
                return None;
            }
            // min over the chain of a concave function: the minimum sits at
            // an end; the smallest per-term maximum bounds it above
            let lo_v = a.iter().chain(b.iter()).min().expect("terms").clone();
            let hi_v = a
                .iter()
                .zip(b.iter())
                .map(|(x, y)| (e0.t(x.clone())).max(e1.t(y.clone())))
                .min()
                .expect("terms");
            out.push(Obs::range(*id, desc(id), e0.t(lo_v.clone()).min(e1.t(lo_v)), hi_v, true));
        }
        if self.path.is_empty() || !self.path_obs(&[&e0, &e1], &mut out) {
            return None;
        }
        Some(out)
    }

    fn certify(&self, lo: &Rat, hi: &Rat, depth: u32, delta1: &Rat, out: &mut Vec<Obs>) {
        if let Some(obs) = self.check_interval(lo, hi) {
            out.extend(obs);
            let c = consts();
            // affine point quantities: exact at the ends
            for s in [lo, hi] {
                let sstar = c.s_star(s);
                let ok = delta1 <= &sstar && sstar <= c.delta2;
                out.push(Obs::new("lemma1.delta_window", desc("lemma1.delta_window"), sstar, ok));
            }
            return;
        }
        if depth == 0 {
            let mut pts = Vec::new();
            self.point_checks(lo, delta1, &mut pts);
            out.extend(pts);
            out.push(Obs::range(
                "lemma1.interval_failure",
                "s-subinterval where no midpoint witness held at both ends",
                lo.clone(),
                hi.clone(),
                false,
            ));
            return;
        }
        let mid = short_between(lo, hi, &Rat::ratio(1, 2));
        self.certify(lo, &mid, depth - 1, delta1, out);
        self.certify(&mid, hi, depth - 1, delta1, out);
    }
}

/// The two family ranges, `[s1, split]` and `[split, s2]`.
pub fn family_ranges() -> [(Family, Rat, Rat); 2] {
    let c = consts();
    [
        (Family::Minus, c.s1.clone(), c.s_split.clone()),
        (Family::Plus, c.s_split.clone(), c.s2.clone()),
    ]
}

/// Runs every `s`-dependent Lemma 1 check per the options.
pub fn verify_lemma1(opts: &VerifyOptions) -> Vec<Entry> {
    let c = consts();
    let delta1 = &c.delta1 + &opts.delta1_offset();
    let mut agg = Aggregate::new();
    let checkers: Vec<Lemma1Checker> = family_ranges()
        .iter()
        .map(|(f, lo, hi)| Lemma1Checker::new(*f, &short_between(lo, hi, &Rat::ratio(1, 2))))
        .collect();
    match &opts.mode {
        Mode::Sample { grid } => {
            for s in sample_points(&c.s1, &c.s2, *grid) {
                let k = if s <= c.s_split { 0 } else { 1 };
                agg.extend(checkers[k].check_point(&s, &delta1));
            }
        }
        Mode::Rigorous { pieces, depth } => {
            let per = (*pieces / 2).max(1);
            for (k, (_, lo, hi)) in family_ranges().iter().enumerate() {
                let pts = sample_points(lo, hi, per + 1);
                let mut obs = Vec::new();
                for w in pts.windows(2) {
                    checkers[k].certify(&w[0], &w[1], *depth, &delta1, &mut obs);
                }
                // point-only checks at the partition points
                for s in &pts {
                    checkers[k].point_checks(s, &delta1, &mut obs);
                }
                agg.extend(obs);
            }
        }
    }
    let mut entries = agg.finish();
    // both families at the split
    for (k, f) in [Family::Minus, Family::Plus].iter().enumerate() {
        let obs = checkers[k].check_point(&c.s_split, &delta1);
        let ok = obs.iter().all(|o| o.ok);
        let name = match f {
            Family::Minus => "minus",
            Family::Plus => "plus",
        };
        entries.push(Entry::exact(
            format!("lemma1.split.{name}"),
            format!("all point checks at s* = 1 with the {} family", f.sign()),
            c.s_split.clone(),
            ok,
        ));
    }
    entries
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_checks_pass_at_ends_and_middle() {
        let c = consts();
        let mid = short_between(&c.s1, &c.s_split, &Rat::ratio(1, 2));
        let chk = Lemma1Checker::new(Family::Minus, &mid);
        assert_eq!(chk.path.len(), 63);
        for s in [&c.s1, &mid, &c.s_split] {
            let obs = chk.check_point(s, &c.delta1);
            let bad: Vec<_> = obs.iter().filter(|o| !o.ok).map(|o| o.id.clone()).collect();
            assert!(bad.is_empty(), "{bad:?}");
        }
    }

    #[test]
    fn interval_witness_holds_on_short_interval() {
        let c = consts();
        let lo = short_between(&c.s_split, &c.s2, &Rat::ratio(1, 3));
        let hi = short_between(&c.s_split, &c.s2, &Rat::ratio(1, 2));
        let chk = Lemma1Checker::new(Family::Plus, &hi);
        let mut out = Vec::new();
        chk.certify(&lo, &hi, 8, &c.delta1, &mut out);
        assert!(out.iter().all(|o| o.ok));
    }
}
