//! The full recurrence certificate for the pair `p = gamma^40`, `q = gamma^31`.

use super::cases::{
    case_windows, intercept_diff, lattice_distance, lemma1_range, m1, m2, min_exponent_gap, overlap_conditions,
    r1, r2, relation3_slack,
};
use super::certificate::{Certificate, Entry, PaperKind};
use super::constants::consts;
use super::lemma1::verify_lemma1;
use super::lemma2::{verify_lemma2, Lemma2Checker};
use super::options::VerifyOptions;
use super::paving::Walk;
use super::squares::Square;
use crate::arith::{Affine, GammaPower, Rat};
use crate::renorm::{PairOperators, ReturnMap, A_LEN, B_LEN};

pub const REGION_NOTE: &str = "region L is read as the triangle minus both cut corners, (Delta \\ Delta1) \\ Delta2";

pub const INDEX_NOTE: &str =
    "block indices count from 0: the block (i, j) here is the block (i + 1, j + 1) of the written induction";

/// Range-wide entries of the first lemma that do not depend on sampling.
pub fn lemma1_global_entries(opts: &VerifyOptions) -> Vec<Entry> {
    let c = consts();
    let mut out = Vec::new();
    let walk = Walk::lemma1();
    // written base case (28, 37): condition (2) holds, condition (1) fails
    let (c1, c2) = walk.condition_slacks(28, 37);
    let u = walk.scale_factor();
    let (l2, h2) = c2.scale(&u.recip()).range(&c.s1, &c.s2);
    let (_, h1) = c1.range(&c.s1, &c.s2);
    out.push(Entry::new(
        "lemma1.base_case.i28_j37",
        "at block (28, 37) condition (2) holds and condition (1) fails on the whole range: slack of (2)",
        l2.clone(),
        h2,
        l2.is_positive() && !h1.is_positive(),
    ));

    for cw in case_windows() {
        let (lo, hi) = lemma1_range(&intercept_diff(&cw.bad, &cw.rescuer));
        let got = overlap_conditions(&lo, &hi);
        let (wl, wh) = cw.claimed.window().expect("claimed window");
        let mut e = Entry::new(
            cw.id,
            format!(
                "{} - a{} over [s1, s2] inside window {} ({}, {})",
                cw.bad.label.replace('C', "a"),
                &cw.rescuer.label[1..],
                cw.claimed.label(),
                wl.to_fixed(9, crate::arith::Rounding::Trunc),
                wh.to_fixed(9, crate::arith::Rounding::Trunc),
            ),
            lo,
            hi,
            got == cw.claimed,
        );
        if let Some((pl, ph)) = cw.paper {
            e = e.with_paper_window(pl, ph);
        }
        out.push(e);
    }

    let g = Square::grid;
    let q1s = Affine::linear(&c.q - &Rat::one());
    let shift = Affine::constant(&(&c.p - &Rat::one()) * &c.p);
    let identities: Vec<(&str, &str, Affine, Affine)> = vec![
        ("identity.a42_a32", "a42 - a32 = (q - 1) s", intercept_diff(&g(4, 2), &g(3, 2)), q1s.clone()),
        ("identity.a41_a31", "a41 - a31 = (q - 1) s", intercept_diff(&g(4, 1), &g(3, 1)), q1s.clone()),
        ("identity.a12_a22", "a12 - a22 = -(q - 1) s", intercept_diff(&g(1, 2), &g(2, 2)), -&q1s),
        ("identity.a33_a43", "a33 - a43 = -(q - 1) s", intercept_diff(&g(3, 3), &g(4, 3)), -&q1s),
    ];
    for (id, d, lhs, rhs) in identities {
        let diff = &lhs - &rhs;
        out.push(Entry::exact(id, d, Rat::zero(), diff.c0.is_zero() && diff.c1.is_zero()));
    }
    let mut shift_ok = true;
    for i in 1..=4 {
        for j in 3..=4 {
            let d = &intercept_diff(&g(i, j), &g(i, j - 2)) + &shift;
            shift_ok &= d.c0.is_zero() && d.c1.is_zero();
        }
    }
    out.push(Entry::exact(
        "identity.shift",
        "a_ij = a_i(j-2) - (p - 1) p for j = 3, 4: the shifted copies behave alike",
        Rat::zero(),
        shift_ok,
    ));

    let delta1 = &c.delta1 + &opts.delta1_offset();
    let (r1v, r2v) = (r1(&delta1), r2(&c.delta2));
    out.push(
        Entry::exact("relation3.r1", "(p-2)(q-1)/((p-1) delta1) - 1", r1v.clone(), r1v.is_positive())
            .with_paper("0.020343299", PaperKind::Value),
    );
    out.push(
        Entry::exact("relation3.r2", "1 - (q-1)/((p-1)(q-2) delta2)", r2v.clone(), r2v.is_positive())
            .with_paper("0.019937701", PaperKind::Value),
    );
    for i in 1..=27 {
        let (slack, j) = relation3_slack(i, &r1v, &r2v);
        let ok = slack.is_positive();
        out.push(Entry::exact(
            format!("relation3.i{i:02}"),
            format!("min over 1 <= j <= 37 of |p^{i}/q^j - 1| minus its margin, attained at j = {j}"),
            slack,
            ok,
        ));
    }
    let d27 = lattice_distance(27);
    let d26 = lattice_distance(26);
    let bound25 = (&r1v + &m1(25)).max(&r2v + &m2(25));
    let gamma_gap = (&c.gamma - &Rat::one()).min(&Rat::one() - &c.gamma.recip());
    let (gap, gi, gj) = min_exponent_gap(25, 37);
    out.extend([
        Entry::exact("relation3.distance_i27", "min over j of |p^27/q^j - 1|", d27.clone(), d27 > (&r1v + &m1(27)).max(&r2v + &m2(27)))
            .with_paper("0.146131269", PaperKind::Value),
        Entry::exact("relation3.m1_i27", "2(q-1)p^27/q^39", m1(27), true).with_paper("0.056470184", PaperKind::Value),
        Entry::exact("relation3.m2_i27", "2(q-1)p^27/((q-2)q^39)", m2(27), true).with_paper("0.085170618", PaperKind::Value),
        Entry::exact("relation3.distance_i26", "min over j of |p^26/q^j - 1|", d26.clone(), d26 > (&r1v + &m1(26)).max(&r2v + &m2(26)))
            .with_paper("0.357467488", PaperKind::Value),
        Entry::exact("relation3.m1_i25", "2(q-1)p^25/q^39", m1(25), true).with_paper("0.004508966", PaperKind::Value),
        Entry::exact("relation3.m2_i25", "2(q-1)p^25/((q-2)q^39)", m2(25), true).with_paper("0.006800605", PaperKind::Value),
        Entry::exact(
            "relation3.bound_i25",
            "largest margin for i <= 25: max(r1 + m1(25), r2 + m2(25))",
            bound25.clone(),
            bound25 < gamma_gap,
        )
        .with_paper("0.028738306", PaperKind::Value),
        Entry::exact("relation3.gamma_gap", "min(|gamma - 1|, |1/gamma - 1|)", gamma_gap, true)
            .with_paper("0.031101637", PaperKind::Value),
        Entry::exact(
            "relation3.min_exponent_gap",
            format!("min |40 i - 31 j| over 1 <= i <= 25, 1 <= j <= 37, attained at ({gi}, {gj})"),
            Rat::from_int(gap),
            gap == 1,
        ),
    ]);
    out
}

/// Both long operators as return maps of corner squares.
fn long_operator_entries() -> Vec<Entry> {
    let c = consts();
    let ops = PairOperators::theorem2();
    let mut out = Vec::new();
    let ones_a = vec![1u8; A_LEN];
    let ones_b = vec![1u8; B_LEN];
    let zeros_a = vec![0u8; A_LEN];
    let zeros_b = vec![0u8; B_LEN];
    let samples = [c.s_lo.clone(), c.s1.clone(), c.s2.clone(), c.s_hi.clone()];
    let cases: [(&str, &str, &Vec<u8>, &Vec<u8>); 2] = [
        ("theorem.case2.long_op_right", "T'0^40 T1^31: t -> p^31 t - p^31 + 1, fixing t = 1", &ones_a, &zeros_b),
        ("theorem.case2.long_op_left", "T'1^40 T0^31: t -> p^31 t + (p^31 - 1) s, fixing t = -s", &zeros_a, &ones_b),
    ];
    for (k, (id, d, a, b)) in cases.iter().enumerate() {
        let mut ok = true;
        for s in &samples {
            let Ok(rm) = ReturnMap::new(a, b, s) else {
                ok = false;
                continue;
            };
            let fixed = if k == 0 { Rat::one() } else { -s };
            ok &= rm.apply(&fixed) == fixed;
            let expect = if k == 0 {
                &Rat::one() - &c.p31
            } else {
                s * &(&c.p31 - &Rat::one())
            };
            ok &= rm.intercept == expect;
            let t = Rat::ratio(1, 3);
            let comp = rm.apply_by_composition(&ops, &t);
            ok &= comp.t == rm.apply(&t) && &comp.s == s;
        }
        out.push(Entry::exact(*id, *d, c.p31.clone(), ok));
    }
    out
}

/// Boundary scales moved by one lattice step onto the other end of a
/// lemma range, covering with the landing interval at the new scale.
fn case3_entries() -> Vec<Entry> {
    let c = consts();
    let mut out = Vec::new();
    let moves = [
        ("theorem.case3.low", 7usize, 9usize, c.s_lo.clone(), c.s2.clone(), 1i64),
        ("theorem.case3.high", 24, 31, c.s_hi.clone(), c.s1.clone(), -1),
    ];
    for (id, m, n, from, to, e) in moves {
        let r = GammaPower::lattice(m as i64, n as i64);
        let exact = r.exponent == e && &(&r.value() * &from) == &to;
        out.push(Entry::exact(
            format!("{id}.lattice"),
            format!("p^{m}/q^{n} = gamma^{e} carries the boundary scale exactly onto the range end"),
            r.value(),
            exact,
        ));
        let chk = Lemma2Checker::new(m, n);
        let obs = chk.check_point(&from, id);
        let ok = obs.iter().all(|o| o.ok);
        let worst = obs
            .iter()
            .filter(|o| o.id.ends_with(".walk") || o.id.ends_with(".final"))
            .map(|o| o.lo.clone())
            .min()
            .unwrap_or_else(Rat::zero);
        out.push(Entry::exact(
            format!("{id}.cover"),
            format!("at the boundary scale, blocks of level ({m}, {n}) land in the open interval at the new scale: smallest slack"),
            worst,
            ok,
        ));
    }
    out
}

/// The thickness product and the ordering of the four scales.
pub fn ordering_entries() -> Vec<Entry> {
    let c = consts();
    let tau = c.tau_product();
    let ordered = c.s_lo < c.s1 && c.s1 < c.s2 && c.s2 < c.s_hi;
    vec![
        Entry::exact("theorem.tau_product", "1/((p-2)(q-2)) < 1", tau.clone(), tau < Rat::one())
            .with_paper("0.980062299", PaperKind::Value),
        Entry::exact("theorem.s_lo", "s2/gamma", c.s_lo.clone(), true).with_paper("1.1220161", PaperKind::Value),
        Entry::exact("theorem.s1", "s1", c.s1.clone(), true).with_paper("1.1349444", PaperKind::Value),
        Entry::exact("theorem.s2", "s2", c.s2.clone(), true).with_paper("1.1580329", PaperKind::Value),
        Entry::exact("theorem.s_hi", "gamma s1", c.s_hi.clone(), true).with_paper("1.1713761", PaperKind::Value),
        Entry::new(
            "theorem.ordering",
            "s2/gamma < s1 < s2 < gamma s1",
            c.s_lo.clone(),
            c.s_hi.clone(),
            ordered,
        ),
    ]
}

pub fn lemma1_certificate(opts: &VerifyOptions) -> Certificate {
    let mut cert = Certificate::new("lemma1", opts.mode.name());
    cert.notes.push(INDEX_NOTE.to_string());
    cert.entries.extend(verify_lemma1(opts));
    cert.entries.extend(lemma1_global_entries(opts));
    cert
}

pub fn lemma2_certificate(opts: &VerifyOptions) -> Certificate {
    let mut cert = Certificate::new("lemma2", opts.mode.name());
    cert.entries.extend(verify_lemma2(opts));
    cert
}

/// Everything, with one verdict.
pub fn verify_theorem2(opts: &VerifyOptions) -> Certificate {
    let mut cert = Certificate::new("theorem2", opts.mode.name());
    cert.notes.push(REGION_NOTE.to_string());
    cert.entries.extend(ordering_entries());
    cert.extend(lemma1_certificate(opts));
    cert.extend(lemma2_certificate(opts));
    cert.entries.extend(long_operator_entries());
    cert.entries.extend(case3_entries());
    let ok = cert.passed();
    cert.entries.push(Entry::exact(
        "theorem.verdict",
        "every entry above passes",
        Rat::from_int(i64::from(ok)),
        ok,
    ));
    cert
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn global_entries_pass() {
        let e = lemma1_global_entries(&VerifyOptions::default());
        let bad: Vec<_> = e.iter().filter(|x| !x.passed()).map(|x| x.id.clone()).collect();
        assert!(bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn long_operators_and_boundary_moves() {
        assert!(long_operator_entries().iter().all(Entry::passed));
        let e = case3_entries();
        assert!(e.iter().all(Entry::passed), "{e:?}");
    }

    #[test]
    fn delta_fault_breaks_relation3() {
        let opts = VerifyOptions::default().with_fault(super::super::options::Fault::Delta1Offset(Rat::ratio(1, 10)));
        let e = lemma1_global_entries(&opts);
        assert!(e.iter().any(|x| !x.passed()));
    }
}
