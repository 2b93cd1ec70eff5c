use super::interval::Interval;
use super::set::{HomogeneousCantorSet, PlacedCantorSet};
use super::thickness::homogeneous_thickness;
use crate::arith::{gamma, Rat};
use serde::Serialize;

/// Results of the HD-sum test closer than this to 1 are reported inconclusive
/// unless decided exactly.
pub const HD_MARGIN: f64 = 1e-9;

pub fn hausdorff_dimension(k: &HomogeneousCantorSet) -> f64 {
    std::f64::consts::LN_2 / k.p().to_f64().ln()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Satisfied,
    NotSatisfied,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Satisfied => "satisfied",
            Verdict::NotSatisfied => "not satisfied",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Sign of `HD(K) + HD(K') - 1`, exact when both ratios are powers of gamma.
pub fn hd_sum_sign(k: &HomogeneousCantorSet, kp: &HomogeneousCantorSet) -> Option<std::cmp::Ordering> {
    if let (Some(a), Some(b)) = (k.gamma_exp(), kp.gamma_exp()) {
        if a > 0 && b > 0 {
            // ln2/(a lng) + ln2/(b lng) vs 1  <=>  2^(a+b) vs gamma^(ab)
            let lhs = Rat::from_int(2).pow((a + b) as i32);
            let rhs = gamma().pow((a * b) as i32);
            return Some(lhs.cmp(&rhs));
        }
    }
    let d = hausdorff_dimension(k) + hausdorff_dimension(kp) - 1.0;
    if d.abs() < HD_MARGIN {
        None
    } else {
        Some(d.partial_cmp(&0.0).expect("finite"))
    }
}

/// Whether `inner` fits in the closure of a bounded gap of `outer`.
fn inside_gap(outer: &PlacedCantorSet, inner: &Interval) -> bool {
    let inv = outer.shape.p().recip();
    let mut lo = outer.offset().clone();
    let mut len = outer.scale().clone();
    let need = inner.len();
    loop {
        let hi = &lo + &len;
        if !(lo <= inner.lo && inner.hi <= hi) || len < need {
            return false;
        }
        let child = &len * &inv;
        let gap_lo = &lo + &child;
        let gap_hi = &hi - &child;
        if gap_lo <= inner.lo && inner.hi <= gap_hi {
            return true;
        }
        if inner.hi <= gap_lo {
            len = child;
        } else if inner.lo >= gap_hi {
            lo = gap_hi;
            len = child;
        } else {
            return false;
        }
    }
}

/// Neither set lies in the closure of a gap of the other, unbounded gaps
/// included.
pub fn is_linked(k: &PlacedCantorSet, kp: &PlacedCantorSet) -> bool {
    let (h, hp) = (k.hull(), kp.hull());
    if !h.intersects(&hp) {
        return false;
    }
    !inside_gap(k, &hp) && !inside_gap(kp, &h)
}

#[derive(Clone, Debug, Serialize)]
pub struct CriteriaReport {
    pub hd: [f64; 2],
    pub hd_sum: f64,
    pub hd_sum_exact: bool,
    /// Newhouse thickness of each set.
    #[serde(serialize_with = "ser_rats")]
    pub tau: [Rat; 2],
    #[serde(serialize_with = "ser_rat")]
    pub tau_product: Rat,
    /// `tau_R(K) tau_L(K')` and `tau_L(K) tau_R(K')`.
    #[serde(serialize_with = "ser_rats")]
    pub lateral_products: [Rat; 2],
    pub linked: bool,
    /// HD sum below one.
    pub dimension_test: Verdict,
    /// Newhouse gap lemma.
    pub newhouse: Verdict,
    /// Linked with HD sum above one.
    pub generic: Verdict,
    pub moreira: Verdict,
    pub omega_member: bool,
}

fn ser_rat<S: serde::Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_sig(12))
}

fn ser_rats<S: serde::Serializer>(r: &[Rat; 2], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(2))?;
    for x in r {
        seq.serialize_element(&x.to_sig(12))?;
    }
    seq.end()
}

fn from_sign(o: Option<std::cmp::Ordering>, want: std::cmp::Ordering) -> Verdict {
    match o {
        Some(x) if x == want => Verdict::Satisfied,
        Some(_) => Verdict::NotSatisfied,
        None => Verdict::Inconclusive,
    }
}

pub fn criteria_report(k: &PlacedCantorSet, kp: &PlacedCantorSet) -> CriteriaReport {
    use std::cmp::Ordering::{Greater, Less};
    let one = Rat::one();
    let (t, tp) = (homogeneous_thickness(&k.shape), homogeneous_thickness(&kp.shape));
    let tau = [t.tau(), tp.tau()];
    let tau_product = &tau[0] * &tau[1];
    let lateral_products = [&t.right * &tp.left, &t.left * &tp.right];
    let linked = is_linked(k, kp);
    let sign = hd_sum_sign(&k.shape, &kp.shape);
    let hd = [hausdorff_dimension(&k.shape), hausdorff_dimension(&kp.shape)];

    let dimension_test = from_sign(sign, Less);
    let newhouse = if !linked {
        Verdict::NotSatisfied
    } else if tau_product > one {
        Verdict::Satisfied
    } else {
        Verdict::Inconclusive
    };
    let generic = if !linked {
        Verdict::NotSatisfied
    } else {
        from_sign(sign, Greater)
    };
    let moreira = if linked && lateral_products.iter().all(|x| x > &one) {
        Verdict::Satisfied
    } else if !linked {
        Verdict::NotSatisfied
    } else {
        Verdict::Inconclusive
    };
    let omega_member = sign == Some(Greater) && tau_product < one;
    CriteriaReport {
        hd,
        hd_sum: hd[0] + hd[1],
        hd_sum_exact: k.shape.gamma_exp().is_some() && kp.shape.gamma_exp().is_some(),
        tau,
        tau_product,
        lateral_products,
        linked,
        dimension_test,
        newhouse,
        generic,
        moreira,
        omega_member,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::set::make_middle_cantor;

    fn placed(p: Rat, scale: Rat, offset: Rat) -> PlacedCantorSet {
        PlacedCantorSet::new(make_middle_cantor(p).unwrap(), scale, offset).unwrap()
    }

    #[test]
    fn linkedness_examples() {
        let t = placed(Rat::from_int(3), Rat::one(), Rat::zero());
        assert!(is_linked(&t, &t));
        let far = placed(Rat::from_int(3), Rat::one(), Rat::from_int(10));
        assert!(!is_linked(&t, &far));
        let inside = placed(Rat::from_int(3), Rat::ratio(1, 3), Rat::ratio(1, 3));
        assert!(!is_linked(&t, &inside));
        let deep = placed(Rat::from_int(3), Rat::ratio(1, 27), Rat::ratio(7, 27));
        assert!(!is_linked(&t, &deep));
    }

    #[test]
    fn dimensions() {
        let k = make_middle_cantor(Rat::from_int(4)).unwrap();
        assert!((hausdorff_dimension(&k) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn thick_pair_is_newhouse() {
        let k = placed(Rat::ratio(5, 2), Rat::one(), Rat::zero());
        let r = criteria_report(&k, &k);
        assert_eq!(r.tau_product, Rat::from_int(4));
        assert_eq!(r.newhouse, Verdict::Satisfied);
        assert_eq!(r.moreira, Verdict::Satisfied);
    }
}
