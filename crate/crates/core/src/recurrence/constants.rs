use crate::arith::{gamma, GammaPower, Rat};
use std::sync::OnceLock;

/// Exact constants of the pair `p = gamma^40`, `q = gamma^31`.
#[derive(Debug)]
pub struct Consts {
    pub gamma: Rat,
    pub p: Rat,
    pub q: Rat,
    /// `p^31 = q^40 = gamma^1240`.
    pub p31: Rat,
    pub s1: Rat,
    pub s2: Rat,
    /// `gamma^-1 s2`.
    pub s_lo: Rat,
    /// `gamma s1`.
    pub s_hi: Rat,
    /// `s* = k s`.
    pub k: Rat,
    /// Scale where `s* = 1`, separating the two interval families.
    pub s_split: Rat,
    pub delta1: Rat,
    pub delta2: Rat,
    /// `(p - 1)/p`.
    pub c: Rat,
    /// `(1 - 1/q)/q^39`, the t-margin of the region.
    pub margin: Rat,
}

pub fn consts() -> &'static Consts {
    static C: OnceLock<Consts> = OnceLock::new();
    C.get_or_init(|| {
        let one = Rat::one();
        let two = Rat::from_int(2);
        let g = gamma();
        let p = GammaPower::p().value();
        let q = GammaPower::q().value();
        let p31 = GammaPower::new(1240).value();
        let q39 = q.pow(39);
        let w = &(&one - &q.recip()) / &q39;
        let s1 = &p.recip() / &(&(&one - &(&two / &q)) + &(&two * &w));
        let s2 = &(&one - &(&two / &p)) / &(&q.recip() - &(&two * &w));
        let k = &(&p * &(&q - &one)) / &(&q * &(&p - &one));
        let s_split = k.recip();
        Consts {
            s_lo: &s2 / &g,
            s_hi: &s1 * &g,
            delta1: &k * &s1,
            delta2: &k * &s2,
            c: &(&p - &one) / &p,
            margin: w,
            gamma: g,
            p,
            q,
            p31,
            s1,
            s2,
            k,
            s_split,
        }
    })
}

impl Consts {
    pub fn s_star(&self, s: &Rat) -> Rat {
        &self.k * s
    }

    /// `1/((p-2)(q-2))`.
    pub fn tau_product(&self) -> Rat {
        let two = Rat::from_int(2);
        (&(&self.p - &two) * &(&self.q - &two)).recip()
    }

    /// The closed form `(q-1)/((p-1)(q-2) + 2(p-1)(q-1)/q^39)` of `delta1`.
    pub fn delta1_formula(&self) -> Rat {
        let one = Rat::one();
        let two = Rat::from_int(2);
        let (p1, q1) = (&self.p - &one, &self.q - &one);
        let den = &(&p1 * &(&self.q - &two)) + &(&(&two * &p1) * &(&q1 / &self.q.pow(39)));
        &q1 / &den
    }

    /// The closed form `(p-2)(q-1)/((p-1) - 2(p-1)(q-1)/q^39)` of `delta2`.
    pub fn delta2_formula(&self) -> Rat {
        let one = Rat::one();
        let two = Rat::from_int(2);
        let (p1, q1) = (&self.p - &one, &self.q - &one);
        let den = &p1 - &(&(&two * &p1) * &(&q1 / &self.q.pow(39)));
        &(&(&self.p - &two) * &q1) / &den
    }
}
