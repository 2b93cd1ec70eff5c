use crate::arith::{GammaPower, Rat};
use crate::cantor::{HomogeneousCantorSet, Transition};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    K,
    KPrime,
}

/// A renormalization operator carried to `(s, t)` coordinates.
///
/// K-side: `(s, t) -> (p s, p t + q)`. K'-side: `(s, t) -> (s/p, t - (q/p) s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryOperator {
    pub side: Side,
    pub letter: u8,
    pub p: Rat,
    pub q: Rat,
}

impl ElementaryOperator {
    /// Operator induced by the branch of a transition.
    pub fn from_transition(side: Side, letter: u8, t: &Transition) -> Self {
        ElementaryOperator {
            side,
            letter,
            p: t.p.clone(),
            q: t.q.clone(),
        }
    }

    pub fn apply(&self, s: &Rat, t: &Rat) -> (Rat, Rat) {
        match self.side {
            Side::K => (&self.p * s, &(&self.p * t) + &self.q),
            Side::KPrime => {
                let ns = s / &self.p;
                let nt = t - &(&ns * &self.q);
                (ns, nt)
            }
        }
    }

    pub fn invert(&self, s: &Rat, t: &Rat) -> (Rat, Rat) {
        match self.side {
            Side::K => (s / &self.p, &(t - &self.q) / &self.p),
            Side::KPrime => (s * &self.p, t + &(s * &self.q)),
        }
    }
}

/// The four elementary operators of a pair of middle sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairOperators {
    k: [ElementaryOperator; 2],
    kp: [ElementaryOperator; 2],
}

impl PairOperators {
    /// Branch `x -> p x` for letter 0 and `x -> p x + 1 - p` for letter 1.
    pub fn homogeneous(k: &HomogeneousCantorSet, kp: &HomogeneousCantorSet) -> Self {
        let mk = |side, p: &Rat| {
            [
                ElementaryOperator {
                    side,
                    letter: 0,
                    p: p.clone(),
                    q: Rat::zero(),
                },
                ElementaryOperator {
                    side,
                    letter: 1,
                    p: p.clone(),
                    q: &Rat::one() - p,
                },
            ]
        };
        PairOperators {
            k: mk(Side::K, k.p()),
            kp: mk(Side::KPrime, kp.p()),
        }
    }

    /// `p = gamma^40`, `q = gamma^31`.
    pub fn theorem2() -> Self {
        PairOperators::homogeneous(
            &HomogeneousCantorSet::from_gamma(40).expect("p > 2"),
            &HomogeneousCantorSet::from_gamma(31).expect("q > 2"),
        )
    }

    pub fn op(&self, side: Side, letter: u8) -> &ElementaryOperator {
        match side {
            Side::K => &self.k[letter as usize & 1],
            Side::KPrime => &self.kp[letter as usize & 1],
        }
    }

    pub fn p(&self) -> &Rat {
        &self.k[0].p
    }

    pub fn q(&self) -> &Rat {
        &self.kp[0].p
    }
}

/// `s* = p(q-1) / (q(p-1)) s`.
pub fn s_star(s: &Rat) -> Rat {
    let p = GammaPower::p().value();
    let q = GammaPower::q().value();
    let one = Rat::one();
    &(&(&p * &(&q - &one)) / &(&q * &(&p - &one))) * s
}

/// `p^i / q^j` as a power of gamma.
pub fn gamma_lattice(i: i64, j: i64) -> GammaPower {
    GammaPower::lattice(i, j)
}

/// Smallest `|40 i - 31 j|` over the box, with a minimizer (first in
/// row-major order).
pub fn min_lattice_gap(
    i_range: std::ops::RangeInclusive<i64>,
    j_range: std::ops::RangeInclusive<i64>,
) -> Option<(i64, i64, i64)> {
    let mut best: Option<(i64, i64, i64)> = None;
    for i in i_range {
        for j in j_range.clone() {
            let g = gamma_lattice(i, j).exponent.abs();
            if best.map_or(true, |b| g < b.0) {
                best = Some((g, i, j));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elementary_examples() {
        let ops = PairOperators::theorem2();
        let p = ops.p().clone();
        let q = ops.q().clone();
        let one = Rat::one();
        assert_eq!(ops.op(Side::K, 1).apply(&one, &one), (p.clone(), one.clone()));
        let (s, t) = ops.op(Side::KPrime, 1).apply(&one, &Rat::zero());
        assert_eq!(s, q.recip());
        assert_eq!(t, &(&q - &one) / &q);
        for side in [Side::K, Side::KPrime] {
            for l in 0..2 {
                let op = ops.op(side, l);
                let (a, b) = op.apply(&Rat::ratio(7, 5), &Rat::ratio(-1, 3));
                assert_eq!(op.invert(&a, &b), (Rat::ratio(7, 5), Rat::ratio(-1, 3)));
            }
        }
    }

    #[test]
    fn lattice_identities() {
        assert_eq!(gamma_lattice(31, 40), GammaPower::one());
        assert_eq!(gamma_lattice(7, 9), GammaPower::new(1));
        assert_eq!(gamma_lattice(24, 31), GammaPower::new(-1));
        assert_eq!(min_lattice_gap(1..=25, 1..=37), Some((1, 7, 9)));
    }

    #[test]
    fn s_star_unit() {
        let p = GammaPower::p().value();
        let q = GammaPower::q().value();
        let one = Rat::one();
        let s = &(&q * &(&p - &one)) / &(&p * &(&q - &one));
        assert_eq!(s_star(&s), one);
    }
}
