//! Covering of a closed interval by a union of intervals whose endpoints are
//! affine in `s`.
//!
//! A cover at one `s` is witnessed by a chain `o_1, ..., o_k`; the chain's
//! defining inequalities are affine in `s`, so a chain found at one point and
//! checked at both ends of an `s`-interval holds on all of it.

use crate::arith::{Affine, AffineTable, Rat};
use num_bigint::BigInt;

/// Intervals `(lo_k, hi_k)` plus the target `[lo, hi]`, all affine in `s`.
#[derive(Clone, Debug)]
pub struct CoverProblem {
    pub target: (Affine, Affine),
    pub parts: Vec<(Affine, Affine)>,
    /// Closed parts may merely touch; open parts must overlap.
    pub closed: bool,
    table: AffineTable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain(pub Vec<usize>);

impl CoverProblem {
    pub fn new(target: (Affine, Affine), parts: Vec<(Affine, Affine)>, closed: bool) -> Self {
        let mut all = Vec::with_capacity(2 + 2 * parts.len());
        all.push(target.0.clone());
        all.push(target.1.clone());
        for (a, b) in &parts {
            all.push(a.clone());
            all.push(b.clone());
        }
        CoverProblem {
            table: AffineTable::new(&all),
            target,
            parts,
            closed,
        }
    }

    fn values(&self, s: &Rat) -> (BigInt, BigInt, Vec<(BigInt, BigInt)>) {
        let mut v = self.table.eval(s).into_iter();
        let lo = v.next().expect("target");
        let hi = v.next().expect("target");
        let mut parts = Vec::with_capacity(self.parts.len());
        while let (Some(a), Some(b)) = (v.next(), v.next()) {
            parts.push((a, b));
        }
        (lo, hi, parts)
    }

    /// Greedy chain at `s`: repeatedly take the part containing the current
    /// frontier that reaches furthest right.
    pub fn find_chain(&self, s: &Rat) -> Option<Chain> {
        let (lo, hi, parts) = self.values(s);
        greedy_chain(&lo, &hi, &parts, self.closed).map(Chain)
    }

    /// Smallest slack of the chain inequalities at `s`, as an exact rational
    /// in the units of the problem; covering holds iff it is positive
    /// (nonnegative for closed parts).
    pub fn chain_slack(&self, chain: &Chain, s: &Rat) -> Rat {
        let (lo, hi, parts) = self.values(s);
        let v = chain_slack(&lo, &hi, &parts, &chain.0);
        &Rat::from_bigint(v) / &self.table.unit(s)
    }

    pub fn slack_ok(&self, slack: &Rat) -> bool {
        if self.closed {
            !slack.is_negative()
        } else {
            slack.is_positive()
        }
    }
}

fn inside(closed: bool, x: &BigInt, a: &BigInt, b: &BigInt) -> bool {
    if closed {
        a <= x && x <= b
    } else {
        a < x && x < b
    }
}

/// Greedy chain covering `[lo, hi]` by `parts`, on integer values.
pub fn greedy_chain(lo: &BigInt, hi: &BigInt, parts: &[(BigInt, BigInt)], closed: bool) -> Option<Vec<usize>> {
    let mut chain = Vec::new();
    let mut cur = lo.clone();
    loop {
        let best = parts
            .iter()
            .enumerate()
            .filter(|(_, (a, b))| inside(closed, &cur, a, b) && b > &cur)
            .max_by(|x, y| x.1 .1.cmp(&y.1 .1).then(y.0.cmp(&x.0)))
            .map(|(i, _)| i);
        let Some(i) = best else {
            // closed parts: the frontier itself may be the last point needed
            if closed && &cur >= hi && !chain.is_empty() {
                return Some(chain);
            }
            return None;
        };
        chain.push(i);
        cur = parts[i].1.clone();
        let done = if closed { &cur >= hi } else { &cur > hi };
        if done {
            return Some(chain);
        }
    }
}

/// Minimum over the chain inequalities `a_k <= frontier <= b_k` and
/// `b_last >= hi`, as `frontier - a`, `b - frontier`, `b_last - hi`.
pub fn chain_slack(lo: &BigInt, hi: &BigInt, parts: &[(BigInt, BigInt)], chain: &[usize]) -> BigInt {
    chain_terms(lo, hi, parts, chain)
        .into_iter()
        .min()
        .unwrap_or_else(|| BigInt::from(-1))
}

/// All chain inequality values, in order.
pub fn chain_terms(lo: &BigInt, hi: &BigInt, parts: &[(BigInt, BigInt)], chain: &[usize]) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(2 * chain.len() + 1);
    let mut frontier = lo;
    for (k, &i) in chain.iter().enumerate() {
        let (a, b) = &parts[i];
        out.push(frontier - a);
        out.push(b - frontier);
        if k + 1 == chain.len() {
            out.push(b - hi);
        }
        frontier = b;
    }
    out
}

/// Maximal chain of open parts starting from the leftmost one, each
/// overlapping the frontier strictly.
pub fn open_union_chain(parts: &[(BigInt, BigInt)]) -> Option<Vec<usize>> {
    let first = (0..parts.len()).min_by(|&x, &y| {
        parts[x].0.cmp(&parts[y].0).then(parts[y].1.cmp(&parts[x].1))
    })?;
    let mut chain = vec![first];
    let mut cur = parts[first].1.clone();
    loop {
        let next = parts
            .iter()
            .enumerate()
            .filter(|(_, (a, b))| a < &cur && b > &cur)
            .max_by(|x, y| x.1 .1.cmp(&y.1 .1).then(y.0.cmp(&x.0)))
            .map(|(i, _)| i);
        match next {
            Some(i) => {
                chain.push(i);
                cur = parts[i].1.clone();
            }
            None => return Some(chain),
        }
    }
}

/// Overlap values `frontier - a` and `b - frontier` along an open chain.
pub fn open_union_terms(parts: &[(BigInt, BigInt)], chain: &[usize]) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(2 * chain.len());
    let mut frontier = &parts[chain[0]].1;
    for &i in &chain[1..] {
        let (a, b) = &parts[i];
        out.push(frontier - a);
        out.push(b - frontier);
        frontier = b;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: i64) -> Affine {
        Affine::constant(Rat::from_int(v))
    }

    #[test]
    fn open_chain_needs_overlap() {
        let p = CoverProblem::new((c(0), c(10)), vec![(c(-1), c(5)), (c(5), c(11))], false);
        assert!(p.find_chain(&Rat::zero()).is_none());
        let p = CoverProblem::new((c(0), c(10)), vec![(c(-1), c(6)), (c(5), c(11))], false);
        let ch = p.find_chain(&Rat::zero()).unwrap();
        assert_eq!(ch.0, vec![0, 1]);
        assert_eq!(p.chain_slack(&ch, &Rat::zero()), Rat::one());
    }

    #[test]
    fn closed_chain_may_touch() {
        let p = CoverProblem::new((c(0), c(10)), vec![(c(0), c(5)), (c(5), c(10))], true);
        let ch = p.find_chain(&Rat::zero()).unwrap();
        assert!(p.slack_ok(&p.chain_slack(&ch, &Rat::zero())));
    }

    #[test]
    fn moving_parts() {
        // part (s - 1, s + 1) covers [0, 1] only while 0 < s < 1
        let part = (
            Affine::new(Rat::from_int(-1), Rat::one()),
            Affine::new(Rat::one(), Rat::one()),
        );
        let p = CoverProblem::new((c(0), c(1)), vec![part], false);
        let ch = p.find_chain(&Rat::ratio(1, 2)).unwrap();
        assert!(p.slack_ok(&p.chain_slack(&ch, &Rat::ratio(1, 4))));
        assert!(!p.slack_ok(&p.chain_slack(&ch, &Rat::one())));
    }
}
