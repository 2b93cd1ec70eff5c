//! Empirical recurrence check: steer grid points of the region into its
//! interior with explicit operator words.

use super::constants::consts;
use super::options::short_between;
use super::region::RegionL;
use crate::arith::Rat;
use crate::renorm::{steer, steer_block, Configuration, PairOperators, SteerOptions, SteerResult, Target};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOptions {
    pub s_points: usize,
    pub t_points: usize,
    pub max_cycles: usize,
    /// Require at least this many cycles even for interior points.
    pub min_cycles: usize,
    pub node_budget: u64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            s_points: 50,
            t_points: 50,
            max_cycles: 3,
            min_cycles: 1,
            node_budget: 200_000,
        }
    }
}

/// Result for one starting point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Outcome {
    /// Exact fractions.
    pub s: String,
    pub t: String,
    pub success: bool,
    /// Blocks used, counting a boundary lattice move as one.
    pub cycles: usize,
    /// `(m, n)` of the boundary move when one was needed.
    pub lattice_move: Option<(usize, usize)>,
    pub word_k: String,
    pub word_kp: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub points: usize,
    pub successes: usize,
    pub max_cycles_used: usize,
    pub max_word_len: usize,
    pub outcomes: Vec<Outcome>,
}

impl OracleReport {
    pub fn success_rate(&self) -> f64 {
        if self.points == 0 {
            return 1.0;
        }
        self.successes as f64 / self.points as f64
    }
}

fn bits(w: &[u8]) -> String {
    w.iter().map(|b| char::from(b'0' + b)).collect()
}

/// `n` points spread by arc length over the closed slice pieces at `s`.
pub fn slice_points(region: &RegionL, s: &Rat, n: usize) -> Vec<Rat> {
    let pieces = region.slice(s);
    if pieces.is_empty() || n == 0 {
        return Vec::new();
    }
    let total = pieces.iter().fold(Rat::zero(), |acc, (a, b)| &acc + &(b - a));
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let frac = if n == 1 { Rat::ratio(1, 2) } else { Rat::ratio(k as i64, (n - 1) as i64) };
        let mut rem = &total * &frac;
        for (i, (a, b)) in pieces.iter().enumerate() {
            let len = b - a;
            if rem <= len || i + 1 == pieces.len() {
                let t = if rem.is_zero() {
                    a.clone()
                } else if rem == len {
                    b.clone()
                } else {
                    short_between(a, b, &(&rem / &len))
                };
                out.push(t);
                break;
            }
            rem = &rem - &len;
        }
    }
    out
}

/// Steers one configuration of the region into its interior.
pub fn steer_point(s: &Rat, t: &Rat, opts: &OracleOptions) -> Outcome {
    let c = consts();
    let region = RegionL::new();
    let ops = PairOperators::theorem2();
    let mut out = Outcome {
        s: s.to_fraction(),
        t: t.to_fraction(),
        success: false,
        cycles: 0,
        lattice_move: None,
        word_k: String::new(),
        word_kp: String::new(),
    };
    let Ok(mut cfg) = Configuration::new(s.clone(), t.clone()) else {
        return out;
    };
    let mut budget = opts.max_cycles;
    let mut min_cycles = opts.min_cycles;
    // boundary scales leave the interior in s: move onto the other range end
    let moves = [(&c.s_lo, 7usize, 9usize, &c.s2), (&c.s_hi, 24, 31, &c.s1)];
    for (from, m, n, to) in moves {
        if s == from {
            let target = region.interior_slice(to);
            match steer_block(&ops, &cfg, m, n, &target, opts.node_budget) {
                Some(next) => {
                    cfg = next;
                    out.lattice_move = Some((m, n));
                    budget = budget.saturating_sub(1);
                    min_cycles = min_cycles.saturating_sub(1);
                    out.cycles = 1;
                }
                None => return out,
            }
        }
    }
    let target: Target = region.interior_slice(&cfg.s);
    let sopts = SteerOptions {
        min_cycles,
        max_cycles: budget,
        node_budget: opts.node_budget,
    };
    if let SteerResult::Found { config, cycles } = steer(&ops, &cfg, &target, &sopts) {
        out.success = region.contains(&config.s, &config.t, true);
        out.cycles += cycles;
        out.word_k = bits(&config.word_k);
        out.word_kp = bits(&config.word_kp);
    }
    out
}

/// The grid run: `s_points` scales over `[s_lo, s_hi]` with both ends,
/// `t_points` per slice.
pub fn oracle_recurrence(opts: &OracleOptions) -> OracleReport {
    let c = consts();
    let region = RegionL::new();
    let mut outcomes = Vec::with_capacity(opts.s_points * opts.t_points);
    let n = opts.s_points.max(2);
    for k in 0..n {
        let s = match k {
            0 => c.s_lo.clone(),
            k if k == n - 1 => c.s_hi.clone(),
            k => short_between(&c.s_lo, &c.s_hi, &Rat::ratio(k as i64, (n - 1) as i64)),
        };
        for t in slice_points(&region, &s, opts.t_points) {
            outcomes.push(steer_point(&s, &t, opts));
        }
    }
    let successes = outcomes.iter().filter(|o| o.success).count();
    OracleReport {
        points: outcomes.len(),
        successes,
        max_cycles_used: outcomes.iter().map(|o| o.cycles).max().unwrap_or(0),
        max_word_len: outcomes
            .iter()
            .map(|o| o.word_k.len() + o.word_kp.len())
            .max()
            .unwrap_or(0),
        outcomes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_point_needs_lattice_move() {
        let c = consts();
        let (a, b) = RegionL::t_bounds(&c.s_lo);
        let t = &(&a + &b) / &Rat::from_int(2);
        let o = steer_point(&c.s_lo, &t, &OracleOptions::default());
        assert!(o.success);
        assert_eq!(o.lattice_move, Some((7, 9)));
    }

    #[test]
    fn small_grid_all_succeed() {
        let opts = OracleOptions {
            s_points: 5,
            t_points: 5,
            ..OracleOptions::default()
        };
        let r = oracle_recurrence(&opts);
        assert_eq!(r.points, 25);
        assert_eq!(r.successes, 25);
        assert!(r.max_cycles_used <= 3);
    }

    #[test]
    fn slice_points_stay_in_region() {
        let c = consts();
        let region = RegionL::new();
        let s = short_between(&c.s1, &c.s2, &Rat::ratio(1, 2));
        for t in slice_points(&region, &s, 11) {
            assert!(region.contains(&s, &t, false));
        }
    }
}
