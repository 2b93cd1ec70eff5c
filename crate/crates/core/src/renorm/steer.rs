use super::config::{compose_k, compose_kprime, Configuration};
use super::operator::PairOperators;
use super::return_map::{A_LEN, B_LEN};
use crate::arith::{common_numerators, Rat};
use num_bigint::BigInt;
use num_traits::Signed;

/// A union of open intervals of `t` at a fixed scale.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Target {
    pub pieces: Vec<(Rat, Rat)>,
}

impl Target {
    pub fn new(pieces: Vec<(Rat, Rat)>) -> Self {
        Target {
            pieces: pieces.into_iter().filter(|(a, b)| a < b).collect(),
        }
    }

    pub fn contains(&self, t: &Rat) -> bool {
        self.pieces.iter().any(|(a, b)| a < t && t < b)
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteerOptions {
    pub min_cycles: usize,
    pub max_cycles: usize,
    /// Search nodes allowed per block search.
    pub node_budget: u64,
}

impl Default for SteerOptions {
    fn default() -> Self {
        SteerOptions {
            min_cycles: 0,
            max_cycles: 3,
            node_budget: 200_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SteerResult {
    Found { config: Configuration, cycles: usize },
    Failed { cycles_tried: usize },
}

impl SteerResult {
    pub fn config(&self) -> Option<&Configuration> {
        match self {
            SteerResult::Found { config, .. } => Some(config),
            SteerResult::Failed { .. } => None,
        }
    }
}

/// Searches `m` K-letters and `n` K'-letters sending `c` strictly into
/// `target` (a set of `t` at the new scale `p^m s / q^n`).
///
/// Depth-first over bits in order of decreasing weight, pruning branches
/// whose reachable range misses the target; the child whose range midpoint
/// lies closer to a piece center is tried first, ties going to 0.
pub fn steer_block(
    ops: &PairOperators,
    c: &Configuration,
    m: usize,
    n: usize,
    target: &Target,
    budget: u64,
) -> Option<Configuration> {
    if target.is_empty() {
        return None;
    }
    let p = ops.p();
    let q = ops.q();
    let one = Rat::one();
    let pm = p.pow(m as i32);
    let ratio = &pm / &q.pow(n as i32);
    let mut vals: Vec<Rat> = Vec::with_capacity(1 + m + n + 2 * target.pieces.len());
    vals.push(&pm * &c.t);
    let pa = p - &one;
    for k in 0..m {
        vals.push(-&(&pa * &p.pow((m - 1 - k) as i32)));
    }
    let sb = &(&ratio * &c.s) * &(q - &one);
    for k in 0..n {
        vals.push(&sb * &q.pow((n - 1 - k) as i32));
    }
    for (a, b) in &target.pieces {
        vals.push(a.clone());
        vals.push(b.clone());
    }
    let ints = common_numerators(&vals.iter().collect::<Vec<_>>());
    let base = ints[0].clone();
    let weights = &ints[1..1 + m + n];
    let pieces: Vec<(BigInt, BigInt)> = ints[1 + m + n..]
        .chunks(2)
        .map(|w| (w[0].clone(), w[1].clone()))
        .collect();

    let mut order: Vec<usize> = (0..m + n).collect();
    order.sort_by(|&i, &j| weights[j].abs().cmp(&weights[i].abs()).then(i.cmp(&j)));
    let w: Vec<BigInt> = order.iter().map(|&i| weights[i].clone()).collect();
    let total = w.len();
    let mut neg = vec![BigInt::from(0); total + 1];
    let mut pos = vec![BigInt::from(0); total + 1];
    for d in (0..total).rev() {
        neg[d] = &neg[d + 1] + w[d].clone().min(BigInt::from(0));
        pos[d] = &pos[d + 1] + w[d].clone().max(BigInt::from(0));
    }

    let mut search = Search {
        w: &w,
        neg: &neg,
        pos: &pos,
        pieces: &pieces,
        bits: vec![0u8; total],
        nodes: 0,
        budget,
    };
    if !search.dfs(0, &base) {
        return None;
    }
    let mut a_bits = vec![0u8; m];
    let mut b_bits = vec![0u8; n];
    for (d, &i) in order.iter().enumerate() {
        if i < m {
            a_bits[i] = search.bits[d];
        } else {
            b_bits[i - m] = search.bits[d];
        }
    }
    let out = compose_kprime(ops, &b_bits, &compose_k(ops, &a_bits, c));
    debug_assert!(target.contains(&out.t));
    Some(out)
}

struct Search<'a> {
    w: &'a [BigInt],
    neg: &'a [BigInt],
    pos: &'a [BigInt],
    pieces: &'a [(BigInt, BigInt)],
    bits: Vec<u8>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    /// Twice the distance from the range midpoint to the nearest center of a
    /// piece the range meets, or `None` when it meets none.
    fn score(&self, d: usize, sum: &BigInt) -> Option<BigInt> {
        let lo = sum + &self.neg[d];
        let hi = sum + &self.pos[d];
        let mid2 = &lo + &hi;
        self.pieces
            .iter()
            .filter(|(a, b)| {
                if d == self.w.len() {
                    a < sum && sum < b
                } else {
                    &lo < b && &hi > a
                }
            })
            .map(|(a, b)| (&mid2 - (a + b)).abs())
            .min()
    }

    fn dfs(&mut self, d: usize, sum: &BigInt) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        if d == self.w.len() {
            return self.score(d, sum).is_some();
        }
        let with = sum + &self.w[d];
        let s0 = self.score(d + 1, sum);
        let s1 = self.score(d + 1, &with);
        let first_one = match (&s0, &s1) {
            (Some(a), Some(b)) => b < a,
            (None, Some(_)) => true,
            _ => false,
        };
        let tries: [(u8, &BigInt, &Option<BigInt>); 2] = if first_one {
            [(1, &with, &s1), (0, sum, &s0)]
        } else {
            [(0, sum, &s0), (1, &with, &s1)]
        };
        for (bit, next, score) in tries {
            if score.is_none() {
                continue;
            }
            self.bits[d] = bit;
            if self.dfs(d + 1, next) {
                return true;
            }
            if self.nodes > self.budget {
                return false;
            }
        }
        false
    }
}

/// Return cycles (31 + 40 letters) sending `c` strictly into `target`.
///
/// Tries one cycle straight into the target; when that fails, spends a cycle
/// moving toward the middle of the largest piece and tries again.
pub fn steer(
    ops: &PairOperators,
    c: &Configuration,
    target: &Target,
    opts: &SteerOptions,
) -> SteerResult {
    if opts.min_cycles == 0 && target.contains(&c.t) {
        return SteerResult::Found {
            config: c.clone(),
            cycles: 0,
        };
    }
    let mut cur = c.clone();
    for cycle in 1..=opts.max_cycles {
        if let Some(out) = steer_block(ops, &cur, A_LEN, B_LEN, target, opts.node_budget) {
            return SteerResult::Found {
                config: out,
                cycles: cycle,
            };
        }
        if cycle == opts.max_cycles {
            break;
        }
        let Some((a, b)) = target
            .pieces
            .iter()
            .max_by(|x, y| (&x.1 - &x.0).cmp(&(&y.1 - &y.0)))
        else {
            break;
        };
        let mid = &(a + b) / &Rat::from_int(2);
        let quarter = &(b - a) / &Rat::from_int(4);
        let inner = Target::new(vec![(&mid - &quarter, &mid + &quarter)]);
        match steer_block(ops, &cur, A_LEN, B_LEN, &inner, opts.node_budget) {
            Some(next) => cur = next,
            None => {
                return SteerResult::Failed {
                    cycles_tried: cycle,
                }
            }
        }
    }
    SteerResult::Failed {
        cycles_tried: opts.max_cycles,
    }
}
