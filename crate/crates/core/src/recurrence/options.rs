use crate::arith::{Rat, Rounding};

pub const DEFAULT_GRID: usize = 1024;
pub const DEFAULT_PIECES: usize = 64;
pub const DEFAULT_DEPTH: u32 = 14;
/// Interior sample points are rounded to this many decimals.
pub const SAMPLE_DECIMALS: i32 = 40;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Point checks on an `s`-grid including both range endpoints.
    Sample { grid: usize },
    /// Whole-subinterval checks: a witness found at the midpoint is verified
    /// at both ends, bisecting on failure.
    Rigorous { pieces: usize, depth: u32 },
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Sample { .. } => "sample",
            Mode::Rigorous { .. } => "rigorous",
        }
    }
}

/// Deliberate corruption for exercising failure paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fault {
    Delta1Offset(Rat),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub mode: Mode,
    pub fault: Option<Fault>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            mode: Mode::Sample { grid: DEFAULT_GRID },
            fault: None,
        }
    }
}

impl VerifyOptions {
    pub fn sample(grid: usize) -> Self {
        VerifyOptions {
            mode: Mode::Sample { grid },
            fault: None,
        }
    }

    pub fn rigorous(pieces: usize) -> Self {
        VerifyOptions {
            mode: Mode::Rigorous {
                pieces,
                depth: DEFAULT_DEPTH,
            },
            fault: None,
        }
    }

    pub fn with_fault(mut self, f: Fault) -> Self {
        self.fault = Some(f);
        self
    }

    pub fn delta1_offset(&self) -> Rat {
        match &self.fault {
            Some(Fault::Delta1Offset(d)) => d.clone(),
            None => Rat::zero(),
        }
    }
}

/// A point strictly between `lo` and `hi` with a short decimal expansion.
pub fn short_between(lo: &Rat, hi: &Rat, frac: &Rat) -> Rat {
    let exact = lo + &(&(hi - lo) * frac);
    let mut d = SAMPLE_DECIMALS;
    loop {
        let m = exact.scaled_round(d, Rounding::HalfEven);
        let r = &Rat::from_bigint(m) / &Rat::pow10(d);
        if lo < &r && &r < hi {
            return r;
        }
        if d > 4000 {
            return exact;
        }
        d *= 2;
    }
}

/// `n >= 2` points from `lo` to `hi`: exact ends, short interior points.
pub fn sample_points(lo: &Rat, hi: &Rat, n: usize) -> Vec<Rat> {
    let n = n.max(2);
    let mut out = Vec::with_capacity(n);
    out.push(lo.clone());
    for k in 1..n - 1 {
        out.push(short_between(lo, hi, &Rat::ratio(k as i64, (n - 1) as i64)));
    }
    out.push(hi.clone());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_increasing_with_exact_ends() {
        let lo = Rat::ratio(1, 3);
        let hi = Rat::ratio(2, 3);
        let pts = sample_points(&lo, &hi, 7);
        assert_eq!(pts.len(), 7);
        assert_eq!(pts[0], lo);
        assert_eq!(pts[6], hi);
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
    }
}
