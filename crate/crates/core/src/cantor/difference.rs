use super::interval::{Interval, IntervalSet};
use super::set::{PlacedCantorSet, MAX_LEVEL};
use crate::arith::Rat;
use crate::error::{Error, Result};

/// Bound on merged intervals kept by [`difference_scan`].
pub const DIFFERENCE_CAP: usize = 1 << 14;

/// `level_n(K) - lambda * level_n(K')`, merged.
///
/// Finite-level sets over-approximate the limit: an interval here does not
/// prove one in `K - lambda K'`.
pub fn difference_scan(
    k: &PlacedCantorSet,
    kp: &PlacedCantorSet,
    lambda: &Rat,
    n: u32,
) -> Result<IntervalSet> {
    difference_scan_capped(k, kp, lambda, n, DIFFERENCE_CAP)
}

pub fn difference_scan_capped(
    k: &PlacedCantorSet,
    kp: &PlacedCantorSet,
    lambda: &Rat,
    n: u32,
    cap: usize,
) -> Result<IntervalSet> {
    if lambda.is_zero() {
        return Err(Error::InvalidParameter("lambda must be nonzero".into()));
    }
    if n > MAX_LEVEL {
        return Err(Error::ResourceLimit(format!(
            "level {n} exceeds the cap {MAX_LEVEL}"
        )));
    }
    // K - lambda K' = c (U - mu U') + (d - lambda d') with U, U' on [0, 1].
    let c = k.scale();
    let mut mu = &(lambda * kp.scale()) / c;
    let mut shift = k.offset() - &(lambda * kp.offset());
    // U' = 1 - U', so U + |mu| U' = (U - |mu| U') + |mu|.
    if mu.is_negative() {
        mu = mu.abs();
        shift = &shift + &(c * &mu);
    }
    let unit = unit_difference(k.shape.p(), kp.shape.p(), &mu, n, cap)?;
    Ok(unit.map_affine(c, &shift))
}

/// `D_n(mu) = level_n(U) - mu level_n(U')` for `mu > 0` by
/// `D_n(mu) = U_{a,b} [a(1-1/p) - mu b(1-1/q)] + D_{n-1}(mu p/q) / p`.
fn unit_difference(p: &Rat, q: &Rat, mu: &Rat, n: u32, cap: usize) -> Result<IntervalSet> {
    let one = Rat::one();
    let mus: Vec<Rat> = {
        let ratio = p / q;
        let mut v = vec![mu.clone()];
        for _ in 0..n {
            let next = v.last().expect("nonempty") * &ratio;
            v.push(next);
        }
        v
    };
    let pinv = p.recip();
    let sp = &one - &pinv;
    let sq = &one - &q.recip();
    let mut cur = IntervalSet::single(Interval::new(-&mus[n as usize], one.clone()));
    for level in (0..n as usize).rev() {
        let m = &mus[level];
        let shifts = [
            Rat::zero(),
            sp.clone(),
            -(m * &sq),
            &sp - &(m * &sq),
        ];
        let scaled = cur.map_affine(&pinv, &Rat::zero());
        let mut pieces = Vec::with_capacity(scaled.len() * 4);
        for sh in &shifts {
            for iv in scaled.intervals() {
                pieces.push(Interval::new(&iv.lo + sh, &iv.hi + sh));
            }
        }
        cur = IntervalSet::from_union(pieces);
        if cur.len() > cap {
            return Err(Error::ResourceLimit(format!(
                "difference set exceeds {cap} intervals"
            )));
        }
    }
    Ok(cur)
}

/// Whether `level_n(K)` meets `level_n(K') + t`.
pub fn intersect_oracle(k: &PlacedCantorSet, kp: &PlacedCantorSet, t: &Rat, n: u32) -> bool {
    let a = Cyl {
        lo: k.offset().clone(),
        len: k.scale().clone(),
    };
    let b = Cyl {
        lo: kp.offset() + t,
        len: kp.scale().clone(),
    };
    let pi = k.shape.p().recip();
    let qi = kp.shape.p().recip();
    search(&a, &b, &pi, &qi, n, n)
}

struct Cyl {
    lo: Rat,
    len: Rat,
}

impl Cyl {
    fn meets(&self, o: &Cyl) -> bool {
        self.lo <= &o.lo + &o.len && o.lo <= &self.lo + &self.len
    }

    fn children(&self, inv: &Rat) -> [Cyl; 2] {
        let len = &self.len * inv;
        let right = &(&self.lo + &self.len) - &len;
        [
            Cyl {
                lo: self.lo.clone(),
                len: len.clone(),
            },
            Cyl { lo: right, len },
        ]
    }
}

fn search(a: &Cyl, b: &Cyl, pi: &Rat, qi: &Rat, da: u32, db: u32) -> bool {
    if !a.meets(b) {
        return false;
    }
    if da == 0 && db == 0 {
        return true;
    }
    // split the longer cylinder first to keep both sides comparable
    let split_a = db == 0 || (da > 0 && a.len >= b.len);
    if split_a {
        a.children(pi)
            .iter()
            .any(|c| search(c, b, pi, qi, da - 1, db))
    } else {
        b.children(qi)
            .iter()
            .any(|c| search(a, c, pi, qi, da, db - 1))
    }
}
