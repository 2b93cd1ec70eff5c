use super::interval::{Interval, IntervalSet};
use super::set::HomogeneousCantorSet;
use super::system::AffineCantorSystem;
use crate::arith::{common_numerators, Rat};
use crate::error::{Error, Result};

/// A gap with the bridges to the nearest gap at least as long on each side
/// (or to the hull end when there is none).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapTriple {
    pub left_bridge: Interval,
    pub gap: Interval,
    pub right_bridge: Interval,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thickness {
    pub right: Rat,
    pub left: Rat,
    /// Level the infimum was taken over; `None` for the closed form.
    pub level: Option<u32>,
}

impl Thickness {
    pub fn tau(&self) -> Rat {
        self.right.clone().min(self.left.clone())
    }
}

/// `tau_R = tau_L = 1/(p - 2)`: every gap sits between two bridges of the
/// same generation.
pub fn homogeneous_thickness(k: &HomogeneousCantorSet) -> Thickness {
    let t = (k.p() - &Rat::from_int(2)).recip();
    Thickness {
        right: t.clone(),
        left: t,
        level: None,
    }
}

/// Gap triples of a finite-level approximation.
pub fn gap_triples(set: &IntervalSet) -> Result<Vec<GapTriple>> {
    let gaps = set.gaps();
    if gaps.is_empty() {
        return Err(Error::InvalidStructure("set has no bounded gap".into()));
    }
    let hull = set.hull().expect("nonempty");
    let lens: Vec<Rat> = gaps.iter().map(Interval::len).collect();
    let keys = common_numerators(&lens.iter().collect::<Vec<_>>());
    let n = gaps.len();

    let mut right_stop: Vec<Option<usize>> = vec![None; n];
    let mut stack: Vec<usize> = Vec::new();
    for i in (0..n).rev() {
        while let Some(&j) = stack.last() {
            if keys[j] >= keys[i] {
                break;
            }
            stack.pop();
        }
        right_stop[i] = stack.last().copied();
        stack.push(i);
    }
    let mut left_stop: Vec<Option<usize>> = vec![None; n];
    stack.clear();
    for i in 0..n {
        while let Some(&j) = stack.last() {
            if keys[j] >= keys[i] {
                break;
            }
            stack.pop();
        }
        left_stop[i] = stack.last().copied();
        stack.push(i);
    }

    Ok((0..n)
        .map(|i| {
            let g = &gaps[i];
            let r_end = right_stop[i].map_or(hull.hi.clone(), |j| gaps[j].lo.clone());
            let l_end = left_stop[i].map_or(hull.lo.clone(), |j| gaps[j].hi.clone());
            GapTriple {
                left_bridge: Interval::new(l_end, g.lo.clone()),
                gap: g.clone(),
                right_bridge: Interval::new(g.hi.clone(), r_end),
            }
        })
        .collect())
}

/// Lateral thickness infima over the gaps of a finite approximation.
pub fn thickness_of_level(set: &IntervalSet, level: u32) -> Result<Thickness> {
    let triples = gap_triples(set)?;
    let mut right: Option<Rat> = None;
    let mut left: Option<Rat> = None;
    for tr in &triples {
        let g = tr.gap.len();
        let r = &tr.right_bridge.len() / &g;
        let l = &tr.left_bridge.len() / &g;
        right = Some(match right {
            Some(x) => x.min(r),
            None => r,
        });
        left = Some(match left {
            Some(x) => x.min(l),
            None => l,
        });
    }
    Ok(Thickness {
        right: right.expect("at least one gap"),
        left: left.expect("at least one gap"),
        level: Some(level),
    })
}

pub fn homogeneous_thickness_brute(k: &HomogeneousCantorSet, level: u32) -> Result<Thickness> {
    thickness_of_level(&k.refine(level)?, level)
}

/// Best effort: infimum over the gaps visible at `level`.
pub fn system_thickness(sys: &AffineCantorSystem, level: u32, cap: usize) -> Result<Thickness> {
    thickness_of_level(&sys.refine(level, cap)?, level)
}
