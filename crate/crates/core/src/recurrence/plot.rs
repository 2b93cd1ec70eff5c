//! CSV data for the region, the interval families and the square
//! projections.

use super::constants::consts;
use super::intervals::{endpoints, interval_family, Family};
use super::options::sample_points;
use super::squares::square_family_14;
use crate::arith::{Affine, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.join(","));
            out.push('\n');
        }
        out
    }
}

/// Exact vertex of a boundary polygon.
pub type Vertex = (Rat, Rat);

/// One affine piece of a boundary curve, valid on `[lo, hi]`.
struct Piece {
    lo: Rat,
    hi: Rat,
    f: Affine,
}

fn by_family(minus: &Affine, plus: &Affine) -> Vec<Piece> {
    let c = consts();
    vec![
        Piece { lo: c.s_lo.clone(), hi: c.s_split.clone(), f: minus.clone() },
        Piece { lo: c.s_split.clone(), hi: c.s_hi.clone(), f: plus.clone() },
    ]
}

fn at(pieces: &[Piece], s: &Rat, right: bool) -> Rat {
    let p = pieces
        .iter()
        .find(|p| if right { &p.lo <= s && s < &p.hi } else { &p.lo < s && s <= &p.hi })
        .or_else(|| pieces.iter().find(|p| &p.lo <= s && s <= &p.hi))
        .expect("s inside the range");
    p.f.eval(s)
}

fn push(out: &mut Vec<Vertex>, v: Vertex) {
    if out.last() != Some(&v) {
        out.push(v);
    }
}

/// Polygons of `{lower < t < upper}` over the `s`-range: each is the lower
/// chain left to right followed by the upper chain back.
fn holes(lower: &[Piece], upper: &[Piece]) -> Vec<Vec<Vertex>> {
    let mut cuts: Vec<Rat> = Vec::new();
    for p in lower.iter().chain(upper) {
        cuts.push(p.lo.clone());
        cuts.push(p.hi.clone());
    }
    // crossing points of the two curves on every common piece
    for l in lower {
        for u in upper {
            let lo = (&l.lo).max(&u.lo).clone();
            let hi = (&l.hi).min(&u.hi).clone();
            let d = Affine::new(&u.f.c0 - &l.f.c0, &u.f.c1 - &l.f.c1);
            if lo < hi && !d.c1.is_zero() {
                let root = -&(&d.c0 / &d.c1);
                if lo < root && root < hi {
                    cuts.push(root);
                }
            }
        }
    }
    cuts.sort();
    cuts.dedup();
    let mut runs: Vec<Vec<Rat>> = Vec::new();
    let mut open = false;
    for w in cuts.windows(2) {
        let mid = &(&w[0] + &w[1]) / &Rat::from_int(2);
        let gap = at(upper, &mid, true) > at(lower, &mid, true);
        match (gap, open) {
            (true, false) => runs.push(vec![w[0].clone(), w[1].clone()]),
            (true, true) => runs.last_mut().expect("open run").push(w[1].clone()),
            _ => {}
        }
        open = gap;
    }
    runs.into_iter()
        .map(|xs| {
            let mut poly = Vec::new();
            for (i, s) in xs.iter().enumerate() {
                if i > 0 {
                    push(&mut poly, (s.clone(), at(lower, s, false)));
                }
                if i + 1 < xs.len() {
                    push(&mut poly, (s.clone(), at(lower, s, true)));
                }
            }
            for (i, s) in xs.iter().enumerate().rev() {
                if i + 1 < xs.len() {
                    push(&mut poly, (s.clone(), at(upper, s, true)));
                }
                if i > 0 {
                    push(&mut poly, (s.clone(), at(upper, s, false)));
                }
            }
            if poly.len() > 1 && poly.first() == poly.last() {
                poly.pop();
            }
            poly
        })
        .collect()
}

/// Boundary polygons of the region: the outer quadrilateral and the two cut
/// corners, each listed without repeating its first vertex.
pub fn region_polygons() -> Vec<(&'static str, Vec<Vertex>)> {
    let c = consts();
    let e = endpoints();
    let outer = vec![
        (c.s_lo.clone(), e.a1.eval(&c.s_lo)),
        (c.s_hi.clone(), e.a1.eval(&c.s_hi)),
        (c.s_hi.clone(), e.b3.eval(&c.s_hi)),
        (c.s_lo.clone(), e.b3.eval(&c.s_lo)),
    ];
    let whole = |f: &Affine| by_family(f, f);
    let mut out = vec![("outer", outer)];
    for (i, poly) in holes(&whole(&e.b1), &by_family(&e.a2m, &e.a2p)).into_iter().enumerate() {
        out.push((if i == 0 { "delta2" } else { "delta2b" }, poly));
    }
    for (i, poly) in holes(&by_family(&e.b2m, &e.b2p), &whole(&e.a3)).into_iter().enumerate() {
        out.push((if i == 0 { "delta1" } else { "delta1b" }, poly));
    }
    out
}

/// Closed polylines (first vertex repeated at the end).
pub fn region_table(digits: u32) -> Table {
    let mut rows = Vec::new();
    for (name, poly) in region_polygons() {
        for (k, (s, t)) in poly.iter().chain(poly.first()).enumerate() {
            rows.push(vec![name.to_string(), k.to_string(), s.to_sig(digits), t.to_sig(digits)]);
        }
    }
    Table { header: vec!["polygon", "vertex", "s", "t"], rows }
}

/// Endpoints of both interval families on `n` scales in `[s1, s2]`.
pub fn intervals_sweep(n: usize, digits: u32) -> Table {
    let c = consts();
    let mut rows = Vec::new();
    for s in sample_points(&c.s1, &c.s2, n.max(2)) {
        let fam = Family::for_scale(&s);
        let i = interval_family(&s, fam).expect("s in range");
        let mut row = vec![s.to_sig(digits), fam.sign().to_string()];
        for iv in &i.pieces {
            row.push(iv.lo.to_sig(digits));
            row.push(iv.hi.to_sig(digits));
        }
        rows.push(row);
    }
    Table { header: vec!["s", "family", "a1", "b1", "a2", "b2", "a3", "b3"], rows }
}

/// The three pieces at one scale.
pub fn intervals_at(s: &Rat, digits: u32) -> Result<Table> {
    let fam = Family::for_scale(s);
    let i = interval_family(s, fam)?;
    let rows = i
        .pieces
        .iter()
        .enumerate()
        .map(|(k, iv)| {
            vec![
                format!("I{}", k + 1),
                fam.sign().to_string(),
                iv.lo.to_sig(digits),
                iv.hi.to_sig(digits),
            ]
        })
        .collect();
    Ok(Table { header: vec!["piece", "family", "lo", "hi"], rows })
}

/// Projections of the fourteen hull squares at `s`.
pub fn squares_at(s: &Rat, digits: u32) -> Result<Table> {
    if !s.is_positive() {
        return Err(Error::InvalidParameter("s must be positive".into()));
    }
    let rows = square_family_14()
        .iter()
        .map(|sq| {
            let iv = sq.project(s);
            vec![sq.label.clone(), iv.lo.to_sig(digits), iv.hi.to_sig(digits)]
        })
        .collect();
    Ok(Table { header: vec!["square", "lo", "hi"], rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::{Interval, IntervalSet};
    use crate::recurrence::intervals::j_interval;
    use crate::recurrence::options::short_between;
    use crate::recurrence::region::RegionL;

    #[test]
    fn polygon_vertices_lie_on_the_region_boundary() {
        let region = RegionL::new();
        let polys = region_polygons();
        assert_eq!(polys[0].0, "outer");
        assert!(polys.len() >= 3);
        for (_, poly) in &polys {
            assert!(poly.len() >= 3);
            for (s, t) in poly {
                assert!(region.contains(s, t, false));
                assert!(!region.contains(s, t, true));
            }
        }
    }

    #[test]
    fn hole_centroid_is_outside() {
        let region = RegionL::new();
        for (name, poly) in region_polygons().iter().skip(1) {
            let n = Rat::from_int(poly.len() as i64);
            let s = &poly.iter().fold(Rat::zero(), |a, v| &a + &v.0) / &n;
            let t = &poly.iter().fold(Rat::zero(), |a, v| &a + &v.1) / &n;
            assert!(!region.contains(&s, &t, false), "{name}");
        }
    }

    #[test]
    fn pieces_connect_at_s1() {
        let c = consts();
        let t = intervals_at(&c.s1, 12).unwrap();
        assert_eq!(t.rows.len(), 3);
        let i = interval_family(&c.s1, Family::Minus).unwrap();
        assert_eq!(i.union().len(), 1);
    }

    #[test]
    fn square_projections_cover_j() {
        let c = consts();
        let s = short_between(&c.s1, &c.s2, &Rat::ratio(1, 2));
        assert_eq!(squares_at(&s, 12).unwrap().rows.len(), 14);
        let u = IntervalSet::from_union(square_family_14().iter().map(|q| q.project(&s)).collect::<Vec<Interval>>());
        assert_eq!(u.intervals(), [j_interval(&s)]);
    }

    #[test]
    fn csv_shape() {
        let t = intervals_sweep(5, 10);
        let csv = t.to_csv();
        assert_eq!(csv.lines().count(), 6);
        assert!(csv.starts_with("s,family,a1"));
        let r = region_table(10);
        assert_eq!(r.rows.first().unwrap()[2], r.rows[4][2]);
    }
}
