use super::constants::consts;
use super::intervals::RecurrentIntervals;
use crate::arith::{Affine, Rat};
use crate::cantor::{Interval, IntervalSet};
use crate::renorm::{corner, horner, A_LEN, B_LEN};

/// A product of a level-31 K-cylinder and a level-40 K'-cylinder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Square {
    pub label: String,
    pub a_bits: Vec<u8>,
    pub b_bits: Vec<u8>,
}

/// Bits for grid index 1..=4 of the `{0, d/r^L, d/r^(L-1), d(1/r^L + 1/r^(L-1))}` translates.
fn grid_bits(len: usize, idx: usize) -> Vec<u8> {
    let mut w = vec![0u8; len];
    match idx {
        1 => {}
        2 => w[len - 1] = 1,
        3 => w[len - 2] = 1,
        4 => {
            w[len - 2] = 1;
            w[len - 1] = 1;
        }
        _ => panic!("grid index {idx} outside 1..=4"),
    }
    w
}

impl Square {
    pub fn new(label: impl Into<String>, a_bits: Vec<u8>, b_bits: Vec<u8>) -> Self {
        assert_eq!(a_bits.len(), A_LEN);
        assert_eq!(b_bits.len(), B_LEN);
        Square {
            label: label.into(),
            a_bits,
            b_bits,
        }
    }

    /// `C_ij` with `i` the vertical and `j` the horizontal grid index.
    pub fn grid(i: usize, j: usize) -> Self {
        Square::new(format!("C{i}{j}"), grid_bits(A_LEN, j), grid_bits(B_LEN, i))
    }

    /// The square at `(c8, c5)` of the base-case corner check.
    pub fn c85() -> Self {
        let mut a = vec![0u8; A_LEN];
        a[28] = 1;
        let mut b = vec![0u8; B_LEN];
        b[37] = 1;
        b[38] = 1;
        b[39] = 1;
        Square::new("C85", a, b)
    }

    pub fn corner(&self) -> (Rat, Rat) {
        corner(&self.a_bits, &self.b_bits)
    }

    /// `X = p^31 x0` and `Y = p^31 y0 = q^40 y0`.
    pub fn scaled_corner(&self) -> (Rat, Rat) {
        let c = consts();
        let one = Rat::one();
        (
            &(&c.p - &one) * &horner(&self.a_bits, &c.p),
            &(&c.q - &one) * &horner(&self.b_bits, &c.q),
        )
    }

    /// Return-map intercept `a_s = -X + s Y` as a function of `s`.
    pub fn intercept(&self) -> Affine {
        let (x, y) = self.scaled_corner();
        Affine::new(-x, y)
    }

    /// Image of the square under `(x, y) -> x - s y`, for `s > 0`.
    pub fn project(&self, s: &Rat) -> Interval {
        let c = consts();
        let (x0, y0) = self.corner();
        let base = &x0 - &(s * &y0);
        Interval::new(&base - &(s / &c.p31), &base + &c.p31.recip())
    }

    /// Return map of the square at `s`.
    pub fn apply(&self, s: &Rat, t: &Rat) -> Rat {
        &(&consts().p31 * t) + &self.intercept().eval(s)
    }

    pub fn preimage(&self, s: &Rat, v: &Rat) -> Rat {
        &(v - &self.intercept().eval(s)) / &consts().p31
    }
}

/// The 4x4 grid without `C41` and `C14`.
pub fn square_family_14() -> Vec<Square> {
    let mut out = Vec::with_capacity(14);
    for i in 1..=4 {
        for j in 1..=4 {
            if (i, j) != (4, 1) && (i, j) != (1, 4) {
                out.push(Square::grid(i, j));
            }
        }
    }
    out
}

pub fn square_grid_16() -> Vec<Square> {
    (1..=4)
        .flat_map(|i| (1..=4).map(move |j| Square::grid(i, j)))
        .collect()
}

pub fn project(sq: &Square, s: &Rat) -> Interval {
    sq.project(s)
}

/// `K(C) = Pi(C) - T^-1(int I_s)`, in `t` coordinates.
pub fn bad_set(sq: &Square, s: &Rat, i: &RecurrentIntervals) -> IntervalSet {
    let pi = sq.project(s);
    let mut out = Vec::new();
    let mut cur = pi.lo.clone();
    for iv in i.union().intervals() {
        let lo = sq.preimage(s, &iv.lo);
        let hi = sq.preimage(s, &iv.hi);
        if lo > cur {
            out.push(Interval::new(cur.clone(), lo.clone().min(pi.hi.clone())));
        }
        if hi > cur {
            cur = hi;
        }
    }
    if cur <= pi.hi {
        out.push(Interval::new(cur, pi.hi));
    }
    IntervalSet::from_union(out)
}
