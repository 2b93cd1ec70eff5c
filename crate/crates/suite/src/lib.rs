//! A second implementation of the pair constants and the elementary maps on
//! plain `BigRational`, used to check the library from outside.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use stable_cantor::arith::Rat;

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_q(r: &Rat) -> Q {
    Q::new(r.numer().clone(), BigInt::from_biguint(Sign::Plus, r.denom()))
}

/// Parses a plain decimal such as `-0.028738306`.
pub fn decimal(text: &str) -> Q {
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits: BigInt = format!("{int}{frac}").parse().expect("decimal digits");
    let v = Q::new(digits, BigInt::from(10).pow(frac.len() as u32));
    if neg {
        -v
    } else {
        v
    }
}

/// Digits after the point in a printed decimal.
pub fn decimals(text: &str) -> u32 {
    text.split_once('.').map_or(0, |(_, f)| f.len() as u32)
}

/// `x` truncated toward zero to `d` decimals.
pub fn truncate(x: &Q, d: u32) -> Q {
    let scale = BigInt::from(10).pow(d);
    let v = x * Q::from_integer(scale.clone());
    let (n, den) = (v.numer().clone(), v.denom().clone());
    let t = if n.is_negative() { -((-n).div_floor(&den)) } else { n.div_floor(&den) };
    Q::new(t, scale)
}

/// Nearest value with `d` decimals, ties away from zero.
pub fn round(x: &Q, d: u32) -> Q {
    let scale = BigInt::from(10).pow(d);
    let v = x.abs() * Q::from_integer(scale.clone()) + q(1, 2);
    let r = Q::new(v.numer().div_floor(v.denom()), scale);
    if x.is_negative() {
        -r
    } else {
        r
    }
}

pub struct Pair {
    pub gamma: Q,
    pub p: Q,
    pub q: Q,
}

impl Default for Pair {
    fn default() -> Self {
        Pair::new()
    }
}

impl Pair {
    pub fn new() -> Self {
        let gamma = q(10321, 10000);
        Pair {
            p: pow(&gamma, 40),
            q: pow(&gamma, 31),
            gamma,
        }
    }

    /// Named constants of the recurrence argument.
    pub fn constants(&self) -> Vec<(&'static str, Q)> {
        let (p, qq, g) = (&self.p, &self.q, &self.gamma);
        let one = Q::one();
        let two = q(2, 1);
        let q39 = pow(qq, 39);
        let w = (&one - qq.recip()) / &q39;
        let s1 = p.recip() / (&one - &two / qq + &two * &w);
        let s2 = (&one - &two / p) / (qq.recip() - &two * &w);
        let k = p * (qq - &one) / (qq * (p - &one));
        let d1 = &k * &s1;
        let d2 = &k * &s2;
        let r1 = (p - &two) * (qq - &one) / ((p - &one) * &d1) - &one;
        let r2 = &one - (qq - &one) / ((p - &one) * (qq - &two) * &d2);
        let m1 = |i: u32| &two * (qq - &one) * pow(p, i) / &q39;
        let m2 = |i: u32| m1(i) / (qq - &two);
        let dist = |i: u32| {
            (1..=37)
                .map(|j| (pow(p, i) / pow(qq, j) - &one).abs())
                .min()
                .expect("nonempty")
        };
        let bound = (&r1 + m1(25)).max(&r2 + m2(25));
        vec![
            ("p", p.clone()),
            ("q", qq.clone()),
            ("tau_product", ((p - &two) * (qq - &two)).recip()),
            ("s_lo", &s2 / g),
            ("s1", s1.clone()),
            ("s2", s2.clone()),
            ("s_hi", g * &s1),
            ("delta1", d1),
            ("delta2", d2),
            ("relation3.r1", r1),
            ("relation3.r2", r2),
            ("relation3.distance_i27", dist(27)),
            ("relation3.m1_i27", m1(27)),
            ("relation3.m2_i27", m2(27)),
            ("relation3.distance_i26", dist(26)),
            ("relation3.m1_i25", m1(25)),
            ("relation3.m2_i25", m2(25)),
            ("relation3.gamma_gap", (g - &one).min(&one - g.recip())),
            ("relation3.bound_i25", bound),
        ]
    }

    /// 31 K-letters then 40 K'-letters on `(s, t)`, one map at a time.
    pub fn compose(&self, a: &[u8], b: &[u8], s: &Q, t: &Q) -> (Fixed, Fixed) {
        let one = Fixed::int(1);
        let p = Fixed::gamma_pow(40);
        let q_inv = Fixed::gamma_pow(31).recip_gamma_power();
        let q = Fixed::gamma_pow(31);
        let (mut s, mut t) = (Fixed::from_q(s), Fixed::from_q(t));
        for &x in a {
            s = s.mul(&p);
            t = t.mul(&p);
            if x == 1 {
                t = t.add(&one.sub(&p));
            }
        }
        for &y in b {
            s = s.mul(&q_inv);
            if y == 1 {
                t = t.sub(&s.mul(&one.sub(&q)));
            }
        }
        (s, t)
    }

    /// Lower-left corner of the cylinder square of the words.
    pub fn corner(&self, a: &[u8], b: &[u8]) -> (Q, Q) {
        let one = Q::one();
        let sum = |w: &[u8], r: &Q| {
            let mut acc = Q::zero();
            let mut scale = one.clone();
            for &x in w {
                if x == 1 {
                    acc += &scale;
                }
                scale /= r;
            }
            (&one - r.recip()) * acc
        };
        (sum(a, &self.p), sum(b, &self.q))
    }
}

/// `n / (10^a 10321^b)`, kept unreduced so no gcd is ever taken.
#[derive(Clone, Debug)]
pub struct Fixed {
    n: BigInt,
    a: u32,
    b: u32,
}

impl Fixed {
    pub fn int(v: i64) -> Self {
        Fixed { n: BigInt::from(v), a: 0, b: 0 }
    }

    /// `γ^e` for `e >= 0`.
    pub fn gamma_pow(e: u32) -> Self {
        Fixed {
            n: BigInt::from(10321).pow(e),
            a: 4 * e,
            b: 0,
        }
    }

    /// Reciprocal of a value built by `gamma_pow`.
    pub fn recip_gamma_power(&self) -> Self {
        assert_eq!(self.b, 0);
        let e = self.a / 4;
        Fixed {
            n: BigInt::from(10).pow(self.a),
            a: 0,
            b: e,
        }
    }

    /// Exact when the denominator of `x` divides some `10^a 10321^b`.
    pub fn from_q(x: &Q) -> Self {
        let g = BigInt::from(10321);
        let mut rest = x.denom().clone();
        let mut b = 0;
        while (&rest % &g).is_zero() {
            rest /= &g;
            b += 1;
        }
        let a = (0..)
            .find(|&a| (BigInt::from(10).pow(a) % &rest).is_zero())
            .filter(|&a| a < 100_000)
            .expect("denominator divides 10^a 10321^b");
        let f = Fixed { n: BigInt::zero(), a, b };
        Fixed {
            n: x.numer() * (f.denom() / x.denom()),
            a,
            b,
        }
    }

    fn denom(&self) -> BigInt {
        BigInt::from(10).pow(self.a) * BigInt::from(10321).pow(self.b)
    }

    fn lift(&self, a: u32, b: u32) -> BigInt {
        &self.n * BigInt::from(10).pow(a - self.a) * BigInt::from(10321).pow(b - self.b)
    }

    pub fn add(&self, o: &Fixed) -> Fixed {
        let (a, b) = (self.a.max(o.a), self.b.max(o.b));
        Fixed {
            n: self.lift(a, b) + o.lift(a, b),
            a,
            b,
        }
    }

    pub fn sub(&self, o: &Fixed) -> Fixed {
        self.add(&Fixed {
            n: -&o.n,
            a: o.a,
            b: o.b,
        })
    }

    pub fn mul(&self, o: &Fixed) -> Fixed {
        Fixed {
            n: &self.n * &o.n,
            a: self.a + o.a,
            b: self.b + o.b,
        }
    }

    /// Exact comparison by cross-multiplication.
    pub fn equals(&self, x: &Q) -> bool {
        &self.n * x.denom() == x.numer() * self.denom()
    }

    pub fn to_q(&self) -> Q {
        Q::new(self.n.clone(), self.denom())
    }
}

pub fn pow(x: &Q, n: u32) -> Q {
    num_traits::pow(x.clone(), n as usize)
}

/// Truncations to 20 decimals, computed once with an unrelated rational
/// implementation and frozen here.
pub const FROZEN: [(&str, &str); 19] = [
    ("p", "3.53892307085641509001"),
    ("q", "2.66302423993592896339"),
    ("tau_product", "0.98006229924093921278"),
    ("s_lo", "1.12201620646601661190"),
    ("s1", "1.13494441273201961148"),
    ("s2", "1.15803292669357574515"),
    ("s_hi", "1.17137612838071744101"),
    ("delta1", "0.98791511722818732255"),
    ("delta2", "1.00801257021449590464"),
    ("relation3.r1", "0.02034329937444049944"),
    ("relation3.r2", "0.01993770075906087107"),
    ("relation3.m1_i27", "0.05647018448287260720"),
    ("relation3.m2_i27", "0.08517061832962483695"),
    ("relation3.m1_i25", "0.00450896602020776722"),
    ("relation3.m2_i25", "0.00680060508895344314"),
    ("relation3.distance_i27", "0.14613126914314285198"),
    ("relation3.distance_i26", "0.35746748870557851313"),
    ("relation3.gamma_gap", "0.03110163743823272938"),
    ("relation3.bound_i25", "0.02673830584801431422"),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_matches_frozen_digits() {
        let consts = Pair::new().constants();
        for (id, want) in FROZEN {
            let v = &consts.iter().find(|(k, _)| *k == id).expect(id).1;
            assert_eq!(truncate(v, 20), decimal(want), "{id}");
        }
    }

    #[test]
    fn truncation_and_rounding() {
        let x = decimal("3.538923070856");
        assert_eq!(truncate(&x, 9), decimal("3.538923070"));
        assert_eq!(round(&x, 9), decimal("3.538923071"));
        assert_eq!(truncate(&-x, 3), decimal("-3.538"));
    }

    #[test]
    fn zero_words_fix_the_origin_direction() {
        let pair = Pair::new();
        let s = q(23, 20);
        let (s2, t2) = pair.compose(&[0; 31], &[0; 40], &s, &Q::zero());
        assert!(s2.equals(&s));
        assert!(t2.equals(&Q::zero()));
    }

    #[test]
    fn fixed_point_arithmetic_is_exact() {
        let p = Fixed::gamma_pow(40);
        assert!(p.equals(&Pair::new().p));
        assert!(p.mul(&p.recip_gamma_power()).equals(&Q::one()));
        let x = Fixed::from_q(&q(-3, 8));
        assert!(x.sub(&p).add(&p).equals(&q(-3, 8)));
        assert_eq!(x.to_q(), q(-3, 8));
    }
}
