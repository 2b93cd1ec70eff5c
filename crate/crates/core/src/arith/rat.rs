use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// The two bases that appear in every denominator we care about: 10000 covers
/// all decimal inputs and 10321 covers powers of gamma = 10321/10000.
const BASE: [u64; 2] = [10_000, 10_321];

/// Rests up to this many bits are merged with a real lcm; larger ones are
/// multiplied together (gcd on huge operands is the slow path we avoid).
const LCM_BITS: u64 = 4096;

thread_local! {
    static POWERS: RefCell<[Vec<BigUint>; 2]> =
        RefCell::new([vec![BigUint::one()], vec![BigUint::one()]]);
}

pub(crate) fn base_pow(which: usize, e: u32) -> BigUint {
    POWERS.with(|cell| {
        let mut tables = cell.borrow_mut();
        let t = &mut tables[which];
        while t.len() <= e as usize {
            let next = t.last().expect("table starts non-empty") * BASE[which];
            t.push(next);
        }
        t[e as usize].clone()
    })
}

fn scale_factor(d0: u32, d1: u32) -> Option<BigUint> {
    match (d0, d1) {
        (0, 0) => None,
        (d, 0) => Some(base_pow(0, d)),
        (0, d) => Some(base_pow(1, d)),
        (a, b) => Some(base_pow(0, a) * base_pow(1, b)),
    }
}

fn mul_u(a: &BigInt, b: &BigUint) -> BigInt {
    BigInt::from_biguint(a.sign(), a.magnitude() * b)
}

fn strip(num: &mut BigInt, e: &mut u32, w: usize) {
    if *e == 0 || !(&*num % BASE[w]).is_zero() {
        return;
    }
    let mut mag = num.magnitude().clone();
    *e -= strip_pow(&mut mag, w, *e);
    *num = BigInt::from_biguint(num.sign(), mag);
}

/// Divides out the largest power `base^k` with `k <= cap`, returning `k`.
/// Steps double while they divide, then halve.
fn strip_pow(d: &mut BigUint, w: usize, cap: u32) -> u32 {
    let mut taken = 0u32;
    let mut step = 1u32;
    let mut growing = true;
    while step >= 1 {
        if taken + step <= cap {
            let (q, r) = d.div_rem(&base_pow(w, step));
            if r.is_zero() && !q.is_zero() {
                *d = q;
                taken += step;
                if growing {
                    step *= 2;
                }
                continue;
            }
        }
        growing = false;
        step /= 2;
    }
    taken
}

fn factor_out(mut d: BigUint) -> ([u32; 2], BigUint) {
    let mut e = [0u32; 2];
    if d.is_zero() {
        return (e, d);
    }
    for (w, ew) in e.iter_mut().enumerate() {
        if (&d % BASE[w]).is_zero() {
            *ew = strip_pow(&mut d, w, u32::MAX / 2);
        }
    }
    (e, d)
}

/// Multipliers that bring two rests to a common multiple.
fn rest_factors(ra: &BigUint, rb: &BigUint) -> (Option<BigUint>, Option<BigUint>, BigUint) {
    if ra == rb {
        return (None, None, ra.clone());
    }
    if ra.is_one() {
        return (Some(rb.clone()), None, rb.clone());
    }
    if rb.is_one() {
        return (None, Some(ra.clone()), ra.clone());
    }
    let (qb, remb) = rb.div_rem(ra);
    if remb.is_zero() {
        return (Some(qb), None, rb.clone());
    }
    let (qa, rema) = ra.div_rem(rb);
    if rema.is_zero() {
        return (None, Some(qa), ra.clone());
    }
    if ra.bits() <= LCM_BITS && rb.bits() <= LCM_BITS {
        let g = ra.gcd(rb);
        let ma = rb / &g;
        let mb = ra / &g;
        let l = ra * &ma;
        return (Some(ma), Some(mb), l);
    }
    (Some(rb.clone()), Some(ra.clone()), ra * rb)
}

/// Exact rational number `num / (10000^e0 * 10321^e1 * rest)`.
///
/// The representation is not canonical: `rest` may share factors with `num`.
/// Equality and ordering are value based. Call [`Rat::reduce`] when a
/// canonical form matters.
#[derive(Clone)]
pub struct Rat {
    num: BigInt,
    e: [u32; 2],
    rest: BigUint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    Floor,
    Ceil,
    Trunc,
    HalfEven,
}

impl Rat {
    pub fn zero() -> Rat {
        Rat {
            num: BigInt::zero(),
            e: [0, 0],
            rest: BigUint::one(),
        }
    }

    pub fn one() -> Rat {
        Rat::from_int(1)
    }

    pub fn from_int(v: i64) -> Rat {
        Rat {
            num: BigInt::from(v),
            e: [0, 0],
            rest: BigUint::one(),
        }
    }

    pub fn from_bigint(v: BigInt) -> Rat {
        Rat {
            num: v,
            e: [0, 0],
            rest: BigUint::one(),
        }
    }

    /// `n / d`; panics if `d == 0`.
    pub fn ratio(n: i64, d: i64) -> Rat {
        Rat::from_bigints(BigInt::from(n), BigInt::from(d))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Rat {
        assert!(!den.is_zero(), "zero denominator");
        let sign_flip = den.is_negative();
        let (e, rest) = factor_out(den.into_parts().1);
        let mut num = if sign_flip { -num } else { num };
        let mut rest = rest;
        if !rest.is_one() && rest.bits() <= LCM_BITS && num.bits() <= LCM_BITS {
            let g = num.magnitude().gcd(&rest);
            if !g.is_one() {
                num = BigInt::from_biguint(num.sign(), num.magnitude() / &g);
                rest /= g;
            }
        }
        Rat { num, e, rest }.normalize()
    }

    /// `10321^a / 10000^b` style constructor used by gamma powers.
    pub(crate) fn from_parts(num: BigInt, e: [u32; 2]) -> Rat {
        Rat {
            num,
            e,
            rest: BigUint::one(),
        }
        .normalize()
    }

    fn normalize(mut self) -> Rat {
        if self.num.is_zero() {
            return Rat::zero();
        }
        for w in 0..2 {
            strip(&mut self.num, &mut self.e[w], w);
        }
        self
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    /// Denominator as a plain integer (may be large).
    pub fn denom(&self) -> BigUint {
        let mut d = self.rest.clone();
        if let Some(f) = scale_factor(self.e[0], self.e[1]) {
            d *= f;
        }
        d
    }

    /// `num/den` in full, parseable back to the same value.
    pub fn to_fraction(&self) -> String {
        let d = self.denom();
        if d.is_one() {
            self.num.to_string()
        } else {
            format!("{}/{}", self.num, d)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.num.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn signum(&self) -> i32 {
        match self.num.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Rat {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Cancels common factors between numerator and the non-decimal part of
    /// the denominator. Costs one big gcd.
    pub fn reduce(&self) -> Rat {
        if self.rest.is_one() {
            return self.clone();
        }
        let g = self.num.magnitude().gcd(&self.rest);
        if g.is_one() {
            return self.clone();
        }
        Rat {
            num: BigInt::from_biguint(self.num.sign(), self.num.magnitude() / &g),
            e: self.e,
            rest: &self.rest / &g,
        }
        .normalize()
    }

    fn align(a: &Rat, b: &Rat) -> (BigInt, BigInt, [u32; 2], BigUint) {
        if a.e == b.e && a.rest == b.rest {
            return (a.num.clone(), b.num.clone(), a.e, a.rest.clone());
        }
        let e = [a.e[0].max(b.e[0]), a.e[1].max(b.e[1])];
        let (ma, mb, rest) = rest_factors(&a.rest, &b.rest);
        let mut na = a.num.clone();
        let mut nb = b.num.clone();
        if let Some(f) = scale_factor(e[0] - a.e[0], e[1] - a.e[1]) {
            na = mul_u(&na, &f);
        }
        if let Some(f) = scale_factor(e[0] - b.e[0], e[1] - b.e[1]) {
            nb = mul_u(&nb, &f);
        }
        if let Some(m) = ma {
            na = mul_u(&na, &m);
        }
        if let Some(m) = mb {
            nb = mul_u(&nb, &m);
        }
        (na, nb, e, rest)
    }

    pub fn recip(&self) -> Rat {
        assert!(!self.is_zero(), "reciprocal of zero");
        let den = self.denom();
        let (e, rest) = factor_out(self.num.magnitude().clone());
        Rat {
            num: BigInt::from_biguint(self.num.sign(), den),
            e,
            rest,
        }
        .normalize()
    }

    pub fn pow(&self, k: i32) -> Rat {
        if k < 0 {
            return self.pow(-k).recip();
        }
        let mut base = self.clone();
        let mut acc = Rat::one();
        let mut k = k as u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn pow10(k: i32) -> Rat {
        if k >= 0 {
            Rat::from_bigint(num_traits::pow(BigInt::from(10), k as usize))
        } else {
            Rat::from_bigints(
                BigInt::one(),
                num_traits::pow(BigInt::from(10), (-k) as usize),
            )
        }
    }

    pub fn floor(&self) -> BigInt {
        self.num.div_floor(&BigInt::from_biguint(Sign::Plus, self.denom()))
    }

    pub fn min(self, other: Rat) -> Rat {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Rat) -> Rat {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let n = self.num.magnitude();
        let d = self.denom();
        let shift = d.bits() as i64 - n.bits() as i64 + 64;
        let q = if shift >= 0 {
            (n << shift as usize) / &d
        } else {
            n / (&d << (-shift) as usize)
        };
        let mut v = q.to_f64().unwrap_or(f64::INFINITY);
        let mut k = -shift;
        while k > 500 {
            v *= 2f64.powi(500);
            k -= 500;
        }
        while k < -500 {
            v *= 2f64.powi(-500);
            k += 500;
        }
        v *= 2f64.powi(k as i32);
        if self.is_negative() {
            -v
        } else {
            v
        }
    }

    /// Integer `round(self * 10^decimals)` under the given rounding rule.
    pub fn scaled_round(&self, decimals: i32, mode: Rounding) -> BigInt {
        let scaled = self * &Rat::pow10(decimals);
        let den = BigInt::from_biguint(Sign::Plus, scaled.denom());
        let (q, r) = scaled.num.div_mod_floor(&den);
        if r.is_zero() {
            return q;
        }
        match mode {
            Rounding::Floor => q,
            Rounding::Ceil => q + 1,
            Rounding::Trunc => {
                if scaled.num.is_negative() {
                    q + 1
                } else {
                    q
                }
            }
            Rounding::HalfEven => match (&r << 1usize).cmp(&den) {
                Ordering::Less => q,
                Ordering::Greater => q + 1,
                Ordering::Equal => {
                    if q.is_odd() {
                        q + 1
                    } else {
                        q
                    }
                }
            },
        }
    }

    /// Fixed-point decimal string with exactly `decimals` fraction digits.
    pub fn to_fixed(&self, decimals: u32, mode: Rounding) -> String {
        let m = self.scaled_round(decimals as i32, mode);
        format_scaled(&m, decimals)
    }

    /// `floor(log10(|self|))`; panics on zero.
    pub fn log10_floor(&self) -> i32 {
        assert!(!self.is_zero(), "log of zero");
        let a = self.abs();
        let bits = a.num.bits() as f64 - a.denom().bits() as f64;
        let mut k = (bits * std::f64::consts::LOG10_2).floor() as i32;
        while a >= Rat::pow10(k + 1) {
            k += 1;
        }
        while a < Rat::pow10(k) {
            k -= 1;
        }
        k
    }

    /// Decimal rendering with `sig` significant digits, round-half-even.
    /// Switches to scientific notation for very large or small magnitudes.
    pub fn to_sig(&self, sig: u32) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let sig = sig.max(1) as i32;
        let k = self.log10_floor();
        let decimals = sig - 1 - k;
        if (0..=40).contains(&decimals) && (-4..16).contains(&k) {
            return self.to_fixed(decimals as u32, Rounding::HalfEven);
        }
        let mut m = self.scaled_round(decimals, Rounding::HalfEven);
        let mut exp = k;
        let limit = num_traits::pow(BigInt::from(10), sig as usize);
        if m.magnitude() >= limit.magnitude() {
            m /= 10;
            exp += 1;
        }
        let digits = m.magnitude().to_string();
        let sign = if m.is_negative() { "-" } else { "" };
        let (head, tail) = digits.split_at(1);
        if tail.is_empty() {
            format!("{sign}{head}e{exp}")
        } else {
            format!("{sign}{head}.{tail}e{exp}")
        }
    }
}

pub(crate) fn format_scaled(m: &BigInt, decimals: u32) -> String {
    let digits = m.magnitude().to_string();
    let sign = if m.is_negative() { "-" } else { "" };
    if decimals == 0 {
        return format!("{sign}{digits}");
    }
    let d = decimals as usize;
    let padded = if digits.len() <= d {
        format!("{}{}", "0".repeat(d + 1 - digits.len()), digits)
    } else {
        digits
    };
    let (ip, fp) = padded.split_at(padded.len() - d);
    format!("{sign}{ip}.{fp}")
}

impl PartialEq for Rat {
    fn eq(&self, other: &Rat) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Rat {}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let (na, nb, _, _) = Rat::align(self, other);
        na.cmp(&nb)
    }
}

impl<'a> Add<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn add(self, b: &Rat) -> Rat {
        if self.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return self.clone();
        }
        let (na, nb, e, rest) = Rat::align(self, b);
        Rat {
            num: na + nb,
            e,
            rest,
        }
        .normalize()
    }
}

impl<'a> Sub<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn sub(self, b: &Rat) -> Rat {
        if b.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return -b;
        }
        let (na, nb, e, rest) = Rat::align(self, b);
        Rat {
            num: na - nb,
            e,
            rest,
        }
        .normalize()
    }
}

impl<'a> Mul<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn mul(self, b: &Rat) -> Rat {
        if self.is_zero() || b.is_zero() {
            return Rat::zero();
        }
        let rest = if self.rest.is_one() {
            b.rest.clone()
        } else if b.rest.is_one() {
            self.rest.clone()
        } else {
            &self.rest * &b.rest
        };
        Rat {
            num: &self.num * &b.num,
            e: [self.e[0] + b.e[0], self.e[1] + b.e[1]],
            rest,
        }
        .normalize()
    }
}

impl<'a> Div<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn div(self, b: &Rat) -> Rat {
        self * &b.recip()
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat {
            num: -&self.num,
            e: self.e,
            rest: self.rest.clone(),
        }
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(mut self) -> Rat {
        self.num = -self.num;
        self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, b: Rat) -> Rat { (&self).$m(&b) }
        }
        impl<'a> $tr<&'a Rat> for Rat {
            type Output = Rat;
            fn $m(self, b: &Rat) -> Rat { (&self).$m(b) }
        }
        impl<'a> $tr<Rat> for &'a Rat {
            type Output = Rat;
            fn $m(self, b: Rat) -> Rat { self.$m(&b) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl From<i64> for Rat {
    fn from(v: i64) -> Rat {
        Rat::from_int(v)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.denom();
        if d.bits() <= 64 {
            let r = Rat::from_bigints(self.num.clone(), BigInt::from_biguint(Sign::Plus, d));
            let dd = r.denom();
            if dd.is_one() {
                write!(f, "{}", r.num)
            } else {
                write!(f, "{}/{}", r.num, dd)
            }
        } else {
            write!(f, "{}", self.to_sig(25))
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rat({})", self)
    }
}

/// Numerators of `values` over one shared positive denominator, so that the
/// integers compare exactly like the rationals.
pub fn common_numerators(values: &[&Rat]) -> Vec<BigInt> {
    let mut e = [0u32; 2];
    let mut lcm = BigUint::one();
    for v in values {
        e[0] = e[0].max(v.e[0]);
        e[1] = e[1].max(v.e[1]);
        if v.rest.is_one() || v.rest == lcm {
            continue;
        }
        let (_, _, l) = rest_factors(&lcm, &v.rest);
        lcm = l;
    }
    values
        .iter()
        .map(|v| {
            let mut n = v.num.clone();
            if let Some(f) = scale_factor(e[0] - v.e[0], e[1] - v.e[1]) {
                n = mul_u(&n, &f);
            }
            if v.rest != lcm {
                n = mul_u(&n, &(&lcm / &v.rest));
            }
            n
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_matches_plain_fractions() {
        let a = Rat::ratio(1, 3);
        let b = Rat::ratio(5, 7);
        assert_eq!(&a + &b, Rat::ratio(22, 21));
        assert_eq!(&a - &b, Rat::ratio(-8, 21));
        assert_eq!(&a * &b, Rat::ratio(5, 21));
        assert_eq!(&a / &b, Rat::ratio(7, 15));
        assert_eq!(Rat::ratio(6, -4), Rat::ratio(-3, 2));
    }

    #[test]
    fn gamma_denominators_strip() {
        let g = Rat::ratio(10321, 10000);
        let x = g.pow(40) * g.pow(-40);
        assert_eq!(x, Rat::one());
        assert_eq!(x.denom(), BigUint::one());
    }

    #[test]
    fn rounding_modes() {
        let x = Rat::ratio(-25, 10);
        assert_eq!(x.to_fixed(0, Rounding::HalfEven), "-2");
        assert_eq!(x.to_fixed(0, Rounding::Floor), "-3");
        assert_eq!(x.to_fixed(0, Rounding::Ceil), "-2");
        assert_eq!(x.to_fixed(0, Rounding::Trunc), "-2");
        assert_eq!(Rat::ratio(1, 3).to_fixed(4, Rounding::Ceil), "0.3334");
        assert_eq!(Rat::ratio(2, 3).to_sig(3), "0.667");
        assert_eq!(Rat::ratio(1, 30000).to_sig(2), "3.3e-5");
    }

    #[test]
    fn to_f64_close() {
        let x = Rat::ratio(10321, 10000).pow(-1240);
        let f = x.to_f64();
        assert!((f / 1.0321f64.powi(-1240) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn common_numerators_preserve_order() {
        let xs = [Rat::ratio(1, 3), Rat::ratio(-2, 7), Rat::ratio(10321, 10000)];
        let refs: Vec<&Rat> = xs.iter().collect();
        let ns = common_numerators(&refs);
        assert!(ns[1] < ns[0] && ns[0] < ns[2]);
    }
}
