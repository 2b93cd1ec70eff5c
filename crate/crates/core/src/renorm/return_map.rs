use super::config::{compose_k, compose_kprime, Configuration};
use super::operator::PairOperators;
use crate::arith::{GammaPower, Rat};
use crate::error::{Error, Result};

pub const A_LEN: usize = 31;
pub const B_LEN: usize = 40;

/// `t -> p^31 t + a_s`, one full cycle of 31 K-letters and 40 K'-letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReturnMap {
    pub a_bits: Vec<u8>,
    pub b_bits: Vec<u8>,
    pub s: Rat,
    pub intercept: Rat,
}

/// `sum w_k r^(len-1-k)` by Horner.
pub fn horner(word: &[u8], r: &Rat) -> Rat {
    word.iter()
        .fold(Rat::zero(), |acc, &b| &(&acc * r) + &Rat::from_int(b as i64))
}

/// Offset of `compose_kprime(b) . compose_k(a)` on `t`, for any lengths.
pub fn block_intercept(a_bits: &[u8], b_bits: &[u8], s: &Rat) -> Rat {
    let p = GammaPower::p().value();
    let q = GammaPower::q().value();
    let one = Rat::one();
    let x = &(&p - &one) * &horner(a_bits, &p);
    let ratio = GammaPower::lattice(a_bits.len() as i64, b_bits.len() as i64).value();
    let y = &(&q - &one) * &horner(b_bits, &q);
    &(&(&ratio * s) * &y) - &x
}

/// Lower-left corner `((1-1/p) sum a_k/p^k, (1-1/q) sum b_k/q^k)` of the
/// cylinder square of the words.
pub fn corner(a_bits: &[u8], b_bits: &[u8]) -> (Rat, Rat) {
    let p = GammaPower::p().value();
    let q = GammaPower::q().value();
    let one = Rat::one();
    let f = |w: &[u8], r: &Rat| {
        let n = w.len() as i32;
        &(&(&one - &r.recip()) * &horner(w, r)) / &r.pow(n - 1)
    };
    (f(a_bits, &p), f(b_bits, &q))
}

impl ReturnMap {
    pub fn new(a_bits: &[u8], b_bits: &[u8], s: &Rat) -> Result<Self> {
        if a_bits.len() != A_LEN || b_bits.len() != B_LEN {
            return Err(Error::InvalidParameter(format!(
                "return map needs {A_LEN} and {B_LEN} bits, got {} and {}",
                a_bits.len(),
                b_bits.len()
            )));
        }
        if a_bits.iter().chain(b_bits).any(|&b| b > 1) {
            return Err(Error::InvalidParameter("bits must be 0 or 1".into()));
        }
        if s.is_zero() {
            return Err(Error::InvalidParameter("s must be nonzero".into()));
        }
        Ok(ReturnMap {
            a_bits: a_bits.to_vec(),
            b_bits: b_bits.to_vec(),
            s: s.clone(),
            intercept: block_intercept(a_bits, b_bits, s),
        })
    }

    pub fn slope() -> GammaPower {
        GammaPower::new(1240)
    }

    pub fn apply(&self, t: &Rat) -> Rat {
        &(&Self::slope().value() * t) + &self.intercept
    }

    /// Same map through the 71 elementary operators.
    pub fn apply_by_composition(&self, ops: &PairOperators, t: &Rat) -> Configuration {
        let c = Configuration::new(self.s.clone(), t.clone()).expect("s nonzero");
        compose_kprime(ops, &self.b_bits, &compose_k(ops, &self.a_bits, &c))
    }
}

pub fn return_map(a_bits: &[u8], b_bits: &[u8], s: &Rat) -> Result<ReturnMap> {
    ReturnMap::new(a_bits, b_bits, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_examples() {
        let s = Rat::ratio(23, 20);
        let p31 = ReturnMap::slope().value();
        let one = Rat::one();
        let z = ReturnMap::new(&[0; 31], &[0; 40], &s).unwrap();
        assert!(z.intercept.is_zero());
        let a = ReturnMap::new(&[1; 31], &[0; 40], &s).unwrap();
        assert_eq!(a.intercept, &one - &p31);
        let b = ReturnMap::new(&[0; 31], &[1; 40], &s).unwrap();
        assert_eq!(b.intercept, &(&p31 - &one) * &s);
        assert!(ReturnMap::new(&[0; 30], &[0; 40], &s).is_err());
    }

    #[test]
    fn matches_composition_and_corner() {
        let ops = PairOperators::theorem2();
        let s = Rat::ratio(-7, 6);
        let a: Vec<u8> = (0..31).map(|i| ((i * 7 + 3) % 5 == 0) as u8).collect();
        let b: Vec<u8> = (0..40).map(|i| ((i * 3 + 1) % 4 == 0) as u8).collect();
        let m = ReturnMap::new(&a, &b, &s).unwrap();
        let t = Rat::ratio(2, 9);
        let c = m.apply_by_composition(&ops, &t);
        assert_eq!(c.s, s);
        assert_eq!(c.t, m.apply(&t));
        let (x0, y0) = corner(&a, &b);
        let p31 = ReturnMap::slope().value();
        assert_eq!(m.intercept, -&(&p31 * &(&x0 - &(&s * &y0))));
    }
}
