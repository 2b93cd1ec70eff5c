use super::operator::{PairOperators, Side};
use crate::arith::Rat;
use crate::error::{Error, Result};

/// An embedding `x -> a x + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffinePair {
    pub a: Rat,
    pub b: Rat,
}

impl AffinePair {
    pub fn new(a: Rat, b: Rat) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::InvalidParameter("embedding slope must be nonzero".into()));
        }
        Ok(AffinePair { a, b })
    }

    pub fn identity() -> Self {
        AffinePair {
            a: Rat::one(),
            b: Rat::zero(),
        }
    }

    /// `self` followed by `outer`.
    pub fn then(&self, outer: &AffinePair) -> AffinePair {
        AffinePair {
            a: &outer.a * &self.a,
            b: &(&outer.a * &self.b) + &outer.b,
        }
    }
}

/// A relative configuration `(s, t)` with the letters applied to reach it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    pub s: Rat,
    pub t: Rat,
    pub word_k: Vec<u8>,
    pub word_kp: Vec<u8>,
    origin: (Rat, Rat),
}

impl Configuration {
    pub fn new(s: Rat, t: Rat) -> Result<Self> {
        if s.is_zero() {
            return Err(Error::InvalidParameter("configuration scale s must be nonzero".into()));
        }
        Ok(Configuration {
            origin: (s.clone(), t.clone()),
            s,
            t,
            word_k: Vec::new(),
            word_kp: Vec::new(),
        })
    }

    /// A configuration reached from an unknown start by the given words;
    /// the start is recovered by running the operators backwards.
    pub fn with_history(
        s: Rat,
        t: Rat,
        word_k: Vec<u8>,
        word_kp: Vec<u8>,
        ops: &PairOperators,
    ) -> Result<Self> {
        if s.is_zero() {
            return Err(Error::InvalidParameter("configuration scale s must be nonzero".into()));
        }
        if word_k.iter().chain(&word_kp).any(|&b| b > 1) {
            return Err(Error::InvalidParameter("words must be 0/1".into()));
        }
        let (mut s0, mut t0) = (s.clone(), t.clone());
        for &b in word_kp.iter().rev() {
            (s0, t0) = ops.op(Side::KPrime, b).invert(&s0, &t0);
        }
        for &b in word_k.iter().rev() {
            (s0, t0) = ops.op(Side::K, b).invert(&s0, &t0);
        }
        Ok(Configuration {
            s,
            t,
            word_k,
            word_kp,
            origin: (s0, t0),
        })
    }

    pub fn origin(&self) -> (&Rat, &Rat) {
        (&self.origin.0, &self.origin.1)
    }

    /// Applies the recorded words to the origin. K- and K'-side operators
    /// commute, so all K letters go first.
    pub fn replay(&self, ops: &PairOperators) -> (Rat, Rat) {
        let (mut s, mut t) = self.origin.clone();
        for &b in &self.word_k {
            (s, t) = ops.op(Side::K, b).apply(&s, &t);
        }
        for &b in &self.word_kp {
            (s, t) = ops.op(Side::KPrime, b).apply(&s, &t);
        }
        (s, t)
    }

    pub fn apply(&self, ops: &PairOperators, side: Side, letter: u8) -> Configuration {
        let (s, t) = ops.op(side, letter).apply(&self.s, &self.t);
        let mut c = self.clone();
        c.s = s;
        c.t = t;
        match side {
            Side::K => c.word_k.push(letter),
            Side::KPrime => c.word_kp.push(letter),
        }
        c
    }
}

/// `(s, t) = (a'/a, (b' - b)/a)`.
pub fn l_map(e: &AffinePair, ep: &AffinePair) -> Result<Configuration> {
    if e.a.is_zero() || ep.a.is_zero() {
        return Err(Error::InvalidParameter("not an embedding".into()));
    }
    Configuration::new(&ep.a / &e.a, &(&ep.b - &e.b) / &e.a)
}

/// Canonical representative `[(x), (s x + t)]`.
pub fn l_inverse(c: &Configuration) -> Result<(AffinePair, AffinePair)> {
    Ok((AffinePair::identity(), AffinePair::new(c.s.clone(), c.t.clone())?))
}

/// `(p^m s, p^m t - (p-1) sum a_k p^(m-1-k))`.
pub fn compose_k(ops: &PairOperators, word: &[u8], c: &Configuration) -> Configuration {
    let p = ops.p();
    let one = Rat::one();
    let mut acc = Rat::zero();
    for &a in word {
        acc = &(&acc * p) + &Rat::from_int(a as i64);
    }
    let pm = p.pow(word.len() as i32);
    let mut out = c.clone();
    out.s = &pm * &c.s;
    out.t = &(&pm * &c.t) - &(&(p - &one) * &acc);
    out.word_k.extend_from_slice(word);
    out
}

/// `(s/q^n, t + (s/q^n)(q-1) sum b_k q^(n-1-k))`.
pub fn compose_kprime(ops: &PairOperators, word: &[u8], c: &Configuration) -> Configuration {
    let q = ops.q();
    let one = Rat::one();
    let mut acc = Rat::zero();
    for &b in word {
        acc = &(&acc * q) + &Rat::from_int(b as i64);
    }
    let s = &c.s / &q.pow(word.len() as i32);
    let mut out = c.clone();
    out.t = &c.t + &(&(&s * &(q - &one)) * &acc);
    out.s = s;
    out.word_kp.extend_from_slice(word);
    out
}
