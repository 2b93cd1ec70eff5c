use crate::arith::{parse_rational, Rat, Rounding};
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckVerdict {
    Pass,
    Fail,
}

impl CheckVerdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            CheckVerdict::Pass
        } else {
            CheckVerdict::Fail
        }
    }
}

impl std::fmt::Display for CheckVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CheckVerdict::Pass => "pass",
            CheckVerdict::Fail => "fail",
        })
    }
}

/// How a printed decimal relates to the exact quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PaperKind {
    /// Printed approximation of a value: truncated or rounded.
    Value,
    /// Printed lower bound of a range: at or below the exact minimum, within
    /// ten units of the last printed digit.
    Lower,
    /// Printed upper bound of a range, mirrored.
    Upper,
}

/// Number of fraction digits in a printed decimal.
pub fn printed_decimals(printed: &str) -> u32 {
    printed
        .split_once('.')
        .map(|(_, f)| f.chars().take_while(char::is_ascii_digit).count() as u32)
        .unwrap_or(0)
}

/// Ten units of the last printed digit.
fn slack(decimals: i32) -> Rat {
    &Rat::from_int(10) / &Rat::pow10(decimals)
}

/// Whether `printed` is a faithful rendering of the exact quantity.
/// `lo`/`hi` are the exact extremes; for `Value` they coincide or `lo` is used.
pub fn paper_match(printed: &str, kind: PaperKind, lo: &Rat, hi: &Rat) -> bool {
    let Ok(p) = parse_rational(printed.trim()) else {
        return false;
    };
    let d = printed_decimals(printed) as i32;
    let target = p.scaled_round(d, Rounding::Trunc);
    match kind {
        PaperKind::Value => {
            lo.scaled_round(d, Rounding::Trunc) == target
                || lo.scaled_round(d, Rounding::HalfEven) == target
        }
        PaperKind::Lower => &p <= lo && &(lo - &p) < &slack(d),
        PaperKind::Upper => &p >= hi && &(&p - hi) < &slack(d),
    }
}

/// Decimal string for `x` rounded outward to `sig` significant digits.
pub fn render_bound(x: &Rat, sig: u32, down: bool) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let sig = sig.max(1) as i32;
    let k = x.log10_floor();
    let decimals = sig - 1 - k;
    let mode = if down { Rounding::Floor } else { Rounding::Ceil };
    let m = x.scaled_round(decimals, mode);
    if (0..=60).contains(&decimals) {
        let exact = &Rat::from_bigint(m) / &Rat::pow10(decimals);
        exact.to_fixed(decimals as u32, Rounding::Trunc)
    } else {
        format!("{m}e{}", -decimals)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub id: String,
    pub description: String,
    pub paper_value: Option<String>,
    pub lo: Rat,
    pub hi: Rat,
    pub verdict: CheckVerdict,
    /// Agreement of `paper_value` with the exact enclosure; reported apart
    /// from the verdict.
    pub paper_match: Option<bool>,
}

impl Entry {
    pub fn new(id: impl Into<String>, description: impl Into<String>, lo: Rat, hi: Rat, ok: bool) -> Self {
        Entry {
            id: id.into(),
            description: description.into(),
            paper_value: None,
            lo,
            hi,
            verdict: CheckVerdict::from_bool(ok),
            paper_match: None,
        }
    }

    pub fn exact(id: impl Into<String>, description: impl Into<String>, v: Rat, ok: bool) -> Self {
        Entry::new(id, description, v.clone(), v, ok)
    }

    pub fn with_paper(mut self, printed: &str, kind: PaperKind) -> Self {
        self.paper_match = Some(paper_match(printed, kind, &self.lo, &self.hi));
        self.paper_value = Some(printed.to_string());
        self
    }

    /// Printed value given as a pair of bounds around the enclosure.
    pub fn with_paper_window(mut self, lo: &str, hi: &str) -> Self {
        let m = paper_match(lo, PaperKind::Lower, &self.lo, &self.hi)
            && paper_match(hi, PaperKind::Upper, &self.lo, &self.hi);
        self.paper_match = Some(m);
        self.paper_value = Some(format!("({lo}, {hi})"));
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == CheckVerdict::Pass
    }

    pub fn to_json(&self, digits: u32) -> Value {
        json!({
            "id": self.id,
            "description": self.description,
            "paper_value": self.paper_value,
            "enclosure_lo": render_bound(&self.lo, digits, true),
            "enclosure_hi": render_bound(&self.hi, digits, false),
            "verdict": self.verdict,
            "paper_match": self.paper_match,
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certificate {
    pub title: String,
    pub mode: String,
    pub notes: Vec<String>,
    pub entries: Vec<Entry>,
}

impl Certificate {
    pub fn new(title: impl Into<String>, mode: impl Into<String>) -> Self {
        Certificate {
            title: title.into(),
            mode: mode.into(),
            notes: Vec::new(),
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, e: Entry) {
        self.entries.push(e);
    }

    pub fn extend(&mut self, other: Certificate) {
        self.notes.extend(other.notes);
        self.entries.extend(other.entries);
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(Entry::passed)
    }

    pub fn failures(&self) -> Vec<&Entry> {
        self.entries.iter().filter(|e| !e.passed()).collect()
    }

    pub fn get(&self, id: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn paper_mismatches(&self) -> Vec<&Entry> {
        self.entries
            .iter()
            .filter(|e| e.paper_match == Some(false))
            .collect()
    }

    pub fn to_json(&self, digits: u32) -> Value {
        json!({
            "title": self.title,
            "mode": self.mode,
            "verdict": CheckVerdict::from_bool(self.passed()),
            "notes": self.notes,
            "entries": self.entries.iter().map(|e| e.to_json(digits)).collect::<Vec<_>>(),
        })
    }
}

/// One observation of a check at one `s` (or on one `s`-subinterval).
#[derive(Clone, Debug)]
pub struct Obs {
    pub id: String,
    pub description: String,
    pub lo: Rat,
    pub hi: Rat,
    pub ok: bool,
}

impl Obs {
    pub fn new(id: impl Into<String>, description: impl Into<String>, v: Rat, ok: bool) -> Self {
        Obs {
            id: id.into(),
            description: description.into(),
            hi: v.clone(),
            lo: v,
            ok,
        }
    }

    pub fn range(id: impl Into<String>, description: impl Into<String>, lo: Rat, hi: Rat, ok: bool) -> Self {
        Obs {
            id: id.into(),
            description: description.into(),
            lo,
            hi,
            ok,
        }
    }
}

/// Folds observations into entries keyed by id, in order of first appearance.
#[derive(Debug, Default)]
pub struct Aggregate {
    order: Vec<String>,
    acc: HashMap<String, (String, Rat, Rat, bool)>,
}

impl Aggregate {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, o: Obs) {
        match self.acc.get_mut(&o.id) {
            Some((_, lo, hi, ok)) => {
                if o.lo < *lo {
                    *lo = o.lo;
                }
                if o.hi > *hi {
                    *hi = o.hi;
                }
                *ok &= o.ok;
            }
            None => {
                self.order.push(o.id.clone());
                self.acc.insert(o.id, (o.description, o.lo, o.hi, o.ok));
            }
        }
    }

    pub fn extend(&mut self, obs: impl IntoIterator<Item = Obs>) {
        for o in obs {
            self.add(o);
        }
    }

    pub fn finish(mut self) -> Vec<Entry> {
        self.order
            .iter()
            .map(|id| {
                let (d, lo, hi, ok) = self.acc.remove(id).expect("known id");
                Entry::new(id.clone(), d, lo, hi, ok)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rat {
        parse_rational(s).unwrap()
    }

    #[test]
    fn value_match_accepts_truncation_or_rounding() {
        let v = r("0.98791511723");
        assert!(!paper_match("0.987915116", PaperKind::Value, &v, &v));
        assert!(paper_match("0.987915117", PaperKind::Value, &v, &v));
        let v = r("1.12201620647");
        assert!(paper_match("1.1220162", PaperKind::Value, &v, &v));
        let v = r("0.98006229924");
        assert!(paper_match("0.980062299", PaperKind::Value, &v, &v));
    }

    #[test]
    fn bounds_must_enclose() {
        let (lo, hi) = (r("0.0254575069"), r("0.43840398217"));
        assert!(paper_match("0.025457501", PaperKind::Lower, &lo, &hi));
        assert!(!paper_match("0.025457507", PaperKind::Lower, &lo, &hi));
        assert!(!paper_match("0.025457490", PaperKind::Lower, &lo, &hi));
        assert!(!paper_match("0.438403979", PaperKind::Upper, &lo, &hi));
        assert!(paper_match("0.438403983", PaperKind::Upper, &lo, &hi));
        let neg = r("-1.9258368285");
        assert!(paper_match("-1.925836829", PaperKind::Lower, &neg, &neg));
    }

    #[test]
    fn outward_rendering() {
        let x = r("0.123456789");
        assert_eq!(render_bound(&x, 4, true), "0.1234");
        assert_eq!(render_bound(&x, 4, false), "0.1235");
        assert_eq!(render_bound(&-&x, 4, true), "-0.1235");
        let tiny = r("1.5e-70");
        assert_eq!(render_bound(&tiny, 2, true), "15e-71");
    }

    #[test]
    fn aggregate_keeps_first_order_and_hull() {
        let mut a = Aggregate::new();
        a.add(Obs::new("b", "", Rat::from_int(2), true));
        a.add(Obs::new("a", "", Rat::from_int(1), true));
        a.add(Obs::new("b", "", Rat::from_int(-1), false));
        let e = a.finish();
        assert_eq!(e[0].id, "b");
        assert_eq!(e[0].lo, Rat::from_int(-1));
        assert_eq!(e[0].hi, Rat::from_int(2));
        assert!(!e[0].passed());
        assert!(e[1].passed());
    }
}
