//! Configurations as JSON:
//! `{"s":"1.13","t":"0.5","word_K":"0110","word_Kp":""}`, where `"s"` may
//! also be `{"gamma_exp":e}`.

use super::config::Configuration;
use super::operator::PairOperators;
use crate::arith::GammaPower;
use crate::cantor::spec::{key_pos, parse_object, rational_field};
use crate::error::{Error, Result};
use serde_json::{json, Value};

fn word_field(text: &str, key: &str, v: Option<&Value>) -> Result<Vec<u8>> {
    let Some(v) = v else { return Ok(Vec::new()) };
    let at = key_pos(text, key);
    let s = v
        .as_str()
        .ok_or_else(|| Error::parse(at, format!("{key} must be a 0/1 string")))?;
    s.bytes()
        .enumerate()
        .map(|(i, b)| match b {
            b'0' => Ok(0),
            b'1' => Ok(1),
            _ => Err(Error::parse(
                text[at..].find(&format!("\"{s}\"")).map_or(at, |j| at + j + 1 + i),
                format!("{key} may contain only 0 and 1"),
            )),
        })
        .collect()
}

pub fn parse_configuration(text: &str, ops: &PairOperators) -> Result<Configuration> {
    let m = parse_object(text)?;
    for key in m.keys() {
        if !["s", "t", "word_K", "word_Kp"].contains(&key.as_str()) {
            return Err(Error::parse(key_pos(text, key), format!("unknown field {key:?}")));
        }
    }
    let s = match m.get("s") {
        Some(Value::Object(o)) => {
            let e = o.get("gamma_exp").and_then(Value::as_i64).ok_or_else(|| {
                Error::parse(key_pos(text, "s"), "expected {\"gamma_exp\": n}")
            })?;
            if !(-100_000..=100_000).contains(&e) {
                return Err(Error::OutOfRange(format!("gamma_exp {e} is too large")));
            }
            GammaPower::new(e).value()
        }
        Some(v) => rational_field(text, "s", v)?,
        None => return Err(Error::parse(0, "missing field \"s\"")),
    };
    let t = match m.get("t") {
        Some(v) => rational_field(text, "t", v)?,
        None => return Err(Error::parse(0, "missing field \"t\"")),
    };
    let wk = word_field(text, "word_K", m.get("word_K"))?;
    let wkp = word_field(text, "word_Kp", m.get("word_Kp"))?;
    Configuration::with_history(s, t, wk, wkp, ops)
}

fn word_string(w: &[u8]) -> String {
    w.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect()
}

/// Values are written as exact fractions when small and otherwise to 25
/// significant digits, so only the words round-trip exactly in general.
pub fn configuration_json(c: &Configuration) -> Value {
    json!({
        "s": c.s.to_string(),
        "t": c.t.to_string(),
        "word_K": word_string(&c.word_k),
        "word_Kp": word_string(&c.word_kp),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rat;

    #[test]
    fn parse_and_write() {
        let ops = PairOperators::theorem2();
        let c = parse_configuration(r#"{"s":"113/100","t":"0.5","word_K":"01","word_Kp":""}"#, &ops)
            .unwrap();
        assert_eq!(c.word_k, vec![0, 1]);
        assert_eq!(c.replay(&ops), (c.s.clone(), c.t.clone()));
        let g = parse_configuration(r#"{"s":{"gamma_exp":1},"t":0}"#, &ops).unwrap();
        assert_eq!(g.s, Rat::ratio(10321, 10000));
        let v = configuration_json(&Configuration::new(Rat::ratio(3, 2), Rat::ratio(1, 4)).unwrap());
        let back = parse_configuration(&v.to_string(), &ops).unwrap();
        assert_eq!(back.s, Rat::ratio(3, 2));
    }

    #[test]
    fn bad_words_and_zero_scale() {
        let ops = PairOperators::theorem2();
        let text = r#"{"s":"1","t":"0","word_K":"012"}"#;
        match parse_configuration(text, &ops) {
            Err(Error::Parse { pos, .. }) => assert_eq!(&text[pos..pos + 1], "2"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_configuration(r#"{"s":"0","t":"0"}"#, &ops),
            Err(Error::InvalidParameter(_))
        ));
    }
}
