//! JSON set specifications:
//! `{"kind":"middle","p":{"gamma_exp":40}}`, `{"kind":"middle","p":"3.54"}`,
//! optionally with `"scale"` and `"offset"` decimals.

use super::set::{make_middle_cantor, HomogeneousCantorSet, PlacedCantorSet};
use crate::arith::{parse_rational_at, Rat};
use crate::error::{Error, Result};
use serde_json::{Map, Value};

/// Byte offset of a serde_json error given its 1-based line and column.
pub(crate) fn json_error_pos(text: &str, err: &serde_json::Error) -> usize {
    let mut pos = 0;
    for (i, line) in text.split_inclusive('\n').enumerate() {
        if i + 1 == err.line() {
            return pos + err.column().saturating_sub(1).min(line.len());
        }
        pos += line.len();
    }
    text.len()
}

pub(crate) fn parse_object(text: &str) -> Result<Map<String, Value>> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Error::parse(json_error_pos(text, &e), e.to_string()))?;
    match v {
        Value::Object(m) => Ok(m),
        _ => Err(Error::parse(0, "expected a JSON object")),
    }
}

/// Offset of the first occurrence of `"key"` in the text, for error positions.
pub(crate) fn key_pos(text: &str, key: &str) -> usize {
    text.find(&format!("\"{key}\"")).unwrap_or(0)
}

/// Parses a decimal carried as a JSON string or number.
pub(crate) fn rational_field(text: &str, key: &str, v: &Value) -> Result<Rat> {
    let at = key_pos(text, key);
    match v {
        Value::String(s) => {
            // position of the string literal after the key
            let lit = text[at..]
                .find(&format!("\"{s}\""))
                .map_or(at, |i| at + i + 1);
            parse_rational_at(s, lit)
        }
        Value::Number(n) => parse_rational_at(&n.to_string(), at),
        _ => Err(Error::parse(at, format!("field {key:?} must be a decimal string"))),
    }
}

fn gamma_exp_field(text: &str, v: &Value) -> Result<i64> {
    v.as_i64()
        .ok_or_else(|| Error::parse(key_pos(text, "gamma_exp"), "gamma_exp must be an integer"))
}

fn parse_shape(text: &str, m: &Map<String, Value>) -> Result<HomogeneousCantorSet> {
    match m.get("kind") {
        Some(Value::String(k)) if k == "middle" => {}
        Some(_) => {
            return Err(Error::parse(
                key_pos(text, "kind"),
                "unsupported kind (expected \"middle\")",
            ))
        }
        None => return Err(Error::parse(0, "missing field \"kind\"")),
    }
    let p = m
        .get("p")
        .ok_or_else(|| Error::parse(0, "missing field \"p\""))?;
    match p {
        Value::Object(inner) => {
            let e = inner.get("gamma_exp").ok_or_else(|| {
                Error::parse(key_pos(text, "p"), "expected {\"gamma_exp\": n}")
            })?;
            let e = gamma_exp_field(text, e)?;
            if !(-100_000..=100_000).contains(&e) {
                return Err(Error::OutOfRange(format!("gamma_exp {e} is too large")));
            }
            HomogeneousCantorSet::from_gamma(e)
        }
        other => make_middle_cantor(rational_field(text, "p", other)?),
    }
}

pub fn parse_set_spec(text: &str) -> Result<PlacedCantorSet> {
    let m = parse_object(text)?;
    for key in m.keys() {
        if !["kind", "p", "scale", "offset"].contains(&key.as_str()) {
            return Err(Error::parse(key_pos(text, key), format!("unknown field {key:?}")));
        }
    }
    let shape = parse_shape(text, &m)?;
    let scale = match m.get("scale") {
        Some(v) => rational_field(text, "scale", v)?,
        None => Rat::one(),
    };
    let offset = match m.get("offset") {
        Some(v) => rational_field(text, "offset", v)?,
        None => Rat::zero(),
    };
    PlacedCantorSet::new(shape, scale, offset)
}

pub fn set_spec_json(k: &PlacedCantorSet) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), Value::from("middle"));
    let p = match k.shape.gamma_exp() {
        Some(e) => serde_json::json!({ "gamma_exp": e }),
        None => Value::from(k.shape.p().to_string()),
    };
    m.insert("p".into(), p);
    if !k.scale().eq(&Rat::one()) {
        m.insert("scale".into(), Value::from(k.scale().to_string()));
    }
    if !k.offset().is_zero() {
        m.insert("offset".into(), Value::from(k.offset().to_string()));
    }
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_forms() {
        let a = parse_set_spec(r#"{"kind":"middle","p":{"gamma_exp":40}}"#).unwrap();
        assert_eq!(a.shape.gamma_exp(), Some(40));
        let b = parse_set_spec(r#"{"kind":"middle","p":"3.54"}"#).unwrap();
        assert_eq!(b.shape.p(), &Rat::ratio(354, 100));
        let c = parse_set_spec(r#"{"kind":"middle","p":"3","scale":"-2","offset":"1/2"}"#).unwrap();
        assert_eq!(c.scale(), &Rat::from_int(2));
        assert_eq!(c.offset(), &Rat::ratio(-3, 2));
    }

    #[test]
    fn errors_carry_positions() {
        let text = r#"{"kind":"middle","p":"3.5x"}"#;
        match parse_set_spec(text) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 25),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_set_spec(r#"{"kind":"middle","p":"2"}"#),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(parse_set_spec("{\"kind\":"), Err(Error::Parse { .. })));
    }

    #[test]
    fn round_trip() {
        for text in [
            r#"{"kind":"middle","p":{"gamma_exp":31}}"#,
            r#"{"kind":"middle","p":"5/2","offset":"3"}"#,
        ] {
            let k = parse_set_spec(text).unwrap();
            let again = parse_set_spec(&set_spec_json(&k).to_string()).unwrap();
            assert_eq!(k, again);
        }
    }
}
