use super::Rat;
use crate::error::{Error, Result};
use num_bigint::BigInt;

/// Parses `"3.54"`, `"-1.5e-3"`, `"7/2"` or `"0.5/3"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rat> {
    parse_rational_at(text, 0)
}

/// As [`parse_rational`], reporting errors relative to `offset`.
pub fn parse_rational_at(text: &str, offset: usize) -> Result<Rat> {
    let lead = text.len() - text.trim_start().len();
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(Error::parse(offset, "empty number"));
    }
    match trimmed.find('/') {
        Some(slash) => {
            let n = parse_decimal(&trimmed[..slash], offset + lead)?;
            let d = parse_decimal(&trimmed[slash + 1..], offset + lead + slash + 1)?;
            if d.is_zero() {
                return Err(Error::parse(offset + lead + slash + 1, "zero denominator"));
            }
            Ok(&n / &d)
        }
        None => parse_decimal(trimmed, offset + lead),
    }
}

fn parse_decimal(s: &str, offset: usize) -> Result<Rat> {
    let bytes = s.as_bytes();
    let mut i = 0;
    let mut negative = false;
    if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
        negative = bytes[i] == b'-';
        i += 1;
    }
    let mut mantissa = String::new();
    let mut frac_digits: i64 = 0;
    let mut seen_digit = false;
    let mut seen_dot = false;
    while i < bytes.len() {
        match bytes[i] {
            c @ b'0'..=b'9' => {
                mantissa.push(c as char);
                seen_digit = true;
                if seen_dot {
                    frac_digits += 1;
                }
            }
            b'.' if !seen_dot => seen_dot = true,
            b'_' if seen_digit => {}
            _ => break,
        }
        i += 1;
    }
    if !seen_digit {
        return Err(Error::parse(offset + i, "expected digits"));
    }
    let mut exp: i64 = 0;
    if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
        i += 1;
        let start = i;
        if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            i += 1;
        }
        let digits_start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if i == digits_start {
            return Err(Error::parse(offset + i, "expected exponent digits"));
        }
        exp = s[start..i]
            .parse::<i64>()
            .map_err(|_| Error::parse(offset + start, "exponent out of range"))?;
        if exp.abs() > 100_000 {
            return Err(Error::parse(offset + start, "exponent out of range"));
        }
    }
    if i != bytes.len() {
        return Err(Error::parse(offset + i, "unexpected character"));
    }
    if mantissa.len() > 100_000 {
        return Err(Error::parse(offset, "number too long"));
    }
    let mut m: BigInt = mantissa
        .parse()
        .map_err(|_| Error::parse(offset, "invalid digits"))?;
    if negative {
        m = -m;
    }
    let shift = exp - frac_digits;
    let v = Rat::from_bigint(m);
    Ok(if shift == 0 {
        v
    } else {
        &v * &Rat::pow10(shift as i32)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals_and_ratios() {
        assert_eq!(parse_rational("3.54").unwrap(), Rat::ratio(354, 100));
        assert_eq!(parse_rational(" -1.5e-3 ").unwrap(), Rat::ratio(-15, 10000));
        assert_eq!(parse_rational("7/2").unwrap(), Rat::ratio(7, 2));
        assert_eq!(parse_rational(".5").unwrap(), Rat::ratio(1, 2));
        assert_eq!(parse_rational("2.").unwrap(), Rat::from_int(2));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_rational("3.5x"),
            Err(Error::Parse {
                pos: 3,
                msg: "unexpected character".into()
            })
        );
        assert!(matches!(parse_rational("1/0"), Err(Error::Parse { pos: 2, .. })));
        assert!(parse_rational("").is_err());
        assert!(parse_rational("-").is_err());
        assert!(parse_rational("1e").is_err());
    }
}
