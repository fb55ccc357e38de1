//! JSON report plumbing. Rationals are written as exact `p/q` strings so
//! reports are byte-stable across runs.

use serde::Serializer;

use crate::Q;

pub fn ser_q<S: Serializer>(q: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

pub fn ser_q_opt<S: Serializer>(q: &Option<Q>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_str(&q.to_string()),
        None => s.serialize_none(),
    }
}

pub fn de_q<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
    let s = <String as serde::Deserialize>::deserialize(d)?;
    parse_q(&s).map_err(serde::de::Error::custom)
}

/// Parse `p/q` or an integer.
pub fn parse_q(s: &str) -> std::result::Result<Q, String> {
    s.trim().parse::<Q>().map_err(|_| format!("`{s}` is not a rational p/q"))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: serde::Serialize>(value: &T) -> crate::Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| crate::Error::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_parse() {
        assert_eq!(parse_q("5/4").unwrap(), Q::new(5.into(), 4.into()));
        assert_eq!(parse_q(" 2 ").unwrap(), Q::from_integer(2.into()));
        assert!(parse_q("1.5").is_err());
    }
}
