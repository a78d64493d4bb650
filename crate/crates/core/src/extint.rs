//! Integers extended by `+∞`, with min-plus conventions.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An element of `ℤ ∪ {∞}`. `Inf` compares greater than every finite value
/// and absorbs addition.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ExtInt {
    Fin(i64),
    Inf,
}

impl ExtInt {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtInt::Fin(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::Fin(v) => Some(v),
            ExtInt::Inf => None,
        }
    }

    /// Shifts a finite value by `lambda`; `∞` stays `∞`.
    pub fn shift(self, lambda: i64) -> ExtInt {
        match self {
            ExtInt::Fin(v) => ExtInt::Fin(v + lambda),
            ExtInt::Inf => ExtInt::Inf,
        }
    }

    /// Text rendering, `∞` or the ASCII fallback `inf`.
    pub fn render(self, ascii: bool) -> String {
        match self {
            ExtInt::Fin(v) => v.to_string(),
            ExtInt::Inf if ascii => "inf".to_string(),
            ExtInt::Inf => "∞".to_string(),
        }
    }
}

impl From<i64> for ExtInt {
    fn from(v: i64) -> Self {
        ExtInt::Fin(v)
    }
}

impl Ord for ExtInt {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtInt::Fin(a), ExtInt::Fin(b)) => a.cmp(b),
            (ExtInt::Fin(_), ExtInt::Inf) => Ordering::Less,
            (ExtInt::Inf, ExtInt::Fin(_)) => Ordering::Greater,
            (ExtInt::Inf, ExtInt::Inf) => Ordering::Equal,
        }
    }
}

impl PartialOrd for ExtInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for ExtInt {
    type Output = ExtInt;

    fn add(self, rhs: ExtInt) -> ExtInt {
        match (self, rhs) {
            (ExtInt::Fin(a), ExtInt::Fin(b)) => ExtInt::Fin(a + b),
            _ => ExtInt::Inf,
        }
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

/// Finite values serialize as JSON integers, `∞` as the string `"inf"`.
impl Serialize for ExtInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtInt::Fin(v) => serializer.serialize_i64(*v),
            ExtInt::Inf => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ExtIntVisitor;

        impl Visitor<'_> for ExtIntVisitor {
            type Value = ExtInt;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or the string \"inf\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtInt, E> {
                Ok(ExtInt::Fin(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtInt, E> {
                i64::try_from(v)
                    .map(ExtInt::Fin)
                    .map_err(|_| E::custom("integer out of range"))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtInt, E> {
                if v == "inf" {
                    Ok(ExtInt::Inf)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }
        }

        deserializer.deserialize_any(ExtIntVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_absorbs_and_dominates() {
        assert_eq!(ExtInt::Fin(3) + ExtInt::Inf, ExtInt::Inf);
        assert!(ExtInt::Fin(i64::MAX) < ExtInt::Inf);
        assert_eq!(ExtInt::Inf.shift(-5), ExtInt::Inf);
        assert_eq!(ExtInt::Fin(1).shift(-1), ExtInt::Fin(0));
    }

    #[test]
    fn json_encoding() {
        let v = vec![ExtInt::Fin(1), ExtInt::Inf, ExtInt::Fin(-2)];
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"[1,"inf",-2]"#);
        let back: Vec<ExtInt> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        assert!(serde_json::from_str::<ExtInt>(r#""infinity""#).is_err());
    }
}
