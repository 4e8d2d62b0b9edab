use serde::{Serialize, Serializer};

/// A non-negative real that may be `+inf`. Serializes infinity as the
/// string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ExtendedReal(pub f64);

impl ExtendedReal {
    pub const INFINITY: Self = Self(f64::INFINITY);

    /// `1 / x` with `1 / 0 = +inf`.
    pub fn reciprocal(x: f64) -> Self {
        if x == 0.0 {
            Self::INFINITY
        } else {
            Self(1.0 / x)
        }
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl std::fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl Serialize for ExtendedReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_encoding() {
        assert_eq!(serde_json::to_string(&ExtendedReal::reciprocal(0.0)).unwrap(), "\"inf\"");
        assert_eq!(serde_json::to_string(&ExtendedReal::reciprocal(2.0)).unwrap(), "0.5");
    }
}
