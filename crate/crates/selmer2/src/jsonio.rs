//! JSON encoding helpers. Exact rationals serialize as strings "p/q"
//! (plain "p" for integers) so no precision is lost on the wire.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};

use crate::error::Error;
use crate::linalg::RatMat;
use crate::Result;

pub fn rational_to_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn rational_to_value(x: &BigRational) -> Value {
    Value::String(rational_to_string(x))
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|e| Error::parse(format!("bad numerator '{}': {}", num, e)))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|e| Error::parse(format!("bad denominator '{}': {}", den, e)))?;
        if d == BigInt::from(0) {
            return Err(Error::parse("zero denominator"));
        }
        Ok(BigRational::new(n, d))
    } else {
        let n: BigInt = s
            .parse()
            .map_err(|e| Error::parse(format!("bad integer '{}': {}", s, e)))?;
        Ok(BigRational::from(n))
    }
}

pub fn rationals_to_value(xs: &[BigRational]) -> Value {
    Value::Array(xs.iter().map(rational_to_value).collect())
}

pub fn matrix_to_value(m: &RatMat) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| rationals_to_value(&m.row(i)))
            .collect(),
    )
}

pub fn bigint_to_value(x: &BigInt) -> Value {
    // Arbitrary-precision integers go out as strings when they exceed i64.
    match i64::try_from(x.clone()) {
        Ok(v) => json!(v),
        Err(_) => Value::String(x.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let x = BigRational::new(BigInt::from(-7), BigInt::from(12));
        assert_eq!(rational_to_string(&x), "-7/12");
        assert_eq!(parse_rational("-7/12").unwrap(), x);
        assert_eq!(parse_rational("5").unwrap(), BigRational::from(BigInt::from(5)));
    }
}
