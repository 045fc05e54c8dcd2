//! Text grammar used repo-wide: integer-coefficient expressions in `x`
//! with `^`, `*`, `+`, `-` (e.g. "x^6+3"), or a comma list
//! "c2,...,c(2n+2)" under the trace-zero convention (`c_1` absent).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::curve::CurveInvariants;
use super::int_poly::IntPoly;
use crate::error::Error;
use crate::Result;

/// Parses a polynomial expression like "x^6 - 2*x + 7".
pub fn parse_poly(input: &str) -> Result<IntPoly> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::parse("empty polynomial"));
    }
    let mut terms: Vec<(BigInt, usize)> = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0usize;
    let mut sign = BigInt::one();
    // leading sign
    if bytes[0] == b'+' {
        i = 1;
    } else if bytes[0] == b'-' {
        sign = -BigInt::one();
        i = 1;
    }
    while i < bytes.len() {
        let start = i;
        // coefficient digits
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let mut coeff = if i > start {
            s[start..i]
                .parse::<BigInt>()
                .map_err(|e| Error::parse(format!("bad integer: {}", e)))?
        } else {
            BigInt::one()
        };
        coeff *= &sign;
        // optional '*'
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
            if i >= bytes.len() || bytes[i] != b'x' {
                return Err(Error::parse("expected x after '*'"));
            }
        }
        let mut exp = 0usize;
        if i < bytes.len() && bytes[i] == b'x' {
            i += 1;
            exp = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let es = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == es {
                    return Err(Error::parse("expected exponent after '^'"));
                }
                exp = s[es..i]
                    .parse::<usize>()
                    .map_err(|e| Error::parse(format!("bad exponent: {}", e)))?;
            }
        } else if i == start {
            return Err(Error::parse(format!(
                "unexpected character '{}' at position {}",
                s.chars().nth(i).unwrap_or('?'),
                i
            )));
        }
        terms.push((coeff, exp));
        if i < bytes.len() {
            match bytes[i] {
                b'+' => {
                    sign = BigInt::one();
                    i += 1;
                }
                b'-' => {
                    sign = -BigInt::one();
                    i += 1;
                }
                _ => {
                    return Err(Error::parse(format!(
                        "expected '+' or '-' at position {}",
                        i
                    )))
                }
            }
            if i >= bytes.len() {
                return Err(Error::parse("trailing operator"));
            }
        }
    }
    let deg = terms.iter().map(|(_, e)| *e).max().unwrap_or(0);
    let mut coeffs = vec![BigInt::zero(); deg + 1];
    for (c, e) in terms {
        coeffs[e] += c;
    }
    Ok(IntPoly::new(coeffs))
}

/// Parses curve invariants: either a polynomial expression (must be monic,
/// even degree, trace-zero) or a comma list `c_2, ..., c_{2n+2}`.
pub fn parse_curve(input: &str) -> Result<CurveInvariants> {
    let trimmed = input.trim();
    if trimmed.contains(',') {
        let c: Vec<BigInt> = trimmed
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<BigInt>()
                    .map_err(|e| Error::parse(format!("bad coefficient '{}': {}", t.trim(), e)))
            })
            .collect::<Result<_>>()?;
        let len = c.len();
        if len < 3 || len % 2 == 0 {
            return Err(Error::parse(format!(
                "coefficient list must have odd length 2n+1 >= 3, got {}",
                len
            )));
        }
        let n = (len - 1) / 2;
        CurveInvariants::new(n, c)
    } else {
        let f = parse_poly(trimmed)?;
        if !f.is_monic() {
            return Err(Error::parse(
                "curve polynomial must be monic with leading coefficient 1",
            ));
        }
        CurveInvariants::from_poly(&f).map_err(|e| Error::parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_expressions() {
        assert_eq!(parse_poly("x^6+3").unwrap(), IntPoly::from_i64(&[3, 0, 0, 0, 0, 0, 1]));
        assert_eq!(parse_poly("x").unwrap(), IntPoly::from_i64(&[0, 1]));
        assert_eq!(parse_poly("-x^2 + 2*x - 1").unwrap(), IntPoly::from_i64(&[-1, 2, -1]));
        assert_eq!(parse_poly("7").unwrap(), IntPoly::from_i64(&[7]));
        assert_eq!(parse_poly("x^4+x+1").unwrap(), IntPoly::from_i64(&[1, 1, 0, 0, 1]));
    }

    #[test]
    fn merged_terms() {
        assert_eq!(parse_poly("x^2+x^2").unwrap(), IntPoly::from_i64(&[0, 0, 2]));
    }

    #[test]
    fn curve_from_list_and_poly_agree() {
        let a = parse_curve("0,0,0,0,3").unwrap();
        let b = parse_curve("x^6+3").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.genus(), 2);
    }

    #[test]
    fn non_monic_rejected() {
        assert!(parse_curve("2*x^6+3").is_err());
    }

    #[test]
    fn garbage_rejected() {
        assert!(parse_poly("x^").is_err());
        assert!(parse_poly("x++1").is_err());
        assert!(parse_poly("y^2").is_err());
        assert!(parse_poly("").is_err());
    }
}
