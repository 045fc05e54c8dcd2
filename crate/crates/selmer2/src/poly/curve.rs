//! Curve invariants: the coefficient tuple `c = (c_2, ..., c_{2n+2})` of a
//! monic even-degree hyperelliptic curve `y^2 = f(x)` with the trace-zero
//! convention `c_1 = 0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use super::int_poly::IntPoly;
use crate::error::Error;
use crate::Result;

/// The invariant tuple of `f(x) = x^(2n+2) + c_2 x^(2n) + ... + c_{2n+2}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CurveInvariants {
    n: usize,
    c: Vec<BigInt>,
}

impl CurveInvariants {
    /// Builds invariants of genus `n >= 1` from `(c_2, ..., c_{2n+2})`.
    pub fn new(n: usize, c: Vec<BigInt>) -> Result<Self> {
        if n < 1 {
            return Err(Error::domain("genus must be at least 1"));
        }
        if c.len() != 2 * n + 1 {
            return Err(Error::domain(format!(
                "expected {} coefficients c_2..c_{}, got {}",
                2 * n + 1,
                2 * n + 2,
                c.len()
            )));
        }
        Ok(CurveInvariants { n, c })
    }

    pub fn from_i64(n: usize, c: &[i64]) -> Result<Self> {
        CurveInvariants::new(n, c.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Reads the invariants off a monic integral polynomial of even degree
    /// `2n+2` with vanishing `x^(2n+1)` coefficient.
    pub fn from_poly(f: &IntPoly) -> Result<Self> {
        let d = f.degree().ok_or_else(|| Error::domain("zero polynomial"))?;
        if d < 4 || d % 2 != 0 {
            return Err(Error::domain(format!(
                "degree must be even and at least 4, got {}",
                d
            )));
        }
        if !f.is_monic() {
            return Err(Error::domain("polynomial must be monic"));
        }
        let n = d / 2 - 1;
        if !f.coeff(d - 1).is_zero() {
            return Err(Error::domain(
                "coefficient c_1 must vanish (trace-zero convention)",
            ));
        }
        let c: Vec<BigInt> = (2..=d).map(|k| f.coeff(d - k)).collect();
        CurveInvariants::new(n, c)
    }

    pub fn genus(&self) -> usize {
        self.n
    }

    /// Degree of `f`, `2n + 2`.
    pub fn dim(&self) -> usize {
        2 * self.n + 2
    }

    /// Total degree `d = (2n+2)(2n+1)` of the discriminant; the height
    /// normalization exponent.
    pub fn height_degree(&self) -> usize {
        (2 * self.n + 2) * (2 * self.n + 1)
    }

    /// Coefficient `c_k` for `2 <= k <= 2n+2`.
    pub fn c(&self, k: usize) -> &BigInt {
        &self.c[k - 2]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    /// The defining polynomial `f_c`.
    pub fn poly(&self) -> IntPoly {
        let d = self.dim();
        let mut v = vec![BigInt::zero(); d + 1];
        v[d] = BigInt::one();
        for k in 2..=d {
            v[d - k] = self.c(k).clone();
        }
        IntPoly::new(v)
    }

    /// Discriminant with the normalization
    /// `(-1)^(D(D-1)/2) Res(f, f') / lc(f)` for `D = 2n+2`.
    pub fn discriminant(&self) -> BigInt {
        let f = self.poly();
        let res = f
            .resultant(&f.derivative())
            .expect("monic polynomial and derivative are nonzero");
        let d = self.dim();
        if (d * (d - 1) / 2) % 2 == 1 {
            -res
        } else {
            res
        }
    }

    /// Exact comparison `H(c) < X`: holds iff `|c_k|^d < X^k` for all `k`.
    pub fn height_less_than(&self, x: &BigRational) -> bool {
        let d = self.height_degree();
        for k in 2..=self.dim() {
            let lhs = BigRational::from(self.c(k).abs().pow(d as u32));
            let rhs = pow_rational(x, k);
            if lhs >= rhs {
                return false;
            }
        }
        true
    }

    /// The height as `max_k |c_k|^(d/k)`, reported exactly as the pair
    /// `(|c_k|, d/k)` realizing the maximum, or `None` for the zero tuple.
    pub fn height_witness(&self) -> Option<(BigInt, usize)> {
        let d = self.height_degree();
        let mut best: Option<(BigInt, usize)> = None;
        for k in 2..=self.dim() {
            let a = self.c(k).abs();
            if a.is_zero() {
                continue;
            }
            let better = match &best {
                None => true,
                Some((b, kb)) => {
                    // |a|^(d/k) > |b|^(d/kb)  iff  a^(d*kb) > b^(d*k)
                    a.pow((d * *kb) as u32) > b.pow((d * k) as u32)
                }
            };
            if better {
                best = Some((a, k));
            }
        }
        best.map(|(a, k)| (a, d / k))
    }

    /// Twists `c_k -> u^(2k) c_k`, the isomorphism `C(c) = C(u^2 c_2, ...)`.
    pub fn twist(&self, u: &BigInt) -> Self {
        let c = (2..=self.dim())
            .map(|k| self.c(k) * u.pow(2 * k as u32))
            .collect();
        CurveInvariants { n: self.n, c }
    }
}

fn pow_rational(x: &BigRational, e: usize) -> BigRational {
    BigRational::new(x.numer().pow(e as u32), x.denom().pow(e as u32))
}

impl fmt::Debug for CurveInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C(n={}; {})", self.n, self.poly())
    }
}

impl fmt::Display for CurveInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disc_of_x6_is_zero() {
        let c = CurveInvariants::from_i64(2, &[0, 0, 0, 0, 0]).unwrap();
        assert!(c.discriminant().is_zero());
    }

    #[test]
    fn disc_of_x6_plus_1() {
        let c = CurveInvariants::from_i64(2, &[0, 0, 0, 0, 1]).unwrap();
        assert_eq!(c.discriminant(), BigInt::from(-46656));
    }

    #[test]
    fn disc_of_x4_plus_1() {
        // disc(x^n + a) = (-1)^(n(n-1)/2) n^n a^(n-1); for n = 4, a = 1
        // the closed form gives +256 (the sign (-1)^6 is positive).
        let c = CurveInvariants::from_i64(1, &[0, 0, 1]).unwrap();
        assert_eq!(c.discriminant(), BigInt::from(256));
    }

    #[test]
    fn poly_roundtrip() {
        let c = CurveInvariants::from_i64(2, &[-1, 2, 0, 5, 3]).unwrap();
        let f = c.poly();
        assert_eq!(CurveInvariants::from_poly(&f).unwrap(), c);
        assert_eq!(f.coeff(6), BigInt::one());
        assert_eq!(f.coeff(4), BigInt::from(-1));
        assert_eq!(f.coeff(0), BigInt::from(3));
    }

    #[test]
    fn nonzero_c1_rejected() {
        let f = IntPoly::from_i64(&[1, 0, 0, 0, 0, 1, 1]);
        assert!(CurveInvariants::from_poly(&f).is_err());
    }

    #[test]
    fn height_comparison_exact() {
        // H(x^6 + 3) = 3^(30/6) = 243
        let c = CurveInvariants::from_i64(2, &[0, 0, 0, 0, 3]).unwrap();
        let w = c.height_witness().unwrap();
        assert_eq!(w, (BigInt::from(3), 5));
        assert!(c.height_less_than(&BigRational::from(BigInt::from(244))));
        assert!(!c.height_less_than(&BigRational::from(BigInt::from(243))));
    }
}
