//! Dense univariate polynomials over `Q`, stored as an integer polynomial
//! with a single positive denominator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use super::int_poly::IntPoly;
use crate::error::Error;
use crate::Result;

/// A rational polynomial `num / den`, with `den > 0` and
/// `gcd(content(num), den) = 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct RatPoly {
    num: IntPoly,
    den: BigInt,
}

impl RatPoly {
    pub fn new(num: IntPoly, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut num = num;
        let mut den = den;
        if den.is_negative() {
            num = num.neg();
            den = -den;
        }
        if num.is_zero() {
            return RatPoly {
                num,
                den: BigInt::one(),
            };
        }
        let g = num.content().gcd(&den);
        if !g.is_one() {
            num = IntPoly::new(num.coeffs().iter().map(|c| c / &g).collect());
            den /= &g;
        }
        RatPoly { num, den }
    }

    pub fn from_int(p: IntPoly) -> Self {
        RatPoly {
            num: p,
            den: BigInt::one(),
        }
    }

    pub fn from_rationals(coeffs: &[BigRational]) -> Self {
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let num = IntPoly::new(
            coeffs
                .iter()
                .map(|c| c.numer() * (&den / c.denom()))
                .collect(),
        );
        RatPoly::new(num, den)
    }

    pub fn to_rationals(&self, len: usize) -> Vec<BigRational> {
        (0..len).map(|i| self.coeff(i)).collect()
    }

    pub fn zero() -> Self {
        RatPoly::from_int(IntPoly::zero())
    }

    pub fn one() -> Self {
        RatPoly::from_int(IntPoly::one())
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn degree(&self) -> Option<usize> {
        self.num.degree()
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        BigRational::new(self.num.coeff(k), self.den.clone())
    }

    pub fn lc(&self) -> BigRational {
        BigRational::new(self.num.lc(), self.den.clone())
    }

    /// Integer form if every coefficient is integral.
    pub fn as_integer(&self) -> Option<IntPoly> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        RatPoly {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        RatPoly::new(
            self.num
                .scale(&other.den)
                .add(&other.num.scale(&self.den)),
            &self.den * &other.den,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        RatPoly::new(self.num.mul(&other.num), &self.den * &other.den)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RatPoly::new(self.num.scale(c.numer()), &self.den * c.denom())
    }

    pub fn shift(&self, k: usize) -> Self {
        RatPoly {
            num: self.num.shift(k),
            den: self.den.clone(),
        }
    }

    pub fn derivative(&self) -> Self {
        RatPoly::new(self.num.derivative(), self.den.clone())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.num.coeffs().iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc / BigRational::from(self.den.clone())
    }

    /// Euclidean division over `Q`: `self = q * divisor + r`, `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        if divisor.is_zero() {
            return Err(Error::domain("division by the zero polynomial"));
        }
        let dd = divisor.num.deg();
        let lc_inv = {
            let l = divisor.lc();
            if l.is_zero() {
                return Err(Error::domain("division by the zero polynomial"));
            }
            l.recip()
        };
        let mut rem: Vec<BigRational> = {
            let n = self.num.degree().map_or(0, |d| d + 1);
            self.to_rationals(n)
        };
        if rem.len() <= dd {
            return Ok((RatPoly::zero(), self.clone()));
        }
        let dcoef: Vec<BigRational> = divisor.to_rationals(dd + 1);
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = &rem[i] * &lc_inv;
            if q.is_zero() {
                continue;
            }
            for (j, b) in dcoef.iter().enumerate() {
                let t = &q * b;
                rem[i - dd + j] -= t;
            }
            quot[i - dd] = q;
        }
        Ok((
            RatPoly::from_rationals(&quot),
            RatPoly::from_rationals(&rem[..dd.min(rem.len())]),
        ))
    }

    /// Exact division; errors on a nonzero remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::domain("inexact polynomial division over Q"));
        }
        Ok(q)
    }

    /// Remainder modulo a monic integer polynomial.
    pub fn reduce_mod(&self, modulus: &IntPoly) -> Self {
        debug_assert!(modulus.is_monic());
        let d = modulus.deg();
        if self.num.degree().map_or(true, |dn| dn < d) {
            return self.clone();
        }
        let (_, r) = self.num.div_rem_monic(modulus);
        RatPoly::new(r, self.den.clone())
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_representation() {
        let p = RatPoly::new(IntPoly::from_i64(&[2, 4]), BigInt::from(-6));
        assert_eq!(*p.denominator(), BigInt::from(3));
        assert_eq!(p.coeff(0), BigRational::new(BigInt::from(-1), BigInt::from(3)));
    }

    #[test]
    fn divide_difference_quotient() {
        // (f(t) - f(1)) / (t - 1) for f = t^3: t^2 + t + 1
        let f = RatPoly::from_int(IntPoly::from_i64(&[-1, 0, 0, 1]));
        let d = RatPoly::from_int(IntPoly::from_i64(&[-1, 1]));
        let q = f.div_exact(&d).unwrap();
        assert_eq!(q, RatPoly::from_int(IntPoly::from_i64(&[1, 1, 1])));
    }

    #[test]
    fn reduce_mod_monic() {
        // x^6 mod (x^6 + 3) = -3
        let m = IntPoly::from_i64(&[3, 0, 0, 0, 0, 0, 1]);
        let p = RatPoly::from_int(IntPoly::monomial(BigInt::one(), 6));
        assert_eq!(p.reduce_mod(&m), RatPoly::from_int(IntPoly::from_i64(&[-3])));
    }
}
