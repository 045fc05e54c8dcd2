//! Dense univariate polynomials over `Z`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::Error;
use crate::Result;

/// A polynomial with arbitrary-precision integer coefficients, stored dense,
/// lowest degree first. The zero polynomial is the empty coefficient vector;
/// a normalized polynomial never has a trailing zero coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Builds a polynomial from coefficients (lowest degree first),
    /// dropping trailing zeros.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        IntPoly { coeffs: v }
    }

    pub fn x() -> Self {
        IntPoly::monomial(BigInt::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree of a known-nonzero polynomial.
    ///
    /// Panics on the zero polynomial; callers guard with `is_zero`.
    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn neg(&self) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) + other.coeff(i));
        }
        IntPoly::new(v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) - other.coeff(i));
        }
        IntPoly::new(v)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPoly::new(v)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs: v }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Content: gcd of the coefficients (non-negative), zero for zero.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with the sign of the leading coefficient preserved.
    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
        }
    }

    /// Euclidean division by a monic divisor, exact over `Z`.
    pub fn div_rem_monic(&self, divisor: &Self) -> (Self, Self) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let d = divisor.deg();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (IntPoly::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let q = std::mem::replace(&mut rem[i], BigInt::zero());
            if q.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate().take(d) {
                rem[i - d + j] -= &q * b;
            }
            quot[i - d] = q;
        }
        rem.truncate(d);
        (IntPoly::new(quot), IntPoly::new(rem))
    }

    /// Exact division; errors if `divisor` does not divide `self` over `Z`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::domain("division by the zero polynomial"));
        }
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        let d = divisor.deg();
        let lc = divisor.lc();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d && !(d == 0) {
            return Err(Error::domain("inexact polynomial division"));
        }
        let n = rem.len();
        let mut quot = vec![BigInt::zero(); n.saturating_sub(d)];
        for i in (d..n).rev() {
            let (q, r) = rem[i].div_rem(&lc);
            if !r.is_zero() {
                return Err(Error::domain("inexact polynomial division"));
            }
            rem[i] = BigInt::zero();
            if q.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate().take(d) {
                rem[i - d + j] -= &q * b;
            }
            quot[i - d] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::domain("inexact polynomial division"));
        }
        Ok(IntPoly::new(quot))
    }

    /// Pseudo-remainder: returns `(r, k)` with `r = lc(b)^k * self mod b`,
    /// where `k` counts the reduction steps actually taken.
    fn pseudo_rem(&self, b: &Self) -> (Self, usize) {
        let db = b.deg();
        let lb = b.lc();
        let mut r = self.clone();
        let mut k = 0usize;
        while !r.is_zero() && r.deg() >= db {
            let sh = r.deg() - db;
            let lr = r.lc();
            r = r.scale(&lb).sub(&b.scale(&lr).shift(sh));
            k += 1;
        }
        (r, k)
    }

    /// Polynomial gcd over `Z`, primitive with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return normalize_sign(other.primitive_part());
        }
        if other.is_zero() {
            return normalize_sign(self.primitive_part());
        }
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).0.primitive_part();
            a = b;
            b = r;
        }
        normalize_sign(a.primitive_part())
    }

    /// Resultant `Res(a, b)` by a pseudo-remainder sequence with exact
    /// correction factors, consistent with the product-of-root-differences
    /// definition `Res(a,b) = lc(a)^deg(b) * lc(b)^deg(a) * prod (alpha_i - beta_j)`.
    pub fn resultant(&self, other: &Self) -> Result<BigInt> {
        if self.is_zero() || other.is_zero() {
            return Err(Error::domain("resultant of the zero polynomial"));
        }
        let mut a = self.clone();
        let mut b = other.clone();
        let mut negate = false;
        // Res(a,b) = sign * num / den, assembled along the remainder chain:
        //   Res(a,b) = (-1)^(da*db) lc(b)^da prod_j a(beta_j)
        //   prod_j a(beta_j) = Res(b,r) / lc(b)^(dr + k*db)   for r = lc(b)^k a mod b
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        loop {
            let da = a.deg();
            let db = b.deg();
            if db == 0 {
                num *= pow_bigint(&b.lc(), da);
                break;
            }
            if da < db {
                if (da * db) % 2 == 1 {
                    negate = !negate;
                }
                std::mem::swap(&mut a, &mut b);
                continue;
            }
            let (r, k) = a.pseudo_rem(&b);
            if r.is_zero() {
                return Ok(BigInt::zero());
            }
            if (da * db) % 2 == 1 {
                negate = !negate;
            }
            let lb = b.lc();
            num *= pow_bigint(&lb, da);
            den *= pow_bigint(&lb, r.deg() + k * db);
            // Strip content to keep the chain small: Res(b, c*r1) = c^db Res(b, r1).
            let cont = r.content();
            let r = if cont.is_one() {
                r
            } else {
                num *= pow_bigint(&cont, db);
                IntPoly {
                    coeffs: r.coeffs.iter().map(|c| c / &cont).collect(),
                }
            };
            a = b;
            b = r;
        }
        let (q, rem) = num.div_rem(&den);
        if !rem.is_zero() {
            return Err(Error::verify(
                "resultant bookkeeping produced a non-integer",
            ));
        }
        Ok(if negate { -q } else { q })
    }

    /// `self(x + a)` by Horner-style recomposition.
    pub fn compose_shift(&self, a: &BigInt) -> Self {
        // p(x + a): iteratively p = sum c_i (x+a)^i
        let mut acc = IntPoly::zero();
        let shift = IntPoly::new(vec![a.clone(), BigInt::one()]);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&shift).add(&IntPoly::constant(c.clone()));
        }
        acc
    }

    /// Squarefree part: `self / gcd(self, self')`, primitive.
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::domain("squarefree part of zero"));
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return Ok(normalize_sign(self.primitive_part()));
        }
        let num = self.primitive_part();
        let q = num.scale(&g.lc()).div_exact(&g)?;
        Ok(normalize_sign(q.primitive_part()))
    }
}

fn normalize_sign(p: IntPoly) -> IntPoly {
    if p.lc().is_negative() {
        p.neg()
    } else {
        p
    }
}

pub(crate) fn pow_bigint(b: &BigInt, e: usize) -> BigInt {
    b.pow(e as u32)
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            if i == 0 {
                write!(f, "{}", mag)?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", mag)?;
                }
                if i == 1 {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^{}", i)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn normalization_drops_trailing_zeros() {
        let q = p(&[1, 2, 0, 0]);
        assert_eq!(q.degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
    }

    #[test]
    fn mul_and_divide_roundtrip() {
        let a = p(&[-1, 0, 1]); // x^2 - 1
        let b = p(&[3, 1, 4]);
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        let (q, r) = prod.div_rem_monic(&a);
        assert_eq!(q, b);
        assert!(r.is_zero());
    }

    #[test]
    fn resultant_of_linears_is_difference() {
        // Res(x - 3, x - 1) = 3 - 1 = 2
        let a = p(&[-3, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(a.resultant(&b).unwrap(), BigInt::from(2));
    }

    #[test]
    fn resultant_with_derivative() {
        // Res(x^2 - 1, 2x) = lc(a)^1 * b(1) * b(-1) = -4
        let a = p(&[-1, 0, 1]);
        assert_eq!(a.resultant(&a.derivative()).unwrap(), BigInt::from(-4));
    }

    #[test]
    fn resultant_degree_six() {
        // Res(x^6 + 1, 6x^5) = 6^6 (so that disc(x^6+1) = -6^6)
        let a = p(&[1, 0, 0, 0, 0, 0, 1]);
        assert_eq!(
            a.resultant(&a.derivative()).unwrap(),
            BigInt::from(46656)
        );
    }

    #[test]
    fn gcd_of_common_factor() {
        let a = p(&[-1, 0, 1]); // (x-1)(x+1)
        let b = p(&[-1, 1]).mul(&p(&[7, 3]));
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
    }

    #[test]
    fn squarefree_part_strips_powers() {
        let a = p(&[-1, 1]);
        let cube = a.mul(&a).mul(&a).mul(&p(&[1, 1]));
        let sf = cube.squarefree_part().unwrap();
        assert_eq!(sf, p(&[-1, 0, 1]));
    }
}
