//! Arithmetic over `Q(sqrt(d))` and factorization of integer polynomials
//! over a quadratic field by Trager-style norm factorization.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use super::factor_z::factor_over_z;
use super::int_poly::IntPoly;
use crate::error::Error;
use crate::Result;

/// An element `a + b*sqrt(d)` of `Q(sqrt(d))`; `d` is carried by the
/// surrounding polynomial or operation context.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadElt {
    pub a: BigRational,
    pub b: BigRational,
}

impl QuadElt {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QuadElt { a, b }
    }

    pub fn from_rational(a: BigRational) -> Self {
        QuadElt {
            a,
            b: BigRational::zero(),
        }
    }

    pub fn zero() -> Self {
        QuadElt::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        QuadElt::from_rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadElt {
            a: self.a.clone(),
            b: -self.b.clone(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        QuadElt {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        QuadElt {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }

    pub fn neg(&self) -> Self {
        QuadElt {
            a: -self.a.clone(),
            b: -self.b.clone(),
        }
    }

    pub fn mul(&self, o: &Self, d: &BigInt) -> Self {
        let dd = BigRational::from(d.clone());
        QuadElt {
            a: &self.a * &o.a + &dd * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }

    /// Field norm `a^2 - d b^2`.
    pub fn norm(&self, d: &BigInt) -> BigRational {
        let dd = BigRational::from(d.clone());
        &self.a * &self.a - dd * &self.b * &self.b
    }

    pub fn inv(&self, d: &BigInt) -> Result<Self> {
        let n = self.norm(d);
        if n.is_zero() {
            return Err(Error::domain("division by zero in Q(sqrt(d))"));
        }
        let c = self.conj();
        Ok(QuadElt {
            a: c.a / &n,
            b: c.b / &n,
        })
    }
}

impl fmt::Debug for QuadElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*s", self.b)
        } else {
            write!(f, "{}+{}*s", self.a, self.b)
        }
    }
}

/// Dense polynomial over `Q(sqrt(d))`, lowest degree first.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadPoly {
    pub d: BigInt,
    coeffs: Vec<QuadElt>,
}

impl QuadPoly {
    pub fn new(d: BigInt, mut coeffs: Vec<QuadElt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QuadPoly { d, coeffs }
    }

    pub fn from_int_poly(p: &IntPoly, d: &BigInt) -> Self {
        QuadPoly::new(
            d.clone(),
            p.coeffs()
                .iter()
                .map(|c| QuadElt::from_rational(BigRational::from(c.clone())))
                .collect(),
        )
    }

    pub fn zero(d: &BigInt) -> Self {
        QuadPoly {
            d: d.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn coeffs(&self) -> &[QuadElt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> QuadElt {
        self.coeffs.get(k).cloned().unwrap_or_else(QuadElt::zero)
    }

    pub fn lc(&self) -> QuadElt {
        self.coeffs.last().cloned().unwrap_or_else(QuadElt::zero)
    }

    pub fn conj(&self) -> Self {
        QuadPoly {
            d: self.d.clone(),
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        QuadPoly::new(
            self.d.clone(),
            (0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        QuadPoly::new(
            self.d.clone(),
            (0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return QuadPoly::zero(&self.d);
        }
        let mut v = vec![QuadElt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].add(&a.mul(b, &self.d));
            }
        }
        QuadPoly::new(self.d.clone(), v)
    }

    pub fn scale(&self, s: &QuadElt) -> Self {
        QuadPoly::new(
            self.d.clone(),
            self.coeffs.iter().map(|c| c.mul(s, &self.d)).collect(),
        )
    }

    pub fn monic(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let inv = self.lc().inv(&self.d)?;
        Ok(self.scale(&inv))
    }

    pub fn div_rem(&self, m: &Self) -> Result<(Self, Self)> {
        if m.is_zero() {
            return Err(Error::domain("division by zero polynomial"));
        }
        let d = &self.d;
        let dm = m.deg();
        let inv = m.lc().inv(d)?;
        let mut rem: Vec<QuadElt> = self.coeffs.clone();
        if rem.len() <= dm {
            return Ok((QuadPoly::zero(d), self.clone()));
        }
        let mut quot = vec![QuadElt::zero(); rem.len() - dm];
        for i in (dm..rem.len()).rev() {
            let q = rem[i].mul(&inv, d);
            if q.is_zero() {
                continue;
            }
            for (j, b) in m.coeffs.iter().enumerate() {
                let t = q.mul(b, d);
                rem[i - dm + j] = rem[i - dm + j].sub(&t);
            }
            quot[i - dm] = q;
        }
        rem.truncate(dm);
        Ok((
            QuadPoly::new(d.clone(), quot),
            QuadPoly::new(d.clone(), rem),
        ))
    }

    pub fn gcd(&self, o: &Self) -> Result<Self> {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Evaluates at `x + t*sqrt(d)` composition: returns `self(x + t)` where
    /// `t` is the quadratic element, as a polynomial in `x`.
    pub fn compose_shift(&self, t: &QuadElt) -> Self {
        let d = &self.d;
        let shift = QuadPoly::new(d.clone(), vec![t.clone(), QuadElt::one()]);
        let mut acc = QuadPoly::zero(d);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&shift).add(&QuadPoly::new(d.clone(), vec![c.clone()]));
        }
        acc
    }

    /// The rational polynomial, if all coefficients are rational.
    pub fn as_rational(&self) -> Option<Vec<BigRational>> {
        if self.coeffs.iter().all(|c| c.is_rational()) {
            Some(self.coeffs.iter().map(|c| c.a.clone()).collect())
        } else {
            None
        }
    }
}

impl fmt::Debug for QuadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({:?})*x^{}", c, i))
            .collect();
        write!(f, "{} over Q(sqrt({}))", terms.join(" + "), self.d)
    }
}

/// Outcome of factoring over `Q(sqrt(d))`.
#[derive(Clone, Debug)]
pub enum QuadFactorization {
    /// Stays irreducible over the quadratic field.
    Irreducible,
    /// Splits as `h * conj(h)` with `h` monic of half the degree.
    Split { h: QuadPoly, h_conj: QuadPoly },
}

/// Decides whether an (irreducible over `Z`, even degree) polynomial
/// factors over `Q(sqrt(d))` as a product of Galois-conjugate halves,
/// by factoring the norm of a shifted copy over `Q` and pulling factors
/// back through a gcd over the quadratic field.
pub fn factor_over_quadratic(a: &IntPoly, d: &BigInt) -> Result<QuadFactorization> {
    if d.is_zero() || d.is_one() {
        return Err(Error::domain("d must not be 0 or 1"));
    }
    if is_perfect_square(d) {
        return Err(Error::domain("d must not be a perfect square"));
    }
    let deg = a
        .degree()
        .ok_or_else(|| Error::domain("cannot factor the zero polynomial"))?;
    if deg == 0 || deg % 2 != 0 {
        return Err(Error::domain("expected a nonconstant polynomial of even degree"));
    }

    let aq = QuadPoly::from_int_poly(a, d);
    for s in 1..=24i64 {
        for sign in [1i64, -1] {
            let shift = QuadElt::new(
                BigRational::zero(),
                BigRational::from(BigInt::from(-s * sign)),
            );
            // g(x) = a(x - s*sqrt(d)); norm N = g * conj(g) lies in Q[x].
            let g = aq.compose_shift(&shift);
            let norm = g.mul(&g.conj());
            let rat = norm
                .as_rational()
                .ok_or_else(|| Error::verify("norm polynomial is not rational"))?;
            let mut den = BigInt::one();
            for c in &rat {
                if !c.denom().is_one() {
                    den = num_integer::lcm(den.clone(), c.denom().clone());
                }
            }
            let norm_int = IntPoly::new(rat.iter().map(|c| c.numer() * (&den / c.denom())).collect());
            // Need the norm squarefree for the gcd pullback to separate factors.
            if norm_int.gcd(&norm_int.derivative()).degree() != Some(0) {
                continue;
            }
            let zf = factor_over_z(&norm_int)?;
            let mut halves = Vec::new();
            for (fac, _) in &zf.factors {
                if fac.deg() == 2 * deg {
                    // norm stayed irreducible: a is irreducible over K
                    return Ok(QuadFactorization::Irreducible);
                }
                let back = QuadPoly::from_int_poly(fac, d).compose_shift(&QuadElt::new(
                    BigRational::zero(),
                    BigRational::from(BigInt::from(s * sign)),
                ));
                let h = aq.gcd(&back)?;
                if h.degree().map_or(false, |dh| dh > 0 && dh < deg) {
                    halves.push(h);
                }
            }
            if halves.is_empty() {
                return Ok(QuadFactorization::Irreducible);
            }
            // For an input irreducible over Q, the factors over K come as a
            // conjugate pair of equal degree.
            let h = halves
                .iter()
                .find(|h| h.deg() == deg / 2)
                .cloned()
                .ok_or_else(|| {
                    Error::verify("quadratic factorization did not produce half-degree factors")
                })?;
            let h_conj = h.conj();
            let prod = h.mul(&h_conj);
            let monic_a = aq.monic()?;
            if prod.sub(&monic_a).is_zero() {
                return Ok(QuadFactorization::Split { h, h_conj });
            }
            return Err(Error::verify(
                "conjugate halves failed to reproduce the input",
            ));
        }
    }
    Err(Error::verify(
        "no squarefree norm shift found below the search bound",
    ))
}

pub fn is_perfect_square(d: &BigInt) -> bool {
    if d.is_negative() {
        return false;
    }
    let r = d.sqrt();
    &(&r * &r) == d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x2_plus_1_over_gaussian() {
        let a = IntPoly::from_i64(&[1, 0, 1]);
        match factor_over_quadratic(&a, &BigInt::from(-1)).unwrap() {
            QuadFactorization::Split { h, h_conj } => {
                assert_eq!(h.deg(), 1);
                assert_eq!(h.mul(&h_conj), QuadPoly::from_int_poly(&a, &BigInt::from(-1)));
            }
            _ => panic!("x^2+1 must split over Q(i)"),
        }
    }

    #[test]
    fn x6_plus_3_over_sqrt_minus_3() {
        // (beta^3)^2 = -3 in Q[x]/(x^6+3), so x^6 + 3 = (x^3 - s)(x^3 + s)
        // over Q(sqrt(-3)).
        let a = IntPoly::from_i64(&[3, 0, 0, 0, 0, 0, 1]);
        match factor_over_quadratic(&a, &BigInt::from(-3)).unwrap() {
            QuadFactorization::Split { h, h_conj } => {
                assert_eq!(h.deg(), 3);
                let prod = h.mul(&h_conj);
                assert_eq!(prod, QuadPoly::from_int_poly(&a, &BigInt::from(-3)));
            }
            _ => panic!("x^6+3 must split over Q(sqrt(-3))"),
        }
    }

    #[test]
    fn x6_plus_3_irreducible_over_sqrt_2() {
        let a = IntPoly::from_i64(&[3, 0, 0, 0, 0, 0, 1]);
        match factor_over_quadratic(&a, &BigInt::from(2)).unwrap() {
            QuadFactorization::Irreducible => {}
            _ => panic!("x^6+3 must stay irreducible over Q(sqrt(2))"),
        }
    }

    #[test]
    fn square_d_rejected() {
        let a = IntPoly::from_i64(&[1, 0, 1]);
        assert!(factor_over_quadratic(&a, &BigInt::from(4)).is_err());
    }
}
