//! Arithmetic in the etale algebra `L = Q[x]/f(x)`: reduction, trace,
//! norm, the Gram matrices of the pairings `<,>_alpha`, and square-class
//! testing.
//!
//! Elements are stored in the power basis `1, beta, ..., beta^(2n+1)`
//! where `beta` is the image of `x`.

pub mod squares;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::jsonio;
use crate::linalg::RatMat;
use crate::poly::{CurveInvariants, RatPoly};
use crate::quadform::GramMatrix;
use crate::Result;

pub use squares::{same_class_mod_squares_and_q, ClassComparison, SquareTest, SquareTestConfig};

/// An element of `L = Q[x]/f(x)`, reduced in the power basis.
#[derive(Clone, PartialEq, Eq)]
pub struct EtaleElement {
    curve: CurveInvariants,
    coords: Vec<BigRational>,
}

impl EtaleElement {
    /// Reduces a rational polynomial mod `f` into the power basis.
    pub fn from_poly(curve: &CurveInvariants, poly: &RatPoly) -> Self {
        let f = curve.poly();
        let reduced = poly.reduce_mod(&f);
        let coords = reduced.to_rationals(curve.dim());
        EtaleElement {
            curve: curve.clone(),
            coords,
        }
    }

    pub fn from_coords(curve: &CurveInvariants, coords: Vec<BigRational>) -> Result<Self> {
        if coords.len() != curve.dim() {
            return Err(Error::domain(format!(
                "expected {} coordinates, got {}",
                curve.dim(),
                coords.len()
            )));
        }
        Ok(EtaleElement {
            curve: curve.clone(),
            coords,
        })
    }

    pub fn zero(curve: &CurveInvariants) -> Self {
        EtaleElement {
            curve: curve.clone(),
            coords: vec![BigRational::zero(); curve.dim()],
        }
    }

    pub fn one(curve: &CurveInvariants) -> Self {
        Self::constant(curve, BigRational::one())
    }

    pub fn constant(curve: &CurveInvariants, c: BigRational) -> Self {
        let mut coords = vec![BigRational::zero(); curve.dim()];
        coords[0] = c;
        EtaleElement {
            curve: curve.clone(),
            coords,
        }
    }

    /// The generator `beta`.
    pub fn beta(curve: &CurveInvariants) -> Self {
        let mut coords = vec![BigRational::zero(); curve.dim()];
        coords[1] = BigRational::one();
        EtaleElement {
            curve: curve.clone(),
            coords,
        }
    }

    pub fn curve(&self) -> &CurveInvariants {
        &self.curve
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn as_rat_poly(&self) -> RatPoly {
        RatPoly::from_rationals(&self.coords)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.curve != other.curve {
            return Err(Error::domain("elements live in different algebras"));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(EtaleElement {
            curve: self.curve.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(EtaleElement {
            curve: self.curve.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        EtaleElement {
            curve: self.curve.clone(),
            coords: self.coords.iter().map(|a| -a.clone()).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        EtaleElement {
            curve: self.curve.clone(),
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    /// Product reduced mod `f`.
    pub fn mul_reduce(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let prod = self.as_rat_poly().mul(&other.as_rat_poly());
        Ok(EtaleElement::from_poly(&self.curve, &prod))
    }

    pub fn pow(&self, mut e: u64) -> Result<Self> {
        let mut acc = EtaleElement::one(&self.curve);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_reduce(&b)?;
            }
            b = b.mul_reduce(&b)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Inverse in `L`; errors when the element is a zero divisor.
    pub fn inverse(&self) -> Result<Self> {
        let f = RatPoly::from_int(self.curve.poly());
        let a = self.as_rat_poly();
        // Extended Euclid over Q[x]: t*a = gcd mod f.
        let (mut r0, mut r1) = (f, a);
        let (mut t0, mut t1) = (RatPoly::zero(), RatPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t;
        }
        if r0.degree() != Some(0) {
            return Err(Error::domain(
                "element is not invertible (shares a factor with f)",
            ));
        }
        let inv = t0.scale(&r0.coeff(0).recip());
        Ok(EtaleElement::from_poly(&self.curve, &inv))
    }

    pub fn is_invertible(&self) -> bool {
        !self.is_zero() && self.inverse().is_ok()
    }

    /// Matrix of multiplication by this element in the power basis
    /// (columns are `a * beta^j`).
    pub fn mult_matrix(&self) -> RatMat {
        let dim = self.curve.dim();
        let mut m = RatMat::zero(dim, dim);
        let beta = EtaleElement::beta(&self.curve);
        let mut col = self.clone();
        for j in 0..dim {
            m.set_col(j, &col.coords);
            if j + 1 < dim {
                col = col.mul_reduce(&beta).expect("same curve");
            }
        }
        m
    }

    /// Trace of multiplication by this element.
    pub fn trace(&self) -> BigRational {
        // tr(mult_a) = sum_j coefficient of beta^j in a * beta^j
        let dim = self.curve.dim();
        let beta = EtaleElement::beta(&self.curve);
        let mut acc = BigRational::zero();
        let mut col = self.clone();
        for j in 0..dim {
            acc += &col.coords[j];
            if j + 1 < dim {
                col = col.mul_reduce(&beta).expect("same curve");
            }
        }
        acc
    }

    /// Norm: determinant of multiplication, computed as
    /// `Res(f, num(a)) / den(a)^(2n+2)` for monic `f`.
    pub fn norm(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let f = self.curve.poly();
        let rp = self.as_rat_poly();
        let res = f
            .resultant(rp.numerator())
            .expect("nonzero polynomials have a resultant");
        BigRational::new(res, rp.denominator().pow(self.curve.dim() as u32))
    }

    /// Coefficient of `beta^(2n+1)`: the linear functional defining the
    /// pairing `<l, m>` as the top coefficient of `l*m`.
    pub fn top_coefficient(&self) -> BigRational {
        self.coords[self.curve.dim() - 1].clone()
    }

    pub fn to_json(&self) -> serde_json::Value {
        jsonio::rationals_to_value(&self.coords)
    }
}

impl std::fmt::Debug for EtaleElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?} in Q[x]/({})", self.as_rat_poly(), self.curve.poly())
    }
}

/// A class `alpha` in `L^x`, with the norm witness `y` (so `N(alpha) = y^2`)
/// when one is known.
#[derive(Clone, Debug)]
pub struct AlphaClass {
    pub representative: EtaleElement,
    pub norm_witness: Option<BigRational>,
}

impl AlphaClass {
    pub fn new(representative: EtaleElement) -> Result<Self> {
        if !representative.is_invertible() {
            return Err(Error::domain("alpha must be invertible in L"));
        }
        Ok(AlphaClass {
            representative,
            norm_witness: None,
        })
    }

    pub fn with_witness(representative: EtaleElement, witness: BigRational) -> Result<Self> {
        let norm = representative.norm();
        if norm != &witness * &witness {
            return Err(Error::verify(format!(
                "norm witness does not square to N(alpha): {} vs {}",
                witness, norm
            )));
        }
        let mut a = AlphaClass::new(representative)?;
        a.norm_witness = Some(witness);
        Ok(a)
    }

    pub fn distinguished(curve: &CurveInvariants) -> Self {
        AlphaClass {
            representative: EtaleElement::one(curve),
            norm_witness: Some(BigRational::one()),
        }
    }
}

/// Gram matrix of `<l, m>_alpha` = coefficient of `beta^(2n+1)` in
/// `alpha * l * m`, on the power basis: `G[i][j]` is the top coefficient
/// of `alpha * beta^(i+j)` reduced mod `f`.
pub fn gram_alpha(curve: &CurveInvariants, alpha: &AlphaClass) -> Result<GramMatrix> {
    let dim = curve.dim();
    if alpha.representative.curve() != curve {
        return Err(Error::domain("alpha lives in a different algebra"));
    }
    if !alpha.representative.is_invertible() {
        return Err(Error::domain("alpha must be invertible"));
    }
    let beta = EtaleElement::beta(curve);
    let mut tops = Vec::with_capacity(2 * dim - 1);
    let mut cur = alpha.representative.clone();
    tops.push(cur.top_coefficient());
    for _ in 1..(2 * dim - 1) {
        cur = cur.mul_reduce(&beta)?;
        tops.push(cur.top_coefficient());
    }
    let m = RatMat::from_fn(dim, dim, |i, j| tops[i + j].clone());
    GramMatrix::new(m)
}

/// The element `x0 - beta` of `L`.
pub fn linear_minus_beta(curve: &CurveInvariants, x0: &BigRational) -> EtaleElement {
    let mut coords = vec![BigRational::zero(); curve.dim()];
    coords[0] = x0.clone();
    coords[1] = -BigRational::one();
    EtaleElement {
        curve: curve.clone(),
        coords,
    }
}

/// `f'(beta)` as an element of `L`.
pub fn fprime_beta(curve: &CurveInvariants) -> EtaleElement {
    let fp = curve.poly().derivative();
    EtaleElement::from_poly(curve, &RatPoly::from_int(fp))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x6_plus_3() -> CurveInvariants {
        CurveInvariants::from_i64(2, &[0, 0, 0, 0, 3]).unwrap()
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn defining_relation() {
        // beta * beta^5 = beta^6 = -3 for f = x^6 + 3
        let c = x6_plus_3();
        let beta = EtaleElement::beta(&c);
        let b5 = beta.pow(5).unwrap();
        let prod = beta.mul_reduce(&b5).unwrap();
        assert_eq!(prod, EtaleElement::constant(&c, rat(-3)));
    }

    #[test]
    fn one_is_identity() {
        let c = x6_plus_3();
        let a = EtaleElement::from_coords(
            &c,
            vec![rat(1), rat(-2), rat(0), rat(7), rat(0), rat(3)],
        )
        .unwrap();
        assert_eq!(EtaleElement::one(&c).mul_reduce(&a).unwrap(), a);
    }

    #[test]
    fn product_expansion() {
        // (1 - beta)(-1 - beta) = beta^2 - 1
        let c = x6_plus_3();
        let a = linear_minus_beta(&c, &rat(1));
        let b = linear_minus_beta(&c, &rat(-1));
        let prod = a.mul_reduce(&b).unwrap();
        let beta = EtaleElement::beta(&c);
        let expect = beta
            .mul_reduce(&beta)
            .unwrap()
            .sub(&EtaleElement::one(&c))
            .unwrap();
        assert_eq!(prod, expect);
    }

    #[test]
    fn traces() {
        let c = x6_plus_3();
        assert_eq!(EtaleElement::one(&c).trace(), rat(6));
        assert_eq!(EtaleElement::beta(&c).trace(), rat(0));
    }

    #[test]
    fn euler_dual_identities() {
        // trace(beta^i / f'(beta)) = 0 for i <= 2n, 1 for i = 2n+1
        let c = x6_plus_3();
        let inv = fprime_beta(&c).inverse().unwrap();
        let beta = EtaleElement::beta(&c);
        let mut cur = inv.clone();
        for i in 0..=5 {
            let expected = if i == 5 { rat(1) } else { rat(0) };
            assert_eq!(cur.trace(), expected, "i = {}", i);
            cur = cur.mul_reduce(&beta).unwrap();
        }
    }

    #[test]
    fn norms() {
        let c = x6_plus_3();
        // N(x0 - beta) = f(x0)
        let a = linear_minus_beta(&c, &rat(1));
        assert_eq!(a.norm(), rat(4)); // f(1) = 4
        assert_eq!(EtaleElement::one(&c).norm(), rat(1));
        // N(beta) = constant term for even degree
        assert_eq!(EtaleElement::beta(&c).norm(), rat(3));
    }

    #[test]
    fn norm_is_multiplicative() {
        let c = x6_plus_3();
        let a = linear_minus_beta(&c, &rat(2));
        let b = EtaleElement::beta(&c)
            .add(&EtaleElement::constant(&c, rat(5)))
            .unwrap();
        let ab = a.mul_reduce(&b).unwrap();
        assert_eq!(ab.norm(), a.norm() * b.norm());
    }

    #[test]
    fn inverse_roundtrip() {
        let c = x6_plus_3();
        let a = linear_minus_beta(&c, &rat(1));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul_reduce(&inv).unwrap(), EtaleElement::one(&c));
    }

    #[test]
    fn gram_alpha_one_top_band() {
        // alpha = 1: G[i][j] = 1 on i+j = 2n+1, 0 below, and the first
        // reduction band i+j = 2n+2 carries -c_1 = 0.
        let c = x6_plus_3();
        let g = gram_alpha(&c, &AlphaClass::distinguished(&c)).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                if i + j < 5 {
                    assert!(g.entry(i, j).is_zero());
                } else if i + j == 5 {
                    assert_eq!(*g.entry(i, j), rat(1));
                } else if i + j == 6 {
                    assert!(g.entry(i, j).is_zero(), "(i,j)=({},{})", i, j);
                }
            }
        }
    }

    #[test]
    fn gram_alpha_is_split_for_distinguished() {
        let c = x6_plus_3();
        let g = gram_alpha(&c, &AlphaClass::distinguished(&c)).unwrap();
        assert!(crate::quadform::is_split_disc1(&g).unwrap());
    }

    #[test]
    fn beta_multiplication_self_adjoint() {
        // G * C_f = C_f^t * G for the companion matrix C_f
        let c = x6_plus_3();
        let alpha = AlphaClass::new(
            linear_minus_beta(&c, &rat(1))
                .mul_reduce(&linear_minus_beta(&c, &rat(-1)))
                .unwrap(),
        )
        .unwrap();
        let g = gram_alpha(&c, &alpha).unwrap();
        let companion = EtaleElement::beta(&c).mult_matrix();
        let lhs = g.matrix().mul(&companion);
        let rhs = companion.transpose().mul(g.matrix());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn modulus_mismatch_rejected() {
        let c1 = x6_plus_3();
        let c2 = CurveInvariants::from_i64(2, &[0, 0, 0, 0, 1]).unwrap();
        let a = EtaleElement::beta(&c1);
        let b = EtaleElement::beta(&c2);
        assert!(a.mul_reduce(&b).is_err());
    }
}
