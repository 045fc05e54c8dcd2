//! Self-adjoint operators with prescribed characteristic polynomial:
//! the distinguished representative, the staircase shape witness,
//! two-torsion dimensions from Frobenius cycle types, counting of
//! distinguished orbits, and a finite-field brute-force census.

pub mod census;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith;
use crate::error::Error;
use crate::etale::{gram_alpha, AlphaClass, EtaleElement};
use crate::linalg::RatMat;
use crate::poly::{factor_mod_p, factor_over_quadratic, factor_over_z, CurveInvariants, IntPoly,
    QuadFactorization};
use crate::quadform::hyperbolic_completion;
use crate::Result;

pub use census::{ff_orbit_census, CensusRow};

/// A rational operator `T` self-adjoint for the standard split form:
/// `B = A T` is symmetric, where `A` is the anti-diagonal Gram matrix.
#[derive(Clone)]
pub struct SelfAdjointOp {
    n: usize,
    matrix: RatMat,
}

impl SelfAdjointOp {
    pub fn new(n: usize, matrix: RatMat) -> Result<Self> {
        let dim = 2 * n + 2;
        if matrix.rows() != dim || matrix.cols() != dim {
            return Err(Error::domain(format!("operator must be {}x{}", dim, dim)));
        }
        let op = SelfAdjointOp { n, matrix };
        if !op.b_matrix().is_symmetric() {
            return Err(Error::domain(
                "operator is not self-adjoint: A*T is not symmetric",
            ));
        }
        Ok(op)
    }

    pub fn genus(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n + 2
    }

    pub fn matrix(&self) -> &RatMat {
        &self.matrix
    }

    /// `B = A T`, the symmetric coordinate matrix.
    pub fn b_matrix(&self) -> RatMat {
        RatMat::anti_identity(self.dim()).mul(&self.matrix)
    }

    pub fn char_poly(&self) -> Option<IntPoly> {
        self.matrix.char_poly_int()
    }

    /// Conjugation `g T g^-1`.
    pub fn conjugate(&self, g: &RatMat) -> Result<Self> {
        let t = g.mul(&self.matrix).mul(&g.inverse()?);
        SelfAdjointOp::new(self.n, t)
    }

    pub fn to_json(&self) -> serde_json::Value {
        crate::jsonio::matrix_to_value(&self.matrix)
    }
}

impl std::fmt::Debug for SelfAdjointOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SelfAdjointOp(n={}) {:?}", self.n, self.matrix)
    }
}

/// Builds the distinguished representative: multiplication by `beta` on
/// `L = Q[x]/f`, expressed in the hyperbolic basis obtained by completing
/// the isotropic flag `1, beta, ..., beta^n`.
///
/// The returned operator satisfies `char(T) = f`, `A T` symmetric, and the
/// full staircase zero pattern `b_ij = 0` for `i + j <= 2n+1`: completing
/// the flag in its given order makes `T` Hessenberg with respect to the
/// full basis filtration, which is exactly that pattern.
pub fn construct_tf(curve: &CurveInvariants) -> Result<SelfAdjointOp> {
    if curve.discriminant().is_zero() {
        return Err(Error::domain("curve has repeated roots"));
    }
    let dim = curve.dim();
    let g = gram_alpha(curve, &AlphaClass::distinguished(curve))?;
    let mut iso = Vec::with_capacity(curve.genus() + 1);
    for k in 0..=curve.genus() {
        let mut v = vec![BigRational::zero(); dim];
        v[k] = BigRational::one();
        iso.push(v);
    }
    let hb = hyperbolic_completion(&g, &iso)?;
    let p = &hb.basis;
    let companion = EtaleElement::beta(curve).mult_matrix();
    let t = p.inverse()?.mul(&companion).mul(p);
    let op = SelfAdjointOp::new(curve.genus(), t)?;
    let cp = op
        .char_poly()
        .ok_or_else(|| Error::verify("characteristic polynomial is not integral"))?;
    if cp != curve.poly() {
        return Err(Error::verify(
            "distinguished operator has the wrong characteristic polynomial",
        ));
    }
    if !distinguished_shape_check(&op)? {
        return Err(Error::verify(
            "distinguished operator is missing the staircase shape",
        ));
    }
    Ok(op)
}

/// The staircase witness: `b_ij = 0` for all `i + j <= 2n+1` (1-indexed)
/// in the symmetric matrix `B = A T`. This is a sufficient witness for
/// membership in a distinguished orbit, not a complete test.
pub fn distinguished_shape_check(op: &SelfAdjointOp) -> Result<bool> {
    let b = op.b_matrix();
    if !b.is_symmetric() {
        return Err(Error::domain("operator is not self-adjoint"));
    }
    let dim = op.dim();
    for i in 0..dim {
        for j in 0..dim {
            if i + j + 2 <= 2 * op.n + 1 && !b[(i, j)].is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A multiset of cycle lengths summing to `2n+2`; the shape of a Frobenius
/// (or archimedean conjugation) action on the roots of `f`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycleType {
    parts: Vec<usize>,
}

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::domain("cycle lengths must be positive"));
        }
        parts.sort_unstable();
        Ok(CycleType { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Cycle type at the real place: `m` conjugate pairs and the rest
    /// fixed points.
    pub fn from_real_roots(dim: usize, complex_pairs: usize) -> Result<Self> {
        if 2 * complex_pairs > dim {
            return Err(Error::domain("too many complex pairs"));
        }
        let mut parts = vec![2; complex_pairs];
        parts.extend(std::iter::repeat(1).take(dim - 2 * complex_pairs));
        CycleType::new(parts)
    }
}

/// `dim_F2` of the fixed space of `W = ker(sum)/<all-ones>` inside
/// `F_2^N` under the cyclic group generated by a permutation of the given
/// cycle type: exhaustive check of `(sigma - 1) w in {0, all-ones}` inside
/// `ker(sum)`, modulo the all-ones vector.
pub fn two_torsion_dim(ct: &CycleType) -> usize {
    let nn = ct.total();
    assert!(nn <= 24, "cycle type too large for exhaustive search");
    let mut sigma = vec![0usize; nn];
    let mut start = 0;
    for &len in ct.parts() {
        for k in 0..len {
            sigma[start + k] = start + (k + 1) % len;
        }
        start += len;
    }
    let full: u32 = (1u32 << nn) - 1;
    let mut count = 0u64;
    for w in 0..=full {
        if (w.count_ones() % 2) != 0 {
            continue;
        }
        let mut sw = 0u32;
        let mut bits = w;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            sw |= 1 << sigma[i];
        }
        let diff = sw ^ w;
        if diff == 0 || diff == full {
            count += 1;
        }
    }
    // count = 2^dim(F); the quotient by the all-ones line drops one.
    debug_assert!(count.is_power_of_two());
    (count.trailing_zeros() as usize) - 1
}

/// How many distinguished orbits `V_f(Q)` carries: one when `f` has an
/// odd-degree factor, or when `n` is even and `L` contains a quadratic
/// field; two otherwise.
pub fn distinguished_orbit_count(curve: &CurveInvariants) -> Result<u8> {
    let disc = curve.discriminant();
    if disc.is_zero() {
        return Err(Error::domain("curve has repeated roots"));
    }
    let zf = factor_over_z(&curve.poly())?;
    if zf.has_odd_degree_factor() {
        return Ok(1);
    }
    if curve.genus() % 2 == 1 {
        return Ok(2);
    }
    // All factors have even degree and n is even: decide whether some
    // quadratic field embeds into every factor of L.
    let factors: Vec<&IntPoly> = zf.factors.iter().map(|(f, _)| f).collect();

    // Cheap certificate against any quadratic subfield: a good prime where
    // some factor has an odd-degree part that cannot be grouped into two
    // halves. An embedded quadratic field forces, at every unramified
    // prime, either all local degrees even (inert) or a partition of the
    // factor degrees into two sets summing to deg/2 each (split).
    for f_i in &factors {
        if no_quadratic_subfield_certificate(f_i)? {
            return Ok(2);
        }
    }

    // Candidate discriminants from the factor with the smallest support.
    let best = factors
        .iter()
        .min_by_key(|f| {
            let d = f.resultant(&f.derivative()).expect("separable factor");
            arith::factor(&d).len()
        })
        .expect("at least one factor");
    let disc_best = best.resultant(&best.derivative()).expect("separable factor");
    let mut support: Vec<BigInt> = arith::factor(&disc_best)
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    support.retain(|p| *p != BigInt::from(2));
    if support.len() > 12 {
        return Err(Error::refused(
            "discriminant support too large for subfield search",
        ));
    }
    let mut squarefree: Vec<BigInt> = vec![BigInt::one()];
    for p in std::iter::once(BigInt::from(2)).chain(support) {
        let mut next = squarefree.clone();
        for c in &squarefree {
            next.push(c * &p);
        }
        squarefree = next;
    }
    let mut candidates: Vec<BigInt> = Vec::new();
    for c in squarefree {
        if !c.is_one() {
            candidates.push(c.clone());
        }
        candidates.push(-c);
    }
    candidates.sort_by_key(|d| d.magnitude().clone());

    'candidate: for d in candidates {
        // Local pre-filter: at an odd prime where d is a non-residue,
        // every local degree must be even.
        for p in probe_primes(curve, 25) {
            let pb = BigInt::from(p);
            if (&d % &pb).is_zero() {
                continue;
            }
            if arith::legendre(&d, &pb) == -1 {
                for f_i in &factors {
                    let degs = factor_mod_p(f_i, p)?.degree_multiset();
                    if degs.iter().any(|&e| e % 2 == 1) {
                        continue 'candidate;
                    }
                }
            }
        }
        let mut all_split = true;
        for f_i in &factors {
            match factor_over_quadratic(f_i, &d)? {
                QuadFactorization::Split { .. } => {}
                QuadFactorization::Irreducible => {
                    all_split = false;
                    break;
                }
            }
        }
        if all_split {
            return Ok(1);
        }
    }
    Ok(2)
}

/// Probes good odd primes for `curve`, in ascending order.
fn probe_primes(curve: &CurveInvariants, count: usize) -> Vec<u64> {
    let disc = curve.discriminant();
    let mut out = Vec::with_capacity(count);
    let mut p = 2u64;
    while out.len() < count && p < 100_000 {
        p = next_prime(p);
        if p == 2 {
            continue;
        }
        if (&disc % BigInt::from(p)).is_zero() {
            continue;
        }
        out.push(p);
    }
    out
}

fn next_prime(mut p: u64) -> u64 {
    loop {
        p += 1;
        if crate::poly::modp::is_prime_u64(p) {
            return p;
        }
    }
}

/// A certificate that `Q[x]/f_i` contains no quadratic subfield: a good
/// prime whose factor-degree multiset contains an odd entry and admits no
/// sub-multiset summing to `deg/2`.
fn no_quadratic_subfield_certificate(f_i: &IntPoly) -> Result<bool> {
    let deg = f_i.deg();
    let half = deg / 2;
    let disc = f_i.resultant(&f_i.derivative())?;
    let mut p = 2u64;
    let mut tried = 0;
    while tried < 40 && p < 100_000 {
        p = next_prime(p);
        if p == 2 || (&disc % BigInt::from(p)).is_zero() {
            continue;
        }
        tried += 1;
        let degs = factor_mod_p(f_i, p)?.degree_multiset();
        if degs.iter().all(|&e| e % 2 == 0) {
            continue;
        }
        if !has_subset_sum(&degs, half) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn has_subset_sum(items: &[usize], target: usize) -> bool {
    let mut reachable = 1u64;
    for &it in items {
        reachable |= reachable << it;
    }
    (reachable >> target) & 1 == 1
}

/// The class attached to one orbit representative.
#[derive(Clone, Debug)]
pub enum OrbitClass {
    Distinguished,
    Alpha(AlphaClass),
}

/// Summary of the orbit data attached to one operator.
#[derive(Clone, Debug)]
pub struct OrbitSummary {
    pub distinguished_count: u8,
    /// `dim_F2 J[2](Q)` when it is forced by the factorization (`f` split
    /// completely), `None` otherwise: the Galois action is only ever
    /// approximated by Frobenius data here.
    pub j2_dim_q: Option<usize>,
    pub class: OrbitClass,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x6_plus_3() -> CurveInvariants {
        CurveInvariants::from_i64(2, &[0, 0, 0, 0, 3]).unwrap()
    }

    #[test]
    fn tf_for_x6_plus_3() {
        let c = x6_plus_3();
        let op = construct_tf(&c).unwrap();
        assert_eq!(op.char_poly().unwrap(), c.poly());
        assert!(op.b_matrix().is_symmetric());
        assert!(distinguished_shape_check(&op).unwrap());
        // T e_i lies in span{e_1, ..., e_(n+1)} for i <= n: the bottom
        // n+1 coordinates of those columns vanish.
        for col in 0..c.genus() {
            for i in (c.genus() + 1)..c.dim() {
                assert!(op.matrix()[(i, col)].is_zero());
            }
        }
    }

    #[test]
    fn tf_rejects_repeated_roots() {
        let c = CurveInvariants::from_i64(2, &[0, 0, 0, 0, 0]).unwrap();
        assert!(construct_tf(&c).is_err());
    }

    #[test]
    fn shape_check_on_antidiagonal() {
        // T = identity gives B = A: only anti-diagonal entries, staircase holds.
        let n = 2usize;
        let op = SelfAdjointOp::new(n, RatMat::identity(2 * n + 2)).unwrap();
        assert!(distinguished_shape_check(&op).unwrap());
    }

    #[test]
    fn shape_check_rejects_b11() {
        // T = A gives B = A^2 = I, whose b_11 = 1 breaks the staircase.
        let n = 2usize;
        let op = SelfAdjointOp::new(n, RatMat::anti_identity(2 * n + 2)).unwrap();
        assert!(!distinguished_shape_check(&op).unwrap());
    }

    #[test]
    fn two_torsion_dims_for_n2() {
        let t = |parts: &[usize]| two_torsion_dim(&CycleType::new(parts.to_vec()).unwrap());
        assert_eq!(t(&[1, 1, 1, 1, 1, 1]), 4);
        assert_eq!(t(&[6]), 0);
        assert_eq!(t(&[2, 4]), 1);
        assert_eq!(t(&[2, 2, 2]), 2);
        assert_eq!(t(&[1, 1, 4]), 1);
        // two odd cycles with no fixed point: only 0 and all-ones survive
        assert_eq!(t(&[3, 3]), 0);
        assert_eq!(t(&[1, 2, 3]), 1);
        assert_eq!(t(&[1, 1, 2, 2]), 2);
    }

    #[test]
    fn two_torsion_invariant_under_reordering() {
        let a = two_torsion_dim(&CycleType::new(vec![4, 2]).unwrap());
        let b = two_torsion_dim(&CycleType::new(vec![2, 4]).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn identity_type_gives_2n() {
        for n in 1..=4usize {
            let ct = CycleType::new(vec![1; 2 * n + 2]).unwrap();
            assert_eq!(two_torsion_dim(&ct), 2 * n);
        }
    }

    #[test]
    fn distinguished_counts() {
        // rational root: one orbit
        let c = CurveInvariants::from_i64(2, &[0, 0, 0, 0, -1]).unwrap();
        assert_eq!(distinguished_orbit_count(&c).unwrap(), 1);
        // x^6 + 3: quadratic subfield Q(sqrt(-3)) inside L
        assert_eq!(distinguished_orbit_count(&x6_plus_3()).unwrap(), 1);
        // x^6 + x + 1: irreducible, no quadratic subfield
        let c = CurveInvariants::from_poly(&IntPoly::from_i64(&[1, 1, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(distinguished_orbit_count(&c).unwrap(), 2);
    }

    #[test]
    fn split_product_detected() {
        // (x^2+1)(x^4+1): both factors split over Q(i), so one orbit.
        let f = IntPoly::from_i64(&[1, 0, 1]).mul(&IntPoly::from_i64(&[1, 0, 0, 0, 1]));
        let c = CurveInvariants::from_poly(&f).unwrap();
        assert_eq!(distinguished_orbit_count(&c).unwrap(), 1);
    }

    #[test]
    fn conjugation_preserves_char_poly() {
        let c = x6_plus_3();
        let op = construct_tf(&c).unwrap();
        let mut g = RatMat::identity(6);
        g[(0, 0)] = BigRational::from(BigInt::from(2));
        g[(5, 5)] = BigRational::new(BigInt::one(), BigInt::from(2));
        let op2 = op.conjugate(&g).unwrap();
        assert_eq!(op2.char_poly().unwrap(), c.poly());
    }
}
