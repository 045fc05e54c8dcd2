//! Exact symmetric bilinear forms over `Q`: diagonalization, Hilbert
//! symbols, the (signature, discriminant class, Hasse) invariant triple,
//! splitness testing, and hyperbolic basis completion.
//!
//! Conventions. Gram matrices store the un-halved pairing
//! `<v,w> = Q(v+w) - Q(v) - Q(w)`; in the standard basis the split form is
//! exactly the anti-diagonal matrix `A`. The Hasse invariant of a
//! diagonalization `(d_1, ..., d_r)` at a place `v` is
//! `prod_{i<j} (d_i, d_j)_v` (the Cassels convention).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::arith;
use crate::error::Error;
use crate::jsonio;
use crate::linalg::RatMat;
use crate::Result;

/// A place of `Q`: a finite prime or the real place.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Place {
    Prime(BigInt),
    Infinity,
}

impl std::fmt::Display for Place {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{}", p),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

/// Symmetric Gram matrix of a bilinear form on `Q^dim`.
#[derive(Clone, PartialEq, Eq)]
pub struct GramMatrix {
    mat: RatMat,
}

impl GramMatrix {
    pub fn new(mat: RatMat) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::domain("Gram matrix must be square"));
        }
        if !mat.is_symmetric() {
            return Err(Error::domain("Gram matrix must be symmetric"));
        }
        Ok(GramMatrix { mat })
    }

    pub fn from_i64(dim: usize, entries: &[i64]) -> Result<Self> {
        GramMatrix::new(RatMat::from_i64(dim, dim, entries))
    }

    /// The standard split Gram: 1s on the anti-diagonal.
    pub fn standard_split(dim: usize) -> Self {
        GramMatrix {
            mat: RatMat::anti_identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &RatMat {
        &self.mat
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self.mat[(i, j)]
    }

    /// Pairing of two coordinate vectors.
    pub fn pair(&self, v: &[BigRational], w: &[BigRational]) -> BigRational {
        let gw = self.mat.apply(w);
        v.iter()
            .zip(gw.iter())
            .map(|(a, b)| a * b)
            .fold(BigRational::zero(), |acc, t| acc + t)
    }

    pub fn det(&self) -> BigRational {
        self.mat.det()
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.det().is_zero()
    }

    pub fn to_json(&self) -> serde_json::Value {
        jsonio::matrix_to_value(&self.mat)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let rows = v
            .as_array()
            .ok_or_else(|| Error::parse("Gram matrix must be a JSON array"))?;
        let dim = rows.len();
        let mut mat = RatMat::zero(dim, dim);
        for (i, row) in rows.iter().enumerate() {
            let cols = row
                .as_array()
                .ok_or_else(|| Error::parse("Gram row must be a JSON array"))?;
            if cols.len() != dim {
                return Err(Error::parse("Gram matrix must be square"));
            }
            for (j, cell) in cols.iter().enumerate() {
                let s = cell
                    .as_str()
                    .map(|s| s.to_string())
                    .unwrap_or_else(|| cell.to_string());
                mat[(i, j)] = jsonio::parse_rational(&s)?;
            }
        }
        GramMatrix::new(mat)
    }
}

impl std::fmt::Debug for GramMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Gram{:?}", self.mat)
    }
}

/// Result of a rational congruence diagonalization `P^t G P = diag`.
pub struct Diagonalization {
    pub basis_change: RatMat,
    pub diagonal: Vec<BigRational>,
}

/// Diagonalizes a symmetric matrix by rational congruence (symmetric
/// Gaussian elimination; a zero diagonal pivot is repaired with a
/// hyperbolic-pair column addition). Degenerate input yields zero
/// diagonal entries.
pub fn diagonalize(g: &GramMatrix) -> Diagonalization {
    let n = g.dim();
    let mut m = g.matrix().clone();
    let mut p = RatMat::identity(n);

    // col_op: col_dst += c * col_src applied symmetrically (and to P).
    fn col_op(m: &mut RatMat, p: &mut RatMat, dst: usize, src: usize, c: &BigRational) {
        let n = m.rows();
        for i in 0..n {
            let t = c * &m[(i, src)];
            m[(i, dst)] += t;
        }
        for j in 0..n {
            let t = c * &m[(src, j)];
            m[(dst, j)] += t;
        }
        for i in 0..p.rows() {
            let t = c * &p[(i, src)];
            p[(i, dst)] += t;
        }
    }
    fn col_swap(m: &mut RatMat, p: &mut RatMat, a: usize, b: usize) {
        let n = m.rows();
        for i in 0..n {
            let t = m[(i, a)].clone();
            m[(i, a)] = m[(i, b)].clone();
            m[(i, b)] = t;
        }
        for j in 0..n {
            let t = m[(a, j)].clone();
            m[(a, j)] = m[(b, j)].clone();
            m[(b, j)] = t;
        }
        for i in 0..p.rows() {
            let t = p[(i, a)].clone();
            p[(i, a)] = p[(i, b)].clone();
            p[(i, b)] = t;
        }
    }

    for k in 0..n {
        if m[(k, k)].is_zero() {
            // Prefer a later index with nonzero diagonal.
            if let Some(j) = ((k + 1)..n).find(|&j| !m[(j, j)].is_zero()) {
                col_swap(&mut m, &mut p, k, j);
            } else if let Some(j) = ((k + 1)..n).find(|&j| !m[(k, j)].is_zero()) {
                // Hyperbolic repair: adding column j makes the pivot
                // 2*m[k][j] + m[j][j]; with m[j][j] = 0 this is nonzero.
                col_op(&mut m, &mut p, k, j, &BigRational::one());
            } else {
                continue; // zero row: degenerate direction
            }
        }
        let pivot = m[(k, k)].clone();
        for j in (k + 1)..n {
            if m[(k, j)].is_zero() {
                continue;
            }
            let c = -(&m[(k, j)] / &pivot);
            col_op(&mut m, &mut p, j, k, &c);
        }
    }
    let diagonal = (0..n).map(|i| m[(i, i)].clone()).collect();
    Diagonalization {
        basis_change: p,
        diagonal,
    }
}

/// Hilbert symbol `(a, b)_v`: +1 iff `z^2 = a x^2 + b y^2` has a
/// nontrivial solution over the completion at `v`.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, place: &Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::domain("Hilbert symbol of zero"));
    }
    match place {
        Place::Infinity => Ok(if a.is_negative() && b.is_negative() {
            -1
        } else {
            1
        }),
        Place::Prime(p) => {
            if !arith::is_prime(p) {
                return Err(Error::domain(format!("{} is not prime", p)));
            }
            // Replace by square-class integer representatives.
            let ai = a.numer() * a.denom();
            let bi = b.numer() * b.denom();
            let (alpha, u) = split_valuation(&ai, p);
            let (beta, v) = split_valuation(&bi, p);
            if p == &BigInt::from(2) {
                let eps = |x: &BigInt| -> u32 {
                    // (x-1)/2 mod 2 for odd x
                    (((x.mod_floor(&BigInt::from(4)) - BigInt::one()) / BigInt::from(2))
                        .mod_floor(&BigInt::from(2)))
                    .to_string()
                    .parse()
                    .unwrap()
                };
                let omega = |x: &BigInt| -> u32 {
                    // (x^2-1)/8 mod 2 for odd x
                    let r = x.mod_floor(&BigInt::from(8));
                    if r == BigInt::from(1) || r == BigInt::from(7) {
                        0
                    } else {
                        1
                    }
                };
                let e = eps(&u) * eps(&v)
                    + (alpha as u32 % 2) * omega(&v)
                    + (beta as u32 % 2) * omega(&u);
                Ok(if e % 2 == 0 { 1 } else { -1 })
            } else {
                let mut sign = 1i8;
                if (alpha * beta) % 2 == 1 {
                    // (-1)^(alpha beta (p-1)/2)
                    if (p.mod_floor(&BigInt::from(4))) == BigInt::from(3) {
                        sign = -sign;
                    }
                }
                if beta % 2 == 1 {
                    sign *= arith::legendre(&u, p);
                }
                if alpha % 2 == 1 {
                    sign *= arith::legendre(&v, p);
                }
                Ok(sign)
            }
        }
    }
}

fn split_valuation(x: &BigInt, p: &BigInt) -> (u64, BigInt) {
    let mut v = 0u64;
    let mut u = x.clone();
    while (&u % p).is_zero() {
        u /= p;
        v += 1;
    }
    (v, u)
}

/// The complete invariant triple of a nondegenerate form over `Q`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormInvariants {
    pub rank: usize,
    /// (positive, negative) inertia indices.
    pub signature: (usize, usize),
    /// Squarefree integer representing the discriminant in `Q*/Q*^2`
    /// (the plain product of a diagonalization, no extra sign twist).
    pub disc_class: BigInt,
    /// Hasse invariant at the finitely many candidate primes; +1 at every
    /// prime not listed.
    pub hasse: BTreeMap<BigInt, i8>,
}

impl FormInvariants {
    /// Hasse invariant at an arbitrary prime.
    pub fn hasse_at(&self, p: &BigInt) -> i8 {
        *self.hasse.get(p).unwrap_or(&1)
    }

    /// Hasse invariant at the real place: `(-1,-1)^C(neg,2)`.
    pub fn hasse_at_infinity(&self) -> i8 {
        let neg = self.signature.1;
        if (neg * (neg.saturating_sub(1)) / 2) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Product over all places including the real one; must be +1.
    pub fn hasse_product(&self) -> i8 {
        let mut prod = self.hasse_at_infinity();
        for v in self.hasse.values() {
            prod *= v;
        }
        prod
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rank": self.rank,
            "signature": [self.signature.0, self.signature.1],
            "disc_class": jsonio::bigint_to_value(&self.disc_class),
            "hasse": self.hasse.iter()
                .map(|(p, e)| (p.to_string(), serde_json::json!(e)))
                .collect::<serde_json::Map<String, serde_json::Value>>(),
        })
    }
}

/// Computes signature, discriminant class and Hasse invariants from a
/// diagonalization. Errors on degenerate input.
pub fn form_invariants(g: &GramMatrix) -> Result<FormInvariants> {
    let diag = diagonalize(g);
    if diag.diagonal.iter().any(|d| d.is_zero()) {
        return Err(Error::domain("form is degenerate"));
    }
    invariants_of_diagonal(&diag.diagonal)
}

pub fn invariants_of_diagonal(diagonal: &[BigRational]) -> Result<FormInvariants> {
    let rank = diagonal.len();
    let pos = diagonal.iter().filter(|d| d.is_positive()).count();
    let neg = rank - pos;
    let classes: Vec<BigInt> = diagonal.iter().map(arith::square_class).collect();
    let mut disc = BigInt::one();
    for c in &classes {
        disc *= c;
    }
    let disc_class = arith::squarefree_part(&disc);

    // Candidate primes: 2 and everything dividing a square class.
    let mut primes: BTreeSet<BigInt> = BTreeSet::new();
    primes.insert(BigInt::from(2));
    for c in &classes {
        for (p, _) in arith::factor(c) {
            primes.insert(p);
        }
    }
    let mut hasse = BTreeMap::new();
    for p in primes {
        let place = Place::Prime(p.clone());
        let mut e = 1i8;
        for i in 0..rank {
            for j in (i + 1)..rank {
                e *= hilbert_symbol(
                    &BigRational::from(classes[i].clone()),
                    &BigRational::from(classes[j].clone()),
                    &place,
                )?;
            }
        }
        hasse.insert(p, e);
    }
    Ok(FormInvariants {
        rank,
        signature: (pos, neg),
        disc_class,
        hasse,
    })
}

/// Invariants of `m` hyperbolic planes: the reference for splitness of a
/// rank `2m` form with the discriminant-1 normalization.
pub fn split_reference_invariants(m: usize) -> FormInvariants {
    // H^m diagonalizes to (2,-2)^m = (1,-1)^m up to squares; disc class is
    // the class of (-1)^m and the Hasse invariant is (-1,-1)_v^(m(m-1)/2).
    let disc_class = if m % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let mut hasse = BTreeMap::new();
    let e2 = if (m * (m.saturating_sub(1)) / 2) % 2 == 0 {
        1
    } else {
        // (-1,-1)_2 = -1
        -1
    };
    hasse.insert(BigInt::from(2), e2);
    FormInvariants {
        rank: 2 * m,
        signature: (m, m),
        disc_class,
        hasse,
    }
}

/// True iff `g` has the invariants of the split space of even rank `2m`
/// with trivial (normalized) discriminant: signature `(m, m)`, discriminant
/// class `(-1)^m`, and Hasse `(-1,-1)_v^(m(m-1)/2)` at every place.
pub fn is_split_disc1(g: &GramMatrix) -> Result<bool> {
    let inv = form_invariants(g)?;
    if inv.rank % 2 != 0 {
        return Err(Error::domain("splitness test needs even rank"));
    }
    Ok(invariants_are_split(&inv))
}

pub fn invariants_are_split(inv: &FormInvariants) -> bool {
    let m = inv.rank / 2;
    let reference = split_reference_invariants(m);
    if inv.signature != reference.signature || inv.disc_class != reference.disc_class {
        return false;
    }
    // Compare Hasse maps over the union of listed primes.
    let mut primes: BTreeSet<BigInt> = inv.hasse.keys().cloned().collect();
    primes.extend(reference.hasse.keys().cloned());
    primes
        .iter()
        .all(|p| inv.hasse_at(p) == reference.hasse_at(p))
}

/// A hyperbolic basis `e_1..e_m, f_m..f_1` whose Gram matrix is exactly the
/// anti-diagonal matrix `A`.
pub struct HyperbolicBasis {
    /// Columns in the order `e_1, ..., e_m, f_m, ..., f_1`.
    pub basis: RatMat,
}

impl HyperbolicBasis {
    pub fn half_dim(&self) -> usize {
        self.basis.cols() / 2
    }

    pub fn e(&self, i: usize) -> Vec<BigRational> {
        self.basis.col(i)
    }

    pub fn f(&self, i: usize) -> Vec<BigRational> {
        let m = self.half_dim();
        // f_i sits at column 2m - i (1-indexed i)
        self.basis.col(2 * m - i)
    }
}

/// Completes a maximal isotropic subspace to a full hyperbolic basis with
/// Gram exactly `A`, by dual-vector solves and isotropic corrections; no
/// square roots are taken. The first half of the output basis is the input
/// span, in the input order.
pub fn hyperbolic_completion(g: &GramMatrix, iso: &[Vec<BigRational>]) -> Result<HyperbolicBasis> {
    let dim = g.dim();
    if dim % 2 != 0 {
        return Err(Error::domain("hyperbolic completion needs even dimension"));
    }
    let m = dim / 2;
    if iso.len() != m {
        return Err(Error::domain(format!(
            "isotropic subspace must have dimension {}, got {}",
            m,
            iso.len()
        )));
    }
    for v in iso {
        if v.len() != dim {
            return Err(Error::domain("isotropic vector has wrong length"));
        }
    }
    // Isotropy check with certificates.
    for (i, v) in iso.iter().enumerate() {
        for (j, w) in iso.iter().enumerate().skip(i) {
            let p = g.pair(v, w);
            if !p.is_zero() {
                return Err(Error::domain(format!(
                    "input is not isotropic: <v_{}, v_{}> = {}",
                    i + 1,
                    j + 1,
                    p
                )));
            }
        }
    }
    let mut e = RatMat::zero(dim, m);
    for (j, v) in iso.iter().enumerate() {
        e.set_col(j, v);
    }
    if e.rank() < m {
        return Err(Error::domain("isotropic vectors are linearly dependent"));
    }
    // Solve E^t G W = I for dual vectors W.
    let etg = e.transpose().mul(g.matrix());
    let w = etg.solve_particular(&RatMat::identity(m)).map_err(|_| {
        Error::domain("no dual vectors exist: form is degenerate or not split")
    })?;
    // Correct the duals to an isotropic complement: F = W - E * (W^t G W)/2.
    let s = w.transpose().mul(g.matrix()).mul(&w);
    let c = s.scale(&BigRational::new(BigInt::one(), BigInt::from(2)));
    let f = w.sub(&e.mul(&c));

    let mut basis = RatMat::zero(dim, dim);
    for j in 0..m {
        basis.set_col(j, &e.col(j));
    }
    for j in 0..m {
        // f_j goes to column 2m - j (0-indexed: 2m - 1 - j)
        basis.set_col(2 * m - 1 - j, &f.col(j));
    }
    let gram = basis.transpose().mul(g.matrix()).mul(&basis);
    if gram != RatMat::anti_identity(dim) {
        return Err(Error::verify(
            "hyperbolic completion failed to reach the anti-diagonal Gram",
        ));
    }
    Ok(HyperbolicBasis { basis })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn diagonalize_hyperbolic_plane() {
        let g = GramMatrix::from_i64(2, &[0, 1, 1, 0]).unwrap();
        let d = diagonalize(&g);
        let inv = invariants_of_diagonal(&d.diagonal).unwrap();
        assert_eq!(inv.signature, (1, 1));
        assert_eq!(inv.disc_class, BigInt::from(-1));
        assert!(inv.hasse.values().all(|&e| e == 1));
        // congruence check
        let p = d.basis_change;
        let back = p.transpose().mul(g.matrix()).mul(&p);
        for i in 0..2 {
            for j in 0..2 {
                if i == j {
                    assert_eq!(back[(i, j)], d.diagonal[i]);
                } else {
                    assert!(back[(i, j)].is_zero());
                }
            }
        }
    }

    #[test]
    fn diagonalize_identity_is_identity() {
        let g = GramMatrix::from_i64(3, &[1, 0, 0, 0, 1, 0, 0, 0, 1]).unwrap();
        let d = diagonalize(&g);
        assert_eq!(d.basis_change, RatMat::identity(3));
        assert!(d.diagonal.iter().all(|x| *x == rat(1)));
    }

    #[test]
    fn already_diagonal_disc_reduction() {
        let g = GramMatrix::from_i64(2, &[2, 0, 0, -8]).unwrap();
        let inv = form_invariants(&g).unwrap();
        assert_eq!(inv.disc_class, BigInt::from(-1));
        assert_eq!(inv.signature, (1, 1));
    }

    #[test]
    fn hilbert_symbol_values() {
        let m1 = rat(-1);
        assert_eq!(hilbert_symbol(&m1, &m1, &Place::Infinity).unwrap(), -1);
        assert_eq!(
            hilbert_symbol(&m1, &m1, &Place::Prime(BigInt::from(2))).unwrap(),
            -1
        );
        assert_eq!(
            hilbert_symbol(&rat(2), &rat(3), &Place::Prime(BigInt::from(3))).unwrap(),
            -1
        );
    }

    #[test]
    fn hilbert_product_formula_on_samples() {
        // prod over all places of (a,b)_v = 1
        for (a, b) in [(3i64, 5i64), (-2, 7), (6, -15), (30, 42), (-1, -1)] {
            let ar = rat(a);
            let br = rat(b);
            let mut prod = hilbert_symbol(&ar, &br, &Place::Infinity).unwrap();
            let mut primes = BTreeSet::new();
            primes.insert(BigInt::from(2));
            for (p, _) in arith::factor(&BigInt::from(a)) {
                primes.insert(p);
            }
            for (p, _) in arith::factor(&BigInt::from(b)) {
                primes.insert(p);
            }
            for p in primes {
                prod *= hilbert_symbol(&ar, &br, &Place::Prime(p)).unwrap();
            }
            assert_eq!(prod, 1, "product formula failed for ({}, {})", a, b);
        }
    }

    #[test]
    fn standard_split_is_split() {
        for dim in [4usize, 6, 8, 10, 12] {
            let g = GramMatrix::standard_split(dim);
            assert!(is_split_disc1(&g).unwrap(), "dim {}", dim);
        }
    }

    #[test]
    fn definite_forms_are_not_split() {
        for dim in [2usize, 4, 6] {
            let g = GramMatrix::new(RatMat::identity(dim)).unwrap();
            assert!(!is_split_disc1(&g).unwrap());
        }
        let g = GramMatrix::from_i64(
            6,
            &[
                1, 0, 0, 0, 0, 0, //
                0, 1, 0, 0, 0, 0, //
                0, 0, -1, 0, 0, 0, //
                0, 0, 0, -1, 0, 0, //
                0, 0, 0, 0, 2, 0, //
                0, 0, 0, 0, 0, -3,
            ],
        )
        .unwrap();
        // disc class -6 != -1
        assert!(!is_split_disc1(&g).unwrap());
    }

    #[test]
    fn completion_of_standard_basis() {
        let g = GramMatrix::standard_split(4);
        let e1 = vec![rat(1), rat(0), rat(0), rat(0)];
        let e2 = vec![rat(0), rat(1), rat(0), rat(0)];
        let h = hyperbolic_completion(&g, &[e1, e2]).unwrap();
        assert_eq!(h.basis, RatMat::identity(4));
    }

    #[test]
    fn completion_rejects_anisotropic_vector() {
        let g = GramMatrix::from_i64(2, &[0, 1, 1, 0]).unwrap();
        let v = vec![rat(1), rat(1)]; // <v,v> = 2
        assert!(hyperbolic_completion(&g, &[v]).is_err());
    }

    #[test]
    fn completion_of_skewed_isotropic() {
        // Split form diag(1,-1,1,-1); max isotropic span{(1,1,0,0),(0,0,1,1)}.
        let g = GramMatrix::from_i64(4, &[1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1])
            .unwrap();
        let u1 = vec![rat(1), rat(1), rat(0), rat(0)];
        let u2 = vec![rat(0), rat(0), rat(1), rat(1)];
        let h = hyperbolic_completion(&g, &[u1.clone(), u2]).unwrap();
        // first half of the basis is the input span in order
        assert_eq!(h.basis.col(0), u1);
        let gram = h.basis.transpose().mul(g.matrix()).mul(&h.basis);
        assert_eq!(gram, RatMat::anti_identity(4));
    }

    #[test]
    fn hasse_bilinearity_samples() {
        // (a, b1 b2)_v = (a,b1)_v (a,b2)_v
        let places = [
            Place::Infinity,
            Place::Prime(BigInt::from(2)),
            Place::Prime(BigInt::from(3)),
            Place::Prime(BigInt::from(5)),
        ];
        let vals = [-10i64, -3, -1, 2, 5, 6, 15];
        for &a in &vals {
            for &b1 in &vals {
                for &b2 in &vals {
                    for pl in &places {
                        let lhs = hilbert_symbol(&rat(a), &rat(b1 * b2), pl).unwrap();
                        let rhs = hilbert_symbol(&rat(a), &rat(b1), pl).unwrap()
                            * hilbert_symbol(&rat(a), &rat(b2), pl).unwrap();
                        assert_eq!(lhs, rhs, "bilinearity failed at {:?} ({},{},{})", pl, a, b1, b2);
                    }
                }
            }
        }
    }
}
