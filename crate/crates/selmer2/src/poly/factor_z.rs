//! Irreducible factorization over `Z` by the Zassenhaus method:
//! squarefree decomposition, mod-p factorization, Hensel lifting to a
//! Mignotte-bounded precision, and bounded subset recombination.
//!
//! Degrees in this crate stay small (at most ~12), so exponential
//! recombination is acceptable.

use num_bigint::BigInt;

use num_traits::{One, Signed, Zero};

use super::hensel::{hensel_lift, reduce_poly_symmetric};
use super::int_poly::IntPoly;
use super::modp::{self, ModPoly};
use crate::error::Error;
use crate::Result;

/// Factorization over `Z`: `input = unit * prod factors[i]^mult[i]`, with
/// primitive irreducible factors of positive leading coefficient.
#[derive(Clone, Debug)]
pub struct ZFactors {
    pub unit: BigInt,
    pub factors: Vec<(IntPoly, u32)>,
}

impl ZFactors {
    pub fn verify(&self, a: &IntPoly) -> bool {
        let mut prod = IntPoly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            for _ in 0..*m {
                prod = prod.mul(f);
            }
        }
        prod == *a
    }

    /// Degrees of irreducible factors with multiplicity, sorted.
    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(f, m)| std::iter::repeat(f.deg()).take(*m as usize))
            .collect();
        v.sort_unstable();
        v
    }

    pub fn has_odd_degree_factor(&self) -> bool {
        self.factors.iter().any(|(f, _)| f.deg() % 2 == 1)
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Complete irreducible factorization of a nonzero polynomial over `Z`.
pub fn factor_over_z(a: &IntPoly) -> Result<ZFactors> {
    if a.is_zero() {
        return Err(Error::domain("cannot factor the zero polynomial"));
    }
    let content = a.content();
    let sign = if a.lc().is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let unit = &sign * &content;
    let prim = IntPoly::new(a.coeffs().iter().map(|c| c / &unit).collect());

    let mut factors: Vec<(IntPoly, u32)> = Vec::new();
    for (g, mult) in squarefree_decomposition(&prim)? {
        if g.degree() == Some(0) {
            continue;
        }
        for irr in factor_squarefree_z(&g)? {
            factors.push((irr, mult));
        }
    }
    factors.sort_by(|x, y| {
        (x.0.deg(), x.0.coeffs(), x.1).cmp(&(y.0.deg(), y.0.coeffs(), y.1))
    });
    let out = ZFactors { unit, factors };
    if !out.verify(a) {
        return Err(Error::verify(
            "factorization over Z failed to reproduce the input",
        ));
    }
    Ok(out)
}

/// Yun's squarefree decomposition over `Z` (characteristic zero):
/// returns pairs `(g_i, i)` with `prim = unit * prod g_i^i`, each `g_i`
/// squarefree and the `g_i` pairwise coprime.
fn squarefree_decomposition(prim: &IntPoly) -> Result<Vec<(IntPoly, u32)>> {
    let mut out = Vec::new();
    if prim.degree().map_or(true, |d| d == 0) {
        return Ok(out);
    }
    let deriv = prim.derivative();
    let g = prim.gcd(&deriv);
    if g.degree() == Some(0) {
        out.push((prim.clone(), 1));
        return Ok(out);
    }
    // Divisions below are exact over Z by Gauss's lemma (the divisors are
    // primitive with positive leading coefficient).
    let mut b = prim.div_exact(&g)?;
    let mut d = deriv.div_exact(&g)?.sub(&b.derivative());
    let mut i = 1u32;
    while b.degree().map_or(false, |deg| deg > 0) {
        let a = b.gcd(&d);
        if a.degree().map_or(false, |deg| deg > 0) {
            out.push((a.clone(), i));
        }
        b = b.div_exact(&a)?;
        let c = d.div_exact(&a)?;
        d = c.sub(&b.derivative());
        i += 1;
    }
    Ok(out)
}

/// Factors a primitive squarefree polynomial of degree >= 1 over `Z`.
fn factor_squarefree_z(g: &IntPoly) -> Result<Vec<IntPoly>> {
    let deg = g.deg();
    if deg == 1 {
        return Ok(vec![positive_lc(g.clone())]);
    }
    // Choose a prime keeping g squarefree mod p, preferring few factors.
    let mut best: Option<(u64, modp::ModFactors)> = None;
    let mut tried = 0;
    for &p in SMALL_PRIMES {
        if (g.lc().magnitude() % p).is_zero() {
            continue;
        }
        let gp = ModPoly::from_int_poly(g, p);
        if gp.degree() != Some(deg) {
            continue;
        }
        if gp.gcd(&gp.derivative()).degree() != Some(0) {
            continue;
        }
        let f = modp::factor_mod_p(g, p)?;
        let nf = f.factors.len();
        let better = best.as_ref().map_or(true, |(_, b)| nf < b.factors.len());
        if better {
            best = Some((p, f));
        }
        tried += 1;
        if tried >= 4 || best.as_ref().is_some_and(|(_, b)| b.factors.len() == 1) {
            break;
        }
    }
    let (p, modfac) = best.ok_or_else(|| {
        Error::verify("no squarefree prime found below the search bound")
    })?;
    if modfac.factors.len() == 1 {
        return Ok(vec![positive_lc(g.clone())]);
    }

    // Mignotte-style bound: any factor h of g has |h_i| <= 2^deg * ||g||_2,
    // and recombination multiplies by lc(g).
    let norm2: BigInt = g.coeffs().iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let bound: BigInt = (BigInt::from(2).pow(deg as u32 + 1)) * norm2 * g.lc().abs();
    let mut k = 1u32;
    let mut pk = BigInt::from(p);
    let two_bound = BigInt::from(2) * &bound;
    while pk <= two_bound {
        pk *= BigInt::from(p);
        k += 1;
    }
    let local: Vec<IntPoly> = modfac
        .factors
        .iter()
        .map(|(f, _)| f.to_int_poly())
        .collect();
    let lifted = hensel_lift(g, p, &local, k)?;

    // Subset recombination over the lifted factors.
    let mut pool: Vec<IntPoly> = lifted;
    let mut remaining = g.clone();
    let mut out = Vec::new();
    let mut size = 1usize;
    while 2 * size <= pool.len() {
        let mut found = true;
        while found {
            found = false;
            let indices: Vec<usize> = (0..pool.len()).collect();
            for subset in subsets_of_size(&indices, size) {
                let mut cand = IntPoly::constant(remaining.lc());
                for &i in &subset {
                    cand = reduce_poly_symmetric(&cand.mul(&pool[i]), &pk);
                }
                let cand = positive_lc(cand.primitive_part());
                if cand.degree().map_or(true, |d| d == 0) {
                    continue;
                }
                let scaled = remaining.scale(&cand.lc());
                if let Ok(q) = scaled.div_exact(&cand) {
                    out.push(cand.clone());
                    remaining = q.primitive_part();
                    let mut keep = Vec::new();
                    for (i, f) in pool.drain(..).enumerate() {
                        if !subset.contains(&i) {
                            keep.push(f);
                        }
                    }
                    pool = keep;
                    found = true;
                    break;
                }
            }
        }
        size += 1;
    }
    if remaining.degree().map_or(false, |d| d > 0) {
        out.push(positive_lc(remaining.primitive_part()));
    }
    Ok(out)
}

fn positive_lc(p: IntPoly) -> IntPoly {
    if p.lc().is_negative() {
        p.neg()
    } else {
        p
    }
}

fn subsets_of_size(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = items.len();
    if size > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // advance combination
        let mut i = size;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - size {
                break;
            }
        }
        if idx[i] == i + n - size {
            return out;
        }
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

const SMALL_PRIMES: &[u64] = &[
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
    193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283,
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x6_plus_1_splits() {
        let a = IntPoly::from_i64(&[1, 0, 0, 0, 0, 0, 1]);
        let f = factor_over_z(&a).unwrap();
        assert_eq!(f.degree_multiset(), vec![2, 4]);
        // (x^2+1)(x^4-x^2+1)
        assert_eq!(f.factors[0].0, IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(f.factors[1].0, IntPoly::from_i64(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn x6_plus_3_irreducible() {
        let a = IntPoly::from_i64(&[3, 0, 0, 0, 0, 0, 1]);
        let f = factor_over_z(&a).unwrap();
        assert!(f.is_irreducible());
    }

    #[test]
    fn x6_minus_1_splits_completely() {
        let a = IntPoly::from_i64(&[-1, 0, 0, 0, 0, 0, 1]);
        let f = factor_over_z(&a).unwrap();
        assert_eq!(f.degree_multiset(), vec![1, 1, 2, 2]);
        assert!(f.verify(&a));
    }

    #[test]
    fn multiplicities_recovered() {
        let a = IntPoly::from_i64(&[-1, 1]);
        let b = IntPoly::from_i64(&[1, 1, 1]);
        let prod = a.mul(&a).mul(&b).mul(&b).mul(&b).scale(&BigInt::from(-6));
        let f = factor_over_z(&prod).unwrap();
        assert_eq!(f.unit, BigInt::from(-6));
        assert_eq!(f.degree_multiset(), vec![1, 1, 2, 2, 2]);
        assert!(f.verify(&prod));
    }

    #[test]
    fn non_monic_content() {
        // 6x^2 - 6 = 6 (x-1)(x+1)
        let a = IntPoly::from_i64(&[-6, 0, 6]);
        let f = factor_over_z(&a).unwrap();
        assert_eq!(f.unit, BigInt::from(6));
        assert_eq!(f.degree_multiset(), vec![1, 1]);
    }

    #[test]
    fn quartic_with_odd_factor() {
        // (x-2)(x^3+x+1), the cubic is irreducible
        let a = IntPoly::from_i64(&[-2, 1]).mul(&IntPoly::from_i64(&[1, 1, 0, 1]));
        let f = factor_over_z(&a).unwrap();
        assert!(f.has_odd_degree_factor());
        assert_eq!(f.degree_multiset(), vec![1, 3]);
    }
}
