//! Hensel lifting of coprime mod-p factorizations to prime-power moduli.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::int_poly::IntPoly;
use super::modp::{self, ModPoly};
use crate::error::Error;
use crate::Result;

/// Reduces every coefficient into `[0, m)`.
pub fn reduce_poly_mod(a: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(a.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

/// Reduces every coefficient into the symmetric range `(-m/2, m/2]`.
pub fn reduce_poly_symmetric(a: &IntPoly, m: &BigInt) -> IntPoly {
    let half = m / BigInt::from(2);
    IntPoly::new(
        a.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}


/// Lifts a factorization `a = prod(factors) mod p` (all monic, pairwise
/// coprime mod p, `a` monic mod p after unit normalization) to a
/// factorization mod `p^k`. Output coefficients are in the symmetric range.
pub fn hensel_lift(a: &IntPoly, p: u64, factors: &[IntPoly], k: u32) -> Result<Vec<IntPoly>> {
    if !modp::is_prime_u64(p) {
        return Err(Error::domain(format!("modulus {} is not prime", p)));
    }
    if k == 0 {
        return Err(Error::domain("precision k must be positive"));
    }
    if a.is_zero() {
        return Err(Error::domain("cannot lift factors of the zero polynomial"));
    }
    let mods: Vec<ModPoly> = factors.iter().map(|f| ModPoly::from_int_poly(f, p)).collect();
    for f in &mods {
        if f.degree().map_or(true, |d| d == 0) {
            return Err(Error::domain("factors must be non-constant mod p"));
        }
        if f.lc() != 1 {
            return Err(Error::domain("factors must be monic mod p"));
        }
    }
    for i in 0..mods.len() {
        for j in (i + 1)..mods.len() {
            let g = mods[i].gcd(&mods[j]);
            if g.degree() != Some(0) {
                return Err(Error::domain(format!(
                    "factors {} and {} are not coprime mod {}",
                    factors[i], factors[j], p
                )));
            }
        }
    }
    let ap = ModPoly::from_int_poly(a, p);
    if ap.is_zero() {
        return Err(Error::domain("polynomial vanishes mod p"));
    }
    let mut prod = ModPoly::one(p);
    for f in &mods {
        prod = prod.mul(f);
    }
    if prod != ap.monic() {
        return Err(Error::domain(
            "product of the given factors does not reproduce the input mod p",
        ));
    }

    // Normalize a to a monic polynomial mod p^k (unit is lifted separately
    // by the caller; for monic a this is the identity).
    let pk = BigInt::from(p).pow(k);
    let lc_inv = mod_inverse(&a.lc(), &pk)?;
    let monic_a = reduce_poly_mod(&a.scale(&lc_inv), &pk);

    let mut lifted = Vec::with_capacity(mods.len());
    let mut current = monic_a;
    let mut iter = mods.iter().peekable();
    while let Some(g) = iter.next() {
        if iter.peek().is_none() {
            lifted.push(current.clone());
            break;
        }
        let h: ModPoly = {
            let mut acc = ModPoly::one(p);
            for rest in iter.clone() {
                acc = acc.mul(rest);
            }
            acc
        };
        let (gk, hk) = lift_pair(&current, g, &h, p, k)?;
        lifted.push(gk);
        current = hk;
    }
    Ok(lifted
        .into_iter()
        .map(|f| reduce_poly_symmetric(&f, &pk))
        .collect())
}

/// Lifts `a = g*h mod p` (monic, coprime) to `a = G*H mod p^k` by linear
/// Hensel steps. `a` must be monic with coefficients reduced mod `p^k`.
fn lift_pair(a: &IntPoly, g: &ModPoly, h: &ModPoly, p: u64, k: u32) -> Result<(IntPoly, IntPoly)> {
    let (s, t) = bezout_mod_p(g, h)?;
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut gg = g.to_int_poly();
    let mut hh = h.to_int_poly();
    for _ in 1..k {
        let next = &modulus * &pb;
        // e = (a - g*h) / modulus mod p
        let diff = a.sub(&gg.mul(&hh));
        let e_big = IntPoly::new(
            diff.coeffs()
                .iter()
                .map(|c| {
                    let (q, r) = c.mod_floor(&next).div_rem(&modulus);
                    debug_assert!(r.is_zero());
                    q
                })
                .collect(),
        );
        let e = ModPoly::from_int_poly(&e_big, p);
        // Solve u*h + v*g = e with deg u < deg g, deg v < deg h.
        let u = t.mul(&e).rem(g);
        let v = {
            let num = e.sub(&u.mul(h));
            let (q, r) = num.div_rem(g);
            if !r.is_zero() {
                return Err(Error::verify("hensel step failed exact division"));
            }
            let _ = &s; // s retained for clarity of the Bezout data
            q
        };
        gg = reduce_poly_mod(&gg.add(&u.to_int_poly().scale(&modulus)), &next);
        hh = reduce_poly_mod(&hh.add(&v.to_int_poly().scale(&modulus)), &next);
        modulus = next;
    }
    Ok((gg, hh))
}

/// Extended Euclid over `F_p`: returns `(s, t)` with `s*g + t*h = 1`.
fn bezout_mod_p(g: &ModPoly, h: &ModPoly) -> Result<(ModPoly, ModPoly)> {
    let p = g.p;
    let (mut r0, mut r1) = (g.clone(), h.clone());
    let (mut s0, mut s1) = (ModPoly::one(p), ModPoly::zero(p));
    let (mut t0, mut t1) = (ModPoly::zero(p), ModPoly::one(p));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s = s0.sub(&q.mul(&s1));
        let t = t0.sub(&q.mul(&t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    if r0.degree() != Some(0) {
        return Err(Error::domain("factors are not coprime mod p"));
    }
    let inv = modp::inv_mod_u64(r0.lc(), p);
    Ok((s0.scale(inv), t0.scale(inv)))
}

/// Inverse of `a` modulo `m` (model: m a prime power, gcd(a, m) = 1).
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Result<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return Err(Error::domain("element is not invertible mod m"));
    }
    Ok(e.x.mod_floor(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lift_exact_factors() {
        // x^2 - 1 = (x-1)(x+1) mod 3 lifts to itself mod 9
        let a = IntPoly::from_i64(&[-1, 0, 1]);
        let fs = vec![IntPoly::from_i64(&[-1, 1]), IntPoly::from_i64(&[1, 1])];
        let lifted = hensel_lift(&a, 3, &fs, 2).unwrap();
        assert_eq!(lifted[0], IntPoly::from_i64(&[-1, 1]));
        assert_eq!(lifted[1], IntPoly::from_i64(&[1, 1]));
    }

    #[test]
    fn lift_sqrt2_mod_49() {
        // x^2 - 2 = (x-3)(x+3) mod 7 lifts to (x-10)(x+10) mod 49
        let a = IntPoly::from_i64(&[-2, 0, 1]);
        let fs = vec![IntPoly::from_i64(&[-3, 1]), IntPoly::from_i64(&[3, 1])];
        let lifted = hensel_lift(&a, 7, &fs, 2).unwrap();
        assert_eq!(lifted[0], IntPoly::from_i64(&[-10, 1]));
        assert_eq!(lifted[1], IntPoly::from_i64(&[10, 1]));
    }

    #[test]
    fn non_coprime_rejected() {
        // x^2 + 1 = (x+1)^2 mod 2: the two copies are not coprime
        let a = IntPoly::from_i64(&[1, 0, 1]);
        let fs = vec![IntPoly::from_i64(&[1, 1]), IntPoly::from_i64(&[1, 1])];
        assert!(hensel_lift(&a, 2, &fs, 2).is_err());
    }

    #[test]
    fn product_reproduces_input_mod_pk() {
        let a = IntPoly::from_i64(&[2, -7, 0, 1, 1]);
        // factor mod 5 first
        let f = super::super::modp::factor_mod_p(&a, 5).unwrap();
        assert!(f.is_squarefree());
        let fs: Vec<IntPoly> = f.factors.iter().map(|(q, _)| q.to_int_poly()).collect();
        let k = 6;
        let lifted = hensel_lift(&a, 5, &fs, k).unwrap();
        let pk = BigInt::from(5u64).pow(k);
        let mut prod = IntPoly::one();
        for l in &lifted {
            prod = prod.mul(l);
        }
        let diff = reduce_poly_symmetric(&a.sub(&prod), &pk);
        assert!(diff.is_zero());
        for (l, (m, _)) in lifted.iter().zip(f.factors.iter()) {
            let back = ModPoly::from_int_poly(l, 5);
            assert_eq!(back, *m);
        }
    }
}
