//! Integer auxiliaries: primality, factorization, squarefree parts and
//! Legendre symbols on arbitrary-precision integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::modp::is_prime_u64;

/// Primality for arbitrary-precision integers: exact below 2^64, strong
/// probable-prime with fixed witnesses above (inputs in this crate stay
/// far below sizes where that matters).
pub fn is_prime(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    if let Some(u) = n.to_u64() {
        return is_prime_u64(u);
    }
    let two = BigInt::from(2);
    if n.is_even() {
        return false;
    }
    let n_minus_1 = n - BigInt::one();
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d /= &two;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let ab = BigInt::from(a);
        let mut x = ab.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization of `|n|` by trial division then Pollard rho.
pub fn factor(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut m = n.abs();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    if m.is_zero() || m.is_one() {
        return out;
    }
    for p in 2u64..=100_000 {
        let pb = BigInt::from(p);
        if &pb * &pb > m {
            break;
        }
        let mut e = 0u32;
        while (&m % &pb).is_zero() {
            m /= &pb;
            e += 1;
        }
        if e > 0 {
            out.push((pb, e));
        }
        if m.is_one() {
            return out;
        }
    }
    let mut stack = vec![m];
    let mut large: Vec<BigInt> = Vec::new();
    while let Some(c) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if is_prime(&c) {
            large.push(c);
            continue;
        }
        let d = pollard_rho(&c);
        stack.push(&c / &d);
        stack.push(d);
    }
    large.sort();
    for p in large {
        if let Some(last) = out.last_mut() {
            if last.0 == p {
                last.1 += 1;
                continue;
            }
        }
        out.push((p, 1));
    }
    out.sort();
    out
}

fn pollard_rho(n: &BigInt) -> BigInt {
    // Brent's variant with deterministic restarts.
    let one = BigInt::one();
    if n.is_even() {
        return BigInt::from(2);
    }
    let mut c = BigInt::one();
    loop {
        let mut x = BigInt::from(2);
        let mut y = BigInt::from(2);
        let mut d = BigInt::one();
        let f = |v: &BigInt| (v * v + &c) % n;
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            let diff = (&x - &y).abs();
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
        }
        if !d.is_one() && &d != n {
            return d;
        }
        c += &one;
    }
}

/// Squarefree part of `n`, keeping the sign: the unique squarefree `s` with
/// `n = s * t^2`.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    if n.is_zero() {
        return BigInt::zero();
    }
    let mut s = BigInt::one();
    for (p, e) in factor(n) {
        if e % 2 == 1 {
            s *= p;
        }
    }
    if n.is_negative() {
        -s
    } else {
        s
    }
}

/// Squarefree representative of the square class of a nonzero rational.
pub fn square_class(x: &BigRational) -> BigInt {
    squarefree_part(&(x.numer() * x.denom()))
}

/// Legendre symbol `(a | p)` for odd prime `p`: 0, 1 or -1.
pub fn legendre(a: &BigInt, p: &BigInt) -> i8 {
    let r = a.mod_floor(p);
    if r.is_zero() {
        return 0;
    }
    let e = (p - BigInt::one()) / BigInt::from(2);
    let s = r.modpow(&e, p);
    if s.is_one() {
        1
    } else {
        -1
    }
}

/// Is the rational a square in `Q`?
pub fn is_rational_square(x: &BigRational) -> bool {
    if x.is_negative() {
        return false;
    }
    if x.is_zero() {
        return true;
    }
    let ns = x.numer().sqrt();
    let ds = x.denom().sqrt();
    &(&ns * &ns) == x.numer() && &(&ds * &ds) == x.denom()
}

/// Exact square root of a rational square.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let ns = x.numer().sqrt();
    let ds = x.denom().sqrt();
    if &(&ns * &ns) == x.numer() && &(&ds * &ds) == x.denom() {
        Some(BigRational::new(ns, ds))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_small() {
        let f = factor(&BigInt::from(-46656)); // 6^6
        assert_eq!(f, vec![(BigInt::from(2), 6), (BigInt::from(3), 6)]);
        assert_eq!(squarefree_part(&BigInt::from(-46656)), BigInt::from(-1));
        assert_eq!(squarefree_part(&BigInt::from(12)), BigInt::from(3));
    }

    #[test]
    fn factor_semiprime() {
        let n = BigInt::from(1000003u64) * BigInt::from(1000033u64);
        let f = factor(&n);
        assert_eq!(
            f,
            vec![(BigInt::from(1000003u64), 1), (BigInt::from(1000033u64), 1)]
        );
    }

    #[test]
    fn legendre_symbols() {
        let p = BigInt::from(3);
        assert_eq!(legendre(&BigInt::from(2), &p), -1);
        assert_eq!(legendre(&BigInt::from(4), &p), 1);
        assert_eq!(legendre(&BigInt::from(6), &p), 0);
    }

    #[test]
    fn square_classes() {
        let x = BigRational::new(BigInt::from(8), BigInt::from(9));
        assert_eq!(square_class(&x), BigInt::from(2));
        assert!(is_rational_square(&BigRational::new(
            BigInt::from(49),
            BigInt::from(4)
        )));
    }
}
