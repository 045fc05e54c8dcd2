//! Exact real-root counting by Sturm sequences.

use num_rational::BigRational;
use num_traits::Zero;

use super::int_poly::IntPoly;
use super::rat_poly::RatPoly;
use crate::error::Error;
use crate::Result;

/// Number of distinct real roots of a nonzero polynomial, exactly.
pub fn real_root_count(f: &IntPoly) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::domain("zero polynomial has no root count"));
    }
    if f.deg() == 0 {
        return Ok(0);
    }
    let sf = f.squarefree_part()?;
    if sf.deg() == 0 {
        return Ok(0);
    }
    let chain = sturm_chain(&RatPoly::from_int(sf));
    let at_minus = sign_changes(&chain, End::MinusInfinity);
    let at_plus = sign_changes(&chain, End::PlusInfinity);
    Ok(at_minus - at_plus)
}

/// Number of pairs of complex-conjugate roots of a separable polynomial of
/// even degree: `m = (deg - #real roots) / 2`.
pub fn complex_pair_count(f: &IntPoly) -> Result<usize> {
    let d = f
        .degree()
        .ok_or_else(|| Error::domain("zero polynomial"))?;
    let r = real_root_count(f)?;
    debug_assert!((d - r) % 2 == 0, "non-real roots come in pairs");
    Ok((d - r) / 2)
}

fn sturm_chain(f: &RatPoly) -> Vec<RatPoly> {
    let mut chain = vec![f.clone(), f.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        if chain[n - 1].degree() == Some(0) {
            break;
        }
        let (_, r) = chain[n - 2]
            .div_rem(&chain[n - 1])
            .expect("nonzero divisor in Sturm chain");
        if r.is_zero() {
            break;
        }
        chain.push(r.neg());
    }
    chain
}

enum End {
    MinusInfinity,
    PlusInfinity,
}

fn sign_changes(chain: &[RatPoly], end: End) -> usize {
    let signs: Vec<i8> = chain
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| {
            let lc: BigRational = p.lc();
            let s = if lc > BigRational::zero() { 1i8 } else { -1i8 };
            match end {
                End::PlusInfinity => s,
                End::MinusInfinity => {
                    if p.degree().unwrap_or(0) % 2 == 0 {
                        s
                    } else {
                        -s
                    }
                }
            }
        })
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratics() {
        assert_eq!(real_root_count(&IntPoly::from_i64(&[-1, 0, 1])).unwrap(), 2);
        assert_eq!(real_root_count(&IntPoly::from_i64(&[1, 0, 1])).unwrap(), 0);
    }

    #[test]
    fn x6_plus_3_has_no_real_roots() {
        let f = IntPoly::from_i64(&[3, 0, 0, 0, 0, 0, 1]);
        assert_eq!(real_root_count(&f).unwrap(), 0);
        assert_eq!(complex_pair_count(&f).unwrap(), 3);
    }

    #[test]
    fn x6_minus_1_has_two_real_roots() {
        let f = IntPoly::from_i64(&[-1, 0, 0, 0, 0, 0, 1]);
        assert_eq!(real_root_count(&f).unwrap(), 2);
        assert_eq!(complex_pair_count(&f).unwrap(), 2);
    }

    #[test]
    fn split_sextic() {
        // (x-1)(x-2)(x-3)(x-4)(x-5)(x-6)
        let mut f = IntPoly::one();
        for a in 1..=6 {
            f = f.mul(&IntPoly::from_i64(&[-a, 1]));
        }
        assert_eq!(real_root_count(&f).unwrap(), 6);
        assert_eq!(complex_pair_count(&f).unwrap(), 0);
    }

    #[test]
    fn repeated_roots_counted_once() {
        let f = IntPoly::from_i64(&[-1, 1]);
        let g = f.mul(&f).mul(&IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(real_root_count(&g).unwrap(), 1);
    }
}
