//! Polynomial arithmetic and factorization over `F_p` for word-size primes.
//!
//! Factorization is squarefree decomposition, then distinct-degree
//! splitting, then Cantor-Zassenhaus equal-degree splitting with a
//! deterministically seeded RNG.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::int_poly::IntPoly;
use crate::error::Error;
use crate::Result;

/// Deterministic Miller-Rabin, valid for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod_u64(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

pub fn inv_mod_u64(a: u64, p: u64) -> u64 {
    // p prime, a not divisible by p
    pow_mod_u64(a, p - 2, p)
}

/// Dense polynomial over `F_p`, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ModPoly {
    pub p: u64,
    c: Vec<u64>,
}

impl ModPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        ModPoly { p, c }
    }

    pub fn from_int_poly(a: &IntPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        ModPoly::new(
            p,
            a.coeffs()
                .iter()
                .map(|x| x.mod_floor(&pb).to_u64().unwrap())
                .collect(),
        )
    }

    pub fn to_int_poly(&self) -> IntPoly {
        IntPoly::new(self.c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(p: u64) -> Self {
        ModPoly { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        ModPoly::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        ModPoly::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.c.get(k).copied().unwrap_or(0)
    }

    pub fn lc(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.p;
        let n = self.c.len().max(o.c.len());
        ModPoly::new(p, (0..n).map(|i| (self.coeff(i) + o.coeff(i)) % p).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.p;
        let n = self.c.len().max(o.c.len());
        ModPoly::new(
            p,
            (0..n)
                .map(|i| (self.coeff(i) + p - o.coeff(i)) % p)
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return ModPoly::zero(self.p);
        }
        let p = self.p;
        let mut v = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                v[i + j] = (v[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        ModPoly::new(p, v)
    }

    pub fn scale(&self, s: u64) -> Self {
        ModPoly::new(self.p, self.c.iter().map(|&a| mul_mod(a, s, self.p)).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() || self.lc() == 1 {
            return self.clone();
        }
        self.scale(inv_mod_u64(self.lc(), self.p))
    }

    pub fn rem(&self, m: &Self) -> Self {
        let p = self.p;
        let dm = m.deg();
        let inv = inv_mod_u64(m.lc(), p);
        let mut r = self.c.clone();
        while r.len() > dm {
            let q = mul_mod(*r.last().unwrap(), inv, p);
            let k = r.len() - 1 - dm;
            if q != 0 {
                for (j, &b) in m.c.iter().enumerate() {
                    let idx = k + j;
                    r[idx] = (r[idx] + p - mul_mod(q, b, p)) % p;
                }
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        ModPoly { p, c: r }
    }

    pub fn div_rem(&self, m: &Self) -> (Self, Self) {
        let p = self.p;
        let dm = m.deg();
        let inv = inv_mod_u64(m.lc(), p);
        let mut r = self.c.clone();
        if r.len() <= dm {
            return (ModPoly::zero(p), self.clone());
        }
        let mut q = vec![0u64; r.len() - dm];
        for i in (dm..r.len()).rev() {
            let qi = mul_mod(r[i], inv, p);
            if qi != 0 {
                for (j, &b) in m.c.iter().enumerate() {
                    r[i - dm + j] = (r[i - dm + j] + p - mul_mod(qi, b, p)) % p;
                }
            }
            q[i - dm] = qi;
        }
        r.truncate(dm);
        (ModPoly::new(p, q), ModPoly::new(p, r))
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        if self.c.len() <= 1 {
            return ModPoly::zero(self.p);
        }
        ModPoly::new(
            self.p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &ci)| mul_mod(ci, (i as u64) % self.p, self.p))
                .collect(),
        )
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut acc = ModPoly::one(self.p);
        let mut b = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b).rem(m);
            }
            b = b.mul(&b).rem(m);
            e >>= 1;
        }
        acc
    }

    /// `self^(p^k) mod m` via repeated Frobenius.
    fn frobenius_pow(&self, k: usize, m: &Self) -> Self {
        let mut r = self.rem(m);
        for _ in 0..k {
            r = r.pow_mod(self.p, m);
        }
        r
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.c.iter().rev() {
            acc = (mul_mod(acc, x, self.p) + c) % self.p;
        }
        acc
    }
}

/// Complete factorization over `F_p`: monic irreducible factors with
/// multiplicities and the leading unit.
#[derive(Clone, Debug)]
pub struct ModFactors {
    pub p: u64,
    pub unit: u64,
    pub factors: Vec<(ModPoly, u32)>,
}

impl ModFactors {
    /// Rebuilds the product and compares with `a mod p`.
    pub fn verify(&self, a: &IntPoly) -> bool {
        let mut prod = ModPoly::one(self.p).scale(self.unit);
        for (f, m) in &self.factors {
            for _ in 0..*m {
                prod = prod.mul(f);
            }
        }
        prod == ModPoly::from_int_poly(a, self.p)
    }

    /// Degrees of the irreducible factors with multiplicity, sorted.
    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(f, m)| std::iter::repeat(f.deg()).take(*m as usize))
            .collect();
        v.sort_unstable();
        v
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m == 1)
    }
}

/// Factors `a` completely over `F_p`.
///
/// Errors if `p` is composite or `a` vanishes mod `p`.
pub fn factor_mod_p(a: &IntPoly, p: u64) -> Result<ModFactors> {
    if !is_prime_u64(p) {
        return Err(Error::domain(format!("modulus {} is not prime", p)));
    }
    let ap = ModPoly::from_int_poly(a, p);
    if ap.is_zero() {
        return Err(Error::domain("polynomial vanishes mod p"));
    }
    let unit = ap.lc();
    let monic = ap.monic();
    let mut factors = Vec::new();
    squarefree_decompose(&monic, 1, &mut factors)?;
    // Canonical order: by degree, then coefficients.
    factors.sort_by(|x, y| {
        (x.0.deg(), x.0.coeffs(), x.1).cmp(&(y.0.deg(), y.0.coeffs(), y.1))
    });
    let out = ModFactors { p, unit, factors };
    if !out.verify(a) {
        return Err(Error::verify("mod-p factorization failed to reproduce input"));
    }
    Ok(out)
}

/// Squarefree decomposition over `F_p` with p-th power handling, pushing
/// `(irreducible, multiplicity * mult)` entries into `out`.
fn squarefree_decompose(
    f: &ModPoly,
    mult: u32,
    out: &mut Vec<(ModPoly, u32)>,
) -> Result<()> {
    if f.degree() == Some(0) {
        return Ok(());
    }
    let p = f.p;
    let d = f.derivative();
    if d.is_zero() {
        // f = g(x^p) = g_sigma(x)^p where g_sigma takes p-th roots of coefficients
        // (Frobenius is the identity on F_p, so coefficients are unchanged).
        let mut g = Vec::new();
        for (i, &c) in f.coeffs().iter().enumerate() {
            if i % (p as usize) == 0 {
                g.push(c);
            } else if c != 0 {
                return Err(Error::verify("zero derivative without p-th power shape"));
            }
        }
        return squarefree_decompose(&ModPoly::new(p, g), mult * p as u32, out);
    }
    let g = f.gcd(&d);
    let sqfree = f.div_rem(&g).0.monic();
    // sqfree is the product of the distinct irreducible factors of f not
    // accounted for purely by p-th powers; peel multiplicities by division.
    let irreducibles = factor_squarefree(&sqfree)?;
    let mut rest = f.clone();
    for q in irreducibles {
        let mut m = 0u32;
        loop {
            let (quot, rem) = rest.div_rem(&q);
            if rem.is_zero() {
                rest = quot;
                m += 1;
            } else {
                break;
            }
        }
        out.push((q, m * mult));
    }
    if rest.degree().map_or(false, |d| d > 0) {
        // Leftover is a p-th power part not dividing sqfree.
        squarefree_decompose(&rest.monic(), mult, out)?;
    }
    Ok(())
}

/// Factors a squarefree monic polynomial: distinct-degree splitting then
/// Cantor-Zassenhaus equal-degree splitting.
fn factor_squarefree(f: &ModPoly) -> Result<Vec<ModPoly>> {
    let p = f.p;
    let mut result = Vec::new();
    if f.degree() == Some(0) {
        return Ok(result);
    }
    let mut h = ModPoly::x(p);
    let mut v = f.monic();
    let mut d = 0usize;
    while v.degree().map_or(false, |dv| dv >= 2 * (d + 1)) {
        d += 1;
        h = h.pow_mod(p, &v);
        let g = v.gcd(&h.sub(&ModPoly::x(p)));
        if g.degree().map_or(false, |dg| dg > 0) {
            equal_degree_split(&g, d, &mut result)?;
            v = v.div_rem(&g).0.monic();
            h = h.rem(&v);
        }
    }
    if v.degree().map_or(false, |dv| dv > 0) {
        result.push(v.monic());
    }
    Ok(result)
}

/// Cantor-Zassenhaus equal-degree splitting of a product of distinct
/// irreducibles, all of degree `d`.
fn equal_degree_split(f: &ModPoly, d: usize, out: &mut Vec<ModPoly>) -> Result<()> {
    let p = f.p;
    if f.deg() == d {
        out.push(f.monic());
        return Ok(());
    }
    // Deterministic seed from (p, coefficients) so runs are reproducible.
    let mut seed = [0u8; 32];
    seed[..8].copy_from_slice(&p.to_le_bytes());
    for (i, &c) in f.coeffs().iter().enumerate().take(3) {
        seed[8 + 8 * i..16 + 8 * i].copy_from_slice(&c.to_le_bytes());
    }
    let mut rng = ChaCha8Rng::from_seed(seed);
    let n = f.deg();
    loop {
        let mut coeffs = vec![0u64; n];
        for c in coeffs.iter_mut() {
            *c = rng.gen_range(0..p);
        }
        let a = ModPoly::new(p, coeffs);
        if a.degree().map_or(true, |da| da == 0) {
            continue;
        }
        let g0 = f.gcd(&a);
        if g0.degree().map_or(false, |dg| dg > 0 && dg < f.deg()) {
            equal_degree_split(&g0, d, out)?;
            equal_degree_split(&f.div_rem(&g0).0.monic(), d, out)?;
            return Ok(());
        }
        if p == 2 {
            // Trace map splitting in characteristic 2.
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            let g = f.gcd(&acc);
            if g.degree().map_or(false, |dg| dg > 0 && dg < f.deg()) {
                equal_degree_split(&g, d, out)?;
                equal_degree_split(&f.div_rem(&g).0.monic(), d, out)?;
                return Ok(());
            }
            continue;
        }
        // a^((p^d - 1)/2) mod f separates factors with probability ~1/2.
        let e = (pow_u128(p, d) - 1) / 2;
        let b = pow_mod_u128(&a, e, f);
        let g = f.gcd(&b.sub(&ModPoly::one(p)));
        if g.degree().map_or(false, |dg| dg > 0 && dg < f.deg()) {
            equal_degree_split(&g, d, out)?;
            equal_degree_split(&f.div_rem(&g).0.monic(), d, out)?;
            return Ok(());
        }
    }
}

fn pow_u128(p: u64, d: usize) -> u128 {
    let mut acc = 1u128;
    for _ in 0..d {
        acc *= p as u128;
    }
    acc
}

fn pow_mod_u128(a: &ModPoly, mut e: u128, m: &ModPoly) -> ModPoly {
    let mut acc = ModPoly::one(a.p);
    let mut b = a.rem(m);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&b).rem(m);
        }
        b = b.mul(&b).rem(m);
        e >>= 1;
    }
    acc
}

/// Degrees of irreducible factors as a certificate of irreducibility:
/// `f` of degree `n` is irreducible over `F_p` iff `x^(p^n) = x mod f` and
/// `gcd(x^(p^(n/q)) - x, f) = 1` for every prime `q | n`.
pub fn is_irreducible_mod_p(f: &ModPoly) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(n) => n,
    };
    let p = f.p;
    let fm = f.monic();
    let x = ModPoly::x(p);
    let xq = x.frobenius_pow(n, &fm);
    if xq != x.rem(&fm) {
        return false;
    }
    let mut m = n;
    let mut primes = Vec::new();
    let mut q = 2;
    while q * q <= m {
        if m % q == 0 {
            primes.push(q);
            while m % q == 0 {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    for q in primes {
        let xk = x.frobenius_pow(n / q, &fm);
        let g = fm.gcd(&xk.sub(&x));
        if g.degree() != Some(0) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(3));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561));
    }

    #[test]
    fn factor_x6_plus_1_mod_3() {
        // x^6 + 1 = (x^2 + 1)^3 mod 3
        let a = IntPoly::from_i64(&[1, 0, 0, 0, 0, 0, 1]);
        let f = factor_mod_p(&a, 3).unwrap();
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.factors[0].0, ModPoly::new(3, vec![1, 0, 1]));
        assert_eq!(f.factors[0].1, 3);
    }

    #[test]
    fn factor_x6_minus_1_mod_7() {
        // F_7* has order 6: x^6 - 1 = prod (x - a), a = 1..6
        let a = IntPoly::from_i64(&[-1, 0, 0, 0, 0, 0, 1]);
        let f = factor_mod_p(&a, 7).unwrap();
        assert_eq!(f.degree_multiset(), vec![1, 1, 1, 1, 1, 1]);
        assert!(f.is_squarefree());
        for (q, _) in &f.factors {
            assert!(is_irreducible_mod_p(q));
        }
    }

    #[test]
    fn factor_linear() {
        let a = IntPoly::from_i64(&[0, 1]);
        let f = factor_mod_p(&a, 5).unwrap();
        assert_eq!(f.degree_multiset(), vec![1]);
    }

    #[test]
    fn composite_modulus_rejected() {
        let a = IntPoly::from_i64(&[1, 1]);
        assert!(factor_mod_p(&a, 15).is_err());
    }

    #[test]
    fn mixed_multiplicity() {
        // (x-1)^2 (x^2+1) mod 3: x^2+1 is irreducible mod 3
        let a = IntPoly::from_i64(&[-1, 1]);
        let sq = a.mul(&a).mul(&IntPoly::from_i64(&[1, 0, 1]));
        let f = factor_mod_p(&sq, 3).unwrap();
        assert_eq!(f.degree_multiset(), vec![1, 1, 2]);
        assert!(f.verify(&sq));
    }

    #[test]
    fn irreducibility_certificate() {
        // x^2 + 1 irreducible mod 3, reducible mod 5
        let f3 = ModPoly::new(3, vec![1, 0, 1]);
        assert!(is_irreducible_mod_p(&f3));
        let f5 = ModPoly::new(5, vec![1, 0, 1]);
        assert!(!is_irreducible_mod_p(&f5));
    }

    #[test]
    fn char2_factorization() {
        // x^2 + 1 = (x+1)^2 mod 2
        let a = IntPoly::from_i64(&[1, 0, 1]);
        let f = factor_mod_p(&a, 2).unwrap();
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.factors[0].1, 2);
        // x^3 + x + 1 irreducible mod 2
        let b = IntPoly::from_i64(&[1, 1, 0, 1]);
        let fb = factor_mod_p(&b, 2).unwrap();
        assert_eq!(fb.degree_multiset(), vec![3]);
    }
}
