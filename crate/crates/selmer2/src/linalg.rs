//! Exact dense linear algebra over `Q`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::poly::IntPoly;
use crate::Result;

/// Dense matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMat {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMat { rows, cols, data }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        RatMat {
            rows,
            cols,
            data: entries
                .iter()
                .map(|&e| BigRational::from(BigInt::from(e)))
                .collect(),
        }
    }

    /// The anti-diagonal matrix with 1 entries, the standard split Gram.
    pub fn anti_identity(n: usize) -> Self {
        let mut m = RatMat::zero(n, n);
        for i in 0..n {
            m[(i, n - 1 - i)] = BigRational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        RatMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self[(i, j)] != self[(j, i)] {
                    return false;
                }
            }
        }
        true
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = RatMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RatMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * c)
    }

    pub fn col(&self, j: usize) -> Vec<BigRational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<BigRational> {
        (0..self.cols).map(|j| self[(i, j)].clone()).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &[BigRational]) {
        assert_eq!(v.len(), self.rows);
        for i in 0..self.rows {
            self[(i, j)] = v[i].clone();
        }
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = BigRational::zero();
                for j in 0..self.cols {
                    if !v[j].is_zero() {
                        acc += &self[(i, j)] * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn det(&self) -> BigRational {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = BigRational::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[(r, col)].is_zero());
            let pivot = match pivot {
                None => return BigRational::zero(),
                Some(p) => p,
            };
            if pivot != col {
                for j in 0..n {
                    let t = m[(pivot, j)].clone();
                    m[(pivot, j)] = m[(col, j)].clone();
                    m[(col, j)] = t;
                }
                det = -det;
            }
            let p = m[(col, col)].clone();
            det *= &p;
            for r in (col + 1)..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = &m[(r, col)] / &p;
                for j in col..n {
                    let t = &factor * &m[(col, j)];
                    m[(r, j)] -= t;
                }
            }
        }
        det
    }

    /// Row-reduces in place; returns pivot columns. The matrix ends in RREF.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..self.cols {
            if r >= self.rows {
                break;
            }
            let pivot = (r..self.rows).find(|&i| !self[(i, c)].is_zero());
            let pivot = match pivot {
                None => continue,
                Some(p) => p,
            };
            if pivot != r {
                for j in 0..self.cols {
                    let t = self[(pivot, j)].clone();
                    self[(pivot, j)] = self[(r, j)].clone();
                    self[(r, j)] = t;
                }
            }
            let inv = self[(r, c)].clone().recip();
            for j in 0..self.cols {
                self[(r, j)] = &self[(r, j)] * &inv;
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let factor = self[(i, c)].clone();
                    for j in 0..self.cols {
                        let t = &factor * &self[(r, j)];
                        self[(i, j)] -= t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Solves `self * X = B` for square invertible `self`.
    pub fn solve(&self, b: &RatMat) -> Result<RatMat> {
        assert!(self.is_square());
        assert_eq!(self.rows, b.rows);
        let n = self.rows;
        let mut aug = RatMat::from_fn(n, n + b.cols, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else {
                b[(i, j - n)].clone()
            }
        });
        let pivots = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(k, &c)| c != k) {
            return Err(Error::domain("singular matrix in solve"));
        }
        Ok(RatMat::from_fn(n, b.cols, |i, j| aug[(i, n + j)].clone()))
    }

    pub fn inverse(&self) -> Result<RatMat> {
        self.solve(&RatMat::identity(self.rows))
    }

    /// A particular solution `X` of `self * X = B`; free variables are set
    /// to zero. Errors if the system is inconsistent.
    pub fn solve_particular(&self, b: &RatMat) -> Result<RatMat> {
        assert_eq!(self.rows, b.rows);
        let (m, n) = (self.rows, self.cols);
        let mut aug = RatMat::from_fn(m, n + b.cols, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else {
                b[(i, j - n)].clone()
            }
        });
        let pivots = aug.rref();
        if pivots.iter().any(|&c| c >= n) {
            return Err(Error::domain("inconsistent linear system"));
        }
        let mut x = RatMat::zero(n, b.cols);
        for (r, &c) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(c, j)] = aug[(r, n + j)].clone();
            }
        }
        Ok(x)
    }

    /// Basis of the right kernel, as vectors.
    pub fn kernel_basis(&self) -> Vec<Vec<BigRational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![BigRational::zero(); self.cols];
            v[free] = BigRational::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -m[(r, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Characteristic polynomial `det(xI - self)` by Faddeev-LeVerrier,
    /// monic of degree `n`, lowest degree first.
    pub fn char_poly(&self) -> Vec<BigRational> {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[n] = BigRational::one();
        let mut m = RatMat::identity(n);
        for k in 1..=n {
            m = self.mul(&m);
            let mut tr = BigRational::zero();
            for i in 0..n {
                tr += &m[(i, i)];
            }
            let c = -tr / BigRational::from(BigInt::from(k as i64));
            coeffs[n - k] = c.clone();
            for i in 0..n {
                m[(i, i)] += &c;
            }
        }
        coeffs
    }

    /// Characteristic polynomial as an integer polynomial, if integral.
    pub fn char_poly_int(&self) -> Option<IntPoly> {
        let cp = self.char_poly();
        if cp.iter().all(|c| c.denom().is_one()) {
            Some(IntPoly::new(cp.iter().map(|c| c.numer().clone()).collect()))
        } else {
            None
        }
    }

    pub fn trace(&self) -> BigRational {
        assert!(self.is_square());
        let mut tr = BigRational::zero();
        for i in 0..self.rows {
            tr += &self[(i, i)];
        }
        tr
    }
}

impl std::ops::Index<(usize, usize)> for RatMat {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

impl std::fmt::Debug for RatMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_inverse() {
        let m = RatMat::from_i64(2, 2, &[2, 1, 1, 1]);
        assert_eq!(m.det(), BigRational::one());
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RatMat::identity(2));
    }

    #[test]
    fn char_poly_companion() {
        // companion of x^3 - 2x + 5
        let c = RatMat::from_i64(3, 3, &[0, 0, -5, 1, 0, 2, 0, 1, 0]);
        let cp = c.char_poly_int().unwrap();
        assert_eq!(cp, IntPoly::from_i64(&[5, -2, 0, 1]));
    }

    #[test]
    fn kernel_of_rank_deficient() {
        let m = RatMat::from_i64(2, 3, &[1, 2, 3, 2, 4, 6]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            let imv = m.apply(v);
            assert!(imv.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_particular_underdetermined() {
        let m = RatMat::from_i64(2, 4, &[1, 0, 1, 0, 0, 1, 0, 1]);
        let b = RatMat::from_i64(2, 1, &[3, 5]);
        let x = m.solve_particular(&b).unwrap();
        let back = m.mul(&x);
        assert_eq!(back, b);
    }

    #[test]
    fn singular_solve_fails() {
        let m = RatMat::from_i64(2, 2, &[1, 2, 2, 4]);
        assert!(m.inverse().is_err());
    }
}
