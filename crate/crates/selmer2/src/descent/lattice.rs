//! Integer lattices in `L = Q[x]/f` as fractional ideals of the order
//! `R = Z[x]/f`: Hermite-form bases, membership, products and norms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::etale::EtaleElement;
use crate::poly::CurveInvariants;
use crate::Result;

/// A full-rank lattice `(1/den) * rowspan_Z(basis)` in the power-basis
/// coordinates of `L`, with `basis` in row Hermite normal form.
#[derive(Clone, PartialEq, Eq)]
pub struct IdealLattice {
    curve: CurveInvariants,
    den: BigInt,
    basis: Vec<Vec<BigInt>>,
}

impl IdealLattice {
    /// The order `R = Z[beta]` itself.
    pub fn standard(curve: &CurveInvariants) -> Self {
        let dim = curve.dim();
        let mut basis = vec![vec![BigInt::zero(); dim]; dim];
        for (i, row) in basis.iter_mut().enumerate() {
            row[i] = BigInt::one();
        }
        IdealLattice {
            curve: curve.clone(),
            den: BigInt::one(),
            basis,
        }
    }

    /// The R-module generated by the given elements: the Z-span of
    /// `beta^k * g` over all generators `g` and `0 <= k < 2n+2`.
    pub fn from_r_generators(curve: &CurveInvariants, gens: &[EtaleElement]) -> Result<Self> {
        let dim = curve.dim();
        let beta = EtaleElement::beta(curve);
        let mut vectors: Vec<Vec<BigRational>> = Vec::new();
        for g in gens {
            if g.curve() != curve {
                return Err(Error::domain("generator lives in a different algebra"));
            }
            let mut cur = g.clone();
            for _ in 0..dim {
                vectors.push(cur.coords().to_vec());
                cur = cur.mul_reduce(&beta)?;
            }
        }
        Self::from_rational_rows(curve, &vectors)
    }

    /// The Z-span of the given coordinate vectors (must have full rank).
    pub fn from_rational_rows(curve: &CurveInvariants, rows: &[Vec<BigRational>]) -> Result<Self> {
        let dim = curve.dim();
        let mut den = BigInt::one();
        for row in rows {
            for c in row {
                den = den.lcm(c.denom());
            }
        }
        let int_rows: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|row| row.iter().map(|c| c.numer() * (&den / c.denom())).collect())
            .collect();
        let hnf = row_hnf(int_rows, dim);
        if hnf.len() != dim {
            return Err(Error::domain("lattice does not have full rank"));
        }
        Ok(IdealLattice {
            curve: curve.clone(),
            den,
            basis: hnf,
        }
        .normalized())
    }

    fn normalized(mut self) -> Self {
        let mut g = self.den.clone();
        for row in &self.basis {
            for c in row {
                g = g.gcd(c);
                if g.is_one() {
                    return self;
                }
            }
        }
        if !g.is_one() && !g.is_zero() {
            self.den /= &g;
            for row in self.basis.iter_mut() {
                for c in row.iter_mut() {
                    *c /= &g;
                }
            }
        }
        self
    }

    pub fn curve(&self) -> &CurveInvariants {
        &self.curve
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn basis_rows(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Basis vectors as elements of `L`.
    pub fn basis_elements(&self) -> Vec<EtaleElement> {
        self.basis
            .iter()
            .map(|row| {
                EtaleElement::from_coords(
                    &self.curve,
                    row.iter()
                        .map(|c| BigRational::new(c.clone(), self.den.clone()))
                        .collect(),
                )
                .expect("row length matches dim")
            })
            .collect()
    }

    /// `N(I)`: the covolume relative to `R`, i.e. `|det(basis)| / den^dim`.
    pub fn norm(&self) -> BigRational {
        let dim = self.curve.dim();
        // HNF is upper triangular: determinant is the product of pivots.
        let mut det = BigInt::one();
        for (i, row) in self.basis.iter().enumerate() {
            det *= &row[i];
        }
        BigRational::new(det.abs(), self.den.pow(dim as u32))
    }

    /// Membership test for an element of `L`.
    pub fn contains(&self, e: &EtaleElement) -> bool {
        // Solve coords * den_self in the integer rowspan by back
        // substitution against the upper-triangular HNF basis.
        let dim = self.curve.dim();
        // target = e * den (rational); must be integral after scaling by
        // the lcm of its denominators dividing into den.
        let mut target: Vec<BigRational> = e
            .coords()
            .iter()
            .map(|c| c * BigRational::from(self.den.clone()))
            .collect();
        for i in (0..dim).rev() {
            let pivot = &self.basis[i][i];
            let t = target[i].clone();
            if t.is_zero() {
                continue;
            }
            // coefficient must be an integer multiple of the pivot
            let c = t / BigRational::from(pivot.clone());
            if !c.denom().is_one() {
                return false;
            }
            let ci = c.numer().clone();
            for j in 0..=i {
                let sub = BigRational::from(&ci * &self.basis[i][j]);
                target[j] -= sub;
            }
        }
        target.iter().all(|t| t.is_zero())
    }

    /// Is this lattice contained in `R`?
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// Closure under multiplication by `beta` (the R-module property).
    pub fn is_r_module(&self) -> bool {
        let beta = EtaleElement::beta(&self.curve);
        self.basis_elements().iter().all(|b| {
            let bb = b.mul_reduce(&beta).expect("same curve");
            self.contains(&bb)
        })
    }

    /// Product lattice `I * J`: the Z-span of pairwise basis products
    /// (an R-module again since both factors are).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.curve != other.curve {
            return Err(Error::domain("lattices live in different algebras"));
        }
        let mut rows = Vec::new();
        for a in self.basis_elements() {
            for b in other.basis_elements() {
                rows.push(a.mul_reduce(&b)?.coords().to_vec());
            }
        }
        Self::from_rational_rows(&self.curve, &rows)
    }

    /// Scaled lattice `g * I`.
    pub fn scale_by(&self, g: &EtaleElement) -> Result<Self> {
        let mut rows = Vec::new();
        for b in self.basis_elements() {
            rows.push(b.mul_reduce(g)?.coords().to_vec());
        }
        Self::from_rational_rows(&self.curve, &rows)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "denominator": self.den.to_string(),
            "basis": self.basis.iter()
                .map(|row| row.iter().map(|c| c.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

impl std::fmt::Debug for IdealLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Lattice (1/{}) *", self.den)?;
        for row in &self.basis {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Row Hermite normal form of an integer matrix: returns an
/// upper-triangular full-rank basis of the rowspan with positive pivots
/// and entries above each pivot reduced into `[0, pivot)`.
pub fn row_hnf(mut rows: Vec<Vec<BigInt>>, dim: usize) -> Vec<Vec<BigInt>> {
    rows.retain(|r| r.iter().any(|c| !c.is_zero()));
    let mut result: Vec<Vec<BigInt>> = Vec::new();
    for col in 0..dim {
        // Reduce all rows to a single pivot in this column by gcd steps.
        loop {
            let mut nonzero: Vec<usize> = (0..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .collect();
            if nonzero.is_empty() {
                break;
            }
            if nonzero.len() == 1 {
                let mut pivot = rows.remove(nonzero[0]);
                if pivot[col].is_negative() {
                    for c in pivot.iter_mut() {
                        *c = -c.clone();
                    }
                }
                result.push(pivot);
                break;
            }
            // pick the two smallest in absolute value and reduce
            nonzero.sort_by_key(|&i| rows[i][col].abs());
            let (a, b) = (nonzero[0], nonzero[1]);
            let q = rows[b][col].div_euclid(&rows[a][col]);
            for j in 0..dim {
                let t = &q * &rows[a][j];
                rows[b][j] -= t;
            }
        }
    }
    // Reduce entries above pivots.
    for i in (0..result.len()).rev() {
        let pivot_col = (0..dim)
            .find(|&c| !result[i][c].is_zero())
            .expect("nonzero row");
        let pivot = result[i][pivot_col].clone();
        for k in 0..i {
            let q = result[k][pivot_col].div_euclid(&pivot);
            if q.is_zero() {
                continue;
            }
            for j in 0..dim {
                let t = &q * &result[i][j];
                result[k][j] -= t;
            }
        }
    }
    result
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
    fn standard_lattice_properties() {
        let c = x6_plus_3();
        let r = IdealLattice::standard(&c);
        assert_eq!(r.norm(), rat(1));
        assert!(r.is_integral());
        assert!(r.is_r_module());
        assert!(r.contains(&EtaleElement::beta(&c)));
    }

    #[test]
    fn hnf_of_redundant_generators() {
        let c = x6_plus_3();
        let two = EtaleElement::constant(&c, rat(2));
        let three = EtaleElement::constant(&c, rat(3));
        // (2, 3) = (1) as an R-module
        let l = IdealLattice::from_r_generators(&c, &[two, three]).unwrap();
        assert_eq!(l, IdealLattice::standard(&c));
    }

    #[test]
    fn principal_ideal_norm() {
        let c = x6_plus_3();
        let beta = EtaleElement::beta(&c);
        let l = IdealLattice::from_r_generators(&c, &[beta.clone()]).unwrap();
        // N((beta)) = |N(beta)| = 3
        assert_eq!(l.norm(), rat(3));
        assert!(l.is_r_module());
        assert!(l.contains(&beta));
        assert!(!l.contains(&EtaleElement::one(&c)));
    }

    #[test]
    fn product_of_principal_ideals() {
        let c = x6_plus_3();
        let beta = EtaleElement::beta(&c);
        let l = IdealLattice::from_r_generators(&c, &[beta.clone()]).unwrap();
        let sq = l.mul(&l).unwrap();
        let beta2 = beta.mul_reduce(&beta).unwrap();
        let expect = IdealLattice::from_r_generators(&c, &[beta2]).unwrap();
        assert_eq!(sq, expect);
        assert_eq!(sq.norm(), rat(9));
    }

    #[test]
    fn fractional_ideal_membership() {
        let c = x6_plus_3();
        let half = EtaleElement::constant(&c, BigRational::new(BigInt::one(), BigInt::from(2)));
        let l = IdealLattice::from_r_generators(&c, &[half.clone(), EtaleElement::one(&c)])
            .unwrap();
        assert!(l.contains(&half));
        assert!(l.contains(&EtaleElement::one(&c)));
        assert!(!l.is_integral());
        assert_eq!(l.norm(), BigRational::new(BigInt::one(), BigInt::from(64)));
    }
}
