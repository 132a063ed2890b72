//! Finite-dimensional commutative algebras given by left-multiplication
//! matrices on a fixed basis.

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{is_zero_vector, unit_vector, vec_axpy, vec_kron, zero_vector, Matrix, Vector};
use crate::poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommAlgebra {
    field: Field,
    /// `left[i]` is multiplication by the i-th basis vector.
    left: Vec<Matrix>,
    unit: Vector,
}

impl CommAlgebra {
    pub fn new(field: &Field, left: Vec<Matrix>, unit: Vector) -> CommAlgebra {
        let n = unit.len();
        assert_eq!(left.len(), n);
        assert!(left.iter().all(|m| m.rows() == n && m.cols() == n));
        CommAlgebra { field: field.clone(), left, unit }
    }

    /// Algebra from a product rule on basis pairs.
    pub fn from_products(field: &Field, dim: usize, unit: Vector, mut prod: impl FnMut(usize, usize) -> Vector) -> CommAlgebra {
        let left = (0..dim)
            .map(|i| {
                let cols: Vec<Vector> = (0..dim).map(|j| prod(i, j)).collect();
                Matrix::from_cols(field, dim, &cols)
            })
            .collect();
        CommAlgebra::new(field, left, unit)
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: &Field) -> CommAlgebra {
        CommAlgebra::new(field, vec![Matrix::identity(field, 1)], vec![field.one()])
    }

    /// `K[x]/(f)` in the power basis `1, x, …, x^{deg f − 1}`; `f` monic.
    pub fn monogenic(field: &Field, f: &[Scalar]) -> Result<CommAlgebra> {
        let deg = poly::degree(field, f).ok_or_else(|| Error::Usage("modulus is zero".into()))?;
        if deg == 0 || !field.is_one(&f[deg]) {
            return Err(Error::Usage("modulus must be monic of positive degree".into()));
        }
        let mut prod_err = None;
        let a = CommAlgebra::from_products(field, deg, unit_vector(field, deg, 0), |i, j| {
            let mut mono = zero_vector(field, i + j + 1);
            mono[i + j] = field.one();
            match poly::rem(field, &mono, f) {
                Ok(mut r) => {
                    r.resize(deg, field.zero());
                    r
                }
                Err(e) => {
                    prod_err = Some(e);
                    zero_vector(field, deg)
                }
            }
        });
        match prod_err {
            Some(e) => Err(e),
            None => Ok(a),
        }
    }

    /// Functions on a finite set of the given size, with pointwise product.
    pub fn split(field: &Field, size: usize) -> CommAlgebra {
        let one = vec![field.one(); size];
        CommAlgebra::from_products(field, size, one, |i, j| {
            if i == j {
                unit_vector(field, size, i)
            } else {
                zero_vector(field, size)
            }
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.unit.len()
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn left(&self, i: usize) -> &Matrix {
        &self.left[i]
    }

    /// Matrix of multiplication by `x`.
    pub fn mul_matrix(&self, x: &[Scalar]) -> Matrix {
        let k = &self.field;
        let mut acc = Matrix::zeros(k, self.dim(), self.dim());
        for (i, c) in x.iter().enumerate() {
            if !k.is_zero(c) {
                acc = acc.add(&self.left[i].scale(c));
            }
        }
        acc
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let k = &self.field;
        let mut out = zero_vector(k, self.dim());
        for (i, c) in x.iter().enumerate() {
            if !k.is_zero(c) {
                vec_axpy(k, &mut out, c, &self.left[i].apply(y));
            }
        }
        out
    }

    pub fn pow(&self, x: &[Scalar], e: usize) -> Vector {
        let mut acc = self.unit.clone();
        for _ in 0..e {
            acc = self.mul(&acc, x);
        }
        acc
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vector {
        self.left[i].col(j)
    }

    /// `A ⊗ B` with basis `a_i ⊗ b_j` at index `i * dim B + j`.
    pub fn tensor(&self, other: &CommAlgebra) -> CommAlgebra {
        let k = &self.field;
        let (da, db) = (self.dim(), other.dim());
        let left = (0..da * db)
            .map(|idx| self.left[idx / db].kron(&other.left[idx % db]))
            .collect();
        CommAlgebra::new(k, left, vec_kron(k, &self.unit, &other.unit))
    }

    /// Direct product `A × B` with the basis of `A` first.
    pub fn product(&self, other: &CommAlgebra) -> CommAlgebra {
        let k = &self.field;
        let (da, db) = (self.dim(), other.dim());
        let zb = Matrix::zeros(k, db, db);
        let za = Matrix::zeros(k, da, da);
        let mut left: Vec<Matrix> = self.left.iter().map(|m| m.block_diag(&zb)).collect();
        left.extend(other.left.iter().map(|m| za.block_diag(m)));
        let mut unit = self.unit.clone();
        unit.extend(other.unit.iter().cloned());
        CommAlgebra::new(k, left, unit)
    }

    /// The same algebra in new coordinates `y = P·x`.
    pub fn transport(&self, p: &Matrix) -> Result<CommAlgebra> {
        let pinv = p.inverse()?;
        let k = &self.field;
        let n = self.dim();
        let left = (0..n)
            .map(|i| {
                let old = pinv.apply(&unit_vector(k, n, i));
                p.mul(&self.mul_matrix(&old)).mul(&pinv)
            })
            .collect();
        Ok(CommAlgebra::new(k, left, p.apply(&self.unit)))
    }

    /// The subalgebra spanned by the columns of `emb`, in those coordinates.
    ///
    /// Fails if the span is not closed under multiplication or misses the unit.
    pub fn restrict(&self, emb: &Matrix) -> Result<CommAlgebra> {
        let k = &self.field;
        let d = emb.cols();
        let cols = emb.col_vectors();
        let coord = |v: &Vector| -> Result<Vector> {
            emb.solve(v).ok_or_else(|| Error::Internal("subspace is not a subalgebra".into()))
        };
        let unit = coord(&self.unit)?;
        let mut left = Vec::with_capacity(d);
        for a in &cols {
            let prods: Result<Vec<Vector>> = cols.iter().map(|b| coord(&self.mul(a, b))).collect();
            left.push(Matrix::from_cols(k, d, &prods?));
        }
        Ok(CommAlgebra::new(k, left, unit))
    }

    /// Whether `s` (acting on coordinates) is a unital ring endomorphism.
    pub fn is_ring_map(&self, s: &Matrix) -> bool {
        let n = self.dim();
        if s.apply(&self.unit) != self.unit {
            return false;
        }
        (0..n).all(|i| {
            (0..n).all(|j| {
                let lhs = s.apply(&self.basis_product(i, j));
                let rhs = self.mul(&s.col(i), &s.col(j));
                lhs == rhs
            })
        })
    }

    /// Violations of commutativity, associativity and unitality on basis elements.
    pub fn check(&self) -> Vec<String> {
        let k = &self.field;
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            let e = unit_vector(k, n, i);
            if self.mul(&self.unit, &e) != e {
                out.push(format!("unit does not act as identity on e{i}"));
            }
            for j in 0..n {
                if self.basis_product(i, j) != self.basis_product(j, i) {
                    out.push(format!("e{i}·e{j} != e{j}·e{i}"));
                }
                let ij = self.basis_product(i, j);
                for l in 0..n {
                    let lhs = self.mul(&ij, &unit_vector(k, n, l));
                    let rhs = self.mul(&e, &self.basis_product(j, l));
                    if lhs != rhs {
                        out.push(format!("(e{i}·e{j})·e{l} != e{i}·(e{j}·e{l})"));
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self, x: &[Scalar]) -> bool {
        is_zero_vector(&self.field, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monogenic_f4() {
        let k = Field::prime(2).unwrap();
        let f: Vec<Scalar> = [1, 1, 1].iter().map(|&c| k.from_int(c)).collect();
        let a = CommAlgebra::monogenic(&k, &f).unwrap();
        assert!(a.check().is_empty());
        // α·α = α + 1
        assert_eq!(a.basis_product(1, 1), vec![k.one(), k.one()]);
    }

    #[test]
    fn tensor_and_product_are_algebras() {
        let k = Field::prime(3).unwrap();
        let f: Vec<Scalar> = [0, 0, 1].iter().map(|&c| k.from_int(c)).collect();
        let dual = CommAlgebra::monogenic(&k, &f).unwrap();
        let t = dual.tensor(&CommAlgebra::split(&k, 2));
        assert_eq!(t.dim(), 4);
        assert!(t.check().is_empty());
        let p = dual.product(&CommAlgebra::ground(&k));
        assert!(p.check().is_empty());
        let m = Matrix::from_ints(&k, &[&[1, 1, 0], &[0, 1, 2], &[0, 0, 1]]);
        let moved = p.transport(&m).unwrap();
        assert!(moved.check().is_empty());
        assert_eq!(moved.unit(), &m.apply(p.unit()));
    }

    #[test]
    fn corrupted_product_is_detected() {
        let k = Field::prime(5).unwrap();
        let a = CommAlgebra::split(&k, 2);
        let mut left = a.left.clone();
        left[0].set(1, 1, k.one());
        let bad = CommAlgebra::new(&k, left, a.unit.clone());
        assert!(!bad.check().is_empty());
    }
}
