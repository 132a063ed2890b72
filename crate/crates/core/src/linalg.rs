//! Dense exact matrices over a [`Field`], row reduction, kernels, subspaces
//! and quotient presentations.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

pub type Vector = Vec<Scalar>;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|c| self.field.fmt_scalar(c)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn scalar(field: &Field, n: usize, c: &Scalar) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_fn(field: &Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn from_rows(field: &Field, cols: usize, rows: &[Vector]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend(r.iter().cloned());
        }
        Matrix { field: field.clone(), rows: rows.len(), cols, data }
    }

    pub fn from_cols(field: &Field, rows: usize, cols: &[Vector]) -> Matrix {
        Matrix::from_rows(field, rows, cols).transpose()
    }

    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vector> = rows.iter().map(|r| r.iter().map(|&c| field.from_int(c)).collect()).collect();
        Matrix::from_rows(field, cols, &rows)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col_vectors(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| self.field.is_zero(c))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(&self.field, self.rows)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let k = &self.field;
        let mut out = Matrix::zeros(k, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if k.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if k.is_zero(b) {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = k.add(&out.data[idx], &k.mul(a, b));
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        let k = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !k.is_zero(a) && !k.is_zero(b))
                    .fold(k.zero(), |acc, (a, b)| k.add(&acc, &k.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let k = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| k.add(a, b)).collect();
        Matrix { field: k.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(&self.field.from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let k = &self.field;
        let data = self.data.iter().map(|a| k.mul(a, c)).collect();
        Matrix { field: k.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn pow(&self, mut e: usize) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = Matrix::identity(&self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Kronecker product; basis index of `e_i ⊗ f_j` is `i * other.rows + j`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let k = &self.field;
        Matrix::from_fn(k, self.rows * other.rows, self.cols * other.cols, |i, j| {
            let (a, b) = (self.get(i / other.rows, j / other.cols), other.get(i % other.rows, j % other.cols));
            k.mul(a, b)
        })
    }

    /// Block rows `[self; other]`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Block columns `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        self.transpose().vstack(&other.transpose()).transpose()
    }

    /// Square block-diagonal matrix `diag(self, other)`.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let k = &self.field;
        Matrix::from_fn(k, self.rows + other.rows, self.cols + other.cols, |i, j| {
            match (i < self.rows, j < self.cols) {
                (true, true) => self.get(i, j).clone(),
                (false, false) => other.get(i - self.rows, j - self.cols).clone(),
                _ => k.zero(),
            }
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(&self.field, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Reduced row echelon form, with pivots chosen by scanning columns in
    /// `order` (default: left to right). Returns the nonzero rows of the
    /// reduced matrix and the pivot column of each row.
    pub fn rref_with_order(&self, order: &[usize]) -> (Matrix, Vec<usize>) {
        let k = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for &c in order {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !k.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = k.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in 0..m.cols {
                let v = k.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || k.is_zero(m.get(i, c)) {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = k.sub(m.get(i, j), &k.mul(&f, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.data.truncate(r * m.cols);
        m.rows = r;
        (m, pivots)
    }

    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let order: Vec<usize> = (0..self.cols).collect();
        self.rref_with_order(&order)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space `{v : self·v = 0}`; one vector per free column,
    /// with a 1 in that column.
    pub fn kernel(&self) -> Vec<Vector> {
        let k = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![k.zero(); self.cols];
                v[f] = k.one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = k.neg(r.get(row, f));
                }
                v
            })
            .collect()
    }

    /// Basis of the column space, in RREF form.
    pub fn column_space(&self) -> Subspace {
        Subspace::spanned_by(&self.field, self.rows, &self.col_vectors())
    }

    /// Some `x` with `self·x = b`, if one exists.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vector> {
        let k = &self.field;
        let bcol = Matrix::from_cols(k, self.rows, &[b.to_vec()]);
        let aug = self.hstack(&bcol);
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![k.zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    /// Some `X` with `self·X = rhs`, if one exists.
    pub fn solve_matrix(&self, rhs: &Matrix) -> Option<Matrix> {
        let cols: Option<Vec<Vector>> = rhs.col_vectors().iter().map(|b| self.solve(b)).collect();
        Some(Matrix::from_cols(&self.field, self.cols, &cols?))
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::Usage("only square matrices are invertible".into()));
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(&self.field, n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[..n].iter().enumerate().any(|(i, &p)| p != i) {
            return Err(Error::DivisionByZero);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Ok(r.submatrix(&rows, &cols))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let k = &self.field;
        let mut m = self.clone();
        let mut det = k.one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !k.is_zero(m.get(i, c))) else {
                return k.zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = k.neg(&det);
            }
            let piv = m.get(c, c).clone();
            det = k.mul(&det, &piv);
            let inv = k.inv(&piv).expect("nonzero pivot");
            for i in c + 1..m.rows {
                let f = k.mul(m.get(i, c), &inv);
                if k.is_zero(&f) {
                    continue;
                }
                for j in c..m.cols {
                    let v = k.sub(m.get(i, j), &k.mul(&f, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }
}

pub fn zero_vector(field: &Field, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn unit_vector(field: &Field, n: usize, i: usize) -> Vector {
    let mut v = zero_vector(field, n);
    v[i] = field.one();
    v
}

pub fn vec_add(field: &Field, a: &[Scalar], b: &[Scalar]) -> Vector {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| field.add(x, y)).collect()
}

pub fn vec_sub(field: &Field, a: &[Scalar], b: &[Scalar]) -> Vector {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| field.sub(x, y)).collect()
}

pub fn vec_scale(field: &Field, c: &Scalar, a: &[Scalar]) -> Vector {
    a.iter().map(|x| field.mul(c, x)).collect()
}

/// `a += c·b` in place.
pub fn vec_axpy(field: &Field, a: &mut [Scalar], c: &Scalar, b: &[Scalar]) {
    if field.is_zero(c) {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !field.is_zero(y) {
            *x = field.add(x, &field.mul(c, y));
        }
    }
}

pub fn is_zero_vector(field: &Field, a: &[Scalar]) -> bool {
    a.iter().all(|x| field.is_zero(x))
}

/// Tensor `a ⊗ b` with index `i * b.len() + j`.
pub fn vec_kron(field: &Field, a: &[Scalar], b: &[Scalar]) -> Vector {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(field.mul(x, y));
        }
    }
    out
}

/// A linear subspace of `K^ambient`, stored as an RREF basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn spanned_by(field: &Field, ambient: usize, vectors: &[Vector]) -> Subspace {
        let m = Matrix::from_rows(field, ambient, vectors);
        let (basis, pivots) = m.rref();
        Subspace { field: field.clone(), ambient, basis, pivots }
    }

    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace::spanned_by(field, ambient, &[])
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        Subspace::spanned_by(field, ambient, &Matrix::identity(field, ambient).row_vectors())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> Vec<Vector> {
        self.basis.row_vectors()
    }

    /// Residue of `v` after eliminating the pivot coordinates.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut out = v.to_vec();
        for (row, &p) in self.pivots.iter().enumerate() {
            let c = self.field.neg(&out[p]);
            vec_axpy(&self.field, &mut out, &c, self.basis.row(row));
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vector(&self.field, &self.reduce(v))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis().iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis();
        vs.extend(other.basis());
        Subspace::spanned_by(&self.field, self.ambient, &vs)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let k = &self.field;
        // solve a·A = b·B for the combined coefficient vector
        let a = self.basis.transpose();
        let b = other.basis.transpose();
        let sys = a.hstack(&b.scale(&k.from_int(-1)));
        let vs: Vec<Vector> = sys
            .kernel()
            .iter()
            .map(|c| a.apply(&c[..self.dim()]))
            .collect();
        Subspace::spanned_by(k, self.ambient, &vs)
    }
}

/// Coordinates for a quotient `K^n / span(relations)`.
///
/// Pivots are chosen by scanning columns in `order`; the surviving (non-pivot)
/// columns, ascending, index the quotient basis.
#[derive(Clone, Debug)]
pub struct Quotient {
    field: Field,
    ambient: usize,
    relations: Matrix,
    pivots: Vec<usize>,
    free: Vec<usize>,
}

impl Quotient {
    pub fn new(field: &Field, ambient: usize, relations: &[Vector], order: &[usize]) -> Quotient {
        let m = Matrix::from_rows(field, ambient, relations);
        let (relations, pivots) = m.rref_with_order(order);
        let free = (0..ambient).filter(|c| !pivots.contains(c)).collect();
        Quotient { field: field.clone(), ambient, relations, pivots, free }
    }

    /// Quotient whose pivots sit at the latest possible columns, so earlier
    /// generators survive as basis representatives.
    pub fn keep_early(field: &Field, ambient: usize, relations: &[Vector]) -> Quotient {
        let order: Vec<usize> = (0..ambient).rev().collect();
        Quotient::new(field, ambient, relations, &order)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Ambient generators that represent the quotient basis.
    pub fn representatives(&self) -> &[usize] {
        &self.free
    }

    pub fn relation_rows(&self) -> Vec<Vector> {
        self.relations.row_vectors()
    }

    /// Ambient vector to quotient coordinates.
    pub fn canonicalize(&self, v: &[Scalar]) -> Vector {
        let mut w = v.to_vec();
        for (row, &p) in self.pivots.iter().enumerate() {
            let c = self.field.neg(&w[p]);
            vec_axpy(&self.field, &mut w, &c, self.relations.row(row));
        }
        self.free.iter().map(|&f| w[f].clone()).collect()
    }

    /// Quotient coordinates to the canonical ambient representative.
    pub fn lift(&self, c: &[Scalar]) -> Vector {
        let mut v = zero_vector(&self.field, self.ambient);
        for (x, &f) in c.iter().zip(&self.free) {
            v[f] = x.clone();
        }
        v
    }

    pub fn is_zero(&self, v: &[Scalar]) -> bool {
        is_zero_vector(&self.field, &self.canonicalize(v))
    }

    pub fn canonicalize_matrix(&self) -> Matrix {
        let cols: Vec<Vector> = (0..self.ambient)
            .map(|i| self.canonicalize(&unit_vector(&self.field, self.ambient, i)))
            .collect();
        Matrix::from_cols(&self.field, self.dim(), &cols)
    }

    pub fn lift_matrix(&self) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim())
            .map(|i| self.lift(&unit_vector(&self.field, self.dim(), i)))
            .collect();
        Matrix::from_cols(&self.field, self.ambient, &cols)
    }

    pub fn relation_space(&self) -> Subspace {
        Subspace::spanned_by(&self.field, self.ambient, &self.relation_rows())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let k = f(7);
        assert!(Matrix::identity(&k, 3).kernel().is_empty());
    }

    #[test]
    fn kernel_of_sum_map_over_f2() {
        let k = f(2);
        let m = Matrix::from_ints(&k, &[&[1, 1]]);
        assert_eq!(m.kernel(), vec![vec![k.one(), k.one()]]);
    }

    #[test]
    fn quotient_of_plane_by_line() {
        let k = f(5);
        let q = Quotient::new(&k, 2, &[vec![k.from_int(1), k.from_int(2)]], &[0, 1]);
        assert_eq!(q.dim(), 1);
        let r = q.canonicalize(&[k.from_int(1), k.from_int(2)]);
        assert!(is_zero_vector(&k, &r));
    }

    #[test]
    fn keep_early_retains_first_generator() {
        let k = f(5);
        let q = Quotient::keep_early(&k, 3, &[vec![k.from_int(1), k.from_int(1), k.from_int(1)]]);
        assert_eq!(q.representatives(), &[0, 1]);
        let c = q.canonicalize(&unit_vector(&k, 3, 2));
        assert_eq!(c, vec![k.from_int(-1), k.from_int(-1)]);
        let again = q.canonicalize(&q.lift(&c));
        assert_eq!(again, c);
    }

    #[test]
    fn inverse_and_solve() {
        let k = f(7);
        let m = Matrix::from_ints(&k, &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let x = m.solve(&[k.from_int(3), k.from_int(2)]).unwrap();
        assert_eq!(m.apply(&x), vec![k.from_int(3), k.from_int(2)]);
        let sing = Matrix::from_ints(&k, &[&[1, 2], &[2, 4]]);
        assert!(sing.inverse().is_err());
        assert!(sing.solve(&[k.one(), k.zero()]).is_none());
        assert_eq!(m.determinant(), k.one());
    }

    #[test]
    fn empty_matrices() {
        let k = f(3);
        let z = Matrix::zeros(&k, 0, 0);
        assert!(z.inverse().unwrap().is_identity());
        assert_eq!(Matrix::zeros(&k, 0, 2).kernel().len(), 2);
        assert_eq!(Matrix::zeros(&k, 2, 0).rank(), 0);
    }

    #[test]
    fn subspace_intersection() {
        let k = f(5);
        let a = Subspace::spanned_by(&k, 3, &[unit_vector(&k, 3, 0), unit_vector(&k, 3, 1)]);
        let b = Subspace::spanned_by(&k, 3, &[unit_vector(&k, 3, 1), unit_vector(&k, 3, 2)]);
        let c = a.intersection(&b);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&unit_vector(&k, 3, 1)));
        assert_eq!(a.sum(&b).dim(), 3);
    }

    #[test]
    fn kron_index_convention() {
        let k = f(5);
        let a = Matrix::from_ints(&k, &[&[1, 2], &[3, 4]]);
        let b = Matrix::identity(&k, 2);
        let ab = a.kron(&b);
        assert_eq!(ab.get(2, 0), &k.from_int(3));
        let v = vec_kron(&k, &[k.one(), k.zero()], &[k.zero(), k.one()]);
        assert_eq!(v, unit_vector(&k, 4, 1));
    }
}
