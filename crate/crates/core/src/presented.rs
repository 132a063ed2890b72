//! Quotients of free spaces on labeled generators by a relation span.

use crate::field::{Field, Scalar};
use crate::linalg::{unit_vector, Matrix, Quotient, Subspace, Vector};

/// Provenance of an ambient generator of a box-product level: the tensor of
/// factor basis vectors `factors` taken at level `origin`. It is a pure
/// tensor when `origin` equals the level it lives in, otherwise a transfer
/// class `[·]_origin`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenLabel {
    pub origin: usize,
    pub factors: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct PresentedLevel {
    level: usize,
    field: Field,
    labels: Vec<GenLabel>,
    names: Vec<String>,
    quotient: Quotient,
}

impl PresentedLevel {
    /// Canonical form keeps the earliest generators: pivots are taken at the
    /// latest columns, so reduced representatives are the surviving early
    /// generators.
    pub fn new(level: usize, field: &Field, labels: Vec<GenLabel>, names: Vec<String>, relations: &[Vector]) -> PresentedLevel {
        assert_eq!(labels.len(), names.len());
        let quotient = Quotient::keep_early(field, labels.len(), relations);
        PresentedLevel { level, field: field.clone(), labels, names, quotient }
    }

    /// Same generators and relations with pivots scanned in `order`.
    pub fn with_order(&self, order: &[usize]) -> PresentedLevel {
        let quotient = Quotient::new(&self.field, self.labels.len(), &self.quotient.relation_rows(), order);
        PresentedLevel { quotient, ..self.clone() }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn generators(&self) -> &[GenLabel] {
        &self.labels
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn ambient_dim(&self) -> usize {
        self.labels.len()
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn relation_rank(&self) -> usize {
        self.quotient.rank()
    }

    pub fn relation_rows(&self) -> Vec<Vector> {
        self.quotient.relation_rows()
    }

    pub fn relation_space(&self) -> Subspace {
        self.quotient.relation_space()
    }

    /// Indices of the ambient generators that form the reduced basis.
    pub fn representatives(&self) -> &[usize] {
        self.quotient.representatives()
    }

    pub fn basis_labels(&self) -> Vec<GenLabel> {
        self.representatives().iter().map(|&i| self.labels[i].clone()).collect()
    }

    pub fn basis_names(&self) -> Vec<String> {
        self.representatives().iter().map(|&i| self.names[i].clone()).collect()
    }

    pub fn canonicalize(&self, v: &[Scalar]) -> Vector {
        self.quotient.canonicalize(v)
    }

    pub fn lift(&self, c: &[Scalar]) -> Vector {
        self.quotient.lift(c)
    }

    pub fn canonicalize_matrix(&self) -> Matrix {
        self.quotient.canonicalize_matrix()
    }

    pub fn lift_matrix(&self) -> Matrix {
        self.quotient.lift_matrix()
    }

    /// Reduced coordinates of a single ambient generator.
    pub fn generator(&self, i: usize) -> Vector {
        self.canonicalize(&unit_vector(&self.field, self.ambient_dim(), i))
    }

    pub fn index_of(&self, label: &GenLabel) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn vanishes(&self, v: &[Scalar]) -> bool {
        self.quotient.is_zero(v)
    }
}
