//! Cyclic Galois extensions `K ⊂ L = K[x]/(f)` with an explicit generator
//! `σ` of the Galois group acting on the power basis.

use crate::algebra::CommAlgebra;
use crate::error::{Error, Result};
use crate::field::{prime_factors, Field, Scalar};
use crate::linalg::{unit_vector, Matrix, Vector};
use crate::poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Flavor {
    Kummer { a: Scalar, zeta: Scalar },
    ArtinSchreier { a: Scalar },
    Explicit,
}

/// Input to [`build_extension`].
#[derive(Clone, Debug)]
pub enum ExtensionSpec {
    /// `x^n − a` with `σ(α) = ζ·α`.
    Kummer { n: usize, a: Scalar, zeta: Scalar },
    /// `x² + x + a` in characteristic 2 with `σ(α) = α + 1`.
    ArtinSchreier { a: Scalar },
    /// Monic `f` of degree `n` and `σ(α)` in the power basis.
    Explicit { minimal_poly: Vec<Scalar>, sigma_alpha: Vector },
}

#[derive(Clone, Debug)]
pub struct GaloisExtension {
    base: Field,
    n: usize,
    minimal_poly: Vec<Scalar>,
    /// Column `j` holds `σ(α^j)`.
    sigma: Matrix,
    flavor: Flavor,
    algebra: CommAlgebra,
}

/// Power-basis label: `1`, `α`, `α²`, …
pub fn alpha_label(j: usize) -> String {
    const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    match j {
        0 => "1".into(),
        1 => "α".into(),
        _ => {
            let digits: String = j.to_string().chars().map(|c| SUP[c.to_digit(10).unwrap() as usize]).collect();
            format!("α{digits}")
        }
    }
}

fn not_galois<T>(n: usize, reason: impl Into<String>) -> Result<T> {
    Err(Error::NotGalois { n, reason: reason.into() })
}

pub fn build_extension(base: &Field, spec: &ExtensionSpec) -> Result<GaloisExtension> {
    let k = base;
    let ext = match spec {
        ExtensionSpec::Kummer { n, a, zeta } => {
            let n = *n;
            if n == 0 {
                return Err(Error::Usage("group order must be positive".into()));
            }
            if k.is_zero(&k.from_int(n as i64)) {
                return not_galois(n, format!("n = {n} is not invertible in {k}"));
            }
            if k.cardinality().is_none() && n > 2 {
                return Err(Error::Unsupported(format!(
                    "Kummer data over Q needs a primitive {n}th root of unity, which Q lacks"
                )));
            }
            if !k.is_one(&k.pow(zeta, n as u64)) {
                return not_galois(n, format!("ζ = {} is not an nth root of unity", k.fmt_scalar(zeta)));
            }
            for r in prime_factors(n) {
                if k.is_one(&k.pow(zeta, (n / r) as u64)) {
                    return not_galois(n, format!("ζ = {} is not a primitive nth root of unity", k.fmt_scalar(zeta)));
                }
            }
            if k.is_zero(a) {
                return Err(Error::NotAFieldExtension("a must be nonzero".into()));
            }
            kummer_irreducible(k, n, a)?;
            let mut f = vec![k.zero(); n + 1];
            f[0] = k.neg(a);
            f[n] = k.one();
            if k.cardinality().is_some() && !poly::is_irreducible(k, &f)? {
                return Err(Error::Internal("Kummer criterion and irreducibility test disagree".into()));
            }
            let sigma = Matrix::from_fn(k, n, n, |i, j| if i == j { k.pow(zeta, j as u64) } else { k.zero() });
            let algebra = CommAlgebra::monogenic(k, &f)?;
            GaloisExtension {
                base: k.clone(),
                n,
                minimal_poly: f,
                sigma,
                flavor: Flavor::Kummer { a: a.clone(), zeta: zeta.clone() },
                algebra,
            }
        }
        ExtensionSpec::ArtinSchreier { a } => {
            if k.characteristic() != 2 {
                return Err(Error::Usage("Artin–Schreier extensions are only supported in characteristic 2".into()));
            }
            let elems = k.elements()?;
            if elems.iter().any(|c| k.add(&k.mul(c, c), c) == *a) {
                return Err(Error::NotAFieldExtension(format!(
                    "x² + x + {} has a root: a is of the form c² + c",
                    k.fmt_scalar(a)
                )));
            }
            let f = vec![a.clone(), k.one(), k.one()];
            if !poly::is_irreducible(k, &f)? {
                return Err(Error::Internal("Artin–Schreier criterion and irreducibility test disagree".into()));
            }
            let sigma = Matrix::from_fn(k, 2, 2, |i, j| if i <= j { k.one() } else { k.zero() });
            let algebra = CommAlgebra::monogenic(k, &f)?;
            GaloisExtension {
                base: k.clone(),
                n: 2,
                minimal_poly: f,
                sigma,
                flavor: Flavor::ArtinSchreier { a: a.clone() },
                algebra,
            }
        }
        ExtensionSpec::Explicit { minimal_poly, sigma_alpha } => {
            let f = poly::trim(k, minimal_poly.clone());
            let n = poly::degree(k, &f).unwrap_or(0);
            if n == 0 || !k.is_one(&f[n]) {
                return Err(Error::Usage("minimal polynomial must be monic of positive degree".into()));
            }
            if sigma_alpha.len() != n {
                return Err(Error::Usage(format!("σ(α) needs {n} coordinates")));
            }
            if !poly::is_irreducible(k, &f)? {
                return Err(Error::NotAFieldExtension("minimal polynomial is reducible".into()));
            }
            let algebra = CommAlgebra::monogenic(k, &f)?;
            let cols: Vec<Vector> = (0..n).map(|j| algebra.pow(sigma_alpha, j)).collect();
            let sigma = Matrix::from_cols(k, n, &cols);
            // σ(α) must be a root of f
            let mut value = vec![k.zero(); n];
            for (j, c) in f.iter().enumerate() {
                let term = algebra.pow(sigma_alpha, j);
                crate::linalg::vec_axpy(k, &mut value, c, &term);
            }
            if !algebra.is_zero(&value) {
                return not_galois(n, "σ(α) is not a root of the minimal polynomial");
            }
            GaloisExtension { base: k.clone(), n, minimal_poly: f, sigma, flavor: Flavor::Explicit, algebra }
        }
    };
    ext.verify()?;
    Ok(ext)
}

/// Classical criterion: `x^n − a` is irreducible iff `a ∉ K^r` for every prime
/// `r | n`, and `a ∉ −4K^4` when `4 | n`.
fn kummer_irreducible(k: &Field, n: usize, a: &Scalar) -> Result<()> {
    for r in prime_factors(n) {
        if k.is_rth_power(a, r as u64) {
            return Err(Error::NotAFieldExtension(format!(
                "x^{n} − {} is reducible: a = b^{r} for some b in the base field",
                k.fmt_scalar(a)
            )));
        }
    }
    if n.is_multiple_of(4) {
        let minus4 = k.from_int(-4);
        let hit = match k.elements() {
            Ok(elems) => elems.iter().any(|c| !k.is_zero(c) && k.mul(&minus4, &k.pow(c, 4)) == *a),
            Err(_) => false,
        };
        if hit {
            return Err(Error::NotAFieldExtension(format!(
                "x^{n} − {} is reducible: a ∈ −4K⁴",
                k.fmt_scalar(a)
            )));
        }
    }
    Ok(())
}

impl GaloisExtension {
    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn minimal_poly(&self) -> &[Scalar] {
        &self.minimal_poly
    }

    pub fn sigma(&self) -> &Matrix {
        &self.sigma
    }

    pub fn flavor(&self) -> &Flavor {
        &self.flavor
    }

    pub fn algebra(&self) -> &CommAlgebra {
        &self.algebra
    }

    /// Coordinates of `α^j` in the power basis (reduced for `j ≥ n`).
    pub fn alpha_power(&self, j: usize) -> Vector {
        let alpha = if self.n == 1 {
            // α = a when f = x − a
            vec![self.base.neg(&self.minimal_poly[0])]
        } else {
            unit_vector(&self.base, self.n, 1)
        };
        self.algebra.pow(&alpha, j)
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.n).map(alpha_label).collect()
    }

    pub fn describe(&self) -> String {
        let k = &self.base;
        match &self.flavor {
            Flavor::Kummer { a, zeta } => format!(
                "Kummer C_{} over {}: α^{} = {}, σ(α) = {}·α",
                self.n,
                k,
                self.n,
                k.fmt_scalar(a),
                k.fmt_scalar(zeta)
            ),
            Flavor::ArtinSchreier { a } => {
                format!("Artin–Schreier C_2 over {}: α² + α + {} = 0, σ(α) = α + 1", k, k.fmt_scalar(a))
            }
            Flavor::Explicit => format!("explicit C_{} extension over {}", self.n, k),
        }
    }

    /// Basis of `L^{C_m}`, the kernel of `σ^{n/m} − 1`.
    pub fn fixed_subfield(&self, m: usize) -> Result<Vec<Vector>> {
        if m == 0 || !self.n.is_multiple_of(m) {
            return Err(Error::Usage(format!("{m} does not divide {}", self.n)));
        }
        let g = self.sigma.pow(self.n / m).sub(&Matrix::identity(&self.base, self.n));
        Ok(g.kernel())
    }

    /// Re-verify every structural invariant of the extension.
    pub fn verify(&self) -> Result<()> {
        let k = &self.base;
        let n = self.n;
        let id = Matrix::identity(k, n);
        if !self.algebra.is_ring_map(&self.sigma) {
            return not_galois(n, "σ is not a ring homomorphism");
        }
        if self.sigma.pow(n) != id {
            return not_galois(n, "σ^n is not the identity");
        }
        for r in prime_factors(n) {
            if self.sigma.pow(n / r) == id {
                return not_galois(n, format!("σ has order dividing {}", n / r));
            }
        }
        if self.sigma.sub(&id).kernel().len() != 1 {
            return not_galois(n, "fixed field of σ is larger than K");
        }
        for m in (1..=n).filter(|m| n.is_multiple_of(*m)) {
            if self.fixed_subfield(m)?.len() != n / m {
                return not_galois(n, format!("dim L^(C_{m}) != {}", n / m));
            }
        }
        match &self.flavor {
            Flavor::Kummer { a, zeta } => {
                if n > 1 && self.sigma.apply(&self.alpha_power(1)) != crate::linalg::vec_scale(k, zeta, &self.alpha_power(1)) {
                    return not_galois(n, "σ(α) != ζ·α");
                }
                let by_matrix = (0..n).fold(self.algebra.unit().clone(), |acc, j| {
                    self.algebra.mul(&acc, &self.sigma.pow(j).apply(&self.alpha_power(1)))
                });
                let expected = k.mul(&k.pow(zeta, (n * (n - 1) / 2) as u64), a);
                let mut symbolic = vec![k.zero(); n];
                symbolic[0] = expected;
                if by_matrix != symbolic {
                    return Err(Error::Internal("product of conjugates of α differs from ζ^(n(n−1)/2)·a".into()));
                }
            }
            Flavor::ArtinSchreier { .. } => {
                if k.characteristic() != 2 || n != 2 {
                    return not_galois(n, "Artin–Schreier data requires characteristic 2 and n = 2");
                }
                let expected = vec![k.one(), k.one()];
                if self.sigma.apply(&self.alpha_power(1)) != expected {
                    return not_galois(n, "σ(α) != α + 1");
                }
            }
            Flavor::Explicit => {}
        }
        if let Some(q) = k.cardinality() {
            // every element of a field with q^n elements satisfies x^(q^n) = x
            let alpha = self.alpha_power(1);
            let mut y = alpha.clone();
            for _ in 0..n {
                y = pow_big(&self.algebra, &y, q);
            }
            if y != alpha {
                return Err(Error::NotAFieldExtension("Frobenius check failed: |L| != |K|^n".into()));
            }
        }
        Ok(())
    }
}

fn pow_big(a: &CommAlgebra, x: &[Scalar], mut e: u64) -> Vector {
    let mut acc = a.unit().clone();
    let mut base = x.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = a.mul(&acc, &base);
        }
        base = a.mul(&base, &base);
        e >>= 1;
    }
    acc
}
