//! Exact scalar fields: prime fields `F_p`, extension fields `F_{p^k}` in
//! polynomial basis, and the rationals.
//!
//! Elements are stored as bare [`Scalar`] values and all arithmetic goes
//! through the owning [`Field`]. [`FieldScalar`] pairs a value with its owner
//! for the checked, user-facing arithmetic entry point [`field_arith`].

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly;

/// Largest prime accepted, so that products of two residues fit in `u64`.
const MAX_PRIME: u64 = 1 << 31;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Prime { p: u64 },
    /// `F_p[t]/(modulus)`, modulus monic, coefficients low to high.
    Extension { p: u64, modulus: Vec<u64> },
    Rationals,
}

/// A field value in canonical form.
///
/// Finite field elements are packed base `p`: the coefficient of `t^i` is the
/// i-th base-`p` digit. Rationals are always in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Fin(u64),
    Rat(BigRational),
}

#[derive(Clone)]
pub struct Field(Arc<FieldKind>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            FieldKind::Prime { p } => write!(f, "F_{p}"),
            FieldKind::Extension { p, modulus } => {
                let k = modulus.len() - 1;
                write!(f, "F_{}^{} = F_{}[t]/({})", p, k, p, poly_string(modulus, "t"))
            }
            FieldKind::Rationals => write!(f, "Q"),
        }
    }
}

fn poly_string(coeffs: &[u64], var: &str) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mon = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        terms.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => mon,
            _ => format!("{c}{mon}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factors of `n` without multiplicity, ascending.
pub(crate) fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p >= MAX_PRIME {
            return Err(Error::InvalidField(format!("prime {p} too large")));
        }
        Ok(Field(Arc::new(FieldKind::Prime { p })))
    }

    /// `F_p[t]/(modulus)`; the modulus must be monic and irreducible over `F_p`.
    pub fn extension(p: u64, modulus: Vec<u64>) -> Result<Field> {
        let base = Field::prime(p)?;
        if modulus.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree >= 1".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus coefficients must be reduced mod p".into()));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        let k = modulus.len() - 1;
        let card = (p as u128).checked_pow(k as u32).filter(|&q| q < (1u128 << 62));
        if card.is_none() {
            return Err(Error::InvalidField("field too large for packed representation".into()));
        }
        if k == 1 {
            return Ok(base);
        }
        let f: Vec<Scalar> = modulus.iter().map(|&c| Scalar::Fin(c)).collect();
        if !poly::is_irreducible(&base, &f)? {
            return Err(Error::InvalidField(format!(
                "modulus {} is reducible over F_{p}",
                poly_string(&modulus, "t")
            )));
        }
        Ok(Field(Arc::new(FieldKind::Extension { p, modulus })))
    }

    pub fn rationals() -> Field {
        Field(Arc::new(FieldKind::Rationals))
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0
    }

    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            FieldKind::Prime { p } | FieldKind::Extension { p, .. } => *p,
            FieldKind::Rationals => 0,
        }
    }

    /// Degree over the prime field (1 for `F_p` and `Q`).
    pub fn degree(&self) -> usize {
        match &*self.0 {
            FieldKind::Extension { modulus, .. } => modulus.len() - 1,
            _ => 1,
        }
    }

    /// Number of elements, `None` for `Q`.
    pub fn cardinality(&self) -> Option<u64> {
        match &*self.0 {
            FieldKind::Prime { p } => Some(*p),
            FieldKind::Extension { p, modulus } => Some(p.pow((modulus.len() - 1) as u32)),
            FieldKind::Rationals => None,
        }
    }

    pub fn is_prime_field(&self) -> bool {
        !matches!(&*self.0, FieldKind::Extension { .. })
    }

    pub fn zero(&self) -> Scalar {
        match &*self.0 {
            FieldKind::Rationals => Scalar::Rat(BigRational::zero()),
            _ => Scalar::Fin(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match &*self.0 {
            FieldKind::Rationals => Scalar::Rat(BigRational::one()),
            _ => Scalar::Fin(1),
        }
    }

    /// Image of an integer under the canonical ring map `Z -> K`.
    pub fn from_int(&self, v: i64) -> Scalar {
        match &*self.0 {
            FieldKind::Prime { p } | FieldKind::Extension { p, .. } => {
                Scalar::Fin(v.rem_euclid(*p as i64) as u64)
            }
            FieldKind::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        let d = self.from_int(den);
        let n = self.from_int(num);
        Ok(self.mul(&n, &self.inv(&d)?))
    }

    /// Finite field element from its coefficients over the prime field.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Scalar> {
        match &*self.0 {
            FieldKind::Prime { p } => {
                if coeffs.len() > 1 && coeffs[1..].iter().any(|&c| c % p != 0) {
                    return Err(Error::Usage("prime field elements take one coefficient".into()));
                }
                Ok(Scalar::Fin(coeffs.first().copied().unwrap_or(0) % p))
            }
            FieldKind::Extension { p, modulus } => {
                let k = modulus.len() - 1;
                if coeffs.len() > k {
                    return Err(Error::Usage(format!("element of F_{p}^{k} takes at most {k} coefficients")));
                }
                let digits: Vec<u64> = coeffs.iter().map(|c| c % p).collect();
                Ok(Scalar::Fin(pack(&digits, *p)))
            }
            FieldKind::Rationals => Err(Error::Usage("Q elements are not coefficient vectors".into())),
        }
    }

    /// Coefficients over the prime field (length `degree()`); `None` for Q.
    pub fn coeffs(&self, x: &Scalar) -> Option<Vec<u64>> {
        match (&*self.0, x) {
            (FieldKind::Prime { .. }, Scalar::Fin(v)) => Some(vec![*v]),
            (FieldKind::Extension { p, modulus }, Scalar::Fin(v)) => Some(unpack(*v, *p, modulus.len() - 1)),
            _ => None,
        }
    }

    pub fn is_zero(&self, x: &Scalar) -> bool {
        match x {
            Scalar::Fin(v) => *v == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, x: &Scalar) -> bool {
        *x == self.one()
    }

    pub fn add(&self, x: &Scalar, y: &Scalar) -> Scalar {
        match (&*self.0, x, y) {
            (FieldKind::Prime { p }, Scalar::Fin(a), Scalar::Fin(b)) => Scalar::Fin((a + b) % p),
            (FieldKind::Extension { p, modulus }, Scalar::Fin(a), Scalar::Fin(b)) => {
                let k = modulus.len() - 1;
                let (da, db) = (unpack(*a, *p, k), unpack(*b, *p, k));
                let s: Vec<u64> = da.iter().zip(&db).map(|(u, v)| (u + v) % p).collect();
                Scalar::Fin(pack(&s, *p))
            }
            (FieldKind::Rationals, Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn neg(&self, x: &Scalar) -> Scalar {
        match (&*self.0, x) {
            (FieldKind::Prime { p }, Scalar::Fin(a)) => Scalar::Fin((p - a) % p),
            (FieldKind::Extension { p, modulus }, Scalar::Fin(a)) => {
                let d: Vec<u64> = unpack(*a, *p, modulus.len() - 1).iter().map(|u| (p - u) % p).collect();
                Scalar::Fin(pack(&d, *p))
            }
            (FieldKind::Rationals, Scalar::Rat(a)) => Scalar::Rat(-a),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn sub(&self, x: &Scalar, y: &Scalar) -> Scalar {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &Scalar, y: &Scalar) -> Scalar {
        match (&*self.0, x, y) {
            (FieldKind::Prime { p }, Scalar::Fin(a), Scalar::Fin(b)) => Scalar::Fin(a * b % p),
            (FieldKind::Extension { p, modulus }, Scalar::Fin(a), Scalar::Fin(b)) => {
                Scalar::Fin(ext_mul(*a, *b, *p, modulus))
            }
            (FieldKind::Rationals, Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn inv(&self, x: &Scalar) -> Result<Scalar> {
        if self.is_zero(x) {
            return Err(Error::DivisionByZero);
        }
        Ok(match (&*self.0, x) {
            (FieldKind::Prime { p }, Scalar::Fin(a)) => Scalar::Fin(inv_mod(*a, *p)),
            (FieldKind::Extension { .. }, _) => {
                let q = self.cardinality().unwrap();
                self.pow(x, q - 2)
            }
            (FieldKind::Rationals, Scalar::Rat(a)) => Scalar::Rat(a.recip()),
            _ => panic!("scalar does not belong to {self}"),
        })
    }

    pub fn div(&self, x: &Scalar, y: &Scalar) -> Result<Scalar> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    pub fn pow(&self, x: &Scalar, mut e: u64) -> Scalar {
        let mut base = x.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// All elements of a finite field, in packed order.
    pub fn elements(&self) -> Result<Vec<Scalar>> {
        match self.cardinality() {
            Some(q) => Ok((0..q).map(Scalar::Fin).collect()),
            None => Err(Error::Unsupported("cannot enumerate Q".into())),
        }
    }

    /// Multiplicative order of a nonzero element; `None` if it has infinite order.
    pub fn multiplicative_order(&self, x: &Scalar) -> Option<u64> {
        if self.is_zero(x) {
            return None;
        }
        match self.cardinality() {
            Some(q) => {
                let mut y = x.clone();
                let mut k = 1;
                while !self.is_one(&y) {
                    y = self.mul(&y, x);
                    k += 1;
                    if k > q {
                        return None;
                    }
                }
                Some(k)
            }
            None => {
                if self.is_one(x) {
                    Some(1)
                } else if *x == self.from_int(-1) {
                    Some(2)
                } else {
                    None
                }
            }
        }
    }

    /// Whether `a = c^r` for some `c` in the field.
    pub fn is_rth_power(&self, a: &Scalar, r: u64) -> bool {
        match (&*self.0, a) {
            (FieldKind::Rationals, Scalar::Rat(v)) => {
                if v.is_zero() {
                    return true;
                }
                if v.is_negative() && r.is_multiple_of(2) {
                    return false;
                }
                let root = |n: &BigInt| -> bool {
                    let n = n.abs();
                    let c = n.nth_root(r as u32);
                    c.pow(r as u32) == n
                };
                root(v.numer()) && root(v.denom())
            }
            _ => self
                .elements()
                .unwrap()
                .iter()
                .any(|c| self.pow(c, r) == *a),
        }
    }

    pub fn fmt_scalar(&self, x: &Scalar) -> String {
        match (&*self.0, x) {
            (FieldKind::Prime { .. }, Scalar::Fin(v)) => v.to_string(),
            (FieldKind::Extension { p, modulus }, Scalar::Fin(v)) => {
                poly_string(&unpack(*v, *p, modulus.len() - 1), "t")
            }
            (FieldKind::Rationals, Scalar::Rat(r)) => {
                if r.is_integer() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            _ => format!("{x:?}"),
        }
    }

    /// Small integer value of a prime-field or rational integer scalar, for reporting.
    pub fn to_i64(&self, x: &Scalar) -> Option<i64> {
        match x {
            Scalar::Fin(v) if self.degree() == 1 => Some(*v as i64),
            Scalar::Rat(r) if r.is_integer() => r.numer().to_i64(),
            _ => None,
        }
    }
}

fn unpack(mut v: u64, p: u64, k: usize) -> Vec<u64> {
    let mut out = vec![0; k];
    for slot in out.iter_mut() {
        *slot = v % p;
        v /= p;
    }
    out
}

fn pack(digits: &[u64], p: u64) -> u64 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn ext_mul(a: u64, b: u64, p: u64, modulus: &[u64]) -> u64 {
    let k = modulus.len() - 1;
    let (da, db) = (unpack(a, p, k), unpack(b, p, k));
    let mut prod = vec![0u64; 2 * k - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for top in (k..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        for (j, &mj) in modulus[..k].iter().enumerate() {
            let idx = top - k + j;
            prod[idx] = (prod[idx] + (p - c) * mj) % p;
        }
        prod[top] = 0;
    }
    pack(&prod[..k], p)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let e = (a as i128).extended_gcd(&(p as i128));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(p as i128) as u64
}

/// A scalar tagged with its owning field, for checked arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldScalar {
    pub owner: Field,
    pub value: Scalar,
}

impl FieldScalar {
    pub fn new(owner: &Field, value: Scalar) -> Self {
        FieldScalar { owner: owner.clone(), value }
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.owner.fmt_scalar(&self.value))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Inv,
}

/// Checked field arithmetic on owner-tagged scalars.
pub fn field_arith(op: ArithOp, x: &FieldScalar, y: Option<&FieldScalar>) -> Result<FieldScalar> {
    let k = &x.owner;
    let binary = |y: Option<&FieldScalar>| -> Result<Scalar> {
        let y = y.ok_or_else(|| Error::Usage(format!("{op:?} needs two operands")))?;
        if y.owner != *k {
            return Err(Error::MixedFields(k.to_string(), y.owner.to_string()));
        }
        Ok(y.value.clone())
    };
    let value = match op {
        ArithOp::Add => k.add(&x.value, &binary(y)?),
        ArithOp::Mul => k.mul(&x.value, &binary(y)?),
        ArithOp::Neg => k.neg(&x.value),
        ArithOp::Inv => k.inv(&x.value)?,
    };
    Ok(FieldScalar::new(k, value))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Field {
        Field::extension(2, vec![1, 1, 1]).unwrap()
    }

    #[test]
    fn inverse_in_f5() {
        let k = Field::prime(5).unwrap();
        let two = FieldScalar::new(&k, k.from_int(2));
        let inv = field_arith(ArithOp::Inv, &two, None).unwrap();
        assert_eq!(inv.value, k.from_int(3));
    }

    #[test]
    fn t_squared_in_f4() {
        let k = f4();
        let t = k.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(k.mul(&t, &t), k.from_coeffs(&[1, 1]).unwrap());
        assert_eq!(k.fmt_scalar(&k.mul(&t, &t)), "t+1");
    }

    #[test]
    fn rational_sum() {
        let q = Field::rationals();
        let a = q.from_ratio(1, 2).unwrap();
        let b = q.from_ratio(1, 3).unwrap();
        assert_eq!(q.add(&a, &b), q.from_ratio(5, 6).unwrap());
        assert_eq!(q.fmt_scalar(&q.add(&a, &b)), "5/6");
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let k = Field::prime(7).unwrap();
        let z = FieldScalar::new(&k, k.zero());
        assert_eq!(field_arith(ArithOp::Inv, &z, None), Err(Error::DivisionByZero));
        assert_eq!(Field::rationals().inv(&Field::rationals().zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_owners_rejected() {
        let a = FieldScalar::new(&Field::prime(5).unwrap(), Scalar::Fin(1));
        let b = FieldScalar::new(&Field::prime(7).unwrap(), Scalar::Fin(1));
        assert!(matches!(field_arith(ArithOp::Add, &a, Some(&b)), Err(Error::MixedFields(..))));
    }

    #[test]
    fn reducible_modulus_rejected() {
        // t^2 + 1 = (t + 1)^2 over F_2
        assert!(Field::extension(2, vec![1, 0, 1]).is_err());
        assert!(Field::extension(3, vec![1, 0, 1]).is_ok());
        assert!(Field::extension(4, vec![1, 1]).is_err());
    }

    #[test]
    fn extension_field_axioms_exhaustive() {
        let k = Field::extension(3, vec![2, 2, 1]).unwrap(); // t^2 + 2t + 2 over F_3
        let elems = k.elements().unwrap();
        assert_eq!(elems.len(), 9);
        for a in &elems {
            if !k.is_zero(a) {
                assert_eq!(k.mul(a, &k.inv(a).unwrap()), k.one());
            }
            assert!(k.is_zero(&k.add(a, &k.neg(a))));
            for b in &elems {
                assert_eq!(k.mul(a, b), k.mul(b, a));
                for c in &elems {
                    let lhs = k.mul(a, &k.add(b, c));
                    let rhs = k.add(&k.mul(a, b), &k.mul(a, c));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn rth_powers() {
        let k = Field::prime(7).unwrap();
        // cubes in F_7^x are {1, 6}
        let cubes: Vec<i64> = (1..7).filter(|&v| k.is_rth_power(&k.from_int(v), 3)).collect();
        assert_eq!(cubes, vec![1, 6]);
        let q = Field::rationals();
        assert!(q.is_rth_power(&q.from_ratio(4, 9).unwrap(), 2));
        assert!(!q.is_rth_power(&q.from_int(2), 2));
        assert!(q.is_rth_power(&q.from_int(-8), 3));
    }

    #[test]
    fn multiplicative_orders() {
        let k = Field::prime(5).unwrap();
        assert_eq!(k.multiplicative_order(&k.from_int(2)), Some(4));
        assert_eq!(k.multiplicative_order(&k.from_int(4)), Some(2));
        let q = Field::rationals();
        assert_eq!(q.multiplicative_order(&q.from_int(-1)), Some(2));
        assert_eq!(q.multiplicative_order(&q.from_int(2)), None);
    }
}
