//! Dense univariate polynomials over a [`Field`], coefficients low to high.

use crate::error::{Error, Result};
use crate::field::{prime_factors, Field, Scalar};

pub type Poly = Vec<Scalar>;

pub fn trim(k: &Field, mut f: Poly) -> Poly {
    while f.last().is_some_and(|c| k.is_zero(c)) {
        f.pop();
    }
    f
}

/// Degree, with `None` for the zero polynomial.
pub fn degree(k: &Field, f: &[Scalar]) -> Option<usize> {
    f.iter().rposition(|c| !k.is_zero(c))
}

pub fn add(k: &Field, f: &[Scalar], g: &[Scalar]) -> Poly {
    let n = f.len().max(g.len());
    let zero = k.zero();
    let out = (0..n)
        .map(|i| k.add(f.get(i).unwrap_or(&zero), g.get(i).unwrap_or(&zero)))
        .collect();
    trim(k, out)
}

pub fn sub(k: &Field, f: &[Scalar], g: &[Scalar]) -> Poly {
    let neg: Poly = g.iter().map(|c| k.neg(c)).collect();
    add(k, f, &neg)
}

pub fn mul(k: &Field, f: &[Scalar], g: &[Scalar]) -> Poly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![k.zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        if k.is_zero(a) {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            out[i + j] = k.add(&out[i + j], &k.mul(a, b));
        }
    }
    trim(k, out)
}

/// Quotient and remainder; the divisor must be nonzero.
pub fn divrem(k: &Field, f: &[Scalar], g: &[Scalar]) -> Result<(Poly, Poly)> {
    let dg = degree(k, g).ok_or(Error::DivisionByZero)?;
    let lead_inv = k.inv(&g[dg])?;
    let mut r = trim(k, f.to_vec());
    let mut q = vec![k.zero(); r.len().saturating_sub(dg).max(1)];
    while let Some(dr) = degree(k, &r) {
        if dr < dg {
            break;
        }
        let c = k.mul(&r[dr], &lead_inv);
        let shift = dr - dg;
        q[shift] = k.add(&q[shift], &c);
        for (i, gi) in g.iter().enumerate().take(dg + 1) {
            r[shift + i] = k.sub(&r[shift + i], &k.mul(&c, gi));
        }
        r = trim(k, r);
    }
    Ok((trim(k, q), r))
}

pub fn rem(k: &Field, f: &[Scalar], g: &[Scalar]) -> Result<Poly> {
    Ok(divrem(k, f, g)?.1)
}

/// Monic gcd (zero if both inputs are zero).
pub fn gcd(k: &Field, f: &[Scalar], g: &[Scalar]) -> Result<Poly> {
    let (mut a, mut b) = (trim(k, f.to_vec()), trim(k, g.to_vec()));
    while degree(k, &b).is_some() {
        let r = rem(k, &a, &b)?;
        a = b;
        b = r;
    }
    match degree(k, &a) {
        None => Ok(Vec::new()),
        Some(d) => {
            let inv = k.inv(&a[d])?;
            Ok(a.iter().map(|c| k.mul(c, &inv)).collect())
        }
    }
}

/// `base^e mod modulus`.
pub fn powmod(k: &Field, base: &[Scalar], mut e: u64, modulus: &[Scalar]) -> Result<Poly> {
    let mut acc = vec![k.one()];
    let mut b = rem(k, base, modulus)?;
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(k, &mul(k, &acc, &b), modulus)?;
        }
        b = rem(k, &mul(k, &b, &b), modulus)?;
        e >>= 1;
    }
    rem(k, &acc, modulus)
}

pub fn eval(k: &Field, f: &[Scalar], x: &Scalar) -> Scalar {
    f.iter().rev().fold(k.zero(), |acc, c| k.add(&k.mul(&acc, x), c))
}

/// Irreducibility test.
///
/// Finite fields use Rabin's criterion: `f` of degree `n` over `F_q` is
/// irreducible iff `x^{q^n} = x mod f` and `gcd(x^{q^{n/r}} - x, f) = 1` for
/// every prime `r | n`. Over `Q` only degrees up to 3 are supported, where
/// irreducibility is equivalent to having no rational root.
pub fn is_irreducible(k: &Field, f: &[Scalar]) -> Result<bool> {
    let n = match degree(k, f) {
        None | Some(0) => return Ok(false),
        Some(1) => return Ok(true),
        Some(n) => n,
    };
    match k.cardinality() {
        Some(q) => {
            let x = vec![k.zero(), k.one()];
            // x^{q^j} mod f by repeated q-th powering
            let frob = |j: usize| -> Result<Poly> {
                let mut y = x.clone();
                for _ in 0..j {
                    y = powmod(k, &y, q, f)?;
                }
                Ok(y)
            };
            if sub(k, &frob(n)?, &x).iter().any(|c| !k.is_zero(c)) {
                return Ok(false);
            }
            for r in prime_factors(n) {
                let h = sub(k, &frob(n / r)?, &x);
                let g = gcd(k, &h, f)?;
                if degree(k, &g) != Some(0) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        None => {
            if n > 3 {
                return Err(Error::Unsupported(
                    "irreducibility over Q is only decided for degree <= 3".into(),
                ));
            }
            Ok(!has_rational_root(k, f))
        }
    }
}

fn has_rational_root(k: &Field, f: &[Scalar]) -> bool {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_rational::BigRational;
    use num_traits::{Signed, Zero};

    // clear denominators to get an integer polynomial
    let rats: Vec<BigRational> = f
        .iter()
        .map(|c| match c {
            Scalar::Rat(r) => r.clone(),
            Scalar::Fin(_) => unreachable!(),
        })
        .collect();
    let lcm = rats.iter().fold(BigInt::from(1), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    if ints[0].is_zero() {
        return true;
    }
    let divisors = |v: &BigInt| -> Vec<BigInt> {
        let v = v.abs();
        let mut out = Vec::new();
        let mut d = BigInt::from(1);
        while &d * &d <= v {
            if (&v % &d).is_zero() {
                out.push(d.clone());
                out.push(&v / &d);
            }
            d += 1;
        }
        out
    };
    let lead = ints.iter().rev().find(|c| !c.is_zero()).unwrap().clone();
    for p in divisors(&ints[0]) {
        for q in divisors(&lead) {
            for sign in [1, -1] {
                let cand = Scalar::Rat(BigRational::new(BigInt::from(sign) * &p, q.clone()));
                if k.is_zero(&eval(k, f, &cand)) {
                    return true;
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(k: &Field, coeffs: &[i64]) -> Poly {
        coeffs.iter().map(|&c| k.from_int(c)).collect()
    }

    #[test]
    fn division_identity() {
        let k = Field::prime(7).unwrap();
        let f = p(&k, &[3, 0, 2, 5, 1]);
        let g = p(&k, &[1, 4, 1]);
        let (q, r) = divrem(&k, &f, &g).unwrap();
        assert_eq!(add(&k, &mul(&k, &q, &g), &r), trim(&k, f));
        assert!(degree(&k, &r).unwrap_or(0) < 2);
    }

    #[test]
    fn irreducibility_over_small_fields() {
        let f2 = Field::prime(2).unwrap();
        assert!(is_irreducible(&f2, &p(&f2, &[1, 1, 1])).unwrap());
        assert!(!is_irreducible(&f2, &p(&f2, &[1, 0, 1])).unwrap());
        let f5 = Field::prime(5).unwrap();
        // x^4 - 2 over F_5
        assert!(is_irreducible(&f5, &p(&f5, &[-2, 0, 0, 0, 1])).unwrap());
        // x^4 - 4 = (x^2 - 2)(x^2 + 2)
        assert!(!is_irreducible(&f5, &p(&f5, &[-4, 0, 0, 0, 1])).unwrap());
        let f7 = Field::prime(7).unwrap();
        assert!(is_irreducible(&f7, &p(&f7, &[-3, 0, 0, 1])).unwrap());
        assert!(!is_irreducible(&f7, &p(&f7, &[-1, 0, 0, 1])).unwrap());
    }

    #[test]
    fn irreducibility_over_q() {
        let q = Field::rationals();
        assert!(is_irreducible(&q, &p(&q, &[-2, 0, 1])).unwrap());
        assert!(!is_irreducible(&q, &p(&q, &[-4, 0, 1])).unwrap());
        assert!(!is_irreducible(&q, &[q.from_ratio(-1, 4).unwrap(), q.zero(), q.one()]).unwrap());
    }

    #[test]
    fn gcd_is_monic() {
        let k = Field::prime(5).unwrap();
        let f = mul(&k, &p(&k, &[1, 1]), &p(&k, &[2, 1]));
        let g = mul(&k, &p(&k, &[1, 1]), &p(&k, &[3, 1]));
        assert_eq!(gcd(&k, &f, &g).unwrap(), p(&k, &[1, 1]));
    }
}
