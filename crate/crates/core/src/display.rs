//! Rendering of vectors as linear combinations of named basis elements.

use crate::field::{Field, Scalar};

/// Coefficient prefix, parenthesized when the scalar is itself a sum.
fn coeff(field: &Field, c: &Scalar) -> String {
    let s = field.fmt_scalar(c);
    if s.contains('+') {
        format!("({s})")
    } else {
        s
    }
}

/// `c₀·b₀ + c₁·b₁ + …` in basis order, coefficients 1 omitted, `0` if empty.
pub fn render(field: &Field, v: &[Scalar], names: &[String]) -> String {
    let terms: Vec<String> = v
        .iter()
        .zip(names)
        .filter(|(c, _)| !field.is_zero(c))
        .map(|(c, name)| {
            if field.is_one(c) {
                name.clone()
            } else {
                format!("{}·{}", coeff(field, c), name)
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Scale a nonzero vector so that its first nonzero entry is 1.
pub fn normalize(field: &Field, v: &[Scalar]) -> Vec<Scalar> {
    match v.iter().find(|c| !field.is_zero(c)) {
        None => v.to_vec(),
        Some(lead) => {
            let inv = field.inv(lead).expect("nonzero");
            v.iter().map(|c| field.mul(c, &inv)).collect()
        }
    }
}
