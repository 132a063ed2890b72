//! Subgroups of `C_n`, indexed by their order `m | n`.

use crate::error::{usage, Result};
use crate::field::prime_factors;

pub fn gcd(a: usize, b: usize) -> usize {
    num_integer::gcd(a, b)
}

pub fn lcm(a: usize, b: usize) -> usize {
    num_integer::lcm(a, b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    n: usize,
    divisors: Vec<usize>,
    covering: Vec<(usize, usize)>,
}

impl Lattice {
    pub fn new(n: usize) -> Result<Lattice> {
        if n == 0 {
            return usage("group order must be positive");
        }
        let divisors: Vec<usize> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
        let mut covering = Vec::new();
        for &m in &divisors {
            for r in prime_factors(m) {
                covering.push((m / r, m));
            }
        }
        covering.sort();
        Ok(Lattice { n, divisors, covering })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn divisors(&self) -> &[usize] {
        &self.divisors
    }

    /// Pairs `(d, m)` with `d | m` and `m/d` prime, sorted.
    pub fn covering_pairs(&self) -> &[(usize, usize)] {
        &self.covering
    }

    pub fn contains(&self, m: usize) -> bool {
        m > 0 && self.n.is_multiple_of(m)
    }

    pub fn is_covering(&self, d: usize, m: usize) -> bool {
        self.covering.binary_search(&(d, m)).is_ok()
    }

    pub fn is_prime_order(&self) -> bool {
        self.n > 1 && prime_factors(self.n) == vec![self.n]
    }

    /// Divisors of `m`, ascending.
    pub fn divisors_of(&self, m: usize) -> Vec<usize> {
        self.divisors.iter().copied().filter(|d| m.is_multiple_of(*d)).collect()
    }

    /// The covering chain `d = c_0 | c_1 | … | c_k = m` that multiplies in
    /// the prime factors of `m/d` in ascending order.
    pub fn chain(&self, d: usize, m: usize) -> Result<Vec<usize>> {
        self.check_pair(d, m)?;
        let mut out = vec![d];
        let mut cur = d;
        let mut rest = m / d;
        for r in prime_factors(rest) {
            while rest.is_multiple_of(r) {
                cur *= r;
                rest /= r;
                out.push(cur);
            }
        }
        Ok(out)
    }

    /// Every covering chain from `d` up to `m`.
    pub fn chains(&self, d: usize, m: usize) -> Result<Vec<Vec<usize>>> {
        self.check_pair(d, m)?;
        fn go(cur: usize, m: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur == m {
                out.push(path.clone());
                return;
            }
            for r in prime_factors(m / cur) {
                path.push(cur * r);
                go(cur * r, m, path, out);
                path.pop();
            }
        }
        let mut out = Vec::new();
        go(d, m, &mut vec![d], &mut out);
        Ok(out)
    }

    fn check_pair(&self, d: usize, m: usize) -> Result<()> {
        if !self.contains(d) || !self.contains(m) || !m.is_multiple_of(d) {
            return usage(format!("levels {d} and {m} are not related by divisibility in C_{}", self.n));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_of_twelve() {
        let l = Lattice::new(12).unwrap();
        assert_eq!(l.divisors(), &[1, 2, 3, 4, 6, 12]);
        assert!(l.is_covering(6, 12));
        assert!(!l.is_covering(3, 12));
        assert_eq!(l.chain(1, 12).unwrap(), vec![1, 2, 4, 12]);
        assert_eq!(l.chains(1, 6).unwrap().len(), 2);
        assert_eq!(l.chains(1, 12).unwrap().len(), 3);
        assert!(l.chain(2, 3).is_err());
    }

    #[test]
    fn closed_under_gcd_and_lcm() {
        let l = Lattice::new(30).unwrap();
        for &a in l.divisors() {
            for &b in l.divisors() {
                assert!(l.contains(gcd(a, b)) && l.contains(lcm(a, b)));
            }
        }
    }
}
