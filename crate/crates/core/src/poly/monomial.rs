use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

pub(crate) type Exps = SmallVec<[u16; 8]>;

/// Exponent vector of a monomial. Ordered by graded reverse lexicographic
/// order: larger total degree first, ties broken in favour of the monomial
/// with the smaller exponent in the last variable where the two differ.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub(crate) Exps);

impl Monomial {
    pub fn new(exps: &[u32]) -> Self {
        Monomial(
            exps.iter()
                .map(|&e| u16::try_from(e).expect("exponent exceeds u16 range"))
                .collect(),
        )
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(smallvec::smallvec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i] as u32
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.0.iter().map(|&e| e as u32).collect()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub(crate) fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents())
    }
}

/// All exponent vectors of total degree `n` in `nvars` variables, in
/// descending graded reverse lexicographic order.
pub fn monomial_basis(nvars: usize, n: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fill(&mut cur, 0, n, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

fn fill(cur: &mut Vec<u32>, idx: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if idx + 1 == cur.len() {
        cur[idx] = remaining;
        out.push(Monomial::new(cur));
        return;
    }
    for e in 0..=remaining {
        cur[idx] = e;
        fill(cur, idx + 1, remaining - e, out);
    }
}

/// Number of monomials of degree `n` in `nvars` variables.
pub fn monomial_count(nvars: usize, n: u32) -> usize {
    binomial(n as u64 + nvars as u64 - 1, nvars as u64 - 1) as usize
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_examples() {
        let b = monomial_basis(2, 2);
        let e: Vec<Vec<u32>> = b.iter().map(Monomial::exponents).collect();
        assert_eq!(e, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(monomial_basis(1, 5).len(), 1);
        assert_eq!(monomial_basis(1, 5)[0].exponents(), vec![5]);
        assert_eq!(monomial_basis(3, 2).len(), 6);
        assert_eq!(monomial_count(3, 2), 6);
    }

    #[test]
    fn grevlex_ties() {
        // x y^2 z^0 vs x^2 z: last variable decides, smaller exponent wins
        let a = Monomial::new(&[1, 2, 0]);
        let b = Monomial::new(&[2, 0, 1]);
        assert!(a > b);
        let d3: Vec<Vec<u32>> = monomial_basis(3, 2)
            .iter()
            .map(Monomial::exponents)
            .collect();
        assert_eq!(
            d3,
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![0, 2, 0],
                vec![1, 0, 1],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
    }

    #[test]
    fn counts_match_binomial() {
        for d in 1..=4 {
            for n in 0..=7 {
                assert_eq!(monomial_basis(d, n).len(), monomial_count(d, n));
            }
        }
    }
}
