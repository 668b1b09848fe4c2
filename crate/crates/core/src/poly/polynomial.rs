use std::collections::BTreeMap;
use std::fmt;

use super::{Monomial, PolyRing};
use crate::error::{Error, Result};
use crate::gf::Elem;

/// An exact polynomial over GF(q). Terms are kept sparse; zero coefficients
/// are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: PolyRing,
    terms: BTreeMap<Monomial, Elem>,
}

impl Polynomial {
    pub fn zero(ring: &PolyRing) -> Self {
        Self {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &PolyRing, c: Elem) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn monomial(ring: &PolyRing, m: Monomial, c: Elem) -> Self {
        assert_eq!(m.nvars(), ring.nvars(), "monomial arity mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from terms, summing repeated monomials.
    pub fn from_terms(ring: &PolyRing, terms: impl IntoIterator<Item = (Monomial, Elem)>) -> Self {
        let mut out = Self::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial arity mismatch");
            out.add_term(m, c);
        }
        out
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Elem)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Elem {
        self.terms.get(m).copied().unwrap_or(Elem::ZERO)
    }

    /// Largest term in graded reverse lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Elem)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: Elem) {
        if c.is_zero() {
            return;
        }
        let field = self.ring.field().clone();
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = field.add(*e.get(), c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Maximum total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// The common degree of all terms, or `None` if the polynomial is zero
    /// or mixes degrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Zero counts as homogeneous (of every degree).
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn is_homogeneous_of(&self, n: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == n)
    }

    pub fn homogeneous_components(&self) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Polynomial::zero(&self.ring))
                .terms
                .insert(m.clone(), *c);
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), *c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let f = self.ring.field();
        Self {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), f.neg(*c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: Elem) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let f = self.ring.field();
        Self {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), f.mul(*a, c)))
                .collect(),
        }
    }

    /// Multiplies by a monomial times a scalar.
    pub fn mul_term(&self, m: &Monomial, c: Elem) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let f = self.ring.field();
        Self {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(a, x)| (a.mul(m), f.mul(*x, c)))
                .collect(),
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        let f = self.ring.field();
        let mut acc: std::collections::HashMap<Monomial, Elem> =
            std::collections::HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e = acc.entry(ma.mul(mb)).or_insert(Elem::ZERO);
                *e = f.add(*e, f.mul(*ca, *cb));
            }
        }
        Ok(Self {
            ring: self.ring.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = self.ring.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Multivariate division by a single divisor in graded reverse
    /// lexicographic order: returns `(quotient, remainder)` with
    /// `self = quotient * divisor + remainder` and no term of the remainder
    /// divisible by the leading monomial of the divisor.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check_ring(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(Error::InexactDivision)?;
        let field = self.ring.field();
        let lc_inv = field.inv(*lc)?;
        let mut quotient = Self::zero(&self.ring);
        let mut remainder = Self::zero(&self.ring);
        let mut rest = self.clone();
        while let Some((m, c)) = rest.leading_term().map(|(m, c)| (m.clone(), *c)) {
            if lm.divides(&m) {
                let qm = lm.quotient_of(&m);
                let qc = field.mul(c, lc_inv);
                quotient.add_term(qm.clone(), qc);
                rest = &rest - &divisor.mul_term(&qm, qc);
            } else {
                rest.terms.remove(&m);
                remainder.add_term(m, c);
            }
        }
        Ok((quotient, remainder))
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        match self.div_rem(divisor) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Substitutes `images[i]` for the i-th variable. Every image must live
    /// in a common target ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.ring.nvars(),
                found: images.len(),
            });
        }
        let target = images[0].ring().clone();
        if images.iter().any(|p| *p.ring() != target) {
            return Err(Error::RingMismatch);
        }
        // powers[i][e] = images[i]^e, filled lazily
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![target.one(), p.clone()])
            .collect();
        let mut out = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(&target, *c);
            for (i, &e) in m.0.iter().enumerate() {
                let e = e as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Re-expresses the polynomial in another ring with the same field and
    /// at least as many variables, mapping variable `i` to `i`.
    pub fn embed(&self, target: &PolyRing) -> Result<Polynomial> {
        if target.field() != self.ring.field() || target.nvars() < self.ring.nvars() {
            return Err(Error::RingMismatch);
        }
        let n = target.nvars();
        Ok(Polynomial::from_terms(
            target,
            self.terms.iter().map(|(m, c)| {
                let mut e = m.exponents();
                e.resize(n, 0);
                (Monomial::new(&e), *c)
            }),
        ))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl std::ops::$tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$inner(rhs).expect("polynomials from different rings")
            }
        }
        impl std::ops::$tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let field = self.ring.field();
        let names = self.ring.names();
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            names[i].clone()
                        } else {
                            format!("{}^{}", names[i], e)
                        }
                    })
                    .collect();
            let coeff = field.display(*c);
            let coeff = if field.s() > 1 && coeff.contains('+') {
                format!("({coeff})")
            } else {
                coeff
            };
            match (mono.is_empty(), *c == Elem::ONE) {
                (true, _) => write!(f, "{coeff}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{}*{}", coeff, mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;

    fn ring(p: u32, d: usize) -> PolyRing {
        PolyRing::new(Field::with_default(p, 1).unwrap(), d).unwrap()
    }

    #[test]
    fn square_in_char_two() {
        let r = ring(2, 2);
        let (x, y) = (r.var(0), r.var(1));
        let s = &x + &y;
        assert_eq!(&s * &s, &(&x * &x) + &(&y * &y));
        assert_eq!(&s * &r.one(), s);
    }

    #[test]
    fn product_in_gf3() {
        let r = ring(3, 1);
        let x = r.var(0);
        let f = r.field().clone();
        let a = &x + &r.one();
        let b = &x + &Polynomial::constant(&r, f.from_int(2));
        assert_eq!(
            &a * &b,
            &(&x * &x) + &Polynomial::constant(&r, f.from_int(2))
        );
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = ring(2, 2).var(0);
        let b = ring(3, 2).var(0);
        assert_eq!(a.try_mul(&b), Err(Error::RingMismatch));
    }

    #[test]
    fn homogeneity() {
        let r = ring(2, 2);
        let (x, y) = (r.var(0), r.var(1));
        assert_eq!((&x * &y).homogeneous_degree(), Some(2));
        assert_eq!((&x + &(&x * &y)).homogeneous_degree(), None);
        assert!(r.zero().is_homogeneous());
        assert!(r.zero().is_homogeneous_of(7));
        assert_eq!((&x + &(&x * &y)).homogeneous_components().len(), 2);
    }

    #[test]
    fn exact_division() {
        let r = ring(3, 2);
        let (x, y) = (r.var(0), r.var(1));
        let a = &(&x * &x) - &(&y * &y);
        let b = &x + &y;
        assert_eq!(a.exact_div(&b), Some(&x - &y));
        assert_eq!((&a + &x).exact_div(&b), None);
    }

    #[test]
    fn display_is_readable() {
        let r = ring(3, 2);
        let (x, y) = (r.var(0), r.var(1));
        let f = &(&(&x * &x) * &y) + &y.scale(r.field().from_int(2));
        assert_eq!(f.to_string(), "x^2*y + 2*y");
    }
}
