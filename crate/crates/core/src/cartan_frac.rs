//! Fractions `a / x^m` in a localization `S_x` and the Cartan operators
//! `Q^r` on them.
//!
//! `Q^r` is defined by the recursion
//! `Q^r(a/x^m) = x^{-m} (P^r(a) - Σ_{i=1}^{r} P^i(x^m) Q^{r-i}(a/x^m))`,
//! which is the unique extension of the reduced powers to `S_x` satisfying
//! `Q^r(s u) = Σ_{i+j=r} P^i(s) Q^j(u)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::group_action::Group;
use crate::poly::{PolyRing, Polynomial};
use crate::steenrod::reduced_power;

/// `num / base^exp` with homogeneous `num` (or zero) and homogeneous nonzero
/// `base`. Equality is tested by cross-multiplication, so two fractions
/// over different bases compare as elements of the fraction field.
#[derive(Clone, Debug)]
pub struct Fraction {
    num: Polynomial,
    base: Polynomial,
    exp: u32,
}

impl Fraction {
    /// Builds and normalizes: divides out `base` while it divides `num`.
    pub fn new(num: Polynomial, base: Polynomial, exp: u32) -> Result<Self> {
        let mut f = Self::raw(num, base, exp)?;
        f.normalize();
        Ok(f)
    }

    /// Builds without normalizing, keeping the given representation.
    pub fn raw(num: Polynomial, base: Polynomial, exp: u32) -> Result<Self> {
        if num.ring() != base.ring() {
            return Err(Error::RingMismatch);
        }
        if base.is_zero() {
            return Err(Error::InvalidInput("fraction base must be nonzero".into()));
        }
        if !base.is_homogeneous() || !(num.is_zero() || num.is_homogeneous()) {
            return Err(Error::NotHomogeneous);
        }
        Ok(Self { num, base, exp })
    }

    /// `s / 1` with the given base.
    pub fn from_poly(s: Polynomial, base: Polynomial) -> Result<Self> {
        Self::raw(s, base, 0)
    }

    pub fn zero(base: Polynomial) -> Result<Self> {
        let z = base.ring().zero();
        Self::raw(z, base, 0)
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn base(&self) -> &Polynomial {
        &self.base
    }

    pub fn exp(&self) -> u32 {
        self.exp
    }

    pub fn ring(&self) -> &PolyRing {
        self.num.ring()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `deg num - exp * deg base`; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        let a = self.num.homogeneous_degree()? as i64;
        let b = self.base.homogeneous_degree().unwrap_or(0) as i64;
        Some(a - self.exp as i64 * b)
    }

    pub fn normalize(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        while self.exp > 0 {
            match self.num.exact_div(&self.base) {
                Some(q) => {
                    self.num = q;
                    self.exp -= 1;
                }
                None => break,
            }
        }
    }

    pub fn normalized(mut self) -> Self {
        self.normalize();
        self
    }

    /// Rewrites over `base^exp` for `exp >= self.exp`.
    pub fn with_exp(&self, exp: u32) -> Self {
        assert!(
            exp >= self.exp,
            "cannot lower a denominator exponent by raising"
        );
        Self {
            num: &self.num * &self.base.pow(exp - self.exp),
            base: self.base.clone(),
            exp,
        }
    }

    /// Sum of two fractions over the same base.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.base != other.base {
            return Err(Error::InvalidInput("fractions have different bases".into()));
        }
        let e = self.exp.max(other.exp);
        let num = &self.with_exp(e).num + &other.with_exp(e).num;
        Self::new(num, self.base.clone(), e)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            base: self.base.clone(),
            exp: self.exp,
        }
    }

    pub fn scale(&self, c: Elem) -> Self {
        Self {
            num: self.num.scale(c),
            base: self.base.clone(),
            exp: self.exp,
        }
        .normalized()
    }

    /// `s * self` for homogeneous `s`.
    pub fn mul_poly(&self, s: &Polynomial) -> Self {
        Self {
            num: &self.num * s,
            base: self.base.clone(),
            exp: self.exp,
        }
        .normalized()
    }

    /// Whether numerator and base are fixed by every generator of `group`.
    pub fn check_invariant(&self, group: &Group) -> Result<bool> {
        Ok(group.is_invariant(&self.num)? && group.is_invariant(&self.base)?)
    }
}

impl PartialEq for Fraction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.base.pow(other.exp) == &other.num * &self.base.pow(self.exp)
    }
}

impl Eq for Fraction {}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})^{}", self.num, self.base, self.exp)
        }
    }
}

/// `[Q^0(u), ..., Q^{r_max}(u)]`, each normalized. The recursion runs on the
/// representation of `u` as given.
pub fn q_tower(u: &Fraction, r_max: u32) -> Vec<Fraction> {
    let ring = u.ring();
    let m = u.exp;
    let xm = u.base.pow(m);
    // Q^j(u) = nums[j] / x^{m(j+1)}
    let mut xm_pows = vec![ring.one()];
    let mut nums: Vec<Polynomial> = Vec::with_capacity(r_max as usize + 1);
    let pxm: Vec<Polynomial> = (0..=r_max).map(|i| reduced_power(i, &xm)).collect();
    for r in 0..=r_max {
        while xm_pows.len() <= r as usize {
            let next = &xm_pows[xm_pows.len() - 1] * &xm;
            xm_pows.push(next);
        }
        let mut acc = &reduced_power(r, &u.num) * &xm_pows[r as usize];
        for i in 1..=r {
            if pxm[i as usize].is_zero() {
                continue;
            }
            let term = &(&pxm[i as usize] * &nums[(r - i) as usize]) * &xm_pows[(i - 1) as usize];
            acc = &acc - &term;
        }
        nums.push(acc);
    }
    nums.into_iter()
        .enumerate()
        .map(|(j, n)| {
            Fraction {
                num: n,
                base: u.base.clone(),
                exp: m * (j as u32 + 1),
            }
            .normalized()
        })
        .collect()
}

/// `Q^r(u)`.
pub fn q_r(r: u32, u: &Fraction) -> Fraction {
    q_tower(u, r).pop().expect("tower has r + 1 entries")
}

/// The natural map `S_x -> S_{xy}`: `a/x^m -> a y^m / (xy)^m`.
pub fn map_to(u: &Fraction, y: &Polynomial) -> Result<Fraction> {
    if y.is_zero() || !y.is_homogeneous() {
        return Err(Error::InvalidInput(
            "target factor must be homogeneous and nonzero".into(),
        ));
    }
    Fraction::new(&u.num * &y.pow(u.exp), &u.base * y, u.exp)
}

/// Outcome of [`verify_cartan_axiom`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanAxiomCheck {
    /// Largest `r` tested.
    pub r_max: u32,
    /// First `r` at which `Q^r(s u) != Σ P^i(s) Q^j(u)`.
    pub violation: Option<u32>,
}

impl CartanAxiomCheck {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks `Q^r(s u) = Σ_{i+j=r} P^i(s) Q^j(u)` for `r <= r_max`.
pub fn verify_cartan_axiom(s: &Polynomial, u: &Fraction, r_max: u32) -> Result<CartanAxiomCheck> {
    if s.ring() != u.ring() {
        return Err(Error::RingMismatch);
    }
    let lhs = q_tower(&u.mul_poly(s), r_max);
    let qu = q_tower(u, r_max);
    let ps: Vec<Polynomial> = (0..=r_max).map(|i| reduced_power(i, s)).collect();
    for r in 0..=r_max {
        let mut rhs = Fraction::zero(u.base.clone())?;
        for i in 0..=r {
            if ps[i as usize].is_zero() {
                continue;
            }
            let term = qu[(r - i) as usize].mul_poly(&ps[i as usize]);
            rhs = rhs.try_add(&term).map_err(|_| Error::NotHomogeneous)?;
        }
        if lhs[r as usize] != rhs {
            return Ok(CartanAxiomCheck {
                r_max,
                violation: Some(r),
            });
        }
    }
    Ok(CartanAxiomCheck {
        r_max,
        violation: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;

    fn ring(p: u32, d: usize) -> PolyRing {
        PolyRing::new(Field::with_default(p, 1).unwrap(), d).unwrap()
    }

    #[test]
    fn normalization_and_equality() {
        let r = ring(2, 2);
        let (x, y) = (r.var(0), r.var(1));
        let f = Fraction::new(&x * &y, x.clone(), 3).unwrap();
        assert_eq!((f.num().clone(), f.exp()), (y.clone(), 2));
        assert_eq!(f.degree(), Some(-1));
        let raw = Fraction::raw(&x.pow(2) * &y, x.clone(), 4).unwrap();
        assert_eq!(raw, f);
        assert_ne!(raw, Fraction::new(y.clone(), x.clone(), 1).unwrap());
        assert_eq!(Fraction::new(r.zero(), x.clone(), 5).unwrap().exp(), 0);
        assert!(Fraction::new(x.clone(), r.zero(), 1).is_err());
        assert!(Fraction::new(&x + &x.pow(2), y, 1).is_err());
    }

    #[test]
    fn q0_and_polynomials() {
        let r = ring(3, 2);
        let (x, y) = (r.var(0), r.var(1));
        let u = Fraction::new(&y * &y, x.clone(), 2).unwrap();
        assert_eq!(q_r(0, &u), u);
        let s = &x * &y;
        let poly = Fraction::from_poly(s.clone(), x).unwrap();
        for k in 0..4 {
            assert_eq!(q_r(k, &poly).num(), &reduced_power(k, &s));
        }
    }

    #[test]
    fn inverse_of_variable() {
        for p in [2, 3] {
            let r = ring(p, 1);
            let x = r.var(0);
            let u = Fraction::new(r.one(), x.clone(), 1).unwrap();
            let expected = Fraction::new(reduced_power(1, &x).neg(), x.clone(), 2).unwrap();
            assert_eq!(q_r(1, &u), expected);
            let q = p as i64;
            assert_eq!(q_r(1, &u).degree(), Some(-1 + (q - 1)));
        }
    }

    #[test]
    fn map_to_examples() {
        let r = ring(2, 2);
        let (x, y) = (r.var(0), r.var(1));
        let s = Fraction::from_poly(y.clone(), x.clone()).unwrap();
        assert_eq!(map_to(&s, &y).unwrap(), s);
        let u = Fraction::new(r.one(), x.clone(), 1).unwrap();
        assert_eq!(map_to(&u, &x).unwrap(), u);
        let mapped = map_to(&u, &y).unwrap();
        assert_eq!(mapped.base(), &(&x * &y));
        for k in 0..4 {
            assert_eq!(q_r(k, &mapped), map_to(&q_r(k, &u), &y).unwrap());
        }
    }

    #[test]
    fn cartan_axiom_examples() {
        let r = ring(2, 2);
        let (x, y) = (r.var(0), r.var(1));
        let u = Fraction::new(r.one(), x.clone(), 1).unwrap();
        assert!(verify_cartan_axiom(&r.one(), &u, 4).unwrap().holds());
        assert!(verify_cartan_axiom(&x, &u, 4).unwrap().holds());
        let v = Fraction::new(y.pow(3), x.clone(), 2).unwrap();
        assert!(verify_cartan_axiom(&(&x * &y), &v, 4).unwrap().holds());
    }
}
