//! Arithmetic in the finite field GF(p^s).
//!
//! An element is stored as the integer `c_0 + c_1 p + ... + c_{s-1} p^{s-1}`
//! where `c_0 + c_1 t + ...` is its residue modulo the defining polynomial.
//! Integer order therefore coincides with the lexicographic order on the
//! coefficient list read from the highest coefficient down, which is the
//! enumeration order `0, 1, t, t+1, ...`.
//!
//! All arithmetic goes through precomputed tables, so fields are limited to
//! [`MAX_ORDER`] elements.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order for which tables are built.
pub const MAX_ORDER: u32 = 256;

/// Default defining polynomials (Conway polynomials) for every `p^s <= 64`,
/// listed low-degree coefficient first.
const DEFAULT_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 1, &[1, 1]),
    (3, 1, &[1, 1]),
    (5, 1, &[3, 1]),
    (7, 1, &[4, 1]),
    (11, 1, &[9, 1]),
    (13, 1, &[11, 1]),
    (17, 1, &[14, 1]),
    (19, 1, &[17, 1]),
    (23, 1, &[18, 1]),
    (29, 1, &[27, 1]),
    (31, 1, &[28, 1]),
    (37, 1, &[35, 1]),
    (41, 1, &[35, 1]),
    (43, 1, &[40, 1]),
    (47, 1, &[42, 1]),
    (53, 1, &[51, 1]),
    (59, 1, &[57, 1]),
    (61, 1, &[59, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (7, 2, &[3, 6, 1]),
];

/// Characteristic, degree and defining polynomial of a finite field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub s: u32,
    /// Monic irreducible polynomial of degree `s` over GF(p), low degree first.
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    /// Validates a field specification. Irreducibility is established by trial
    /// division against every monic polynomial of degree at most `s / 2`.
    pub fn new(p: u32, s: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if s == 0 {
            return Err(Error::InvalidField("degree s must be at least 1".into()));
        }
        let q = checked_order(p, s)?;
        if q > MAX_ORDER as u64 {
            return Err(Error::CapExceeded {
                what: "field order",
                value: q,
                cap: MAX_ORDER as u64,
            });
        }
        if modulus.len() != s as usize + 1 {
            return Err(Error::InvalidField(format!(
                "modulus must have {} coefficients, got {}",
                s + 1,
                modulus.len()
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(
                "modulus coefficients must lie in [0, p)".into(),
            ));
        }
        if modulus[s as usize] != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::InvalidField(format!(
                "modulus {modulus:?} is reducible over GF({p})"
            )));
        }
        Ok(Self { p, s, modulus })
    }

    /// The shipped default modulus for `GF(p^s)`, available for `p^s <= 64`.
    pub fn default_for(p: u32, s: u32) -> Result<Self> {
        let entry = DEFAULT_MODULI
            .iter()
            .find(|(pp, ss, _)| *pp == p && *ss == s)
            .ok_or_else(|| {
                Error::InvalidField(format!(
                    "no default modulus for GF({p}^{s}); pass one explicitly"
                ))
            })?;
        Self::new(p, s, entry.2.to_vec())
    }

    pub fn prime(p: u32) -> Result<Self> {
        Self::default_for(p, 1).or_else(|_| {
            // any monic linear polynomial works for a prime field
            Self::new(p, 1, vec![0, 1])
        })
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.s)
    }

    /// All `(p, s)` pairs with a shipped default modulus.
    pub fn defaults() -> impl Iterator<Item = (u32, u32)> {
        DEFAULT_MODULI.iter().map(|(p, s, _)| (*p, *s))
    }
}

fn checked_order(p: u32, s: u32) -> Result<u64> {
    (p as u64)
        .checked_pow(s)
        .ok_or_else(|| Error::InvalidField("field order overflows".into()))
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u32;
    while k.saturating_mul(k) <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Remainder of `a` modulo the monic polynomial `m` over GF(p).
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r[r.len() - 1];
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (k, &c) in m.iter().enumerate() {
                let idx = shift + k;
                r[idx] = (r[idx] + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let s = modulus.len() - 1;
    for deg in 1..=s / 2 {
        // enumerate monic divisors of this degree
        let count = (p as u64).pow(deg as u32);
        for idx in 0..count {
            let mut cand = Vec::with_capacity(deg + 1);
            let mut v = idx;
            for _ in 0..deg {
                cand.push((v % p as u64) as u32);
                v /= p as u64;
            }
            cand.push(1);
            if poly_rem(modulus, &cand, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Compact handle for a field element; only meaningful together with its [`Field`].
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub(crate) u16);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

struct FieldInner {
    spec: FieldSpec,
    q: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
    primitive: Elem,
}

/// A finite field with precomputed arithmetic tables. Cloning is cheap.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p(), self.s())
    }
}

/// Prime fields compare equal whatever linear modulus they were built
/// from, since elements are plain residues there.
impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (&self.0.spec, &other.0.spec);
        Arc::ptr_eq(&self.0, &other.0)
            || (a.p == b.p && a.s == b.s && (a.s == 1 || a.modulus == b.modulus))
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(spec: FieldSpec) -> Self {
        let p = spec.p as usize;
        let s = spec.s as usize;
        let q = spec.order() as usize;
        let to_coeffs = |x: usize| -> Vec<u32> {
            let mut v = x;
            (0..s)
                .map(|_| {
                    let c = v % p;
                    v /= p;
                    c as u32
                })
                .collect()
        };
        let from_coeffs = |c: &[u32]| -> Elem {
            let mut x = 0usize;
            for &ci in c.iter().rev() {
                x = x * p + ci as usize;
            }
            Elem(x as u16)
        };
        let coeffs: Vec<Vec<u32>> = (0..q).map(to_coeffs).collect();

        let mut add = vec![Elem::ZERO; q * q];
        let mut mul = vec![Elem::ZERO; q * q];
        for a in 0..q {
            for b in 0..q {
                let sum: Vec<u32> = coeffs[a]
                    .iter()
                    .zip(&coeffs[b])
                    .map(|(x, y)| (x + y) % spec.p)
                    .collect();
                add[a * q + b] = from_coeffs(&sum);

                let mut prod = vec![0u32; 2 * s - 1];
                for (i, x) in coeffs[a].iter().enumerate() {
                    for (j, y) in coeffs[b].iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % spec.p;
                    }
                }
                let r = poly_rem(&prod, &spec.modulus, spec.p);
                let mut r = r;
                r.resize(s, 0);
                mul[a * q + b] = from_coeffs(&r);
            }
        }
        let mut neg = vec![Elem::ZERO; q];
        let mut inv = vec![Elem::ZERO; q];
        for a in 0..q {
            for b in 0..q {
                if add[a * q + b] == Elem::ZERO {
                    neg[a] = Elem(b as u16);
                }
                if mul[a * q + b] == Elem::ONE {
                    inv[a] = Elem(b as u16);
                }
            }
        }
        let primitive = (1..q)
            .map(|x| Elem(x as u16))
            .find(|&g| {
                let mut acc = g;
                let mut order = 1;
                while acc != Elem::ONE {
                    acc = mul[acc.index() * q + g.index()];
                    order += 1;
                }
                order == q - 1
            })
            .unwrap_or(Elem::ONE);
        Field(Arc::new(FieldInner {
            spec,
            q,
            add,
            mul,
            neg,
            inv,
            primitive,
        }))
    }

    /// `GF(p^s)` with the shipped default modulus.
    pub fn with_default(p: u32, s: u32) -> Result<Self> {
        Ok(Self::new(FieldSpec::default_for(p, s)?))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn p(&self) -> u32 {
        self.0.spec.p
    }

    pub fn s(&self) -> u32 {
        self.0.spec.s
    }

    /// Number of elements `q = p^s`.
    pub fn order(&self) -> usize {
        self.0.q
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.0.spec.p == 2 {
            Elem(a.0 ^ b.0)
        } else {
            self.0.add[a.index() * self.0.q + b.index()]
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.0.neg[a.index()]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.0.mul[a.index() * self.0.q + b.index()]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            Err(Error::ZeroInverse)
        } else {
            Ok(self.0.inv[a.index()])
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The Frobenius map `a -> a^p`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.p() as u64)
    }

    /// Image of the integer `n` under `Z -> GF(p) -> GF(q)`.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p() as i64) as u16)
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> Elem {
        self.0.primitive
    }

    /// The class of `t` (for `s = 1` this is the root of the linear modulus).
    pub fn generator(&self) -> Elem {
        if self.s() == 1 {
            self.from_int(-(self.0.spec.modulus[0] as i64))
        } else {
            Elem(self.p() as u16)
        }
    }

    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        let p = self.p();
        let mut v = a.0 as u32;
        (0..self.s())
            .map(|_| {
                let c = v % p;
                v /= p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() != self.s() as usize {
            return Err(Error::DimensionMismatch {
                expected: self.s() as usize,
                found: coeffs.len(),
            });
        }
        let p = self.p();
        if coeffs.iter().any(|&c| c >= p) {
            return Err(Error::InvalidInput(format!(
                "element coefficients {coeffs:?} not reduced mod {p}"
            )));
        }
        let mut x = 0u32;
        for &c in coeffs.iter().rev() {
            x = x * p + c;
        }
        Ok(Elem(x as u16))
    }

    /// Every element, in enumeration order starting `0, 1, ...`.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.q).map(|x| Elem(x as u16))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> {
        (1..self.0.q).map(|x| Elem(x as u16))
    }

    /// Renders an element for display: integers for prime fields, a
    /// polynomial in `t` otherwise.
    pub fn display(&self, a: Elem) -> String {
        if self.s() == 1 {
            return a.0.to_string();
        }
        let terms: Vec<String> = self
            .coeffs(a)
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| match (k, c) {
                (0, c) => c.to_string(),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{c}t"),
                (k, 1) => format!("t^{k}"),
                (k, c) => format!("{c}t^{k}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    pub fn element(&self, value: Elem) -> FieldElement {
        FieldElement {
            field: self.clone(),
            value,
        }
    }
}

/// A field element bundled with its field. Binary operations check that
/// both operands live in the same field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: Elem,
}

impl FieldElement {
    pub fn from_coeffs(field: &Field, coeffs: &[u32]) -> Result<Self> {
        Ok(field.element(field.from_coeffs(coeffs)?))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    /// Canonical coefficient list, low degree first.
    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.field.element(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.field.element(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.field.element(self.field.mul(self.value, other.value)))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.field.element(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: u64) -> Self {
        self.field.element(self.field.pow(self.value, e))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs().iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// All `q` elements in deterministic order: `0`, `1`, then lexicographic
/// on the coefficient list.
pub fn enumerate(field: &Field) -> Vec<FieldElement> {
    field.elements().map(|e| field.element(e)).collect()
}

#[cfg(test)]
mod tests {
    #[test]
    fn prime_fields_ignore_the_linear_modulus() {
        let a = Field::new(FieldSpec::new(3, 1, vec![0, 1]).unwrap());
        assert_eq!(a, Field::with_default(3, 1).unwrap());
        let b = Field::new(FieldSpec::new(2, 2, vec![1, 1, 1]).unwrap());
        assert_eq!(b, Field::with_default(2, 2).unwrap());
        assert_ne!(a, Field::with_default(5, 1).unwrap());
    }

    use super::*;

    fn gf(p: u32, s: u32) -> Field {
        Field::with_default(p, s).unwrap()
    }

    fn el(f: &Field, c: &[u32]) -> FieldElement {
        FieldElement::from_coeffs(f, c).unwrap()
    }

    #[test]
    fn addition_examples() {
        let f2 = gf(2, 1);
        assert!(el(&f2, &[1]).add(&el(&f2, &[1])).unwrap().is_zero());
        let f4 = gf(2, 2);
        let t = el(&f4, &[0, 1]);
        assert_eq!(t.add(&el(&f4, &[1, 0])).unwrap().coeffs(), vec![1, 1]);
        let f3 = gf(3, 1);
        assert_eq!(el(&f3, &[2]).add(&el(&f3, &[2])).unwrap().coeffs(), vec![1]);
    }

    #[test]
    fn multiplication_examples() {
        let f4 = gf(2, 2);
        let t = el(&f4, &[0, 1]);
        let t1 = el(&f4, &[1, 1]);
        assert_eq!(t.mul(&t).unwrap(), t1);
        assert_eq!(t.mul(&t1).unwrap().coeffs(), vec![1, 0]);
        for a in enumerate(&f4) {
            assert_eq!(el(&f4, &[1, 0]).mul(&a).unwrap(), a);
        }
    }

    #[test]
    fn inverse_examples() {
        let f2 = gf(2, 1);
        assert_eq!(el(&f2, &[1]).inv().unwrap().coeffs(), vec![1]);
        let f4 = gf(2, 2);
        assert_eq!(el(&f4, &[0, 1]).inv().unwrap().coeffs(), vec![1, 1]);
        let f3 = gf(3, 1);
        assert_eq!(el(&f3, &[2]).inv().unwrap().coeffs(), vec![2]);
        assert_eq!(el(&f3, &[0]).inv(), Err(Error::ZeroInverse));
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let a = el(&gf(2, 1), &[1]);
        let b = el(&gf(3, 1), &[1]);
        assert_eq!(a.add(&b), Err(Error::FieldMismatch));
        assert_eq!(a.mul(&b), Err(Error::FieldMismatch));
    }

    #[test]
    fn enumeration_order() {
        let show =
            |f: &Field| -> Vec<Vec<u32>> { enumerate(f).iter().map(|e| e.coeffs()).collect() };
        assert_eq!(show(&gf(2, 1)), vec![vec![0], vec![1]]);
        assert_eq!(show(&gf(3, 1)), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(
            show(&gf(2, 2)),
            vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]
        );
        assert_eq!(enumerate(&gf(2, 2))[2].to_string(), "[0,1]");
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, s) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
            let f = gf(p, s);
            let els: Vec<Elem> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_additive_and_fermat() {
        for (p, s) in [
            (2, 1),
            (3, 1),
            (2, 2),
            (5, 1),
            (7, 1),
            (2, 3),
            (3, 2),
            (2, 4),
        ] {
            let f = gf(p, s);
            let q = f.order() as u64;
            for a in f.elements() {
                assert_eq!(f.pow(a, q), a);
                if q <= 9 {
                    for b in f.elements() {
                        assert_eq!(
                            f.frobenius(f.add(a, b)),
                            f.add(f.frobenius(a), f.frobenius(b))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn default_moduli_are_primitive() {
        for (p, s) in FieldSpec::defaults() {
            let f = gf(p, s);
            let g = f.generator();
            let q = f.order() as u64;
            let mut order = 1;
            let mut acc = g;
            while acc != Elem::ONE {
                acc = f.mul(acc, g);
                order += 1;
            }
            assert_eq!(order, q - 1, "GF({p}^{s}) default modulus not primitive");
        }
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(FieldSpec::new(4, 1, vec![0, 1]).is_err());
        assert!(FieldSpec::new(2, 2, vec![1, 0, 1]).is_err()); // (t+1)^2
        assert!(FieldSpec::new(2, 2, vec![1, 1, 0]).is_err());
        assert!(FieldSpec::new(3, 2, vec![1, 0, 1]).is_ok()); // t^2+1 irreducible mod 3
        assert!(FieldSpec::new(2, 9, vec![1; 10]).is_err());
    }
}
