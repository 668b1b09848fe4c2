//! Graded polynomial rings over GF(q) and dense linear algebra for their
//! graded pieces.

mod matrix;
mod monomial;
mod polynomial;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

pub use matrix::{Matrix, RowEchelon, TaggedEchelon};
pub use monomial::{monomial_basis, monomial_count, Monomial};
pub use polynomial::Polynomial;

pub(crate) use matrix::axpy as matrix_axpy;
pub(crate) use monomial::binomial;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

/// The monomials of one degree together with a reverse lookup table.
#[derive(Debug)]
pub struct DegreeBasis {
    pub degree: u32,
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl DegreeBasis {
    fn new(nvars: usize, degree: u32) -> Self {
        let monomials = monomial_basis(nvars, degree);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Self {
            degree,
            monomials,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

struct RingInner {
    field: Field,
    names: Vec<String>,
    bases: Mutex<HashMap<u32, Arc<DegreeBasis>>>,
}

/// `GF(q)[x_1, ..., x_d]`. Cloning is cheap and clones share the
/// per-degree monomial tables.
#[derive(Clone)]
pub struct PolyRing(Arc<RingInner>);

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field && self.0.names == other.0.names)
    }
}

impl Eq for PolyRing {}

impl fmt::Debug for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[{}]", self.0.field, self.0.names.join(","))
    }
}

pub(crate) fn default_names(nvars: usize) -> Vec<String> {
    const SHORT: [&str; 6] = ["x", "y", "z", "w", "u", "v"];
    if nvars <= SHORT.len() {
        SHORT[..nvars].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }
}

impl PolyRing {
    /// Ring with default variable names `x, y, z, w, u, v` (or `x1..xd`).
    pub fn new(field: Field, nvars: usize) -> Result<Self> {
        Self::with_names(field, default_names(nvars))
    }

    pub fn with_names(field: Field, names: Vec<String>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidInput(
                "a polynomial ring needs at least one variable".into(),
            ));
        }
        let mut seen = std::collections::HashSet::new();
        if !names.iter().all(|n| seen.insert(n.clone())) {
            return Err(Error::InvalidInput(
                "variable names must be distinct".into(),
            ));
        }
        Ok(PolyRing(Arc::new(RingInner {
            field,
            names,
            bases: Mutex::new(HashMap::new()),
        })))
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    pub fn nvars(&self) -> usize {
        self.0.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    /// Cached monomial basis of the degree-`n` piece.
    pub fn degree_basis(&self, n: u32) -> Arc<DegreeBasis> {
        let mut cache = self.0.bases.lock().expect("monomial cache poisoned");
        cache
            .entry(n)
            .or_insert_with(|| Arc::new(DegreeBasis::new(self.nvars(), n)))
            .clone()
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self)
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::constant(self, Elem::ONE)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::monomial(self, Monomial::var(self.nvars(), i), Elem::ONE)
    }

    pub fn vars(&self) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    /// Dense coordinate vector of a homogeneous polynomial in the
    /// monomial basis of degree `n`.
    pub fn coords(&self, f: &Polynomial, n: u32) -> Result<Vec<Elem>> {
        let basis = self.degree_basis(n);
        let mut v = vec![Elem::ZERO; basis.len()];
        for (m, c) in f.terms() {
            let pos = basis.position(m).ok_or(Error::NotHomogeneous)?;
            v[pos] = *c;
        }
        Ok(v)
    }

    /// Inverse of [`PolyRing::coords`].
    pub fn from_coords(&self, v: &[Elem], n: u32) -> Polynomial {
        let basis = self.degree_basis(n);
        debug_assert_eq!(v.len(), basis.len());
        Polynomial::from_terms(
            self,
            v.iter()
                .zip(&basis.monomials)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, m)| (m.clone(), *c)),
        )
    }
}
