//! Dickson invariants `d_{d,0}, ..., d_{d,d-1}`, generators of the
//! invariants of the full general linear group.
//!
//! Two constructions are provided. [`dickson_by_roots`] expands
//! `∏_{v ∈ V*} (X - v) = X^{q^d} + Σ_i (-1)^{d-i} d_{d,i} X^{q^i}` with an
//! auxiliary variable `X`. [`dickson_by_moore`] divides Moore determinants:
//! with `Δ = det[x_j^{q^k}]_{0≤k<d}` and `Δ_i` the Moore determinant on the
//! exponent rows `q^0, .., q^d` with row `q^i` deleted (remaining rows in
//! increasing order), `d_{d,i} = Δ_i / Δ`.

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::group_action::{act, general_linear_generators};
use crate::poly::{Monomial, PolyRing, Polynomial};

/// Default bound on `q^d`, the number of linear forms in the product.
pub const DEFAULT_DICKSON_CAP: u64 = 4096;

/// The Dickson algebra `D*(d)` given by its generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DicksonAlgebra {
    ring: PolyRing,
    gens: Vec<Polynomial>,
}

impl DicksonAlgebra {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    /// `[d_{d,0}, ..., d_{d,d-1}]`.
    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn generator(&self, i: usize) -> Option<&Polynomial> {
        self.gens.get(i)
    }

    pub fn dim(&self) -> usize {
        self.gens.len()
    }

    /// `q^d - q^i`.
    pub fn expected_degree(&self, i: usize) -> u32 {
        let q = self.ring.field().order() as u32;
        let d = self.dim() as u32;
        q.pow(d) - q.pow(i as u32)
    }

    /// Checks every generator against the generators of `GL(d, q)`.
    pub fn is_gl_invariant(&self) -> Result<bool> {
        for g in general_linear_generators(self.ring.field(), self.dim()) {
            for f in &self.gens {
                if act(&g, f)? != *f {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Checks that all monomials `∏ d_{d,i}^{a_i}` of polynomial degree at
    /// most `max_degree` are linearly independent in `R`.
    pub fn monomials_independent_up_to(&self, max_degree: u32) -> Result<bool> {
        let degs: Vec<u32> = self
            .gens
            .iter()
            .map(|g| g.homogeneous_degree().unwrap_or(0))
            .collect();
        for n in 1..=max_degree {
            let mut vectors = Vec::new();
            for exps in weighted_compositions(&degs, n) {
                let mut prod = self.ring.one();
                for (g, &a) in self.gens.iter().zip(&exps) {
                    prod = &prod * &g.pow(a);
                }
                vectors.push(self.ring.coords(&prod, n)?);
            }
            let e = crate::poly::RowEchelon::from_vectors(
                self.ring.field(),
                self.ring.degree_basis(n).len(),
                &vectors,
            );
            if e.dim() != vectors.len() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Exponent vectors `a` with `Σ a_i w_i = n`.
pub(crate) fn weighted_compositions(weights: &[u32], n: u32) -> Vec<Vec<u32>> {
    fn go(weights: &[u32], idx: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if idx == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = weights[idx];
        let max = left.checked_div(w).unwrap_or(0);
        for a in 0..=max {
            cur.push(a);
            go(weights, idx + 1, left - a * w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(weights, 0, n, &mut Vec::new(), &mut out);
    out
}

fn check_cap(field: &Field, d: usize, cap: u64) -> Result<u64> {
    if d == 0 {
        return Err(Error::InvalidInput("dimension must be positive".into()));
    }
    let qd = (field.order() as u64)
        .checked_pow(d as u32)
        .filter(|&v| v <= cap)
        .ok_or(Error::CapExceeded {
            what: "q^d",
            value: (field.order() as u64).saturating_pow(d as u32),
            cap,
        })?;
    Ok(qd)
}

/// Dickson generators from the coefficients of `∏_{v ∈ V*} (X - v)`.
pub fn dickson_by_roots(ring: &PolyRing, cap: u64) -> Result<DicksonAlgebra> {
    let field = ring.field().clone();
    let d = ring.nvars();
    let qd = check_cap(&field, d, cap)?;
    let q = field.order() as u64;
    let mut names = ring.names().to_vec();
    let mut aux = "X".to_string();
    while names.contains(&aux) {
        aux.push('_');
    }
    names.push(aux);
    let big = PolyRing::with_names(field.clone(), names)?;
    let x_aux = big.var(d);
    let vars: Vec<Polynomial> = (0..d).map(|i| big.var(i)).collect();

    let mut product = big.one();
    // every linear form Σ c_j x_j, one per coefficient vector
    for idx in 0..qd {
        let mut v = idx;
        let mut form = big.zero();
        for var in &vars {
            let c = Elem((v % q) as u16);
            v /= q;
            form = &form + &var.scale(c);
        }
        product = &product * &(&x_aux - &form);
    }

    let mut by_exp: Vec<(u64, Polynomial)> = Vec::new();
    for (m, c) in product.terms() {
        let e = m.exponent(d) as u64;
        let mut rest = m.exponents();
        rest.truncate(d);
        let term = Polynomial::monomial(ring, Monomial::new(&rest), *c);
        match by_exp.iter_mut().find(|(k, _)| *k == e) {
            Some((_, p)) => *p = &*p + &term,
            None => by_exp.push((e, term)),
        }
    }
    let allowed: Vec<u64> = (0..=d as u32).map(|i| q.pow(i)).collect();
    if let Some((e, _)) = by_exp.iter().find(|(e, _)| !allowed.contains(e)) {
        return Err(Error::Internal(format!(
            "unexpected X-exponent {e} in the root product"
        )));
    }
    let coeff_of = |e: u64| {
        by_exp
            .iter()
            .find(|(k, _)| *k == e)
            .map(|(_, p)| p.clone())
            .unwrap_or_else(|| ring.zero())
    };
    if coeff_of(qd) != ring.one() {
        return Err(Error::Internal("root product is not monic in X".into()));
    }
    let gens = (0..d)
        .map(|i| {
            let c = coeff_of(q.pow(i as u32));
            // coefficient is (-1)^{d-i} d_{d,i}
            if (d - i) % 2 == 1 {
                c.neg()
            } else {
                c
            }
        })
        .collect();
    Ok(DicksonAlgebra {
        ring: ring.clone(),
        gens,
    })
}

/// Determinant of a square matrix of polynomials by Laplace expansion
/// along the first row.
fn poly_determinant(ring: &PolyRing, m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = ring.zero();
    for col in 0..n {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != col)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][col] * &poly_determinant(ring, &minor);
        acc = if col % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

/// Dickson generators as ratios of Moore determinants.
pub fn dickson_by_moore(ring: &PolyRing, cap: u64) -> Result<DicksonAlgebra> {
    let field = ring.field();
    let d = ring.nvars();
    check_cap(field, d, cap)?;
    let q = field.order() as u32;
    let vars = ring.vars();
    let row = |k: u32| -> Vec<Polynomial> { vars.iter().map(|x| x.pow(q.pow(k))).collect() };
    let rows: Vec<Vec<Polynomial>> = (0..=d as u32).map(row).collect();
    let delta = poly_determinant(ring, &rows[..d]);
    let gens = (0..d)
        .map(|i| {
            let minor: Vec<Vec<Polynomial>> = rows
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, r)| r.clone())
                .collect();
            let num = poly_determinant(ring, &minor);
            num.exact_div(&delta).ok_or(Error::InexactDivision)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DicksonAlgebra {
        ring: ring.clone(),
        gens,
    })
}

/// The `P*`-invariant prime `(d_{d,0}, ..., d_{d,i})` of the Dickson algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PStarPrimeChain {
    pub index: usize,
    pub generators: Vec<Polynomial>,
}

pub fn pstar_prime_chain(algebra: &DicksonAlgebra, i: usize) -> Result<PStarPrimeChain> {
    if i >= algebra.dim() {
        return Err(Error::OutOfRange {
            index: i,
            limit: algebra.dim(),
        });
    }
    Ok(PStarPrimeChain {
        index: i,
        generators: algebra.gens[..=i].to_vec(),
    })
}
