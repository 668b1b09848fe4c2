//! The total Steenrod operation `P(ξ)` and the reduced powers `P^i`.
//!
//! `P(ξ)` is the ring homomorphism `R -> R[ξ]` with `P(ξ)(v) = v + v^q ξ` on
//! linear forms. On a power of a variable this gives
//! `P(ξ)(x^e) = Σ_j C(e, j) x^{e + j(q-1)} ξ^j`, and on a monomial the
//! product of those factors. Coefficients are reduced mod `p`.

use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::group_action::InvariantRing;
use crate::poly::{Monomial, PolyRing, Polynomial};

/// `C(n, k) mod p` by Lucas' theorem.
pub fn binomial_mod_p(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        acc = acc * (crate::poly::binomial(nd, kd) % p) % p;
        n /= p;
        k /= p;
    }
    acc
}

/// Coefficients of `P(ξ)(f)`: entry `i` is `P^i(f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalSteenrod {
    pub coefficients: Vec<Polynomial>,
    /// Degree of the input, if homogeneous and nonzero.
    pub input_degree: Option<u32>,
}

impl TotalSteenrod {
    pub fn coefficient(&self, i: usize) -> Option<&Polynomial> {
        self.coefficients.get(i)
    }

    /// Highest `i` with `P^i(f) != 0`.
    pub fn top(&self) -> Option<usize> {
        self.coefficients.iter().rposition(|c| !c.is_zero())
    }
}

/// Terms `(ξ-power, monomial, coefficient)` of `P(ξ)` applied to one
/// monomial. With `only = Some(i)` just the `ξ^i` terms are produced.
fn monomial_image(ring: &PolyRing, m: &Monomial, only: Option<u32>) -> Vec<(u32, Monomial, Elem)> {
    let field = ring.field();
    let p = field.p() as u64;
    let shift = field.order() as u32 - 1;
    let nvars = ring.nvars();
    let mut acc: Vec<(u32, Vec<u32>, Elem)> = vec![(0, vec![0; nvars], Elem::ONE)];
    // remaining[k] = total exponent of variables k.. ; bounds the ξ-power still reachable
    let mut remaining: Vec<u32> = vec![0; nvars + 1];
    for k in (0..nvars).rev() {
        remaining[k] = remaining[k + 1] + m.exponent(k);
    }
    for k in 0..nvars {
        let e = m.exponent(k);
        if e == 0 {
            continue;
        }
        let mut next = Vec::with_capacity(acc.len() * (e as usize + 1));
        for (i, exps, c) in &acc {
            for j in 0..=e {
                let total = i + j;
                if let Some(target) = only {
                    if total > target || total + remaining[k + 1] < target {
                        continue;
                    }
                }
                let b = binomial_mod_p(e as u64, j as u64, p);
                if b == 0 {
                    continue;
                }
                let mut ex = exps.clone();
                ex[k] = e + j * shift;
                next.push((total, ex, field.mul(*c, field.from_int(b as i64))));
            }
        }
        acc = next;
    }
    acc.into_iter()
        .filter(|(i, _, _)| only.is_none_or(|t| *i == t))
        .map(|(i, e, c)| (i, Monomial::new(&e), c))
        .collect()
}

/// `P(ξ)(f)` for arbitrary `f`, extended additively over terms.
pub fn total(f: &Polynomial) -> TotalSteenrod {
    let ring = f.ring();
    let field = ring.field();
    let mut coefficients: Vec<Polynomial> = vec![ring.zero()];
    for (m, c) in f.terms() {
        for (i, mono, b) in monomial_image(ring, m, None) {
            let i = i as usize;
            if coefficients.len() <= i {
                coefficients.resize(i + 1, ring.zero());
            }
            let term = Polynomial::monomial(ring, mono, field.mul(*c, b));
            coefficients[i] = &coefficients[i] + &term;
        }
    }
    while coefficients.len() > 1 && coefficients.last().is_some_and(Polynomial::is_zero) {
        coefficients.pop();
    }
    TotalSteenrod {
        coefficients,
        input_degree: f.homogeneous_degree(),
    }
}

/// The reduced power `P^i(f)`: the `ξ^i` coefficient of `P(ξ)(f)`.
pub fn reduced_power(i: u32, f: &Polynomial) -> Polynomial {
    if i == 0 {
        return f.clone();
    }
    let ring = f.ring();
    let field = ring.field();
    Polynomial::from_terms(
        ring,
        f.terms().flat_map(|(m, c)| {
            monomial_image(ring, m, Some(i))
                .into_iter()
                .map(move |(_, mono, b)| (mono, field.mul(*c, b)))
        }),
    )
}

/// Outcome of a `P*`-invariance test on an ideal of invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PStarInvariance {
    Invariant,
    /// `P^index(generators[generator])` is not in the ideal.
    NotInvariant {
        generator: usize,
        index: u32,
    },
    /// Some `P^index(generators[generator])` lies above the degree cap.
    Inconclusive {
        generator: usize,
        index: u32,
        degree: u32,
        cap: u32,
    },
}

/// Decides whether the ideal of `S` generated by `generators` is closed
/// under every `P^i`, testing membership degree by degree up to
/// `degree_cap` through linear algebra on the spanning sets `h * f_j`.
pub fn is_pstar_invariant(
    generators: &[Polynomial],
    invariants: &InvariantRing,
    degree_cap: u32,
) -> Result<PStarInvariance> {
    let ring = invariants.ring();
    let shift = ring.field().order() as u32 - 1;
    let mut pending = None;
    for (gi, f) in generators.iter().enumerate() {
        if f.ring() != ring {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            continue;
        }
        let n = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
        if !invariants.group().is_invariant(f)? {
            return Err(Error::NotInvariant);
        }
        for i in 1..=n {
            let m = n + i * shift;
            if m > degree_cap {
                pending.get_or_insert(PStarInvariance::Inconclusive {
                    generator: gi,
                    index: i,
                    degree: m,
                    cap: degree_cap,
                });
                continue;
            }
            let image = reduced_power(i, f);
            if image.is_zero() {
                continue;
            }
            let span = invariants.ideal_piece(generators, m)?;
            if !span.contains(&ring.coords(&image, m)?) {
                return Ok(PStarInvariance::NotInvariant {
                    generator: gi,
                    index: i,
                });
            }
        }
    }
    Ok(pending.unwrap_or(PStarInvariance::Invariant))
}
