//! Seeded generators and independent oracles shared by the integration
//! tests.
#![allow(dead_code)]

use modinv::gf::Elem;
use modinv::group_action::{GroupElement, InvariantRing};
use modinv::poly::{Matrix, Monomial};
use modinv::{Field, PolyRing, Polynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ring(p: u32, s: u32, d: usize) -> PolyRing {
    PolyRing::new(Field::with_default(p, s).unwrap(), d).unwrap()
}

pub fn random_elem(rng: &mut ChaCha8Rng, field: &Field) -> Elem {
    let k = rng.gen_range(0..field.order());
    field.elements().nth(k).unwrap()
}

pub fn random_nonzero_elem(rng: &mut ChaCha8Rng, field: &Field) -> Elem {
    let k = rng.gen_range(1..field.order());
    field.elements().nth(k).unwrap()
}

/// Homogeneous polynomial of degree `deg` where each monomial is present
/// with probability `density`.
pub fn random_homogeneous(
    rng: &mut ChaCha8Rng,
    ring: &PolyRing,
    deg: u32,
    density: f64,
) -> Polynomial {
    let field = ring.field();
    let mut terms: Vec<(Monomial, Elem)> = Vec::new();
    for m in &ring.degree_basis(deg).monomials {
        if rng.gen_bool(density) {
            terms.push((m.clone(), random_nonzero_elem(rng, field)));
        }
    }
    Polynomial::from_terms(ring, terms)
}

pub fn random_nonzero_homogeneous(rng: &mut ChaCha8Rng, ring: &PolyRing, deg: u32) -> Polynomial {
    loop {
        let f = random_homogeneous(rng, ring, deg, 0.5);
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn random_invertible(rng: &mut ChaCha8Rng, field: &Field, d: usize) -> GroupElement {
    loop {
        let rows: Vec<Vec<Elem>> = (0..d)
            .map(|_| (0..d).map(|_| random_elem(rng, field)).collect())
            .collect();
        if let Ok(g) = GroupElement::new(Matrix::from_rows(field, rows).unwrap()) {
            return g;
        }
    }
}

/// Random combination of the degree-`deg` invariants (possibly zero).
pub fn random_invariant(rng: &mut ChaCha8Rng, s: &InvariantRing, deg: u32) -> Polynomial {
    let piece = s.piece(deg);
    let field = s.field();
    let coords: Vec<Elem> = (0..piece.dim()).map(|_| random_elem(rng, field)).collect();
    piece.from_coords(&coords)
}

/// `P(ξ)(f)` computed by substituting `x_j -> x_j + x_j^q ξ` into `f` in a
/// ring with `ξ` adjoined and collecting by powers of `ξ`.
pub fn total_by_substitution(f: &Polynomial) -> Vec<Polynomial> {
    let ring = f.ring();
    let d = ring.nvars();
    let q = ring.field().order() as u32;
    let mut names = ring.names().to_vec();
    names.push("xi".into());
    let big = PolyRing::with_names(ring.field().clone(), names).unwrap();
    let xi = big.var(d);
    let images: Vec<Polynomial> = (0..d)
        .map(|j| {
            let x = big.var(j);
            &x + &(&x.pow(q) * &xi)
        })
        .collect();
    let g = f.substitute(&images).unwrap();
    let mut out: Vec<Polynomial> = Vec::new();
    for (m, c) in g.terms() {
        let e = m.exponent(d) as usize;
        while out.len() <= e {
            out.push(ring.zero());
        }
        let mut exps = m.exponents();
        exps.truncate(d);
        out[e] = &out[e] + &Polynomial::monomial(ring, Monomial::new(&exps), *c);
    }
    if out.is_empty() {
        out.push(ring.zero());
    }
    out
}

/// Number of `(a_1, .., a_d)` with every `a_j >= 1` and `Σ a_j = k`, by
/// enumeration: the dimension of the Laurent tail `x^{-a}` in degree `-k`.
pub fn laurent_count(d: usize, k: i64) -> usize {
    fn go(left: usize, k: i64) -> usize {
        if left == 0 {
            return usize::from(k == 0);
        }
        (1..=k.max(0)).map(|a| go(left - 1, k - a)).sum()
    }
    go(d, k)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
