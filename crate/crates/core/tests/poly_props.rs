mod common;

use common::*;
use modinv::dickson::{dickson_by_roots, DEFAULT_DICKSON_CAP};
use modinv::group_action::{act, general_linear_order, Group, InvariantRing};
use modinv::poly::monomial_count;
use modinv::{Matrix, Polynomial};
use rand::Rng;

#[test]
fn ring_axioms_on_random_triples() {
    let mut rng = rng(21);
    let mut n = 0;
    for (p, s, d) in [(2, 1, 2), (3, 1, 3), (2, 2, 2), (5, 1, 1), (2, 1, 4)] {
        let r = ring(p, s, d);
        for _ in 0..100 {
            let pick = |rng: &mut rand_chacha::ChaCha8Rng| {
                let deg = rng.gen_range(0..=4);
                random_homogeneous(rng, &r, deg, 0.5)
            };
            let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            assert_eq!(&a + &b, &b + &a);
            assert_eq!(&a * &b, &b * &a);
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            assert_eq!(&a - &a, r.zero());
            assert_eq!(&a * &r.one(), a);
            if !a.is_zero() && !b.is_zero() {
                assert!(!(&a * &b).is_zero());
                assert_eq!((&a * &b).exact_div(&a), Some(b.clone()));
            }
            n += 1;
        }
    }
    assert!(n >= 500);
}

#[test]
fn division_with_remainder_reconstructs() {
    let mut rng = rng(22);
    let r = ring(3, 1, 2);
    for _ in 0..100 {
        let deg = rng.gen_range(0..=5);
        let f = random_homogeneous(&mut rng, &r, deg, 0.7);
        let gdeg = rng.gen_range(1..=3);
        let g = random_nonzero_homogeneous(&mut rng, &r, gdeg);
        let (quot, rem) = f.div_rem(&g).unwrap();
        assert_eq!(&(&quot * &g) + &rem, f);
        if let Some((lm, _)) = rem.leading_term() {
            assert!(!g.leading_term().unwrap().0.divides(lm));
        }
    }
}

#[test]
fn degree_pieces_have_binomial_dimension() {
    for d in 1..=4usize {
        let r = ring(2, 1, d);
        for n in 0..=8u32 {
            let want = binomial(n as u64 + d as u64 - 1, d as u64 - 1) as usize;
            assert_eq!(r.degree_basis(n).len(), want);
            assert_eq!(monomial_count(d, n), want);
        }
    }
}

#[test]
fn rank_plus_nullity() {
    let mut rng = rng(23);
    for (p, s) in [(2, 1), (3, 1), (2, 3)] {
        let f = ring(p, s, 1).field().clone();
        for _ in 0..50 {
            let (rows, cols) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
            let data: Vec<Vec<_>> = (0..rows)
                .map(|_| (0..cols).map(|_| random_elem(&mut rng, &f)).collect())
                .collect();
            let m = Matrix::from_rows(&f, data).unwrap();
            let kernel = m.kernel();
            assert_eq!(m.rank() + kernel.len(), cols);
            for v in &kernel {
                assert!(m.mul_vec(v).unwrap().iter().all(|c| c.is_zero()));
            }
            assert_eq!(m.transpose().rank(), m.rank());
        }
    }
}

#[test]
fn action_is_a_ring_homomorphism_and_composes() {
    let mut rng = rng(24);
    for (p, d) in [(2, 3), (3, 2)] {
        let r = ring(p, 1, d);
        for _ in 0..40 {
            let g = random_invertible(&mut rng, r.field(), d);
            let h = random_invertible(&mut rng, r.field(), d);
            let deg_a = rng.gen_range(0..=4);
            let a = random_homogeneous(&mut rng, &r, deg_a, 0.5);
            let deg_b = rng.gen_range(0..=4);
            let b = random_homogeneous(&mut rng, &r, deg_b, 0.5);
            let ga = act(&g, &a).unwrap();
            let gb = act(&g, &b).unwrap();
            assert_eq!(act(&g, &(&a * &b)).unwrap(), &ga * &gb);
            assert_eq!(act(&g, &(&a + &b)).unwrap(), &ga + &gb);
            assert_eq!(
                act(&g, &act(&h, &a).unwrap()).unwrap(),
                act(&h.compose(&g), &a).unwrap()
            );
            assert_eq!(act(&g.inverse(), &ga).unwrap(), a);
        }
    }
}

#[test]
fn general_linear_invariants_contain_the_dickson_generators() {
    for (p, s, d) in [(2, 1, 2), (3, 1, 2), (2, 2, 2), (2, 1, 3)] {
        let r = ring(p, s, d);
        let q = r.field().order() as u64;
        let group = Group::general_linear(&r, 20_000).unwrap();
        assert_eq!(group.order() as u64, general_linear_order(q, d as u32));
        let s_ring = InvariantRing::new(group);
        let alg = dickson_by_roots(&r, DEFAULT_DICKSON_CAP).unwrap();
        for g in alg.generators() {
            let deg = g.homogeneous_degree().unwrap();
            let piece = s_ring.piece(deg);
            let c = piece.coords(g).unwrap();
            assert_eq!(piece.from_coords(&c), *g);
        }
        // below the smallest generator degree only constants are invariant
        let low = alg
            .generators()
            .iter()
            .filter_map(Polynomial::homogeneous_degree)
            .min()
            .unwrap();
        for n in 1..low {
            assert_eq!(s_ring.dim(n), 0);
        }
    }
}

#[test]
fn trivial_group_invariants_are_everything() {
    let r = ring(3, 1, 2);
    let s = InvariantRing::new(Group::trivial(&r));
    for n in 0..6 {
        assert_eq!(s.dim(n), r.degree_basis(n).len());
    }
}
