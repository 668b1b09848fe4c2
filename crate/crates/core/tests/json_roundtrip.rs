mod common;

use common::*;
use modinv::cartan_frac::Fraction;
use modinv::group_action::Group;
use modinv::json::{FractionJson, GroupJson, IdealJson, PolynomialJson};
use rand::Rng;

#[test]
fn polynomials_survive_a_text_roundtrip() {
    let mut rng = rng(41);
    for (p, s, d) in [(2, 1, 3), (3, 1, 2), (2, 3, 2), (5, 2, 1)] {
        let r = ring(p, s, d);
        for _ in 0..30 {
            let deg = rng.gen_range(0..=5);
            let f = random_homogeneous(&mut rng, &r, deg, 0.5);
            let text = serde_json::to_string(&PolynomialJson::from_poly(&f)).unwrap();
            let back: PolynomialJson = serde_json::from_str(&text).unwrap();
            assert_eq!(back.to_poly().unwrap(), f);
            assert_eq!(back.to_poly_in(&r).unwrap(), f);
        }
    }
}

#[test]
fn groups_fractions_and_ideals_roundtrip() {
    let r = ring(3, 1, 2);
    let g = Group::general_linear(&r, 1000).unwrap();
    let text = serde_json::to_string(&GroupJson::from_group(&g)).unwrap();
    let back: GroupJson = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_group(&r, 1000).unwrap().order(), g.order());

    let (x, y) = (r.var(0), r.var(1));
    let u = Fraction::raw(&x * &y, &x + &y, 3).unwrap();
    let text = serde_json::to_string(&FractionJson::from_fraction(&u)).unwrap();
    let v = serde_json::from_str::<FractionJson>(&text)
        .unwrap()
        .to_fraction()
        .unwrap();
    assert_eq!(v.exp(), 3);
    assert_eq!(v, u);

    let gens = vec![x.pow(2), &x * &y];
    let text = serde_json::to_string(&IdealJson::from_generators(&gens)).unwrap();
    let back: IdealJson = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_generators(&r).unwrap(), gens);
}

#[test]
fn malformed_input_is_rejected_with_a_location() {
    let r = ring(2, 1, 2);
    let mut j = PolynomialJson::from_poly(&r.var(0));
    j.terms[0].exp.push(1);
    let err = j.to_poly().unwrap_err().to_string();
    assert!(err.contains("terms[0]"), "{err}");

    let mut j = PolynomialJson::from_poly(&r.var(0));
    j.ring.field.modulus = vec![0, 0, 1];
    j.ring.field.s = 2;
    assert!(j.to_poly().is_err());

    let other = ring(3, 1, 2);
    assert!(PolynomialJson::from_poly(&r.var(1))
        .to_poly_in(&other)
        .is_err());

    let mut g = GroupJson::from_group(&Group::general_linear(&r, 100).unwrap());
    g.generators[0][0][0] = vec![0];
    g.generators[0][1][0] = vec![0];
    assert!(g.to_group(&r, 100).is_err());
}
