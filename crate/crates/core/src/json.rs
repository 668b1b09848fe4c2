//! Serialized forms of fields, polynomials, groups, fractions and ideals.
//!
//! Field elements are coefficient lists over GF(p), low degree first.
//! Polynomial terms are emitted in decreasing grevlex order so output is
//! canonical; input terms may come in any order and repeated monomials add.

use serde::{Deserialize, Serialize};

use crate::cartan_frac::Fraction;
use crate::error::{Error, Result};
use crate::gf::{Field, FieldSpec};
use crate::group_action::{Group, GroupElement};
use crate::poly::{Matrix, Monomial, PolyRing, Polynomial};

/// Re-validates a deserialized field specification.
pub fn field_from_spec(spec: &FieldSpec) -> Result<Field> {
    let spec = FieldSpec::new(spec.p, spec.s, spec.modulus.clone())?;
    Ok(Field::new(spec))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingJson {
    pub field: FieldSpec,
    pub nvars: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl RingJson {
    pub fn from_ring(ring: &PolyRing) -> Self {
        Self {
            field: ring.field().spec().clone(),
            nvars: ring.nvars(),
            names: Some(ring.names().to_vec()),
        }
    }

    pub fn to_ring(&self) -> Result<PolyRing> {
        let field = field_from_spec(&self.field)?;
        match &self.names {
            Some(names) if names.len() != self.nvars => Err(Error::InvalidInput(format!(
                "ring declares {} variables but {} names",
                self.nvars,
                names.len()
            ))),
            Some(names) => PolyRing::with_names(field, names.clone()),
            None => PolyRing::new(field, self.nvars),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coeff: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub ring: RingJson,
    pub terms: Vec<TermJson>,
}

impl PolynomialJson {
    pub fn from_poly(f: &Polynomial) -> Self {
        let field = f.ring().field();
        Self {
            ring: RingJson::from_ring(f.ring()),
            terms: f
                .terms()
                .rev()
                .map(|(m, c)| TermJson {
                    exp: m.exponents(),
                    coeff: field.coeffs(*c),
                })
                .collect(),
        }
    }

    pub fn to_poly(&self) -> Result<Polynomial> {
        self.to_poly_in(&self.ring.to_ring()?)
    }

    /// Parses the terms into `ring`, which must match the declared ring.
    pub fn to_poly_in(&self, ring: &PolyRing) -> Result<Polynomial> {
        if self.ring.to_ring()? != *ring {
            return Err(Error::RingMismatch);
        }
        let field = ring.field();
        let mut f = ring.zero();
        for (k, t) in self.terms.iter().enumerate() {
            if t.exp.len() != ring.nvars() {
                return Err(Error::InvalidInput(format!(
                    "terms[{k}].exp has length {}, expected {}",
                    t.exp.len(),
                    ring.nvars()
                )));
            }
            if t.exp.iter().any(|&e| e > u16::MAX as u32) {
                return Err(Error::InvalidInput(format!("terms[{k}].exp is too large")));
            }
            let c = field
                .from_coeffs(&t.coeff)
                .map_err(|e| Error::InvalidInput(format!("terms[{k}].coeff: {e}")))?;
            f = &f + &Polynomial::monomial(ring, Monomial::new(&t.exp), c);
        }
        Ok(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub q: FieldSpec,
    pub d: usize,
    /// Row-major generator matrices with entries as coefficient lists.
    pub generators: Vec<Vec<Vec<Vec<u32>>>>,
}

impl GroupJson {
    pub fn from_group(group: &Group) -> Self {
        let field = group.field();
        Self {
            q: field.spec().clone(),
            d: group.dim(),
            generators: group
                .generators()
                .iter()
                .map(|g| {
                    let m = g.matrix();
                    (0..m.rows())
                        .map(|r| m.row(r).iter().map(|&c| field.coeffs(c)).collect())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn generator_elements(&self, field: &Field) -> Result<Vec<GroupElement>> {
        self.generators
            .iter()
            .enumerate()
            .map(|(k, rows)| {
                if rows.len() != self.d || rows.iter().any(|r| r.len() != self.d) {
                    return Err(Error::InvalidInput(format!(
                        "generators[{k}] is not {0}x{0}",
                        self.d
                    )));
                }
                let rows = rows
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|c| field.from_coeffs(c))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| Error::InvalidInput(format!("generators[{k}]: {e}")))?;
                GroupElement::new(Matrix::from_rows(field, rows)?)
                    .map_err(|e| Error::InvalidInput(format!("generators[{k}]: {e}")))
            })
            .collect()
    }

    /// Closes the generators inside `ring`, whose field and rank must match.
    pub fn to_group(&self, ring: &PolyRing, cap: usize) -> Result<Group> {
        let field = field_from_spec(&self.q)?;
        if field != *ring.field() {
            return Err(Error::FieldMismatch);
        }
        if self.d != ring.nvars() {
            return Err(Error::DimensionMismatch {
                expected: ring.nvars(),
                found: self.d,
            });
        }
        if self.generators.is_empty() {
            return Ok(Group::trivial(ring));
        }
        Group::close(ring, self.generator_elements(&field)?, cap)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionJson {
    pub num: PolynomialJson,
    pub base: PolynomialJson,
    pub exp: u32,
}

impl FractionJson {
    pub fn from_fraction(u: &Fraction) -> Self {
        Self {
            num: PolynomialJson::from_poly(u.num()),
            base: PolynomialJson::from_poly(u.base()),
            exp: u.exp(),
        }
    }

    /// Keeps the representation as given.
    pub fn to_fraction(&self) -> Result<Fraction> {
        let base = self.base.to_poly()?;
        let num = self.num.to_poly_in(base.ring())?;
        Fraction::raw(num, base, self.exp)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub generators: Vec<PolynomialJson>,
}

impl IdealJson {
    pub fn from_generators(gens: &[Polynomial]) -> Self {
        Self {
            generators: gens.iter().map(PolynomialJson::from_poly).collect(),
        }
    }

    pub fn to_generators(&self, ring: &PolyRing) -> Result<Vec<Polynomial>> {
        self.generators.iter().map(|g| g.to_poly_in(ring)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_round_trip() {
        let r = PolyRing::new(Field::with_default(2, 2).unwrap(), 2).unwrap();
        let (x, y) = (r.var(0), r.var(1));
        let w = r.field().generator();
        let f = &(&x.pow(3) * &y).scale(w) + &y;
        let j = PolynomialJson::from_poly(&f);
        assert_eq!(j.terms[0].exp, vec![3, 1]);
        assert_eq!(j.terms[0].coeff, vec![0, 1]);
        let text = serde_json::to_string(&j).unwrap();
        let back: PolynomialJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_poly().unwrap(), f);
        assert_eq!(PolynomialJson::from_poly(&back.to_poly().unwrap()), j);
    }

    #[test]
    fn rejects_bad_input() {
        let text = r#"{"ring":{"field":{"p":2,"s":1,"modulus":[0,1]},"nvars":2},
                       "terms":[{"exp":[1],"coeff":[1]}]}"#;
        let j: PolynomialJson = serde_json::from_str(text).unwrap();
        assert!(matches!(j.to_poly(), Err(Error::InvalidInput(_))));
        let text = r#"{"ring":{"field":{"p":2,"s":2,"modulus":[1,0,1]},"nvars":1},"terms":[]}"#;
        let j: PolynomialJson = serde_json::from_str(text).unwrap();
        assert!(matches!(j.to_poly(), Err(Error::InvalidField(_))));
    }

    #[test]
    fn group_round_trip() {
        let r = PolyRing::new(Field::with_default(3, 1).unwrap(), 2).unwrap();
        let g = Group::general_linear(&r, 1000).unwrap();
        let j = GroupJson::from_group(&g);
        let back: GroupJson = serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap();
        assert_eq!(back, j);
        assert_eq!(back.to_group(&r, 1000).unwrap().order(), 48);
    }
}
