use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::group_action::InvariantRing;
use crate::poly::{Matrix, Polynomial};

/// Verdict for one element of a sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DepthVerdict {
    /// Multiplication is injective on `S/(prefix)` in every degree up to
    /// the cap.
    Regular,
    /// `witness * element` lies in `(prefix)` although `witness` does not.
    NotRegular {
        witness: Polynomial,
    },
    Inconclusive {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthStep {
    pub position: usize,
    pub degree: Option<u32>,
    pub verdict: DepthVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthReport {
    pub degree_cap: u32,
    pub steps: Vec<DepthStep>,
}

impl DepthReport {
    /// Length of the longest prefix certified regular.
    pub fn regular_prefix(&self) -> usize {
        self.steps
            .iter()
            .take_while(|s| s.verdict == DepthVerdict::Regular)
            .count()
    }

    pub fn is_regular(&self) -> bool {
        self.regular_prefix() == self.steps.len()
    }
}

/// Elements `g` of degree `e` with `g f ∈ (prefix)` but `g ∉ (prefix)`,
/// or `None` when there are none.
fn zero_divisor_witness(
    invariants: &InvariantRing,
    prefix: &[Polynomial],
    f: &Polynomial,
    e: u32,
    delta: u32,
) -> Result<Option<Polynomial>> {
    let ring = invariants.ring();
    let field = ring.field();
    let piece = invariants.piece(e);
    if piece.dim() == 0 {
        return Ok(None);
    }
    let target = invariants.ideal_piece(prefix, e + delta)?;
    let cols = ring.degree_basis(e + delta).len();
    let mut rows: Vec<Vec<Elem>> = piece
        .basis()
        .iter()
        .map(|h| ring.coords(&(h * f), e + delta))
        .collect::<Result<_>>()?;
    rows.extend(target.basis().iter().cloned());
    let kernel = Matrix::from_row_slices(field, cols, &rows).left_kernel();
    let source = invariants.ideal_piece(prefix, e)?;
    for k in kernel {
        let g = piece.from_coords(&k[..piece.dim()]);
        if g.is_zero() {
            continue;
        }
        if !source.contains(&ring.coords(&g, e)?) {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// For each element of `sequence`, tests injectivity of multiplication on
/// `S/(earlier elements)` in all degrees whose image stays within
/// `degree_cap`.
pub fn depth_probe(
    sequence: &[Polynomial],
    invariants: &InvariantRing,
    degree_cap: u32,
) -> Result<DepthReport> {
    let ring = invariants.ring();
    let mut steps = Vec::with_capacity(sequence.len());
    for (pos, f) in sequence.iter().enumerate() {
        if f.ring() != ring {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            steps.push(DepthStep {
                position: pos,
                degree: None,
                verdict: DepthVerdict::NotRegular {
                    witness: ring.one(),
                },
            });
            continue;
        }
        let delta = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
        if !invariants.group().is_invariant(f)? {
            return Err(Error::NotInvariant);
        }
        let verdict = if delta > degree_cap {
            DepthVerdict::Inconclusive {
                reason: format!("degree {delta} exceeds cap {degree_cap}"),
            }
        } else {
            let prefix = &sequence[..pos];
            let mut verdict = DepthVerdict::Regular;
            for e in 0..=degree_cap - delta {
                if let Some(witness) = zero_divisor_witness(invariants, prefix, f, e, delta)? {
                    verdict = DepthVerdict::NotRegular { witness };
                    break;
                }
            }
            verdict
        };
        steps.push(DepthStep {
            position: pos,
            degree: Some(delta),
            verdict,
        });
    }
    Ok(DepthReport { degree_cap, steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dickson::dickson_by_roots;
    use crate::gf::Field;
    use crate::group_action::Group;
    use crate::poly::PolyRing;

    #[test]
    fn variables_are_regular() {
        let r = PolyRing::new(Field::with_default(3, 1).unwrap(), 2).unwrap();
        let s = InvariantRing::new(Group::trivial(&r));
        assert!(depth_probe(&r.vars(), &s, 6).unwrap().is_regular());
    }

    #[test]
    fn repeated_or_zero_element_is_not_regular() {
        let r = PolyRing::new(Field::with_default(2, 1).unwrap(), 2).unwrap();
        let s = InvariantRing::new(Group::trivial(&r));
        let x = r.var(0);
        let report = depth_probe(&[x.clone(), x.pow(2)], &s, 5).unwrap();
        assert_eq!(report.regular_prefix(), 1);
        assert_eq!(
            report.steps[1].verdict,
            DepthVerdict::NotRegular { witness: r.one() }
        );
        let report = depth_probe(&[r.zero()], &s, 5).unwrap();
        assert_eq!(report.regular_prefix(), 0);
        // x*y is a zero divisor modulo x^2 only through x
        let report = depth_probe(&[x.pow(2), &x * &r.var(1)], &s, 5).unwrap();
        assert_eq!(
            report.steps[1].verdict,
            DepthVerdict::NotRegular { witness: x.clone() }
        );
    }

    #[test]
    fn dickson_sequence_over_gf2() {
        let r = PolyRing::new(Field::with_default(2, 1).unwrap(), 2).unwrap();
        let s = InvariantRing::new(Group::general_linear(&r, 100).unwrap());
        let alg = dickson_by_roots(&r, 4096).unwrap();
        let seq = vec![
            alg.generator(1).unwrap().clone(),
            alg.generator(0).unwrap().clone(),
        ];
        assert!(depth_probe(&seq, &s, 8).unwrap().is_regular());
    }
}
