//! Compares the Cartan operators obtained from two generating sets of one
//! ideal.
//!
//! With `z` the concatenation of `x` and `y`, dropping the components of a
//! `z`-cochain whose index set is not contained in `x` (respectively `y`)
//! is a chain map to the `x`-complex (respectively `y`-complex) commuting
//! with the componentwise operators. Their induced maps identify the three
//! windows, and the `x` and `y` operators are compared through that
//! identification.

use std::sync::Arc;

use super::cech::CechComplex;
use super::window::{colimit_window, induced_q, GradedCohomologyWindow, InducedQ};
use super::IdealSpec;
use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::group_action::InvariantRing;
use crate::poly::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComparisonOutcome {
    Same,
    Differ,
    Inconclusive { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonEntry {
    pub degree: i64,
    pub r: u32,
    pub outcome: ComparisonOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorComparison {
    pub entries: Vec<ComparisonEntry>,
}

impl GeneratorComparison {
    pub fn differs(&self) -> bool {
        self.entries
            .iter()
            .any(|e| e.outcome == ComparisonOutcome::Differ)
    }

    pub fn same_count(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| e.outcome == ComparisonOutcome::Same)
            .count()
    }
}

/// Each generator of `a` lies in the ideal of `S` generated by `b`.
fn generators_in_ideal(invariants: &InvariantRing, a: &IdealSpec, b: &IdealSpec) -> Result<bool> {
    let ring = invariants.ring();
    for (f, &deg) in a.generators().iter().zip(a.degrees()) {
        if !invariants
            .ideal_piece(b.generators(), deg)?
            .contains(&ring.coords(f, deg)?)
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Keeps the `z`-components indexed inside the bit range
/// `shift .. shift + width`, renumbered from zero.
#[allow(clippy::too_many_arguments)]
fn project(
    z: &CechComplex,
    target: &CechComplex,
    i: usize,
    n: i64,
    t: u32,
    v: &[Elem],
    shift: u32,
    width: u32,
) -> Result<Vec<Elem>> {
    let src = z.layout(i, n, t)?;
    let dst = target.layout(i, n, t)?;
    let range = ((1u32 << width) - 1) << shift;
    let mut out = vec![Elem::ZERO; dst.dim];
    for b in &src.blocks {
        if b.mask & !range != 0 || b.len == 0 {
            continue;
        }
        let db = dst
            .block(b.mask >> shift)
            .ok_or_else(|| Error::Internal("projected block missing".into()))?;
        out[db.offset..db.offset + db.len].copy_from_slice(&v[b.offset..b.offset + b.len]);
    }
    Ok(out)
}

/// Matrix (rows: basis classes of `wz`) of the projection to `target`.
fn projection_matrix(
    wz: &GradedCohomologyWindow,
    target: &GradedCohomologyWindow,
    n: i64,
    shift: u32,
    width: u32,
) -> Result<std::result::Result<Matrix, String>> {
    let field = wz.complex().invariants().field();
    let mut rows = Vec::new();
    for c in wz.basis(n) {
        let (t, v) = wz.class_vector(&c)?;
        let p = match project(
            wz.complex(),
            target.complex(),
            wz.index(),
            n,
            t,
            &v,
            shift,
            width,
        ) {
            Ok(p) => p,
            Err(Error::CapExceeded { .. }) => return Ok(Err("degree cap".into())),
            Err(e) => return Err(e),
        };
        match target.express(n, t, &p)? {
            Ok(coords) => rows.push(coords),
            Err(reason) => return Ok(Err(reason)),
        }
    }
    Ok(Ok(Matrix::from_row_slices(field, target.dim(n), &rows)))
}

/// `φ_n`: window coordinates for `x` to window coordinates for `y`.
fn identification(
    wx: &GradedCohomologyWindow,
    wy: &GradedCohomologyWindow,
    wz: &GradedCohomologyWindow,
    n: i64,
    mx: u32,
    my: u32,
) -> Result<std::result::Result<Matrix, String>> {
    for w in [wx, wy, wz] {
        if !w.is_stabilized(n) {
            return Ok(Err(format!("degree {n} is not stabilized")));
        }
    }
    if wx.dim(n) != wz.dim(n) || wy.dim(n) != wz.dim(n) {
        return Ok(Err(format!(
            "degree {n}: dimensions disagree across generating sets"
        )));
    }
    let field = wz.complex().invariants().field();
    if wz.dim(n) == 0 {
        return Ok(Ok(Matrix::zeros(field, 0, 0)));
    }
    let px = match projection_matrix(wz, wx, n, 0, mx)? {
        Ok(m) => m,
        Err(reason) => return Ok(Err(reason)),
    };
    let py = match projection_matrix(wz, wy, n, mx, my)? {
        Ok(m) => m,
        Err(reason) => return Ok(Err(reason)),
    };
    let Ok(px_inv) = px.inverse() else {
        return Ok(Err(format!("degree {n}: projection is not invertible")));
    };
    Ok(Ok(px_inv.mul(&py)?))
}

/// Matrix of `Q^r` from degree `n` to `n + r(q-1)` on window coordinates.
fn q_matrix(
    w: &GradedCohomologyWindow,
    r: u32,
    n: i64,
    target: i64,
) -> Result<std::result::Result<Matrix, String>> {
    let field = w.complex().invariants().field();
    let mut rows = Vec::new();
    for c in w.basis(n) {
        match induced_q(w, r, &c)? {
            InducedQ::Class(img) => rows.push(img.coords),
            InducedQ::Inconclusive { reason } => return Ok(Err(reason)),
        }
    }
    Ok(Ok(Matrix::from_row_slices(field, w.dim(target), &rows)))
}

/// Compares `Q^r` for `r = 1 ..= r_max` built from the generators `x` and
/// from `y` on every source degree of the window. Both lists must generate
/// the same ideal of `S`.
#[allow(clippy::too_many_arguments)]
pub fn compare_generator_sets(
    x: &IdealSpec,
    y: &IdealSpec,
    invariants: Arc<InvariantRing>,
    i: usize,
    window: (i64, i64),
    t_max: u32,
    degree_cap: u32,
    r_max: u32,
) -> Result<GeneratorComparison> {
    if !generators_in_ideal(&invariants, x, y)? || !generators_in_ideal(&invariants, y, x)? {
        return Err(Error::InvalidInput(
            "generator lists do not generate the same ideal".into(),
        ));
    }
    let z = x.union(y)?;
    let build = |ideal: &IdealSpec| -> Result<GradedCohomologyWindow> {
        let c = Arc::new(CechComplex::new(
            invariants.clone(),
            ideal.clone(),
            degree_cap,
        )?);
        colimit_window(c, i, window, t_max)
    };
    let (wx, wy, wz) = (build(x)?, build(y)?, build(&z)?);
    let (mx, my) = (x.len() as u32, y.len() as u32);
    let shift = wx.q_minus_one();
    let mut entries = Vec::new();
    for n in window.0..=window.1 {
        let phi_n = identification(&wx, &wy, &wz, n, mx, my)?;
        for r in 1..=r_max {
            let target = n + r as i64 * shift;
            let outcome = (|| -> Result<ComparisonOutcome> {
                let phi_n = match &phi_n {
                    Ok(m) => m,
                    Err(reason) => {
                        return Ok(ComparisonOutcome::Inconclusive {
                            reason: reason.clone(),
                        })
                    }
                };
                if !wx.contains_degree(target) {
                    return Ok(ComparisonOutcome::Inconclusive {
                        reason: format!("target degree {target} is outside the window"),
                    });
                }
                if wx.dim(n) == 0 {
                    return Ok(ComparisonOutcome::Same);
                }
                let phi_t = match identification(&wx, &wy, &wz, target, mx, my)? {
                    Ok(m) => m,
                    Err(reason) => return Ok(ComparisonOutcome::Inconclusive { reason }),
                };
                let (qx, qy) = match (q_matrix(&wx, r, n, target)?, q_matrix(&wy, r, n, target)?) {
                    (Ok(a), Ok(b)) => (a, b),
                    (Err(reason), _) | (_, Err(reason)) => {
                        return Ok(ComparisonOutcome::Inconclusive { reason })
                    }
                };
                let lhs = if wx.dim(target) == 0 {
                    None
                } else {
                    Some(qx.mul(&phi_t)?)
                };
                let rhs = if wx.dim(target) == 0 {
                    None
                } else {
                    Some(phi_n.mul(&qy)?)
                };
                Ok(if lhs == rhs {
                    ComparisonOutcome::Same
                } else {
                    ComparisonOutcome::Differ
                })
            })()?;
            entries.push(ComparisonEntry {
                degree: n,
                r,
                outcome,
            });
        }
    }
    Ok(GeneratorComparison { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use crate::group_action::Group;
    use crate::poly::PolyRing;

    #[test]
    fn two_generating_sets_of_the_plane_ideal() {
        let r = PolyRing::new(Field::with_default(2, 1).unwrap(), 2).unwrap();
        let g = Group::trivial(&r);
        let s = Arc::new(InvariantRing::new(g.clone()));
        let (x, y) = (r.var(0), r.var(1));
        let a = IdealSpec::variables(&r);
        let b = IdealSpec::new(vec![&x + &y, y.clone()], &g).unwrap();
        let cmp = compare_generator_sets(&a, &b, s.clone(), 2, (-5, -2), 10, 40, 2).unwrap();
        assert!(!cmp.differs());
        assert!(cmp.same_count() > 0);
        let bad = IdealSpec::new(vec![x.clone()], &g).unwrap();
        assert!(compare_generator_sets(&a, &bad, s, 2, (-3, -2), 6, 40, 1).is_err());
    }
}
