use std::collections::HashSet;

use rayon::prelude::*;

use super::window::{GradedCohomologyWindow, InducedQ};
use crate::dickson::DicksonAlgebra;
use crate::error::{Error, Result};
use crate::poly::{Matrix, Polynomial, RowEchelon};
use crate::steenrod::reduced_power;

/// Default largest power tried in radical membership tests.
pub const DEFAULT_POWER_BOUND: u32 = 4;

/// The degree-`e` part of a window annihilator.
#[derive(Clone, Debug)]
pub struct AnnihilatorPiece {
    pub degree: u32,
    /// `dim S_e`.
    pub ambient_dim: usize,
    pub basis: Vec<Polynomial>,
    /// Class degrees `n` on which annihilation was tested.
    pub tested: Vec<i64>,
    /// Class degrees that could carry classes but were not tested, because
    /// `n` or `n + e` leaves the window or is not stabilized.
    pub excluded: Vec<i64>,
    echelon: RowEchelon,
}

impl AnnihilatorPiece {
    /// No class degree was excluded.
    pub fn is_complete(&self) -> bool {
        self.excluded.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Invariants annihilating every tested class of a window, degree by degree
/// up to a cap.
#[derive(Clone, Debug)]
pub struct WindowAnnihilator {
    pub degree_cap: u32,
    pub pieces: Vec<AnnihilatorPiece>,
    window_is_zero: bool,
    window_stabilized: bool,
}

impl WindowAnnihilator {
    pub fn piece(&self, e: u32) -> Option<&AnnihilatorPiece> {
        self.pieces.get(e as usize)
    }

    /// Membership of a homogeneous invariant; `None` above the cap.
    pub fn contains(
        &self,
        f: &Polynomial,
        window: &GradedCohomologyWindow,
    ) -> Result<Option<bool>> {
        if f.is_zero() {
            return Ok(Some(true));
        }
        let e = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
        let Some(piece) = self.piece(e) else {
            return Ok(None);
        };
        let coords = window.complex().invariants().piece(e).coords(f)?;
        Ok(Some(piece.echelon.contains(&coords)))
    }

    /// Only zero annihilates in every degree up to the cap.
    pub fn is_trivial(&self) -> bool {
        self.pieces.iter().all(|p| p.basis.is_empty())
    }

    /// Degrees with a nonzero annihilator and no excluded class degrees.
    pub fn nonzero_complete_degrees(&self) -> Vec<u32> {
        self.pieces
            .iter()
            .filter(|p| p.is_complete() && !p.basis.is_empty())
            .map(|p| p.degree)
            .collect()
    }

    /// Checks `h f ∈ A` for `f ∈ A_e` and `h` in a basis of `S_k`, for all
    /// `e + k <= cap`.
    pub fn is_closed_under_multiplication(&self, window: &GradedCohomologyWindow) -> Result<bool> {
        let invariants = window.complex().invariants();
        for p in &self.pieces {
            for k in 1..=self.degree_cap.saturating_sub(p.degree) {
                for h in invariants.piece(k).basis() {
                    for f in &p.basis {
                        if self.contains(&(h * f), window)? == Some(false) {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }
}

fn annihilator_piece(w: &GradedCohomologyWindow, e: u32) -> Result<AnnihilatorPiece> {
    let invariants = w.complex().invariants();
    let field = invariants.field();
    let piece = invariants.piece(e);
    let (lo, hi) = w.window();
    let mut tested = Vec::new();
    let mut excluded = Vec::new();
    let mut columns: Vec<Vec<Vec<crate::gf::Elem>>> = Vec::new();
    for n in lo..=hi {
        if w.is_stabilized(n) && w.dim(n) == 0 {
            tested.push(n);
            continue;
        }
        if !(w.is_stabilized(n) && w.is_stabilized(n + e as i64)) {
            excluded.push(n);
            continue;
        }
        // products h_a * c_k, one block of columns per class
        let mut block: Vec<Vec<crate::gf::Elem>> = vec![Vec::new(); piece.dim()];
        let mut ok = true;
        'classes: for c in w.basis(n) {
            for (a, h) in piece.basis().iter().enumerate() {
                match w.multiply(h, &c)? {
                    InducedQ::Class(prod) => block[a].extend(prod.coords),
                    InducedQ::Inconclusive { .. } => {
                        ok = false;
                        break 'classes;
                    }
                }
            }
        }
        if ok {
            tested.push(n);
            columns.push(block);
        } else {
            excluded.push(n);
        }
    }
    let rows: Vec<Vec<crate::gf::Elem>> = (0..piece.dim())
        .map(|a| columns.iter().flat_map(|b| b[a].iter().copied()).collect())
        .collect();
    let width = rows.first().map_or(0, Vec::len);
    let coords: Vec<Vec<crate::gf::Elem>> = if width == 0 {
        (0..piece.dim())
            .map(|a| {
                let mut v = vec![crate::gf::Elem::ZERO; piece.dim()];
                v[a] = crate::gf::Elem::ONE;
                v
            })
            .collect()
    } else {
        Matrix::from_row_slices(field, width, &rows).left_kernel()
    };
    let echelon = RowEchelon::from_vectors(field, piece.dim(), &coords);
    let basis = coords.iter().map(|c| piece.from_coords(c)).collect();
    Ok(AnnihilatorPiece {
        degree: e,
        ambient_dim: piece.dim(),
        basis,
        tested,
        excluded,
        echelon,
    })
}

/// All homogeneous invariants of degree at most `degree_cap` killing every
/// class of `w` whose product stays in the stabilized part of the window.
pub fn window_annihilator(
    w: &GradedCohomologyWindow,
    degree_cap: u32,
) -> Result<WindowAnnihilator> {
    let pieces = (0..=degree_cap)
        .into_par_iter()
        .map(|e| annihilator_piece(w, e))
        .collect::<Result<Vec<_>>>()?;
    Ok(WindowAnnihilator {
        degree_cap,
        pieces,
        window_is_zero: w.is_zero(),
        window_stabilized: w.all_stabilized(),
    })
}

/// One `P^i(f)` that failed to annihilate a class it should kill.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureViolation {
    pub degree: u32,
    pub f: Polynomial,
    pub power: u32,
    pub class_degree: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClosureReport {
    /// `(f, i, class degree)` triples tested.
    pub checked: usize,
    /// `(f, i)` pairs skipped because `deg P^i(f)` exceeds the cap.
    pub skipped_above_cap: usize,
    pub violations: Vec<ClosureViolation>,
}

impl ClosureReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Tests that `P^i(f)` annihilates the window wherever `f` does, for `f`
/// in each annihilator basis. A class degree `n` is used for `P^i(f)` only
/// when `f` was tested on all of `n, n + (q-1), .., n + i(q-1)`.
pub fn pstar_closure_check(
    a: &WindowAnnihilator,
    w: &GradedCohomologyWindow,
) -> Result<ClosureReport> {
    let shift = w.complex().invariants().field().order() as u32 - 1;
    let mut report = ClosureReport::default();
    for p in &a.pieces {
        let tested: HashSet<i64> = p.tested.iter().copied().collect();
        for f in &p.basis {
            for i in 1..=p.degree {
                if p.degree + i * shift > a.degree_cap {
                    report.skipped_above_cap += 1;
                    continue;
                }
                let g = reduced_power(i, f);
                for &n in &p.tested {
                    if w.dim(n) == 0 {
                        continue;
                    }
                    if !(0..=i).all(|b| tested.contains(&(n + (b * shift) as i64))) {
                        continue;
                    }
                    report.checked += 1;
                    if g.is_zero() {
                        continue;
                    }
                    for c in w.basis(n) {
                        if let InducedQ::Class(prod) = w.multiply(&g, &c)? {
                            if !prod.is_zero() {
                                report.violations.push(ClosureViolation {
                                    degree: p.degree,
                                    f: f.clone(),
                                    power: i,
                                    class_degree: n,
                                });
                                break;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Radical membership of one Dickson generator at window precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorContainment {
    /// `d^power` annihilates the window in a degree with no exclusions.
    Contained {
        power: u32,
    },
    /// No power up to the bound annihilates a tested class set.
    NotFoundWithinBound {
        bound: u32,
    },
    Inconclusive {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DicksonProbe {
    /// The window is zero and fully stabilized, so everything annihilates.
    VacuousPass,
    /// No nonzero invariant annihilates the window in any complete degree
    /// up to the cap, so the annihilator is not known to be nonzero.
    HypothesisNotMet,
    /// Per-generator results for `d_{d,0}, .., d_{d,g-1}`.
    Checked(Vec<(usize, GeneratorContainment)>),
    Inconclusive {
        reason: String,
    },
}

/// Tests whether `d_{d,j}` lies in the radical of the window annihilator
/// for each `j < g`, trying powers up to `power_bound`.
pub fn dickson_containment_probe(
    a: &WindowAnnihilator,
    w: &GradedCohomologyWindow,
    algebra: &DicksonAlgebra,
    g: usize,
    power_bound: u32,
) -> Result<DicksonProbe> {
    if algebra.ring() != w.complex().invariants().ring() {
        return Err(Error::RingMismatch);
    }
    if g > algebra.dim() {
        return Err(Error::OutOfRange {
            index: g,
            limit: algebra.dim(),
        });
    }
    if a.window_is_zero {
        return Ok(if a.window_stabilized {
            DicksonProbe::VacuousPass
        } else {
            DicksonProbe::Inconclusive {
                reason: "window is zero but not fully stabilized".into(),
            }
        });
    }
    if a.nonzero_complete_degrees().is_empty() {
        return Ok(DicksonProbe::HypothesisNotMet);
    }
    let mut out = Vec::with_capacity(g);
    for j in 0..g {
        let d = algebra.generator(j).expect("index checked");
        let mut partial_hit = false;
        let mut cap_hit = false;
        let mut status = None;
        for k in 1..=power_bound {
            let f = d.pow(k);
            let Some(piece) = a.piece(f.homogeneous_degree().unwrap_or(0)) else {
                cap_hit = true;
                break;
            };
            let member = a.contains(&f, w)?.unwrap_or(false);
            if member && piece.is_complete() {
                status = Some(GeneratorContainment::Contained { power: k });
                break;
            }
            partial_hit |= member;
        }
        let status = status.unwrap_or_else(|| {
            if cap_hit || partial_hit {
                let reason = if cap_hit {
                    "power degree exceeds the annihilator cap"
                } else {
                    "annihilates only a partial set of class degrees"
                };
                GeneratorContainment::Inconclusive {
                    reason: reason.into(),
                }
            } else {
                GeneratorContainment::NotFoundWithinBound { bound: power_bound }
            }
        });
        out.push((j, status));
    }
    Ok(DicksonProbe::Checked(out))
}
