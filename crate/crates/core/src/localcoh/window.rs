use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use super::cech::{CechCocycle, CechComplex, KoszulPiece};
use crate::cartan_frac::q_r;
use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::poly::{Matrix, Polynomial, TaggedEchelon};

/// Why a degree was not declared stable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instability {
    /// No two consecutive isomorphic transition maps up to `t_max`.
    TMaxReached,
    /// The cochain space at this truncation exceeds the degree cap.
    DegreeCap { truncation: u32 },
}

/// One internal degree of a window.
#[derive(Clone, Debug)]
pub struct WindowDegree {
    pub degree: i64,
    pub dim: usize,
    /// Truncation whose representatives are used for this degree.
    pub truncation: u32,
    pub stabilized: bool,
    pub instability: Option<Instability>,
    pub(crate) cell: Arc<KoszulPiece>,
}

/// A cohomology class given by coordinates in the window basis of its
/// degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    pub degree: i64,
    pub coords: Vec<Elem>,
}

impl CohomologyClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

/// Result of an operation that may leave the computed part of a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InducedQ {
    Class(CohomologyClass),
    Inconclusive { reason: String },
}

/// Dimensions and representative cocycles of `H^i_I(S)` over an interval
/// of internal degrees.
pub struct GradedCohomologyWindow {
    complex: Arc<CechComplex>,
    index: usize,
    lo: i64,
    hi: i64,
    t_max: u32,
    entries: Vec<WindowDegree>,
    echelons: Mutex<HashMap<(i64, u32), Arc<TaggedEchelon>>>,
}

impl std::fmt::Debug for GradedCohomologyWindow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GradedCohomologyWindow")
            .field("index", &self.index)
            .field("window", &(self.lo, self.hi))
            .field("dims", &self.dims())
            .finish()
    }
}

type Soft<T> = std::result::Result<T, String>;

/// Turns a cap overrun into a soft failure with a reason.
fn soften<T>(r: Result<T>) -> Result<Soft<T>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(Error::CapExceeded { what, value, cap }) => {
            Ok(Err(format!("{what} {value} exceeds cap {cap}")))
        }
        Err(e) => Err(e),
    }
}

/// Whether the transition map from `a` to the next truncation `b` is an
/// isomorphism.
fn transition_is_iso(complex: &CechComplex, a: &KoszulPiece, b: &KoszulPiece) -> Result<bool> {
    if a.dim() != b.dim() {
        return Ok(false);
    }
    if a.dim() == 0 {
        return Ok(true);
    }
    let field = complex.invariants().field();
    let mut rows = Vec::with_capacity(a.dim());
    for z in a.representatives() {
        let moved = complex.transport(a.index(), a.degree(), a.truncation(), b.truncation(), z)?;
        rows.push(
            b.class_coords(&moved)
                .ok_or_else(|| Error::Internal("transition map left the cocycles".into()))?,
        );
    }
    Ok(!Matrix::from_rows(field, rows)?.determinant()?.is_zero())
}

/// First truncation at which every component with a nonempty index set has
/// numerators of nonnegative degree. Below it, spaces are truncated to zero
/// and consecutive zero maps would look stable.
fn first_truncation(complex: &CechComplex, n: i64) -> u32 {
    let min_deg = *complex
        .ideal()
        .degrees()
        .iter()
        .min()
        .expect("nonempty ideal") as i64;
    if n >= 0 {
        1
    } else {
        ((-n + min_deg - 1) / min_deg).max(1) as u32
    }
}

fn stabilize(complex: &CechComplex, i: usize, n: i64, t_max: u32) -> Result<WindowDegree> {
    let t0 = first_truncation(complex, n).min(t_max);
    let mut cells = vec![complex.cell(i, n, t0)?];
    let mut prev_iso = false;
    let finish = |cell: &Arc<KoszulPiece>, stabilized: bool, instability: Option<Instability>| {
        WindowDegree {
            degree: n,
            dim: cell.dim(),
            truncation: cell.truncation(),
            stabilized,
            instability,
            cell: cell.clone(),
        }
    };
    for t in t0..t_max {
        let next = match complex.cell(i, n, t + 1) {
            Ok(c) => c,
            Err(Error::CapExceeded { .. }) => {
                let last = cells.last().expect("at least one cell");
                return Ok(finish(
                    last,
                    false,
                    Some(Instability::DegreeCap { truncation: t + 1 }),
                ));
            }
            Err(e) => return Err(e),
        };
        let iso = transition_is_iso(complex, cells.last().expect("at least one cell"), &next)?;
        cells.push(next);
        if iso && prev_iso {
            // maps t-1 -> t and t -> t+1 are isomorphisms
            return Ok(finish(&cells[cells.len() - 3], true, None));
        }
        prev_iso = iso;
    }
    let last = cells.last().expect("at least one cell");
    Ok(finish(last, false, Some(Instability::TMaxReached)))
}

/// Computes `H^i` on the degrees `window.0 ..= window.1`, trying
/// truncations up to `t_max` in each degree. Degrees run in parallel.
pub fn colimit_window(
    complex: Arc<CechComplex>,
    i: usize,
    window: (i64, i64),
    t_max: u32,
) -> Result<GradedCohomologyWindow> {
    let (lo, hi) = window;
    if lo > hi {
        return Err(Error::InvalidInput(format!("empty window {lo}..{hi}")));
    }
    if t_max == 0 {
        return Err(Error::InvalidInput("t_max must be positive".into()));
    }
    let entries = (lo..=hi)
        .into_par_iter()
        .map(|n| stabilize(&complex, i, n, t_max))
        .collect::<Result<Vec<_>>>()?;
    Ok(GradedCohomologyWindow {
        complex,
        index: i,
        lo,
        hi,
        t_max,
        entries,
        echelons: Mutex::new(HashMap::new()),
    })
}

impl GradedCohomologyWindow {
    pub fn complex(&self) -> &Arc<CechComplex> {
        &self.complex
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn t_max(&self) -> u32 {
        self.t_max
    }

    pub fn entries(&self) -> &[WindowDegree] {
        &self.entries
    }

    pub fn entry(&self, n: i64) -> Option<&WindowDegree> {
        if n < self.lo || n > self.hi {
            return None;
        }
        self.entries.get((n - self.lo) as usize)
    }

    pub fn contains_degree(&self, n: i64) -> bool {
        self.entry(n).is_some()
    }

    pub fn is_stabilized(&self, n: i64) -> bool {
        self.entry(n).is_some_and(|e| e.stabilized)
    }

    pub fn all_stabilized(&self) -> bool {
        self.entries.iter().all(|e| e.stabilized)
    }

    pub fn dims(&self) -> Vec<(i64, usize)> {
        self.entries.iter().map(|e| (e.degree, e.dim)).collect()
    }

    pub fn dim(&self, n: i64) -> usize {
        self.entry(n).map_or(0, |e| e.dim)
    }

    /// Every reported dimension is zero.
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.dim == 0)
    }

    /// `q - 1`, the degree shift of `Q^1`.
    pub(crate) fn q_minus_one(&self) -> i64 {
        self.complex.invariants().field().order() as i64 - 1
    }

    pub fn basis_class(&self, n: i64, k: usize) -> Option<CohomologyClass> {
        let e = self.entry(n)?;
        if k >= e.dim {
            return None;
        }
        let mut coords = vec![Elem::ZERO; e.dim];
        coords[k] = Elem::ONE;
        Some(CohomologyClass { degree: n, coords })
    }

    pub fn basis(&self, n: i64) -> Vec<CohomologyClass> {
        (0..self.dim(n))
            .filter_map(|k| self.basis_class(n, k))
            .collect()
    }

    pub fn zero_class(&self, n: i64) -> CohomologyClass {
        CohomologyClass {
            degree: n,
            coords: vec![Elem::ZERO; self.dim(n)],
        }
    }

    /// A cocycle representing `class` at the degree's truncation.
    pub(crate) fn class_vector(&self, class: &CohomologyClass) -> Result<(u32, Vec<Elem>)> {
        let e = self.entry(class.degree).ok_or_else(|| {
            Error::InvalidInput(format!("degree {} is outside the window", class.degree))
        })?;
        if class.coords.len() != e.dim {
            return Err(Error::DimensionMismatch {
                expected: e.dim,
                found: class.coords.len(),
            });
        }
        let field = self.complex.invariants().field();
        let mut v = vec![Elem::ZERO; e.cell.cochain_dim()];
        for (c, z) in class.coords.iter().zip(e.cell.representatives()) {
            crate::poly::matrix_axpy(field, &mut v, *c, z);
        }
        Ok((e.truncation, v))
    }

    /// The Čech cocycle representing `class`.
    pub fn representative(&self, class: &CohomologyClass) -> Result<CechCocycle> {
        let (t, v) = self.class_vector(class)?;
        self.complex.cech_cocycle(self.index, class.degree, t, &v)
    }

    fn echelon_at(&self, n: i64, t: u32) -> Result<Soft<Arc<TaggedEchelon>>> {
        if let Some(e) = self
            .echelons
            .lock()
            .expect("echelon cache poisoned")
            .get(&(n, t))
        {
            return Ok(Ok(e.clone()));
        }
        let entry = self.entry(n).expect("caller checked the degree");
        let cell = match soften(self.complex.cell(self.index, n, t))? {
            Ok(c) => c,
            Err(reason) => return Ok(Err(reason)),
        };
        let field = self.complex.invariants().field();
        let mut ech = TaggedEchelon::new(field, cell.cochain_dim(), entry.dim);
        let zero = vec![Elem::ZERO; entry.dim];
        for b in &cell.boundaries {
            ech.insert(b, &zero);
        }
        for (k, z) in entry.cell.representatives().iter().enumerate() {
            let moved = match soften(
                self.complex
                    .transport(self.index, n, entry.truncation, t, z),
            )? {
                Ok(v) => v,
                Err(reason) => return Ok(Err(reason)),
            };
            let mut tag = zero.clone();
            tag[k] = Elem::ONE;
            ech.insert(&moved, &tag);
        }
        let ech = Arc::new(ech);
        self.echelons
            .lock()
            .expect("echelon cache poisoned")
            .insert((n, t), ech.clone());
        Ok(Ok(ech))
    }

    /// Window coordinates of a cocycle given at degree `n`, truncation `t`.
    /// Fails with an internal error when the vector is not a cocycle.
    pub(crate) fn express(&self, n: i64, t: u32, v: &[Elem]) -> Result<Soft<Vec<Elem>>> {
        let Some(entry) = self.entry(n) else {
            return Ok(Err(format!("degree {n} is outside the window")));
        };
        if !entry.stabilized {
            return Ok(Err(format!("degree {n} is not stabilized")));
        }
        let target = t.max(entry.truncation);
        let moved = match soften(self.complex.transport(self.index, n, t, target, v))? {
            Ok(v) => v,
            Err(reason) => return Ok(Err(reason)),
        };
        let cell = match soften(self.complex.cell(self.index, n, target))? {
            Ok(c) => c,
            Err(reason) => return Ok(Err(reason)),
        };
        if !cell.is_cocycle(&moved) {
            return Err(Error::Internal(format!(
                "cochain in degree {n} is not a cocycle"
            )));
        }
        if target == entry.truncation {
            return Ok(Ok(entry
                .cell
                .class_coords(&moved)
                .expect("checked cocycle")));
        }
        let ech = match self.echelon_at(n, target)? {
            Ok(e) => e,
            Err(reason) => return Ok(Err(reason)),
        };
        Ok(ech.solve(&moved).ok_or_else(|| {
            format!(
                "degree {n}: class not reached from truncation {}",
                entry.truncation
            )
        }))
    }

    /// `f * class` for a homogeneous invariant `f`.
    pub fn multiply(&self, f: &Polynomial, class: &CohomologyClass) -> Result<InducedQ> {
        if f.is_zero() {
            return Ok(InducedQ::Class(class.clone()).map_zero(self, class.degree));
        }
        let e = f.homogeneous_degree().ok_or(Error::NotHomogeneous)? as i64;
        let (t, v) = self.class_vector(class)?;
        let n = class.degree + e;
        if !self.contains_degree(n) {
            return Ok(InducedQ::Inconclusive {
                reason: format!("degree {n} is outside the window"),
            });
        }
        let w = match soften(self.complex.multiply(self.index, class.degree, t, f, &v))? {
            Ok(w) => w,
            Err(reason) => return Ok(InducedQ::Inconclusive { reason }),
        };
        Ok(match self.express(n, t, &w)? {
            Ok(coords) => InducedQ::Class(CohomologyClass { degree: n, coords }),
            Err(reason) => InducedQ::Inconclusive { reason },
        })
    }
}

impl InducedQ {
    fn map_zero(self, w: &GradedCohomologyWindow, n: i64) -> InducedQ {
        match self {
            InducedQ::Class(_) => InducedQ::Class(w.zero_class(n)),
            other => other,
        }
    }

    pub fn class(&self) -> Option<&CohomologyClass> {
        match self {
            InducedQ::Class(c) => Some(c),
            InducedQ::Inconclusive { .. } => None,
        }
    }
}

/// The Cartan operator `Q^r` on a class: `q_r` is applied to each Čech
/// component, the result is checked to be a cocycle and its class is
/// read off in the window basis of degree `n + r(q-1)`.
pub fn induced_q(
    window: &GradedCohomologyWindow,
    r: u32,
    class: &CohomologyClass,
) -> Result<InducedQ> {
    if r == 0 {
        window.class_vector(class)?;
        return Ok(InducedQ::Class(class.clone()));
    }
    let target = class.degree + r as i64 * window.q_minus_one();
    let Some(entry) = window.entry(target) else {
        return Ok(InducedQ::Inconclusive {
            reason: format!("target degree {target} is outside the window"),
        });
    };
    if !entry.stabilized {
        return Ok(InducedQ::Inconclusive {
            reason: format!("target degree {target} is not stabilized"),
        });
    }
    let (t, v) = window.class_vector(class)?;
    let complex = window.complex();
    let parts = complex.to_fractions(window.index(), class.degree, t, &v)?;
    let images: Vec<_> = parts.iter().map(|(mask, u)| (*mask, q_r(r, u))).collect();
    let big_t = images
        .iter()
        .map(|(_, u)| u.exp())
        .max()
        .unwrap_or(1)
        .max(1);
    let w = match soften(complex.coords_of_fractions(window.index(), target, big_t, &images))? {
        Ok(w) => w,
        Err(reason) => return Ok(InducedQ::Inconclusive { reason }),
    };
    Ok(match window.express(target, big_t, &w)? {
        Ok(coords) => InducedQ::Class(CohomologyClass {
            degree: target,
            coords,
        }),
        Err(reason) => InducedQ::Inconclusive { reason },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use crate::group_action::{Group, InvariantRing};
    use crate::localcoh::IdealSpec;
    use crate::poly::PolyRing;

    fn window(p: u32, d: usize, i: usize, lo: i64, hi: i64) -> GradedCohomologyWindow {
        let r = PolyRing::new(Field::with_default(p, 1).unwrap(), d).unwrap();
        let s = Arc::new(InvariantRing::new(Group::trivial(&r)));
        let c = Arc::new(CechComplex::new(s, IdealSpec::variables(&r), 40).unwrap());
        colimit_window(c, i, (lo, hi), 10).unwrap()
    }

    #[test]
    fn plane_dimensions() {
        let w = window(2, 2, 2, -5, -2);
        assert_eq!(w.dims(), vec![(-5, 4), (-4, 3), (-3, 2), (-2, 1)]);
        assert!(w.all_stabilized());
        assert!(window(2, 2, 1, -5, -2).is_zero());
    }

    #[test]
    fn line_classes() {
        let w = window(2, 1, 1, -4, 1);
        assert_eq!(w.dim(-1), 1);
        assert_eq!(w.dim(0), 0);
        let c = w.basis_class(-3, 0).unwrap();
        let rep = w.representative(&c).unwrap();
        let x = w.complex().ideal().generators()[0].clone();
        let expected = crate::cartan_frac::Fraction::new(x.ring().one(), x.clone(), 3).unwrap();
        assert_eq!(rep.components[0].value, expected);
        // Q^1(x^{-3}) = -3 x^{-2} over GF(2)
        let q1 = induced_q(&w, 1, &c).unwrap();
        assert_eq!(q1, InducedQ::Class(w.basis_class(-2, 0).unwrap()));
        assert_eq!(induced_q(&w, 0, &c).unwrap(), InducedQ::Class(c.clone()));
        assert_eq!(
            induced_q(&w, 1, &w.zero_class(-3)).unwrap(),
            InducedQ::Class(w.zero_class(-2))
        );
        let one = induced_q(&w, 1, &w.basis_class(-1, 0).unwrap()).unwrap();
        assert_eq!(one, InducedQ::Class(w.zero_class(0)));
        assert!(matches!(
            induced_q(&w, 9, &c).unwrap(),
            InducedQ::Inconclusive { .. }
        ));
        // x * x^{-3} = x^{-2}
        assert_eq!(
            w.multiply(&x, &c).unwrap(),
            InducedQ::Class(w.basis_class(-2, 0).unwrap())
        );
    }

    #[test]
    fn unstabilized_is_flagged() {
        let w = window(2, 2, 2, -8, -8);
        assert!(w.all_stabilized());
        let r = PolyRing::new(Field::with_default(2, 1).unwrap(), 2).unwrap();
        let s = Arc::new(InvariantRing::new(Group::trivial(&r)));
        let c = Arc::new(CechComplex::new(s, IdealSpec::variables(&r), 40).unwrap());
        let w = colimit_window(c, 2, (-8, -8), 9).unwrap();
        assert!(!w.entries()[0].stabilized);
        assert_eq!(w.entries()[0].instability, Some(Instability::TMaxReached));
    }
}
