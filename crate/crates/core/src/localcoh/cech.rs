use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::IdealSpec;
use crate::cartan_frac::Fraction;
use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::group_action::InvariantRing;
use crate::poly::{Matrix, Polynomial, RowEchelon, TaggedEchelon};

/// One summand `S_{n + t deg x_J}` of a cochain space.
#[derive(Clone, Debug)]
pub(crate) struct Block {
    pub mask: u32,
    /// Polynomial degree of the numerators; `None` when negative.
    pub degree: Option<u32>,
    pub offset: usize,
    pub len: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct Layout {
    pub blocks: Vec<Block>,
    pub dim: usize,
}

impl Layout {
    pub(crate) fn block(&self, mask: u32) -> Option<&Block> {
        self.blocks.iter().find(|b| b.mask == mask)
    }
}

/// Index sets of size `k` in `{0, .., m-1}` as bit masks, in increasing
/// order of mask value.
pub(crate) fn subsets(m: usize, k: usize) -> Vec<u32> {
    (0u32..1 << m)
        .filter(|s| s.count_ones() as usize == k)
        .collect()
}

pub(crate) fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|j| mask & (1 << j) != 0).collect()
}

/// Koszul cohomology in cochain degree `i`, internal degree `n` and
/// truncation `t`: cocycles modulo coboundaries, with a chosen set of
/// representative cocycles.
#[derive(Debug)]
pub struct KoszulPiece {
    pub(crate) index: usize,
    pub(crate) degree: i64,
    pub(crate) truncation: u32,
    pub(crate) layout: Layout,
    pub(crate) reps: Vec<Vec<Elem>>,
    pub(crate) boundaries: Vec<Vec<Elem>>,
    pub(crate) coords: TaggedEchelon,
}

impl KoszulPiece {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn cochain_dim(&self) -> usize {
        self.layout.dim
    }

    /// Representative cocycles, as coordinate vectors of the cochain space.
    pub fn representatives(&self) -> &[Vec<Elem>] {
        &self.reps
    }

    /// Class coordinates of a cochain, or `None` if it is not a cocycle.
    pub fn class_coords(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        self.coords.solve(v)
    }

    pub fn is_cocycle(&self, v: &[Elem]) -> bool {
        self.coords.contains(v)
    }
}

/// A Čech cochain component `s / (∏_{j ∈ J} x_j)^t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechComponent {
    pub indices: Vec<usize>,
    pub value: Fraction,
}

/// A Čech cochain listed by its nonzero components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechCocycle {
    pub components: Vec<CechComponent>,
}

/// The Koszul/Čech complexes of an ideal of `S`, with a cache of computed
/// cohomology cells keyed by `(i, n, t)`.
pub struct CechComplex {
    invariants: Arc<InvariantRing>,
    ideal: IdealSpec,
    degree_cap: u32,
    cells: Mutex<HashMap<(usize, i64, u32), Arc<KoszulPiece>>>,
}

impl std::fmt::Debug for CechComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CechComplex")
            .field("ideal", &self.ideal)
            .field("degree_cap", &self.degree_cap)
            .finish()
    }
}

impl CechComplex {
    pub fn new(invariants: Arc<InvariantRing>, ideal: IdealSpec, degree_cap: u32) -> Result<Self> {
        if ideal.ring() != invariants.ring() {
            return Err(Error::RingMismatch);
        }
        Ok(Self {
            invariants,
            ideal,
            degree_cap,
            cells: Mutex::new(HashMap::new()),
        })
    }

    pub fn invariants(&self) -> &Arc<InvariantRing> {
        &self.invariants
    }

    pub fn ideal(&self) -> &IdealSpec {
        &self.ideal
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    fn mask_degree(&self, mask: u32) -> i64 {
        mask_indices(mask)
            .into_iter()
            .map(|j| self.ideal.degrees()[j] as i64)
            .sum()
    }

    /// `∏_{j ∈ J} x_j`.
    pub(crate) fn mask_product(&self, mask: u32) -> Polynomial {
        let ring = self.invariants.ring();
        mask_indices(mask)
            .into_iter()
            .fold(ring.one(), |acc, j| &acc * &self.ideal.generators()[j])
    }

    pub(crate) fn layout(&self, k: usize, n: i64, t: u32) -> Result<Layout> {
        let m = self.ideal.len();
        let mut blocks = Vec::new();
        let mut offset = 0;
        if k <= m {
            for mask in subsets(m, k) {
                let e = n + t as i64 * self.mask_degree(mask);
                let (degree, len) = if e < 0 {
                    (None, 0)
                } else if e > self.degree_cap as i64 {
                    return Err(Error::CapExceeded {
                        what: "cochain degree",
                        value: e as u64,
                        cap: self.degree_cap as u64,
                    });
                } else {
                    (Some(e as u32), self.invariants.dim(e as u32))
                };
                blocks.push(Block {
                    mask,
                    degree,
                    offset,
                    len,
                });
                offset += len;
            }
        }
        Ok(Layout {
            blocks,
            dim: offset,
        })
    }

    /// Images of the basis vectors of `from` (cochain degree `k`) under the
    /// Koszul differential into `to` (cochain degree `k + 1`).
    fn differential_images(&self, from: &Layout, to: &Layout, t: u32) -> Result<Vec<Vec<Elem>>> {
        let field = self.invariants.field();
        let m = self.ideal.len();
        let powers: Vec<Polynomial> = self.ideal.generators().iter().map(|x| x.pow(t)).collect();
        let mut out = Vec::with_capacity(from.dim);
        for block in &from.blocks {
            let Some(e) = block.degree else { continue };
            let piece = self.invariants.piece(e);
            for b in piece.basis() {
                let mut v = vec![Elem::ZERO; to.dim];
                for j in (0..m).filter(|j| block.mask & (1 << j) == 0) {
                    let target = to
                        .block(block.mask | (1 << j))
                        .expect("target block exists");
                    let Some(te) = target.degree else { continue };
                    let prod = b * &powers[j];
                    let c = self.invariants.piece(te).coords(&prod)?;
                    let odd = (block.mask & ((1 << j) - 1)).count_ones() % 2 == 1;
                    for (k, x) in c.into_iter().enumerate() {
                        v[target.offset + k] = if odd { field.neg(x) } else { x };
                    }
                }
                out.push(v);
            }
        }
        Ok(out)
    }

    /// The cohomology cell `(i, n, t)`, computed on first use.
    pub fn cell(&self, i: usize, n: i64, t: u32) -> Result<Arc<KoszulPiece>> {
        if t == 0 {
            return Err(Error::InvalidInput(
                "truncation power must be positive".into(),
            ));
        }
        if let Some(c) = self
            .cells
            .lock()
            .expect("cell cache poisoned")
            .get(&(i, n, t))
        {
            return Ok(c.clone());
        }
        let cell = Arc::new(self.compute_cell(i, n, t)?);
        Ok(self
            .cells
            .lock()
            .expect("cell cache poisoned")
            .entry((i, n, t))
            .or_insert(cell)
            .clone())
    }

    fn compute_cell(&self, i: usize, n: i64, t: u32) -> Result<KoszulPiece> {
        let field = self.invariants.field();
        let layout = self.layout(i, n, t)?;
        let next = self.layout(i + 1, n, t)?;
        let dim = layout.dim;
        let cocycles: Vec<Vec<Elem>> = if next.dim == 0 {
            (0..dim)
                .map(|k| {
                    let mut v = vec![Elem::ZERO; dim];
                    v[k] = Elem::ONE;
                    v
                })
                .collect()
        } else if dim == 0 {
            Vec::new()
        } else {
            let imgs = self.differential_images(&layout, &next, t)?;
            Matrix::from_row_slices(field, next.dim, &imgs).left_kernel()
        };
        let boundary_images = if i == 0 || dim == 0 {
            Vec::new()
        } else {
            let prev = self.layout(i - 1, n, t)?;
            self.differential_images(&prev, &layout, t)?
        };
        let mut span = RowEchelon::from_vectors(field, dim, &boundary_images);
        let boundaries = span.basis().to_vec();
        let reps: Vec<Vec<Elem>> = cocycles.into_iter().filter(|z| span.insert(z)).collect();
        let mut coords = TaggedEchelon::new(field, dim, reps.len());
        let zero_tag = vec![Elem::ZERO; reps.len()];
        for b in &boundaries {
            coords.insert(b, &zero_tag);
        }
        for (k, z) in reps.iter().enumerate() {
            let mut tag = zero_tag.clone();
            tag[k] = Elem::ONE;
            coords.insert(z, &tag);
        }
        Ok(KoszulPiece {
            index: i,
            degree: n,
            truncation: t,
            layout,
            reps,
            boundaries,
            coords,
        })
    }

    /// Moves a cochain from truncation `from` to `to >= from` by
    /// multiplying each `J` component by `(∏_{j ∈ J} x_j)^{to - from}`.
    pub(crate) fn transport(
        &self,
        i: usize,
        n: i64,
        from: u32,
        to: u32,
        v: &[Elem],
    ) -> Result<Vec<Elem>> {
        if to == from {
            return Ok(v.to_vec());
        }
        let src = self.layout(i, n, from)?;
        let dst = self.layout(i, n, to)?;
        let mut out = vec![Elem::ZERO; dst.dim];
        for (sb, db) in src.blocks.iter().zip(&dst.blocks) {
            let Some(e) = sb.degree else { continue };
            let slice = &v[sb.offset..sb.offset + sb.len];
            if slice.iter().all(|c| c.is_zero()) {
                continue;
            }
            let s = self.invariants.piece(e).from_coords(slice);
            let moved = &s * &self.mask_product(sb.mask).pow(to - from);
            let de = db.degree.expect("degree grows with truncation");
            let c = self.invariants.piece(de).coords(&moved)?;
            out[db.offset..db.offset + db.len].copy_from_slice(&c);
        }
        Ok(out)
    }

    /// The Čech cochain of a coordinate vector at truncation `t`.
    pub fn cech_cocycle(&self, i: usize, n: i64, t: u32, v: &[Elem]) -> Result<CechCocycle> {
        let layout = self.layout(i, n, t)?;
        let mut components = Vec::new();
        for b in &layout.blocks {
            let Some(e) = b.degree else { continue };
            let slice = &v[b.offset..b.offset + b.len];
            if slice.iter().all(|c| c.is_zero()) {
                continue;
            }
            let s = self.invariants.piece(e).from_coords(slice);
            let exp = if b.mask == 0 { 0 } else { t };
            components.push(CechComponent {
                indices: mask_indices(b.mask),
                value: Fraction::raw(s, self.mask_product(b.mask), exp)?,
            });
        }
        Ok(CechCocycle { components })
    }

    /// Coordinates at truncation `t` of a family of fractions indexed by
    /// masks; each fraction must have base `∏_{j ∈ J} x_j` and exponent at
    /// most `t`, and degree `n`.
    pub(crate) fn coords_of_fractions(
        &self,
        i: usize,
        n: i64,
        t: u32,
        parts: &[(u32, Fraction)],
    ) -> Result<Vec<Elem>> {
        let layout = self.layout(i, n, t)?;
        let mut out = vec![Elem::ZERO; layout.dim];
        for (mask, u) in parts {
            if u.is_zero() {
                continue;
            }
            let block = layout
                .block(*mask)
                .ok_or_else(|| Error::Internal("component outside the cochain space".into()))?;
            let exp = if *mask == 0 { 0 } else { t };
            if u.exp() > exp {
                return Err(Error::Internal("fraction exceeds truncation".into()));
            }
            let num = u.num() * &u.base().pow(exp - u.exp());
            let e = block
                .degree
                .ok_or_else(|| Error::Internal("component of negative numerator degree".into()))?;
            let c = self
                .invariants
                .piece(e)
                .coords(&num)
                .map_err(|err| Error::Internal(format!("component not in S_{e}: {err}")))?;
            out[block.offset..block.offset + block.len].copy_from_slice(&c);
        }
        Ok(out)
    }

    /// Fractions of the nonzero components of a cochain, keyed by mask.
    pub(crate) fn to_fractions(
        &self,
        i: usize,
        n: i64,
        t: u32,
        v: &[Elem],
    ) -> Result<Vec<(u32, Fraction)>> {
        let layout = self.layout(i, n, t)?;
        let mut out = Vec::new();
        for b in &layout.blocks {
            let Some(e) = b.degree else { continue };
            let slice = &v[b.offset..b.offset + b.len];
            if slice.iter().all(|c| c.is_zero()) {
                continue;
            }
            let s = self.invariants.piece(e).from_coords(slice);
            let exp = if b.mask == 0 { 0 } else { t };
            out.push((b.mask, Fraction::raw(s, self.mask_product(b.mask), exp)?));
        }
        Ok(out)
    }

    /// Multiplies every component of a cochain at `(n, t)` by an invariant
    /// `f` of degree `e`, giving a cochain at `(n + e, t)`.
    pub(crate) fn multiply(
        &self,
        i: usize,
        n: i64,
        t: u32,
        f: &Polynomial,
        v: &[Elem],
    ) -> Result<Vec<Elem>> {
        let e = f.homogeneous_degree().unwrap_or(0) as i64;
        let src = self.layout(i, n, t)?;
        let dst = self.layout(i, n + e, t)?;
        let mut out = vec![Elem::ZERO; dst.dim];
        if f.is_zero() {
            return Ok(out);
        }
        for (sb, db) in src.blocks.iter().zip(&dst.blocks) {
            let Some(se) = sb.degree else { continue };
            let slice = &v[sb.offset..sb.offset + sb.len];
            if slice.iter().all(|c| c.is_zero()) {
                continue;
            }
            let s = self.invariants.piece(se).from_coords(slice);
            let de = db.degree.expect("degree grows with the multiplier");
            let c = self.invariants.piece(de).coords(&(&s * f))?;
            out[db.offset..db.offset + db.len].copy_from_slice(&c);
        }
        Ok(out)
    }
}

/// Koszul cohomology of `(x_1^t, ..., x_m^t)` on `S` in cochain degree `i`
/// and internal degree `n`.
pub fn koszul_cohomology(
    ideal: &IdealSpec,
    invariants: Arc<InvariantRing>,
    i: usize,
    t: u32,
    n: i64,
    degree_cap: u32,
) -> Result<Arc<KoszulPiece>> {
    CechComplex::new(invariants, ideal.clone(), degree_cap)?.cell(i, n, t)
}
