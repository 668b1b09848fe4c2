//! Finite linear groups acting on polynomial rings, and the graded pieces
//! of their invariant rings.
//!
//! A matrix `g` acts by the substitution `x_i -> sum_j g[i][j] x_j`, i.e.
//! the column of variables is replaced by `g` times itself. With this
//! convention `act(g, act(h, f)) = act(h * g, f)`; acting by the transpose
//! (or the inverse) of `g` instead gives a left action. All three
//! conventions have the same invariants.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::poly::{Matrix, PolyRing, Polynomial, RowEchelon};

/// Default bound on the size of a computed group closure.
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

/// An invertible `d x d` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    matrix: Matrix,
}

impl GroupElement {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows(),
                found: matrix.cols(),
            });
        }
        if matrix.determinant()?.is_zero() {
            return Err(Error::NotInvertible);
        }
        Ok(Self { matrix })
    }

    pub fn identity(field: &Field, d: usize) -> Self {
        Self {
            matrix: Matrix::identity(field, d),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        Self {
            matrix: self
                .matrix
                .mul(&other.matrix)
                .expect("compatible group elements"),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        Self {
            matrix: self
                .matrix
                .inverse()
                .expect("group elements are invertible"),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == Matrix::identity(self.matrix.field(), self.dim())
    }

    fn key(&self) -> Vec<Elem> {
        (0..self.dim())
            .flat_map(|r| self.matrix.row(r).to_vec())
            .collect()
    }

    /// Images of the variables under the substitution.
    fn variable_images(&self, ring: &PolyRing) -> Vec<Polynomial> {
        let vars = ring.vars();
        (0..self.dim())
            .map(|i| {
                let mut img = ring.zero();
                for (j, v) in vars.iter().enumerate() {
                    let c = self.matrix.get(i, j);
                    if !c.is_zero() {
                        img = &img + &v.scale(c);
                    }
                }
                img
            })
            .collect()
    }
}

/// Applies `g` to `f` by linear substitution of the variables.
pub fn act(g: &GroupElement, f: &Polynomial) -> Result<Polynomial> {
    let ring = f.ring();
    if g.dim() != ring.nvars() {
        return Err(Error::DimensionMismatch {
            expected: ring.nvars(),
            found: g.dim(),
        });
    }
    if g.matrix.field() != ring.field() {
        return Err(Error::FieldMismatch);
    }
    f.substitute(&g.variable_images(ring))
}

/// A finite subgroup of `GL(d, q)` given by generators, with its full
/// element list.
#[derive(Clone, Debug)]
pub struct Group {
    ring: PolyRing,
    generators: Vec<GroupElement>,
    elements: Vec<GroupElement>,
}

impl Group {
    /// Breadth-first closure of the generators.
    pub fn close(ring: &PolyRing, generators: Vec<GroupElement>, cap: usize) -> Result<Self> {
        let d = ring.nvars();
        for g in &generators {
            if g.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: g.dim(),
                });
            }
            if g.matrix.field() != ring.field() {
                return Err(Error::FieldMismatch);
            }
        }
        let id = GroupElement::identity(ring.field(), d);
        let mut seen: HashSet<Vec<Elem>> = HashSet::new();
        seen.insert(id.key());
        let mut elements = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(h) = queue.pop_front() {
            for g in &generators {
                let hg = h.compose(g);
                if seen.insert(hg.key()) {
                    if elements.len() >= cap {
                        return Err(Error::GroupTooLarge { cap });
                    }
                    elements.push(hg.clone());
                    queue.push_back(hg);
                }
            }
        }
        Ok(Self {
            ring: ring.clone(),
            generators,
            elements,
        })
    }

    pub fn trivial(ring: &PolyRing) -> Self {
        Self::close(ring, Vec::new(), 1).expect("trivial group")
    }

    /// `GL(d, q)`, generated by `diag(w, 1, ..., 1)` for a primitive `w`
    /// and the adjacent elementary transvections `I + c E_ij` with `c`
    /// running over the power basis of GF(q) over GF(p).
    pub fn general_linear(ring: &PolyRing, cap: usize) -> Result<Self> {
        Self::close(
            ring,
            general_linear_generators(ring.field(), ring.nvars()),
            cap,
        )
    }

    /// The cyclic group of order `p` generated by the transvection `x -> x + y`.
    pub fn cyclic_transvection(ring: &PolyRing) -> Result<Self> {
        let d = ring.nvars();
        if d < 2 {
            return Err(Error::InvalidInput(
                "a transvection needs dimension at least 2".into(),
            ));
        }
        let mut m = Matrix::identity(ring.field(), d);
        m.set(0, 1, Elem::ONE);
        Self::close(ring, vec![GroupElement::new(m)?], DEFAULT_CLOSURE_CAP)
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn field(&self) -> &Field {
        self.ring.field()
    }

    pub fn dim(&self) -> usize {
        self.ring.nvars()
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(GroupElement::is_identity)
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements.iter().any(|h| h == g)
    }

    /// Fixed by every generator (hence by the whole group).
    pub fn is_invariant(&self, f: &Polynomial) -> Result<bool> {
        for g in &self.generators {
            if act(g, f)? != *f {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The same group with its full element list used as generating set.
    pub fn with_all_elements_as_generators(&self) -> Self {
        Self {
            ring: self.ring.clone(),
            generators: self.elements.clone(),
            elements: self.elements.clone(),
        }
    }
}

pub fn general_linear_generators(field: &Field, d: usize) -> Vec<GroupElement> {
    let mut gens = Vec::new();
    let w = field.primitive_element();
    if w != Elem::ONE {
        let mut m = Matrix::identity(field, d);
        m.set(0, 0, w);
        gens.push(GroupElement { matrix: m });
    }
    let t = field.generator();
    let basis: Vec<Elem> = (0..field.s()).map(|k| field.pow(t, k as u64)).collect();
    for i in 0..d.saturating_sub(1) {
        for &c in &basis {
            for (r, col) in [(i, i + 1), (i + 1, i)] {
                let mut m = Matrix::identity(field, d);
                m.set(r, col, c);
                gens.push(GroupElement { matrix: m });
            }
        }
    }
    gens
}

/// `|GL(d, q)| = prod_{i<d} (q^d - q^i)`.
pub fn general_linear_order(q: u64, d: u32) -> u64 {
    (0..d).map(|i| q.pow(d) - q.pow(i)).product()
}

/// A basis of the invariants of one degree, kept in reduced row echelon
/// form over the monomial basis so coordinates can be read off at pivots.
#[derive(Debug)]
pub struct InvariantPiece {
    degree: u32,
    ring: PolyRing,
    basis: Vec<Polynomial>,
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
    /// The piece is all of `R_n` and `rows` is the identity.
    full: bool,
}

impl InvariantPiece {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    /// Coordinates of `f` in [`InvariantPiece::basis`]; fails with
    /// [`Error::NotInvariant`] when `f` is not in this piece.
    pub fn coords(&self, f: &Polynomial) -> Result<Vec<Elem>> {
        let v = self.ring.coords(f, self.degree)?;
        if self.full {
            return Ok(v);
        }
        let c: Vec<Elem> = self.pivots.iter().map(|&p| v[p]).collect();
        let field = self.ring.field();
        let mut check = vec![Elem::ZERO; v.len()];
        for (ci, row) in c.iter().zip(&self.rows) {
            crate::poly::matrix_axpy(field, &mut check, *ci, row);
        }
        if check == v {
            Ok(c)
        } else {
            Err(Error::NotInvariant)
        }
    }

    pub fn from_coords(&self, c: &[Elem]) -> Polynomial {
        if self.full {
            return self.ring.from_coords(c, self.degree);
        }
        let field = self.ring.field();
        let mut v = vec![Elem::ZERO; self.ring.degree_basis(self.degree).len()];
        for (ci, row) in c.iter().zip(&self.rows) {
            crate::poly::matrix_axpy(field, &mut v, *ci, row);
        }
        self.ring.from_coords(&v, self.degree)
    }
}

/// `g` applied to every monomial of degree `n`, sharing powers of the
/// variable images.
fn act_on_degree(g: &GroupElement, ring: &PolyRing, n: u32) -> Vec<Polynomial> {
    let images = g.variable_images(ring);
    let mut powers: Vec<Vec<Polynomial>> = images
        .iter()
        .map(|img| {
            let mut v = vec![ring.one()];
            for k in 1..=n as usize {
                let next = &v[k - 1] * img;
                v.push(next);
            }
            v
        })
        .collect();
    let basis = ring.degree_basis(n);
    let out = basis
        .monomials
        .iter()
        .map(|m| {
            let mut acc = ring.one();
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exponent(i) as usize;
                if e > 0 {
                    acc = &acc * &pw[e];
                }
            }
            acc
        })
        .collect();
    out
}

/// `S = R^G`, materialized one graded piece at a time. Pieces are cached.
pub struct InvariantRing {
    group: Group,
    pieces: Mutex<HashMap<u32, Arc<InvariantPiece>>>,
}

impl std::fmt::Debug for InvariantRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "InvariantRing(order {})", self.group.order())
    }
}

impl InvariantRing {
    pub fn new(group: Group) -> Self {
        Self {
            group,
            pieces: Mutex::new(HashMap::new()),
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn ring(&self) -> &PolyRing {
        self.group.ring()
    }

    pub fn field(&self) -> &Field {
        self.group.field()
    }

    pub fn piece(&self, n: u32) -> Arc<InvariantPiece> {
        if let Some(p) = self.pieces.lock().expect("cache poisoned").get(&n) {
            return p.clone();
        }
        let piece = Arc::new(compute_piece(&self.group, n));
        self.pieces
            .lock()
            .expect("cache poisoned")
            .entry(n)
            .or_insert(piece)
            .clone()
    }

    pub fn dim(&self, n: u32) -> usize {
        self.piece(n).dim()
    }

    /// The degree-`m` part of the ideal of `S` generated by `generators`,
    /// spanned by `h * f` with `h` running over invariants of complementary
    /// degree. Vectors are monomial coordinates of `R_m`.
    pub fn ideal_piece(&self, generators: &[Polynomial], m: u32) -> Result<RowEchelon> {
        let ring = self.ring();
        let mut span = RowEchelon::new(ring.field(), ring.degree_basis(m).len());
        for f in generators {
            if f.is_zero() {
                continue;
            }
            let deg = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
            if deg > m {
                continue;
            }
            for h in self.piece(m - deg).basis() {
                span.insert(&ring.coords(&(h * f), m)?);
            }
        }
        Ok(span)
    }
}

fn compute_piece(group: &Group, n: u32) -> InvariantPiece {
    let ring = group.ring().clone();
    let field = ring.field().clone();
    let size = ring.degree_basis(n).len();
    let active: Vec<&GroupElement> = group
        .generators
        .iter()
        .filter(|g| !g.is_identity())
        .collect();
    let (rows, pivots) = if active.is_empty() {
        let rows: Vec<Vec<Elem>> = (0..size)
            .map(|k| {
                let mut v = vec![Elem::ZERO; size];
                v[k] = Elem::ONE;
                v
            })
            .collect();
        (rows, (0..size).collect())
    } else {
        // stack (g - I) over the generators and take the null space
        let mut stacked = Matrix::zeros(&field, active.len() * size, size);
        for (gi, g) in active.iter().enumerate() {
            for (k, img) in act_on_degree(g, &ring, n).iter().enumerate() {
                let v = ring.coords(img, n).expect("action preserves degree");
                for (r, e) in v.into_iter().enumerate() {
                    stacked.set(gi * size + r, k, e);
                }
                let diag = stacked.get(gi * size + k, k);
                stacked.set(gi * size + k, k, field.sub(diag, Elem::ONE));
            }
        }
        let kernel = stacked.kernel();
        if kernel.is_empty() {
            (Vec::new(), Vec::new())
        } else {
            let (r, pivots) = Matrix::from_rows(&field, kernel)
                .expect("uniform rows")
                .rref();
            let rows = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
            (rows, pivots)
        }
    };
    let basis = rows.iter().map(|v| ring.from_coords(v, n)).collect();
    let full = rows.len() == size;
    InvariantPiece {
        degree: n,
        ring,
        basis,
        rows,
        pivots,
        full,
    }
}

/// A basis of the degree-`n` invariants of `group`.
pub fn invariant_basis(group: &Group, n: u32) -> Vec<Polynomial> {
    compute_piece(group, n).basis
}
