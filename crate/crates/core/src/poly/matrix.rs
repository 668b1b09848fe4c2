use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

/// Dense matrix over GF(q), row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Matrix {}x{} over {:?}",
            self.rows, self.cols, self.field
        )?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| self.field.display(*e)).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// `dst += c * src`, entrywise.
#[inline]
pub(crate) fn axpy(field: &Field, dst: &mut [Elem], c: Elem, src: &[Elem]) {
    if c.is_zero() {
        return;
    }
    if c == Elem::ONE {
        for (d, s) in dst.iter_mut().zip(src) {
            if !s.is_zero() {
                *d = field.add(*d, *s);
            }
        }
    } else {
        for (d, s) in dst.iter_mut().zip(src) {
            if !s.is_zero() {
                *d = field.add(*d, field.mul(c, *s));
            }
        }
    }
}

#[inline]
fn scale_in_place(field: &Field, v: &mut [Elem], c: Elem) {
    if c == Elem::ONE {
        return;
    }
    for x in v.iter_mut() {
        *x = field.mul(*x, c);
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Self {
            field: field.clone(),
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Elem>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix with `cols` columns built from row vectors; `rows` may be empty.
    pub fn from_row_slices(field: &Field, cols: usize, rows: &[Vec<Elem>]) -> Self {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            m.row_mut(i).copy_from_slice(r);
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Elem] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(&self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                let (dst, src) = (r * out.cols, k * other.cols);
                axpy(
                    &self.field,
                    &mut out.data[dst..dst + other.cols],
                    a,
                    &other.data[src..src + other.cols],
                );
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(v).fold(Elem::ZERO, |acc, (a, b)| {
                    self.field.add(acc, self.field.mul(*a, *b))
                })
            })
            .collect())
    }

    /// Reduced row echelon form of a copy, with the pivot column of each
    /// nonzero row.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let field = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..cols {
            if prow == self.rows {
                break;
            }
            let Some(found) = (prow..self.rows).find(|&r| !self.get(r, c).is_zero()) else {
                continue;
            };
            if found != prow {
                for k in 0..cols {
                    self.data.swap(found * cols + k, prow * cols + k);
                }
            }
            let inv = field.inv(self.get(prow, c)).expect("pivot is nonzero");
            scale_in_place(&field, self.row_mut(prow), inv);
            let pivot_row: Vec<Elem> = self.row(prow).to_vec();
            for r in 0..self.rows {
                if r == prow {
                    continue;
                }
                let e = self.get(r, c);
                if !e.is_zero() {
                    axpy(&field, self.row_mut(r), field.neg(e), &pivot_row);
                }
            }
            pivots.push(c);
            prow += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space `{ v : M v = 0 }`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Elem>> {
        let (r, pivots) = self.rref();
        let field = &self.field;
        let mut is_pivot = vec![None; self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(i);
        }
        (0..self.cols)
            .filter(|&c| is_pivot[c].is_none())
            .map(|free| {
                let mut v = vec![Elem::ZERO; self.cols];
                v[free] = Elem::ONE;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = field.neg(r.get(i, free));
                }
                v
            })
            .collect()
    }

    /// Basis of the left null space `{ c : c M = 0 }`.
    pub fn left_kernel(&self) -> Vec<Vec<Elem>> {
        self.transpose().kernel()
    }

    pub fn determinant(&self) -> Result<Elem> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let field = self.field.clone();
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Elem::ONE;
        for c in 0..n {
            let Some(found) = (c..n).find(|&r| !m.get(r, c).is_zero()) else {
                return Ok(Elem::ZERO);
            };
            if found != c {
                for k in 0..n {
                    m.data.swap(found * n + k, c * n + k);
                }
                det = field.neg(det);
            }
            let pivot = m.get(c, c);
            det = field.mul(det, pivot);
            let inv = field.inv(pivot)?;
            let pivot_row: Vec<Elem> = m.row(c).to_vec();
            for r in c + 1..n {
                let e = m.get(r, c);
                if !e.is_zero() {
                    axpy(
                        &field,
                        m.row_mut(r),
                        field.neg(field.mul(e, inv)),
                        &pivot_row,
                    );
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::NotInvertible);
        }
        let n = self.rows;
        let mut aug = Self::zeros(&self.field, n, 2 * n);
        for r in 0..n {
            aug.row_mut(r)[..n].copy_from_slice(self.row(r));
            aug.set(r, n + r, Elem::ONE);
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::NotInvertible);
        }
        let mut inv = Self::zeros(&self.field, n, n);
        for r in 0..n {
            inv.row_mut(r).copy_from_slice(&aug.row(r)[n..]);
        }
        Ok(inv)
    }
}

/// Incrementally built row echelon basis of a subspace, where every stored
/// row also records which combination of tagged input vectors produced it.
///
/// Inserting vectors `b_1, b_2, ...` with tags `τ_1, τ_2, ...` lets
/// [`TaggedEchelon::solve`] return, for any `v` in the span, the tag
/// combination `Σ c_k τ_k` of some representation `v = Σ c_k b_k`. Giving
/// a subspace `B` zero tags and complement vectors unit tags turns `solve`
/// into coordinates modulo `B`.
#[derive(Clone, Debug)]
pub struct TaggedEchelon {
    field: Field,
    cols: usize,
    ntags: usize,
    rows: Vec<Vec<Elem>>,
    tags: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl TaggedEchelon {
    pub fn new(field: &Field, cols: usize, ntags: usize) -> Self {
        Self {
            field: field.clone(),
            cols,
            ntags,
            rows: Vec::new(),
            tags: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn reduce_with_tags(&self, v: &mut [Elem], tag: &mut [Elem]) {
        for ((row, t), &p) in self.rows.iter().zip(&self.tags).zip(&self.pivots) {
            let c = v[p];
            if !c.is_zero() {
                let neg = self.field.neg(c);
                axpy(&self.field, v, neg, row);
                axpy(&self.field, tag, neg, t);
            }
        }
    }

    /// Inserts `v` with the given tag. Returns `true` if `v` enlarged the
    /// span.
    pub fn insert(&mut self, v: &[Elem], tag: &[Elem]) -> bool {
        assert_eq!(v.len(), self.cols);
        assert_eq!(tag.len(), self.ntags);
        let mut v = v.to_vec();
        let mut t = tag.to_vec();
        self.reduce_with_tags(&mut v, &mut t);
        match v.iter().position(|e| !e.is_zero()) {
            None => false,
            Some(p) => {
                let inv = self.field.inv(v[p]).expect("nonzero pivot");
                scale_in_place(&self.field, &mut v, inv);
                scale_in_place(&self.field, &mut t, inv);
                self.rows.push(v);
                self.tags.push(t);
                self.pivots.push(p);
                true
            }
        }
    }

    /// Tag combination for `v`, or `None` when `v` is outside the span.
    pub fn solve(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        let mut r = v.to_vec();
        let mut t = vec![Elem::ZERO; self.ntags];
        self.reduce_with_tags(&mut r, &mut t);
        if r.iter().all(|e| e.is_zero()) {
            Some(t.iter().map(|e| self.field.neg(*e)).collect())
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        let mut r = v.to_vec();
        let mut t = vec![Elem::ZERO; self.ntags];
        self.reduce_with_tags(&mut r, &mut t);
        r.iter().all(|e| e.is_zero())
    }
}

/// Row echelon basis of a subspace without tag bookkeeping.
#[derive(Clone, Debug)]
pub struct RowEchelon(TaggedEchelon);

impl RowEchelon {
    pub fn new(field: &Field, cols: usize) -> Self {
        Self(TaggedEchelon::new(field, cols, 0))
    }

    pub fn from_vectors<'a>(
        field: &Field,
        cols: usize,
        vs: impl IntoIterator<Item = &'a Vec<Elem>>,
    ) -> Self {
        let mut e = Self::new(field, cols);
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn insert(&mut self, v: &[Elem]) -> bool {
        self.0.insert(v, &[])
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        self.0.contains(v)
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    /// The stored echelon rows.
    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.0.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.0.pivots
    }
}
