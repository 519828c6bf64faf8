//! Dense exact linear algebra and canonically represented subspaces.
//!
//! A [`Subspace`] always stores its basis as the reduced row echelon form of
//! any spanning set, so two subspaces are equal as sets iff they are equal as
//! values. All constructions downstream of this module (ideals, torsion
//! submodules, quotient rings) inherit structural equality from this choice.
//!
//! Row vectors are plain `Vec<Scalar>`; matrices are row-major. A matrix `A`
//! represents the map `x -> A x` on column vectors, but most of the engine
//! works with row-spans and kernels, which avoids fixing an orientation fight:
//! `kernel` returns row vectors `x` with `A x^T = 0`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scalar::{FieldDesc, Scalar};

// ---- Row-vector helpers ----

/// Componentwise sum of equal-length rows.
pub fn row_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Componentwise difference of equal-length rows.
pub fn row_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Row scaled by `c`.
pub fn row_scale(c: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| c * x).collect()
}

/// True iff every entry is zero.
pub fn row_is_zero(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

/// The zero row of length `n`.
pub fn zero_row(field: FieldDesc, n: usize) -> Vec<Scalar> {
    vec![field.zero(); n]
}

/// Standard basis row e_i of length `n`.
pub fn unit_row(field: FieldDesc, n: usize, i: usize) -> Vec<Scalar> {
    let mut r = zero_row(field, n);
    r[i] = field.one();
    r
}

/// Concatenation of two rows.
pub fn row_concat(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut r = Vec::with_capacity(a.len() + b.len());
    r.extend_from_slice(a);
    r.extend_from_slice(b);
    r
}

// ---- Matrices ----

/// A dense row-major matrix over a single exact field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    field: FieldDesc,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    /// Builds a matrix, validating that every entry belongs to `field`.
    pub fn new(field: FieldDesc, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(Error::DimMismatch(format!(
                "matrix data has {} entries, expected {}x{}",
                data.len(),
                rows,
                cols
            )));
        }
        if data.iter().any(|s| s.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(Mat { field, rows, cols, data })
    }

    /// Builds a matrix from equal-length rows (empty row list needs `cols`).
    pub fn from_rows(field: FieldDesc, cols: usize, rows: &[Vec<Scalar>]) -> Result<Mat> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimMismatch(String::from("ragged rows")));
            }
            data.extend_from_slice(r);
        }
        Mat::new(field, rows.len(), cols, data)
    }

    /// The `rows x cols` zero matrix.
    pub fn zero(field: FieldDesc, rows: usize, cols: usize) -> Mat {
        Mat { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    /// The `n x n` identity.
    pub fn identity(field: FieldDesc, n: usize) -> Mat {
        let mut m = Mat::zero(field, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = field.one();
        }
        m
    }

    /// Entry-wise construction.
    pub fn from_fn(
        field: FieldDesc,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { field, rows, cols, data }
    }

    pub fn field(&self) -> FieldDesc {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<Scalar> {
        self.row(i).to_vec()
    }

    /// All rows as owned vectors.
    pub fn rows_vec(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row_vec(i)).collect()
    }

    pub fn col_vec(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    /// Matrix sum; shapes must agree.
    pub fn add(&self, rhs: &Mat) -> Result<Mat> {
        if self.rows != rhs.rows || self.cols != rhs.cols || self.field != rhs.field {
            return Err(Error::DimMismatch(String::from("matrix addition")));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Ok(Mat { field: self.field, rows: self.rows, cols: self.cols, data })
    }

    /// Matrix difference; shapes must agree.
    pub fn sub(&self, rhs: &Mat) -> Result<Mat> {
        if self.rows != rhs.rows || self.cols != rhs.cols || self.field != rhs.field {
            return Err(Error::DimMismatch(String::from("matrix subtraction")));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Ok(Mat { field: self.field, rows: self.rows, cols: self.cols, data })
    }

    /// Matrix product; inner dimensions must agree.
    pub fn mul(&self, rhs: &Mat) -> Result<Mat> {
        if self.cols != rhs.rows || self.field != rhs.field {
            return Err(Error::DimMismatch(format!(
                "matrix product {}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Mat::zero(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let t = &(a * b) + out.at(i, j);
                    *out.at_mut(i, j) = t;
                }
            }
        }
        Ok(out)
    }

    /// Entry-wise scaling.
    pub fn scale(&self, c: &Scalar) -> Mat {
        Mat {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| c * x).collect(),
        }
    }

    /// Applies the matrix to a row vector on the left: `v * A^T`, i.e. the
    /// image of the vector `v` under the linear map with matrix `A` acting on
    /// coordinates `A v`. Input length must equal `cols`.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimMismatch(String::from("matrix apply")));
        }
        let mut out = zero_row(self.field, self.rows);
        for (i, slot) in out.iter_mut().enumerate() {
            let mut acc = self.field.zero();
            for j in 0..self.cols {
                let a = self.at(i, j);
                if !a.is_zero() && !v[j].is_zero() {
                    acc = &acc + &(a * &v[j]);
                }
            }
            *slot = acc;
        }
        Ok(out)
    }

    /// Stacks `self` on top of `other` (same width).
    pub fn stack(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.cols || self.field != other.field {
            return Err(Error::DimMismatch(String::from("vertical stack")));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Mat { field: self.field, rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Places `other` to the right of `self` (same height).
    pub fn augment(&self, other: &Mat) -> Result<Mat> {
        if self.rows != other.rows || self.field != other.field {
            return Err(Error::DimMismatch(String::from("horizontal augment")));
        }
        let mut data = Vec::with_capacity(self.data.len() + other.data.len());
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(Mat { field: self.field, rows: self.rows, cols: self.cols + other.cols, data })
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            // find a pivot in column c at or below row r
            let Some(pr) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m.at(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let t = &inv * m.at(r, j);
                *m.at_mut(r, j) = t;
            }
            for i in 0..m.rows {
                if i != r && !m.at(i, c).is_zero() {
                    let factor = m.at(i, c).clone();
                    for j in c..m.cols {
                        let t = m.at(i, j) - &(&factor * m.at(r, j));
                        *m.at_mut(i, j) = t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Solves `A x = b` for a single column `b` (given as a row vector of
    /// length `rows`). Returns `Ok(None)` when inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::DimMismatch(String::from("solve rhs length")));
        }
        let bmat = Mat::from_rows(self.field, self.rows, &[b.to_vec()])?.transpose();
        let aug = self.augment(&bmat)?;
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c == self.cols) {
            return Ok(None); // pivot in the rhs column: inconsistent
        }
        let mut x = zero_row(self.field, self.cols);
        for (row, &c) in pivots.iter().enumerate() {
            x[c] = r.at(row, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Row basis of the kernel `{x : A x = 0}` (x as row vectors of length
    /// `cols`), in RREF with respect to a deterministic free-variable order.
    pub fn kernel(&self) -> Mat {
        let (r, pivots) = self.rref();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = zero_row(self.field, self.cols);
            v[free] = self.field.one();
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = -&(r.at(row, free).clone());
            }
            rows.push(v);
        }
        let m = Mat::from_rows(self.field, self.cols, &rows).expect("kernel rows");
        m.rref().0.truncate_zero_rows()
    }

    /// Drops trailing all-zero rows (used after RREF).
    fn truncate_zero_rows(self) -> Mat {
        let mut keep = self.rows;
        while keep > 0 && row_is_zero(self.row(keep - 1)) {
            keep -= 1;
        }
        Mat {
            field: self.field,
            rows: keep,
            cols: self.cols,
            data: self.data[..keep * self.cols].to_vec(),
        }
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let aug = self.augment(&Mat::identity(self.field, self.rows)).expect("augment");
        let (r, pivots) = aug.rref();
        if pivots.len() != self.rows || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        Some(Mat::from_fn(self.field, self.rows, self.rows, |i, j| {
            r.at(i, self.cols + j).clone()
        }))
    }
}

// ---- Subspaces ----

/// A subspace of F^n in canonical form: the stored basis is the RREF row
/// basis, so `PartialEq` is equality of subspaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    field: FieldDesc,
    basis: Mat, // RREF, no zero rows
}

impl Subspace {
    /// The span of the rows of `m`.
    pub fn from_span(m: &Mat) -> Subspace {
        let b = m.rref().0.truncate_zero_rows();
        Subspace { ambient: m.cols(), field: m.field(), basis: b }
    }

    /// The span of the given row vectors inside F^ambient.
    pub fn from_rows(field: FieldDesc, ambient: usize, rows: &[Vec<Scalar>]) -> Result<Subspace> {
        Ok(Subspace::from_span(&Mat::from_rows(field, ambient, rows)?))
    }

    /// The zero subspace of F^ambient.
    pub fn zero(field: FieldDesc, ambient: usize) -> Subspace {
        Subspace { ambient, field, basis: Mat::zero(field, 0, ambient) }
    }

    /// All of F^ambient.
    pub fn full(field: FieldDesc, ambient: usize) -> Subspace {
        Subspace { ambient, field, basis: Mat::identity(field, ambient) }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> FieldDesc {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// The canonical (RREF) basis, one row per basis vector.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<Scalar>> {
        self.basis.rows_vec()
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            let row = self.basis.row(i);
            let c = row.iter().position(|x| !x.is_zero()).expect("no zero basis rows");
            out.push(c);
        }
        out
    }

    /// Reduces `v` modulo the subspace: the unique representative of `v + W`
    /// that vanishes on the pivot columns of `W`.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        debug_assert_eq!(v.len(), self.ambient);
        let mut w = v.to_vec();
        for (i, &c) in self.pivots().iter().enumerate() {
            if !w[c].is_zero() {
                let factor = w[c].clone();
                let row = self.basis.row(i);
                for (slot, b) in w.iter_mut().zip(row) {
                    *slot = &*slot - &(&factor * b);
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        row_is_zero(&self.reduce(v))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    /// Coordinates of `v` in the canonical basis, `None` if `v` is outside.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        // in RREF the coordinate along basis row i is just v at its pivot
        let mut out = Vec::with_capacity(self.dim());
        let mut w = v.to_vec();
        for (i, &c) in self.pivots().iter().enumerate() {
            let coef = w[c].clone();
            if !coef.is_zero() {
                let row = self.basis.row(i);
                for (slot, b) in w.iter_mut().zip(row) {
                    *slot = &*slot - &(&coef * b);
                }
            }
            out.push(coef);
        }
        Some(out)
    }

    /// The vector with the given canonical-basis coordinates.
    pub fn from_coords(&self, coords: &[Scalar]) -> Vec<Scalar> {
        debug_assert_eq!(coords.len(), self.dim());
        let mut v = zero_row(self.field, self.ambient);
        for (c, i) in coords.iter().zip(0..self.dim()) {
            if !c.is_zero() {
                let row = self.basis.row(i);
                for (slot, b) in v.iter_mut().zip(row) {
                    *slot = &*slot + &(c * b);
                }
            }
        }
        v
    }

    /// Sum of subspaces of the same ambient space.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient || self.field != other.field {
            return Err(Error::DimMismatch(String::from("subspace sum")));
        }
        Subspace::from_span(&self.basis.stack(&other.basis)?).into_ok()
    }

    /// Intersection of subspaces of the same ambient space.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient || self.field != other.field {
            return Err(Error::DimMismatch(String::from("subspace intersection")));
        }
        // Solve a U + b V = 0: kernel of [U^T | V^T] split into (a, b); the
        // intersection is spanned by the a-parts applied to U.
        let u = &self.basis;
        let v = &other.basis;
        if u.rows() == 0 || v.rows() == 0 {
            return Ok(Subspace::zero(self.field, self.ambient));
        }
        let stacked = u.stack(v)?.transpose();
        let ker = stacked.kernel(); // rows (a | b) with a U + b V = 0... sign: a U = -b V
        let mut rows = Vec::new();
        for i in 0..ker.rows() {
            let coeffs = &ker.row(i)[..u.rows()];
            let mut vec = zero_row(self.field, self.ambient);
            for (c, r) in coeffs.iter().zip(0..u.rows()) {
                if !c.is_zero() {
                    for (slot, b) in vec.iter_mut().zip(u.row(r)) {
                        *slot = &*slot + &(c * b);
                    }
                }
            }
            rows.push(vec);
        }
        Subspace::from_rows(self.field, self.ambient, &rows)
    }

    /// Image of the subspace under the linear map `v -> A v` (A acts on
    /// coordinate columns; rows of the basis are mapped by `apply`).
    pub fn image_under(&self, a: &Mat) -> Result<Subspace> {
        let mut rows = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            rows.push(a.apply(self.basis.row(i))?);
        }
        Subspace::from_rows(self.field, a.rows(), &rows)
    }

    /// The preimage `{x : A x in self}` of this subspace under `v -> A v`.
    pub fn preimage_under(&self, a: &Mat) -> Result<Subspace> {
        if a.rows() != self.ambient || a.field() != self.field {
            return Err(Error::DimMismatch(String::from("preimage operator shape")));
        }
        // x is in the preimage iff project(A x) = 0
        let qm = QuotientMap::new(self.clone());
        let proj = Mat::from_fn(self.field, qm.dim(), self.ambient, |i, j| {
            qm.project(&unit_row(self.field, self.ambient, j))[i].clone()
        });
        Ok(Subspace::from_span(&proj.mul(a)?.kernel()))
    }

    /// Matrix of the operator `v -> A v` restricted to this subspace, in the
    /// canonical basis (column convention). Fails when the subspace is not
    /// invariant.
    pub fn restrict(&self, a: &Mat) -> Result<Mat> {
        let mut out = Mat::zero(self.field, self.dim(), self.dim());
        for j in 0..self.dim() {
            let w = a.apply(self.basis.row(j))?;
            let coords = self.coords(&w).ok_or_else(|| {
                Error::NotStable(String::from("subspace is not invariant under the operator"))
            })?;
            for (i, c) in coords.into_iter().enumerate() {
                *out.at_mut(i, j) = c;
            }
        }
        Ok(out)
    }
}

trait IntoOk<T> {
    fn into_ok(self) -> Result<T>;
}

impl IntoOk<Subspace> for Subspace {
    fn into_ok(self) -> Result<Subspace> {
        Ok(self)
    }
}

// ---- Quotient spaces ----

/// The quotient F^n / W with canonical coordinates: entries of the reduced
/// representative at the non-pivot columns of `W`, in increasing column order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMap {
    sub: Subspace,
    /// Non-pivot columns of `sub`, the coordinate positions of the quotient.
    free_cols: Vec<usize>,
}

impl QuotientMap {
    pub fn new(sub: Subspace) -> QuotientMap {
        let pivots = sub.pivots();
        let mut is_pivot = vec![false; sub.ambient()];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free_cols = (0..sub.ambient()).filter(|&c| !is_pivot[c]).collect();
        QuotientMap { sub, free_cols }
    }

    pub fn sub(&self) -> &Subspace {
        &self.sub
    }

    /// Dimension of the quotient.
    pub fn dim(&self) -> usize {
        self.free_cols.len()
    }

    pub fn ambient(&self) -> usize {
        self.sub.ambient()
    }

    /// Coordinates of `v + W` in the quotient.
    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        let r = self.sub.reduce(v);
        self.free_cols.iter().map(|&c| r[c].clone()).collect()
    }

    /// The canonical representative with the given quotient coordinates.
    pub fn lift(&self, coords: &[Scalar]) -> Vec<Scalar> {
        debug_assert_eq!(coords.len(), self.dim());
        let mut v = zero_row(self.sub.field(), self.ambient());
        for (x, &c) in coords.iter().zip(&self.free_cols) {
            v[c] = x.clone();
        }
        v
    }

    /// Matrix of the induced map on the quotient for an ambient linear map
    /// `A` that stabilizes `W` (checked; returns `NotStable` otherwise).
    pub fn induced(&self, a: &Mat) -> Result<Mat> {
        // check stability first
        for i in 0..self.sub.dim() {
            let img = a.apply(self.sub.basis().row(i))?;
            if !self.sub.contains(&img) {
                return Err(Error::NotStable(String::from("map does not preserve the subspace")));
            }
        }
        let mut m = Mat::zero(self.sub.field(), self.dim(), self.dim());
        for (j, &c) in self.free_cols.iter().enumerate() {
            let e = unit_row(self.sub.field(), self.ambient(), c);
            let img = self.project(&a.apply(&e)?);
            for (i, x) in img.into_iter().enumerate() {
                *m.at_mut(i, j) = x;
            }
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn gf2() -> FieldDesc {
        FieldDesc::gf(2).unwrap()
    }

    fn m(field: FieldDesc, rows: usize, cols: usize, ints: &[i64]) -> Mat {
        let data = ints.iter().map(|&n| field.from_i64(n)).collect();
        Mat::new(field, rows, cols, data).unwrap()
    }

    #[test]
    fn solve_example_over_gf2() {
        // [[1,1],[0,1]] x = (0,1) has the unique solution (1,1); oracle: all
        // four candidate vectors checked by brute force.
        let f = gf2();
        let a = m(f, 2, 2, &[1, 1, 0, 1]);
        let b = vec![f.from_i64(0), f.from_i64(1)];
        let x = a.solve(&b).unwrap().unwrap();
        assert_eq!(x, vec![f.one(), f.one()]);
        let mut solutions = 0;
        for bits in 0..4u8 {
            let cand = vec![f.from_i64((bits & 1) as i64), f.from_i64((bits >> 1) as i64)];
            if a.apply(&cand).unwrap() == b {
                solutions += 1;
                assert_eq!(cand, x);
            }
        }
        assert_eq!(solutions, 1);
    }

    #[test]
    fn kernel_of_sum_functional_over_gf2() {
        // kernel of [1 1 0] over GF(2): 2-dimensional, contains (1,1,0);
        // oracle: brute force over all 8 vectors.
        let f = gf2();
        let a = m(f, 1, 3, &[1, 1, 0]);
        let k = a.kernel();
        let ks = Subspace::from_span(&k);
        assert_eq!(ks.dim(), 2);
        let mut members = 0;
        for bits in 0..8u8 {
            let v: Vec<Scalar> =
                (0..3).map(|i| f.from_i64(((bits >> i) & 1) as i64)).collect();
            let in_kernel = row_is_zero(&a.apply(&v).unwrap());
            assert_eq!(ks.contains(&v), in_kernel);
            if in_kernel {
                members += 1;
            }
        }
        assert_eq!(members, 4); // 2^2 vectors in a 2-dim GF(2)-space
        assert!(ks.contains(&[f.one(), f.one(), f.zero()]));
    }

    #[test]
    fn rref_is_idempotent_and_rank_nullity_holds() {
        let f = FieldDesc::Rat;
        let a = m(f, 3, 4, &[2, 4, 0, 6, 1, 2, 1, 4, 0, 0, 3, 3]);
        let (r, pivots) = a.rref();
        let (r2, pivots2) = r.rref();
        assert_eq!(r, r2);
        assert_eq!(pivots, pivots2);
        assert_eq!(a.rank() + Subspace::from_span(&a.kernel()).dim(), a.cols());
    }

    #[test]
    fn inconsistent_system_reports_none() {
        let f = FieldDesc::Rat;
        let a = m(f, 2, 1, &[1, 1]);
        let b = vec![f.from_i64(0), f.from_i64(1)];
        assert_eq!(a.solve(&b).unwrap(), None);
    }

    #[test]
    fn subspace_canonical_equality() {
        let f = FieldDesc::Rat;
        // same plane in Q^3 described by two different spanning sets
        let u = Subspace::from_rows(f, 3, &[
            vec![f.from_i64(1), f.from_i64(1), f.from_i64(0)],
            vec![f.from_i64(0), f.from_i64(2), f.from_i64(2)],
        ])
        .unwrap();
        let v = Subspace::from_rows(f, 3, &[
            vec![f.from_i64(1), f.from_i64(3), f.from_i64(2)],
            vec![f.from_i64(2), f.from_i64(0), f.from_i64(-2)],
        ])
        .unwrap();
        assert_eq!(u, v);
        assert_eq!(u.dim(), 2);
    }

    #[test]
    fn sum_intersection_modular_dims() {
        // dim(U + V) + dim(U ∩ V) = dim U + dim V on a GF(3) example
        let f = FieldDesc::gf(3).unwrap();
        let u = Subspace::from_rows(f, 4, &[
            vec![f.from_i64(1), f.from_i64(0), f.from_i64(1), f.from_i64(0)],
            vec![f.from_i64(0), f.from_i64(1), f.from_i64(2), f.from_i64(0)],
        ])
        .unwrap();
        let v = Subspace::from_rows(f, 4, &[
            vec![f.from_i64(1), f.from_i64(1), f.from_i64(0), f.from_i64(0)],
            vec![f.from_i64(0), f.from_i64(0), f.from_i64(0), f.from_i64(1)],
        ])
        .unwrap();
        let s = u.sum(&v).unwrap();
        let i = u.intersect(&v).unwrap();
        assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
        for r in 0..i.dim() {
            let x = i.basis().row(r);
            assert!(u.contains(x) && v.contains(x));
        }
    }

    #[test]
    fn quotient_map_roundtrip() {
        let f = FieldDesc::Rat;
        let w = Subspace::from_rows(f, 3, &[vec![f.one(), f.one(), f.zero()]]).unwrap();
        let q = QuotientMap::new(w);
        assert_eq!(q.dim(), 2);
        let v = vec![f.from_i64(3), f.from_i64(5), f.from_i64(7)];
        let c = q.project(&v);
        let lifted = q.lift(&c);
        // lifted differs from v by an element of W
        let diff = row_sub(&v, &lifted);
        assert!(q.sub().contains(&diff));
        // projection is linear and kills W exactly
        assert!(row_is_zero(&q.project(q.sub().basis().row(0))));
    }

    #[test]
    fn inverse_roundtrip() {
        let f = FieldDesc::gf(5).unwrap();
        let a = m(f, 3, 3, &[1, 2, 0, 0, 1, 3, 4, 0, 2]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Mat::identity(f, 3));
        let singular = m(f, 2, 2, &[1, 2, 2, 4]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn mixed_field_rejected() {
        let f = gf2();
        let bad = Mat::new(f, 1, 2, vec![f.one(), FieldDesc::Rat.one()]);
        assert_eq!(bad.unwrap_err(), Error::FieldMismatch);
    }
}
