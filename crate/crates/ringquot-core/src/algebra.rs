//! Finite-dimensional unital associative algebras presented by structure
//! constants, together with the standard constructors (full matrix algebras,
//! matrix-pattern subalgebras, path algebras of acyclic quivers, incidence
//! algebras of finite posets, opposites, enveloping algebras) and unital ring
//! extensions between them.
//!
//! Elements are coordinate rows in the chosen basis. The multiplication table
//! stores `e_i * e_j` for all basis pairs. [`Algebra::new`] verifies
//! associativity on every basis triple and both unit laws and is the only way
//! user-supplied tables enter the engine; the named constructors build tables
//! that are associative for structural reasons and validate themselves only in
//! tests (cheaply re-checkable via [`Algebra::validate`]).

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{unit_row, zero_row, Mat, Subspace};
use crate::scalar::{FieldDesc, Scalar};

/// A finite-dimensional unital associative algebra over an exact field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    field: FieldDesc,
    dim: usize,
    /// `table[i * dim + j]` = coordinates of `e_i * e_j`.
    table: Vec<Vec<Scalar>>,
    unit: Vec<Scalar>,
    labels: Vec<String>,
}

impl Algebra {
    /// Builds and fully validates an algebra from structure constants.
    pub fn new(
        field: FieldDesc,
        dim: usize,
        table: Vec<Vec<Scalar>>,
        unit: Vec<Scalar>,
        labels: Vec<String>,
    ) -> Result<Algebra> {
        let a = Algebra::from_parts(field, dim, table, unit, labels)?;
        a.validate()?;
        Ok(a)
    }

    /// Shape/field checks only; used by constructors whose tables are
    /// associative by construction.
    pub(crate) fn from_parts(
        field: FieldDesc,
        dim: usize,
        table: Vec<Vec<Scalar>>,
        unit: Vec<Scalar>,
        labels: Vec<String>,
    ) -> Result<Algebra> {
        if dim == 0 {
            return Err(Error::DimMismatch(String::from("a unital algebra has dimension >= 1")));
        }
        if table.len() != dim * dim || unit.len() != dim || labels.len() != dim {
            return Err(Error::DimMismatch(String::from("structure table shape")));
        }
        for row in table.iter().chain(core::iter::once(&unit)) {
            if row.len() != dim {
                return Err(Error::DimMismatch(String::from("structure row length")));
            }
            if row.iter().any(|s| s.field() != field) {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(Algebra { field, dim, table, unit, labels })
    }

    /// Checks associativity on all basis triples and the unit laws.
    pub fn validate(&self) -> Result<()> {
        for i in 0..self.dim {
            if self.mul(&self.unit, &unit_row(self.field, self.dim, i))
                != unit_row(self.field, self.dim, i)
                || self.mul(&unit_row(self.field, self.dim, i), &self.unit)
                    != unit_row(self.field, self.dim, i)
            {
                return Err(Error::UnitLaw { i });
            }
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.basis_product(i, j).to_vec();
                for k in 0..self.dim {
                    let left = self.mul(&ij, &unit_row(self.field, self.dim, k));
                    let right = self.mul_basis_left(i, &self.basis_product(j, k).to_vec());
                    if left != right {
                        return Err(Error::NotAssociative { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> FieldDesc {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[i * self.dim + j]
    }

    /// Product of two coordinate rows.
    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        debug_assert_eq!(x.len(), self.dim);
        debug_assert_eq!(y.len(), self.dim);
        let mut out = zero_row(self.field, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (slot, t) in out.iter_mut().zip(self.basis_product(i, j)) {
                    if !t.is_zero() {
                        *slot = &*slot + &(&c * t);
                    }
                }
            }
        }
        out
    }

    fn mul_basis_left(&self, i: usize, y: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_row(self.field, self.dim);
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            for (slot, t) in out.iter_mut().zip(self.basis_product(i, j)) {
                if !t.is_zero() {
                    *slot = &*slot + &(yj * t);
                }
            }
        }
        out
    }

    /// Matrix of left multiplication `x -> a x` acting on coordinate columns:
    /// `coords(a x) = L(a) coords(x)`. Satisfies `L(ab) = L(a) L(b)`.
    pub fn left_mul_matrix(&self, a: &[Scalar]) -> Mat {
        Mat::from_fn(self.field, self.dim, self.dim, |i, j| {
            self.mul(a, &unit_row(self.field, self.dim, j))[i].clone()
        })
    }

    /// Matrix of right multiplication `x -> x a`; satisfies `R(ab) = R(b) R(a)`.
    pub fn right_mul_matrix(&self, a: &[Scalar]) -> Mat {
        Mat::from_fn(self.field, self.dim, self.dim, |i, j| {
            self.mul(&unit_row(self.field, self.dim, j), a)[i].clone()
        })
    }

    /// Deterministic rendering "c1*l1 + c2*l2" of a coordinate row; "0" for 0.
    pub fn render(&self, v: &[Scalar]) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (c, l) in v.iter().zip(&self.labels) {
            if c.is_zero() {
                continue;
            }
            if c.is_one() {
                parts.push(l.clone());
            } else {
                parts.push(format!("{c}*{l}"));
            }
        }
        if parts.is_empty() {
            String::from("0")
        } else {
            parts.join(" + ")
        }
    }

    /// The center `{x : xa = ax for all a}` as a subspace.
    pub fn center(&self) -> Subspace {
        // x central iff (L(e_i) - R(e_i)) x = 0 for all basis elements
        let mut stacked: Option<Mat> = None;
        for i in 0..self.dim {
            let e = unit_row(self.field, self.dim, i);
            let d = self.left_mul_matrix(&e).sub(&self.right_mul_matrix(&e)).expect("shape");
            stacked = Some(match stacked {
                None => d,
                Some(s) => s.stack(&d).expect("shape"),
            });
        }
        Subspace::from_span(&stacked.expect("dim >= 1").kernel())
    }

    pub fn is_commutative(&self) -> bool {
        self.center().dim() == self.dim
    }

    /// The opposite algebra (same basis, reversed products).
    pub fn opposite(&self) -> Algebra {
        let mut table = Vec::with_capacity(self.dim * self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                table.push(self.basis_product(j, i).to_vec());
            }
        }
        Algebra {
            field: self.field,
            dim: self.dim,
            table,
            unit: self.unit.clone(),
            labels: self.labels.clone(),
        }
    }

    /// The enveloping algebra `A (x) A^op` with `(a(x)b)(c(x)d) = ac (x) db`;
    /// basis `e_i (x) e_j` ordered with the left factor outermost.
    pub fn enveloping(&self) -> Algebra {
        let n = self.dim;
        let dim = n * n;
        let mut table = vec![zero_row(self.field, dim); dim * dim];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let ik = self.basis_product(i, k); // left factors multiply directly
                    for l in 0..n {
                        let lj = self.basis_product(l, j); // right factors reverse
                        let mut out = zero_row(self.field, dim);
                        for (a, ca) in ik.iter().enumerate() {
                            if ca.is_zero() {
                                continue;
                            }
                            for (b, cb) in lj.iter().enumerate() {
                                if cb.is_zero() {
                                    continue;
                                }
                                out[a * n + b] = &out[a * n + b] + &(ca * cb);
                            }
                        }
                        table[(i * n + j) * dim + (k * n + l)] = out;
                    }
                }
            }
        }
        let mut unit = zero_row(self.field, dim);
        for (a, ca) in self.unit.iter().enumerate() {
            for (b, cb) in self.unit.iter().enumerate() {
                unit[a * n + b] = &unit[a * n + b] + &(ca * cb);
            }
        }
        let labels = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| format!("{}(x){}", self.labels[i], self.labels[j]))
            .collect();
        Algebra { field: self.field, dim, table, unit, labels }
    }
}

// ---- Named constructors ----

fn cell_label(n: usize, i: usize, j: usize) -> String {
    if n < 10 {
        format!("E{}{}", i + 1, j + 1)
    } else {
        format!("E{}_{}", i + 1, j + 1)
    }
}

/// The base field as a one-dimensional algebra (the trivial acting side of
/// one-sided modules).
pub fn trivial_algebra(field: FieldDesc) -> Algebra {
    Algebra {
        field,
        dim: 1,
        table: vec![vec![field.one()]],
        unit: vec![field.one()],
        labels: vec![String::from("1")],
    }
}

/// The full matrix algebra M_n with basis the matrix units E_ij (row-major).
pub fn matrix_algebra(field: FieldDesc, n: usize) -> Result<Algebra> {
    if n == 0 {
        return Err(Error::DimMismatch(String::from("matrix algebra needs n >= 1")));
    }
    let dim = n * n;
    let mut table = vec![zero_row(field, dim); dim * dim];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    if j == k {
                        let mut v = zero_row(field, dim);
                        v[i * n + l] = field.one();
                        table[(i * n + j) * dim + (k * n + l)] = v;
                    }
                }
            }
        }
    }
    let mut unit = zero_row(field, dim);
    for i in 0..n {
        unit[i * n + i] = field.one();
    }
    let labels = (0..n)
        .flat_map(|i| (0..n).map(move |j| cell_label(n, i, j)))
        .collect();
    Algebra::from_parts(field, dim, table, unit, labels)
}

/// A subalgebra of M_n spanned by a pattern of free cells plus tie classes
/// (each tie class contributes the sum of its matrix units as one basis
/// vector). Cells are 0-indexed. Returns the abstract algebra together with
/// its embedding into M_n. Fails if the span is not closed under products or
/// misses the identity.
pub fn matrix_pattern_algebra(
    field: FieldDesc,
    n: usize,
    cells: &[(usize, usize)],
    ties: &[((usize, usize), (usize, usize))],
) -> Result<(Algebra, RingExtension)> {
    let ambient = Arc::new(matrix_algebra(field, n)?);
    for &(i, j) in cells {
        if i >= n || j >= n {
            return Err(Error::DimMismatch(format!("cell ({},{}) outside {n}x{n}", i + 1, j + 1)));
        }
    }
    let mut sorted = cells.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != cells.len() {
        return Err(Error::DimMismatch(String::from("duplicate cells in pattern")));
    }
    let index_of = |c: (usize, usize)| sorted.binary_search(&c).ok();
    // union-find over the cell list
    let mut parent: Vec<usize> = (0..sorted.len()).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for &(a, b) in ties {
        let (Some(ia), Some(ib)) = (index_of(a), index_of(b)) else {
            return Err(Error::DimMismatch(String::from("tie refers to an undeclared cell")));
        };
        let (ra, rb) = (find(&mut parent, ia), find(&mut parent, ib));
        if ra != rb {
            parent[ra] = rb;
        }
    }
    // one basis vector per class, ordered by smallest member cell
    let mut classes: Vec<Vec<(usize, usize)>> = Vec::new();
    {
        let mut root_to_class: Vec<Option<usize>> = vec![None; sorted.len()];
        for idx in 0..sorted.len() {
            let r = find(&mut parent, idx);
            match root_to_class[r] {
                Some(c) => classes[c].push(sorted[idx]),
                None => {
                    root_to_class[r] = Some(classes.len());
                    classes.push(vec![sorted[idx]]);
                }
            }
        }
    }
    classes.sort_by_key(|c| c[0]);
    let rows: Vec<Vec<Scalar>> = classes
        .iter()
        .map(|class| {
            let mut v = zero_row(field, n * n);
            for &(i, j) in class {
                v[i * n + j] = field.one();
            }
            v
        })
        .collect();
    let span = Subspace::from_rows(field, n * n, &rows)?;
    if span.dim() != classes.len() {
        return Err(Error::Engine(String::from("tie classes produced dependent spans")));
    }
    let labels: Vec<String> = classes
        .iter()
        .map(|class| {
            class
                .iter()
                .map(|&(i, j)| cell_label(n, i, j))
                .collect::<Vec<_>>()
                .join("+")
        })
        .collect();
    subalgebra_on_span(&ambient, &rows, Some(labels))
}

/// The path algebra of a finite acyclic quiver. Vertices are `0..vertices`;
/// arrows are `(label, from, to)`. The basis consists of all paths (trivial
/// paths first, then by length, then lexicographically by arrow indices);
/// `p * q` is the concatenation "p then q" when `end(p) = start(q)`, else 0.
pub fn path_algebra(
    field: FieldDesc,
    vertices: usize,
    arrows: &[(String, usize, usize)],
    max_dim: usize,
) -> Result<Algebra> {
    if vertices == 0 {
        return Err(Error::DimMismatch(String::from("a quiver needs at least one vertex")));
    }
    for &(_, u, v) in arrows {
        if u >= vertices || v >= vertices {
            return Err(Error::DimMismatch(String::from("arrow endpoint outside vertex range")));
        }
    }
    // acyclicity: repeated removal of sources
    {
        let mut indeg = vec![0usize; vertices];
        for &(_, _, v) in arrows {
            indeg[v] += 1;
        }
        let mut queue: Vec<usize> = (0..vertices).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for &(_, u, w) in arrows {
                if u == v {
                    indeg[w] -= 1;
                    if indeg[w] == 0 {
                        queue.push(w);
                    }
                }
            }
        }
        if seen != vertices {
            return Err(Error::CyclicQuiver);
        }
    }
    // enumerate paths by length
    #[derive(Clone)]
    struct Path {
        start: usize,
        end: usize,
        arrows: Vec<usize>,
    }
    let mut paths: Vec<Path> = (0..vertices)
        .map(|v| Path { start: v, end: v, arrows: Vec::new() })
        .collect();
    let mut frontier: Vec<Path> = paths.clone();
    loop {
        let mut next = Vec::new();
        for p in &frontier {
            for (ai, &(_, u, v)) in arrows.iter().enumerate() {
                if u == p.end {
                    let mut a = p.arrows.clone();
                    a.push(ai);
                    next.push(Path { start: p.start, end: v, arrows: a });
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_by(|a, b| a.arrows.cmp(&b.arrows));
        paths.extend(next.iter().cloned());
        if paths.len() > max_dim {
            return Err(Error::Budget(format!(
                "path algebra exceeds the dimension budget {max_dim}"
            )));
        }
        frontier = next;
    }
    let dim = paths.len();
    let key = |p: &Path| (p.arrows.len(), p.arrows.clone(), p.start);
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by_key(|&i| key(&paths[i]));
    let paths: Vec<Path> = order.into_iter().map(|i| paths[i].clone()).collect();
    let find_path = |start: usize, arrs: &[usize]| -> Option<usize> {
        paths
            .iter()
            .position(|p| p.start == start && p.arrows == arrs)
    };
    let mut table = vec![zero_row(field, dim); dim * dim];
    for (i, p) in paths.iter().enumerate() {
        for (j, q) in paths.iter().enumerate() {
            if p.end == q.start {
                let mut arrs = p.arrows.clone();
                arrs.extend_from_slice(&q.arrows);
                let k = find_path(p.start, &arrs).ok_or_else(|| {
                    Error::Engine(String::from("concatenated path missing from basis"))
                })?;
                let mut v = zero_row(field, dim);
                v[k] = field.one();
                table[i * dim + j] = v;
            }
        }
    }
    let mut unit = zero_row(field, dim);
    let labels: Vec<String> = paths
        .iter()
        .enumerate()
        .map(|(i, p)| {
            if p.arrows.is_empty() {
                unit[i] = field.one();
                format!("e{}", p.start + 1)
            } else {
                p.arrows.iter().map(|&a| arrows[a].0.clone()).collect::<Vec<_>>().join("*")
            }
        })
        .collect();
    Algebra::from_parts(field, dim, table, unit, labels)
}

/// The incidence algebra of the finite poset generated by `relations` on
/// `0..elements` (reflexive-transitive closure is taken; antisymmetry is
/// checked). Basis: pairs `e_xy` for `x <= y`, ordered lexicographically;
/// `e_xy e_zw = [y = z] e_xw`.
pub fn incidence_algebra(
    field: FieldDesc,
    elements: usize,
    relations: &[(usize, usize)],
) -> Result<Algebra> {
    if elements == 0 {
        return Err(Error::DimMismatch(String::from("a poset needs at least one element")));
    }
    for &(x, y) in relations {
        if x >= elements || y >= elements {
            return Err(Error::BadPoset(String::from("relation endpoint out of range")));
        }
    }
    let mut le = vec![false; elements * elements];
    for x in 0..elements {
        le[x * elements + x] = true;
    }
    for &(x, y) in relations {
        le[x * elements + y] = true;
    }
    // transitive closure (Warshall)
    for k in 0..elements {
        for i in 0..elements {
            if le[i * elements + k] {
                for j in 0..elements {
                    if le[k * elements + j] {
                        le[i * elements + j] = true;
                    }
                }
            }
        }
    }
    for x in 0..elements {
        for y in 0..elements {
            if x != y && le[x * elements + y] && le[y * elements + x] {
                return Err(Error::BadPoset(format!(
                    "antisymmetry fails between {} and {}",
                    x + 1,
                    y + 1
                )));
            }
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for x in 0..elements {
        for y in 0..elements {
            if le[x * elements + y] {
                pairs.push((x, y));
            }
        }
    }
    let dim = pairs.len();
    let mut table = vec![zero_row(field, dim); dim * dim];
    for (i, &(x, y)) in pairs.iter().enumerate() {
        for (j, &(z, w)) in pairs.iter().enumerate() {
            if y == z {
                let k = pairs.binary_search(&(x, w)).map_err(|_| {
                    Error::Engine(String::from("transitive closure missed a pair"))
                })?;
                let mut v = zero_row(field, dim);
                v[k] = field.one();
                table[i * dim + j] = v;
            }
        }
    }
    let mut unit = zero_row(field, dim);
    for (i, &(x, y)) in pairs.iter().enumerate() {
        if x == y {
            unit[i] = field.one();
        }
    }
    let labels = pairs.iter().map(|&(x, y)| cell_label(elements, x, y).replacen('E', "e", 1)).collect();
    Algebra::from_parts(field, dim, table, unit, labels)
}

/// Builds the abstract algebra carried by a multiplicatively closed unital
/// span inside `ambient`, together with the inclusion extension. The rows of
/// `span_rows` become the basis in the given order (they must be independent).
pub fn subalgebra_on_span(
    ambient: &Arc<Algebra>,
    span_rows: &[Vec<Scalar>],
    labels: Option<Vec<String>>,
) -> Result<(Algebra, RingExtension)> {
    let field = ambient.field();
    let n = ambient.dim();
    let basis = Mat::from_rows(field, n, span_rows)?;
    let span = Subspace::from_span(&basis);
    if span.dim() != span_rows.len() {
        return Err(Error::DimMismatch(String::from("subalgebra basis rows are dependent")));
    }
    let dim = span_rows.len();
    let coords_in_basis = |v: &[Scalar]| -> Result<Vec<Scalar>> {
        // solve x * basis = v (x row of length dim)
        basis
            .transpose()
            .solve(v)
            .ok()
            .flatten()
            .ok_or(Error::Engine(String::from("span coordinates")))
    };
    let mut table = Vec::with_capacity(dim * dim);
    for (i, bi) in span_rows.iter().enumerate() {
        for (j, bj) in span_rows.iter().enumerate() {
            let prod = ambient.mul(bi, bj);
            if !span.contains(&prod) {
                return Err(Error::NotClosed { i, j });
            }
            table.push(coords_in_basis(&prod)?);
        }
    }
    if !span.contains(ambient.unit()) {
        return Err(Error::MissingIdentity);
    }
    let unit = coords_in_basis(ambient.unit())?;
    let labels = labels.unwrap_or_else(|| {
        span_rows.iter().map(|r| ambient.render(r)).collect()
    });
    let sub = Algebra::from_parts(field, dim, table, unit, labels)?;
    let ext = RingExtension::new(
        Arc::new(sub.clone()),
        Arc::clone(ambient),
        Mat::from_rows(field, n, span_rows)?,
    )?;
    Ok((sub, ext))
}

// ---- Ring extensions ----

/// A unital algebra homomorphism `f : R -> S`, stored as the matrix whose row
/// `i` is `f(e_i)` in the basis of `S`. Validated to be unital and
/// multiplicative at construction.
#[derive(Debug, Clone)]
pub struct RingExtension {
    source: Arc<Algebra>,
    target: Arc<Algebra>,
    map: Mat,
}

impl RingExtension {
    pub fn new(source: Arc<Algebra>, target: Arc<Algebra>, map: Mat) -> Result<RingExtension> {
        if map.rows() != source.dim() || map.cols() != target.dim() {
            return Err(Error::DimMismatch(String::from("extension matrix shape")));
        }
        if source.field() != target.field() {
            return Err(Error::FieldMismatch);
        }
        let ext = RingExtension { source, target, map };
        if ext.apply(ext.source.unit()) != ext.target.unit().to_vec() {
            return Err(Error::NotUnital);
        }
        for i in 0..ext.source.dim() {
            let ei = unit_row(ext.source.field(), ext.source.dim(), i);
            for j in 0..ext.source.dim() {
                let ej = unit_row(ext.source.field(), ext.source.dim(), j);
                let lhs = ext.apply(&ext.source.mul(&ei, &ej));
                let rhs = ext.target.mul(&ext.apply(&ei), &ext.apply(&ej));
                if lhs != rhs {
                    return Err(Error::NotMultiplicative { i, j });
                }
            }
        }
        Ok(ext)
    }

    /// The identity extension of `a`.
    pub fn identity(a: &Arc<Algebra>) -> RingExtension {
        RingExtension {
            source: Arc::clone(a),
            target: Arc::clone(a),
            map: Mat::identity(a.field(), a.dim()),
        }
    }

    pub fn source(&self) -> &Arc<Algebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Algebra> {
        &self.target
    }

    /// Matrix with row `i` equal to `f(e_i)`.
    pub fn matrix(&self) -> &Mat {
        &self.map
    }

    /// Image of a source coordinate row.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        debug_assert_eq!(v.len(), self.source.dim());
        let mut out = zero_row(self.target.field(), self.target.dim());
        for (c, i) in v.iter().zip(0..self.source.dim()) {
            if !c.is_zero() {
                for (slot, m) in out.iter_mut().zip(self.map.row(i)) {
                    *slot = &*slot + &(c * m);
                }
            }
        }
        out
    }

    /// Image subspace `f(R)` inside the target.
    pub fn image(&self) -> Subspace {
        Subspace::from_span(&self.map)
    }

    /// Kernel of `f` as a subspace of the source.
    pub fn kernel(&self) -> Subspace {
        Subspace::from_span(&self.map.transpose().kernel())
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().dim() == 0
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.source.dim() == self.target.dim()
    }

    /// Composition `g . f` for extensions `f : R -> S`, `g : S -> T`.
    pub fn compose(&self, g: &RingExtension) -> Result<RingExtension> {
        if g.source.dim() != self.target.dim() || g.source.field() != self.target.field() {
            return Err(Error::DimMismatch(String::from("extension composition")));
        }
        Ok(RingExtension {
            source: Arc::clone(&self.source),
            target: Arc::clone(&g.target),
            map: self.map.mul(&g.map)?,
        })
    }

    /// A preimage of `v` under `f`, if any.
    pub fn preimage(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.map.transpose().solve(v).ok().flatten()
    }
}

/// All coordinate rows of length `len` over a finite field, in odometer order.
/// `None` over the rationals.
pub fn all_vectors(field: FieldDesc, len: usize) -> Option<impl Iterator<Item = Vec<Scalar>>> {
    let q = field.order()?;
    let total = q.checked_pow(len as u32)?;
    Some((0..total).map(move |mut n| {
        let mut v = Vec::with_capacity(len);
        for _ in 0..len {
            v.push(match field {
                FieldDesc::Gf(p) => Scalar::Gf { v: n % p, p },
                FieldDesc::Rat => unreachable!(),
            });
            n /= q;
        }
        v
    }))
}
