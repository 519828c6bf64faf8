//! Bimodules over pairs of algebras, with one-sided modules as the special
//! case where one acting algebra is the base field.
//!
//! A bimodule stores one action matrix per basis element of each algebra,
//! in the column convention: `left_act[k]` is the matrix of `v -> e_k v` and
//! `right_act[k]` of `v -> v e_k`. Construction validates that the left
//! action is a homomorphism, the right action an antihomomorphism, units act
//! as the identity, and the two actions commute.
//!
//! On top of the representation sit the module-category operations used by
//! the quotient constructions: generated submodules, sub/quotient modules,
//! direct sums, duals, hom spaces of one-sided linear maps, tensor products
//! over a shared algebra, socles and tops, composition multiplicities,
//! projective covers, injective hulls, colon ideals, and (over finite fields)
//! submodule enumeration.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{all_vectors, trivial_algebra, Algebra, RingExtension};
use crate::error::{Error, Result};
use crate::linalg::{row_is_zero, unit_row, zero_row, Mat, QuotientMap, Subspace};
use crate::scalar::{FieldDesc, Scalar};
use crate::structure::Decomposition;

/// Which module structure an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A finite-dimensional `(left, right)`-bimodule.
#[derive(Debug, Clone, PartialEq)]
pub struct Bimodule {
    left: Arc<Algebra>,
    right: Arc<Algebra>,
    field: FieldDesc,
    dim: usize,
    left_act: Vec<Mat>,
    right_act: Vec<Mat>,
    labels: Vec<String>,
}

impl Bimodule {
    /// Builds a bimodule and validates all action axioms.
    pub fn new(
        left: Arc<Algebra>,
        right: Arc<Algebra>,
        left_act: Vec<Mat>,
        right_act: Vec<Mat>,
        labels: Vec<String>,
    ) -> Result<Bimodule> {
        if left.field() != right.field() {
            return Err(Error::FieldMismatch);
        }
        let field = left.field();
        let dim = labels.len();
        if left_act.len() != left.dim() || right_act.len() != right.dim() {
            return Err(Error::DimMismatch(String::from("one action matrix per basis element")));
        }
        for m in left_act.iter().chain(&right_act) {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimMismatch(String::from("action matrix shape")));
            }
            if m.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        let b = Bimodule { left, right, field, dim, left_act, right_act, labels };
        b.validate()?;
        Ok(b)
    }

    fn validate(&self) -> Result<()> {
        let combine = |acts: &[Mat], coords: &[Scalar]| -> Mat {
            let mut m = Mat::zero(self.field, self.dim, self.dim);
            for (c, a) in coords.iter().zip(acts) {
                if !c.is_zero() {
                    m = m.add(&a.scale(c)).expect("shape");
                }
            }
            m
        };
        let id = Mat::identity(self.field, self.dim);
        if combine(&self.left_act, self.left.unit()) != id
            || combine(&self.right_act, self.right.unit()) != id
        {
            return Err(Error::SideMismatch(String::from("unit does not act as identity")));
        }
        for i in 0..self.left.dim() {
            for j in 0..self.left.dim() {
                let prod = combine(&self.left_act, self.left.basis_product(i, j));
                if prod != self.left_act[i].mul(&self.left_act[j]).expect("shape") {
                    return Err(Error::SideMismatch(format!(
                        "left action is not multiplicative at ({i},{j})"
                    )));
                }
            }
        }
        for i in 0..self.right.dim() {
            for j in 0..self.right.dim() {
                let prod = combine(&self.right_act, self.right.basis_product(i, j));
                if prod != self.right_act[j].mul(&self.right_act[i]).expect("shape") {
                    return Err(Error::SideMismatch(format!(
                        "right action is not antimultiplicative at ({i},{j})"
                    )));
                }
            }
        }
        for l in &self.left_act {
            for r in &self.right_act {
                if l.mul(r).expect("shape") != r.mul(l).expect("shape") {
                    return Err(Error::SideMismatch(String::from(
                        "left and right actions do not commute",
                    )));
                }
            }
        }
        Ok(())
    }

    /// The algebra as a bimodule over itself.
    pub fn regular(a: &Arc<Algebra>) -> Bimodule {
        let field = a.field();
        let left_act = (0..a.dim())
            .map(|i| a.left_mul_matrix(&unit_row(field, a.dim(), i)))
            .collect();
        let right_act = (0..a.dim())
            .map(|i| a.right_mul_matrix(&unit_row(field, a.dim(), i)))
            .collect();
        Bimodule {
            left: Arc::clone(a),
            right: Arc::clone(a),
            field,
            dim: a.dim(),
            left_act,
            right_act,
            labels: a.labels().to_vec(),
        }
    }

    /// A right module (trivial left action by the base field).
    pub fn right_module(
        a: &Arc<Algebra>,
        acts: Vec<Mat>,
        labels: Vec<String>,
    ) -> Result<Bimodule> {
        let dim = labels.len();
        Bimodule::new(
            Arc::new(trivial_algebra(a.field())),
            Arc::clone(a),
            vec![Mat::identity(a.field(), dim)],
            acts,
            labels,
        )
    }

    /// A left module (trivial right action by the base field).
    pub fn left_module(a: &Arc<Algebra>, acts: Vec<Mat>, labels: Vec<String>) -> Result<Bimodule> {
        let dim = labels.len();
        Bimodule::new(
            Arc::clone(a),
            Arc::new(trivial_algebra(a.field())),
            acts,
            vec![Mat::identity(a.field(), dim)],
            labels,
        )
    }

    pub fn field(&self) -> FieldDesc {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_algebra(&self) -> &Arc<Algebra> {
        &self.left
    }

    pub fn right_algebra(&self) -> &Arc<Algebra> {
        &self.right
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Deterministic rendering of a module element.
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

    /// Matrix of `v -> a v` for an element `a` of the left algebra.
    pub fn left_action_matrix(&self, a: &[Scalar]) -> Mat {
        let mut m = Mat::zero(self.field, self.dim, self.dim);
        for (c, act) in a.iter().zip(&self.left_act) {
            if !c.is_zero() {
                m = m.add(&act.scale(c)).expect("shape");
            }
        }
        m
    }

    /// Matrix of `v -> v a` for an element `a` of the right algebra.
    pub fn right_action_matrix(&self, a: &[Scalar]) -> Mat {
        let mut m = Mat::zero(self.field, self.dim, self.dim);
        for (c, act) in a.iter().zip(&self.right_act) {
            if !c.is_zero() {
                m = m.add(&act.scale(c)).expect("shape");
            }
        }
        m
    }

    pub fn act_left(&self, a: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        self.left_action_matrix(a).apply(v).expect("shape")
    }

    pub fn act_right(&self, v: &[Scalar], a: &[Scalar]) -> Vec<Scalar> {
        self.right_action_matrix(a).apply(v).expect("shape")
    }

    /// The sub-bimodule generated by the given elements (closure under both
    /// actions). For one-sided modules the trivial side changes nothing, so
    /// this is the one-sided submodule.
    pub fn generated(&self, seeds: &[Vec<Scalar>]) -> Subspace {
        let mut span = Subspace::zero(self.field, self.dim);
        let mut frontier: Vec<Vec<Scalar>> = Vec::new();
        for s in seeds {
            if !span.contains(s) {
                span = span
                    .sum(&Subspace::from_rows(self.field, self.dim, &[s.clone()]).expect("rows"))
                    .expect("ambient");
                frontier.push(s.clone());
            }
        }
        while let Some(v) = frontier.pop() {
            for act in self.left_act.iter().chain(&self.right_act) {
                let w = act.apply(&v).expect("shape");
                if !row_is_zero(&w) && !span.contains(&w) {
                    span = span
                        .sum(&Subspace::from_rows(self.field, self.dim, &[w.clone()])
                            .expect("rows"))
                        .expect("ambient");
                    frontier.push(w);
                }
            }
        }
        span
    }

    /// The sub-bimodule carried by an invariant subspace, with its inclusion.
    pub fn sub(self: &Arc<Self>, s: &Subspace) -> Result<(Arc<Bimodule>, BimoduleMap)> {
        let basis = s.basis_rows();
        let left_act = self
            .left_act
            .iter()
            .map(|a| s.restrict(a))
            .collect::<Result<Vec<_>>>()?;
        let right_act = self
            .right_act
            .iter()
            .map(|a| s.restrict(a))
            .collect::<Result<Vec<_>>>()?;
        let labels = basis.iter().map(|b| self.render(b)).collect();
        let sub = Arc::new(Bimodule {
            left: Arc::clone(&self.left),
            right: Arc::clone(&self.right),
            field: self.field,
            dim: s.dim(),
            left_act,
            right_act,
            labels,
        });
        let map = BimoduleMap::new(
            Arc::clone(&sub),
            Arc::clone(self),
            Mat::from_rows(self.field, self.dim, &basis)?,
        )?;
        Ok((sub, map))
    }

    /// The quotient bimodule by an invariant subspace, with its projection.
    pub fn quotient(self: &Arc<Self>, s: &Subspace) -> Result<(Arc<Bimodule>, BimoduleMap)> {
        let qm = QuotientMap::new(s.clone());
        let left_act = self
            .left_act
            .iter()
            .map(|a| qm.induced(a))
            .collect::<Result<Vec<_>>>()?;
        let right_act = self
            .right_act
            .iter()
            .map(|a| qm.induced(a))
            .collect::<Result<Vec<_>>>()?;
        let labels = (0..qm.dim())
            .map(|i| format!("[{}]", self.render(&qm.lift(&unit_row(self.field, qm.dim(), i)))))
            .collect();
        let quot = Arc::new(Bimodule {
            left: Arc::clone(&self.left),
            right: Arc::clone(&self.right),
            field: self.field,
            dim: qm.dim(),
            left_act,
            right_act,
            labels,
        });
        let rows: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|i| qm.project(&unit_row(self.field, self.dim, i)))
            .collect();
        let map = BimoduleMap::new(
            Arc::clone(self),
            Arc::clone(&quot),
            Mat::from_rows(self.field, qm.dim(), &rows)?,
        )?;
        Ok((quot, map))
    }

    /// Direct sum, with the injection of each part.
    pub fn direct_sum(parts: &[Arc<Bimodule>]) -> Result<(Arc<Bimodule>, Vec<BimoduleMap>)> {
        let first = parts.first().ok_or(Error::Precondition(String::from(
            "direct sum needs at least one part",
        )))?;
        let field = first.field;
        let total: usize = parts.iter().map(|p| p.dim).sum();
        for p in parts {
            if p.left != first.left || p.right != first.right {
                return Err(Error::SideMismatch(String::from(
                    "direct sum parts over different algebras",
                )));
            }
        }
        let build = |pick: &dyn Fn(&Bimodule, usize) -> &Mat, k: usize| -> Mat {
            let mut m = Mat::zero(field, total, total);
            let mut off = 0;
            for p in parts {
                let a = pick(p, k);
                for i in 0..p.dim {
                    for j in 0..p.dim {
                        *m.at_mut(off + i, off + j) = a.at(i, j).clone();
                    }
                }
                off += p.dim;
            }
            m
        };
        let left_act: Vec<Mat> = (0..first.left.dim())
            .map(|k| build(&|p, k| &p.left_act[k], k))
            .collect();
        let right_act: Vec<Mat> = (0..first.right.dim())
            .map(|k| build(&|p, k| &p.right_act[k], k))
            .collect();
        let mut labels = Vec::with_capacity(total);
        for (pi, p) in parts.iter().enumerate() {
            for l in &p.labels {
                labels.push(format!("{}.{}", pi + 1, l));
            }
        }
        let sum = Arc::new(Bimodule {
            left: Arc::clone(&first.left),
            right: Arc::clone(&first.right),
            field,
            dim: total,
            left_act,
            right_act,
            labels,
        });
        let mut maps = Vec::with_capacity(parts.len());
        let mut off = 0;
        for p in parts {
            let mut rows = Vec::with_capacity(p.dim);
            for i in 0..p.dim {
                let mut r = zero_row(field, total);
                r[off + i] = field.one();
                rows.push(r);
            }
            maps.push(BimoduleMap::new(
                Arc::clone(p),
                Arc::clone(&sum),
                Mat::from_rows(field, total, &rows)?,
            )?);
            off += p.dim;
        }
        Ok((sum, maps))
    }

    /// The linear dual as a bimodule with the sides exchanged:
    /// `(a f b)(m) = f(b m a)`.
    pub fn dual(&self) -> Bimodule {
        let left_act = self.right_act.iter().map(Mat::transpose).collect();
        let right_act = self.left_act.iter().map(Mat::transpose).collect();
        Bimodule {
            left: Arc::clone(&self.right),
            right: Arc::clone(&self.left),
            field: self.field,
            dim: self.dim,
            left_act,
            right_act,
            labels: self.labels.iter().map(|l| format!("{l}^")).collect(),
        }
    }

    /// Replaces the left structure by the trivial one.
    pub fn forget_left(&self) -> Bimodule {
        Bimodule {
            left: Arc::new(trivial_algebra(self.field)),
            right: Arc::clone(&self.right),
            field: self.field,
            dim: self.dim,
            left_act: vec![Mat::identity(self.field, self.dim)],
            right_act: self.right_act.clone(),
            labels: self.labels.clone(),
        }
    }

    /// Replaces the right structure by the trivial one.
    pub fn forget_right(&self) -> Bimodule {
        Bimodule {
            left: Arc::clone(&self.left),
            right: Arc::new(trivial_algebra(self.field)),
            field: self.field,
            dim: self.dim,
            left_act: self.left_act.clone(),
            right_act: vec![Mat::identity(self.field, self.dim)],
            labels: self.labels.clone(),
        }
    }

    fn acting_algebra(&self, side: Side) -> &Arc<Algebra> {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    fn action(&self, side: Side, a: &[Scalar]) -> Mat {
        match side {
            Side::Left => self.left_action_matrix(a),
            Side::Right => self.right_action_matrix(a),
        }
    }

    /// `{v : v rad = 0}` (right) or `{v : rad v = 0}` (left): the socle with
    /// respect to the chosen side's algebra.
    pub fn socle(&self, side: Side) -> Subspace {
        let rad = crate::structure::radical(self.acting_algebra(side));
        if rad.dim() == 0 {
            return Subspace::full(self.field, self.dim);
        }
        let mut stacked: Option<Mat> = None;
        for r in rad.basis_rows() {
            let m = self.action(side, &r);
            stacked = Some(match stacked {
                None => m,
                Some(s) => s.stack(&m).expect("shape"),
            });
        }
        Subspace::from_span(&stacked.expect("nonzero radical").kernel())
    }

    /// `{v : v i = 0 for all i in the ideal}` (right) or the left analogue.
    /// An empty ideal annihilates everything.
    pub fn annihilated_by(&self, side: Side, ideal: &Subspace) -> Subspace {
        let mut acc = Subspace::full(self.field, self.dim);
        for r in ideal.basis_rows() {
            let ker = Subspace::from_span(&self.action(side, &r).kernel());
            acc = acc.intersect(&ker).expect("ambient");
        }
        acc
    }

    /// `M rad` (right) or `rad M` (left): the radical submodule.
    pub fn radical_submodule(&self, side: Side) -> Subspace {
        let rad = crate::structure::radical(self.acting_algebra(side));
        let mut rows = Vec::new();
        for r in rad.basis_rows() {
            let m = self.action(side, &r);
            for i in 0..self.dim {
                rows.push(m.apply(&unit_row(self.field, self.dim, i)).expect("shape"));
            }
        }
        Subspace::from_rows(self.field, self.dim, &rows).expect("rows")
    }

    /// Composition multiplicities `[M : T_t]`, indexed like the types of the
    /// decomposition of the acting algebra: `dim(M e_t)` on the right side,
    /// `dim(e_t M)` on the left.
    pub fn composition_counts(&self, side: Side, dec: &Decomposition) -> Result<Vec<usize>> {
        if self.acting_algebra(side) != dec.algebra() {
            return Err(Error::SideMismatch(String::from(
                "decomposition belongs to a different algebra",
            )));
        }
        Ok(dec
            .type_representatives()
            .iter()
            .map(|e| self.action(side, e).rank())
            .collect())
    }

    /// Whether `sub` is an essential submodule on the chosen side (every
    /// nonzero submodule meets it); for artinian modules this is equivalent
    /// to containing the socle.
    pub fn is_essential(&self, side: Side, sub: &Subspace) -> bool {
        sub.contains_subspace(&self.socle(side))
    }
}

// ---- Maps ----

/// A bimodule homomorphism, stored as the matrix whose row `i` is the image
/// of the `i`-th basis vector of the source. Construction validates
/// intertwining with both actions.
#[derive(Debug, Clone)]
pub struct BimoduleMap {
    source: Arc<Bimodule>,
    target: Arc<Bimodule>,
    mat: Mat,
}

impl BimoduleMap {
    pub fn new(source: Arc<Bimodule>, target: Arc<Bimodule>, mat: Mat) -> Result<BimoduleMap> {
        if source.left != target.left || source.right != target.right {
            return Err(Error::SideMismatch(String::from(
                "map between modules over different algebra pairs",
            )));
        }
        if mat.rows() != source.dim || mat.cols() != target.dim {
            return Err(Error::DimMismatch(String::from("map matrix shape")));
        }
        // column-convention matrix of the map
        let phi = mat.transpose();
        for (a, b) in source.left_act.iter().zip(&target.left_act) {
            if phi.mul(a)? != b.mul(&phi)? {
                return Err(Error::SideMismatch(String::from(
                    "map does not intertwine the left actions",
                )));
            }
        }
        for (a, b) in source.right_act.iter().zip(&target.right_act) {
            if phi.mul(a)? != b.mul(&phi)? {
                return Err(Error::SideMismatch(String::from(
                    "map does not intertwine the right actions",
                )));
            }
        }
        Ok(BimoduleMap { source, target, mat })
    }

    pub fn source(&self) -> &Arc<Bimodule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Bimodule> {
        &self.target
    }

    pub fn matrix(&self) -> &Mat {
        &self.mat
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.mat.transpose().apply(v).expect("shape")
    }

    pub fn image(&self) -> Subspace {
        Subspace::from_span(&self.mat)
    }

    pub fn kernel(&self) -> Subspace {
        Subspace::from_span(&self.mat.transpose().kernel())
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().dim() == 0
    }

    pub fn is_surjective(&self) -> bool {
        self.image().dim() == self.target.dim
    }

    pub fn compose(&self, g: &BimoduleMap) -> Result<BimoduleMap> {
        if self.target.dim != g.source.dim {
            return Err(Error::DimMismatch(String::from("map composition")));
        }
        BimoduleMap::new(
            Arc::clone(&self.source),
            Arc::clone(&g.target),
            self.mat.mul(&g.mat)?,
        )
    }
}

/// The target of a ring extension as a `(source, target)`-bimodule: the
/// left action goes through the extension map, the right action is regular.
pub fn extension_bimodule(ext: &RingExtension) -> Bimodule {
    let s = ext.target();
    let field = s.field();
    let left_act = (0..ext.source().dim())
        .map(|k| s.left_mul_matrix(&ext.apply(&unit_row(field, ext.source().dim(), k))))
        .collect();
    let right_act = (0..s.dim())
        .map(|k| s.right_mul_matrix(&unit_row(field, s.dim(), k)))
        .collect();
    Bimodule {
        left: Arc::clone(ext.source()),
        right: Arc::clone(ext.target()),
        field,
        dim: s.dim(),
        left_act,
        right_act,
        labels: s.labels().to_vec(),
    }
}

/// The target of a ring extension as a `(target, source)`-bimodule.
pub fn extension_bimodule_rev(ext: &RingExtension) -> Bimodule {
    let s = ext.target();
    let field = s.field();
    let left_act = (0..s.dim())
        .map(|k| s.left_mul_matrix(&unit_row(field, s.dim(), k)))
        .collect();
    let right_act = (0..ext.source().dim())
        .map(|k| s.right_mul_matrix(&ext.apply(&unit_row(field, ext.source().dim(), k))))
        .collect();
    Bimodule {
        left: Arc::clone(ext.target()),
        right: Arc::clone(ext.source()),
        field,
        dim: s.dim(),
        left_act,
        right_act,
        labels: s.labels().to_vec(),
    }
}

// ---- Hom spaces ----

/// Basis of the space of one-sided linear maps `M -> N` (maps commuting with
/// the chosen side's action), as matrices in the column convention. Both
/// modules must carry the same algebra on that side. The basis is canonical
/// (RREF of the vectorized solution space).
pub fn hom_basis(side: Side, m: &Bimodule, n: &Bimodule) -> Result<Vec<Mat>> {
    if m.acting_algebra(side) != n.acting_algebra(side) {
        return Err(Error::SideMismatch(String::from("hom over different algebras")));
    }
    if m.field != n.field {
        return Err(Error::FieldMismatch);
    }
    let field = m.field;
    let (dm, dn) = (m.dim, n.dim);
    let acts_m: &[Mat] = match side {
        Side::Left => &m.left_act,
        Side::Right => &m.right_act,
    };
    let acts_n: &[Mat] = match side {
        Side::Left => &n.left_act,
        Side::Right => &n.right_act,
    };
    if dm == 0 || dn == 0 {
        return Ok(Vec::new());
    }
    // unknowns: phi[i][j] (dn x dm), vectorized row-major
    let unknowns = dn * dm;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (a, b) in acts_m.iter().zip(acts_n) {
        for i in 0..dn {
            for j in 0..dm {
                // (phi a - b phi)[i][j] = 0
                let mut row = zero_row(field, unknowns);
                for c in 0..dm {
                    row[i * dm + c] = &row[i * dm + c] + a.at(c, j);
                }
                for r in 0..dn {
                    row[r * dm + j] = &row[r * dm + j] - b.at(i, r);
                }
                rows.push(row);
            }
        }
    }
    let system = Mat::from_rows(field, unknowns, &rows)?;
    let kernel = system.kernel();
    Ok((0..kernel.rows())
        .map(|k| {
            Mat::from_fn(field, dn, dm, |i, j| kernel.at(k, i * dm + j).clone())
        })
        .collect())
}

// ---- Tensor products ----

/// `M (x)_A N` for a right-A module M and left-A module N, presented as the
/// quotient of the outer product space by the balancing relations.
#[derive(Debug, Clone)]
pub struct TensorProduct {
    module: Arc<Bimodule>,
    proj: QuotientMap,
    dim_m: usize,
    dim_n: usize,
}

pub fn tensor_over(m: &Bimodule, n: &Bimodule) -> Result<TensorProduct> {
    if m.right != n.left {
        return Err(Error::SideMismatch(String::from(
            "tensor requires matching inner algebras",
        )));
    }
    let field = m.field;
    let shared = m.right.dim();
    let ambient = m.dim * n.dim;
    let idx = |i: usize, j: usize| i * n.dim + j;
    let mut rel_rows: Vec<Vec<Scalar>> = Vec::new();
    for k in 0..shared {
        let rm = &m.right_act[k];
        let ln = &n.left_act[k];
        for i in 0..m.dim {
            for j in 0..n.dim {
                let mut row = zero_row(field, ambient);
                for a in 0..m.dim {
                    let c = rm.at(a, i);
                    if !c.is_zero() {
                        row[idx(a, j)] = &row[idx(a, j)] + c;
                    }
                }
                for b in 0..n.dim {
                    let c = ln.at(b, j);
                    if !c.is_zero() {
                        row[idx(i, b)] = &row[idx(i, b)] - c;
                    }
                }
                if !row_is_zero(&row) {
                    rel_rows.push(row);
                }
            }
        }
    }
    let relations = Subspace::from_rows(field, ambient, &rel_rows)?;
    let proj = QuotientMap::new(relations);
    let big_left: Vec<Mat> = (0..m.left.dim())
        .map(|k| {
            Mat::from_fn(field, ambient, ambient, |rc, cc| {
                let (ri, rj) = (rc / n.dim, rc % n.dim);
                let (ci, cj) = (cc / n.dim, cc % n.dim);
                if rj == cj {
                    m.left_act[k].at(ri, ci).clone()
                } else {
                    field.zero()
                }
            })
        })
        .collect();
    let big_right: Vec<Mat> = (0..n.right.dim())
        .map(|k| {
            Mat::from_fn(field, ambient, ambient, |rc, cc| {
                let (ri, rj) = (rc / n.dim, rc % n.dim);
                let (ci, cj) = (cc / n.dim, cc % n.dim);
                if ri == ci {
                    n.right_act[k].at(rj, cj).clone()
                } else {
                    field.zero()
                }
            })
        })
        .collect();
    let left_act = big_left.iter().map(|a| proj.induced(a)).collect::<Result<Vec<_>>>()?;
    let right_act = big_right.iter().map(|a| proj.induced(a)).collect::<Result<Vec<_>>>()?;
    let labels = (0..proj.dim())
        .map(|i| {
            let lift = proj.lift(&unit_row(field, proj.dim(), i));
            let mut parts = Vec::new();
            for (pos, c) in lift.iter().enumerate() {
                if !c.is_zero() {
                    let (a, b) = (pos / n.dim, pos % n.dim);
                    let term = format!("{}(x){}", m.labels[a], n.labels[b]);
                    if c.is_one() {
                        parts.push(term);
                    } else {
                        parts.push(format!("{c}*{term}"));
                    }
                }
            }
            if parts.is_empty() {
                String::from("0")
            } else {
                parts.join(" + ")
            }
        })
        .collect();
    let module = Arc::new(Bimodule {
        left: Arc::clone(&m.left),
        right: Arc::clone(&n.right),
        field,
        dim: proj.dim(),
        left_act,
        right_act,
        labels,
    });
    Ok(TensorProduct { module, proj, dim_m: m.dim, dim_n: n.dim })
}

impl TensorProduct {
    pub fn module(&self) -> &Arc<Bimodule> {
        &self.module
    }

    /// Quotient map from the outer product space onto the tensor module.
    pub fn projection(&self) -> &QuotientMap {
        &self.proj
    }

    /// Image of the pure tensor `mv (x) nv`.
    pub fn pure(&self, mv: &[Scalar], nv: &[Scalar]) -> Vec<Scalar> {
        debug_assert_eq!(mv.len(), self.dim_m);
        debug_assert_eq!(nv.len(), self.dim_n);
        let field = self.module.field;
        let mut outer = zero_row(field, self.dim_m * self.dim_n);
        for (i, a) in mv.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in nv.iter().enumerate() {
                if !b.is_zero() {
                    outer[i * self.dim_n + j] = a * b;
                }
            }
        }
        self.proj.project(&outer)
    }
}

// ---- Simple modules ----

/// The simple modules on the chosen side, one per isomorphism type, as
/// one-sided modules over the decomposed algebra (the other side trivial).
pub fn simple_modules(dec: &Decomposition, side: Side) -> Result<Vec<Arc<Bimodule>>> {
    let a = dec.algebra();
    let s = dec.semisimple();
    let field = a.field();
    let mut out = Vec::new();
    for cls in dec.types() {
        let e_bar = dec.projection().project(&dec.idempotents()[cls[0]]);
        // subspace e S (right simples) or S e (left simples) inside S
        let rows: Vec<Vec<Scalar>> = (0..s.dim())
            .map(|k| {
                let b = unit_row(field, s.dim(), k);
                match side {
                    Side::Right => s.mul(&e_bar, &b),
                    Side::Left => s.mul(&b, &e_bar),
                }
            })
            .collect();
        let span = Subspace::from_rows(field, s.dim(), &rows)?;
        let acts: Vec<Mat> = (0..a.dim())
            .map(|k| {
                let ak = dec.projection().project(&unit_row(field, a.dim(), k));
                let action = match side {
                    Side::Right => s.right_mul_matrix(&ak),
                    Side::Left => s.left_mul_matrix(&ak),
                };
                span.restrict(&action)
            })
            .collect::<Result<Vec<_>>>()?;
        let labels = span.basis_rows().iter().map(|b| s.render(b)).collect();
        out.push(Arc::new(match side {
            Side::Right => Bimodule::right_module(a, acts, labels)?,
            Side::Left => Bimodule::left_module(a, acts, labels)?,
        }));
    }
    Ok(out)
}

// ---- Projective covers and injective hulls ----

/// A projective cover: the covering module, the surjection onto the covered
/// module (other side forgotten), and the type index of each indecomposable
/// summand.
#[derive(Debug, Clone)]
pub struct Cover {
    pub projective: Arc<Bimodule>,
    pub map: BimoduleMap,
    pub summand_types: Vec<usize>,
}

/// Projective cover of the one-sided module structure of `m` on `side`;
/// the other side is forgotten. The cover is a direct sum of principal
/// modules `e_t A` (right) or `A e_t` (left), with multiplicities read off
/// the top, and the construction certifies surjectivity and superfluity of
/// the kernel.
pub fn projective_cover(m: &Bimodule, side: Side, dec: &Decomposition) -> Result<Cover> {
    if m.acting_algebra(side) != dec.algebra() {
        return Err(Error::SideMismatch(String::from(
            "decomposition belongs to a different algebra",
        )));
    }
    let a = dec.algebra();
    let field = m.field;
    let m1 = Arc::new(match side {
        Side::Right => m.forget_left(),
        Side::Left => m.forget_right(),
    });
    let radm = m1.radical_submodule(side);
    let qtop = QuotientMap::new(radm);
    // principal module e_t A or A e_t as a one-sided module
    let principal = |e: &[Scalar]| -> Result<(Arc<Bimodule>, Vec<Vec<Scalar>>)> {
        let rows: Vec<Vec<Scalar>> = (0..a.dim())
            .map(|k| {
                let b = unit_row(field, a.dim(), k);
                match side {
                    Side::Right => a.mul(e, &b),
                    Side::Left => a.mul(&b, e),
                }
            })
            .collect();
        let span = Subspace::from_rows(field, a.dim(), &rows)?;
        let acts: Vec<Mat> = (0..a.dim())
            .map(|k| {
                let ek = unit_row(field, a.dim(), k);
                let action = match side {
                    Side::Right => a.right_mul_matrix(&ek),
                    Side::Left => a.left_mul_matrix(&ek),
                };
                span.restrict(&action)
            })
            .collect::<Result<Vec<_>>>()?;
        let labels = span.basis_rows().iter().map(|b| a.render(b)).collect();
        let module = Arc::new(match side {
            Side::Right => Bimodule::right_module(a, acts, labels)?,
            Side::Left => Bimodule::left_module(a, acts, labels)?,
        });
        Ok((module, span.basis_rows()))
    };
    let mut parts: Vec<Arc<Bimodule>> = Vec::new();
    let mut part_rows: Vec<Vec<Vec<Scalar>>> = Vec::new(); // rows of map per part
    let mut summand_types = Vec::new();
    for (t, cls) in dec.types().iter().enumerate() {
        let e = &dec.idempotents()[cls[0]];
        // multiplicity: dim(top e) resp. dim(e top)
        let act_on_top = qtop.induced(&m1.action(side, e))?;
        let image = {
            let rows: Vec<Vec<Scalar>> = (0..qtop.dim())
                .map(|i| act_on_top.apply(&unit_row(field, qtop.dim(), i)).expect("shape"))
                .collect();
            Subspace::from_rows(field, qtop.dim(), &rows)?
        };
        if image.dim() == 0 {
            continue;
        }
        let (pmod, pbasis) = principal(e)?;
        for w in image.basis_rows() {
            // generator in m lifting w, adjusted to be fixed by e
            let lift = qtop.lift(&w);
            let g = match side {
                Side::Right => m1.act_right(&lift, e),
                Side::Left => m1.act_left(e, &lift),
            };
            // map e_t A -> M, x -> g x (right) / A e_t -> M, x -> x g (left)
            let rows: Vec<Vec<Scalar>> = pbasis
                .iter()
                .map(|x| match side {
                    Side::Right => m1.act_right(&g, x),
                    Side::Left => m1.act_left(x, &g),
                })
                .collect();
            parts.push(Arc::clone(&pmod));
            part_rows.push(rows);
            summand_types.push(t);
        }
    }
    if parts.is_empty() {
        // the zero module covers itself
        let zero = Arc::new(match side {
            Side::Right => Bimodule::right_module(
                a,
                vec![Mat::zero(field, 0, 0); a.dim()],
                Vec::new(),
            )?,
            Side::Left => Bimodule::left_module(
                a,
                vec![Mat::zero(field, 0, 0); a.dim()],
                Vec::new(),
            )?,
        });
        let map = BimoduleMap::new(
            Arc::clone(&zero),
            Arc::clone(&m1),
            Mat::zero(field, 0, m1.dim),
        )?;
        if m1.dim != 0 {
            return Err(Error::Engine(String::from("nonzero module with empty top")));
        }
        return Ok(Cover { projective: zero, map, summand_types });
    }
    let (projective, _) = Bimodule::direct_sum(&parts)?;
    let all_rows: Vec<Vec<Scalar>> = part_rows.into_iter().flatten().collect();
    let map = BimoduleMap::new(
        Arc::clone(&projective),
        Arc::clone(&m1),
        Mat::from_rows(field, m1.dim, &all_rows)?,
    )?;
    if !map.is_surjective() {
        return Err(Error::Engine(String::from("projective cover fails to surject")));
    }
    let ker = map.kernel();
    if !projective.radical_submodule(side).contains_subspace(&ker) {
        return Err(Error::Engine(String::from("projective cover kernel is not superfluous")));
    }
    Ok(Cover { projective, map, summand_types })
}

/// An injective hull: the enveloping module and the (essential, injective)
/// embedding of `m` with its other side forgotten.
#[derive(Debug, Clone)]
pub struct Hull {
    pub hull: Arc<Bimodule>,
    pub embed: BimoduleMap,
}

/// Injective hull via duality: `E(M) = D(P(D(M)))`, with the embedding
/// given by dualizing the cover surjection. Essentiality and injectivity of
/// the embedding are certified at runtime.
pub fn injective_hull(m: &Bimodule, side: Side, dec: &Decomposition) -> Result<Hull> {
    let m1 = Arc::new(match side {
        Side::Right => m.forget_left(),
        Side::Left => m.forget_right(),
    });
    let dual_side = match side {
        Side::Left => Side::Right,
        Side::Right => Side::Left,
    };
    let d = m1.dual();
    let cover = projective_cover(&d, dual_side, dec)?;
    let hull = Arc::new(cover.projective.dual());
    // bidual of m1 is m1 itself in coordinates; the embedding is the
    // transpose of the cover matrix
    let embed = BimoduleMap::new(
        Arc::clone(&m1),
        Arc::clone(&hull),
        cover.map.matrix().transpose(),
    )?;
    if !embed.is_injective() {
        return Err(Error::Engine(String::from("hull embedding is not injective")));
    }
    if !hull.is_essential(side, &embed.image()) {
        return Err(Error::Engine(String::from("hull embedding is not essential")));
    }
    Ok(Hull { hull, embed })
}

/// Whether the one-sided module is projective (its cover is an isomorphism).
pub fn is_projective(m: &Bimodule, side: Side, dec: &Decomposition) -> Result<bool> {
    Ok(projective_cover(m, side, dec)?.projective.dim() == m.dim())
}

/// Whether the one-sided module is injective (its hull is an isomorphism).
pub fn is_injective(m: &Bimodule, side: Side, dec: &Decomposition) -> Result<bool> {
    Ok(injective_hull(m, side, dec)?.hull.dim() == m.dim())
}

// ---- Colon ideals and annihilators ----

/// The colon ideal `(I : r)`: for a right ideal (side `Right`) this is
/// `{x : r x in I}`, for a left ideal `{x : x r in I}`. It is again an ideal
/// of the same side.
pub fn colon(a: &Algebra, side: Side, ideal: &Subspace, r: &[Scalar]) -> Result<Subspace> {
    let op = match side {
        Side::Right => a.left_mul_matrix(r),
        Side::Left => a.right_mul_matrix(r),
    };
    ideal.preimage_under(&op)
}

/// The annihilator in the acting algebra of a set of module elements:
/// `{a : v a = 0 for all v}` (right) or `{a : a v = 0 for all v}` (left).
pub fn annihilator(m: &Bimodule, vectors: &[Vec<Scalar>], side: Side) -> Subspace {
    let alg = m.acting_algebra(side);
    let field = m.field;
    let mut acc = Subspace::full(field, alg.dim());
    for v in vectors {
        // columns: action of each algebra basis element on v
        let mat = Mat::from_fn(field, m.dim, alg.dim(), |i, k| {
            let ek = unit_row(field, alg.dim(), k);
            let w = match side {
                Side::Right => m.act_right(v, &ek),
                Side::Left => m.act_left(&ek, v),
            };
            w[i].clone()
        });
        let ker = Subspace::from_span(&mat.kernel());
        acc = acc.intersect(&ker).expect("ambient");
    }
    acc
}

// ---- Enumeration over finite fields ----

/// All submodules (closed under both actions), by spinning every vector and
/// closing under sums. Finite fields only; guarded by `budget` on both the
/// vector count and the lattice size.
pub fn all_submodules(m: &Bimodule, budget: u64) -> Result<Vec<Subspace>> {
    let Some(order) = m.field.order() else {
        return Err(Error::Unsupported(String::from(
            "submodule enumeration needs a finite field",
        )));
    };
    if (m.dim as u32) >= 64 || order.checked_pow(m.dim as u32).is_none_or(|c| c > budget) {
        return Err(Error::Budget(format!(
            "submodule enumeration over {} elements exceeds the budget {budget}",
            m.dim
        )));
    }
    let mut lattice: Vec<Subspace> = vec![Subspace::zero(m.field, m.dim)];
    for v in all_vectors(m.field, m.dim).expect("finite") {
        if row_is_zero(&v) {
            continue;
        }
        let s = m.generated(&[v]);
        if !lattice.contains(&s) {
            lattice.push(s);
        }
    }
    // close under sums
    loop {
        let mut added = false;
        let snapshot = lattice.len();
        for i in 0..snapshot {
            for j in (i + 1)..snapshot {
                let s = lattice[i].sum(&lattice[j]).expect("ambient");
                if !lattice.contains(&s) {
                    lattice.push(s);
                    added = true;
                    if lattice.len() as u64 > budget {
                        return Err(Error::Budget(String::from(
                            "submodule lattice exceeds the budget",
                        )));
                    }
                }
            }
        }
        if !added {
            break;
        }
    }
    lattice.sort_by_key(|s| (s.dim(), format!("{:?}", s.pivots())));
    Ok(lattice)
}

/// All maximal submodules of the one-sided module (finite fields): kernels of
/// the nonzero maps onto each simple, pulled back from the top.
pub fn maximal_submodules(
    m: &Arc<Bimodule>,
    side: Side,
    dec: &Decomposition,
    budget: u64,
) -> Result<Vec<Subspace>> {
    let Some(order) = m.field.order() else {
        return Err(Error::Unsupported(String::from(
            "maximal-submodule enumeration needs a finite field",
        )));
    };
    let m1 = Arc::new(match side {
        Side::Right => m.forget_left(),
        Side::Left => m.forget_right(),
    });
    let radm = m1.radical_submodule(side);
    let (top, proj) = m1.quotient(&radm)?;
    let simples = simple_modules(dec, side)?;
    let mut out: Vec<Subspace> = Vec::new();
    for t in simples {
        let homs = hom_basis(side, &top, &t)?;
        if homs.is_empty() {
            continue;
        }
        let d = homs.len();
        if (d as u32) >= 64 || order.checked_pow(d as u32).is_none_or(|c| c > budget) {
            return Err(Error::Budget(String::from(
                "too many maps onto a simple within the budget",
            )));
        }
        // canonical projective representatives: first nonzero coefficient = 1
        for coeffs in all_vectors(m.field, d).expect("finite") {
            let first = coeffs.iter().position(|c| !c.is_zero());
            let Some(first) = first else { continue };
            if !coeffs[first].is_one() {
                continue;
            }
            let mut phi = Mat::zero(m.field, t.dim(), top.dim());
            for (c, h) in coeffs.iter().zip(&homs) {
                if !c.is_zero() {
                    phi = phi.add(&h.scale(c)).expect("shape");
                }
            }
            let ker_top = Subspace::from_span(&phi.kernel());
            // pull back to m: preimage under the projection
            let pre = ker_top.preimage_under(&proj.matrix().transpose())?;
            if !out.contains(&pre) {
                out.push(pre);
            }
        }
    }
    out.sort_by_key(|s| (s.dim(), format!("{:?}", s.pivots())));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{matrix_algebra, path_algebra};
    use crate::structure::decompose;

    fn gf(p: u64) -> FieldDesc {
        FieldDesc::gf(p).unwrap()
    }

    fn kronecker(field: FieldDesc) -> Arc<Algebra> {
        let arrows = vec![(String::from("a"), 0, 1), (String::from("b"), 0, 1)];
        Arc::new(path_algebra(field, 2, &arrows, 64).unwrap())
    }

    #[test]
    fn regular_bimodule_validates() {
        for f in [FieldDesc::Rat, gf(2)] {
            let a = kronecker(f);
            let m = Bimodule::regular(&a);
            m.validate().unwrap();
            let m2 = Arc::new(matrix_algebra(f, 2).unwrap());
            Bimodule::regular(&m2).validate().unwrap();
        }
    }

    #[test]
    fn generated_ideals_of_kronecker() {
        let a = kronecker(gf(2));
        let m = Bimodule::regular(&a);
        let f = gf(2);
        // the two-sided ideal generated by an arrow is just its span
        let arrow = unit_row(f, 4, 2);
        assert_eq!(m.generated(&[arrow.clone()]).dim(), 1);
        // the ideal generated by the source vertex contains both arrows
        let e1 = unit_row(f, 4, 0);
        let ideal = m.generated(&[e1.clone()]);
        assert_eq!(ideal.dim(), 3);
        assert!(ideal.contains(&arrow));
        assert!(!ideal.contains(&unit_row(f, 4, 1)));
    }

    #[test]
    fn socles_of_the_kronecker_algebra() {
        // frozen: right socle = span(e2, a, b), left socle = span(e1, a, b)
        for f in [FieldDesc::Rat, gf(2), gf(5)] {
            let a = kronecker(f);
            let m = Bimodule::regular(&a);
            let soc_r = m.socle(Side::Right);
            assert_eq!(soc_r.dim(), 3);
            assert!(soc_r.contains(&unit_row(f, 4, 1)));
            assert!(!soc_r.contains(&unit_row(f, 4, 0)));
            let soc_l = m.socle(Side::Left);
            assert_eq!(soc_l.dim(), 3);
            assert!(soc_l.contains(&unit_row(f, 4, 0)));
            assert!(!soc_l.contains(&unit_row(f, 4, 1)));
        }
    }

    #[test]
    fn diamond_right_socle_is_the_last_column() {
        let a = Arc::new(
            crate::algebra::incidence_algebra(gf(2), 4, &[(0, 1), (0, 2), (1, 3), (2, 3)])
                .unwrap(),
        );
        let m = Bimodule::regular(&a);
        let soc = m.socle(Side::Right);
        assert_eq!(soc.dim(), 4);
        // exactly the basis vectors e_x4 survive
        for (i, l) in a.labels().iter().enumerate() {
            let into_top = l.ends_with('4');
            assert_eq!(soc.contains(&unit_row(gf(2), 9, i)), into_top, "{l}");
        }
    }

    #[test]
    fn hom_spaces_of_the_regular_module() {
        let a = kronecker(FieldDesc::Rat);
        let m = Arc::new(Bimodule::regular(&a));
        // End(A_A) = A (acting by left multiplication)
        let homs = hom_basis(Side::Right, &m, &m).unwrap();
        assert_eq!(homs.len(), 4);
        // Hom(e1 A, A) = A e1 which is one-dimensional
        let e1a = m.generated(&[unit_row(FieldDesc::Rat, 4, 0)]); // two-sided here
        let sub = m.sub(&e1a).unwrap().0;
        let homs = hom_basis(Side::Right, &sub, &m).unwrap();
        assert_eq!(homs.len(), 1);
    }

    #[test]
    fn map_validation_rejects_non_intertwiners() {
        let a = kronecker(FieldDesc::Rat);
        let m = Arc::new(Bimodule::regular(&a));
        // swapping e1 and e2 is not a bimodule map
        let f = FieldDesc::Rat;
        let mut mat = Mat::zero(f, 4, 4);
        *mat.at_mut(0, 1) = f.one();
        *mat.at_mut(1, 0) = f.one();
        *mat.at_mut(2, 2) = f.one();
        *mat.at_mut(3, 3) = f.one();
        assert!(BimoduleMap::new(Arc::clone(&m), Arc::clone(&m), mat).is_err());
        // identity works
        let id = BimoduleMap::new(Arc::clone(&m), Arc::clone(&m), Mat::identity(f, 4)).unwrap();
        assert!(id.is_injective() && id.is_surjective());
    }

    #[test]
    fn tensor_collapses_over_the_algebra() {
        // A (x)_A A = A
        let a = kronecker(gf(2));
        let m = Bimodule::regular(&a);
        let t = tensor_over(&m, &m).unwrap();
        assert_eq!(t.module().dim(), 4);
        // pure tensors multiply: e1 (x) a = a in the collapsed module
        let e1 = unit_row(gf(2), 4, 0);
        let arrow = unit_row(gf(2), 4, 2);
        let lhs = t.pure(&e1, &arrow);
        let rhs = t.pure(&arrow, &unit_row(gf(2), 4, 1));
        assert_eq!(lhs, rhs, "e1 (x) a = a = a (x) e2 after balancing");
        // (A/rad) (x)_A (A/rad) = A/rad
        let dec = decompose(&a).unwrap();
        let reg = Arc::new(m.clone());
        let (s, _) = reg.quotient(dec.radical()).unwrap();
        let t2 = tensor_over(&s, &s).unwrap();
        assert_eq!(t2.module().dim(), 2);
    }

    #[test]
    fn simples_and_composition_series() {
        let a = kronecker(FieldDesc::Rat);
        let dec = decompose(&a).unwrap();
        let simples = simple_modules(&dec, Side::Right).unwrap();
        assert_eq!(simples.len(), 2);
        assert!(simples.iter().all(|t| t.dim() == 1));
        // frozen composition counts of the regular right module: [1, 3]
        let m = Bimodule::regular(&a);
        let counts = m.composition_counts(Side::Right, &dec).unwrap();
        assert_eq!(counts.iter().sum::<usize>(), 4);
        let mut sorted = counts.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 3]);
        // left is the mirror image
        let counts_l = m.composition_counts(Side::Left, &dec).unwrap();
        let mut sorted_l = counts_l.clone();
        sorted_l.sort();
        assert_eq!(sorted_l, vec![1, 3]);
        assert_ne!(counts, counts_l);
        // matrix algebra: a single simple of dimension 2, count 2
        let m2 = Arc::new(matrix_algebra(gf(2), 2).unwrap());
        let dec2 = decompose(&m2).unwrap();
        let simples = simple_modules(&dec2, Side::Right).unwrap();
        assert_eq!(simples.len(), 1);
        assert_eq!(simples[0].dim(), 2);
        let counts = Bimodule::regular(&m2).composition_counts(Side::Right, &dec2).unwrap();
        assert_eq!(counts, vec![2]);
    }

    #[test]
    fn projective_covers() {
        let a = kronecker(FieldDesc::Rat);
        let dec = decompose(&a).unwrap();
        // the regular module is its own cover
        let m = Bimodule::regular(&a);
        let cover = projective_cover(&m, Side::Right, &dec).unwrap();
        assert_eq!(cover.projective.dim(), 4);
        assert!(cover.map.is_injective());
        assert!(is_projective(&m, Side::Right, &dec).unwrap());
        // simple T1 (source vertex) has cover e1 A of dimension 3
        let simples = simple_modules(&dec, Side::Right).unwrap();
        let dims: Vec<usize> = simples
            .iter()
            .map(|t| projective_cover(t, Side::Right, &dec).unwrap().projective.dim())
            .collect();
        let mut sorted = dims.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 3], "covers e1A (dim 3) and e2A (dim 1)");
    }

    #[test]
    fn injective_hull_of_kronecker_regular_has_dim_9() {
        // frozen from the worked example: soc(A_A) = T2^3 and E(T2) = D(A e2)
        // has dimension 3, so E(A_A) has dimension 9
        for f in [FieldDesc::Rat, gf(2)] {
            let a = kronecker(f);
            let dec = decompose(&a).unwrap();
            let m = Bimodule::regular(&a);
            let hull = injective_hull(&m, Side::Right, &dec).unwrap();
            assert_eq!(hull.hull.dim(), 9);
            assert!(hull.embed.is_injective());
            // the simple T2 has a 3-dimensional hull
            let simples = simple_modules(&dec, Side::Right).unwrap();
            let dims: Vec<usize> = simples
                .iter()
                .map(|t| injective_hull(t, Side::Right, &dec).unwrap().hull.dim())
                .collect();
            let mut sorted = dims.clone();
            sorted.sort();
            assert_eq!(sorted, vec![1, 3]);
        }
    }

    #[test]
    fn diamond_injective_hull_has_dim_16() {
        // frozen: soc(R_R) = T4^4 and E(T4) = D(A e44) has dimension 4
        let a = Arc::new(
            crate::algebra::incidence_algebra(gf(2), 4, &[(0, 1), (0, 2), (1, 3), (2, 3)])
                .unwrap(),
        );
        let dec = decompose(&a).unwrap();
        let m = Bimodule::regular(&a);
        let hull = injective_hull(&m, Side::Right, &dec).unwrap();
        assert_eq!(hull.hull.dim(), 16);
    }

    #[test]
    fn self_injective_examples() {
        // M_2 and the dual numbers are self-injective
        let m2 = Arc::new(matrix_algebra(gf(2), 2).unwrap());
        let dec = decompose(&m2).unwrap();
        assert!(is_injective(&Bimodule::regular(&m2), Side::Right, &dec).unwrap());
        let f = gf(2);
        let z = zero_row(f, 2);
        let one = unit_row(f, 2, 0);
        let t = unit_row(f, 2, 1);
        let dual_numbers = Arc::new(
            Algebra::new(
                f,
                2,
                vec![one.clone(), t.clone(), t.clone(), z],
                one.clone(),
                vec!["1".into(), "t".into()],
            )
            .unwrap(),
        );
        let dec = decompose(&dual_numbers).unwrap();
        assert!(is_injective(&Bimodule::regular(&dual_numbers), Side::Right, &dec).unwrap());
        assert!(is_projective(&Bimodule::regular(&dual_numbers), Side::Right, &dec).unwrap());
    }

    #[test]
    fn colon_ideal_frozen_example() {
        // (rad : e2) for the right ideal rad of the Kronecker algebra is
        // span(e1, a, b)
        let a = kronecker(FieldDesc::Rat);
        let rad = crate::structure::radical(&a);
        let f = FieldDesc::Rat;
        let c = colon(&a, Side::Right, &rad, &unit_row(f, 4, 1)).unwrap();
        assert_eq!(c.dim(), 3);
        assert!(c.contains(&unit_row(f, 4, 0)));
        assert!(!c.contains(&unit_row(f, 4, 1)));
        // colon by the unit gives the ideal back
        let c1 = colon(&a, Side::Right, &rad, a.unit()).unwrap();
        assert_eq!(c1, rad);
    }

    #[test]
    fn annihilators() {
        let a = kronecker(FieldDesc::Rat);
        let m = Bimodule::regular(&a);
        let f = FieldDesc::Rat;
        // right annihilator of e1: { x : e1 x = 0 } = span(e2) + nothing...
        // e1 * (c1 e1 + c2 e2 + c3 a + c4 b) = c1 e1 + c3 a + c4 b
        let ann = annihilator(&m, &[unit_row(f, 4, 0)], Side::Right);
        assert_eq!(ann.dim(), 1);
        assert!(ann.contains(&unit_row(f, 4, 1)));
        // annihilator of the whole module is zero (unital)
        let basis: Vec<Vec<Scalar>> = (0..4).map(|i| unit_row(f, 4, i)).collect();
        assert_eq!(annihilator(&m, &basis, Side::Right).dim(), 0);
    }

    #[test]
    fn submodule_enumeration_over_gf2() {
        // frozen: the Kronecker algebra over GF(2) has exactly 8 two-sided
        // ideals: 0, three lines in the radical, the radical, the two ideals
        // generated by the vertices, and the whole algebra
        let a = kronecker(gf(2));
        let m = Bimodule::regular(&a);
        let ideals = all_submodules(&m, 1 << 12).unwrap();
        assert_eq!(ideals.len(), 8);
        let dims: Vec<usize> = ideals.iter().map(Subspace::dim).collect();
        assert_eq!(dims, vec![0, 1, 1, 1, 2, 3, 3, 4]);
    }

    #[test]
    fn maximal_submodules_of_the_regular_module() {
        let a = kronecker(gf(2));
        let dec = decompose(&a).unwrap();
        let m = Arc::new(Bimodule::regular(&a));
        let maxes = maximal_submodules(&m, Side::Right, &dec, 1 << 12).unwrap();
        // frozen: exactly two maximal right ideals, span(e2,a,b), span(e1,a,b)
        assert_eq!(maxes.len(), 2);
        assert!(maxes.iter().all(|s| s.dim() == 3));
        // e1 A = span(e1, a, b) has a unique maximal submodule span(a, b)
        let e1a_rows: Vec<Vec<Scalar>> = vec![
            unit_row(gf(2), 4, 0),
            unit_row(gf(2), 4, 2),
            unit_row(gf(2), 4, 3),
        ];
        let e1a = Subspace::from_rows(gf(2), 4, &e1a_rows).unwrap();
        let (sub, _) = m.sub(&e1a).unwrap();
        let maxes = maximal_submodules(&sub, Side::Right, &dec, 1 << 12).unwrap();
        assert_eq!(maxes.len(), 1);
        assert_eq!(maxes[0].dim(), 2);
    }

    #[test]
    fn dual_swaps_sides_and_is_involutive() {
        let a = kronecker(FieldDesc::Rat);
        let m = Bimodule::regular(&a);
        let d = m.dual();
        d.validate().unwrap();
        // dual of the right socle dimension equals the left top dimension
        let dd = d.dual();
        assert_eq!(dd.left_act, m.left_act);
        assert_eq!(dd.right_act, m.right_act);
    }

    #[test]
    fn direct_sum_dims_and_injections() {
        let a = kronecker(FieldDesc::Rat);
        let m = Arc::new(Bimodule::regular(&a).forget_left());
        let (sum, injs) = Bimodule::direct_sum(&[Arc::clone(&m), Arc::clone(&m)]).unwrap();
        assert_eq!(sum.dim(), 8);
        assert_eq!(injs.len(), 2);
        assert!(injs.iter().all(BimoduleMap::is_injective));
    }
}
