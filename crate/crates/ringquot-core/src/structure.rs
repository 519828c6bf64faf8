//! Structure theory of a finite-dimensional algebra: Jacobson radical,
//! semisimple quotient, complete systems of primitive orthogonal idempotents
//! (for split algebras), block decomposition, and matrix-algebra certificates.
//!
//! The radical is computed exactly in every supported characteristic: over the
//! rationals as the kernel of the regular trace form, over GF(p) by the
//! integer-lifted trace chain that repairs the degeneration of the trace form
//! in small characteristic. Idempotent splitting uses minimal polynomials and
//! root finding only; when no splitting element with linear factors exists the
//! engine falls back to full factorization over GF(p), then to exhaustive
//! search under a budget, and reports `Unsupported` rather than guessing.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::{all_vectors, matrix_algebra, Algebra, RingExtension};
use crate::error::{Error, Result};
use crate::linalg::{row_is_zero, unit_row, zero_row, Mat, QuotientMap, Subspace};
use crate::poly::{self, Poly};
use crate::scalar::{FieldDesc, Scalar};

/// Exhaustive idempotent search is attempted only below this many candidates.
const ENUMERATION_BUDGET: u64 = 1 << 16;

// ---- Minimal polynomials ----

/// Monic minimal polynomial of an element (little-endian coefficients).
pub fn min_poly(a: &Algebra, u: &[Scalar]) -> Poly {
    let field = a.field();
    let mut rows: Vec<Vec<Scalar>> = vec![a.unit().to_vec()];
    let mut power = a.unit().to_vec();
    loop {
        power = a.mul(&power, u);
        let m = Mat::from_rows(field, a.dim(), &rows).expect("rows");
        if let Ok(Some(coeffs)) = m.transpose().solve(&power) {
            // power = sum coeffs_i rows_i, so min poly = x^d - sum c_i x^i
            let mut p: Poly = coeffs.iter().map(|c| -c).collect();
            p.push(field.one());
            poly::trim(&mut p);
            return p;
        }
        rows.push(power.clone());
    }
}

// ---- Radical ----

fn trace(m: &Mat) -> Scalar {
    let mut t = m.field().zero();
    for i in 0..m.rows() {
        t = &t + m.at(i, i);
    }
    t
}

/// Kernel of the bilinear form `(x, y) -> tr(L(xy))` restricted to a subspace
/// (rows of `basis` span it); returns the kernel in ambient coordinates.
fn trace_form_kernel(a: &Algebra, basis: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let field = a.field();
    let m = basis.len();
    let gram = Mat::from_fn(field, m, m, |i, j| {
        trace(&a.left_mul_matrix(&a.mul(&basis[i], &basis[j])))
    });
    let ker = gram.transpose().kernel(); // rows c with sum c_i gram[i][j] = 0
    (0..ker.rows())
        .map(|r| {
            let mut v = zero_row(field, a.dim());
            for (c, b) in ker.row(r).iter().zip(basis) {
                if !c.is_zero() {
                    for (slot, x) in v.iter_mut().zip(b) {
                        *slot = &*slot + &(c * x);
                    }
                }
            }
            v
        })
        .collect()
}

fn big_lift(m: &Mat) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = match m.at(i, j) {
                Scalar::Gf { v, .. } => *v,
                Scalar::Rat(_) => unreachable!("integer lift of a rational matrix"),
            };
            out.push(BigInt::from(v));
        }
    }
    out
}

fn big_mul(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = &a[i * n + k];
            if aik.is_zero() {
                continue;
            }
            for j in 0..n {
                let t = aik * &b[k * n + j];
                out[i * n + j] += t;
            }
        }
    }
    out
}

fn big_pow_trace(m: &[BigInt], n: usize, e: u64) -> BigInt {
    // trace of m^e, e >= 1, by binary exponentiation
    let mut base = m.to_vec();
    let mut acc: Option<Vec<BigInt>> = None;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => big_mul(&a, &base, n),
            });
        }
        e >>= 1;
        if e > 0 {
            base = big_mul(&base, &base, n);
        }
    }
    let acc = acc.expect("exponent >= 1");
    (0..n).map(|i| acc[i * n + i].clone()).sum()
}

/// The Jacobson radical. Over the rationals this is the kernel of the regular
/// trace form; over GF(p) the trace form can vanish identically, and the
/// radical is cut out by the chain of integer-lifted trace conditions
/// `tr((X Y)^{p^k}) / p^k = 0 (mod p)` for `p^k` up to the dimension, each
/// level restricted to the space cut out by the previous ones.
pub fn radical(a: &Algebra) -> Subspace {
    let field = a.field();
    let n = a.dim();
    let id = Mat::identity(field, n);
    let full: Vec<Vec<Scalar>> = (0..n).map(|i| id.row(i).to_vec()).collect();
    match field {
        FieldDesc::Rat => {
            Subspace::from_rows(field, n, &trace_form_kernel(a, &full)).expect("rows")
        }
        FieldDesc::Gf(p) => {
            let mut basis = full;
            let mut pk: u64 = 1;
            while !basis.is_empty() && pk <= n as u64 {
                let m = basis.len();
                // constraint rows: for each y in basis, x -> lifted trace value
                let lifts: Vec<Vec<BigInt>> =
                    basis.iter().map(|b| big_lift(&a.left_mul_matrix(b))).collect();
                let divisor = BigInt::from(pk);
                let modulus = BigInt::from(p);
                let gram = Mat::from_fn(field, m, m, |yi, xi| {
                    let prod = big_mul(&lifts[xi], &lifts[yi], n);
                    let t = big_pow_trace(&prod, n, pk);
                    let (q, r) = num_integer::Integer::div_rem(&t, &divisor);
                    assert!(r.is_zero(), "trace chain divisibility certificate");
                    let v = num_integer::Integer::mod_floor(&q, &modulus)
                        .to_u64()
                        .expect("residue fits");
                    Scalar::Gf { v, p }
                });
                let ker = gram.kernel(); // x-coefficient vectors
                let next: Vec<Vec<Scalar>> = (0..ker.rows())
                    .map(|r| {
                        let mut v = zero_row(field, n);
                        for (c, b) in ker.row(r).iter().zip(&basis) {
                            if !c.is_zero() {
                                for (slot, x) in v.iter_mut().zip(b) {
                                    *slot = &*slot + &(c * x);
                                }
                            }
                        }
                        v
                    })
                    .collect();
                basis = next;
                pk *= p;
            }
            Subspace::from_rows(field, n, &basis).expect("rows")
        }
    }
}

pub fn is_semisimple(a: &Algebra) -> bool {
    radical(a).dim() == 0
}

/// An algebra is local when its semisimple quotient is one-dimensional.
pub fn is_local(a: &Algebra) -> bool {
    a.dim() - radical(a).dim() == 1
}

// ---- Quotient algebras and corners ----

/// The quotient algebra by a two-sided ideal (checked for stability), with the
/// projection data. Basis labels are bracketed representatives.
pub fn quotient_algebra(a: &Algebra, ideal: &Subspace) -> Result<(Algebra, QuotientMap)> {
    let field = a.field();
    let n = a.dim();
    if ideal.ambient() != n || ideal.field() != field {
        return Err(Error::DimMismatch(String::from("ideal lives in a different space")));
    }
    for i in 0..n {
        let e = unit_row(field, n, i);
        let l = ideal.image_under(&a.left_mul_matrix(&e))?;
        let r = ideal.image_under(&a.right_mul_matrix(&e))?;
        if !ideal.contains_subspace(&l) || !ideal.contains_subspace(&r) {
            return Err(Error::NotStable(format!(
                "subspace is not a two-sided ideal (fails at basis element {i})"
            )));
        }
    }
    let qm = QuotientMap::new(ideal.clone());
    let dim = qm.dim();
    let lifts: Vec<Vec<Scalar>> = (0..dim)
        .map(|i| qm.lift(&unit_row(field, dim, i)))
        .collect();
    let mut table = Vec::with_capacity(dim * dim);
    for bi in &lifts {
        for bj in &lifts {
            table.push(qm.project(&a.mul(bi, bj)));
        }
    }
    let unit = qm.project(a.unit());
    let labels = lifts.iter().map(|l| format!("[{}]", a.render(l))).collect();
    let q = Algebra::from_parts(field, dim, table, unit, labels)?;
    Ok((q, qm))
}

/// The corner algebra `eAe` for an idempotent `e`, with its basis rows in
/// ambient coordinates. The corner's unit is `e`.
pub fn corner_algebra(a: &Algebra, e: &[Scalar]) -> Result<(Algebra, Vec<Vec<Scalar>>)> {
    if a.mul(e, e) != e.to_vec() {
        return Err(Error::Precondition(String::from("corner element is not idempotent")));
    }
    let field = a.field();
    let rows: Vec<Vec<Scalar>> = (0..a.dim())
        .map(|i| a.mul(&a.mul(e, &unit_row(field, a.dim(), i)), e))
        .collect();
    let span = Subspace::from_rows(field, a.dim(), &rows)?;
    let basis: Vec<Vec<Scalar>> = span.basis_rows();
    let dim = basis.len();
    let coords = |v: &[Scalar]| span.coords(v).ok_or(Error::Engine(String::from("corner coords")));
    let mut table = Vec::with_capacity(dim * dim);
    for bi in &basis {
        for bj in &basis {
            table.push(coords(&a.mul(bi, bj))?);
        }
    }
    let unit = coords(e)?;
    let labels = basis.iter().map(|b| a.render(b)).collect();
    let c = Algebra::from_parts(field, dim, table, unit, labels)?;
    Ok((c, basis))
}

// ---- Primitive idempotents ----

/// In a semisimple algebra, splits the unit into primitive orthogonal
/// idempotents; requires the algebra to be split (all simple factors full
/// matrix algebras over the base field), else `Unsupported`.
fn primitive_system_semisimple(s: &Algebra) -> Result<Vec<Vec<Scalar>>> {
    let field = s.field();
    let mut done: Vec<Vec<Scalar>> = Vec::new();
    let mut work: Vec<Vec<Scalar>> = vec![s.unit().to_vec()];
    while let Some(e) = work.pop() {
        let (corner, basis) = corner_algebra(s, &e)?;
        if corner.dim() == 1 {
            done.push(e);
            continue;
        }
        match split_corner(&corner)? {
            Some(parts) => {
                // convert corner coordinates back to ambient coordinates
                for part in parts {
                    let mut v = zero_row(field, s.dim());
                    for (c, b) in part.iter().zip(&basis) {
                        if !c.is_zero() {
                            for (slot, x) in v.iter_mut().zip(b) {
                                *slot = &*slot + &(c * x);
                            }
                        }
                    }
                    work.push(v);
                }
            }
            None => {
                return Err(Error::Unsupported(match field {
                    FieldDesc::Rat => String::from(
                        "algebra is not certified split over Q: a semisimple corner has no rational eigenvalues",
                    ),
                    FieldDesc::Gf(p) => format!(
                        "algebra is not split over GF({p}): a semisimple corner is a proper field extension"
                    ),
                }));
            }
        }
    }
    done.reverse();
    Ok(done)
}

/// Tries to split the unit of a corner algebra (dim >= 2, semisimple) into
/// two or more orthogonal idempotents, returned in corner coordinates.
/// `Ok(None)` means the corner was certified unsplittable over the base field
/// or exceeded the enumeration budget.
fn split_corner(corner: &Algebra) -> Result<Option<Vec<Vec<Scalar>>>> {
    let field = corner.field();
    let dim = corner.dim();
    let mut candidates: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..dim {
        candidates.push(unit_row(field, dim, i));
    }
    for i in 0..dim {
        for j in (i + 1)..dim {
            let mut v = unit_row(field, dim, i);
            v[j] = field.one();
            candidates.push(v);
        }
    }
    // pass 1: splittings through roots of minimal polynomials
    let mut polys: Vec<(Vec<Scalar>, Poly)> = Vec::new();
    for u in &candidates {
        let mu = min_poly(corner, u);
        if poly::deg(&mu).is_none_or(|d| d < 2) {
            continue;
        }
        let roots = match field {
            FieldDesc::Rat => poly::rational_roots(&mu).unwrap_or_default(),
            FieldDesc::Gf(_) => poly::gf_roots(&mu, field),
        };
        if let Some(parts) = coprime_parts_from_roots(&mu, &roots, field) {
            return Ok(Some(crt_idempotents(corner, u, &parts)?));
        }
        polys.push((u.clone(), mu));
    }
    // pass 2 (finite fields): full factorization provides coprime parts even
    // when the factors are irreducible of higher degree
    if let FieldDesc::Gf(_) = field {
        for (u, mu) in &polys {
            let factors = poly::factor_gf(mu, field);
            if factors.len() >= 2 {
                let parts: Vec<Poly> = factors
                    .iter()
                    .map(|(f, e)| {
                        let mut acc = vec![field.one()];
                        for _ in 0..*e {
                            acc = poly::mul(&acc, f, field);
                        }
                        acc
                    })
                    .collect();
                return Ok(Some(crt_idempotents(corner, u, &parts)?));
            }
        }
        // pass 3: exhaustive idempotent search under the budget
        if let Some(order) = field.order() {
            if (dim as u32) < 64 && order.checked_pow(dim as u32).is_some_and(|c| c <= ENUMERATION_BUDGET)
            {
                let unit = corner.unit().to_vec();
                for x in all_vectors(field, dim).expect("finite field") {
                    if row_is_zero(&x) || x == unit {
                        continue;
                    }
                    if corner.mul(&x, &x) == x {
                        let co: Vec<Scalar> = unit.iter().zip(&x).map(|(u, v)| u - v).collect();
                        return Ok(Some(vec![x, co]));
                    }
                }
                // no nontrivial idempotent at all: division algebra over a
                // finite field, hence a field properly extending the base
                return Ok(None);
            }
        }
    }
    Ok(None)
}

/// Splits the minimal polynomial into pairwise coprime parts using its roots:
/// one `(x - r)^m` part per root plus the rootless remainder. `None` when this
/// yields fewer than two parts.
fn coprime_parts_from_roots(mu: &Poly, roots: &[Scalar], field: FieldDesc) -> Option<Vec<Poly>> {
    if roots.is_empty() {
        return None;
    }
    let mut rest = mu.clone();
    let mut parts: Vec<Poly> = Vec::new();
    for r in roots {
        let lin: Poly = vec![-r, field.one()];
        let mut power = vec![field.one()];
        loop {
            let (q, rem) = poly::divmod(&rest, &lin, field);
            if rem.is_empty() {
                rest = q;
                power = poly::mul(&power, &lin, field);
            } else {
                break;
            }
        }
        if poly::deg(&power).is_some_and(|d| d >= 1) {
            parts.push(power);
        }
    }
    if poly::deg(&rest).is_some_and(|d| d >= 1) {
        parts.push(poly::monic(&rest));
    }
    if parts.len() >= 2 {
        Some(parts)
    } else {
        None
    }
}

/// Given `u` with minimal polynomial `prod parts_i` (pairwise coprime), builds
/// the orthogonal idempotent system of `F[u]` via CRT and returns it in the
/// algebra's coordinates. The idempotents sum to the unit.
fn crt_idempotents(a: &Algebra, u: &[Scalar], parts: &[Poly]) -> Result<Vec<Vec<Scalar>>> {
    let field = a.field();
    let mut mu = vec![field.one()];
    for p in parts {
        mu = poly::mul(&mu, p, field);
    }
    let mut out = Vec::with_capacity(parts.len());
    for p in parts {
        let (q, _) = poly::divmod(&mu, p, field);
        let (g, s, _) = poly::xgcd(&q, p, field);
        if poly::deg(&g) != Some(0) {
            return Err(Error::Engine(String::from("CRT parts are not coprime")));
        }
        let h = poly::mul(&s, &q, field); // h = 1 mod p, 0 mod others
        out.push(eval_in_algebra(a, &h, u));
    }
    // certify the system before returning it
    let mut total = zero_row(field, a.dim());
    for e in &out {
        if a.mul(e, e) != *e {
            return Err(Error::Engine(String::from("CRT element is not idempotent")));
        }
        for (slot, x) in total.iter_mut().zip(e) {
            *slot = &*slot + x;
        }
    }
    if total != a.unit().to_vec() {
        return Err(Error::Engine(String::from("CRT idempotents do not sum to the unit")));
    }
    Ok(out)
}

/// Evaluates a polynomial at an algebra element (Horner; the constant term
/// multiplies the unit).
fn eval_in_algebra(a: &Algebra, p: &Poly, u: &[Scalar]) -> Vec<Scalar> {
    let field = a.field();
    let mut acc = zero_row(field, a.dim());
    for c in p.iter().rev() {
        acc = a.mul(&acc, u);
        if !c.is_zero() {
            for (slot, x) in acc.iter_mut().zip(a.unit()) {
                *slot = &*slot + &(c * x);
            }
        }
    }
    acc
}

// ---- The full decomposition ----

/// Radical, semisimple quotient, a complete system of primitive orthogonal
/// idempotents, their grouping into isomorphism types, and the block
/// partition. Construction fails with `Unsupported` when the algebra cannot
/// be certified split over its base field.
#[derive(Debug, Clone)]
pub struct Decomposition {
    algebra: Arc<Algebra>,
    radical: Subspace,
    semisimple: Algebra,
    proj: QuotientMap,
    idempotents: Vec<Vec<Scalar>>,
    types: Vec<Vec<usize>>,
    blocks: Vec<Vec<usize>>,
}

pub fn decompose(a: &Arc<Algebra>) -> Result<Decomposition> {
    let field = a.field();
    let rad = radical(a);
    let (s, proj) = quotient_algebra(a, &rad)?;
    let bar_system = primitive_system_semisimple(&s)?;
    // lift sequentially; each new idempotent is conjugated into the corner of
    // the complement of the ones lifted so far, preserving orthogonality
    let mut lifted: Vec<Vec<Scalar>> = Vec::new();
    let mut sum = zero_row(field, a.dim());
    for bar_e in &bar_system {
        let mut x = proj.lift(bar_e);
        let co: Vec<Scalar> = a.unit().iter().zip(&sum).map(|(u, v)| u - v).collect();
        x = a.mul(&a.mul(&co, &x), &co);
        x = lift_idempotent(a, x)?;
        for (slot, v) in sum.iter_mut().zip(&x) {
            *slot = &*slot + v;
        }
        lifted.push(x);
    }
    if sum != a.unit().to_vec() {
        return Err(Error::Engine(String::from("lifted idempotents do not sum to 1")));
    }
    for (i, e) in lifted.iter().enumerate() {
        for (j, f) in lifted.iter().enumerate() {
            let prod = a.mul(e, f);
            let expect = if i == j { e.clone() } else { zero_row(field, a.dim()) };
            if prod != expect {
                return Err(Error::Engine(String::from("lifted system is not orthogonal")));
            }
        }
    }
    // types: bar_e_i and bar_e_j generate isomorphic simples iff
    // bar_e_i S bar_e_j is nonzero
    let linked_in = |alg: &Algebra, e: &[Scalar], f: &[Scalar]| -> bool {
        (0..alg.dim()).any(|k| {
            !row_is_zero(&alg.mul(&alg.mul(e, &unit_row(alg.field(), alg.dim(), k)), f))
        })
    };
    let m = bar_system.len();
    let mut types: Vec<Vec<usize>> = Vec::new();
    for i in 0..m {
        match types
            .iter_mut()
            .find(|cls| linked_in(&s, &bar_system[cls[0]], &bar_system[i]))
        {
            Some(cls) => cls.push(i),
            None => types.push(vec![i]),
        }
    }
    // blocks: connected components of the linkage graph e_i A e_j != 0 in A
    let mut block_of: Vec<usize> = (0..m).collect();
    loop {
        let mut changed = false;
        for i in 0..m {
            for j in 0..m {
                if block_of[i] != block_of[j]
                    && (linked_in(a, &lifted[i], &lifted[j])
                        || linked_in(a, &lifted[j], &lifted[i]))
                {
                    let t = block_of[i].min(block_of[j]);
                    block_of[i] = t;
                    block_of[j] = t;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..m {
        match reps.iter().position(|&r| block_of[r] == block_of[i]) {
            Some(b) => blocks[b].push(i),
            None => {
                reps.push(i);
                blocks.push(vec![i]);
            }
        }
    }
    // each block idempotent must be central
    for blk in &blocks {
        let mut c = zero_row(field, a.dim());
        for &i in blk {
            for (slot, v) in c.iter_mut().zip(&lifted[i]) {
                *slot = &*slot + v;
            }
        }
        for k in 0..a.dim() {
            let ek = unit_row(field, a.dim(), k);
            if a.mul(&c, &ek) != a.mul(&ek, &c) {
                return Err(Error::Engine(String::from("block idempotent is not central")));
            }
        }
    }
    Ok(Decomposition {
        algebra: Arc::clone(a),
        radical: rad,
        semisimple: s,
        proj,
        idempotents: lifted,
        types,
        blocks,
    })
}

/// Lifts an element idempotent modulo the radical to an honest idempotent:
/// Frobenius iteration in characteristic p, Newton iteration `3x^2 - 2x^3`
/// in characteristic zero.
fn lift_idempotent(a: &Algebra, mut x: Vec<Scalar>) -> Result<Vec<Scalar>> {
    let field = a.field();
    for _ in 0..64 {
        if a.mul(&x, &x) == x {
            return Ok(x);
        }
        match field {
            FieldDesc::Gf(p) => {
                // x <- x^p by square-and-multiply
                let mut acc = a.unit().to_vec();
                let mut base = x.clone();
                let mut e = p;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = a.mul(&acc, &base);
                    }
                    e >>= 1;
                    if e > 0 {
                        base = a.mul(&base, &base);
                    }
                }
                x = acc;
            }
            FieldDesc::Rat => {
                let x2 = a.mul(&x, &x);
                let x3 = a.mul(&x2, &x);
                let three = field.from_i64(3);
                let two = field.from_i64(2);
                x = x2
                    .iter()
                    .zip(&x3)
                    .map(|(s, c)| &(&three * s) - &(&two * c))
                    .collect();
            }
        }
    }
    Err(Error::Engine(String::from("idempotent lifting did not converge")))
}

impl Decomposition {
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn radical(&self) -> &Subspace {
        &self.radical
    }

    /// The semisimple quotient algebra.
    pub fn semisimple(&self) -> &Algebra {
        &self.semisimple
    }

    /// Projection data for algebra -> semisimple quotient.
    pub fn projection(&self) -> &QuotientMap {
        &self.proj
    }

    /// Complete system of primitive orthogonal idempotents (in the algebra).
    pub fn idempotents(&self) -> &[Vec<Scalar>] {
        &self.idempotents
    }

    /// Partition of idempotent indices by isomorphism type of their simples.
    pub fn types(&self) -> &[Vec<usize>] {
        &self.types
    }

    /// One idempotent per isomorphism type.
    pub fn type_representatives(&self) -> Vec<&Vec<Scalar>> {
        self.types.iter().map(|cls| &self.idempotents[cls[0]]).collect()
    }

    /// Partition of idempotent indices into blocks.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// The central idempotent of each block.
    pub fn block_idempotents(&self) -> Vec<Vec<Scalar>> {
        self.blocks
            .iter()
            .map(|blk| {
                let mut c = zero_row(self.algebra.field(), self.algebra.dim());
                for &i in blk {
                    for (slot, v) in c.iter_mut().zip(&self.idempotents[i]) {
                        *slot = &*slot + v;
                    }
                }
                c
            })
            .collect()
    }
}

// ---- Matrix-algebra certificates ----

/// Outcome of testing whether an algebra is a full matrix algebra.
#[derive(Debug, Clone)]
pub enum MatrixShape {
    /// Certified isomorphic to M_n over the base field; when the primitive
    /// idempotent machinery succeeds the witness isomorphism is included.
    Matrix { n: usize, iso: Option<Box<RingExtension>> },
    /// Central simple of dimension n^2 over Q, but no explicit isomorphism
    /// to M_n(Q) was certified (the algebra may be a division algebra).
    CentralSimple { n: usize },
    /// Not a matrix algebra, with the failing invariant.
    Not { reason: String },
}

/// Decides whether the algebra is (certified to be) a full matrix algebra.
/// The tests are: zero radical, one-dimensional center, square dimension;
/// a witness isomorphism is constructed from a primitive idempotent when
/// possible. Over a finite field those invariants already force M_n.
pub fn matrix_shape(a: &Arc<Algebra>) -> Result<MatrixShape> {
    let field = a.field();
    if radical(a).dim() != 0 {
        return Ok(MatrixShape::Not { reason: String::from("nonzero radical") });
    }
    let z = a.center().dim();
    if z != 1 {
        return Ok(MatrixShape::Not { reason: format!("center has dimension {z}") });
    }
    let n = (1..).find(|k| k * k >= a.dim()).expect("bounded");
    if n * n != a.dim() {
        return Ok(MatrixShape::Not {
            reason: format!("dimension {} is not a perfect square", a.dim()),
        });
    }
    // semisimple + central => simple; try for an explicit isomorphism
    match decompose(a) {
        Ok(dec) => {
            let e = &dec.idempotents()[0];
            // left module V = A e, acted on by left multiplication
            let cols: Vec<Vec<Scalar>> = (0..a.dim())
                .map(|i| a.mul(&unit_row(field, a.dim(), i), e))
                .collect();
            let v = Subspace::from_rows(field, a.dim(), &cols)?;
            if v.dim() != n {
                return Err(Error::Engine(String::from(
                    "principal module of a central simple algebra has unexpected dimension",
                )));
            }
            let target = Arc::new(matrix_algebra(field, n)?);
            let mut rows = Vec::with_capacity(a.dim());
            for i in 0..a.dim() {
                let li = a.left_mul_matrix(&unit_row(field, a.dim(), i));
                let act = v.restrict(&li)?;
                // flatten row-major into the matrix-unit basis
                let mut flat = Vec::with_capacity(n * n);
                for r in 0..n {
                    for c in 0..n {
                        flat.push(act.at(r, c).clone());
                    }
                }
                rows.push(flat);
            }
            let ext = RingExtension::new(
                Arc::clone(a),
                target,
                Mat::from_rows(field, n * n, &rows)?,
            )?;
            if !ext.is_bijective() {
                return Err(Error::Engine(String::from("matrix representation is not bijective")));
            }
            Ok(MatrixShape::Matrix { n, iso: Some(Box::new(ext)) })
        }
        Err(Error::Unsupported(_)) => match field {
            // over a finite field a central division algebra is the field
            // itself, so central simple of square dimension is already M_n
            FieldDesc::Gf(_) => Ok(MatrixShape::Matrix { n, iso: None }),
            FieldDesc::Rat => Ok(MatrixShape::CentralSimple { n }),
        },
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{incidence_algebra, path_algebra};

    fn gf(p: u64) -> FieldDesc {
        FieldDesc::gf(p).unwrap()
    }

    fn kronecker(field: FieldDesc) -> Arc<Algebra> {
        let arrows = vec![(String::from("a"), 0, 1), (String::from("b"), 0, 1)];
        Arc::new(path_algebra(field, 2, &arrows, 64).unwrap())
    }

    fn diamond(field: FieldDesc) -> Arc<Algebra> {
        Arc::new(incidence_algebra(field, 4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap())
    }

    /// Cyclic group algebra F[g]/(g^k - 1).
    fn cyclic_group_algebra(field: FieldDesc, k: usize) -> Arc<Algebra> {
        let mut table = Vec::new();
        for i in 0..k {
            for j in 0..k {
                table.push(unit_row(field, k, (i + j) % k));
            }
        }
        let labels = (0..k).map(|i| format!("g{i}")).collect();
        Arc::new(Algebra::new(field, k, table, unit_row(field, k, 0), labels).unwrap())
    }

    #[test]
    fn matrix_algebras_have_zero_radical() {
        for f in [FieldDesc::Rat, gf(2), gf(3)] {
            for n in 1..=3 {
                let a = matrix_algebra(f, n).unwrap();
                assert_eq!(radical(&a).dim(), 0, "M_{n} over {f:?}");
                assert!(is_semisimple(&a));
            }
        }
    }

    #[test]
    fn kronecker_radical_is_the_arrow_span() {
        for f in [FieldDesc::Rat, gf(2), gf(5)] {
            let a = kronecker(f);
            let rad = radical(&a);
            assert_eq!(rad.dim(), 2);
            // arrows sit at basis positions 2 and 3
            assert!(rad.contains(&unit_row(f, 4, 2)));
            assert!(rad.contains(&unit_row(f, 4, 3)));
            assert!(!rad.contains(&unit_row(f, 4, 0)));
        }
    }

    #[test]
    fn dual_numbers_radical_survives_trace_degeneration() {
        // GF(2)[t]/(t^2): the plain trace form vanishes identically, so this
        // exercises the lifted-trace chain
        let f = gf(2);
        let z = zero_row(f, 2);
        let one = unit_row(f, 2, 0);
        let t = unit_row(f, 2, 1);
        let table = vec![one.clone(), t.clone(), t.clone(), z.clone()];
        let a = Algebra::new(f, 2, table, one.clone(), vec!["1".into(), "t".into()]).unwrap();
        let rad = radical(&a);
        assert_eq!(rad.dim(), 1);
        assert!(rad.contains(&t));
        assert!(is_local(&a));
    }

    #[test]
    fn modular_group_algebras_are_local() {
        // GF(2)[C2]: radical spanned by 1 + g
        let a = cyclic_group_algebra(gf(2), 2);
        let rad = radical(&a);
        assert_eq!(rad.dim(), 1);
        let mut v = unit_row(gf(2), 2, 0);
        v[1] = gf(2).one();
        assert!(rad.contains(&v));
        assert!(is_local(&a));
        // GF(3)[C3]: radical has dimension 2
        let b = cyclic_group_algebra(gf(3), 3);
        assert_eq!(radical(&b).dim(), 2);
        assert!(is_local(&b));
        // Q[C3] is semisimple
        let c = cyclic_group_algebra(FieldDesc::Rat, 3);
        assert!(is_semisimple(&c));
    }

    #[test]
    fn diamond_radical_is_the_strict_part() {
        for f in [FieldDesc::Rat, gf(2)] {
            let a = diamond(f);
            let rad = radical(&a);
            assert_eq!(rad.dim(), 5);
            // labels: diagonal pairs are e11, e22, e33, e44
            for (i, l) in a.labels().iter().enumerate() {
                let diagonal = l.as_bytes()[1] == l.as_bytes()[2];
                assert_eq!(!rad.contains(&unit_row(f, 9, i)), diagonal, "{l}");
            }
        }
    }

    #[test]
    fn semisimple_quotient_of_kronecker() {
        let a = kronecker(FieldDesc::Rat);
        let (s, _) = quotient_algebra(&a, &radical(&a)).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.is_commutative());
        assert!(is_semisimple(&s));
    }

    #[test]
    fn quotient_rejects_non_ideals() {
        let a = kronecker(FieldDesc::Rat);
        // span(e1) is not an ideal (e1 * a = a escapes)
        let sub = Subspace::from_rows(FieldDesc::Rat, 4, &[unit_row(FieldDesc::Rat, 4, 0)])
            .unwrap();
        assert!(matches!(quotient_algebra(&a, &sub), Err(Error::NotStable(_))));
    }

    #[test]
    fn kronecker_idempotents_types_blocks() {
        for f in [FieldDesc::Rat, gf(2), gf(5)] {
            let a = kronecker(f);
            let dec = decompose(&a).unwrap();
            assert_eq!(dec.idempotents().len(), 2);
            assert_eq!(dec.types().len(), 2, "two non-isomorphic simples");
            assert_eq!(dec.blocks().len(), 1, "connected quiver, one block");
        }
    }

    #[test]
    fn matrix_algebra_idempotents_types_blocks() {
        let a = Arc::new(matrix_algebra(gf(2), 2).unwrap());
        let dec = decompose(&a).unwrap();
        assert_eq!(dec.idempotents().len(), 2);
        assert_eq!(dec.types().len(), 1, "both idempotents give the same simple");
        assert_eq!(dec.blocks().len(), 1);
        let blocks = dec.block_idempotents();
        assert_eq!(blocks[0], a.unit().to_vec());
    }

    #[test]
    fn diamond_has_four_types_one_block() {
        let a = diamond(FieldDesc::Rat);
        let dec = decompose(&a).unwrap();
        assert_eq!(dec.idempotents().len(), 4);
        assert_eq!(dec.types().len(), 4);
        assert_eq!(dec.blocks().len(), 1);
    }

    #[test]
    fn product_algebra_has_two_blocks() {
        // F x F via structure constants
        let f = FieldDesc::Rat;
        let e1 = unit_row(f, 2, 0);
        let e2 = unit_row(f, 2, 1);
        let z = zero_row(f, 2);
        let table = vec![e1.clone(), z.clone(), z.clone(), e2.clone()];
        let mut unit = e1.clone();
        unit[1] = f.one();
        let a = Arc::new(
            Algebra::new(f, 2, table, unit, vec!["u".into(), "v".into()]).unwrap(),
        );
        let dec = decompose(&a).unwrap();
        assert_eq!(dec.idempotents().len(), 2);
        assert_eq!(dec.types().len(), 2);
        assert_eq!(dec.blocks().len(), 2);
    }

    #[test]
    fn split_detection_on_cyclic_group_algebras() {
        // GF(7)[C3]: x^3 - 1 splits (3 | 6), three idempotents
        let a = cyclic_group_algebra(gf(7), 3);
        let dec = decompose(&a).unwrap();
        assert_eq!(dec.idempotents().len(), 3);
        assert_eq!(dec.blocks().len(), 3);
        // GF(5)[C3]: GF(25) factor, not split
        let b = cyclic_group_algebra(gf(5), 3);
        assert!(matches!(decompose(&b), Err(Error::Unsupported(_))));
        // Q[C3]: Q(omega) factor, not split
        let c = cyclic_group_algebra(FieldDesc::Rat, 3);
        assert!(matches!(decompose(&c), Err(Error::Unsupported(_))));
    }

    #[test]
    fn idempotent_lifting_in_characteristic_two() {
        // the dual-number-like quotient of the Kronecker algebra has
        // nontrivial radical; lifted idempotents must be honest idempotents
        let a = kronecker(gf(2));
        let dec = decompose(&a).unwrap();
        for e in dec.idempotents() {
            assert_eq!(a.mul(e, e), *e);
        }
        // and the trivial paths are recovered exactly (they are the unique
        // lift compatible with the corner conjugation used)
        assert!(dec.idempotents().contains(&unit_row(gf(2), 4, 0)));
        assert!(dec.idempotents().contains(&unit_row(gf(2), 4, 1)));
    }

    #[test]
    fn min_poly_examples() {
        let f = FieldDesc::Rat;
        let m2 = matrix_algebra(f, 2).unwrap();
        // u = E21 - E12 has minimal polynomial x^2 + 1
        let mut u = zero_row(f, 4);
        u[2] = f.one();
        u[1] = -&f.one();
        let mu = min_poly(&m2, &u);
        assert_eq!(mu, vec![f.one(), f.zero(), f.one()]);
        // a nilpotent arrow squares to zero
        let a = kronecker(f);
        let mu = min_poly(&a, &unit_row(f, 4, 2));
        assert_eq!(mu, vec![f.zero(), f.zero(), f.one()]);
        // the unit has minimal polynomial x - 1
        let mu = min_poly(&a, a.unit());
        assert_eq!(mu, vec![-&f.one(), f.one()]);
    }

    #[test]
    fn matrix_shape_certificates() {
        // M_3 over GF(2): certified with witness
        let a = Arc::new(matrix_algebra(gf(2), 3).unwrap());
        match matrix_shape(&a).unwrap() {
            MatrixShape::Matrix { n: 3, iso: Some(ext) } => {
                assert!(ext.is_bijective());
            }
            other => panic!("expected certified M_3, got {other:?}"),
        }
        // M_2 over Q: witness found through rational eigenvalues
        let b = Arc::new(matrix_algebra(FieldDesc::Rat, 2).unwrap());
        assert!(matches!(
            matrix_shape(&b).unwrap(),
            MatrixShape::Matrix { n: 2, iso: Some(_) }
        ));
        // Kronecker: radical obstructs
        let c = kronecker(gf(2));
        assert!(matches!(matrix_shape(&c).unwrap(), MatrixShape::Not { .. }));
        // Q[C2]: semisimple commutative of dim 2, center too big
        let d = cyclic_group_algebra(FieldDesc::Rat, 2);
        assert!(matches!(matrix_shape(&d).unwrap(), MatrixShape::Not { .. }));
    }

    #[test]
    fn corner_of_matrix_algebra() {
        let f = FieldDesc::Rat;
        let a = matrix_algebra(f, 2).unwrap();
        // corner at E11 is one-dimensional
        let e11 = unit_row(f, 4, 0);
        let (c, basis) = corner_algebra(&a, &e11).unwrap();
        assert_eq!(c.dim(), 1);
        assert_eq!(basis[0], e11);
        // corner at the unit is everything
        let (c, _) = corner_algebra(&a, a.unit()).unwrap();
        assert_eq!(c.dim(), 4);
        // non-idempotents rejected
        assert!(corner_algebra(&a, &unit_row(f, 4, 1)).is_err());
    }
}
