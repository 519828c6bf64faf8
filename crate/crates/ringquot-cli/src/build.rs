//! Turns a parsed algebra description into a concrete algebra.
//!
//! Everything that can be wrong with the *input* is caught here and
//! reported as an input error (exit code 2): index ranges, unit arity,
//! denominators that vanish in the chosen field, unknown vertex names,
//! cyclic quivers, non-antisymmetric poset relations, patterns that are
//! not multiplicatively closed or miss the identity, and dimension caps.
//! Axiom violations detected by the engine while constructing the algebra
//! (associativity, unit laws) are input errors too — they mean the
//! structure constants themselves are bad.

use std::sync::Arc;

use ringquot_core::algebra::{
    incidence_algebra, matrix_algebra, path_algebra, subalgebra_on_span, Algebra,
};
use ringquot_core::{FieldDesc, Scalar};

use crate::parse::{AlgebraDesc, Coeff, FieldChoice, JobSpec};

/// Default bound on the dimension of any constructed algebra.
pub const DEFAULT_MAX_DIM: usize = 64;

/// An input-level problem (exit code 2).
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn bad(msg: impl Into<String>) -> InputError {
    InputError(msg.into())
}

/// Resolves the field choice to a concrete field.
pub fn build_field(choice: FieldChoice) -> Result<FieldDesc, InputError> {
    match choice {
        FieldChoice::Rational => Ok(FieldDesc::Rat),
        FieldChoice::Finite(p) => {
            FieldDesc::gf(p).map_err(|e| bad(format!("bad field GF({p}): {e}")))
        }
    }
}

fn scalar(field: FieldDesc, c: Coeff, what: &str) -> Result<Scalar, InputError> {
    let num = field.from_i64(c.num);
    match c.den {
        None => Ok(num),
        Some(d) => {
            let den = field.from_i64(d as i64);
            let inv = den
                .inv()
                .ok_or_else(|| bad(format!("{what}: denominator {d} vanishes in the field")))?;
            Ok(&num * &inv)
        }
    }
}

fn check_index(i: usize, dim: usize, what: &str) -> Result<(), InputError> {
    if i < dim {
        Ok(())
    } else {
        Err(bad(format!("{what}: index {i} out of range (dimension {dim})")))
    }
}

// ---- the five kinds ----

fn build_structure_constants(
    field: FieldDesc,
    dim: usize,
    unit: &[Coeff],
    labels: &[(usize, String)],
    mult: &[crate::parse::MultEntry],
) -> Result<Algebra, InputError> {
    if dim == 0 {
        return Err(bad("structure constants: dimension must be positive"));
    }
    if unit.len() != dim {
        return Err(bad(format!(
            "unit has {} coefficients, expected {dim}",
            unit.len()
        )));
    }
    let mut table = vec![vec![field.zero(); dim]; dim * dim];
    for (idx, m) in mult.iter().enumerate() {
        let what = format!("mult entry {idx}");
        check_index(m.i, dim, &what)?;
        check_index(m.j, dim, &what)?;
        check_index(m.k, dim, &what)?;
        let c = scalar(field, m.coeff, &what)?;
        let cell = &mut table[m.i * dim + m.j][m.k];
        *cell = &*cell + &c;
    }
    let unit: Vec<Scalar> = unit
        .iter()
        .map(|&c| scalar(field, c, "unit"))
        .collect::<Result<_, _>>()?;
    let mut names: Vec<String> = (0..dim).map(|i| format!("e{i}")).collect();
    for (i, name) in labels {
        check_index(*i, dim, "label")?;
        names[*i] = name.clone();
    }
    Algebra::new(field, dim, table, unit, names).map_err(|e| bad(format!("structure constants: {e}")))
}

fn build_matrix_pattern(
    field: FieldDesc,
    n: usize,
    cells: &[(usize, usize)],
    ties: &[((usize, usize), (usize, usize))],
) -> Result<Algebra, InputError> {
    if n == 0 {
        return Err(bad("matrix pattern: n must be positive"));
    }
    let mut listed = vec![false; n * n];
    for &(i, j) in cells {
        check_index(i, n, "cell")?;
        check_index(j, n, "cell")?;
        if listed[i * n + j] {
            return Err(bad(format!("cell ({i},{j}) listed twice")));
        }
        listed[i * n + j] = true;
    }
    if cells.is_empty() {
        return Err(bad("matrix pattern: no cells listed"));
    }
    // union-find over cells; each class becomes one basis element
    let mut class: Vec<usize> = (0..cells.len()).collect();
    fn root(class: &mut Vec<usize>, mut x: usize) -> usize {
        while class[x] != x {
            class[x] = class[class[x]];
            x = class[x];
        }
        x
    }
    let find_cell = |c: (usize, usize)| cells.iter().position(|&d| d == c);
    for &(a, b) in ties {
        let ia = find_cell(a)
            .ok_or_else(|| bad(format!("tie mentions unlisted cell ({},{})", a.0, a.1)))?;
        let ib = find_cell(b)
            .ok_or_else(|| bad(format!("tie mentions unlisted cell ({},{})", b.0, b.1)))?;
        let (ra, rb) = (root(&mut class, ia), root(&mut class, ib));
        if ra != rb {
            class[ra.max(rb)] = ra.min(rb);
        }
    }
    let amb = Arc::new(
        matrix_algebra(field, n).map_err(|e| bad(format!("matrix pattern: {e}")))?,
    );
    // one span row per class, in first-cell order
    let mut reps: Vec<usize> = Vec::new();
    for idx in 0..cells.len() {
        if root(&mut class, idx) == idx {
            reps.push(idx);
        }
    }
    let mut rows = Vec::new();
    let mut names = Vec::new();
    for &rep in &reps {
        let mut row = vec![field.zero(); n * n];
        let mut parts = Vec::new();
        for (idx, &(i, j)) in cells.iter().enumerate() {
            if root(&mut class, idx) == rep {
                row[i * n + j] = field.one();
                parts.push(format!("e{i}_{j}"));
            }
        }
        rows.push(row);
        names.push(parts.join("+"));
    }
    let (alg, _) = subalgebra_on_span(&amb, &rows, Some(names))
        .map_err(|e| bad(format!("matrix pattern: {e}")))?;
    Ok(alg)
}

fn build_path_algebra(
    field: FieldDesc,
    vertices: &[String],
    arrows: &[crate::parse::Arrow],
    max_dim: usize,
) -> Result<Algebra, InputError> {
    if vertices.is_empty() {
        return Err(bad("path algebra: no vertices"));
    }
    let index_of = |name: &str| -> Result<usize, InputError> {
        vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| bad(format!("unknown vertex `{name}`")))
    };
    for (i, v) in vertices.iter().enumerate() {
        if vertices[..i].contains(v) {
            return Err(bad(format!("vertex `{v}` declared twice")));
        }
    }
    let mut named: Vec<(String, usize, usize)> = Vec::new();
    for a in arrows {
        if named.iter().any(|(n, _, _)| *n == a.name) {
            return Err(bad(format!("arrow `{}` declared twice", a.name)));
        }
        named.push((a.name.clone(), index_of(&a.from)?, index_of(&a.to)?));
    }
    path_algebra(field, vertices.len(), &named, max_dim)
        .map_err(|e| bad(format!("path algebra: {e}")))
}

fn build_incidence(
    field: FieldDesc,
    elements: usize,
    relations: &[(usize, usize)],
) -> Result<Algebra, InputError> {
    if elements == 0 {
        return Err(bad("incidence: element count must be positive"));
    }
    let mut le = vec![false; elements * elements];
    for &(x, y) in relations {
        check_index(x, elements, "rel")?;
        check_index(y, elements, "rel")?;
        if x == y {
            continue; // reflexivity is implicit
        }
        le[x * elements + y] = true;
    }
    // transitive closure, then antisymmetry check
    for k in 0..elements {
        for x in 0..elements {
            for y in 0..elements {
                if le[x * elements + k] && le[k * elements + y] {
                    le[x * elements + y] = true;
                }
            }
        }
    }
    let mut pairs = Vec::new();
    for x in 0..elements {
        for y in 0..elements {
            if le[x * elements + y] {
                if le[y * elements + x] {
                    return Err(bad(format!(
                        "relations are not a partial order: {x} <= {y} and {y} <= {x}"
                    )));
                }
                pairs.push((x, y));
            }
        }
    }
    incidence_algebra(field, elements, &pairs).map_err(|e| bad(format!("incidence: {e}")))
}

/// Builds the algebra a job describes, enforcing the dimension cap.
pub fn build_algebra(spec: &JobSpec) -> Result<Arc<Algebra>, InputError> {
    let field = build_field(spec.field)?;
    let max_dim = spec.options.max_dim.unwrap_or(DEFAULT_MAX_DIM);
    let alg = match &spec.algebra {
        AlgebraDesc::StructureConstants { dim, unit, labels, mult } => {
            build_structure_constants(field, *dim, unit, labels, mult)?
        }
        AlgebraDesc::Matrix { n } => {
            if *n == 0 {
                return Err(bad("matrix: n must be positive"));
            }
            matrix_algebra(field, *n).map_err(|e| bad(format!("matrix: {e}")))?
        }
        AlgebraDesc::MatrixPattern { n, cells, ties } => {
            build_matrix_pattern(field, *n, cells, ties)?
        }
        AlgebraDesc::PathAlgebra { vertices, arrows } => {
            build_path_algebra(field, vertices, arrows, max_dim)?
        }
        AlgebraDesc::Incidence { elements, relations } => {
            build_incidence(field, *elements, relations)?
        }
    };
    if alg.dim() > max_dim {
        return Err(bad(format!(
            "algebra has dimension {} over the cap {max_dim} (raise --max-dim)",
            alg.dim()
        )));
    }
    Ok(Arc::new(alg))
}
