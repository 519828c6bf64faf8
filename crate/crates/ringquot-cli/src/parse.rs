//! Input grammar: lexer, parser, and canonical printer for job files.
//!
//! A job file is a sequence of sections: `field <QQ|GF(p)>;`,
//! `algebra matrix(n);` or `algebra { ... }`, `task <name>;`, and
//! `options { ... }`. Statements are `key value ... ;`, comments run from
//! `#` to end of line, and keywords are contextual (a quiver vertex may be
//! called `field`). The parser is purely syntactic: coefficients keep the
//! exact literal they were written as (no reduction, no modular
//! canonicalization), index ranges and algebra axioms are checked later by
//! the builder. `print_job` emits a canonical form, and
//! `parse_job(print_job(spec))` returns `spec` exactly (the round-trip
//! property test below pins this).

use std::fmt;

// ---- job description ----

/// Ground field choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldChoice {
    /// The rationals.
    Rational,
    /// The prime field GF(p).
    Finite(u64),
}

impl fmt::Display for FieldChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldChoice::Rational => write!(f, "QQ"),
            FieldChoice::Finite(p) => write!(f, "GF({p})"),
        }
    }
}

/// An exact coefficient literal, kept as written: sign on the numerator,
/// denominator present only when a `/` appeared in the input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Coeff {
    pub num: i64,
    pub den: Option<u64>,
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.den {
            None => write!(f, "{}", self.num),
            Some(d) => write!(f, "{}/{}", self.num, d),
        }
    }
}

/// One structure-constant entry: `mult i j -> k coeff;` contributes
/// `coeff * e_k` to the product `e_i e_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeff: Coeff,
}

/// One quiver arrow: `arrow name: from -> to;`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub from: String,
    pub to: String,
}

/// The algebra description carried by a job.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraDesc {
    /// Explicit basis with structure constants and a unit vector.
    StructureConstants {
        dim: usize,
        unit: Vec<Coeff>,
        labels: Vec<(usize, String)>,
        mult: Vec<MultEntry>,
    },
    /// The full matrix algebra M_n.
    Matrix { n: usize },
    /// The span of the listed matrix-unit cells inside M_n, with tied
    /// cells merged into a single basis element (the sum of their units).
    MatrixPattern {
        n: usize,
        cells: Vec<(usize, usize)>,
        ties: Vec<((usize, usize), (usize, usize))>,
    },
    /// The path algebra of a finite quiver on named vertices.
    PathAlgebra { vertices: Vec<String>, arrows: Vec<Arrow> },
    /// The incidence algebra of a poset on `0..elements`, generated by the
    /// listed strict relations (the builder takes the transitive closure).
    Incidence { elements: usize, relations: Vec<(usize, usize)> },
}

/// The computation requested by a job.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Task {
    QMax,
    QlMax,
    QSigmaMax,
    QTot,
    QlTot,
    QSigmaTot,
    QCl,
    CheckPerfect,
    ReportAll,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::QMax => "qmax",
            Task::QlMax => "qlmax",
            Task::QSigmaMax => "qsigmamax",
            Task::QTot => "qtot",
            Task::QlTot => "qltot",
            Task::QSigmaTot => "qsigmatot",
            Task::QCl => "qcl",
            Task::CheckPerfect => "check-perfect",
            Task::ReportAll => "report-all",
        }
    }

    pub fn from_name(name: &str) -> Option<Task> {
        Some(match name {
            "qmax" => Task::QMax,
            "qlmax" => Task::QlMax,
            "qsigmamax" => Task::QSigmaMax,
            "qtot" => Task::QTot,
            "qltot" => Task::QlTot,
            "qsigmatot" => Task::QSigmaTot,
            "qcl" => Task::QCl,
            "check-perfect" => Task::CheckPerfect,
            "report-all" => Task::ReportAll,
            _ => return None,
        })
    }
}

/// Optional knobs from the `options { ... }` section.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Options {
    pub seed: Option<u64>,
    pub max_dim: Option<usize>,
    pub assert: bool,
    pub emit_machine_block: bool,
}

impl Options {
    fn is_default(&self) -> bool {
        *self == Options::default()
    }
}

/// A fully parsed job file. `task` stays `None` when the file omits it
/// (the command line can supply one).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobSpec {
    pub field: FieldChoice,
    pub algebra: AlgebraDesc,
    pub task: Option<Task>,
    pub options: Options,
}

// ---- diagnostics ----

/// A parse diagnostic with 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.msg)
    }
}

// ---- lexer ----

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Semi,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Colon,
    Eq,
    Slash,
    Minus,
    Arrow,
    Le,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::LBrace => write!(f, "`{{`"),
            Tok::RBrace => write!(f, "`}}`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Colon => write!(f, "`:`"),
            Tok::Eq => write!(f, "`=`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Arrow => write!(f, "`->`"),
            Tok::Le => write!(f, "`<=`"),
        }
    }
}

struct Lexed {
    tok: Tok,
    line: usize,
    col: usize,
}

struct Scanner {
    chars: Vec<char>,
    i: usize,
    line: usize,
    col: usize,
}

impl Scanner {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).copied()
    }

    fn bump(&mut self) -> char {
        let c = self.chars[self.i];
        self.i += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        c
    }
}

fn lex(text: &str) -> Result<Vec<Lexed>, ParseError> {
    let mut out = Vec::new();
    let mut s = Scanner { chars: text.chars().collect(), i: 0, line: 1, col: 1 };
    while let Some(c) = s.peek() {
        let (tline, tcol) = (s.line, s.col);
        if c.is_whitespace() {
            s.bump();
            continue;
        }
        if c == '#' {
            while let Some(c) = s.peek() {
                s.bump();
                if c == '\n' {
                    break;
                }
            }
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut n: u64 = 0;
            while let Some(d) = s.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                s.bump();
                n = n
                    .checked_mul(10)
                    .and_then(|n| n.checked_add(d as u64 - '0' as u64))
                    .ok_or(ParseError {
                        line: tline,
                        col: tcol,
                        msg: String::from("integer literal overflows 64 bits"),
                    })?;
            }
            Tok::Int(n)
        } else if c.is_alphabetic() || c == '_' {
            let mut name = String::new();
            while let Some(d) = s.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                name.push(s.bump());
            }
            Tok::Ident(name)
        } else {
            s.bump();
            match c {
                ';' => Tok::Semi,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                ':' => Tok::Colon,
                '=' => Tok::Eq,
                '/' => Tok::Slash,
                '-' => {
                    if s.peek() == Some('>') {
                        s.bump();
                        Tok::Arrow
                    } else {
                        Tok::Minus
                    }
                }
                '<' => {
                    if s.peek() == Some('=') {
                        s.bump();
                        Tok::Le
                    } else {
                        return Err(ParseError {
                            line: tline,
                            col: tcol,
                            msg: String::from("stray `<` (did you mean `<=`?)"),
                        });
                    }
                }
                other => {
                    return Err(ParseError {
                        line: tline,
                        col: tcol,
                        msg: format!("unexpected character `{other}`"),
                    })
                }
            }
        };
        out.push(Lexed { tok, line: tline, col: tcol });
    }
    Ok(out)
}

// ---- parser ----

struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|l| &l.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map_or((1, 1), |l| (l.line, l.col))
    }

    fn err(&self, msg: String) -> ParseError {
        let (line, col) = self.here();
        ParseError { line, col, msg }
    }

    fn next(&mut self, what: &str) -> Result<Tok, ParseError> {
        let tok = self
            .toks
            .get(self.pos)
            .map(|l| l.tok.clone())
            .ok_or_else(|| self.err(format!("expected {what}, found end of input")))?;
        self.pos += 1;
        Ok(tok)
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        let got = self.next(&format!("{want}"))?;
        if got == want {
            Ok(())
        } else {
            self.pos -= 1;
            Err(self.err(format!("expected {want}, found {got}")))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.next(what)? {
            Tok::Ident(s) => Ok(s),
            got => {
                self.pos -= 1;
                Err(self.err(format!("expected {what}, found {got}")))
            }
        }
    }

    fn int(&mut self, what: &str) -> Result<u64, ParseError> {
        match self.next(what)? {
            Tok::Int(n) => Ok(n),
            got => {
                self.pos -= 1;
                Err(self.err(format!("expected {what}, found {got}")))
            }
        }
    }

    fn usize(&mut self, what: &str) -> Result<usize, ParseError> {
        Ok(self.int(what)? as usize)
    }

    fn coeff(&mut self) -> Result<Coeff, ParseError> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let n = self.int("a coefficient")?;
        let num = i64::try_from(n)
            .map_err(|_| self.err(String::from("coefficient numerator overflows 63 bits")))?;
        let num = if neg { -num } else { num };
        let den = if self.peek() == Some(&Tok::Slash) {
            self.pos += 1;
            Some(self.int("a denominator")?)
        } else {
            None
        };
        Ok(Coeff { num, den })
    }

    fn cell(&mut self) -> Result<(usize, usize), ParseError> {
        self.expect(Tok::LParen)?;
        let i = self.usize("a row index")?;
        self.expect(Tok::Comma)?;
        let j = self.usize("a column index")?;
        self.expect(Tok::RParen)?;
        Ok((i, j))
    }
}

/// One mutually exclusive statement family per algebra kind.
#[derive(Default)]
struct AlgebraDraft {
    kind: Option<String>,
    dim: Option<usize>,
    n: Option<usize>,
    elements: Option<usize>,
    unit: Option<Vec<Coeff>>,
    labels: Vec<(usize, String)>,
    mult: Vec<MultEntry>,
    cells: Vec<(usize, usize)>,
    ties: Vec<((usize, usize), (usize, usize))>,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<(usize, usize)>,
}

fn finish_algebra(p: &Parser, draft: AlgebraDraft) -> Result<AlgebraDesc, ParseError> {
    let kind = draft.kind.ok_or_else(|| p.err(String::from("algebra block needs `kind ...;`")))?;
    let need = |opt: Option<usize>, stmt: &str| {
        opt.ok_or_else(|| p.err(format!("algebra kind `{kind}` needs `{stmt} ...;`")))
    };
    let forbid = |absent: bool, stmt: &str| {
        if absent {
            Ok(())
        } else {
            Err(p.err(format!("`{stmt}` is not a `{kind}` statement")))
        }
    };
    match kind.as_str() {
        "structure_constants" => {
            forbid(draft.n.is_none(), "n")?;
            forbid(draft.elements.is_none(), "elements")?;
            forbid(draft.cells.is_empty() && draft.ties.is_empty(), "cell/tie")?;
            forbid(draft.vertices.is_empty() && draft.arrows.is_empty(), "vertex/arrow")?;
            forbid(draft.relations.is_empty(), "rel")?;
            Ok(AlgebraDesc::StructureConstants {
                dim: need(draft.dim, "dim")?,
                unit: draft
                    .unit
                    .ok_or_else(|| p.err(String::from("structure constants need `unit ...;`")))?,
                labels: draft.labels,
                mult: draft.mult,
            })
        }
        "matrix" => {
            forbid(draft.dim.is_none() && draft.unit.is_none(), "dim/unit")?;
            forbid(draft.mult.is_empty(), "mult")?;
            Ok(AlgebraDesc::Matrix { n: need(draft.n, "n")? })
        }
        "matrix_pattern" => {
            forbid(draft.dim.is_none() && draft.unit.is_none(), "dim/unit")?;
            forbid(draft.mult.is_empty(), "mult")?;
            Ok(AlgebraDesc::MatrixPattern {
                n: need(draft.n, "n")?,
                cells: draft.cells,
                ties: draft.ties,
            })
        }
        "path_algebra" => {
            forbid(draft.dim.is_none() && draft.n.is_none(), "dim/n")?;
            Ok(AlgebraDesc::PathAlgebra { vertices: draft.vertices, arrows: draft.arrows })
        }
        "incidence" => {
            forbid(draft.dim.is_none() && draft.n.is_none(), "dim/n")?;
            Ok(AlgebraDesc::Incidence {
                elements: need(draft.elements, "elements")?,
                relations: draft.relations,
            })
        }
        other => Err(p.err(format!("unknown algebra kind `{other}`"))),
    }
}

fn parse_algebra_block(p: &mut Parser) -> Result<AlgebraDesc, ParseError> {
    let mut draft = AlgebraDraft::default();
    loop {
        if p.peek() == Some(&Tok::RBrace) {
            p.pos += 1;
            return finish_algebra(p, draft);
        }
        let key = p.ident("an algebra statement or `}`")?;
        match key.as_str() {
            "kind" => {
                let name = p.ident("an algebra kind")?;
                if draft.kind.replace(name).is_some() {
                    return Err(p.err(String::from("duplicate `kind`")));
                }
                p.expect(Tok::Semi)?;
            }
            "dim" => {
                if draft.dim.replace(p.usize("a dimension")?).is_some() {
                    return Err(p.err(String::from("duplicate `dim`")));
                }
                p.expect(Tok::Semi)?;
            }
            "n" => {
                if draft.n.replace(p.usize("a matrix size")?).is_some() {
                    return Err(p.err(String::from("duplicate `n`")));
                }
                p.expect(Tok::Semi)?;
            }
            "elements" => {
                if draft.elements.replace(p.usize("an element count")?).is_some() {
                    return Err(p.err(String::from("duplicate `elements`")));
                }
                p.expect(Tok::Semi)?;
            }
            "unit" => {
                let mut coeffs = Vec::new();
                while p.peek() != Some(&Tok::Semi) {
                    coeffs.push(p.coeff()?);
                }
                p.expect(Tok::Semi)?;
                if coeffs.is_empty() {
                    return Err(p.err(String::from("`unit` needs at least one coefficient")));
                }
                if draft.unit.replace(coeffs).is_some() {
                    return Err(p.err(String::from("duplicate `unit`")));
                }
            }
            "label" => {
                let i = p.usize("a basis index")?;
                let name = p.ident("a label")?;
                draft.labels.push((i, name));
                p.expect(Tok::Semi)?;
            }
            "mult" => {
                let i = p.usize("a basis index")?;
                let j = p.usize("a basis index")?;
                p.expect(Tok::Arrow)?;
                let k = p.usize("a basis index")?;
                let coeff = p.coeff()?;
                p.expect(Tok::Semi)?;
                draft.mult.push(MultEntry { i, j, k, coeff });
            }
            "cell" => {
                draft.cells.push(p.cell()?);
                p.expect(Tok::Semi)?;
            }
            "tie" => {
                let a = p.cell()?;
                p.expect(Tok::Eq)?;
                let b = p.cell()?;
                p.expect(Tok::Semi)?;
                draft.ties.push((a, b));
            }
            "vertex" => {
                draft.vertices.push(p.ident("a vertex name")?);
                p.expect(Tok::Semi)?;
            }
            "arrow" => {
                let name = p.ident("an arrow name")?;
                p.expect(Tok::Colon)?;
                let from = p.ident("a vertex name")?;
                p.expect(Tok::Arrow)?;
                let to = p.ident("a vertex name")?;
                p.expect(Tok::Semi)?;
                draft.arrows.push(Arrow { name, from, to });
            }
            "rel" => {
                let x = p.usize("a poset element")?;
                p.expect(Tok::Le)?;
                let y = p.usize("a poset element")?;
                p.expect(Tok::Semi)?;
                draft.relations.push((x, y));
            }
            other => return Err(p.err(format!("unknown algebra statement `{other}`"))),
        }
    }
}

fn parse_options(p: &mut Parser, opts: &mut Options) -> Result<(), ParseError> {
    loop {
        if p.peek() == Some(&Tok::RBrace) {
            p.pos += 1;
            return Ok(());
        }
        let key = p.ident("an option or `}`")?;
        match key.as_str() {
            "seed" => {
                if opts.seed.replace(p.int("a seed")?).is_some() {
                    return Err(p.err(String::from("duplicate `seed`")));
                }
            }
            "max" => {
                p.expect(Tok::Minus)?;
                let word = p.ident("`dim`")?;
                if word != "dim" {
                    return Err(p.err(format!("unknown option `max-{word}`")));
                }
                if opts.max_dim.replace(p.usize("a dimension cap")?).is_some() {
                    return Err(p.err(String::from("duplicate `max-dim`")));
                }
            }
            "assert" => opts.assert = true,
            "emit" => {
                for word in ["machine", "block"] {
                    p.expect(Tok::Minus)?;
                    let got = p.ident(&format!("`{word}`"))?;
                    if got != word {
                        return Err(p.err(format!("unknown option `emit-...-{got}`")));
                    }
                }
                opts.emit_machine_block = true;
            }
            other => return Err(p.err(format!("unknown option `{other}`"))),
        }
        p.expect(Tok::Semi)?;
    }
}

/// Parses a complete job file.
pub fn parse_job(text: &str) -> Result<JobSpec, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let mut field = None;
    let mut algebra = None;
    let mut task = None;
    let mut options = Options::default();
    while p.peek().is_some() {
        let key = p.ident("a section (`field`, `algebra`, `task`, `options`)")?;
        match key.as_str() {
            "field" => {
                let name = p.ident("`QQ` or `GF(p)`")?;
                let choice = match name.as_str() {
                    "QQ" => FieldChoice::Rational,
                    "GF" => {
                        p.expect(Tok::LParen)?;
                        let prime = p.int("a prime")?;
                        p.expect(Tok::RParen)?;
                        FieldChoice::Finite(prime)
                    }
                    other => return Err(p.err(format!("unknown field `{other}`"))),
                };
                p.expect(Tok::Semi)?;
                if field.replace(choice).is_some() {
                    return Err(p.err(String::from("duplicate `field` section")));
                }
            }
            "algebra" => {
                let desc = match p.next("`matrix(n)` or `{`")? {
                    Tok::LBrace => parse_algebra_block(&mut p)?,
                    Tok::Ident(name) if name == "matrix" => {
                        p.expect(Tok::LParen)?;
                        let n = p.usize("a matrix size")?;
                        p.expect(Tok::RParen)?;
                        p.expect(Tok::Semi)?;
                        AlgebraDesc::Matrix { n }
                    }
                    got => {
                        p.pos -= 1;
                        return Err(p.err(format!("expected `matrix(n)` or `{{`, found {got}")));
                    }
                };
                if algebra.replace(desc).is_some() {
                    return Err(p.err(String::from("duplicate `algebra` section")));
                }
            }
            "task" => {
                // task names may contain `-` (e.g. `check-perfect`)
                let mut name = p.ident("a task name")?;
                while p.peek() == Some(&Tok::Minus) {
                    p.pos += 1;
                    name.push('-');
                    name.push_str(&p.ident("a task name")?);
                }
                p.expect(Tok::Semi)?;
                let t = Task::from_name(&name)
                    .ok_or_else(|| p.err(format!("unknown task `{name}`")))?;
                if task.replace(t).is_some() {
                    return Err(p.err(String::from("duplicate `task` section")));
                }
            }
            "options" => {
                p.expect(Tok::LBrace)?;
                parse_options(&mut p, &mut options)?;
            }
            other => return Err(p.err(format!("unknown section `{other}`"))),
        }
    }
    Ok(JobSpec {
        field: field.ok_or_else(|| p.err(String::from("missing `field` section")))?,
        algebra: algebra.ok_or_else(|| p.err(String::from("missing `algebra` section")))?,
        task,
        options,
    })
}

// ---- canonical printer ----

/// Prints a job in canonical form; `parse_job` inverts this exactly.
pub fn print_job(spec: &JobSpec) -> String {
    let mut out = String::new();
    out.push_str(&format!("field {};\n", spec.field));
    match &spec.algebra {
        AlgebraDesc::Matrix { n } => out.push_str(&format!("algebra matrix({n});\n")),
        AlgebraDesc::StructureConstants { dim, unit, labels, mult } => {
            out.push_str("algebra {\n  kind structure_constants;\n");
            out.push_str(&format!("  dim {dim};\n"));
            let coeffs: Vec<String> = unit.iter().map(Coeff::to_string).collect();
            out.push_str(&format!("  unit {};\n", coeffs.join(" ")));
            for (i, name) in labels {
                out.push_str(&format!("  label {i} {name};\n"));
            }
            for m in mult {
                out.push_str(&format!("  mult {} {} -> {} {};\n", m.i, m.j, m.k, m.coeff));
            }
            out.push_str("}\n");
        }
        AlgebraDesc::MatrixPattern { n, cells, ties } => {
            out.push_str("algebra {\n  kind matrix_pattern;\n");
            out.push_str(&format!("  n {n};\n"));
            for (i, j) in cells {
                out.push_str(&format!("  cell ({i},{j});\n"));
            }
            for ((i, j), (k, l)) in ties {
                out.push_str(&format!("  tie ({i},{j})=({k},{l});\n"));
            }
            out.push_str("}\n");
        }
        AlgebraDesc::PathAlgebra { vertices, arrows } => {
            out.push_str("algebra {\n  kind path_algebra;\n");
            for v in vertices {
                out.push_str(&format!("  vertex {v};\n"));
            }
            for a in arrows {
                out.push_str(&format!("  arrow {}: {} -> {};\n", a.name, a.from, a.to));
            }
            out.push_str("}\n");
        }
        AlgebraDesc::Incidence { elements, relations } => {
            out.push_str("algebra {\n  kind incidence;\n");
            out.push_str(&format!("  elements {elements};\n"));
            for (x, y) in relations {
                out.push_str(&format!("  rel {x} <= {y};\n"));
            }
            out.push_str("}\n");
        }
    }
    if let Some(task) = spec.task {
        out.push_str(&format!("task {};\n", task.name()));
    }
    if !spec.options.is_default() {
        out.push_str("options {\n");
        if let Some(seed) = spec.options.seed {
            out.push_str(&format!("  seed {seed};\n"));
        }
        if let Some(cap) = spec.options.max_dim {
            out.push_str(&format!("  max-dim {cap};\n"));
        }
        if spec.options.assert {
            out.push_str("  assert;\n");
        }
        if spec.options.emit_machine_block {
            out.push_str("  emit-machine-block;\n");
        }
        out.push_str("}\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn minimal_inputs_parse() {
        let spec = parse_job("field GF(2); algebra matrix(2); task qmax;").unwrap();
        assert_eq!(spec.field, FieldChoice::Finite(2));
        assert_eq!(spec.algebra, AlgebraDesc::Matrix { n: 2 });
        assert_eq!(spec.task, Some(Task::QMax));
        assert!(spec.options.is_default());

        let spec = parse_job(
            "# a comment\nfield QQ;\nalgebra {\n kind incidence;\n elements 2;\n rel 0 <= 1;\n}\n\
             options { seed 7; max-dim 32; assert; emit-machine-block; }",
        )
        .unwrap();
        assert_eq!(spec.field, FieldChoice::Rational);
        assert_eq!(spec.task, None);
        assert_eq!(
            spec.options,
            Options { seed: Some(7), max_dim: Some(32), assert: true, emit_machine_block: true }
        );
    }

    #[test]
    fn diagnostics_carry_line_and_column() {
        // wrong arity in a structure-constant statement
        let text = "field GF(2);\nalgebra {\n  kind structure_constants;\n  dim 1;\n  unit 1;\n  mult 0 0 0 1;\n}";
        let err = parse_job(text).unwrap_err();
        assert_eq!((err.line, err.col), (6, 12));
        assert!(err.msg.contains("expected `->`"), "{}", err.msg);

        let err = parse_job("field GF(2); algebra matrix(2); task fly;").unwrap_err();
        assert!(err.msg.contains("unknown task"), "{}", err.msg);

        let err = parse_job("algebra matrix(2);").unwrap_err();
        assert!(err.msg.contains("missing `field`"), "{}", err.msg);

        let err = parse_job("field GF(2); field QQ; algebra matrix(2);").unwrap_err();
        assert!(err.msg.contains("duplicate `field`"), "{}", err.msg);
    }

    // ---- round-trip property ----

    fn coeff_strategy() -> impl Strategy<Value = Coeff> {
        (-99i64..100, proptest::option::of(1u64..30))
            .prop_map(|(num, den)| Coeff { num, den })
    }

    fn name_strategy() -> impl Strategy<Value = String> {
        "[a-z][a-z0-9_]{0,5}"
    }

    fn algebra_strategy() -> impl Strategy<Value = AlgebraDesc> {
        let sc = (1usize..5, proptest::collection::vec(coeff_strategy(), 1..5)).prop_flat_map(
            |(dim, unit)| {
                let labels = proptest::collection::vec((0..dim, name_strategy()), 0..3);
                let mult = proptest::collection::vec(
                    (0..dim, 0..dim, 0..dim, coeff_strategy())
                        .prop_map(|(i, j, k, coeff)| MultEntry { i, j, k, coeff }),
                    0..6,
                );
                (Just(dim), Just(unit), labels, mult).prop_map(|(dim, unit, labels, mult)| {
                    AlgebraDesc::StructureConstants { dim, unit, labels, mult }
                })
            },
        );
        let pat = (1usize..5).prop_flat_map(|n| {
            let cell = || (0..n, 0..n);
            (
                Just(n),
                proptest::collection::vec(cell(), 0..4),
                proptest::collection::vec((cell(), cell()), 0..2),
            )
                .prop_map(|(n, cells, ties)| AlgebraDesc::MatrixPattern { n, cells, ties })
        });
        let path = (
            proptest::collection::vec(name_strategy(), 1..4),
            proptest::collection::vec((name_strategy(), name_strategy(), name_strategy()), 0..3),
        )
            .prop_map(|(vertices, arrows)| AlgebraDesc::PathAlgebra {
                vertices,
                arrows: arrows
                    .into_iter()
                    .map(|(name, from, to)| Arrow { name, from, to })
                    .collect(),
            });
        let inc = (1usize..6).prop_flat_map(|elements| {
            (Just(elements), proptest::collection::vec((0..elements, 0..elements), 0..5))
                .prop_map(|(elements, relations)| AlgebraDesc::Incidence { elements, relations })
        });
        prop_oneof![
            sc,
            (1usize..7).prop_map(|n| AlgebraDesc::Matrix { n }),
            pat,
            path,
            inc,
        ]
    }

    fn spec_strategy() -> impl Strategy<Value = JobSpec> {
        let field = prop_oneof![
            Just(FieldChoice::Rational),
            prop_oneof![Just(2u64), Just(3), Just(5), Just(65521)].prop_map(FieldChoice::Finite),
        ];
        let task = proptest::option::of(prop_oneof![
            Just(Task::QMax),
            Just(Task::QlMax),
            Just(Task::QSigmaMax),
            Just(Task::QTot),
            Just(Task::QlTot),
            Just(Task::QSigmaTot),
            Just(Task::QCl),
            Just(Task::CheckPerfect),
            Just(Task::ReportAll),
        ]);
        let options = (
            proptest::option::of(proptest::num::u64::ANY),
            proptest::option::of(1usize..1000),
            proptest::bool::ANY,
            proptest::bool::ANY,
        )
            .prop_map(|(seed, max_dim, assert, emit_machine_block)| Options {
                seed,
                max_dim,
                assert,
                emit_machine_block,
            });
        (field, algebra_strategy(), task, options).prop_map(|(field, algebra, task, options)| {
            JobSpec { field, algebra, task, options }
        })
    }

    proptest! {
        #[test]
        fn printed_jobs_parse_back_to_themselves(spec in spec_strategy()) {
            let text = print_job(&spec);
            let back = parse_job(&text).unwrap();
            prop_assert_eq!(back, spec);
        }
    }
}
