//! Task dispatch: one engine computation per task, reported with stable
//! keys and per-claim certification labels.
//!
//! Every claim value carries `[exact]` when it comes from exact linear
//! algebra over the chosen field (dimensions, certificates, enumerated
//! scans) and `[sampled, n checked]` when a quantifier over an infinite
//! or over-budget space was settled on a deterministic sample. Engine
//! refusals are surfaced verbatim as engine errors (exit code 3); a
//! mathematically negative verdict is not an error — it is reported, and
//! `--assert` turns it into exit code 1.

use std::sync::Arc;

use ringquot_core::algebra::Algebra;
use ringquot_core::bimodule::Side;
use ringquot_core::descent::{q_tot, DescentTrace};
use ringquot_core::filters::Mode;
use ringquot_core::linalg::unit_row;
use ringquot_core::perfect::{
    classical_quotient, classify, perfectness_report, ElementwiseReport, Verdict,
};
use ringquot_core::quotients::{q_max, q_max_symmetric_full, QuotientRing};
use ringquot_core::structure::{decompose, matrix_shape, MatrixShape};

use crate::build::{build_algebra, InputError};
use crate::parse::{print_job, JobSpec, Task};
use crate::report::Report;

/// How a job can fail.
#[derive(Debug)]
pub enum CliError {
    /// Bad input (exit code 2).
    Input(String),
    /// Engine refusal or internal failure (exit code 3).
    Engine(String),
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> CliError {
        CliError::Input(e.0)
    }
}

impl From<ringquot_core::Error> for CliError {
    fn from(e: ringquot_core::Error) -> CliError {
        CliError::Engine(e.to_string())
    }
}

/// A finished job: the report and whether any verdict in it was negative.
pub struct Outcome {
    pub report: Report,
    pub negative: bool,
}

// ---- formatting helpers ----

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn verdict_words(v: Verdict) -> &'static str {
    match v {
        Verdict::PerfectSymmetric => "perfect symmetric localization",
        Verdict::PerfectRight => "perfect right localization",
        Verdict::PerfectLeft => "perfect left localization",
        Verdict::NotPerfect => "not a perfect localization",
    }
}

fn shape_words(alg: &Arc<Algebra>) -> String {
    match matrix_shape(alg) {
        Ok(MatrixShape::Matrix { n, iso: Some(_) }) => {
            format!("matrix algebra M_{n} (isomorphism certified) [exact]")
        }
        Ok(MatrixShape::Matrix { n, iso: None }) => format!("matrix algebra M_{n} [exact]"),
        Ok(MatrixShape::CentralSimple { n }) => {
            format!("central simple of degree {n}, no matrix-unit certificate [exact]")
        }
        Ok(MatrixShape::Not { reason }) => format!("not a matrix algebra ({reason}) [exact]"),
        Err(e) => format!("undecided ({e})"),
    }
}

fn scan_label(r: &ElementwiseReport) -> String {
    if r.exhaustion.is_exhaustive() {
        format!("[exact, {} checked]", r.exhaustion.checked())
    } else {
        format!("[sampled, {} checked]", r.exhaustion.checked())
    }
}

/// Emits the standard block for one computed quotient ring.
fn ring_section(rep: &mut Report, prefix: &str, qr: &QuotientRing) {
    rep.push(format!("{prefix}.dim"), format!("{} [exact]", qr.ring.dim()));
    rep.push(format!("{prefix}.basis"), qr.ring.labels().join(" "));
    rep.push(format!("{prefix}.canonical_map_injective"), format!("{} [exact]", yes_no(qr.q.is_injective())));
    rep.push(format!("{prefix}.canonical_map_bijective"), format!("{} [exact]", yes_no(qr.q.is_bijective())));
    rep.push(format!("{prefix}.shape"), shape_words(&qr.ring));
    rep.push(format!("{prefix}.provenance"), qr.provenance.clone());
    rep.push_matrix(&format!("{prefix}.embedding"), qr.q.matrix());
    let field = qr.ring.field();
    let n = qr.ring.dim();
    for i in 0..n {
        let ei = unit_row(field, n, i);
        for j in 0..n {
            let ej = unit_row(field, n, j);
            rep.push(
                format!("{prefix}.table.{i}.{j}"),
                Report::vec_value(&qr.ring.mul(&ei, &ej)),
            );
        }
    }
}

/// Emits the descent-trace block next to a total ring.
fn trace_section(rep: &mut Report, prefix: &str, trace: &DescentTrace) {
    let dims: Vec<String> = trace.stage_dims().iter().map(usize::to_string).collect();
    rep.push(format!("{prefix}.trace"), format!("{} [exact]", dims.join(" ")));
    rep.push(
        format!("{prefix}.equals_ambient"),
        format!(
            "{} [exact]",
            yes_no(trace.stage_dims().first() == trace.stage_dims().last())
        ),
    );
    rep.push(format!("{prefix}.fixpoint_verdict"), format!("{} [exact]", verdict_words(trace.verdict)));
}

/// Emits one mode of the perfectness check on a canonical maximal
/// extension; returns whether the verdict was positive.
fn perfect_section(
    rep: &mut Report,
    prefix: &str,
    target_words: &str,
    qr: &QuotientRing,
    mode: Mode,
) -> Result<bool, CliError> {
    let pr = perfectness_report(&qr.q)?;
    rep.push(format!("{prefix}.target"), format!("{target_words} (dim {})", qr.ring.dim()));
    rep.push(format!("{prefix}.ring_epimorphism"), format!("{} [exact]", yes_no(pr.epi.is_epi)));
    rep.push(
        format!("{prefix}.tensor_square_dim"),
        format!("{} [exact]", pr.epi.tensor_square_dim),
    );
    rep.push(format!("{prefix}.flat_as_left_module"), format!("{} [exact]", yes_no(pr.left_flat.flat)));
    if let Some(obs) = &pr.left_flat.obstruction {
        rep.push(format!("{prefix}.flat_left_obstruction"), obs.clone());
    }
    rep.push(format!("{prefix}.flat_as_right_module"), format!("{} [exact]", yes_no(pr.right_flat.flat)));
    if let Some(obs) = &pr.right_flat.obstruction {
        rep.push(format!("{prefix}.flat_right_obstruction"), obs.clone());
    }
    let ew = match mode {
        Mode::Right => &pr.elementwise_right,
        Mode::Left => &pr.elementwise_left,
        Mode::Symmetric => &pr.elementwise_symmetric,
    };
    rep.push(
        format!("{prefix}.elementwise_conditions"),
        format!("{} {}", yes_no(ew.holds), scan_label(ew)),
    );
    if let Some(w) = &ew.witness {
        rep.push(format!("{prefix}.elementwise_witness"), Report::vec_value(w));
    }
    let positive = pr.covers(mode);
    rep.push(format!("{prefix}.verdict"), format!("{} [exact]", verdict_words(pr.verdict)));
    Ok(positive)
}

// ---- tasks ----

fn input_header(rep: &mut Report, spec: &JobSpec, alg: &Arc<Algebra>) {
    let mut echo = print_job(spec);
    echo.truncate(echo.trim_end().len());
    rep.push("input", echo);
    rep.push("input.field", spec.field.to_string());
    rep.push("input.algebra.dim", format!("{} [exact]", alg.dim()));
    rep.push("input.algebra.basis", alg.labels().join(" "));
}

fn side_of(task: Task) -> Side {
    match task {
        Task::QlMax | Task::QlTot => Side::Left,
        _ => Side::Right,
    }
}

fn mode_of(task: Task) -> Mode {
    match task {
        Task::QTot => Mode::Right,
        Task::QlTot => Mode::Left,
        _ => Mode::Symmetric,
    }
}

/// Runs a job whose `task` is set.
pub fn run(spec: &JobSpec) -> Result<Outcome, CliError> {
    let task = spec
        .task
        .ok_or_else(|| CliError::Input(String::from("no task: set one in the file or pass --task")))?;
    let alg = build_algebra(spec)?;
    let mut rep = Report::new();
    input_header(&mut rep, spec, &alg);
    let dec = decompose(&alg)?;
    let mut negative = false;
    match task {
        Task::QMax | Task::QlMax => {
            let qr = q_max(&alg, side_of(task), &dec)?;
            ring_section(&mut rep, task.name(), &qr);
        }
        Task::QSigmaMax => {
            let full = q_max_symmetric_full(&alg, &dec)?;
            ring_section(&mut rep, "qsigmamax", &full.sym);
            rep.push(
                "qsigmamax.inside_right_maximal",
                format!("dim {} of {} [exact]", full.sym.ring.dim(), full.right.ring.dim()),
            );
            rep.push(
                "qsigmamax.inside_left_maximal",
                format!("dim {} of {} [exact]", full.sym.ring.dim(), full.left.ring.dim()),
            );
        }
        Task::QTot | Task::QlTot | Task::QSigmaTot => {
            let (qr, trace) = q_tot(&alg, mode_of(task), &dec)?;
            ring_section(&mut rep, task.name(), &qr);
            trace_section(&mut rep, task.name(), &trace);
        }
        Task::QCl => {
            let qr = classical_quotient(&alg)?;
            ring_section(&mut rep, "qcl", &qr);
        }
        Task::CheckPerfect => {
            let right = q_max(&alg, Side::Right, &dec)?;
            let left = q_max(&alg, Side::Left, &dec)?;
            let full = q_max_symmetric_full(&alg, &dec)?;
            let ok_r = perfect_section(
                &mut rep,
                "perfect.right",
                "maximal right ring of quotients",
                &right,
                Mode::Right,
            )?;
            let ok_l = perfect_section(
                &mut rep,
                "perfect.left",
                "maximal left ring of quotients",
                &left,
                Mode::Left,
            )?;
            let ok_s = perfect_section(
                &mut rep,
                "perfect.symmetric",
                "maximal symmetric ring of quotients",
                &full.sym,
                Mode::Symmetric,
            )?;
            negative = !(ok_r && ok_l && ok_s);
            rep.push("perfect.all", format!("{} [exact]", yes_no(!negative)));
        }
        Task::ReportAll => {
            let right = q_max(&alg, Side::Right, &dec)?;
            ring_section(&mut rep, "qmax", &right);
            let left = q_max(&alg, Side::Left, &dec)?;
            ring_section(&mut rep, "qlmax", &left);
            let full = q_max_symmetric_full(&alg, &dec)?;
            ring_section(&mut rep, "qsigmamax", &full.sym);
            for (task, mode) in [
                (Task::QTot, Mode::Right),
                (Task::QlTot, Mode::Left),
                (Task::QSigmaTot, Mode::Symmetric),
            ] {
                let (qr, trace) = q_tot(&alg, mode, &dec)?;
                ring_section(&mut rep, task.name(), &qr);
                trace_section(&mut rep, task.name(), &trace);
            }
            let qcl = classical_quotient(&alg)?;
            ring_section(&mut rep, "qcl", &qcl);
            // cheap certificate route only; `check-perfect` runs the full
            // elementwise cross-check
            for (key, qr, mode) in [
                ("perfect.right", &right, Mode::Right),
                ("perfect.left", &left, Mode::Left),
                ("perfect.symmetric", &full.sym, Mode::Symmetric),
            ] {
                let v = classify(&qr.q)?;
                if !v.covers(mode) {
                    negative = true;
                }
                rep.push(format!("{key}.verdict"), format!("{} [exact]", verdict_words(v)));
            }
            rep.push("perfect.all", format!("{} [exact]", yes_no(!negative)));
        }
    }
    Ok(Outcome { report: rep, negative })
}
