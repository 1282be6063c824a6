use serde::Serialize;
use thiserror::Error;

use super::spec_format::render_spec;
use crate::cartan_connection::{solve_connection, verify_structure_equations, ConnectionData, ConnectionError};
use crate::curvature::{classify, CurvatureClass, compute_curvature, transform_curvature, CurvatureData, CurvatureError};
use crate::exact_field::Rational;
use crate::lie_algebra::LieAlgebra3;
use crate::lorentz_metric::{induced_metric, signature, MetricError};
use crate::mutation::{identify_model, ModelIdentification, MutationSuite};
use crate::path_structure::{rescale_contact_form, scale_frame, AdaptedFrame, FrameError};

pub const TOOL: &str = "cartanpath";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Connection(#[from] ConnectionError),
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error("structure equations not satisfied by the solved connection")]
    StructureEquations,
}

#[derive(Clone, Debug, Serialize)]
pub struct BracketEntry {
    pub pair: [String; 2],
    pub value: Vec<Rational>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FrameSection {
    pub roles: [String; 3],
    pub scales: [Rational; 3],
    pub brackets: Vec<BracketEntry>,
}

impl FrameSection {
    pub fn of(f: &AdaptedFrame) -> Self {
        let g = f.algebra();
        let names = g.basis_names();
        FrameSection {
            roles: names.clone(),
            scales: f.scales().clone(),
            brackets: g
                .nonzero_brackets()
                .into_iter()
                .map(|(i, j, value)| BracketEntry { pair: [names[i].clone(), names[j].clone()], value })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TransformSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<Rational>,
    /// Curvature of the frame before either transformation.
    pub curvature_before: CurvatureData,
    /// With `b` set: the scaled curvature agrees with the structure-group transformation law.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equivariance_ok: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConnectionSection {
    #[serde(flatten)]
    pub data: ConnectionData,
    pub structure_equations_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationSection {
    pub class: &'static str,
    pub local_model: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<i8>,
    pub description: String,
    pub identification: ModelIdentification,
}

#[derive(Clone, Debug, Serialize)]
pub struct MetricSection {
    pub matrix: Vec<Vec<Rational>>,
    pub signature: [usize; 2],
}

/// The structured output of one CLI invocation. Absent sections are omitted.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub models: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub valid: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transform: Option<TransformSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frame: Option<FrameSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub connection: Option<ConnectionSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curvature: Option<CurvatureData>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metric: Option<MetricSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mutation: Option<MutationSuite>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dynamics: Option<serde_json::Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            tool: TOOL,
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            model: None,
            models: None,
            input: None,
            valid: None,
            transform: None,
            frame: None,
            connection: None,
            curvature: None,
            classification: None,
            metric: None,
            mutation: None,
            dynamics: None,
        }
    }
}

/// Pretty JSON with a trailing newline. Struct fields serialize in declaration order.
pub fn emit_report(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report types serialize infallibly");
    s.push('\n');
    s
}

/// How far down the pipeline a subcommand goes.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum Stage {
    Validate,
    Connection,
    Curvature,
    Classify,
}

/// Spec text of the frame's own basis, for frames that do not come from a file.
pub fn frame_echo(f: &AdaptedFrame) -> String {
    let g = f.algebra();
    let names: [String; 3] = if f.scales().iter().all(Rational::is_one) {
        g.basis_names().clone()
    } else {
        ["e1", "e2", "e3"].map(String::from)
    };
    let entries: Vec<(usize, usize, [Rational; 3])> = g
        .nonzero_brackets()
        .into_iter()
        .map(|(i, j, v)| (i, j, [v[0].clone(), v[1].clone(), v[2].clone()]))
        .collect();
    let renamed = LieAlgebra3::new(g.name(), [&names[0], &names[1], &names[2]].map(String::as_str), &entries)
        .expect("a valid frame algebra stays valid under renaming");
    render_spec(&renamed, [0, 1, 2])
}

/// Runs the pipeline on a normalized frame, optionally after `scale_frame(b)`
/// and `rescale_contact_form(c)`.
pub fn analyze(
    report: &mut Report,
    frame: &AdaptedFrame,
    stage: Stage,
    b: Option<&Rational>,
    c: Option<&Rational>,
) -> Result<(), PipelineError> {
    let mut f = frame.clone();
    if let Some(c) = c {
        f = rescale_contact_form(&f, c)?;
    }
    let before = f.clone();
    if let Some(b) = b {
        f = scale_frame(&f, b)?;
    }
    report.valid = Some(true);
    report.frame = Some(FrameSection::of(&f));
    if stage == Stage::Validate {
        return Ok(());
    }
    let conn = solve_connection(&f)?;
    let structure_ok = verify_structure_equations(&f, &conn).is_ok();
    if !structure_ok {
        return Err(PipelineError::StructureEquations);
    }
    report.connection = Some(ConnectionSection { data: conn.clone(), structure_equations_ok: structure_ok });
    if stage == Stage::Connection {
        return Ok(());
    }
    let k = compute_curvature(&f, &conn)?;
    if b.is_some() || c.is_some() {
        let equivariance_ok = match b {
            Some(b) => {
                let unscaled = compute_curvature(&before, &solve_connection(&before)?)?;
                Some(transform_curvature(&unscaled, b)? == k)
            }
            None => None,
        };
        report.transform = Some(TransformSection {
            b: b.cloned(),
            c: c.cloned(),
            curvature_before: compute_curvature(frame, &solve_connection(frame)?)?,
            equivariance_ok,
        });
    }
    report.curvature = Some(k.clone());
    if stage == Stage::Curvature {
        return Ok(());
    }
    let class = classify(&k);
    let (r, epsilon) = match &class {
        CurvatureClass::ConstantCurvature { r, epsilon, .. } => (Some(r.clone()), Some(*epsilon)),
        _ => (None, None),
    };
    report.classification = Some(ClassificationSection {
        class: class.label(),
        local_model: class.local_model(),
        r,
        epsilon,
        description: class.description(),
        identification: identify_model(&class),
    });
    let g = induced_metric(&f)?;
    let (neg, pos) = signature(&g)?;
    report.metric = Some(MetricSection {
        matrix: (0..3).map(|i| g.matrix().row(i).to_vec()).collect(),
        signature: [neg, pos],
    });
    Ok(())
}
