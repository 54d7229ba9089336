//! Serializable run reports.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use boso_core::cohomology::ExtTable;
use boso_core::defseq::{AlgebraMapSpec, CheckReport, DeformationSequence, Status};
use boso_core::ncalg::PresentedAlgebra;
use boso_core::Scalar;

pub const ENGINE: &str = "boso";
pub use boso_core::twisted::SEED;

#[derive(Clone, Debug, Serialize)]
pub struct Engine {
    pub name: String,
    pub version: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

/// Everything a command emits. `body` is a pure function of the inputs.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub engine: Engine,
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub seed: u64,
    pub passed: bool,
    pub body: Value,
    pub timing: Timing,
}

impl RunReport {
    pub fn new(command: &str, inputs: BTreeMap<String, String>, passed: bool, body: Value, elapsed_ms: u64) -> RunReport {
        RunReport {
            engine: Engine { name: ENGINE.into(), version: env!("CARGO_PKG_VERSION").into() },
            command: command.into(),
            inputs,
            seed: SEED,
            passed,
            body,
            timing: Timing { elapsed_ms },
        }
    }

    /// The canonical serialized body.
    pub fn body_json(&self) -> String {
        serde_json::to_string(&self.body).expect("report bodies are plain JSON")
    }
}

fn scalar(s: &Scalar) -> String {
    s.to_string()
}

#[derive(Clone, Debug, Serialize)]
pub struct PresentationJson {
    pub field: String,
    pub generators: Vec<String>,
    pub relations: Vec<String>,
    pub augmentation: BTreeMap<String, String>,
    pub complete: bool,
    pub cutoff: u32,
    pub dimension: Option<usize>,
}

pub fn presentation(a: &PresentedAlgebra) -> PresentationJson {
    let p = a.presentation();
    let names = a.names();
    PresentationJson {
        field: p.field.to_string(),
        generators: p.generators.iter().map(|g| format!("{}:{}", g.name, g.degree)).collect(),
        relations: p.relations.iter().map(|r| r.fmt_with(&names)).collect(),
        augmentation: names
            .iter()
            .zip(&p.augmentation)
            .filter(|(_, v)| !v.is_zero())
            .map(|(n, v)| (n.clone(), scalar(v)))
            .collect(),
        complete: a.is_complete(),
        cutoff: a.cutoff(),
        dimension: a.dimension(),
    }
}

/// Generator of the source → image in the target grammar.
pub fn algebra_map(source: &PresentedAlgebra, target: &PresentedAlgebra, m: &AlgebraMapSpec) -> BTreeMap<String, String> {
    let tn = target.names();
    source.names().into_iter().zip(&m.images).map(|(g, f)| (g, f.fmt_with(&tn))).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SequenceJson {
    pub z: PresentationJson,
    pub q: PresentationJson,
    pub r: PresentationJson,
    pub iota: BTreeMap<String, String>,
    pub pi: BTreeMap<String, String>,
}

pub fn sequence(s: &DeformationSequence) -> SequenceJson {
    SequenceJson {
        z: presentation(&s.z),
        q: presentation(&s.q),
        r: presentation(&s.r),
        iota: algebra_map(&s.z, &s.q, &s.iota),
        pi: algebra_map(&s.q, &s.r, &s.pi),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessJson {
    pub detail: String,
    pub side: Option<String>,
    pub element: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryJson {
    pub label: String,
    pub condition: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReportJson {
    pub degree: u32,
    pub passed: bool,
    pub entries: Vec<EntryJson>,
}

pub fn check_report(r: &CheckReport) -> CheckReportJson {
    let entries = r
        .entries
        .iter()
        .map(|e| {
            let (degree, detail, witness) = match &e.status {
                Status::Verified { degree, detail } => (Some(*degree), Some(detail.clone()), None),
                Status::Asserted { reason } => (None, Some(reason.clone()), None),
                Status::Failed(w) => (
                    None,
                    Some(w.detail.clone()),
                    Some(WitnessJson {
                        detail: w.detail.clone(),
                        side: w.element.as_ref().map(|(s, _)| s.to_string()),
                        element: w.rendered.clone(),
                    }),
                ),
            };
            EntryJson { label: e.label.clone(), condition: e.condition.clone(), status: e.status.kind().into(), degree, detail, witness }
        })
        .collect();
    CheckReportJson { degree: r.degree, passed: r.passed(), entries }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductJson {
    pub left: [usize; 2],
    pub right: [usize; 2],
    pub result: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtJson {
    pub top: usize,
    pub dims: Vec<usize>,
    /// Internal degree → dimension, per homological degree.
    pub internal: Vec<BTreeMap<u32, usize>>,
    pub generators: Vec<usize>,
    pub certificate: String,
    pub products: Vec<ProductJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graded_commutative: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant_dims: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub smash_dims: Option<Vec<usize>>,
}

/// Dimensions, generator degrees and the full product table.
pub fn ext(t: &mut ExtTable) -> boso_core::Result<ExtJson> {
    let gens = t.detect_generators()?;
    let products = t
        .products()
        .iter()
        .filter(|p| p.result.iter().any(|c| !c.is_zero()))
        .map(|p| ProductJson { left: [p.left.0, p.left.1], right: [p.right.0, p.right.1], result: p.result.iter().map(scalar).collect() })
        .collect();
    Ok(ExtJson {
        top: t.top(),
        dims: t.dims(),
        internal: (0..=t.top()).map(|n| t.internal_dims(n)).collect(),
        generators: gens.degrees.clone(),
        certificate: gens.certificate(),
        products,
        graded_commutative: None,
        invariant_dims: None,
        smash_dims: None,
    })
}
