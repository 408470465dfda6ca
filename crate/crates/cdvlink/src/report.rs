//! Structured reports: everything the pipeline concluded, with provenance,
//! serialized deterministically.

use crate::classify::{IsolatednessNote, SingularityClass};
use crate::link::{LinkResult, ReductionReport};
use crate::quotient::QuotientClass;
use serde::Serialize;

pub const SCHEMA_VERSION: &str = "v1";

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub input: String,
    pub options: OptionsReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient: Option<QuotientReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub link: Option<LinkReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
    pub diagnostics: Vec<Diagnostic>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OptionsReport {
    pub truncation: u32,
    pub epsilon: String,
    pub resolution: u32,
    pub verify: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subtype: Option<u32>,
    pub case: String,
    pub witness: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadratic_signature: Option<(usize, usize)>,
    pub truncation_used: u32,
    pub isolatedness: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch_stability: Option<String>,
    pub transform_steps: usize,
    pub transform_digest: String,
}

impl ClassificationReport {
    pub fn from_class(class: &SingularityClass) -> ClassificationReport {
        ClassificationReport {
            family: class.family.name().to_string(),
            subtype: class.subtype,
            case: class.case.describe(),
            witness: class.witness.to_string(),
            quadratic_signature: class.quadratic.as_ref().map(|q| (q.positive, q.negative)),
            truncation_used: class.truncation,
            isolatedness: match &class.isolated {
                IsolatednessNote::Verified => "verified".into(),
                IsolatednessNote::Refuted(w) => format!("refuted: {w}"),
                IsolatednessNote::Unknown => "unknown".into(),
            },
            branch_stability: class.branch.as_ref().map(|b| {
                format!(
                    "m = {}, {} crossings, stabilized at radius {}",
                    b.m, b.crossings, b.epsilon_used
                )
            }),
            transform_steps: class.log.len(),
            transform_digest: class.log.digest(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct QuotientReport {
    pub row: String,
    pub index: u32,
    pub grades: [u32; 4],
    pub grade_of_f: u32,
    pub tau: [i8; 4],
    pub conditions: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub companion: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub companion_family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cover_link: Option<LinkReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub companion_link: Option<LinkReport>,
    pub notes: Vec<String>,
}

impl QuotientReport {
    pub fn from_class(qc: &QuotientClass) -> QuotientReport {
        QuotientReport {
            row: qc.row.name(),
            index: qc.action.index,
            grades: qc.action.grades,
            grade_of_f: qc.grade,
            tau: qc.action.tau,
            conditions: qc.conditions.clone(),
            companion: None,
            companion_family: None,
            cover_link: None,
            companion_link: None,
            notes: vec![],
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LinkReport {
    /// "exact" or "partial".
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euler: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orientable: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduction: Option<ReductionSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimate: Option<EstimateReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReductionSummary {
    pub family: String,
    pub weights: [u32; 4],
    pub cone: String,
    pub singular_loci: Vec<String>,
    pub generic_cone: bool,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EstimateReport {
    pub components: usize,
    pub euler: Vec<i64>,
}

impl ReductionSummary {
    pub fn from_report(r: &ReductionReport) -> ReductionSummary {
        ReductionSummary {
            family: r.family.name().to_string(),
            weights: r.weights,
            cone: r.cone.to_string(),
            singular_loci: r
                .loci
                .iter()
                .map(|l| match &l.local_type {
                    Some(t) => format!("{} [{t}]", l.location),
                    None => l.location.clone(),
                })
                .collect(),
            generic_cone: r.generic_cone,
            notes: r.notes.clone(),
        }
    }
}

impl LinkReport {
    pub fn from_result(r: &LinkResult) -> LinkReport {
        match r {
            LinkResult::Exact { descriptor, method } => LinkReport {
                status: "exact".into(),
                components: Some(descriptor.components().iter().map(|s| s.to_string()).collect()),
                euler: Some(descriptor.euler_multiset()),
                orientable: Some(descriptor.all_orientable()),
                provenance: Some(method.provenance().into()),
                reduction: None,
                estimate: None,
            },
            LinkResult::Partial { report, estimate } => LinkReport {
                status: "partial".into(),
                components: None,
                euler: None,
                orientable: None,
                provenance: None,
                reduction: Some(ReductionSummary::from_report(report)),
                estimate: estimate.as_ref().map(|(n, chi)| EstimateReport {
                    components: *n,
                    euler: chi.clone(),
                }),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub resolution: u32,
    pub epsilon: String,
    pub components: usize,
    pub euler: Vec<i64>,
    /// Whether the sampled data matches the exact link, when one exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agrees: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Diagnostic {
    pub code: String,
    pub message: String,
}

impl Diagnostic {
    pub fn new(code: &str, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            code: code.into(),
            message: message.into(),
        }
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    /// Human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let push = |out: &mut String, s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        push(&mut out, format!("input: {}", self.input));
        if let Some(c) = &self.classification {
            push(&mut out, format!("family: {} ({})", c.family, c.case));
            if let Some(n) = c.subtype {
                push(&mut out, format!("subtype: n = {n}"));
            }
            push(&mut out, format!("witness: {}", c.witness));
            if let Some((p, q)) = c.quadratic_signature {
                push(&mut out, format!("quadratic signature: ({p}, {q})"));
            }
            push(
                &mut out,
                format!(
                    "truncation: {} | isolatedness: {} | transforms: {} [{}]",
                    c.truncation_used, c.isolatedness, c.transform_steps, c.transform_digest
                ),
            );
            if let Some(b) = &c.branch_stability {
                push(&mut out, format!("branch data: {b}"));
            }
        }
        if let Some(q) = &self.quotient {
            push(
                &mut out,
                format!(
                    "quotient row: {} | index {} | grades {:?} | grade of F: {} | tau {:?}",
                    q.row, q.index, q.grades, q.grade_of_f, q.tau
                ),
            );
            for c in &q.conditions {
                push(&mut out, format!("  condition: {c}"));
            }
            if let Some(comp) = &q.companion {
                push(&mut out, format!("companion: {comp}"));
            }
            if let Some(f) = &q.companion_family {
                push(&mut out, format!("companion family: {f}"));
            }
            if let Some(l) = &q.cover_link {
                push(&mut out, format!("cover link: {}", render_link(l)));
            }
            if let Some(l) = &q.companion_link {
                push(&mut out, format!("companion link: {}", render_link(l)));
            }
            for n in &q.notes {
                push(&mut out, format!("  note: {n}"));
            }
        }
        if let Some(l) = &self.link {
            push(&mut out, format!("link: {}", render_link(l)));
        }
        if let Some(o) = &self.oracle {
            push(
                &mut out,
                format!(
                    "oracle: {} components, euler {:?} at resolution {}{}",
                    o.components,
                    o.euler,
                    o.resolution,
                    match o.agrees {
                        Some(true) => " (agrees)",
                        Some(false) => " (DISAGREES)",
                        None => "",
                    }
                ),
            );
        }
        for d in &self.diagnostics {
            push(&mut out, format!("diagnostic [{}]: {}", d.code, d.message));
        }
        out
    }
}

fn render_link(l: &LinkReport) -> String {
    if l.status == "exact" {
        let comps = l
            .components
            .as_ref()
            .map(|c| {
                if c.is_empty() {
                    "empty".to_string()
                } else {
                    c.join(" + ")
                }
            })
            .unwrap_or_default();
        format!(
            "{comps} (exact; {})",
            l.provenance.as_deref().unwrap_or("")
        )
    } else {
        let mut s = String::from("partial");
        if let Some(r) = &l.reduction {
            s.push_str(&format!(
                "; cone {} with weights {:?}",
                r.cone, r.weights
            ));
            if !r.singular_loci.is_empty() {
                s.push_str(&format!("; singular loci: {}", r.singular_loci.join("; ")));
            }
        }
        if let Some(e) = &l.estimate {
            s.push_str(&format!(
                "; sampled estimate: {} components, euler {:?}",
                e.components, e.euler
            ));
        }
        s
    }
}
