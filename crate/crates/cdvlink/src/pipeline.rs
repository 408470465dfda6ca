//! Orchestration: parse, classify, validate the grading, assemble the link,
//! and optionally verify against the sampling oracle.

use crate::classify::{classify, ClassifyError, ClassifyOptions, Family};
use crate::jet::{rat, Rat};
use crate::link::{assemble_link, LinkResult};
use crate::oracle::{sample_link, GridConfig, SampledLink};
use crate::parse::InputSpec;
use crate::quotient::link::{quotient_link, QuotientOptions};
use crate::quotient::{validate_action, GradedAction, QuotientError};
use crate::report::{
    ClassificationReport, Diagnostic, LinkReport, OptionsReport, OracleReport, QuotientReport,
    Report, SCHEMA_VERSION,
};

/// Pipeline options, mirroring the command-line flags.
#[derive(Debug, Clone)]
pub struct PipelineOptions {
    pub truncation: u32,
    pub epsilon: Rat,
    pub resolution: u32,
    /// Run the sampling oracle against exact links.
    pub verify: bool,
    /// Attach a sampled estimate to partial results.
    pub estimate_partial: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            truncation: 12,
            epsilon: rat(1, 2),
            resolution: 64,
            verify: false,
            estimate_partial: false,
        }
    }
}

/// Exit codes of the command-line tool.
pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_TERMINAL: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;
pub const EXIT_PARSE_ERROR: i32 = 4;

/// Everything a run produced: the report, the suggested exit code, and the
/// sampled link when one was computed (for mesh export).
pub struct PipelineOutcome {
    pub report: Report,
    pub exit_code: i32,
    pub sampled: Option<SampledLink>,
}

/// Run the full pipeline on a parsed input.
pub fn run_pipeline(spec: &InputSpec, opts: &PipelineOptions) -> PipelineOutcome {
    let mut diagnostics: Vec<Diagnostic> = Vec::new();
    let mut exit_code = EXIT_OK;
    let mut sampled: Option<SampledLink> = None;

    let order = opts.truncation.max(spec.degree()).max(4);
    if spec.degree() > opts.truncation {
        diagnostics.push(Diagnostic::new(
            "truncation_raised",
            format!(
                "truncation raised to {order} to keep the degree-{} input exact",
                spec.degree()
            ),
        ));
    }
    let f = spec.to_jet(order);
    let classify_opts = ClassifyOptions {
        truncation: order,
        max_truncation: 48.max(order),
    };

    let mut report = Report {
        schema: SCHEMA_VERSION,
        input: spec.text.clone(),
        options: OptionsReport {
            truncation: opts.truncation,
            epsilon: opts.epsilon.to_string(),
            resolution: opts.resolution,
            verify: opts.verify,
        },
        classification: None,
        quotient: None,
        link: None,
        oracle: None,
        diagnostics: vec![],
    };

    // Classification of the (cover) hypersurface.
    let class = match classify(&f, classify_opts) {
        Ok(c) => c,
        Err(ClassifyError::TruncationInconclusive { at_order, context }) => {
            diagnostics.push(Diagnostic::new(
                "truncation_inconclusive",
                format!("{context} (order {at_order})"),
            ));
            report.diagnostics = diagnostics;
            return PipelineOutcome {
                report,
                exit_code: EXIT_INCONCLUSIVE,
                sampled: None,
            };
        }
    };
    report.classification = Some(ClassificationReport::from_class(&class));
    if class.family == Family::NotCDV {
        diagnostics.push(Diagnostic::new("not_cdv", class.case.describe()));
        report.diagnostics = diagnostics;
        return PipelineOutcome {
            report,
            exit_code: EXIT_NOT_TERMINAL,
            sampled: None,
        };
    }

    // Quotient path.
    let link_result: Option<LinkResult> = if let Some((n, grades)) = spec.action {
        let action = GradedAction::new(n, grades);
        if action.is_trivial() {
            diagnostics.push(Diagnostic::new(
                "trivial_action",
                "the grading reduces to the trivial group; treating the input as a hypersurface",
            ));
            match assemble_link(&class, opts.resolution) {
                Ok(l) => Some(l),
                Err(e) => {
                    diagnostics.push(Diagnostic::new("link_error", e.to_string()));
                    None
                }
            }
        } else {
            match validate_action(&f, &action, classify_opts) {
                Ok(qc) => {
                    let mut qreport = QuotientReport::from_class(&qc);
                    let qopts = QuotientOptions {
                        classify: classify_opts,
                        projective_resolution: opts.resolution,
                        fallback_resolution: (opts.resolution / 2).max(24),
                    };
                    match quotient_link(&f, &qc, &qopts) {
                        Ok(outcome) => {
                            qreport.cover_link =
                                Some(LinkReport::from_result(&outcome.cover_link));
                            if let Some(c) = &outcome.companion {
                                qreport.companion = Some(c.to_string());
                            }
                            if let Some(cc) = &outcome.companion_class {
                                qreport.companion_family = Some(cc.family.name().into());
                            }
                            if let Some(cl) = &outcome.companion_link {
                                qreport.companion_link = Some(LinkReport::from_result(cl));
                            }
                            qreport.notes = outcome.notes.clone();
                            report.quotient = Some(qreport);
                            Some(outcome.quotient)
                        }
                        Err(e) => {
                            diagnostics.push(Diagnostic::new("quotient_error", e.to_string()));
                            report.quotient = Some(qreport);
                            exit_code = EXIT_INCONCLUSIVE;
                            None
                        }
                    }
                }
                Err(QuotientError::GradingError(a, b)) => {
                    diagnostics.push(Diagnostic::new(
                        "grading_error",
                        format!("monomials {a} and {b} have different grades"),
                    ));
                    report.diagnostics = diagnostics;
                    return PipelineOutcome {
                        report,
                        exit_code: EXIT_NOT_TERMINAL,
                        sampled: None,
                    };
                }
                Err(e) => {
                    diagnostics.push(Diagnostic::new("not_terminal_quotient", e.to_string()));
                    report.diagnostics = diagnostics;
                    return PipelineOutcome {
                        report,
                        exit_code: EXIT_NOT_TERMINAL,
                        sampled: None,
                    };
                }
            }
        }
    } else {
        match assemble_link(&class, opts.resolution) {
            Ok(l) => Some(l),
            Err(e) => {
                diagnostics.push(Diagnostic::new("link_error", e.to_string()));
                exit_code = EXIT_INCONCLUSIVE;
                None
            }
        }
    };

    // Oracle verification and partial estimates sample the original input.
    let want_sample = opts.verify
        || (opts.estimate_partial
            && matches!(link_result, Some(LinkResult::Partial { .. })));
    if opts.verify && spec.action.is_some() {
        diagnostics.push(Diagnostic::new(
            "oracle_skipped",
            "oracle verification samples hypersurface links; quotient links are              checked through their covers",
        ));
    }
    if want_sample && spec.action.is_none() {
        let cfg = GridConfig {
            epsilon: opts.epsilon.clone(),
            resolution: opts.resolution,
            ..Default::default()
        };
        match sample_link(&f, &cfg) {
            Ok(s) => {
                let agrees = match &link_result {
                    Some(LinkResult::Exact { descriptor, .. }) => Some(
                        descriptor.len() == s.component_count()
                            && descriptor.euler_multiset() == s.euler_multiset(),
                    ),
                    _ => None,
                };
                if agrees == Some(false) {
                    diagnostics.push(Diagnostic::new(
                        "oracle_discrepancy",
                        "sampled component data disagrees with the exact link; \
                         the symbolic result stands and the discrepancy is flagged for review",
                    ));
                }
                report.oracle = Some(OracleReport {
                    resolution: s.resolution,
                    epsilon: s.epsilon.to_string(),
                    components: s.component_count(),
                    euler: s.euler_multiset(),
                    agrees,
                });
                sampled = Some(s);
            }
            Err(e) => {
                diagnostics.push(Diagnostic::new("oracle_failed", e.to_string()));
            }
        }
    }

    // Attach the sampled estimate to a partial link.
    let link_result = match link_result {
        Some(LinkResult::Partial { report: r, estimate: _ }) => {
            let estimate = sampled
                .as_ref()
                .map(|s| (s.component_count(), s.euler_multiset()));
            exit_code = exit_code.max(EXIT_INCONCLUSIVE);
            Some(LinkResult::Partial {
                report: r,
                estimate,
            })
        }
        other => other,
    };
    if let Some(l) = &link_result {
        report.link = Some(LinkReport::from_result(l));
    }
    report.diagnostics = diagnostics;
    PipelineOutcome {
        report,
        exit_code,
        sampled,
    }
}
