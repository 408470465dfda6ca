//! Classification of real 3-fold compound Du Val singularities and the
//! topology of their real links.
//!
//! Given a polynomial germ F(x, y, z, t) over the rationals, and optionally a
//! cyclic grading 1/n(a, b, c, d), this crate determines the singularity
//! family (cA, cD, cE with subtype), reduces the germ to a normal form with a
//! replayable coordinate-change log, and computes the homeomorphism type of
//! the link of the real points as a multiset of closed surfaces. Exact
//! symbolic results can be cross-checked by a floating-point sampling oracle.
//!
//! The narrative guide lives in `book/`; its code snippets compile and run as
//! doctests of this crate.

pub mod classify;
pub mod jet;
pub mod link;
pub mod oracle;
pub mod parse;
pub mod pipeline;
pub mod plane;
pub mod quotient;
pub mod report;

pub use classify::{
    classify, CaseTag, ClassParts, ClassifyError, ClassifyOptions, Family, IsolatednessNote,
    SingularityClass,
};
pub use classify::quadratic::{split_quadratic, QuadraticData, Split};
pub use link::{
    assemble_link, link_ca, link_cd4_yzt, link_ce6_z2t2, tangent_cone_report, DuVal2Tag,
    LinkError, LinkMethod, LinkResult, OctahedralElement, ReductionReport, Surface,
    SurfaceDescriptor,
};
pub use oracle::{
    match_components, projective_curve_components, sample_link, GridConfig, OracleError,
    SampledComponent, SampledLink,
};
pub use quotient::link::{quotient_link, QuotientLinkOutcome, QuotientOptions};
pub use parse::{parse_input, InputSpec, ParseError};
pub use pipeline::{run_pipeline, PipelineOptions, PipelineOutcome};
pub use quotient::{
    companion, not_isolated_check, tau_of, validate_action, GradedAction, QuotientClass,
    QuotientError, QuotientRow,
};
pub use report::Report;

pub use jet::reduce::{jacobian_reduce, JacobianReduction, Transform, TransformLog};
pub use jet::{mono, rat, rat_int, GradedWeights, Jet, JetError, Monomial, Rat, Var, WeightVector};
pub use plane::{
    branch_report, circle_sign_arcs, BinaryFormReport, BivarPoly, BranchReport, PlaneError, Sign,
    UniPoly,
};

// The guide's code snippets compile and run with `cargo test --doc`, keeping
// the book in sync with the crate.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/jets.md")]
    mod jets {}
    #[doc = include_str!("../../../book/src/plane-curves.md")]
    mod plane_curves {}
    #[doc = include_str!("../../../book/src/classification.md")]
    mod classification {}
    #[doc = include_str!("../../../book/src/links.md")]
    mod links {}
    #[doc = include_str!("../../../book/src/quotients.md")]
    mod quotients {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
