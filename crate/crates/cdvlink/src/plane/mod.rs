//! Real analysis of plane-curve germs f(z, t): univariate root isolation,
//! sign arcs on small circles, branch counting, and binary-form statistics.

pub mod bivar;
pub mod circle;
pub mod forms;
pub mod uni;

pub use bivar::BivarPoly;
pub use circle::{branch_report, circle_sign_arcs, dyadic, Arc, BranchReport, CircleArcs};
pub use forms::{
    binary_form_report, germ_sign_along, squarefree_germ_check, BinaryFormReport, SquarefreeCheck,
};
pub use uni::{isolate_real_roots, IsolatedRoot, PlaneError, Sign, UniPoly};
