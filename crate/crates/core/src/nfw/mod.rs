//! From 2AFW to NFW: strategy words, annotations, semi-paths, the
//! certificate checker, and an on-the-fly NFW used for acceptance,
//! satisfiability and equivalence.

mod certificate;
mod search;
mod semipath;

pub use certificate::{
    annotation_closure, origin, verify_certificate, AnnotationLetter, Certificate, CertificateViolation, StrategyLetter,
};
pub use search::{
    equivalence, is_satisfiable, nfw_accepts, nfw_run, nfw_successors, Control, Equivalence, Memory, NfwState,
    SearchError, SearchLimits,
};
pub use semipath::{adjacent, shorten_semipath, SemiElem, SemiPath, SemiPathError};
