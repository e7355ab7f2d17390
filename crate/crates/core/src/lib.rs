//! Power-series models of normalized Bessel and Lommel functions, their
//! Alexander and Libera transforms, and numerical checks of membership in
//! the classes subordinate to the right lemniscate `|w² − 1| < 1`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod admissibility;
pub mod error;
pub mod gamma;
pub mod lemniscate;
pub mod scan;
pub mod series;
pub mod special;
pub mod suite;
pub mod theorems;
pub mod transforms;

pub use error::{Error, Result};
pub use lemniscate::{
    subordination_check, DiskSamplingPlan, FunctionalKind, SubordinationVerdict, VerdictStatus,
};
pub use series::{PowerSeries, TruncationControl};
pub use special::{bessel_u, lommel_h, BesselParams, LommelParams};
pub use theorems::{condition_slack, verify_theorem, Family, Params, TheoremId, TheoremReport};
