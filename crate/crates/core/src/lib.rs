//! Exact construction and verification of m-magic labelings on anti-fuzzy
//! and bipolar anti-fuzzy paths.
//!
//! All labels are integers at a fixed decimal scale, so every equality
//! between edge sums is decided exactly.

pub mod constructions;
pub mod io;
pub mod model;
pub mod numerics;
pub mod oracle;
pub mod verification;

pub use constructions::{Construction, ConstructionError, ConstructionKind};
pub use model::{
    AdmissibilityReport, BipolarPathLabeling, CaseTag, CheckReport, Condition, Family, Labeling,
    LabelingError, MagicSpectrum, PathLabeling, Site, Spectrum, Violation,
};
pub use numerics::{NumericsError, ScaledValue};
pub use verification::SpectrumMode;
