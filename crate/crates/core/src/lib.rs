//! Finite-type quadratic algebras over prime fields, with certified checks of
//! universal Koszulity and its asymptotic variant.

pub mod budget;
pub mod capture;
pub mod cohomology;
pub mod error;
pub mod field;
pub mod filtered;
pub mod ideal;
pub mod koszul;
pub mod linalg;
pub mod local_global;
pub mod map;
pub mod model;
pub mod presentation;
pub mod subalgebra;

pub use budget::Budget;
pub use capture::{check_quotient_capture, CaptureReport, CaptureStage, CaptureVerdict};
pub use cohomology::{
    cd1_presentation, check_colimit_low_degree, check_galois_pipeline, exterior_presentation, ColimitReport, GaloisHypothesis,
    GaloisReport, GaloisVerdict, InflationItem, InflationSystem, Stage, Transition, Witness,
};
pub use error::{Error, Result};
pub use field::{Fp, Scalar, VectorFp};
pub use filtered::{build_filtered_system, check_asymptotic_uk, AukCondition, AukFailure, AukReport, AukVerdict, FilteredSystem};
pub use ideal::{colon, ideal_from_degree_one, ColonResult, DegreeOneIdeal, Generation};
pub use koszul::{check_universal_koszul, verify_report, verify_witness, Counterexample, Strategy, UkReport, UkVerdict};
pub use linalg::{Matrix, Subspace};
pub use local_global::{check_local_global, DatumReport, Gap, LocalGlobalDatum, LocalGlobalReport, LocalGlobalVerdict, LocalMap};
pub use map::GradedMap;
pub use model::{GradedAlgebraModel, GradedElement, ModelRef};
pub use presentation::QuadraticPresentation;
pub use subalgebra::{
    canonical_subalgebra, check_split_relations, descend_uk, CanonicalSubalgebra, DescentOutcome, SplitCheck, SplitFailure,
};
