//! Exact Morse-Novikov cohomology of mapping tori and rigidity of Lie
//! affine foliations.
//!
//! The crate turns the cohomological data of a mapping torus - Betti
//! numbers of the fiber plus the monodromy action per degree - into exact
//! dimension counts of the twisted cohomology, decides the rigidity
//! criterion for model Lie affine foliations over algebraic twist scalars,
//! and cross-checks every exact dimension against a floating-point
//! discretization of the twisted flat-sections operator.
//!
//! Everything upstream of the [`oracle`] module is exact: arbitrary
//! precision rationals, certified number fields with dynamic-evaluation
//! splitting, Sturm real-root isolation and fraction-free linear algebra.

pub mod error;
mod exec;
pub mod lie;
pub mod linalg;
pub mod models;
pub mod novikov;
pub mod numfield;
pub mod oracle;
pub mod poly;
pub mod rat;
pub mod rigidity;
pub mod sturm;

pub use error::{Error, Result};
pub use lie::{ce_cohomology, ce_complex, nilmanifold_model, Bracket, CEComplex, LieAlgebraData};
pub use linalg::{
    charpoly, coker_dim, exterior_power, kernel_basis, membership, rank, Field, Matrix,
    SubspaceBasis,
};
pub use models::{CohomologyModel, Provenance};
pub use novikov::{
    betti_mapping_torus, eigenvalue_candidates, novikov_dims, EigenFactor, NovikovResult,
    TwistScalar,
};
pub use numfield::{field_make, FieldElement, FieldMake, NumberField, SplitReport};
pub use oracle::{
    crosscheck, discretized_novikov, ode2_periodic_solve, ode_particular, CrosscheckReport,
    OracleConfig, OracleReport,
};
pub use poly::Poly;
pub use rat::Rat;
pub use rigidity::{
    check_rigidity, criterion_crosscheck, deformation_h1_dim, ModelFoliationSpec, RigidityReport,
    Verdict,
};
pub use sturm::{embed_sign, isolate, isolate_all, Interval, Sign};
