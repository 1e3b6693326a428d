//! Exact computations with Sullivan minimal models over ℚ: the derivation DG
//! Lie algebra `Der(ΛV)`, its homology (the rational homotopy of
//! `B aut₁(X)`), Gottlieb groups, KS-extension certificates and positive
//! weight decompositions.

pub mod dercomplex;
pub mod error;
pub mod gca;
pub mod homlin;
pub mod model;
pub mod random;
pub mod weights;

pub use dercomplex::{bracket, der_basis, differential, extend, DerBasisElement, DerComplex, Derivation};
pub use error::{Error, Result};
pub use gca::{rat, ratio, GenId, Generator, GeneratorSet, Monomial, Normalized, Polynomial, Rational};
pub use homlin::{gottlieb, homology, homology_of, top_degree_law, GottliebReport, HomologyReport, RationalMatrix};
pub use model::{
    build_ks_total, prop23_check, remove_base, Certificate, KsExtension, MinimalModel,
    ValidationReport, Violation, Warning,
};
pub use weights::{
    check_weight_system, find_positive_weights, lemma44_verify, verify_witness, weight_constraints,
    InfeasibilityWitness, VerificationReport, WeightOutcome, WeightSystem,
};
