//! Exact computations with nilpotent radicals of split reductive groups:
//! root systems, Weyl groups, Chevalley structure constants, integral
//! Chevalley–Eilenberg cohomology, Kostant-type weight predictions,
//! spectral sequences of filtered complexes and finite unipotent groups.

#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod cecohomology;
pub mod error;
pub mod kostant;
pub mod linalg;
pub mod nilpotent;
pub mod rootsystem;
pub mod specseq;
pub mod unipotent;
pub mod weyl;

pub use cecohomology::{
    base_change_rank_check, build_ce_complex, cohomology, CochainComplex, CohomologyResult, MonicRing,
};
pub use error::{Error, Result};
pub use kostant::{
    corollary_report, enumerate_multisets, galois_invariants_oracle, kostant_predict, orbit_count, verify_kostant,
    KostantPrediction, PermutationGroup, WeylMultiset,
};
pub use nilpotent::{chevalley_structure_constants, jacobi_check, weil_restrict, NilpotentLieAlgebra};
pub use rootsystem::{coxeter_number, supported_types, CartanType, Root, RootSystem, TypeLabel, Weight};
pub use specseq::{collapse_certificate, e_infinity, gr_of_cohomology, pages, FilteredComplex, SSPage};
pub use unipotent::{gr_bracket_check, lower_central_series, make_group, FiniteUnipotentGroup};
pub use weyl::{dot_action, enumerate_weyl_group, inversion_set, poincare_polynomial, WeylElement, WeylGroup};
