//! Relation checking. A relation is a sum of operator words asserted to be
//! zero; each basis state gets PASS (zero residual column), FAIL, or
//! BOUNDARY (the carrier flags the state, or some partial word leaves the
//! materialized space, so the computed residual is not meaningful).

mod engine;
mod relations;
mod suite;

pub use engine::{
    evaluate, Carrier, CrystalCarrier, Failure, Letter, Relation, RelationReport, ResidualEntry,
    StateClass, StateResult, Summary, Symbol, Term, Walk,
};
pub use relations::{
    cartan_matches_expected, check_cartan, check_casimir, check_ladder, check_map, check_serre,
    expected_cartan, serre_exponent, Generators,
};
pub use suite::{
    run_suite, CartanCheck, Family, ModelEntry, SuiteConfig, SuiteOutcome, DEFAULT_CONFIG,
};
