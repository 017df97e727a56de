//! Simulation and analysis of one-dimensional non-uniform cellular
//! automata: finitely-described rule distributions and configurations,
//! exact finite-domain audits (balance, pre-images, erasability), local
//! inverse search, and equicontinuity/sensitivity experiments.

pub mod alphabet;
pub mod config;
pub mod distribution;
pub mod domain;
pub mod dynamics;
mod error;
pub mod evolve;
pub mod finitemap;
pub mod gallery;
pub mod inverse;
pub mod io;
pub mod rule;
pub mod words;

pub use alphabet::{Alphabet, Symbol};
pub use config::{Configuration, Cylinder, Pattern};
pub use distribution::{DistributionKind, RuleDistribution};
pub use domain::IntervalDomain;
pub use dynamics::{DivergenceWitness, InvarianceCertificate, InvarianceResult};
pub use error::{Error, Result};
pub use evolve::{evolve_cell, evolve_window, spacetime, step_config, Evolver, SpaceTimeGrid};
pub use finitemap::{
    balance_audit, mutual_erasability_search, preimage_count, surjectivity_window_check,
    BalanceReport, BalanceVerdict, BalanceWitness, ErasablePair, FiniteNucaMap,
    DEFAULT_ENUMERATION_CAP,
};
pub use inverse::{
    assemble_inverse, compose_check, local_inverse_candidate, verify_conflict_with_configs,
    ComposeReport, ConflictWitness, InverseSearchOutcome, PartialInverseDistribution,
};
pub use rule::{normalize_ruleset, rules_identical, LocalRule, RuleSet};
