//! Experiments: word-metric balls, exact growth on small groups, congruence
//! quotients, witnesses, density counts and tables.

pub mod ball;
pub mod cheb;
pub mod congruence;
pub mod growth;
pub mod rational;
pub mod tables;
pub mod witness;

pub use ball::{ball, eval_word, integer_generators, Ball, BallEntry, IntMat};
pub use cheb::{chebotarev_experiment, ChebotarevRow, ChebotarevTable};
pub use congruence::{min_detecting_congruence_quotient, CongruenceElement, CongruenceHit, CongruenceSearch, Modulus};
pub use growth::{exact_growth_small, growth_slope, GrowthRecord, SlopeFit, SmallGrowth};
pub use rational::{
    certificate_prime, elementary_generators, elementary_worst_case, stable_constant, worst_case_prime, ElementaryWorstCase,
    WorstCase,
};
pub use tables::{constants_table, ideal_table, ConstantsRow, IdealRow};
pub use witness::{
    build_witness, witness_lower_bound_check, witness_modulus_check, FactoredL, LowerBoundReport, Witness, WitnessRing,
};
