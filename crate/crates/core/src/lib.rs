//! Perturbative and exact treatment of nonclassical correlations in the
//! off-resonant Raman process (laser, Stokes, phonon and anti-Stokes modes).

pub mod coefficients;
pub mod config;
pub mod witnesses;
pub mod charfun;
pub mod distributions;
pub mod divdiff;
pub mod error;
pub mod oracle;

pub use charfun::{mean_fields, noise_terms, noise_terms_chaotic, noise_terms_coherent, NoiseTerms};
pub use coefficients::{eval_coeffs, eval_coeffs_raw, CoeffSet};
pub use config::{ModeId, Modes, Pair, Pairs, PhononState, RamanConfig, Regime};
pub use error::{CoeffError, ConfigError, DistError, OracleError, RegimeError};
pub use witnesses::{
    closed_forms, entanglement, pipeline_forms, squeezing_pair, squeezing_pair_with, squeezing_single, sub_shot,
    sum_diff_variance, wave_covariance, wave_variance, PairSqueezingForm, WitnessReport,
};
pub use distributions::{
    conditional_numbers, difference_dist, fano_conditional, joint_lv, joint_sv, quasi_lv, quasi_sv, sth_lv, sth_sv,
    ConditionalDist, ConditionalFano, DifferenceDist, Given, JointNumberDist, QuasiDistGrid, WGrid,
};
