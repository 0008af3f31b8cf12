use thiserror::Error;

use crate::config::{ModeId, Regime};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("{0} must be finite")]
    NonFinite(&'static str),
    #[error("rescaled time must be non-negative, got {0}")]
    NegativeTime(f64),
    #[error("Stokes coupling g must be nonzero")]
    ZeroCoupling,
    #[error("mean phonon number must be non-negative, got {0}")]
    NegativePhononNumber(f64),
    #[error("intensity of mode {0} must be non-negative, got {1}")]
    NegativeIntensity(ModeId, f64),
    #[error("mode frequencies give {which} = {got}, expected {want}")]
    DetuningMismatch { which: &'static str, got: f64, want: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoeffError {
    #[error("direct evaluation inside the switching region: |{combination}·t| = {product:e}")]
    InsideSwitchRegion { combination: &'static str, product: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RegimeError {
    #[error("noise terms for the {expected} regime requested from a {found} configuration")]
    Mismatch { expected: Regime, found: Regime },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DistError {
    #[error("cutoff must be at least 1, got {0}")]
    Cutoff(usize),
    #[error("ordering parameter s must lie in (0, 1], got {0}")]
    OrderingParameter(f64),
    #[error("pump-phonon regime requires {requirement} (B_L = {b_l}, B_V = {b_v})")]
    PumpPhononRegime { requirement: &'static str, b_l: f64, b_v: f64 },
    #[error("invalid grid: {0}")]
    Grid(&'static str),
    #[error("number argument must be finite and non-negative, got {0}")]
    NumberArgument(f64),
    #[error("quasidistribution width parameter vanishes ({0})")]
    DegenerateWidth(&'static str),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("every cutoff must be at least 1, got {0:?}")]
    Cutoff([usize; 4]),
    #[error("basis dimension {dim} exceeds the cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("truncation leakage {leakage:e} exceeds {bound:e}")]
    Leakage { leakage: f64, bound: f64 },
    #[error("norm drift {drift:e} exceeds {bound:e}")]
    NormDrift { drift: f64, bound: f64 },
    #[error("moments changed by {change:e} (relative) when every cutoff was raised by one")]
    Unconverged { change: f64 },
    #[error("invalid rescaled-time sweep: {0}")]
    Sweep(&'static str),
    #[error(transparent)]
    Config(#[from] ConfigError),
}
