//! Flat `key = value` parameter files.
//!
//! Every key is optional and dimensionless (rates in units of `|g|`). Lines
//! starting with `#` and blank lines are ignored; a trailing `# comment` after
//! a value is stripped.

use std::fmt;

use num_complex::Complex64 as C64;
use raman_core::config::{make_config_with_pump, ModeId, Modes, PhononState, RamanConfig, DEFAULT_OMEGA_L, DEFAULT_OMEGA_V};
use raman_core::oracle::DEFAULT_DIM_CAP;
use raman_core::PairSqueezingForm;

use crate::error::CliError;

/// Phonon statistics as written in a parameter file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhononKind {
    Coherent,
    Chaotic,
}

/// Everything a command may need at one parameter point.
#[derive(Clone, Debug, PartialEq)]
pub struct Params {
    pub g: f64,
    pub g_phase: f64,
    pub chi: f64,
    pub chi_phase: f64,
    pub dw1: f64,
    pub dw2: f64,
    pub omega_l: f64,
    pub omega_v: f64,
    pub gt: f64,
    pub intensity: [f64; 4],
    pub phase: [f64; 4],
    pub phonon: Option<PhononKind>,
    pub n_mean: Option<f64>,
    pub form: PairSqueezingForm,
    pub s: f64,
    pub w_s: f64,
    pub w_v: f64,
    pub w_l: f64,
    pub n_s: f64,
    pub n_v: f64,
    pub n_l: f64,
    pub n: f64,
    pub cutoff: usize,
    pub w_max: f64,
    pub w_points: usize,
    pub oracle_cutoffs: [usize; 4],
    pub dim_cap: usize,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            g: 1.0,
            g_phase: 0.0,
            chi: 1.0,
            chi_phase: 0.0,
            dw1: 0.0,
            dw2: 0.0,
            omega_l: DEFAULT_OMEGA_L,
            omega_v: DEFAULT_OMEGA_V,
            gt: 0.1,
            intensity: [0.0; 4],
            phase: [0.0; 4],
            phonon: None,
            n_mean: None,
            form: PairSqueezingForm::RealPart,
            s: 1.0,
            w_s: 1.0,
            w_v: 0.5,
            w_l: 1.0,
            n_s: 1.0,
            n_v: 1.0,
            n_l: 1.0,
            n: 1.0,
            cutoff: 10,
            w_max: 3.0,
            w_points: 61,
            oracle_cutoffs: [10, 6, 5, 7],
            dim_cap: DEFAULT_DIM_CAP,
        }
    }
}

/// Keys accepted by [`Params::set`], in documentation order.
pub const KEYS: &[&str] = &[
    "g", "g_phase", "chi", "chi_phase", "dw1", "dw2", "omega_L", "omega_V", "gt", "I_L", "I_S", "I_V", "I_A",
    "phase_L", "phase_S", "phase_V", "phase_A", "phonon", "n_mean", "pair_form", "s", "W_S", "W_V", "W_L", "n_S",
    "n_V", "n_L", "n", "cutoff", "w_max", "w_points", "cutoff_L", "cutoff_S", "cutoff_V", "cutoff_A", "dim_cap",
];

fn number(key: &str, value: &str) -> Result<f64, String> {
    let v: f64 = value.parse().map_err(|_| format!("'{key}' expects a number, got '{value}'"))?;
    if !v.is_finite() {
        return Err(format!("'{key}' must be finite"));
    }
    Ok(v)
}

fn count(key: &str, value: &str) -> Result<usize, String> {
    value.parse().map_err(|_| format!("'{key}' expects a non-negative integer, got '{value}'"))
}

impl Params {
    /// Set one key from its textual value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let mode_key = |prefix: &str| key.strip_prefix(prefix).and_then(ModeId::parse);
        match key {
            "g" => self.g = number(key, value)?,
            "g_phase" => self.g_phase = number(key, value)?,
            "chi" => self.chi = number(key, value)?,
            "chi_phase" => self.chi_phase = number(key, value)?,
            "dw1" => self.dw1 = number(key, value)?,
            "dw2" => self.dw2 = number(key, value)?,
            "omega_L" => self.omega_l = number(key, value)?,
            "omega_V" => self.omega_v = number(key, value)?,
            "gt" => self.gt = number(key, value)?,
            "phonon" => {
                self.phonon = Some(match value {
                    "coherent" => PhononKind::Coherent,
                    "chaotic" | "thermal" => PhononKind::Chaotic,
                    _ => return Err(format!("'phonon' must be coherent or chaotic, got '{value}'")),
                })
            }
            "n_mean" => self.n_mean = Some(number(key, value)?),
            "pair_form" => {
                self.form = match value {
                    "real" => PairSqueezingForm::RealPart,
                    "modulus" => PairSqueezingForm::Modulus,
                    _ => return Err(format!("'pair_form' must be real or modulus, got '{value}'")),
                }
            }
            "s" => self.s = number(key, value)?,
            "W_S" => self.w_s = number(key, value)?,
            "W_V" => self.w_v = number(key, value)?,
            "W_L" => self.w_l = number(key, value)?,
            "n_S" => self.n_s = number(key, value)?,
            "n_V" => self.n_v = number(key, value)?,
            "n_L" => self.n_l = number(key, value)?,
            "n" => self.n = number(key, value)?,
            "cutoff" => self.cutoff = count(key, value)?,
            "w_max" => self.w_max = number(key, value)?,
            "w_points" => self.w_points = count(key, value)?,
            "dim_cap" => self.dim_cap = count(key, value)?,
            _ => {
                if let Some(m) = mode_key("I_") {
                    self.intensity[m.index()] = number(key, value)?;
                } else if let Some(m) = mode_key("phase_") {
                    self.phase[m.index()] = number(key, value)?;
                } else if let Some(m) = mode_key("cutoff_") {
                    self.oracle_cutoffs[m.index()] = count(key, value)?;
                } else {
                    return Err(format!("unknown key '{key}'"));
                }
            }
        }
        Ok(())
    }

    /// Parse a whole parameter file; diagnostics carry the line number.
    pub fn parse(text: &str) -> Result<Params, CliError> {
        let mut p = Params::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Validation(format!("line {}: expected key = value, got '{line}'", i + 1)));
            };
            p.set(key.trim(), value.trim()).map_err(|e| CliError::Validation(format!("line {}: {e}", i + 1)))?;
        }
        p.phonon_state()?;
        Ok(p)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Params, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
        Params::parse(&text)
    }

    /// Phonon state implied by `phonon` and `n_mean`. A bare `n_mean` means
    /// chaotic phonons.
    pub fn phonon_state(&self) -> Result<PhononState, CliError> {
        match (self.phonon, self.n_mean) {
            (Some(PhononKind::Coherent), Some(_)) => {
                Err(CliError::Validation("'n_mean' applies only to chaotic phonons".into()))
            }
            (Some(PhononKind::Coherent), None) | (None, None) => Ok(PhononState::Coherent),
            (_, n) => Ok(PhononState::Chaotic { n_mean: n.unwrap_or(0.0) }),
        }
    }

    /// Validated core configuration.
    pub fn config(&self) -> Result<RamanConfig, CliError> {
        if let Some(m) = ModeId::ALL.into_iter().find(|m| self.intensity[m.index()] < 0.0) {
            return Err(CliError::Validation(format!(
                "intensity I_{m} must be non-negative, got {}",
                self.intensity[m.index()]
            )));
        }
        let amps = Modes::from_fn(|m| C64::from_polar(self.intensity[m.index()].sqrt(), self.phase[m.index()]));
        let g = C64::from_polar(self.g, self.g_phase);
        let chi = C64::from_polar(self.chi, self.chi_phase);
        Ok(make_config_with_pump(
            g,
            chi,
            self.dw1,
            self.dw2,
            self.omega_l,
            self.omega_v,
            self.gt,
            amps,
            self.phonon_state()?,
        )?)
    }
}

impl fmt::Display for Params {
    /// Writes the parameters back in file syntax.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "g = {}\ng_phase = {}\nchi = {}\nchi_phase = {}", self.g, self.g_phase, self.chi, self.chi_phase)?;
        writeln!(f, "dw1 = {}\ndw2 = {}\nomega_L = {}\nomega_V = {}\ngt = {}", self.dw1, self.dw2, self.omega_l, self.omega_v, self.gt)?;
        for m in ModeId::ALL {
            writeln!(f, "I_{m} = {}\nphase_{m} = {}", self.intensity[m.index()], self.phase[m.index()])?;
        }
        match self.phonon_state() {
            Ok(PhononState::Chaotic { n_mean }) => writeln!(f, "phonon = chaotic\nn_mean = {n_mean}")?,
            _ => writeln!(f, "phonon = coherent")?,
        }
        let form = match self.form {
            PairSqueezingForm::RealPart => "real",
            PairSqueezingForm::Modulus => "modulus",
        };
        writeln!(f, "pair_form = {form}\ns = {}", self.s)?;
        writeln!(f, "W_S = {}\nW_V = {}\nW_L = {}", self.w_s, self.w_v, self.w_l)?;
        writeln!(f, "n_S = {}\nn_V = {}\nn_L = {}\nn = {}", self.n_s, self.n_v, self.n_l, self.n)?;
        writeln!(f, "cutoff = {}\nw_max = {}\nw_points = {}", self.cutoff, self.w_max, self.w_points)?;
        for m in ModeId::ALL {
            writeln!(f, "cutoff_{m} = {}", self.oracle_cutoffs[m.index()])?;
        }
        writeln!(f, "dim_cap = {}", self.dim_cap)
    }
}
