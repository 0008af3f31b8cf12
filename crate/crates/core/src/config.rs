//! Value types shared by every stage of the calculation: mode labels, mode
//! and pair maps, and the validated [`RamanConfig`].
//!
//! All quantities are dimensionless. Rates and frequencies are measured in a
//! common unit (normally chosen so that `|g| = 1`), and the evolution time is
//! supplied as the rescaled product `|g| t`.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64 as C64;

use crate::error::ConfigError;

/// Base pump frequency used when the caller does not pick one.
///
/// Only phase factors such as `f1 = exp(-i ω_L t)` and the mean fields depend
/// on absolute frequencies; every witness that is insensitive to those phases
/// depends on the detunings alone.
pub const DEFAULT_OMEGA_L: f64 = 100.0;

/// Default phonon frequency.
pub const DEFAULT_OMEGA_V: f64 = 1.0;

/// Relative tolerance on the two detuning identities.
const DETUNING_TOL: f64 = 1e-12;

/// The four interacting modes, in pair-indexing order `L < S < V < A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModeId {
    /// Laser (pump).
    L,
    /// Stokes.
    S,
    /// Vibration (phonon).
    V,
    /// Anti-Stokes.
    A,
}

impl ModeId {
    pub const ALL: [ModeId; 4] = [ModeId::L, ModeId::S, ModeId::V, ModeId::A];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            ModeId::L => "L",
            ModeId::S => "S",
            ModeId::V => "V",
            ModeId::A => "A",
        }
    }

    pub fn parse(s: &str) -> Option<ModeId> {
        match s {
            "L" => Some(ModeId::L),
            "S" => Some(ModeId::S),
            "V" => Some(ModeId::V),
            "A" => Some(ModeId::A),
            _ => None,
        }
    }
}

impl fmt::Display for ModeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Unordered mode pair, stored with the subscript order used by the noise
/// terms (`LS, LV, LA, SV, SA, VA`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pair {
    LS,
    LV,
    LA,
    SV,
    SA,
    VA,
}

impl Pair {
    pub const ALL: [Pair; 6] = [Pair::LS, Pair::LV, Pair::LA, Pair::SV, Pair::SA, Pair::VA];

    pub fn index(self) -> usize {
        self as usize
    }

    /// The two modes `(i, j)` with `i` first in subscript order.
    pub fn modes(self) -> (ModeId, ModeId) {
        use ModeId::*;
        match self {
            Pair::LS => (L, S),
            Pair::LV => (L, V),
            Pair::LA => (L, A),
            Pair::SV => (S, V),
            Pair::SA => (S, A),
            Pair::VA => (V, A),
        }
    }

    /// Pair for two distinct modes given in either order.
    pub fn of(a: ModeId, b: ModeId) -> Option<Pair> {
        let (i, j) = if a <= b { (a, b) } else { (b, a) };
        Pair::ALL.into_iter().find(|p| p.modes() == (i, j))
    }

    pub fn name(self) -> &'static str {
        match self {
            Pair::LS => "LS",
            Pair::LV => "LV",
            Pair::LA => "LA",
            Pair::SV => "SV",
            Pair::SA => "SA",
            Pair::VA => "VA",
        }
    }

    pub fn parse(s: &str) -> Option<Pair> {
        Pair::ALL.into_iter().find(|p| p.name() == s)
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A value for each of the four modes.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Modes<T>(pub [T; 4]);

impl<T: Copy> Modes<T> {
    pub fn splat(v: T) -> Self {
        Modes([v; 4])
    }

    pub fn from_fn(mut f: impl FnMut(ModeId) -> T) -> Self {
        Modes(ModeId::ALL.map(&mut f))
    }

    pub fn iter(&self) -> impl Iterator<Item = (ModeId, T)> + '_ {
        ModeId::ALL.into_iter().zip(self.0.iter().copied())
    }
}

impl<T> Index<ModeId> for Modes<T> {
    type Output = T;
    fn index(&self, m: ModeId) -> &T {
        &self.0[m.index()]
    }
}

impl<T> IndexMut<ModeId> for Modes<T> {
    fn index_mut(&mut self, m: ModeId) -> &mut T {
        &mut self.0[m.index()]
    }
}

/// A value for each of the six mode pairs.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Pairs<T>(pub [T; 6]);

impl<T: Copy> Pairs<T> {
    pub fn splat(v: T) -> Self {
        Pairs([v; 6])
    }

    pub fn from_fn(mut f: impl FnMut(Pair) -> T) -> Self {
        Pairs(Pair::ALL.map(&mut f))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Pair, T)> + '_ {
        Pair::ALL.into_iter().zip(self.0.iter().copied())
    }
}

impl<T> Index<Pair> for Pairs<T> {
    type Output = T;
    fn index(&self, p: Pair) -> &T {
        &self.0[p.index()]
    }
}

impl<T> IndexMut<Pair> for Pairs<T> {
    fn index_mut(&mut self, p: Pair) -> &mut T {
        &mut self.0[p.index()]
    }
}

/// Initial statistics of the phonon mode. The photon modes always start in
/// coherent states.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PhononState {
    Coherent,
    /// Thermal phonons with mean occupation `n_mean`; zero mean field.
    Chaotic { n_mean: f64 },
}

impl PhononState {
    pub fn regime(self) -> Regime {
        match self {
            PhononState::Coherent => Regime::Coherent,
            PhononState::Chaotic { .. } => Regime::Chaotic,
        }
    }
}

/// Which construction of the noise terms applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    Coherent,
    Chaotic,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Coherent => "coherent",
            Regime::Chaotic => "chaotic",
        })
    }
}

/// Validated parameters of the four-mode Raman interaction.
#[derive(Clone, Debug, PartialEq)]
pub struct RamanConfig {
    /// Stokes coupling constant.
    pub g: C64,
    /// Anti-Stokes coupling constant.
    pub chi: C64,
    /// Stokes detuning `ω_S + ω_V − ω_L`.
    pub dw1: f64,
    /// Anti-Stokes detuning `ω_L + ω_V − ω_A`.
    pub dw2: f64,
    /// Absolute mode frequencies.
    pub omega: Modes<f64>,
    /// Evolution time (not rescaled).
    pub t: f64,
    /// Initial coherent amplitudes. `xi0[V]` is ignored for chaotic phonons.
    pub xi0: Modes<C64>,
    pub phonon: PhononState,
}

impl RamanConfig {
    /// The rescaled time `|g| t`.
    pub fn gt(&self) -> f64 {
        self.g.norm() * self.t
    }

    /// Initial intensity `I_j = |ξ_j|²`.
    pub fn intensity(&self, m: ModeId) -> f64 {
        self.xi0[m].norm_sqr()
    }

    /// Mean initial phonon number: `n_mean` for chaotic phonons, `|ξ_V|²`
    /// for coherent ones.
    pub fn n_mean(&self) -> f64 {
        match self.phonon {
            PhononState::Coherent => self.intensity(ModeId::V),
            PhononState::Chaotic { n_mean } => n_mean,
        }
    }

    /// Chaotic occupation, or `None` for coherent phonons.
    pub fn chaotic_n_mean(&self) -> Option<f64> {
        match self.phonon {
            PhononState::Coherent => None,
            PhononState::Chaotic { n_mean } => Some(n_mean),
        }
    }

    pub fn regime(&self) -> Regime {
        self.phonon.regime()
    }

    /// Copy of this configuration evaluated at another rescaled time.
    pub fn at_gt(&self, gt: f64) -> Result<RamanConfig, ConfigError> {
        let mut cfg = self.clone();
        if !gt.is_finite() {
            return Err(ConfigError::NonFinite("gt"));
        }
        if gt < 0.0 {
            return Err(ConfigError::NegativeTime(gt));
        }
        cfg.t = gt / self.g.norm();
        Ok(cfg)
    }

    /// Check every invariant; used after manual field edits.
    pub fn validate(&self) -> Result<(), ConfigError> {
        check_complex("g", self.g)?;
        check_complex("chi", self.chi)?;
        if self.g.norm() == 0.0 {
            return Err(ConfigError::ZeroCoupling);
        }
        check_real("dw1", self.dw1)?;
        check_real("dw2", self.dw2)?;
        check_real("t", self.t)?;
        if self.t < 0.0 {
            return Err(ConfigError::NegativeTime(self.gt()));
        }
        for (m, w) in self.omega.iter() {
            check_real(omega_name(m), w)?;
        }
        for (m, xi) in self.xi0.iter() {
            check_complex(amplitude_name(m), xi)?;
        }
        if let PhononState::Chaotic { n_mean } = self.phonon {
            check_real("n_mean", n_mean)?;
            if n_mean < 0.0 {
                return Err(ConfigError::NegativePhononNumber(n_mean));
            }
        }
        let w = &self.omega;
        let d1 = w[ModeId::S] + w[ModeId::V] - w[ModeId::L];
        let d2 = w[ModeId::L] + w[ModeId::V] - w[ModeId::A];
        for (name, got, want) in [("dw1", d1, self.dw1), ("dw2", d2, self.dw2)] {
            let scale = w.0.iter().fold(want.abs(), |acc, x| acc.max(x.abs())).max(1.0);
            if (got - want).abs() > DETUNING_TOL * scale {
                return Err(ConfigError::DetuningMismatch { which: name, got, want });
            }
        }
        Ok(())
    }
}

/// Build a validated configuration.
///
/// The pump frequency is [`DEFAULT_OMEGA_L`]; the Stokes and anti-Stokes
/// frequencies follow from `omega_v` and the two detunings. Use
/// [`make_config_with_pump`] to choose the pump frequency explicitly.
#[allow(clippy::too_many_arguments)]
pub fn make_config(
    g: C64,
    chi: C64,
    dw1: f64,
    dw2: f64,
    omega_v: f64,
    gt: f64,
    amplitudes: Modes<C64>,
    phonon: PhononState,
) -> Result<RamanConfig, ConfigError> {
    make_config_with_pump(g, chi, dw1, dw2, DEFAULT_OMEGA_L, omega_v, gt, amplitudes, phonon)
}

#[allow(clippy::too_many_arguments)]
pub fn make_config_with_pump(
    g: C64,
    chi: C64,
    dw1: f64,
    dw2: f64,
    omega_l: f64,
    omega_v: f64,
    gt: f64,
    amplitudes: Modes<C64>,
    phonon: PhononState,
) -> Result<RamanConfig, ConfigError> {
    check_complex("g", g)?;
    check_complex("chi", chi)?;
    check_real("gt", gt)?;
    check_real("omega_L", omega_l)?;
    check_real("omega_V", omega_v)?;
    check_real("dw1", dw1)?;
    check_real("dw2", dw2)?;
    if g.norm() == 0.0 {
        return Err(ConfigError::ZeroCoupling);
    }
    if gt < 0.0 {
        return Err(ConfigError::NegativeTime(gt));
    }
    let omega = Modes([omega_l, omega_l - omega_v + dw1, omega_v, omega_l + omega_v - dw2]);
    let cfg = RamanConfig {
        g,
        chi,
        dw1,
        dw2,
        omega,
        t: gt / g.norm(),
        xi0: amplitudes,
        phonon,
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Amplitudes `√I_j` with zero phase, the convention used when only
/// intensities are given.
pub fn amplitudes_from_intensities(intensities: Modes<f64>) -> Result<Modes<C64>, ConfigError> {
    let mut out = Modes::splat(C64::new(0.0, 0.0));
    for (m, i) in intensities.iter() {
        check_real(amplitude_name(m), i)?;
        if i < 0.0 {
            return Err(ConfigError::NegativeIntensity(m, i));
        }
        out[m] = C64::new(i.sqrt(), 0.0);
    }
    Ok(out)
}

fn omega_name(m: ModeId) -> &'static str {
    match m {
        ModeId::L => "omega_L",
        ModeId::S => "omega_S",
        ModeId::V => "omega_V",
        ModeId::A => "omega_A",
    }
}

fn amplitude_name(m: ModeId) -> &'static str {
    match m {
        ModeId::L => "xi_L",
        ModeId::S => "xi_S",
        ModeId::V => "xi_V",
        ModeId::A => "xi_A",
    }
}

fn check_real(name: &'static str, x: f64) -> Result<(), ConfigError> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(ConfigError::NonFinite(name))
    }
}

fn check_complex(name: &'static str, z: C64) -> Result<(), ConfigError> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(ConfigError::NonFinite(name))
    }
}
