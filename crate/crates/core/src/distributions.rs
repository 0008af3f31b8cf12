//! Number distributions and integrated-intensity quasidistributions for
//! phonon-vacuum initial conditions.
//!
//! Two situations are covered. With only the pump seeded, Stokes photons and
//! phonons are created in pairs and `(n_S, n_V)` is diagonal with
//! Bose–Einstein weights of mean `B_S`. With the pump and anti-Stokes modes
//! seeded and the Stokes mode empty, pump and phonon numbers are correlated
//! through `B_L` and `B_V = B_L + B_S`; conditioned on `n_V` the pump count is
//! binomial, and conditioned on `n_L` the phonon count is negative binomial.
//!
//! Functions taking [`NoiseTerms`] read the relevant `B` values from it;
//! the `*_from` variants take them directly.

use statrs::function::beta::beta_reg;
use statrs::function::gamma::{gamma_lr, ln_gamma};

use crate::charfun::NoiseTerms;
use crate::config::{ModeId, Pair};
use crate::error::DistError;
use crate::witnesses::entanglement;

use std::f64::consts::PI;

/// Joint number probabilities on `[0, N] × [0, N]`.
#[derive(Clone, Debug, PartialEq)]
pub struct JointNumberDist {
    /// `probs[row][col]`, indexed by the counts of `labels.0` and `labels.1`.
    pub probs: Vec<Vec<f64>>,
    pub cutoff: usize,
    pub labels: (ModeId, ModeId),
    /// Probability carried by counts beyond the cutoff.
    pub tail: f64,
}

impl JointNumberDist {
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.probs[row][col]
    }

    pub fn mass(&self) -> f64 {
        self.probs.iter().flatten().sum()
    }

    /// Marginal of the column mode.
    pub fn col_marginal(&self) -> Vec<f64> {
        (0..=self.cutoff).map(|c| self.probs.iter().map(|r| r[c]).sum()).collect()
    }
}

/// Rectangular grid of integrated intensities.
#[derive(Clone, Debug, PartialEq)]
pub struct WGrid {
    pub rows: Vec<f64>,
    pub cols: Vec<f64>,
}

impl WGrid {
    pub fn new(rows: Vec<f64>, cols: Vec<f64>) -> Result<Self, DistError> {
        if rows.is_empty() || cols.is_empty() {
            return Err(DistError::Grid("empty axis"));
        }
        if rows.iter().chain(&cols).any(|w| !w.is_finite() || *w < 0.0) {
            return Err(DistError::Grid("intensities must be finite and non-negative"));
        }
        Ok(WGrid { rows, cols })
    }

    /// `n` equally spaced points on `[0, max_row]` and on `[0, max_col]`.
    pub fn uniform(max_row: f64, max_col: f64, n: usize) -> Result<Self, DistError> {
        if n < 2 {
            return Err(DistError::Grid("need at least two points per axis"));
        }
        let axis = |m: f64| (0..n).map(|i| m * i as f64 / (n - 1) as f64).collect();
        WGrid::new(axis(max_row), axis(max_col))
    }
}

/// Quasidistribution values on a [`WGrid`].
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiDistGrid {
    pub grid: WGrid,
    /// `values[row][col]`.
    pub values: Vec<Vec<f64>>,
    pub s: f64,
}

impl QuasiDistGrid {
    pub fn min(&self) -> f64 {
        self.values.iter().flatten().fold(f64::INFINITY, |m, &v| m.min(v))
    }
}

/// `k·ln(y)` with the convention `0·ln 0 = 0`.
fn xlogy(k: f64, y: f64) -> f64 {
    if k == 0.0 {
        0.0
    } else {
        k * y.ln()
    }
}

fn ln_binomial(n: f64, k: f64) -> f64 {
    ln_gamma(n + 1.0) - ln_gamma(k + 1.0) - ln_gamma(n - k + 1.0)
}

fn check_number(n: f64) -> Result<(), DistError> {
    if n.is_finite() && n >= 0.0 {
        Ok(())
    } else {
        Err(DistError::NumberArgument(n))
    }
}

fn pump_phonon(b_l: f64, b_v: f64) -> Result<(), DistError> {
    if b_v < b_l {
        return Err(DistError::PumpPhononRegime { requirement: "B_V >= B_L", b_l, b_v });
    }
    Ok(())
}

/// Bose–Einstein weight `B^n / (1+B)^{n+1}`, continued to real `n ≥ 0`.
pub fn bose_einstein(b: f64, n: f64) -> f64 {
    (xlogy(n, b) - (n + 1.0) * (1.0 + b).ln()).exp()
}

/// Stokes–phonon joint distribution, diagonal with mean `B_S`.
pub fn joint_sv(nt: &NoiseTerms, cutoff: usize) -> Result<JointNumberDist, DistError> {
    joint_sv_from(nt.b[ModeId::S], cutoff)
}

pub fn joint_sv_from(b_s: f64, cutoff: usize) -> Result<JointNumberDist, DistError> {
    if cutoff < 1 {
        return Err(DistError::Cutoff(cutoff));
    }
    let mut probs = vec![vec![0.0; cutoff + 1]; cutoff + 1];
    for (n, row) in probs.iter_mut().enumerate() {
        row[n] = bose_einstein(b_s, n as f64);
    }
    Ok(JointNumberDist {
        probs,
        cutoff,
        labels: (ModeId::S, ModeId::V),
        tail: (b_s / (1.0 + b_s)).powi(cutoff as i32 + 1),
    })
}

/// `p(n_S, n_V)` at real arguments; zero off the diagonal.
pub fn joint_sv_at(b_s: f64, n_s: f64, n_v: f64) -> Result<f64, DistError> {
    check_number(n_s)?;
    check_number(n_v)?;
    Ok(if n_s == n_v { bose_einstein(b_s, n_s) } else { 0.0 })
}

/// Pump–phonon joint distribution, rows `n_L`, columns `n_V`.
pub fn joint_lv(nt: &NoiseTerms, cutoff: usize) -> Result<JointNumberDist, DistError> {
    joint_lv_from(nt.b[ModeId::L], nt.b[ModeId::V], cutoff)
}

pub fn joint_lv_from(b_l: f64, b_v: f64, cutoff: usize) -> Result<JointNumberDist, DistError> {
    if cutoff < 1 {
        return Err(DistError::Cutoff(cutoff));
    }
    pump_phonon(b_l, b_v)?;
    let mut probs = vec![vec![0.0; cutoff + 1]; cutoff + 1];
    for (n_l, row) in probs.iter_mut().enumerate() {
        for (n_v, p) in row.iter_mut().enumerate().skip(n_l) {
            *p = joint_lv_value(b_l, b_v, n_l as f64, n_v as f64);
        }
    }
    Ok(JointNumberDist {
        probs,
        cutoff,
        labels: (ModeId::L, ModeId::V),
        tail: (b_v / (1.0 + b_v)).powi(cutoff as i32 + 1),
    })
}

fn joint_lv_value(b_l: f64, b_v: f64, n_l: f64, n_v: f64) -> f64 {
    (ln_binomial(n_v, n_l) + xlogy(n_l, b_l) + xlogy(n_v - n_l, b_v - b_l) - (1.0 + n_v) * (1.0 + b_v).ln()).exp()
}

/// `p(n_L, n_V)` at real arguments; zero for `n_V < n_L`.
pub fn joint_lv_at(b_l: f64, b_v: f64, n_l: f64, n_v: f64) -> Result<f64, DistError> {
    check_number(n_l)?;
    check_number(n_v)?;
    pump_phonon(b_l, b_v)?;
    Ok(if n_v < n_l { 0.0 } else { joint_lv_value(b_l, b_v, n_l, n_v) })
}

/// Threshold ordering parameter for the Stokes–phonon quasidistribution.
pub fn sth_sv(nt: &NoiseTerms) -> f64 {
    let b = nt.b[ModeId::S];
    1.0 + 2.0 * b - 2.0 * b.sqrt()
}

/// Threshold ordering parameter for the pump–phonon quasidistribution.
pub fn sth_lv(nt: &NoiseTerms) -> f64 {
    let (b_l, b_s) = (nt.b[ModeId::L], nt.b[ModeId::S]);
    1.0 + 2.0 * b_l + b_s - 2.0 * b_l.sqrt()
}

/// Oscillatory factor `sin(x/a)/x` when `width² = a² > 0`, and its
/// continuation `sinh(x/a)/x` with `a² = −width²` when `width² < 0`.
fn kernel(x: f64, width_sq: f64) -> f64 {
    if width_sq > 0.0 {
        let a = width_sq.sqrt();
        if x == 0.0 {
            1.0 / a
        } else {
            (x / a).sin() / x
        }
    } else {
        let a = (-width_sq).sqrt();
        if x == 0.0 {
            1.0 / a
        } else {
            (x / a).sinh() / x
        }
    }
}

/// `s`-ordered Stokes–phonon integrated-intensity quasidistribution on a
/// grid of `(W_S, W_V)`.
///
/// When the shifted entanglement parameter is negative the distribution
/// oscillates and can take negative values; otherwise the oscillating factor
/// is continued to its hyperbolic form and the values are positive, but the
/// distribution then grows with `W` and is not normalisable.
pub fn quasi_sv(nt: &NoiseTerms, s: f64, grid: &WGrid) -> Result<QuasiDistGrid, DistError> {
    let (k_sv, _) = entanglement(nt, Pair::SV);
    quasi_sv_from(nt.b[ModeId::S], k_sv, s, grid)
}

pub fn quasi_sv_from(b_s: f64, k_sv: f64, s: f64, grid: &WGrid) -> Result<QuasiDistGrid, DistError> {
    if !(s > 0.0 && s <= 1.0) {
        return Err(DistError::OrderingParameter(s));
    }
    let b = b_s + (1.0 - s) / 2.0;
    let k = k_sv + (1.0 - s) * b_s + (1.0 - s).powi(2) / 4.0;
    if k == 0.0 {
        return Err(DistError::DegenerateWidth("K_SVs = 0"));
    }
    if b <= 0.0 {
        return Err(DistError::DegenerateWidth("B_Ss <= 0"));
    }
    let values = grid
        .rows
        .iter()
        .map(|&ws| {
            grid.cols
                .iter()
                .map(|&wv| (-(ws + wv) / (2.0 * b)).exp() / (PI * b) * kernel(ws - wv, -k))
                .collect()
        })
        .collect();
    Ok(QuasiDistGrid { grid: grid.clone(), values, s })
}

/// Glauber–Sudarshan pump–phonon integrated-intensity quasidistribution on
/// a grid of `(W_L, W_V)`.
pub fn quasi_lv(nt: &NoiseTerms, grid: &WGrid) -> Result<QuasiDistGrid, DistError> {
    quasi_lv_from(nt.b[ModeId::L], nt.b[ModeId::V], grid)
}

pub fn quasi_lv_from(b_l: f64, b_v: f64, grid: &WGrid) -> Result<QuasiDistGrid, DistError> {
    if !(b_v > b_l && b_l > 0.0) {
        return Err(DistError::PumpPhononRegime { requirement: "B_V > B_L > 0", b_l, b_v });
    }
    let (r_vl, r_lv) = ((b_v / b_l).sqrt(), (b_l / b_v).sqrt());
    let pref = 1.0 / (PI * (b_l * b_v).sqrt());
    let values = grid
        .rows
        .iter()
        .map(|&wl| {
            grid.cols
                .iter()
                .map(|&wv| {
                    let u = r_vl * wl - r_lv * wv;
                    pref * (-wl / (2.0 * b_l) - wv / (2.0 * b_v)).exp() * kernel(u, b_l)
                })
                .collect()
        })
        .collect();
    Ok(QuasiDistGrid { grid: grid.clone(), values, s: 1.0 })
}

/// Conditional Fano factors in the pump–phonon regime.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConditionalFano {
    /// Pump Fano factor given any phonon count.
    pub pump: f64,
    /// `(1 + B_V)/(1 + B_L)`.
    pub ratio: f64,
}

impl ConditionalFano {
    /// Phonon Fano factor given `n_L` pump photons.
    pub fn phonon(&self, n_l: f64) -> f64 {
        let r = self.ratio;
        ((n_l + 1.0) * r * r - 1.0) / ((n_l + 1.0) * r - 1.0) - 1.0
    }
}

pub fn fano_conditional(nt: &NoiseTerms) -> Result<ConditionalFano, DistError> {
    fano_conditional_from(nt.b[ModeId::L], nt.b[ModeId::V])
}

pub fn fano_conditional_from(b_l: f64, b_v: f64) -> Result<ConditionalFano, DistError> {
    if b_v == 0.0 {
        return Err(DistError::PumpPhononRegime { requirement: "B_V > 0", b_l, b_v });
    }
    pump_phonon(b_l, b_v)?;
    Ok(ConditionalFano { pump: 1.0 - b_l / b_v, ratio: (1.0 + b_v) / (1.0 + b_l) })
}

/// Which count is held fixed in a conditional distribution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Given {
    /// `p_c(n_L; n_V)`: pump counts given `n_V` phonons.
    Phonons(usize),
    /// `p_c(n_V; n_L)`: phonon counts given `n_L` pump photons.
    Pump(usize),
}

/// Conditional distribution with its support.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionalDist {
    /// First count of the support.
    pub offset: usize,
    /// `probs[i]` is the probability of count `offset + i`.
    pub probs: Vec<f64>,
    /// Probability beyond the last returned count.
    pub tail: f64,
}

impl ConditionalDist {
    pub fn mean(&self) -> f64 {
        self.probs.iter().enumerate().map(|(i, p)| (self.offset + i) as f64 * p).sum()
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        self.probs.iter().enumerate().map(|(i, p)| ((self.offset + i) as f64 - m).powi(2) * p).sum()
    }

    pub fn fano(&self) -> f64 {
        self.variance() / self.mean()
    }
}

/// Conditional pump or phonon count distribution.
///
/// Given `n_V` phonons the support is `0..=n_V` and `max_count` is unused;
/// given `n_L` pump photons the support is `n_L..=max_count` and the
/// remaining probability is reported as the tail.
pub fn conditional_numbers(nt: &NoiseTerms, given: Given, max_count: usize) -> Result<ConditionalDist, DistError> {
    conditional_numbers_from(nt.b[ModeId::L], nt.b[ModeId::V], given, max_count)
}

pub fn conditional_numbers_from(
    b_l: f64,
    b_v: f64,
    given: Given,
    max_count: usize,
) -> Result<ConditionalDist, DistError> {
    pump_phonon(b_l, b_v)?;
    match given {
        Given::Phonons(n_v) => {
            if b_v == 0.0 {
                return Err(DistError::PumpPhononRegime { requirement: "B_V > 0", b_l, b_v });
            }
            let probs = (0..=n_v)
                .map(|n_l| conditional_pump_value(b_l, b_v, n_l as f64, n_v as f64))
                .collect();
            Ok(ConditionalDist { offset: 0, probs, tail: 0.0 })
        }
        Given::Pump(n_l) => {
            if max_count < n_l {
                return Err(DistError::Cutoff(max_count));
            }
            let probs: Vec<f64> = (n_l..=max_count)
                .map(|n_v| conditional_phonon_value(b_l, b_v, n_v as f64, n_l as f64))
                .collect();
            // negative-binomial survival function I_q(m+1, n_L+1), m = max_count − n_L
            let q = (b_v - b_l) / (1.0 + b_v);
            let m = (max_count - n_l) as f64;
            let tail = if q == 0.0 { 0.0 } else { beta_reg(m + 1.0, n_l as f64 + 1.0, q) };
            Ok(ConditionalDist { offset: n_l, probs, tail })
        }
    }
}

fn conditional_pump_value(b_l: f64, b_v: f64, n_l: f64, n_v: f64) -> f64 {
    let p = b_l / b_v;
    (ln_binomial(n_v, n_l) + xlogy(n_l, p) + xlogy(n_v - n_l, 1.0 - p)).exp()
}

fn conditional_phonon_value(b_l: f64, b_v: f64, n_v: f64, n_l: f64) -> f64 {
    let q = (b_v - b_l) / (1.0 + b_v);
    (ln_binomial(n_v, n_l) + (n_l + 1.0) * ((1.0 + b_l) / (1.0 + b_v)).ln() + xlogy(n_v - n_l, q)).exp()
}

/// `p_c(n_L; n_V)` at real arguments with `n_L ≤ n_V`.
pub fn conditional_pump_at(b_l: f64, b_v: f64, n_l: f64, n_v: f64) -> Result<f64, DistError> {
    check_number(n_l)?;
    check_number(n_v)?;
    pump_phonon(b_l, b_v)?;
    Ok(if n_l > n_v || b_v == 0.0 { 0.0 } else { conditional_pump_value(b_l, b_v, n_l, n_v) })
}

/// `p_c(n_V; n_L)` at real arguments with `n_L ≤ n_V`.
pub fn conditional_phonon_at(b_l: f64, b_v: f64, n_v: f64, n_l: f64) -> Result<f64, DistError> {
    check_number(n_l)?;
    check_number(n_v)?;
    pump_phonon(b_l, b_v)?;
    Ok(if n_l > n_v { 0.0 } else { conditional_phonon_value(b_l, b_v, n_v, n_l) })
}

/// Difference-number distribution and the Poissonian reference for the same
/// total mean.
#[derive(Clone, Debug, PartialEq)]
pub struct DifferenceDist {
    pub p_minus: Vec<f64>,
    pub p_poisson: Vec<f64>,
    pub tail_minus: f64,
    pub tail_poisson: f64,
}

pub fn difference_dist(nt: &NoiseTerms, cutoff: usize) -> Result<DifferenceDist, DistError> {
    difference_dist_from(nt.b[ModeId::L], nt.b[ModeId::V], cutoff)
}

pub fn difference_dist_from(b_l: f64, b_v: f64, cutoff: usize) -> Result<DifferenceDist, DistError> {
    pump_phonon(b_l, b_v)?;
    let r = b_v - b_l;
    let lam = b_v + b_l;
    let p_minus = (0..=cutoff).map(|n| bose_einstein(r, n as f64)).collect();
    let p_poisson = (0..=cutoff).map(|n| poisson_at(lam, n as f64)).collect();
    Ok(DifferenceDist {
        p_minus,
        p_poisson,
        tail_minus: (r / (1.0 + r)).powi(cutoff as i32 + 1),
        // P(X > N) for X ~ Poisson(λ) is the regularised lower gamma P(N+1, λ)
        tail_poisson: if lam == 0.0 { 0.0 } else { gamma_lr(cutoff as f64 + 1.0, lam) },
    })
}

/// `p_−(n)` at real `n`.
pub fn difference_at(b_l: f64, b_v: f64, n: f64) -> Result<f64, DistError> {
    check_number(n)?;
    pump_phonon(b_l, b_v)?;
    Ok(bose_einstein(b_v - b_l, n))
}

/// Poisson weight `λ^n e^{−λ} / Γ(n+1)` at real `n`.
pub fn poisson_at(lam: f64, n: f64) -> f64 {
    (xlogy(n, lam) - lam - ln_gamma(n + 1.0)).exp()
}
