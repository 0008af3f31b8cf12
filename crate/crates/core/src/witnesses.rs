//! Scalar nonclassicality witnesses built from [`NoiseTerms`].
//!
//! Negative entanglement parameters, negative sub-shot-noise parameters,
//! squeezing parameters below one and negative sum or difference variances
//! each certify a nonclassical state. Nothing is clamped: small negative
//! values are returned as computed.

use std::collections::BTreeMap;

use crate::charfun::NoiseTerms;
use crate::coefficients::CoeffSet;
use crate::config::{ModeId, Modes, Pair, Pairs, RamanConfig, Regime};

use ModeId::{A, L, S, V};

/// How the two-mode normal term enters the intermodal squeezing parameter.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PairSqueezingForm {
    /// `2 Re D̄_ij`.
    #[default]
    RealPart,
    /// `2 |D̄_ij|`.
    Modulus,
}

/// Entanglement parameters `(K_ij)₊` and `(K_ij)₋`.
pub fn entanglement(nt: &NoiseTerms, pair: Pair) -> (f64, f64) {
    let (i, j) = pair.modes();
    let (bi, bj) = (nt.b[i], nt.b[j]);
    let (ci, cj) = (nt.c[i].norm(), nt.c[j].norm());
    let (d, db) = (nt.d[pair].norm(), nt.dbar[pair].norm());
    let plus = (bi + ci) * (bj + cj) - (d - db).powi(2);
    let minus = (bi - ci) * (bj - cj) - (d + db).powi(2);
    (plus, minus)
}

/// Sub-shot-noise parameter `C_ij`.
pub fn sub_shot(nt: &NoiseTerms, pair: Pair) -> f64 {
    let (i, j) = pair.modes();
    nt.b[i].powi(2) + nt.b[j].powi(2) + nt.c[i].norm_sqr() + nt.c[j].norm_sqr()
        - 2.0 * nt.d[pair].norm_sqr()
        - 2.0 * nt.dbar[pair].norm_sqr()
}

/// Single-mode squeezing parameter `λ_i`.
pub fn squeezing_single(nt: &NoiseTerms, mode: ModeId) -> f64 {
    1.0 + 2.0 * (nt.b[mode] - nt.c[mode].norm())
}

/// Intermodal squeezing parameter `λ_ij` with the default form.
pub fn squeezing_pair(nt: &NoiseTerms, pair: Pair) -> f64 {
    squeezing_pair_with(nt, pair, PairSqueezingForm::default())
}

pub fn squeezing_pair_with(nt: &NoiseTerms, pair: Pair, form: PairSqueezingForm) -> f64 {
    let (i, j) = pair.modes();
    let normal = match form {
        PairSqueezingForm::RealPart => nt.dbar[pair].re,
        PairSqueezingForm::Modulus => nt.dbar[pair].norm(),
    };
    1.0 + nt.b[i] + nt.b[j] - 2.0 * normal - (nt.c[i] + nt.c[j] + 2.0 * nt.d[pair]).norm()
}

/// Intensity fluctuation `⟨(ΔW_i)²⟩`.
pub fn wave_variance(nt: &NoiseTerms, mode: ModeId) -> f64 {
    let b = nt.b[mode];
    let c = nt.c[mode];
    let xi = nt.xi_t[mode];
    b * b + c.norm_sqr() + 2.0 * b * xi.norm_sqr() + 2.0 * (c * xi.conj() * xi.conj()).re
}

/// Intensity correlation `⟨ΔW_i ΔW_j⟩`.
pub fn wave_covariance(nt: &NoiseTerms, pair: Pair) -> f64 {
    let (i, j) = pair.modes();
    let (xi, xj) = (nt.xi_t[i], nt.xi_t[j]);
    let (d, db) = (nt.d[pair], nt.dbar[pair]);
    d.norm_sqr() - db.norm_sqr() + 2.0 * (d * xi.conj() * xj.conj() - db * xi * xj.conj()).re
}

/// Sum and difference variances `⟨(ΔW_ij)²⟩±`.
pub fn sum_diff_variance(nt: &NoiseTerms, pair: Pair) -> (f64, f64) {
    let (i, j) = pair.modes();
    let singles = wave_variance(nt, i) + wave_variance(nt, j);
    let cov = 2.0 * wave_covariance(nt, pair);
    (singles + cov, singles - cov)
}

/// Every witness for one set of noise terms.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessReport {
    pub k_plus: Pairs<f64>,
    pub k_minus: Pairs<f64>,
    pub c_shot: Pairs<f64>,
    pub lambda_single: Modes<f64>,
    pub lambda_pair: Pairs<f64>,
    pub var_w: Modes<f64>,
    pub cov_w: Pairs<f64>,
    pub sum_var: Pairs<f64>,
    pub diff_var: Pairs<f64>,
}

impl WitnessReport {
    pub fn new(nt: &NoiseTerms, form: PairSqueezingForm) -> Self {
        let ent = Pairs::from_fn(|p| entanglement(nt, p));
        let sd = Pairs::from_fn(|p| sum_diff_variance(nt, p));
        WitnessReport {
            k_plus: Pairs::from_fn(|p| ent[p].0),
            k_minus: Pairs::from_fn(|p| ent[p].1),
            c_shot: Pairs::from_fn(|p| sub_shot(nt, p)),
            lambda_single: Modes::from_fn(|m| squeezing_single(nt, m)),
            lambda_pair: Pairs::from_fn(|p| squeezing_pair_with(nt, p, form)),
            var_w: Modes::from_fn(|m| wave_variance(nt, m)),
            cov_w: Pairs::from_fn(|p| wave_covariance(nt, p)),
            sum_var: Pairs::from_fn(|p| sd[p].0),
            diff_var: Pairs::from_fn(|p| sd[p].1),
        }
    }

    /// `(name, value)` rows in a fixed order, e.g. `K_plus_LS`, `lambda_V`.
    pub fn rows(&self) -> Vec<(String, f64)> {
        let mut out = Vec::with_capacity(46);
        for (name, v) in [("K_plus", &self.k_plus), ("K_minus", &self.k_minus), ("C_shot", &self.c_shot)] {
            out.extend(v.iter().map(|(p, x)| (format!("{name}_{p}"), x)));
        }
        out.extend(self.lambda_single.iter().map(|(m, x)| (format!("lambda_{m}"), x)));
        out.extend(self.lambda_pair.iter().map(|(p, x)| (format!("lambda_{p}"), x)));
        out.extend(self.var_w.iter().map(|(m, x)| (format!("varW_{m}"), x)));
        for (name, v) in [("covW", &self.cov_w), ("sumvar", &self.sum_var), ("diffvar", &self.diff_var)] {
            out.extend(v.iter().map(|(p, x)| (format!("{name}_{p}"), x)));
        }
        out
    }
}

/// Specialised closed-form witness expressions, evaluated directly from the
/// coefficients and initial amplitudes.
///
/// Coherent keys: `K_LV`, `K_SV`, `lambda_L`, `lambda_V`, `varW_L`, `varW_V`.
/// Chaotic keys: `K_LV_plus`, `K_LV_minus`, `K_SV`, `C_LV`, `C_SV`, `C_VA`,
/// `lambda_L`, `varW_L`.
///
/// The squeezing expressions are exact rewritings of the generic witnesses.
/// The others keep only the leading power of the rescaled time, so they
/// agree with the generic pipeline only for short times.
pub fn closed_forms(cfg: &RamanConfig, k: &CoeffSet) -> BTreeMap<&'static str, f64> {
    let x = &cfg.xi0;
    let (il, is, iv, ia) = (x[L].norm_sqr(), x[S].norm_sqr(), x[V].norm_sqr(), x[A].norm_sqr());
    let (ms, ma) = (x[S].norm(), x[A].norm());
    let mut out = BTreeMap::new();
    match cfg.regime() {
        Regime::Coherent => {
            let cl = k.f2 * k.f3 + k.f1 * k.f4;
            let cv = k.h2 * k.h3 + k.h1 * k.h4;
            out.insert("K_LV", -k.h3.norm_sqr() * ia);
            out.insert("K_SV", -k.h2.norm_sqr() * il);
            out.insert("lambda_L", 1.0 + 2.0 * k.f3.norm_sqr() * ia - 2.0 * cl.norm() * ms * ma);
            out.insert(
                "lambda_V",
                1.0 + 2.0 * k.h2.norm_sqr() * il + 2.0 * k.h3.norm_sqr() * ia - 2.0 * cv.norm() * ms * ma,
            );
            out.insert(
                "varW_L",
                2.0 * k.f3.norm_sqr() * ia * il + 2.0 * (cl * x[S] * x[A] * x[L].conj().powi(2)).re,
            );
            out.insert(
                "varW_V",
                2.0 * (k.h2.norm_sqr() * il + k.h3.norm_sqr() * ia) * iv
                    + 2.0 * (cv * x[S].conj() * x[A] * x[V].conj().powi(2)).re,
            );
        }
        Regime::Chaotic => {
            let n = cfg.n_mean();
            let cross = (k.f2.norm() * k.f3.norm() - k.f1.norm() * k.f4.norm()) * n * ms * ma;
            let base = -k.h3.norm_sqr() * ia * (n + 1.0);
            let cl = k.f2 * k.f3 * (2.0 * n + 1.0) + k.f1 * k.f4;
            let bl = k.f3.norm_sqr() * ia * (n + 1.0) + k.f2.norm_sqr() * n * is;
            out.insert("K_LV_plus", base - cross);
            out.insert("K_LV_minus", base + cross);
            out.insert("K_SV", -k.h2.norm_sqr() * il * (n + 1.0));
            out.insert(
                "C_LV",
                n * n - 2.0 * (k.h3.norm_sqr() * ia * (n + 1.0).powi(2) + k.f2.norm_sqr() * n * n * is),
            );
            out.insert("C_SV", n * n - 2.0 * k.h2.norm_sqr() * il * (n + 1.0).powi(2));
            out.insert("C_VA", n * n - 2.0 * k.l2.norm_sqr() * n * n * il);
            out.insert("lambda_L", 1.0 + 2.0 * bl - 2.0 * cl.norm() * ms * ma);
            out.insert("varW_L", 2.0 * bl * il + 2.0 * (cl * x[S] * x[A] * x[L].conj().powi(2)).re);
        }
    }
    out
}

/// Generic-pipeline values under the same keys as [`closed_forms`].
pub fn pipeline_forms(nt: &NoiseTerms) -> BTreeMap<&'static str, f64> {
    let mut out = BTreeMap::new();
    let (lv_p, lv_m) = entanglement(nt, Pair::LV);
    let (sv_p, _) = entanglement(nt, Pair::SV);
    out.insert("K_SV", sv_p);
    out.insert("lambda_L", squeezing_single(nt, L));
    out.insert("varW_L", wave_variance(nt, L));
    match nt.regime {
        Regime::Coherent => {
            out.insert("K_LV", lv_p);
            out.insert("lambda_V", squeezing_single(nt, V));
            out.insert("varW_V", wave_variance(nt, V));
        }
        Regime::Chaotic => {
            out.insert("K_LV_plus", lv_p);
            out.insert("K_LV_minus", lv_m);
            out.insert("C_LV", sub_shot(nt, Pair::LV));
            out.insert("C_SV", sub_shot(nt, Pair::SV));
            out.insert("C_VA", sub_shot(nt, Pair::VA));
        }
    }
    out
}
