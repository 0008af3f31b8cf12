//! Time-dependent coefficients of the second-order operator solution
//!
//! ```text
//! a_L(t) = f1 a_L + f2 a_S a_V + f3 a_V† a_A + f4 a_L† a_S a_A + f5 a_L a_S a_S†
//!        + f6 a_L a_V† a_V + f7 a_L a_V† a_V + f8 a_L a_A† a_A
//! a_S(t) = g1 a_S + g2 a_L a_V† + g3 a_L² a_A† + g4 a_V†² a_A + g5 a_S a_V a_V† + g6 a_S a_L a_L†
//! a_V(t) = h1 a_V + h2 a_L a_S† + h3 a_L† a_A + h4 a_S† a_V† a_A + h5 a_V a_L a_L†
//!        + h6 a_V a_S a_S† + h7 a_V a_A† a_A + h8 a_V a_L† a_L
//! a_A(t) = l1 a_A + l2 a_L a_V + l3 a_L² a_S† + l4 a_S a_V² + l5 a_V† a_V a_A + l6 a_L a_L† a_A
//! ```
//!
//! [`eval_coeffs`] writes each coefficient as a divided difference of
//! `exp(±i x t)` (see [`crate::divdiff`]), which is finite and accurate on
//! every degenerate detuning line. [`eval_coeffs_raw`] evaluates the quotient
//! forms literally and refuses inputs where a denominator nearly vanishes.

use num_complex::Complex64 as C64;

use crate::config::{ModeId, RamanConfig};
use crate::divdiff::{exp_dd, exp_neg_dd};
use crate::error::CoeffError;

/// Boundary on `|x·t|` below which the literal quotient forms are refused.
pub const EPS_SWITCH: f64 = 1e-6;

/// The 28 coefficients at one time point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoeffSet {
    pub f1: C64,
    pub f2: C64,
    pub f3: C64,
    pub f4: C64,
    pub f5: C64,
    pub f6: C64,
    pub f7: C64,
    pub f8: C64,
    pub g1: C64,
    pub g2: C64,
    pub g3: C64,
    pub g4: C64,
    pub g5: C64,
    pub g6: C64,
    pub h1: C64,
    pub h2: C64,
    pub h3: C64,
    pub h4: C64,
    pub h5: C64,
    pub h6: C64,
    pub h7: C64,
    pub h8: C64,
    pub l1: C64,
    pub l2: C64,
    pub l3: C64,
    pub l4: C64,
    pub l5: C64,
    pub l6: C64,
}

impl CoeffSet {
    /// Coefficients at `t = 0`: unit phases and nothing else.
    pub fn identity() -> Self {
        let one = C64::new(1.0, 0.0);
        let z = C64::new(0.0, 0.0);
        CoeffSet {
            f1: one,
            f2: z,
            f3: z,
            f4: z,
            f5: z,
            f6: z,
            f7: z,
            f8: z,
            g1: one,
            g2: z,
            g3: z,
            g4: z,
            g5: z,
            g6: z,
            h1: one,
            h2: z,
            h3: z,
            h4: z,
            h5: z,
            h6: z,
            h7: z,
            h8: z,
            l1: one,
            l2: z,
            l3: z,
            l4: z,
            l5: z,
            l6: z,
        }
    }

    /// All coefficients with their names, in declaration order.
    pub fn named(&self) -> [(&'static str, C64); 28] {
        [
            ("f1", self.f1),
            ("f2", self.f2),
            ("f3", self.f3),
            ("f4", self.f4),
            ("f5", self.f5),
            ("f6", self.f6),
            ("f7", self.f7),
            ("f8", self.f8),
            ("g1", self.g1),
            ("g2", self.g2),
            ("g3", self.g3),
            ("g4", self.g4),
            ("g5", self.g5),
            ("g6", self.g6),
            ("h1", self.h1),
            ("h2", self.h2),
            ("h3", self.h3),
            ("h4", self.h4),
            ("h5", self.h5),
            ("h6", self.h6),
            ("h7", self.h7),
            ("h8", self.h8),
            ("l1", self.l1),
            ("l2", self.l2),
            ("l3", self.l3),
            ("l4", self.l4),
            ("l5", self.l5),
            ("l6", self.l6),
        ]
    }
}

fn phase(omega: f64, t: f64) -> C64 {
    C64::from_polar(1.0, -omega * t)
}

/// Evaluate every coefficient at the configuration's time.
pub fn eval_coeffs(cfg: &RamanConfig) -> CoeffSet {
    let t = cfg.t;
    if t == 0.0 {
        return CoeffSet::identity();
    }
    let (g, chi) = (cfg.g, cfg.chi);
    let (d1, d2) = (cfg.dw1, cfg.dw2);
    let g2abs = g.norm_sqr();
    let chi2abs = chi.norm_sqr();
    let fp = |nodes: &[f64]| exp_dd(t, nodes);
    let fm = |nodes: &[f64]| exp_neg_dd(t, nodes);

    let f1 = phase(cfg.omega[ModeId::L], t);
    let g1 = phase(cfg.omega[ModeId::S], t);
    let h1 = phase(cfg.omega[ModeId::V], t);
    let l1 = phase(cfg.omega[ModeId::A], t);

    let f5 = g2abs * f1 * fm(&[0.0, 0.0, d1]);
    let f7 = chi2abs * f1 * fp(&[0.0, 0.0, d2]);
    let g5 = g2abs * g1 * fp(&[0.0, 0.0, d1]);
    let h5 = -g2abs * h1 * fp(&[0.0, 0.0, d1]);
    let h7 = -chi2abs * h1 * fp(&[0.0, 0.0, d2]);
    let l5 = chi2abs * l1 * fm(&[0.0, 0.0, d2]);

    CoeffSet {
        f1,
        f2: -g.conj() * f1 * fm(&[0.0, d1]),
        f3: chi * f1 * fp(&[0.0, d2]),
        f4: chi * g.conj() * f1 * (d1 + d2) * fm(&[0.0, d1, -d2, d1 - d2]),
        f5,
        f6: f5,
        f7,
        f8: -f7,
        g1,
        g2: g * g1 * fp(&[0.0, d1]),
        g3: -chi.conj() * g * g1 * fp(&[0.0, d1 - d2, d1]),
        g4: chi * g * g1 * fp(&[0.0, d1, d1 + d2]),
        g5,
        g6: -g5,
        h1,
        h2: g * h1 * fp(&[0.0, d1]),
        h3: chi * h1 * fp(&[0.0, d2]),
        h4: chi * g * h1 * (d1 - d2) * fp(&[0.0, d1, d2, d1 + d2]),
        h5,
        h6: -h5,
        h7,
        h8: -h7,
        l1,
        l2: -chi.conj() * l1 * fm(&[0.0, d2]),
        l3: chi.conj() * g * l1 * fp(&[0.0, -d2, d1 - d2]),
        l4: chi.conj() * g.conj() * l1 * fm(&[0.0, d2, d1 + d2]),
        l5,
        l6: l5,
    }
}

/// The four detuning combinations that appear as denominators.
pub fn singular_combinations(cfg: &RamanConfig) -> [(&'static str, f64); 4] {
    [
        ("dw1", cfg.dw1),
        ("dw2", cfg.dw2),
        ("dw1-dw2", cfg.dw1 - cfg.dw2),
        ("dw1+dw2", cfg.dw1 + cfg.dw2),
    ]
}

/// Literal quotient-form evaluation, without any limit handling.
///
/// Refuses configurations where one of the denominators `Δω₁`, `Δω₂`,
/// `Δω₁ − Δω₂`, `Δω₁ + Δω₂` times `t` is below [`EPS_SWITCH`] in magnitude.
pub fn eval_coeffs_raw(cfg: &RamanConfig) -> Result<CoeffSet, CoeffError> {
    let t = cfg.t;
    for (combination, x) in singular_combinations(cfg) {
        let product = (x * t).abs();
        if product < EPS_SWITCH {
            return Err(CoeffError::InsideSwitchRegion { combination, product });
        }
    }
    let (g, chi) = (cfg.g, cfg.chi);
    let (d1, d2) = (cfg.dw1, cfg.dw2);
    let gs = g.conj();
    let cs = chi.conj();
    let g2 = g.norm_sqr();
    let c2 = chi.norm_sqr();
    let i = C64::new(0.0, 1.0);
    let e = |x: f64| (i * x * t).exp();

    let f1 = phase(cfg.omega[ModeId::L], t);
    let g1 = phase(cfg.omega[ModeId::S], t);
    let h1 = phase(cfg.omega[ModeId::V], t);
    let l1 = phase(cfg.omega[ModeId::A], t);

    let dm = d1 - d2;
    let dp = d1 + d2;

    let f4 = -chi * gs * f1 / d2 * ((e(-dm) - 1.0) / dm - e(-d1) / d1)
        - chi * gs * f1 / d1 * ((e(-dm) - 1.0) / dm + e(d2) / d2);
    let f5 = g2 * f1 / (d1 * d1) * (e(-d1) - 1.0) + i * g2 * t * f1 / d1;
    let f7 = c2 * f1 / (d2 * d2) * (e(d2) - 1.0) - i * c2 * t * f1 / d2;
    let g5 = g2 * g1 / (d1 * d1) * (e(d1) - 1.0) - i * g2 * t * g1 / d1;
    let h4 = chi * g * h1 / d2 * ((e(dp) - 1.0) / dp - e(d1) / d1)
        - chi * g * h1 / d1 * ((e(dp) - 1.0) / dp - e(d2) / d2);
    let h5 = -g2 * h1 / (d1 * d1) * (e(d1) - 1.0) + i * g2 * t * h1 / d1;
    let h7 = -c2 * h1 / (d2 * d2) * (e(d2) - 1.0) + i * c2 * t * h1 / d2;
    let l5 = c2 * l1 / (d2 * d2) * (e(-d2) - 1.0) + i * c2 * t * l1 / d2;

    Ok(CoeffSet {
        f1,
        f2: -gs * f1 / d1 * (e(-d1) - 1.0),
        f3: chi * f1 / d2 * (e(d2) - 1.0),
        f4,
        f5,
        f6: f5,
        f7,
        f8: -f7,
        g1,
        g2: g * g1 / d1 * (e(d1) - 1.0),
        g3: cs * g * g1 / d2 * ((e(dm) - 1.0) / dm - (e(d1) - 1.0) / d1),
        g4: chi * g * g1 / d2 * ((e(dp) - 1.0) / dp - (e(d1) - 1.0) / d1),
        g5,
        g6: -g5,
        h1,
        h2: g * h1 / d1 * (e(d1) - 1.0),
        h3: chi * h1 / d2 * (e(d2) - 1.0),
        h4,
        h5,
        h6: -h5,
        h7,
        h8: -h7,
        l1,
        l2: -cs * l1 / d2 * (e(-d2) - 1.0),
        l3: cs * g * l1 / d1 * ((e(dm) - 1.0) / dm + (e(-d2) - 1.0) / d2),
        l4: cs * gs * l1 / d1 * ((e(-dp) - 1.0) / dp - (e(-d2) - 1.0) / d2),
        l5,
        l6: l5,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{make_config, Modes, PhononState};

    fn cfg(d1: f64, d2: f64, gt: f64) -> RamanConfig {
        let one = C64::new(1.0, 0.0);
        make_config(one, one, d1, d2, 1.0, gt, Modes::splat(one), PhononState::Coherent).unwrap()
    }

    fn rel(a: C64, b: C64) -> f64 {
        (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
    }

    #[test]
    fn zero_time_is_identity() {
        assert_eq!(eval_coeffs(&cfg(3.0, 4.0, 0.0)), CoeffSet::identity());
    }

    #[test]
    fn h2_modulus_closed_form() {
        let c = eval_coeffs(&cfg(10.0, 10.0, 0.1));
        let want = 4.0 * 0.5f64.sin().powi(2) / 100.0;
        assert!((c.h2.norm_sqr() - want).abs() < 1e-17);
        assert!((want - 9.19395e-3).abs() < 1e-8);
    }

    #[test]
    fn f2_tends_to_i_gstar_t_f1() {
        let t = 0.37;
        let c = eval_coeffs(&cfg(0.0, 2.0, t));
        assert!(rel(c.f2, C64::new(0.0, t) * c.f1) < 1e-14);
        // near-degenerate direct evaluation agrees with the limit
        let near = cfg(1e-3 / t, 2.0, t);
        let raw = eval_coeffs_raw(&near).unwrap();
        assert!(rel(raw.f2, C64::new(0.0, t) * raw.f1) < 1e-3);
        assert!(rel(raw.f2, eval_coeffs(&near).f2) < 1e-12);
    }

    #[test]
    fn raw_refuses_switch_region() {
        assert!(matches!(
            eval_coeffs_raw(&cfg(1e-7, 3.0, 0.1)),
            Err(CoeffError::InsideSwitchRegion { combination: "dw1", .. })
        ));
        assert!(matches!(
            eval_coeffs_raw(&cfg(5.0, 5.0, 0.1)),
            Err(CoeffError::InsideSwitchRegion { combination: "dw1-dw2", .. })
        ));
        // the stable path handles the same degenerate line
        let c = eval_coeffs(&cfg(5.0, 5.0, 0.1));
        for (_, v) in c.named() {
            assert!(v.re.is_finite() && v.im.is_finite());
        }
    }

    #[test]
    fn raw_and_stable_agree_at_moderate_products() {
        let c1 = cfg(0.1, 3.0, 0.1); // Δω₁ t = 0.01
        let a = eval_coeffs(&c1);
        let b = eval_coeffs_raw(&c1).unwrap();
        for ((name, x), (_, y)) in a.named().into_iter().zip(b.named()) {
            assert!(rel(x, y) < 1e-9, "{name}: {x} vs {y}");
        }
    }

    #[test]
    fn resonant_short_time_forms() {
        let t = 0.1;
        let c = eval_coeffs(&cfg(0.0, 0.0, t));
        assert!((c.f3.norm() - t).abs() < 1e-15);
        assert!((c.h2.norm() - t).abs() < 1e-15);
        // f4 and h4 vanish on exact resonance
        assert!(c.f4.norm() < 1e-17);
        assert!(c.h4.norm() < 1e-17);
    }

    #[test]
    fn sinc_cut_of_first_order_terms() {
        for &(d1, t) in &[(10.0, 0.1), (3.0, 0.9), (-7.0, 0.25)] {
            let c = eval_coeffs(&cfg(d1, 2.0, t));
            let x: f64 = d1 * t / 2.0;
            let sinc = x.sin() / x;
            assert!((c.f2.norm() - t * sinc.abs()).abs() < 1e-15);
            assert!((c.g2.norm() - t * sinc.abs()).abs() < 1e-15);
        }
    }
}
