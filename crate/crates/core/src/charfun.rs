//! Gaussian data of the normally ordered characteristic function.
//!
//! For coherent photon modes the characteristic function at time `t` is
//!
//! ```text
//! C_N(β) = exp{ Σ_j [ −B_j |β_j|² + (½ C_j* β_j² + c.c.) + β_j ξ_j*(t) − β_j* ξ_j(t) ]
//!             + Σ_{j<k} ( D_jk β_j* β_k* + D̄_jk β_j β_k* + c.c. ) }
//! ```
//!
//! so every moment used downstream follows from `B`, `C`, `D`, `D̄` and the
//! mean fields:
//!
//! ```text
//! ⟨a_j† a_j⟩ = B_j + |ξ_j|²      ⟨a_j²⟩ = C_j + ξ_j²
//! ⟨a_j a_k⟩  = D_jk + ξ_j ξ_k    ⟨a_j† a_k⟩ = D̄_jk + ξ_j* ξ_k
//! ```

use num_complex::Complex64 as C64;

use crate::coefficients::CoeffSet;
use crate::config::{ModeId, Modes, Pair, Pairs, RamanConfig, Regime};
use crate::error::RegimeError;

use ModeId::{A, L, S, V};

/// Noise terms and mean fields at one time point.
#[derive(Clone, Debug, PartialEq)]
pub struct NoiseTerms {
    pub b: Modes<f64>,
    pub c: Modes<C64>,
    pub d: Pairs<C64>,
    pub dbar: Pairs<C64>,
    pub xi_t: Modes<C64>,
    pub regime: Regime,
}

const ZERO: C64 = C64::new(0.0, 0.0);

impl NoiseTerms {
    fn empty(regime: Regime, xi_t: Modes<C64>) -> Self {
        NoiseTerms {
            b: Modes::splat(0.0),
            c: Modes::splat(ZERO),
            d: Pairs::splat(ZERO),
            dbar: Pairs::splat(ZERO),
            xi_t,
            regime,
        }
    }

    /// `⟨a_j† a_j⟩`.
    pub fn number(&self, m: ModeId) -> f64 {
        self.b[m] + self.xi_t[m].norm_sqr()
    }

    /// `⟨a_j²⟩`.
    pub fn square(&self, m: ModeId) -> C64 {
        self.c[m] + self.xi_t[m] * self.xi_t[m]
    }

    /// `⟨a_j a_k⟩` for the pair's modes in key order.
    pub fn pair_product(&self, p: Pair) -> C64 {
        let (j, k) = p.modes();
        self.d[p] + self.xi_t[j] * self.xi_t[k]
    }

    /// `⟨a_j† a_k⟩` for the pair's modes in key order.
    pub fn pair_normal(&self, p: Pair) -> C64 {
        let (j, k) = p.modes();
        self.dbar[p] + self.xi_t[j].conj() * self.xi_t[k]
    }
}

fn expect(cfg: &RamanConfig, want: Regime) -> Result<(), RegimeError> {
    let found = cfg.regime();
    if found == want {
        Ok(())
    } else {
        Err(RegimeError::Mismatch { expected: want, found })
    }
}

/// Noise terms when every mode, the phonon included, starts coherent.
pub fn noise_terms_coherent(cfg: &RamanConfig, k: &CoeffSet) -> Result<NoiseTerms, RegimeError> {
    expect(cfg, Regime::Coherent)?;
    let x = &cfg.xi0;
    let (il, ia) = (x[L].norm_sqr(), x[A].norm_sqr());
    let mut nt = NoiseTerms::empty(Regime::Coherent, mean_fields(cfg, k));

    nt.b[L] = k.f3.norm_sqr() * ia;
    nt.b[S] = k.g2.norm_sqr() * il;
    nt.b[V] = k.h2.norm_sqr() * il + k.h3.norm_sqr() * ia;

    nt.c[L] = (k.f2 * k.f3 + k.f1 * k.f4) * x[S] * x[A];
    nt.c[V] = (k.h2 * k.h3 + k.h1 * k.h4) * x[S].conj() * x[A];

    nt.d[Pair::LS] = (k.f1 * k.g6 + k.f2 * k.g2) * x[L] * x[S];
    nt.d[Pair::LV] = k.f1 * k.h3 * x[A] + (k.f1 * k.h5 + k.f1 * k.h8 + k.f2 * k.h2) * x[L] * x[V];
    nt.d[Pair::LA] = k.f1 * k.l6 * x[L] * x[A];
    nt.d[Pair::SV] = k.g1 * k.h2 * x[L]
        + k.g1 * k.h6 * x[S] * x[V]
        + (k.g1 * k.h4 + k.g2 * k.h3) * x[V].conj() * x[A];
    nt.d[Pair::SA] = k.g1 * k.l3 * x[L] * x[L];
    nt.d[Pair::VA] = k.h1 * k.l5 * x[V] * x[A];

    nt.dbar[Pair::LS] = k.f3.conj() * k.g2 * x[L] * x[A].conj();
    Ok(nt)
}

/// Noise terms for thermal phonons with coherent photon modes.
pub fn noise_terms_chaotic(cfg: &RamanConfig, k: &CoeffSet) -> Result<NoiseTerms, RegimeError> {
    expect(cfg, Regime::Chaotic)?;
    let n = cfg.n_mean();
    let x = &cfg.xi0;
    let (il, is, ia) = (x[L].norm_sqr(), x[S].norm_sqr(), x[A].norm_sqr());
    let mut nt = NoiseTerms::empty(Regime::Chaotic, mean_fields(cfg, k));

    nt.b[L] = k.f2.norm_sqr() * is * n + k.f3.norm_sqr() * ia * (n + 1.0);
    nt.b[S] = k.g2.norm_sqr() * il * (n + 1.0);
    nt.b[V] = n + k.h2.norm_sqr() * (il + n * (il - is)) + k.h3.norm_sqr() * (ia + n * (ia - il));
    nt.b[A] = k.l2.norm_sqr() * il * n;

    nt.c[L] = (k.f2 * k.f3 * (2.0 * n + 1.0) + k.f1 * k.f4) * x[S] * x[A];
    nt.c[V] = (k.h2 * k.h3 + k.h1 * k.h4 * (2.0 * n + 1.0)) * x[S].conj() * x[A];

    nt.d[Pair::LS] = (k.f1 * k.g6 + k.f2 * k.g2 * (n + 1.0)) * x[L] * x[S];
    nt.d[Pair::LV] = k.f1 * k.h3 * (n + 1.0) * x[A];
    nt.d[Pair::LA] = (k.f1 * k.l6 + k.f3 * k.l2 * n) * x[L] * x[A];
    nt.d[Pair::SV] = k.g1 * k.h2 * (n + 1.0) * x[L];
    nt.d[Pair::SA] = (k.g1 * k.l3 + k.g2 * k.h2 * n) * x[L] * x[L];

    nt.dbar[Pair::LS] = k.f3.conj() * k.g2 * (n + 1.0) * x[L] * x[A].conj();
    nt.dbar[Pair::LV] = k.f2.conj() * k.h1 * n * x[S].conj();
    nt.dbar[Pair::LA] = k.f2.conj() * k.l2 * n * x[L] * x[S].conj();
    nt.dbar[Pair::VA] = k.h1 * k.l2.conj() * n * x[L];
    Ok(nt)
}

/// Noise terms for whichever phonon statistics the configuration carries.
pub fn noise_terms(cfg: &RamanConfig, k: &CoeffSet) -> NoiseTerms {
    match cfg.regime() {
        Regime::Coherent => noise_terms_coherent(cfg, k),
        Regime::Chaotic => noise_terms_chaotic(cfg, k),
    }
    .expect("regime matches by construction")
}

/// Mean fields `⟨a_j(t)⟩` from the operator solution.
///
/// Each operator product is replaced by its expectation in the initial
/// state, including the commutator contribution of anti-normally ordered
/// pairs (`⟨a a†⟩ = |ξ|² + 1`). For thermal phonons, products with an odd
/// number of phonon operators vanish, `⟨a_V† a_V⟩ = n` and
/// `⟨a_V a_V†⟩ = n + 1`.
pub fn mean_fields(cfg: &RamanConfig, k: &CoeffSet) -> Modes<C64> {
    let x = &cfg.xi0;
    let (xl, xs, xa) = (x[L], x[S], x[A]);
    let (il, is, ia) = (xl.norm_sqr(), xs.norm_sqr(), xa.norm_sqr());
    match cfg.regime() {
        Regime::Coherent => {
            let xv = x[V];
            let iv = xv.norm_sqr();
            Modes([
                k.f1 * xl
                    + k.f2 * xs * xv
                    + k.f3 * xv.conj() * xa
                    + k.f4 * xl.conj() * xs * xa
                    + k.f5 * xl * (is + 1.0)
                    + (k.f6 + k.f7) * xl * iv
                    + k.f8 * xl * ia,
                k.g1 * xs
                    + k.g2 * xl * xv.conj()
                    + k.g3 * xl * xl * xa.conj()
                    + k.g4 * xv.conj() * xv.conj() * xa
                    + k.g5 * xs * (iv + 1.0)
                    + k.g6 * xs * (il + 1.0),
                k.h1 * xv
                    + k.h2 * xl * xs.conj()
                    + k.h3 * xl.conj() * xa
                    + k.h4 * xs.conj() * xv.conj() * xa
                    + k.h5 * xv * (il + 1.0)
                    + k.h6 * xv * (is + 1.0)
                    + k.h7 * xv * ia
                    + k.h8 * xv * il,
                k.l1 * xa
                    + k.l2 * xl * xv
                    + k.l3 * xl * xl * xs.conj()
                    + k.l4 * xs * xv * xv
                    + k.l5 * iv * xa
                    + k.l6 * xa * (il + 1.0),
            ])
        }
        Regime::Chaotic => {
            let n = cfg.n_mean();
            Modes([
                k.f1 * xl
                    + k.f4 * xl.conj() * xs * xa
                    + k.f5 * xl * (is + 1.0)
                    + (k.f6 + k.f7) * xl * n
                    + k.f8 * xl * ia,
                k.g1 * xs + k.g3 * xl * xl * xa.conj() + k.g5 * xs * (n + 1.0) + k.g6 * xs * (il + 1.0),
                k.h2 * xl * xs.conj() + k.h3 * xl.conj() * xa,
                k.l1 * xa + k.l3 * xl * xl * xs.conj() + k.l5 * n * xa + k.l6 * xa * (il + 1.0),
            ])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::eval_coeffs;
    use crate::config::{amplitudes_from_intensities, make_config, PhononState};
    use proptest::prelude::*;

    fn one() -> C64 {
        C64::new(1.0, 0.0)
    }

    fn build(dw1: f64, dw2: f64, gt: f64, int: [f64; 4], ph: PhononState) -> RamanConfig {
        let amps = amplitudes_from_intensities(Modes(int)).unwrap();
        make_config(one(), one(), dw1, dw2, 1.0, gt, amps, ph).unwrap()
    }

    fn terms(cfg: &RamanConfig) -> NoiseTerms {
        noise_terms(cfg, &eval_coeffs(cfg))
    }

    #[test]
    fn zero_time_has_no_noise() {
        let cfg = build(3.0, 10.0, 0.0, [10.0, 9.0, 0.01, 1.0], PhononState::Coherent);
        let nt = terms(&cfg);
        assert_eq!(nt.b, Modes::splat(0.0));
        assert_eq!(nt.c, Modes::splat(ZERO));
        assert_eq!(nt.d, Pairs::splat(ZERO));
        assert_eq!(nt.dbar, Pairs::splat(ZERO));
        assert_eq!(nt.xi_t, cfg.xi0);
    }

    #[test]
    fn chaotic_zero_time_keeps_thermal_occupation() {
        let cfg = build(3.0, 10.0, 0.0, [10.0, 9.0, 0.0, 1.0], PhononState::Chaotic { n_mean: 0.7 });
        let nt = terms(&cfg);
        for m in ModeId::ALL {
            assert_eq!(nt.b[m], if m == V { 0.7 } else { 0.0 });
            assert_eq!(nt.c[m], ZERO);
        }
        assert_eq!(nt.xi_t[V], ZERO);
    }

    #[test]
    fn resonant_pump_noise_is_quadratic_in_time() {
        let cfg = build(0.0, 0.0, 0.1, [0.0, 0.0, 0.0, 1.0], PhononState::Coherent);
        assert!((terms(&cfg).b[L] - 0.01).abs() < 1e-15);
    }

    #[test]
    fn phonon_noise_for_figure_one_parameters() {
        let cfg = build(4.0, 10.0, 0.1, [10.0, 9.0, 0.01, 1.0], PhononState::Coherent);
        let want = 4.0 * (0.2f64).sin().powi(2) / 16.0 * 10.0 + 4.0 * (0.5f64).sin().powi(2) / 100.0;
        assert!((terms(&cfg).b[V] - want).abs() < 1e-15);
    }

    #[test]
    fn chaotic_stokes_noise_example() {
        let cfg = build(0.0, 0.0, 0.1, [10.0, 0.0, 0.0, 0.0], PhononState::Chaotic { n_mean: 1.0 });
        assert!((terms(&cfg).b[S] - 0.2).abs() < 1e-15);
    }

    #[test]
    fn unlisted_entries_are_exact_zeros() {
        let cfg = build(3.0, 7.0, 0.2, [2.0, 1.5, 0.3, 0.8], PhononState::Coherent);
        let nt = terms(&cfg);
        assert_eq!(nt.b[A], 0.0);
        assert_eq!(nt.c[S], ZERO);
        assert_eq!(nt.c[A], ZERO);
        for p in [Pair::LV, Pair::LA, Pair::SV, Pair::SA, Pair::VA] {
            assert_eq!(nt.dbar[p], ZERO);
        }
        let cfg = build(3.0, 7.0, 0.2, [2.0, 1.5, 0.0, 0.8], PhononState::Chaotic { n_mean: 0.4 });
        let nt = terms(&cfg);
        assert_eq!(nt.c[S], ZERO);
        assert_eq!(nt.c[A], ZERO);
        assert_eq!(nt.d[Pair::VA], ZERO);
        assert_eq!(nt.dbar[Pair::SV], ZERO);
        assert_eq!(nt.dbar[Pair::SA], ZERO);
    }

    #[test]
    fn regime_mismatch_is_rejected() {
        let cfg = build(3.0, 7.0, 0.2, [1.0; 4], PhononState::Coherent);
        let k = eval_coeffs(&cfg);
        assert_eq!(
            noise_terms_chaotic(&cfg, &k),
            Err(RegimeError::Mismatch { expected: Regime::Chaotic, found: Regime::Coherent })
        );
    }

    #[test]
    fn spontaneous_mean_fields() {
        let cfg = build(2.0, 5.0, 0.3, [4.0, 0.0, 0.0, 0.0], PhononState::Coherent);
        let k = eval_coeffs(&cfg);
        let xi = mean_fields(&cfg, &k);
        assert_eq!(xi[S], ZERO);
        assert_eq!(xi[V], ZERO);
        assert_eq!(xi[A], ZERO);
        let want = (k.f1 + k.f5) * cfg.xi0[L];
        assert!((xi[L] - want).norm() < 1e-15);
    }

    #[test]
    fn chaotic_phonon_mean_field_from_scattering() {
        // no phonon mean field is injected, but Stokes and anti-Stokes seeds drive one
        let cfg = build(2.0, 5.0, 0.3, [4.0, 0.0, 0.0, 0.0], PhononState::Chaotic { n_mean: 1.0 });
        assert_eq!(mean_fields(&cfg, &eval_coeffs(&cfg))[V], ZERO);
        let cfg = build(2.0, 5.0, 0.3, [4.0, 1.0, 0.0, 1.0], PhononState::Chaotic { n_mean: 1.0 });
        let k = eval_coeffs(&cfg);
        let want = k.h2 * 2.0 + k.h3 * 2.0;
        assert!((mean_fields(&cfg, &k)[V] - want).norm() < 1e-15);
    }

    fn assert_entrywise(a: &NoiseTerms, b: &NoiseTerms, tol: f64) {
        for m in ModeId::ALL {
            assert!((a.b[m] - b.b[m]).abs() <= tol, "B_{m}");
            assert!((a.c[m] - b.c[m]).norm() <= tol, "C_{m}");
            assert!((a.xi_t[m] - b.xi_t[m]).norm() <= tol, "xi_{m}");
        }
        for p in Pair::ALL {
            assert!((a.d[p] - b.d[p]).norm() <= tol, "D_{p}");
            assert!((a.dbar[p] - b.dbar[p]).norm() <= tol, "Dbar_{p}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn vacuum_phonons_agree_between_regimes(
            dw1 in -30.0..30.0f64, dw2 in -30.0..30.0f64, gt in 0.0..0.5f64,
            il in 0.0..10.0f64, is in 0.0..10.0f64, ia in 0.0..10.0f64,
            ps in 0.0..6.3f64, pa in 0.0..6.3f64,
        ) {
            let amps = Modes([
                C64::new(il.sqrt(), 0.0),
                C64::from_polar(is.sqrt(), ps),
                C64::new(0.0, 0.0),
                C64::from_polar(ia.sqrt(), pa),
            ]);
            let coh = make_config(one(), C64::new(0.6, 0.3), dw1, dw2, 1.0, gt, amps, PhononState::Coherent).unwrap();
            let mut cha = coh.clone();
            cha.phonon = PhononState::Chaotic { n_mean: 0.0 };
            assert_entrywise(&terms(&coh), &terms(&cha), 1e-12);
        }

        #[test]
        fn occupation_noise_is_non_negative(
            dw1 in -30.0..30.0f64, dw2 in -30.0..30.0f64, gt in 0.0..0.5f64,
            il in 0.0..10.0f64, is in 0.0..10.0f64, ia in 0.0..10.0f64, n in 0.0..1.0f64,
        ) {
            for ph in [PhononState::Coherent, PhononState::Chaotic { n_mean: n }] {
                let cfg = build(dw1, dw2, gt, [il, is, 0.5, ia], ph);
                let nt = terms(&cfg);
                for m in [L, S, A] {
                    prop_assert!(nt.b[m] >= 0.0);
                }
            }
        }
    }
}
