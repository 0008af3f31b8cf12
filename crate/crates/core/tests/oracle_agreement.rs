mod common;

use common::config_from;
use raman_core::config::{ModeId, PhononState};
use raman_core::oracle::{compare, default_preset, evolve, CompareTolerances, FockBasis, InitialState, LEAKAGE_BOUND};
use raman_core::distributions::joint_sv_at;
use raman_core::config::Pair;
use raman_core::{closed_forms, entanglement, eval_coeffs, noise_terms};

#[test]
fn spontaneous_stokes_pair_probability() {
    let cfg = config_from(1.0, 10.0, 10.0, 0.05, [0.25, 0.0, 0.0, 0.0], PhononState::Coherent);
    let nt = noise_terms(&cfg, &eval_coeffs(&cfg));
    let predicted = joint_sv_at(nt.b[ModeId::S], 1.0, 1.0).unwrap();
    let basis = FockBasis::new([8, 3, 3, 3]).unwrap();
    let res = evolve(&cfg, &basis, InitialState::Config).unwrap();
    let exact = res.joint(ModeId::S, ModeId::V)[1][1];
    assert!(((exact - predicted) / predicted).abs() < 0.05, "{exact} vs {predicted}");
}

#[test]
fn coherent_preset_converges() {
    let (cfg, cutoffs) = default_preset(PhononState::Coherent);
    let report = compare(&cfg, cutoffs, &CompareTolerances::default()).unwrap();
    for q in &report.quantities {
        assert!(q.pass, "{} exponent {:?} abs {:?}", q.name, q.exponent, q.abs);
    }
    assert!(report.pass);
    assert!(report.max_norm_error < 1e-10);
}

#[test]
fn chaotic_preset_stokes_noise_is_third_order() {
    let (cfg, cutoffs) = default_preset(PhononState::Chaotic { n_mean: 0.2 });
    let report = compare(&cfg, cutoffs, &CompareTolerances::default()).unwrap();
    let num_s = report.quantities.iter().find(|q| q.name == "num_S").unwrap();
    assert!(num_s.exponent.unwrap() >= 2.5);
    assert!(report.max_norm_error < 1e-10);
}

#[test]
fn zero_time_is_identity() {
    let (cfg, cutoffs) = default_preset(PhononState::Coherent);
    let basis = FockBasis::new(cutoffs).unwrap();
    let res = evolve(&cfg.at_gt(0.0).unwrap(), &basis, InitialState::Config).unwrap();
    for m in ModeId::ALL {
        assert!((res.means[m] - cfg.xi0[m]).norm() < LEAKAGE_BOUND, "{m:?} {} {}", res.means[m], cfg.xi0[m]);
    }
}

#[test]
fn chaotic_pump_phonon_witness_follows_exact_moments() {
    // Strong Stokes seed with thermal phonons: the generic witness and the
    // exact state both give a positive (K_LV)₊, while the short-time closed
    // form stays negative.
    let cfg = config_from(1.0, 3.0, 5.0, 0.02, [0.1, 0.5, 0.0, 0.05], PhononState::Chaotic { n_mean: 0.5 });
    let k = eval_coeffs(&cfg);
    let nt = noise_terms(&cfg, &k);
    let basis = FockBasis::new([6, 9, 30, 5]).unwrap();
    let r = evolve(&cfg, &basis, InitialState::Config).unwrap();
    let (l, v) = (ModeId::L.index(), ModeId::V.index());
    let m = r.means.0;
    let b = |i: usize| r.normal[i][i].re - m[i].norm_sqr();
    let c = |i: usize| (r.anomalous[i][i] - m[i] * m[i]).norm();
    let d = (r.anomalous[l][v] - m[l] * m[v]).norm();
    let db = (r.normal[l][v] - m[l].conj() * m[v]).norm();
    let exact = (b(l) + c(l)) * (b(v) + c(v)) - (d - db).powi(2);
    let pipeline = entanglement(&nt, Pair::LV).0;
    assert!(exact > 0.0);
    assert!(((pipeline - exact) / exact).abs() < 0.01, "{pipeline} vs {exact}");
    assert!(closed_forms(&cfg, &k)["K_LV_plus"] < 0.0);
}
