#![allow(dead_code)]

use num_complex::Complex64 as C64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use raman_core::config::{amplitudes_from_intensities, make_config, Modes, PhononState, RamanConfig};

/// Gauss–Legendre nodes and weights on `[0, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = 0.5 * (1.0 - z);
        w[i] = 1.0 / ((1.0 - z * z) * dp * dp);
    }
    (x, w)
}

/// Divided difference of `x ↦ exp(i x t)` by Hermite–Genocchi: the integral
/// of `(i t)^k exp(i t Σ u_j x_j)` over the standard simplex, taken as nested
/// Gauss–Legendre rules.
pub fn dd_quadrature(t: f64, nodes: &[f64], order: usize) -> C64 {
    let (gx, gw) = gauss_legendre(order);
    let k = nodes.len() - 1;
    let i = C64::new(0.0, 1.0);
    fn rec(level: usize, k: usize, left: f64, arg: f64, nodes: &[f64], gx: &[f64], gw: &[f64], t: f64) -> C64 {
        if level == k {
            return C64::from_polar(1.0, t * (arg + left * nodes[k]));
        }
        let mut acc = C64::new(0.0, 0.0);
        for (u, w) in gx.iter().zip(gw) {
            let v = u * left;
            acc += w * left * rec(level + 1, k, left - v, arg + v * nodes[level], nodes, gx, gw, t);
        }
        acc
    }
    (i * t).powi(k as i32) * rec(0, k, 1.0, 0.0, nodes, &gx, &gw, t)
}

/// Parameter box shared by the property tests and the acceptance scan.
#[derive(Clone, Copy, Debug)]
pub struct Domain {
    pub max_gt: f64,
    pub max_intensity: f64,
    pub max_chi_ratio: f64,
    pub max_detuning: f64,
    pub max_n_mean: f64,
}

pub const SCAN_DOMAIN: Domain =
    Domain { max_gt: 0.1, max_intensity: 10.0, max_chi_ratio: 1.0, max_detuning: 50.0, max_n_mean: 1.0 };

pub fn random_phase(rng: &mut ChaCha8Rng) -> C64 {
    C64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU))
}

/// Random configuration with every amplitude, coupling phase and detuning free.
pub fn random_config(rng: &mut ChaCha8Rng, d: Domain, chaotic: bool) -> RamanConfig {
    let g = random_phase(rng);
    let chi = rng.gen_range(0.0..=d.max_chi_ratio) * random_phase(rng);
    let dw1 = rng.gen_range(-d.max_detuning..=d.max_detuning);
    let dw2 = rng.gen_range(-d.max_detuning..=d.max_detuning);
    let gt = rng.gen_range(1e-4..=d.max_gt);
    let int = Modes::from_fn(|_| rng.gen_range(0.0..=d.max_intensity));
    let mut amps = amplitudes_from_intensities(int).unwrap();
    for a in amps.0.iter_mut() {
        *a *= random_phase(rng);
    }
    let phonon = if chaotic {
        PhononState::Chaotic { n_mean: rng.gen_range(0.0..=d.max_n_mean) }
    } else {
        PhononState::Coherent
    };
    make_config(g, chi, dw1, dw2, 1.0, gt, amps, phonon).unwrap()
}

/// Real-amplitude configuration from intensities `[I_L, I_S, I_V, I_A]`.
pub fn config_from(
    chi: f64,
    dw1: f64,
    dw2: f64,
    gt: f64,
    intensities: [f64; 4],
    phonon: PhononState,
) -> RamanConfig {
    let amps = amplitudes_from_intensities(Modes(intensities)).unwrap();
    let one = C64::new(1.0, 0.0);
    make_config(one, C64::new(chi, 0.0), dw1, dw2, 1.0, gt, amps, phonon).unwrap()
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

pub fn crel(a: C64, b: C64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}
