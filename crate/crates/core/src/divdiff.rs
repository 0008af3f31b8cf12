//! Divided differences of `x ↦ exp(i x t)`.
//!
//! Every coefficient of the perturbative solution is a divided difference of
//! the exponential over nodes built from `0`, the detunings and their sum or
//! difference. Evaluating them through the upper-bidiagonal matrix
//!
//! ```text
//!     J = diag(x_0, …, x_k) + superdiag(1),   exp(i t J)[0][k] = F[x_0, …, x_k]
//! ```
//!
//! removes every `0/0` form, so coincident or nearly coincident nodes need no
//! special casing. The exponential of `J` is taken by scaling and squaring a
//! truncated Taylor series after shifting by the node mean.

use num_complex::Complex64 as C64;

const MAX_NODES: usize = 4;
const SCALED_NORM: f64 = 0.25;
const TAYLOR_TERMS: usize = 16;

type Mat = [[C64; MAX_NODES]; MAX_NODES];

fn zero() -> Mat {
    [[C64::new(0.0, 0.0); MAX_NODES]; MAX_NODES]
}

fn mul_upper(a: &Mat, b: &Mat, n: usize) -> Mat {
    let mut c = zero();
    for i in 0..n {
        for j in i..n {
            let mut acc = C64::new(0.0, 0.0);
            for k in i..=j {
                acc += a[i][k] * b[k][j];
            }
            c[i][j] = acc;
        }
    }
    c
}

/// `F[x_0, …, x_k]` for `F(x) = exp(i x t)`, with at most four nodes.
///
/// # Panics
/// If `nodes` is empty or holds more than four entries.
pub fn exp_dd(t: f64, nodes: &[f64]) -> C64 {
    let n = nodes.len();
    assert!((1..=MAX_NODES).contains(&n), "between 1 and {MAX_NODES} nodes supported");
    let mean = nodes.iter().sum::<f64>() / n as f64;
    let spread = nodes.iter().fold(0.0f64, |m, x| m.max((x - mean).abs()));
    let norm = t.abs() * (spread + 1.0);
    let squarings = if norm > SCALED_NORM {
        (norm / SCALED_NORM).log2().ceil() as i32
    } else {
        0
    };
    let tau = t / 2f64.powi(squarings);

    let mut a = zero();
    for i in 0..n {
        a[i][i] = C64::new(0.0, tau * (nodes[i] - mean));
        if i + 1 < n {
            a[i][i + 1] = C64::new(0.0, tau);
        }
    }

    // Horner form of the Taylor polynomial: I + A(I + A/2(I + A/3(…))).
    let mut e = zero();
    for i in 0..n {
        e[i][i] = C64::new(1.0, 0.0);
    }
    for k in (1..=TAYLOR_TERMS).rev() {
        let mut next = mul_upper(&a, &e, n);
        for row in next.iter_mut().take(n) {
            for v in row.iter_mut().take(n) {
                *v /= k as f64;
            }
        }
        for i in 0..n {
            next[i][i] += C64::new(1.0, 0.0);
        }
        e = next;
    }
    for _ in 0..squarings {
        e = mul_upper(&e, &e, n);
    }
    C64::from_polar(1.0, mean * t) * e[0][n - 1]
}

/// Divided difference of `x ↦ exp(−i x t)`.
pub fn exp_neg_dd(t: f64, nodes: &[f64]) -> C64 {
    let mut flipped = [0.0; MAX_NODES];
    for (f, x) in flipped.iter_mut().zip(nodes) {
        *f = -x;
    }
    let v = exp_dd(t, &flipped[..nodes.len()]);
    if nodes.len() % 2 == 0 {
        -v
    } else {
        v
    }
}
