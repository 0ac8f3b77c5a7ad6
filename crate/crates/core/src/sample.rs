//! Random states and local operators for property checks and benchmarks.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::state::{segre_embed, Matrix2, MultiQubitState, QubitFactor};

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Uniformly random point of P^1 (unit norm).
pub fn random_factor<R: Rng + ?Sized>(rng: &mut R) -> QubitFactor {
    loop {
        if let Ok(f) = QubitFactor::new(complex_gaussian(rng), complex_gaussian(rng)) {
            return f.normalized();
        }
    }
}

pub fn random_factors<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Vec<QubitFactor> {
    (0..m).map(|_| random_factor(rng)).collect()
}

/// Normalised product of `m` random factors.
pub fn random_product_state<R: Rng + ?Sized>(m: usize, rng: &mut R) -> MultiQubitState {
    segre_embed(&random_factors(m, rng))
        .expect("m >= 1")
        .normalized()
}

/// Haar-random pure state of `m` qubits.
pub fn haar_state<R: Rng + ?Sized>(m: usize, rng: &mut R) -> MultiQubitState {
    loop {
        let amps = (0..1usize << m).map(|_| complex_gaussian(rng)).collect();
        if let Ok(s) = MultiQubitState::new(m, amps, true) {
            return s;
        }
    }
}

/// Haar-random 2x2 unitary: Gram–Schmidt on a complex Gaussian matrix with
/// the phases of the triangular factor removed.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R) -> Matrix2 {
    let col0 = [complex_gaussian(rng), complex_gaussian(rng)];
    let col1 = [complex_gaussian(rng), complex_gaussian(rng)];
    let n0 = (col0[0].norm_sqr() + col0[1].norm_sqr()).sqrt();
    let q0 = [col0[0] / n0, col0[1] / n0];
    let proj = q0[0].conj() * col1[0] + q0[1].conj() * col1[1];
    let w = [col1[0] - proj * q0[0], col1[1] - proj * q0[1]];
    let n1 = (w[0].norm_sqr() + w[1].norm_sqr()).sqrt();
    let q1 = [w[0] / n1, w[1] / n1];
    [[q0[0], q1[0]], [q0[1], q1[1]]]
}

/// Random element of SL(2, C): `a, b, c` Gaussian with `|a| >= 0.25`,
/// `d = (1 + bc) / a`.
pub fn random_sl2<R: Rng + ?Sized>(rng: &mut R) -> Matrix2 {
    let a = loop {
        let a = complex_gaussian(rng);
        if a.norm() >= 0.25 {
            break a;
        }
    };
    let b = complex_gaussian(rng);
    let c = complex_gaussian(rng);
    let d = (Complex64::new(1.0, 0.0) + b * c) / a;
    [[a, b], [c, d]]
}

pub fn random_phase<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU))
}
