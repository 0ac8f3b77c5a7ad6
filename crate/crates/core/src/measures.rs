//! Spin-flip based tangles, the three-qubit hyperdeterminant and the
//! degree-2 four-qubit invariants `H` and `I1`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::parallel::{self, Execution};
use crate::state::{Amplitude, MultiQubitState};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn require_qubits(s: &MultiQubitState, m: usize) -> Result<()> {
    if s.num_qubits() != m {
        return Err(Error::WrongQubitCount {
            expected: m,
            found: s.num_qubits(),
        });
    }
    Ok(())
}

/// `|~Ψ> = σ_y^{⊗m} |Ψ*>`. Amplitude `x` becomes
/// `prod_j (σ_y)_{x_j, 1-x_j} · conj(a_{x̄})`, where `x̄` flips every bit.
pub fn spin_flip(s: &MultiQubitState) -> MultiQubitState {
    let m = s.num_qubits();
    let full = s.dim() - 1;
    // (σ_y)_{0,1} = -i and (σ_y)_{1,0} = i, so the prefactor is i^(ones - zeros)
    const POWERS: [Complex64; 4] = [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, -1.0),
    ];
    let amps = (0..s.dim())
        .map(|x| {
            let ones = x.count_ones() as i64;
            let exp = (2 * ones - m as i64).rem_euclid(4) as usize;
            POWERS[exp] * s.amplitude(full ^ x).conj()
        })
        .collect();
    MultiQubitState::new(m, amps, false).expect("spin flip preserves validity")
}

fn spin_flip_overlap_sqr(s: &MultiQubitState) -> f64 {
    let u = s.normalized();
    u.inner_product(&spin_flip(&u))
        .expect("same width")
        .norm_sqr()
}

/// Two-qubit concurrence `|<Ψ|~Ψ>|^2` (normalised internally).
pub fn concurrence(s: &MultiQubitState) -> Result<f64> {
    require_qubits(s, 2)?;
    Ok(spin_flip_overlap_sqr(s))
}

/// `τ_m = |<Ψ|~Ψ>|^2` for an even number of qubits.
pub fn m_tangle(s: &MultiQubitState) -> Result<f64> {
    if !s.num_qubits().is_multiple_of(2) {
        return Err(Error::OddQubitCount(s.num_qubits()));
    }
    Ok(spin_flip_overlap_sqr(s))
}

/// Cayley hyperdeterminant `D3 = d1 - 2 d2 + 4 d4` of the 2x2x2 amplitude
/// tensor, on the amplitudes as given.
///
/// `d2` sums the six products of two complementary pairs.
pub fn hyperdeterminant_d3(s: &MultiQubitState) -> Result<Complex64> {
    require_qubits(s, 3)?;
    let a = s.amplitudes();
    let sq = |z: Complex64| z * z;
    let d1 = sq(a[0b000]) * sq(a[0b111])
        + sq(a[0b001]) * sq(a[0b110])
        + sq(a[0b010]) * sq(a[0b101])
        + sq(a[0b100]) * sq(a[0b011]);
    let d2 = a[0b000] * a[0b001] * a[0b110] * a[0b111]
        + a[0b000] * a[0b010] * a[0b101] * a[0b111]
        + a[0b000] * a[0b100] * a[0b011] * a[0b111]
        + a[0b001] * a[0b010] * a[0b101] * a[0b110]
        + a[0b001] * a[0b100] * a[0b011] * a[0b110]
        + a[0b010] * a[0b100] * a[0b011] * a[0b101];
    let d4 = a[0b000] * a[0b110] * a[0b101] * a[0b011] + a[0b111] * a[0b100] * a[0b010] * a[0b001];
    Ok(d1 - 2.0 * d2 + 4.0 * d4)
}

/// Three-tangle `τ = 4 |D3|` on the normalised state.
pub fn three_tangle(s: &MultiQubitState) -> Result<f64> {
    require_qubits(s, 3)?;
    Ok(4.0 * hyperdeterminant_d3(&s.normalized())?.norm())
}

/// `H = sum_{x < x̄} (-1)^{|x|} a_x a_{x̄}` for four qubits, on the amplitudes
/// as given (no normalisation).
pub fn invariant_h(s: &MultiQubitState) -> Result<Complex64> {
    require_qubits(s, 4)?;
    let a = s.amplitudes();
    Ok((0..8)
        .map(|x: usize| {
            let term = a[x] * a[15 - x];
            if x.count_ones().is_multiple_of(2) {
                term
            } else {
                -term
            }
        })
        .sum())
}

/// `J = [[0, 1], [-1, 0]]`.
pub const J: [[i8; 2]; 2] = [[0, 1], [-1, 0]];

/// The pairing matrix `g = J ⊗ J`, indices `2a + b`.
pub fn symplectic_pairing() -> [[i8; 4]; 4] {
    let mut g = [[0i8; 4]; 4];
    for (a, c, b, d) in (0..16).map(|k| (k >> 3 & 1, k >> 2 & 1, k >> 1 & 1, k & 1)) {
        g[2 * a + b][2 * c + d] = J[a][c] * J[b][d];
    }
    g
}

/// `g(u, v) = g_{αβ} u^α v^β = u0 v3 - u1 v2 - u2 v1 + u3 v0`.
pub fn bilinear_g(u: &[Amplitude], v: &[Amplitude]) -> Result<Amplitude> {
    for w in [u, v] {
        if w.len() != 4 {
            return Err(Error::LengthMismatch {
                expected: 4,
                found: w.len(),
            });
        }
    }
    let g = symplectic_pairing();
    let mut acc = ZERO;
    for (a, row) in g.iter().enumerate() {
        for (b, &entry) in row.iter().enumerate() {
            if entry != 0 {
                acc += f64::from(entry) * u[a] * v[b];
            }
        }
    }
    Ok(acc)
}

/// The four-qubit amplitudes cut into consecutive blocks of four:
/// `A = a0..a3`, `B = a4..a7`, `C = a8..a11`, `D = a12..a15`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourQubitVectors {
    pub a: [Amplitude; 4],
    pub b: [Amplitude; 4],
    pub c: [Amplitude; 4],
    pub d: [Amplitude; 4],
}

impl FourQubitVectors {
    pub fn from_state(s: &MultiQubitState) -> Result<Self> {
        require_qubits(s, 4)?;
        let block = |k: usize| -> [Amplitude; 4] {
            let mut out = [ZERO; 4];
            out.copy_from_slice(&s.amplitudes()[4 * k..4 * k + 4]);
            out
        };
        Ok(FourQubitVectors {
            a: block(0),
            b: block(1),
            c: block(2),
            d: block(3),
        })
    }

    pub fn concat(&self) -> Vec<Amplitude> {
        [self.a, self.b, self.c, self.d].concat()
    }
}

/// `I1 = (g(A, D) - g(B, C)) / 2`.
pub fn invariant_i1(s: &MultiQubitState) -> Result<Complex64> {
    let v = FourQubitVectors::from_state(s)?;
    Ok(0.5 * (bilinear_g(&v.a, &v.d)? - bilinear_g(&v.b, &v.c)?))
}

#[inline]
fn eps(a: usize, b: usize) -> f64 {
    match (a, b) {
        (0, 1) => 1.0,
        (1, 0) => -1.0,
        _ => 0.0,
    }
}

#[inline]
fn bit(x: usize, qubit: usize) -> usize {
    (x >> (qubit - 1)) & 1
}

/// Brute-force ε contraction over all `2^16` index assignments
/// `κ, λ, μ, ν ∈ {0,1}^4`, on the amplitudes as given.
///
/// Partial sums are taken per `κ` and then added in fixed order, so the
/// result does not depend on the execution strategy.
pub fn epsilon_contraction(amps: &[Amplitude], exec: Execution) -> Complex64 {
    assert_eq!(amps.len(), 16, "four-qubit amplitudes expected");
    let partial = |kappa: usize| -> Complex64 {
        let mut acc = ZERO;
        for lambda in 0..16 {
            let e_kl = eps(bit(kappa, 4), bit(lambda, 4)) * eps(bit(kappa, 3), bit(lambda, 3)) * eps(bit(kappa, 2), bit(lambda, 2));
            if e_kl == 0.0 {
                continue;
            }
            for mu in 0..16 {
                let e_km = eps(bit(kappa, 1), bit(mu, 1));
                if e_km == 0.0 {
                    continue;
                }
                for nu in 0..16 {
                    let w = e_kl
                        * e_km
                        * eps(bit(mu, 4), bit(nu, 4))
                        * eps(bit(mu, 3), bit(nu, 3))
                        * eps(bit(mu, 2), bit(nu, 2))
                        * eps(bit(lambda, 1), bit(nu, 1));
                    if w != 0.0 {
                        acc += w * amps[kappa] * amps[lambda] * amps[mu] * amps[nu];
                    }
                }
            }
        }
        acc
    };
    parallel::map_range(16, exec, partial).into_iter().sum()
}

/// `τ4 = 2 |ε-contraction|` on the normalised state.
pub fn tau4_epsilon_oracle(s: &MultiQubitState) -> Result<f64> {
    tau4_epsilon_oracle_with(s, Execution::default())
}

pub fn tau4_epsilon_oracle_with(s: &MultiQubitState, exec: Execution) -> Result<f64> {
    require_qubits(s, 4)?;
    let u = s.normalized();
    Ok(2.0 * epsilon_contraction(u.amplitudes(), exec).norm())
}

/// All four-qubit routes to the four-tangle side by side, on the normalised
/// state.
///
/// Under the spin-flip definition `τ4 = |<Ψ|~Ψ>|^2 = 4|H|^2 = 16|I1|^2`;
/// the chain `τ4 = 4|I1|^2 = |H|^2` holds only up to the constant factor
/// reported in `tau4_over_abs_h_sq`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tau4Report {
    pub tau4_spinflip: f64,
    pub tau4_epsilon: f64,
    #[serde(serialize_with = "crate::io::serialize_complex")]
    pub h: Complex64,
    #[serde(serialize_with = "crate::io::serialize_complex")]
    pub i1: Complex64,
    pub four_abs_i1_sq: f64,
    pub abs_h_sq: f64,
    pub four_abs_h_sq: f64,
    /// `τ4(ε) / τ4(spin flip)`, expected 1.
    pub epsilon_over_spinflip: Option<f64>,
    /// `τ4 / |H|^2`, evaluates to 4.
    pub tau4_over_abs_h_sq: Option<f64>,
    /// `4|I1|^2 / |H|^2`, identically 1.
    pub four_abs_i1_sq_over_abs_h_sq: Option<f64>,
}

impl Tau4Report {
    /// Whether `τ4 = |H|^2` holds at relative tolerance `tol`.
    pub fn tau4_equals_abs_h_sq(&self, tol: f64) -> bool {
        (self.tau4_spinflip - self.abs_h_sq).abs() <= tol * self.tau4_spinflip.abs().max(self.abs_h_sq)
    }
}

const RATIO_FLOOR: f64 = 1e-300;

fn ratio(num: f64, den: f64) -> Option<f64> {
    (den.abs() > RATIO_FLOOR).then(|| num / den)
}

pub fn check_tau4_identities(s: &MultiQubitState) -> Result<Tau4Report> {
    require_qubits(s, 4)?;
    let u = s.normalized();
    let tau4_spinflip = m_tangle(&u)?;
    let tau4_epsilon = tau4_epsilon_oracle(&u)?;
    let h = invariant_h(&u)?;
    let i1 = invariant_i1(&u)?;
    let abs_h_sq = h.norm_sqr();
    let four_abs_i1_sq = 4.0 * i1.norm_sqr();
    Ok(Tau4Report {
        tau4_spinflip,
        tau4_epsilon,
        h,
        i1,
        four_abs_i1_sq,
        abs_h_sq,
        four_abs_h_sq: 4.0 * abs_h_sq,
        epsilon_over_spinflip: ratio(tau4_epsilon, tau4_spinflip),
        tau4_over_abs_h_sq: ratio(tau4_spinflip, abs_h_sq),
        four_abs_i1_sq_over_abs_h_sq: ratio(four_abs_i1_sq, abs_h_sq),
    })
}
