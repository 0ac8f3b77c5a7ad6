//! Multi-qubit pure states, single-qubit factors and projective points.
//!
//! Amplitudes are stored in big-endian order: index `x = x_m 2^{m-1} + ... + x_1`,
//! so qubit `m` is the most significant bit and the bitstring `x_m ... x_1`
//! reads left to right. Every module in the crate shares this convention.
//!
//! Lists of per-qubit objects (factors, local operators, moment coordinates)
//! follow the bitstring order as well: element 0 belongs to qubit `m`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A complex amplitude. Finite after any constructor in this crate.
pub type Amplitude = Complex64;

/// A 2x2 complex matrix acting on one qubit, row-major.
pub type Matrix2 = [[Complex64; 2]; 2];

fn check_finite(amps: &[Amplitude]) -> Result<()> {
    match amps.iter().position(|a| !(a.re.is_finite() && a.im.is_finite())) {
        Some(index) => Err(Error::NonFiniteAmplitude { index }),
        None => Ok(()),
    }
}

fn norm_sqr(amps: &[Amplitude]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum()
}

/// Bits `(x_m, ..., x_1)` of index `x` for an `m`-qubit register.
pub fn index_to_bits(x: usize, m: usize) -> Vec<u8> {
    (0..m).rev().map(|k| ((x >> k) & 1) as u8).collect()
}

/// Inverse of [`index_to_bits`].
pub fn bits_to_index(bits: &[u8]) -> usize {
    bits.iter().fold(0, |acc, &b| (acc << 1) | (b as usize & 1))
}

/// Bit of qubit `j` (1-based, qubit 1 is least significant) in index `x`.
#[inline]
pub fn qubit_bit(x: usize, j: usize) -> u8 {
    ((x >> (j - 1)) & 1) as u8
}

/// Zero-padded bitstring `x_m ... x_1`.
pub fn bitstring(x: usize, m: usize) -> String {
    format!("{:0width$b}", x, width = m)
}

/// A pure state of `m` qubits given by `2^m` amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiQubitState {
    num_qubits: usize,
    amplitudes: Vec<Amplitude>,
}

impl MultiQubitState {
    /// Validates and builds a state. With `normalize` the amplitudes are
    /// rescaled to unit norm.
    pub fn new(num_qubits: usize, amplitudes: Vec<Amplitude>, normalize: bool) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::TooFewQubits { min: 1, found: 0 });
        }
        let expected = 1usize
            .checked_shl(num_qubits as u32)
            .filter(|_| num_qubits < usize::BITS as usize)
            .ok_or(Error::InvalidInput(format!("{num_qubits} qubits is too many")))?;
        if amplitudes.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                found: amplitudes.len(),
            });
        }
        check_finite(&amplitudes)?;
        let n2 = norm_sqr(&amplitudes);
        if n2 == 0.0 {
            return Err(Error::ZeroState);
        }
        if !n2.is_finite() {
            return Err(Error::InvalidInput("amplitude norm overflows".into()));
        }
        let mut state = MultiQubitState {
            num_qubits,
            amplitudes,
        };
        if normalize {
            state.normalize_in_place();
        }
        Ok(state)
    }

    /// Builds a state from real amplitudes.
    pub fn from_real(num_qubits: usize, amplitudes: &[f64], normalize: bool) -> Result<Self> {
        let amps = amplitudes.iter().map(|&r| Complex64::new(r, 0.0)).collect();
        Self::new(num_qubits, amps, normalize)
    }

    /// Computational basis state `|x_m ... x_1>` with the given index.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, len: dim });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Self::new(num_qubits, amps, false)
    }

    fn normalize_in_place(&mut self) {
        let n = norm_sqr(&self.amplitudes).sqrt();
        for a in &mut self.amplitudes {
            *a /= n;
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Amplitude {
        self.amplitudes[index]
    }

    pub fn into_amplitudes(self) -> Vec<Amplitude> {
        self.amplitudes
    }

    /// `sum |a_x|^2`.
    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amplitudes)
    }

    /// Unit-norm copy.
    pub fn normalized(&self) -> Self {
        let mut s = self.clone();
        s.normalize_in_place();
        s
    }

    /// Amplitude-wise complex conjugate.
    pub fn conjugate(&self) -> Self {
        MultiQubitState {
            num_qubits: self.num_qubits,
            amplitudes: self.amplitudes.iter().map(|a| a.conj()).collect(),
        }
    }

    /// `<self|other> = sum conj(self_x) other_x`.
    pub fn inner_product(&self, other: &Self) -> Result<Amplitude> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::DimensionMismatch {
                left: self.num_qubits,
                right: other.num_qubits,
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Applies `ops[0] ⊗ ops[1] ⊗ ... ⊗ ops[m-1]`, with `ops[0]` acting on
    /// qubit `m`. The result is not renormalized.
    pub fn apply_local(&self, ops: &[Matrix2]) -> Result<Self> {
        if ops.len() != self.num_qubits {
            return Err(Error::DimensionMismatch {
                left: ops.len(),
                right: self.num_qubits,
            });
        }
        let mut amps = self.amplitudes.clone();
        for (pos, op) in ops.iter().enumerate() {
            let j = self.num_qubits - pos;
            let mask = 1usize << (j - 1);
            for x in 0..amps.len() {
                if x & mask != 0 {
                    continue;
                }
                let (a0, a1) = (amps[x], amps[x | mask]);
                amps[x] = op[0][0] * a0 + op[0][1] * a1;
                amps[x | mask] = op[1][0] * a0 + op[1][1] * a1;
            }
        }
        Self::new(self.num_qubits, amps, false)
    }
}

/// Convenience wrapper for [`MultiQubitState::new`].
pub fn make_state(num_qubits: usize, amplitudes: Vec<Amplitude>, normalize: bool) -> Result<MultiQubitState> {
    MultiQubitState::new(num_qubits, amplitudes, normalize)
}

pub fn conjugate_state(s: &MultiQubitState) -> MultiQubitState {
    s.conjugate()
}

pub fn inner_product(a: &MultiQubitState, b: &MultiQubitState) -> Result<Amplitude> {
    a.inner_product(b)
}

/// Homogeneous coordinates `[a0 : a1]` of one qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitFactor {
    a0: Amplitude,
    a1: Amplitude,
}

impl QubitFactor {
    pub fn new(a0: Amplitude, a1: Amplitude) -> Result<Self> {
        check_finite(&[a0, a1])?;
        if a0.norm_sqr() + a1.norm_sqr() == 0.0 {
            return Err(Error::ZeroState);
        }
        Ok(QubitFactor { a0, a1 })
    }

    pub fn from_real(a0: f64, a1: f64) -> Result<Self> {
        Self::new(Complex64::new(a0, 0.0), Complex64::new(a1, 0.0))
    }

    pub fn a0(&self) -> Amplitude {
        self.a0
    }

    pub fn a1(&self) -> Amplitude {
        self.a1
    }

    pub fn component(&self, bit: u8) -> Amplitude {
        if bit == 0 {
            self.a0
        } else {
            self.a1
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.a0.norm_sqr() + self.a1.norm_sqr()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm_sqr().sqrt();
        QubitFactor {
            a0: self.a0 / n,
            a1: self.a1 / n,
        }
    }

    pub fn scaled(&self, lambda: Amplitude) -> Result<Self> {
        Self::new(self.a0 * lambda, self.a1 * lambda)
    }

    /// The factor viewed as a point of P^1.
    pub fn to_projective(&self) -> ProjectivePoint {
        ProjectivePoint {
            coords: vec![self.a0, self.a1],
        }
    }
}

/// Homogeneous coordinates `[a_0 : ... : a_{n-1}]`, `n >= 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectivePoint {
    coords: Vec<Amplitude>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<Amplitude>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "a projective point needs at least 2 coordinates, found {}",
                coords.len()
            )));
        }
        check_finite(&coords)?;
        if norm_sqr(&coords) == 0.0 {
            return Err(Error::ZeroState);
        }
        Ok(ProjectivePoint { coords })
    }

    /// The `k`-th standard basis point of P^{n-1} (0-based).
    pub fn basis(n: usize, k: usize) -> Result<Self> {
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, len: n });
        }
        let mut coords = vec![Complex64::new(0.0, 0.0); n];
        coords[k] = Complex64::new(1.0, 0.0);
        Self::new(coords)
    }

    pub fn coords(&self) -> &[Amplitude] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn scaled(&self, lambda: Amplitude) -> Result<Self> {
        Self::new(self.coords.iter().map(|c| c * lambda).collect())
    }
}

/// Maps factors to their product state, `factors[0] ⊗ ... ⊗ factors[m-1]`.
/// The amplitude at `x_m ... x_1` is the product of the chosen components.
pub fn segre_embed(factors: &[QubitFactor]) -> Result<MultiQubitState> {
    if factors.is_empty() {
        return Err(Error::EmptyFactorList);
    }
    let mut amps = vec![Complex64::new(1.0, 0.0)];
    for f in factors {
        amps = amps
            .iter()
            .flat_map(|&a| [a * f.a0, a * f.a1])
            .collect();
    }
    MultiQubitState::new(factors.len(), amps, false)
}

/// Fixture states addressable by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NamedState {
    Bell,
    Ghz(usize),
    W3,
    /// Computational basis state given by its bitstring `x_m ... x_1`.
    Basis(String),
}

impl FromStr for NamedState {
    type Err = Error;

    fn from_str(name: &str) -> Result<Self> {
        let lower = name.trim().to_ascii_lowercase();
        match lower.as_str() {
            "bell" => return Ok(NamedState::Bell),
            "w3" | "w" => return Ok(NamedState::W3),
            _ => {}
        }
        if let Some(rest) = lower.strip_prefix("ghz") {
            let rest = rest.trim_start_matches(['(', '_', '-']).trim_end_matches(')');
            return match rest.parse::<usize>() {
                Ok(m) if m >= 2 => Ok(NamedState::Ghz(m)),
                _ => Err(Error::UnknownName(name.to_string())),
            };
        }
        if !lower.is_empty() && lower.len() < 32 && lower.bytes().all(|b| b == b'0' || b == b'1') {
            return Ok(NamedState::Basis(lower));
        }
        Err(Error::UnknownName(name.to_string()))
    }
}

impl fmt::Display for NamedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedState::Bell => write!(f, "bell"),
            NamedState::Ghz(m) => write!(f, "ghz{m}"),
            NamedState::W3 => write!(f, "w3"),
            NamedState::Basis(bits) => write!(f, "{bits}"),
        }
    }
}

/// Builds the fixture state. GHZ needs `m >= 2`.
pub fn named_state(name: &NamedState) -> Result<MultiQubitState> {
    let r2 = std::f64::consts::FRAC_1_SQRT_2;
    match name {
        NamedState::Bell => named_state(&NamedState::Ghz(2)),
        NamedState::Ghz(m) => {
            let m = *m;
            if m < 2 {
                return Err(Error::TooFewQubits { min: 2, found: m });
            }
            let dim = 1usize << m;
            let mut amps = vec![0.0; dim];
            amps[0] = r2;
            amps[dim - 1] = r2;
            MultiQubitState::from_real(m, &amps, false)
        }
        NamedState::W3 => {
            let w = 1.0 / 3f64.sqrt();
            let mut amps = [0.0; 8];
            for x in [1, 2, 4] {
                amps[x] = w;
            }
            MultiQubitState::from_real(3, &amps, false)
        }
        NamedState::Basis(bits) => {
            let m = bits.len();
            let x = usize::from_str_radix(bits, 2).map_err(|_| Error::UnknownName(bits.clone()))?;
            MultiQubitState::basis(m, x)
        }
    }
}

/// Parses and builds a fixture in one step.
pub fn named_state_str(name: &str) -> Result<MultiQubitState> {
    named_state(&name.parse()?)
}
