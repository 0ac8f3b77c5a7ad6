//! Separability verdict pipeline: Segre residual, factor extraction,
//! moment-map placement and the applicable entanglement measures.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::measures;
use crate::moment::{moment_product, MomentImage};
use crate::parallel::{self, Execution};
use crate::state::{segre_embed, MultiQubitState, QubitFactor};
use crate::toric::max_segre_residual_with;

pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Recovers the tensor factors of a (near-)product state.
///
/// Pivot method: with `x*` the index of the largest amplitude, factor `j`
/// is read off the pair `(a_{x*}, a_{x* with bit j flipped})`. The global
/// phase is folded into the first factor so that `segre_embed(factors)`
/// reproduces the normalised state. Returns `None` when the reconstruction
/// error exceeds `10 * tol`.
pub fn extract_factors(s: &MultiQubitState, tol: f64) -> Option<Vec<QubitFactor>> {
    let u = s.normalized();
    let m = u.num_qubits();
    let amps = u.amplitudes();
    let pivot = amps
        .iter()
        .enumerate()
        .fold((0, -1.0), |best, (x, a)| if a.norm() > best.1 { (x, a.norm()) } else { best })
        .0;
    let mut factors: Vec<QubitFactor> = (0..m)
        .map(|pos| {
            let bit = 1usize << (m - 1 - pos);
            let partner = pivot ^ bit;
            let (a0, a1) = if pivot & bit == 0 {
                (amps[pivot], amps[partner])
            } else {
                (amps[partner], amps[pivot])
            };
            QubitFactor::new(a0, a1).ok().map(|f| f.normalized())
        })
        .collect::<Option<_>>()?;

    let e = segre_embed(&factors).ok()?;
    let overlap = e.inner_product(&u).ok()?;
    if overlap.norm() == 0.0 {
        return None;
    }
    let phase = overlap / overlap.norm();
    factors[0] = factors[0].scaled(phase).ok()?;
    let rebuilt = segre_embed(&factors).ok()?;
    let scale = rebuilt.inner_product(&u).ok()? / rebuilt.norm_sqr();
    let err = rebuilt
        .amplitudes()
        .iter()
        .zip(amps)
        .map(|(r, a)| (scale * r - a).norm_sqr())
        .sum::<f64>()
        .sqrt();
    (err <= 10.0 * tol).then_some(factors)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeasureValue {
    Real(f64),
    Complex(Complex64),
}

impl MeasureValue {
    pub fn as_real(&self) -> Option<f64> {
        match self {
            MeasureValue::Real(v) => Some(*v),
            MeasureValue::Complex(_) => None,
        }
    }

    pub fn as_complex(&self) -> Complex64 {
        match self {
            MeasureValue::Real(v) => Complex64::new(*v, 0.0),
            MeasureValue::Complex(z) => *z,
        }
    }
}

/// Names of the measures that are entanglement monotones.
pub const MONOTONES: [&str; 3] = ["concurrence", "three_tangle", "m_tangle"];

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub num_qubits: usize,
    pub separable: bool,
    pub max_residual: f64,
    pub factors: Option<Vec<QubitFactor>>,
    pub moment_image: Option<MomentImage>,
    pub measures: BTreeMap<String, MeasureValue>,
    pub tolerance: f64,
}

impl AnalysisReport {
    /// Residual within a factor of 10 of the tolerance on either side.
    pub fn borderline(&self) -> bool {
        self.max_residual > self.tolerance / 10.0 && self.max_residual <= self.tolerance * 10.0
    }
}

/// Measures applicable at this width: concurrence (m = 2), three-tangle
/// (m = 3), the four-qubit invariants (m = 4) and the m-tangle for even
/// m >= 4.
pub fn applicable_measures(s: &MultiQubitState) -> Result<BTreeMap<String, MeasureValue>> {
    let mut out = BTreeMap::new();
    let m = s.num_qubits();
    let u = s.normalized();
    match m {
        2 => {
            out.insert("concurrence".into(), MeasureValue::Real(measures::concurrence(&u)?));
        }
        3 => {
            out.insert("three_tangle".into(), MeasureValue::Real(measures::three_tangle(&u)?));
        }
        4 => {
            let r = measures::check_tau4_identities(&u)?;
            out.insert("m_tangle".into(), MeasureValue::Real(r.tau4_spinflip));
            out.insert("tau4_epsilon".into(), MeasureValue::Real(r.tau4_epsilon));
            out.insert("H".into(), MeasureValue::Complex(r.h));
            out.insert("I1".into(), MeasureValue::Complex(r.i1));
            out.insert("abs_H_sq".into(), MeasureValue::Real(r.abs_h_sq));
            out.insert("four_abs_H_sq".into(), MeasureValue::Real(r.four_abs_h_sq));
        }
        _ if m.is_multiple_of(2) => {
            out.insert("m_tangle".into(), MeasureValue::Real(measures::m_tangle(&u)?));
        }
        _ => {}
    }
    Ok(out)
}

pub fn analyze(s: &MultiQubitState, tol: f64) -> Result<AnalysisReport> {
    analyze_with(s, tol, Execution::default())
}

pub fn analyze_with(s: &MultiQubitState, tol: f64, exec: Execution) -> Result<AnalysisReport> {
    if s.num_qubits() < 2 {
        return Err(Error::TooFewQubits {
            min: 2,
            found: s.num_qubits(),
        });
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    let max_residual = max_segre_residual_with(s, exec);
    let factors = if max_residual <= tol {
        extract_factors(s, tol)
    } else {
        None
    };
    let moment_image = match &factors {
        Some(f) => Some(moment_product(f)?),
        None => None,
    };
    Ok(AnalysisReport {
        num_qubits: s.num_qubits(),
        separable: factors.is_some(),
        max_residual,
        factors,
        moment_image,
        measures: applicable_measures(s)?,
        tolerance: tol,
    })
}

/// Analyzes many states, one task per state, results in input order.
pub fn analyze_batch(states: &[MultiQubitState], tol: f64, exec: Execution) -> Vec<Result<AnalysisReport>> {
    // inner loops stay sequential; the batch is the parallel axis
    parallel::map_ordered(states, exec, |s| analyze_with(s, tol, Execution::Sequential))
}
