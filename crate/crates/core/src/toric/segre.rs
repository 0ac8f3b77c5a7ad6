//! Quadratic binomials cutting out the Segre image of `(P^1)^m`, i.e. the
//! fully separable states, and their exponent-balance certificates.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use super::polytope::{lattice_points, CubeVariant, ExponentSet, LatticePolytope};
use crate::error::{Error, Result};
use crate::parallel::{self, Execution};
use crate::state::{bitstring, MultiQubitState};

/// `a[x] a[y] = a[x'] a[y']`, stored in canonical form: each side is an
/// ordered pair `(small, large)` and `lhs < rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinomialRelation {
    lhs: (usize, usize),
    rhs: (usize, usize),
    swap_axis: usize,
    num_qubits: usize,
}

fn sorted(p: (usize, usize)) -> (usize, usize) {
    if p.0 <= p.1 {
        p
    } else {
        (p.1, p.0)
    }
}

impl BinomialRelation {
    /// Builds a relation on `num_qubits` qubits in canonical form.
    /// `swap_axis` is the 1-based qubit whose bits are exchanged.
    pub fn new(num_qubits: usize, lhs: (usize, usize), rhs: (usize, usize), swap_axis: usize) -> Result<Self> {
        let dim = 1usize << num_qubits;
        for idx in [lhs.0, lhs.1, rhs.0, rhs.1] {
            if idx >= dim {
                return Err(Error::IndexOutOfRange { index: idx, len: dim });
            }
        }
        if swap_axis == 0 || swap_axis > num_qubits {
            return Err(Error::InvalidInput(format!(
                "swap axis {swap_axis} outside 1..={num_qubits}"
            )));
        }
        let (l, r) = (sorted(lhs), sorted(rhs));
        if l == r {
            return Err(Error::InvalidInput("relation is trivial (both sides equal)".into()));
        }
        let (lhs, rhs) = if l < r { (l, r) } else { (r, l) };
        Ok(BinomialRelation {
            lhs,
            rhs,
            swap_axis,
            num_qubits,
        })
    }

    pub fn lhs(&self) -> (usize, usize) {
        self.lhs
    }

    pub fn rhs(&self) -> (usize, usize) {
        self.rhs
    }

    pub fn swap_axis(&self) -> usize {
        self.swap_axis
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    fn eval(&self, amps: &[Complex64]) -> f64 {
        (amps[self.lhs.0] * amps[self.lhs.1] - amps[self.rhs.0] * amps[self.rhs.1]).norm()
    }
}

impl fmt::Display for BinomialRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = |x| bitstring(x, self.num_qubits);
        write!(
            f,
            "a[{}]*a[{}] = a[{}]*a[{}]",
            b(self.lhs.0),
            b(self.lhs.1),
            b(self.rhs.0),
            b(self.rhs.1)
        )
    }
}

/// All nontrivial relations obtained by exchanging one bit between two
/// indices, deduplicated, in lexicographic order of `(lhs, rhs)`.
///
/// When a relation arises from several axes the smallest one is kept.
/// Returns an empty list for `m < 2`.
type Pair = (usize, usize);

pub fn segre_relations(m: usize) -> Vec<BinomialRelation> {
    if m < 2 {
        return Vec::new();
    }
    let dim = 1usize << m;
    let mut found: BTreeMap<(Pair, Pair), usize> = BTreeMap::new();
    for x in 0..dim {
        for y in x + 1..dim {
            let diff = x ^ y;
            for j in 1..=m {
                let bit = 1usize << (j - 1);
                if diff & bit == 0 {
                    continue;
                }
                let xp = (x & !bit) | (y & bit);
                let yp = (y & !bit) | (x & bit);
                let (l, r) = (sorted((x, y)), sorted((xp, yp)));
                if l == r {
                    continue;
                }
                let key = if l < r { (l, r) } else { (r, l) };
                found
                    .entry(key)
                    .and_modify(|a| *a = (*a).min(j))
                    .or_insert(j);
            }
        }
    }
    found
        .into_iter()
        .map(|((lhs, rhs), swap_axis)| BinomialRelation {
            lhs,
            rhs,
            swap_axis,
            num_qubits: m,
        })
        .collect()
}

fn unit_amplitudes(s: &MultiQubitState) -> Vec<Complex64> {
    let n = s.norm_sqr().sqrt();
    s.amplitudes().iter().map(|a| a / n).collect()
}

/// `|a_x a_y - a_x' a_y'|` on the unit-normalised amplitudes.
pub fn relation_residual(s: &MultiQubitState, r: &BinomialRelation) -> Result<f64> {
    if s.num_qubits() != r.num_qubits {
        return Err(Error::DimensionMismatch {
            left: s.num_qubits(),
            right: r.num_qubits,
        });
    }
    Ok(r.eval(&unit_amplitudes(s)))
}

/// Largest residual over all Segre relations; 0 for a single qubit.
pub fn max_segre_residual(s: &MultiQubitState) -> f64 {
    max_segre_residual_with(s, Execution::default())
}

pub fn max_segre_residual_with(s: &MultiQubitState, exec: Execution) -> f64 {
    let relations = segre_relations(s.num_qubits());
    max_residual_over(s, &relations, exec)
}

/// Largest residual over a precomputed relation list (all on `s`'s width).
pub fn max_residual_over(s: &MultiQubitState, relations: &[BinomialRelation], exec: Execution) -> f64 {
    let amps = unit_amplitudes(s);
    parallel::max_nonneg(relations, exec, |r| r.eval(&amps))
}

/// Exponents of the Segre monomials: the vertices of the unit cube, with
/// amplitude index `x` at position `x` (bits `x_m ... x_1`).
pub fn segre_exponents(m: usize) -> Result<ExponentSet> {
    lattice_points(&LatticePolytope::cube(m, CubeVariant::Unit)?)
}

/// Checks that both sides of `r` have the same exponent sum and degree when
/// index `x` is read as the exponent vector `e.points()[x]`.
pub fn verify_beta_balance(r: &BinomialRelation, e: &ExponentSet) -> Result<bool> {
    let k = e.len();
    let point = |x: usize| -> Result<&Vec<i64>> {
        e.points().get(x).ok_or(Error::IndexOutOfRange { index: x, len: k })
    };
    let (a, b) = (point(r.lhs.0)?, point(r.lhs.1)?);
    let (c, d) = (point(r.rhs.0)?, point(r.rhs.1)?);
    let exponents_match = (0..a.len()).all(|i| a[i] + b[i] == c[i] + d[i]);
    // both sides are quadratic monomials
    let lhs_degree = 2;
    let rhs_degree = 2;
    Ok(exponents_match && lhs_degree == rhs_degree)
}
