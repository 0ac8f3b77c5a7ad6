//! Toric-geometry analysis of multi-qubit pure states.
//!
//! * [`state`]: states, single-qubit factors, projective points and the
//!   Segre embedding.
//! * [`moment`]: torus moment maps on `P^{n-1}` and `(P^1)^m`.
//! * [`toric`]: lattice polytopes, Delzant checks, normal fans of boxes and
//!   the Segre binomial relations.
//! * [`measures`]: spin flip, concurrence, m-tangle, three-tangle and the
//!   four-qubit invariants `H`, `I1`, `τ4`.
//! * [`analyze`]: the separability verdict pipeline.
//! * [`io`]: JSON formats shared with the command-line tool.
//!
//! Amplitude indices are big-endian: qubit `m` is the most significant bit.

pub mod analyze;
pub mod error;
pub mod io;
pub mod measures;
pub mod moment;
pub mod parallel;
pub mod sample;
pub mod state;
pub mod toric;

pub use analyze::{analyze, extract_factors, AnalysisReport, MeasureValue, DEFAULT_TOLERANCE};
pub use error::{Error, Result};
pub use moment::{moment_product, moment_projective, BoxPolytope, MomentImage};
pub use parallel::Execution;
pub use state::{named_state, segre_embed, MultiQubitState, NamedState, ProjectivePoint, QubitFactor};
