//! Exact computer algebra and spectral analysis for Weyl algebras with
//! gauge structure.
//!
//! The crate represents finite linear combinations of Weyl operators
//! `W(u, b) = U(u·κ)V(b·ξ)` with exact rational labels, so commutation
//! phases live in ℚ/ℤ and every structural question — which elements are
//! observable, which are central, which automorphisms move a
//! superselection sector — is decidable, not approximate. On top of the
//! ring sit:
//!
//! - [`gauge`]: observable lattices, gauge groups, centers, and the three
//!   standard structures (particle on a circle, Bloch electron, two-body
//!   problem with an unobservable center of mass);
//! - [`gns`]: the gauge-invariant states ω_θ, their non-separable GNS
//!   vectors with ℓ²/ergodic-mean geometry, and non-regularity scans;
//! - [`symmetry`]: adjoint and free-evolution automorphisms, topological
//!   breaking verdicts, order parameters, and the Ward-identity
//!   obstruction that reconciles breaking with an energy gap;
//! - [`spectra`]: the exact circle spectrum per sector and the truncated
//!   plane-wave Bloch solver, joined into gap reports;
//! - [`expr`]: a small expression language for entering elements.

pub mod algebra;
pub mod expr;
pub mod gauge;
pub mod gns;
pub mod rational;
pub mod spectra;
pub mod symmetry;

pub use algebra::{labels_commute, AlgebraElement, AlgebraError, WeylLabel};
pub use expr::{parse_element, parse_expr, ElementExpr, ExprError};
pub use gauge::{GaugeError, GaugeStructure, ObservableLattice, SectorShift};
pub use gns::{apply, GnsError, GnsVector, ThetaState};
pub use rational::{OverflowError, Rational, TurnPhase};
pub use spectra::{
    bloch_bands, bloch_hamiltonian, circle_spectrum, gap_report, theta_grid, GapReport,
    PotentialSpec, SpectraError, SpectrumResult,
};
pub use symmetry::{
    is_broken, order_parameter, ward_obstruction, Automorphism, BreakingVerdict, SymmetryError,
    WardReport,
};
