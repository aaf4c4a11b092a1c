//! Gauge-invariant states ω_θ and their GNS vectors.
//!
//! The state kills every generator with a nonzero frequency label and puts
//! a phase `e^{2πi·b·θ}` on the pure translations:
//!
//! ```text
//! ω_θ(W(u, b)) = 0              if u ≠ 0,
//! ω_θ(W(0, b)) = e^{2πi·b·θ}    (θ in turns, per dimension)
//! ```
//!
//! The GNS space built from such a state is non-separable: the vectors
//! `U(u)Ψ₀` for distinct frequencies are orthonormal and the inner product
//! is the ℓ² sum of amplitudes (the ergodic mean of the almost-periodic
//! wavefunction). Only finite supports are ever stored; no completion is
//! attempted.

use std::collections::BTreeMap;

use num_complex::Complex64;
use thiserror::Error;

use crate::algebra::{AlgebraElement, AlgebraError, WeylLabel, PRUNE_TOL};
use crate::gauge::{GaugeError, GaugeStructure};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GnsError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Gauge(#[from] GaugeError),
    #[error("vectors belong to different states")]
    StateMismatch,
    #[error("state positivity violated: ω(A*A) = {0} < -1e-10 (implementation bug)")]
    PositivityViolated(f64),
    #[error("operation only implemented for 1-dimensional structures, got dims = {0}")]
    UnsupportedDimension(usize),
    #[error("theta vector has length {0}, structure has {1} dimensions")]
    ThetaLength(usize, usize),
}

/// The gauge-invariant state ω_θ on the field algebra.
///
/// `theta_turns[i]` is the sector angle divided by 2π along dimension `i`,
/// reduced to `[0, 1)`. Along gauge directions it labels the superselection
/// sector; along the remaining directions it is the reduced alias of the
/// translation eigenvalue p̄ (`θ = p̄·ξ/2π mod 1`), which is the canonical
/// datum here — states whose p̄ differ by a full lattice step are identified.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaState {
    structure: GaugeStructure,
    theta_turns: Vec<f64>,
}

impl ThetaState {
    /// State with the given turns per dimension, each reduced mod 1.
    pub fn new(structure: GaugeStructure, theta_turns: Vec<f64>) -> Result<Self, GnsError> {
        if theta_turns.len() != structure.dims {
            return Err(GnsError::ThetaLength(theta_turns.len(), structure.dims));
        }
        Ok(ThetaState {
            structure,
            theta_turns: theta_turns.iter().map(|t| t.rem_euclid(1.0)).collect(),
        })
    }

    /// State with `theta` turns along every gauge direction and 0 elsewhere.
    pub fn uniform(structure: GaugeStructure, theta: f64) -> Self {
        let gauge_dims = structure.gauge_dims();
        let turns = (0..structure.dims)
            .map(|i| {
                if gauge_dims.contains(&i) {
                    theta.rem_euclid(1.0)
                } else {
                    0.0
                }
            })
            .collect();
        ThetaState {
            structure,
            theta_turns: turns,
        }
    }

    /// State specified by the translation eigenvalue p̄ per dimension:
    /// `θ_i = p̄_i·ξ_i/2π mod 1`.
    pub fn from_pbar(structure: GaugeStructure, pbar: Vec<f64>) -> Result<Self, GnsError> {
        if pbar.len() != structure.dims {
            return Err(GnsError::ThetaLength(pbar.len(), structure.dims));
        }
        let turns = pbar
            .iter()
            .zip(&structure.unit_xi)
            .map(|(p, xi)| (p * xi / std::f64::consts::TAU).rem_euclid(1.0))
            .collect();
        Ok(ThetaState {
            structure,
            theta_turns: turns,
        })
    }

    pub fn structure(&self) -> &GaugeStructure {
        &self.structure
    }

    pub fn theta_turns(&self) -> &[f64] {
        &self.theta_turns
    }

    /// Representative p̄ along dimension `i` (the alias of `θ_i` in
    /// `[0, 2π/ξ_i)`).
    pub fn pbar(&self, i: usize) -> f64 {
        self.theta_turns[i] * std::f64::consts::TAU / self.structure.unit_xi[i]
    }

    fn translation_phase(&self, label: &WeylLabel) -> Complex64 {
        let turn: f64 = label
            .b_components()
            .iter()
            .zip(&self.theta_turns)
            .map(|(b, t)| b.to_f64() * t)
            .sum();
        Complex64::from_polar(1.0, std::f64::consts::TAU * turn)
    }

    /// ω_θ(A). Terms with a nonzero frequency label contribute exactly
    /// zero — they are skipped, not rounded.
    pub fn expect(&self, a: &AlgebraElement) -> Result<Complex64, GnsError> {
        if let Some(d) = a.dims() {
            if d != self.structure.dims {
                return Err(GnsError::Algebra(AlgebraError::DimensionMismatch(
                    d,
                    self.structure.dims,
                )));
            }
        }
        let mut value = Complex64::new(0.0, 0.0);
        for (label, coeff) in a.terms() {
            if label.is_pure_translation() {
                value += coeff * self.translation_phase(label);
            }
        }
        Ok(value)
    }

    /// `Re ω(A*A)`, which must be ≥ −1e-10 for a positive state; a larger
    /// violation is reported as an error since it can only come from a bug
    /// in the ring operations.
    pub fn positivity_check(&self, a: &AlgebraElement) -> Result<f64, GnsError> {
        let value = self.expect(&a.adjoint()?.multiply(a)?)?.re;
        if value < -1e-10 {
            return Err(GnsError::PositivityViolated(value));
        }
        Ok(value)
    }

    /// Table of `(λ, ω(U(λκ)·A))` with `U(λκ)` acting along dimension
    /// `dim`: the discontinuity of λ ↦ U(λκ) in a gauge-invariant state.
    /// Zeros are exact — terms with a nonzero frequency never enter the sum.
    pub fn nonregularity_scan(
        &self,
        a: &AlgebraElement,
        lambdas: &[Rational],
        dim: usize,
    ) -> Result<Vec<(Rational, Complex64)>, GnsError> {
        if dim >= self.structure.dims {
            return Err(GnsError::Algebra(AlgebraError::DimensionMismatch(
                dim,
                self.structure.dims,
            )));
        }
        let mut table = Vec::with_capacity(lambdas.len());
        for lambda in lambdas {
            let mut u_label = vec![Rational::ZERO; self.structure.dims];
            u_label[dim] = *lambda;
            let shifter = AlgebraElement::generator_label(
                WeylLabel::new(u_label, vec![Rational::ZERO; self.structure.dims])
                    .map_err(GnsError::Algebra)?,
            );
            let value = self.expect(&shifter.multiply(a)?)?;
            table.push((*lambda, value));
        }
        Ok(table)
    }

    /// The cyclic vector Ψ₀.
    pub fn vacuum(&self) -> GnsVector {
        let mut amplitudes = BTreeMap::new();
        amplitudes.insert(
            vec![Rational::ZERO; self.structure.dims],
            Complex64::new(1.0, 0.0),
        );
        GnsVector {
            state: self.clone(),
            amplitudes,
        }
    }
}

/// A vector `Σ_u a_u · U(u)Ψ₀` in the GNS space of a [`ThetaState`],
/// stored as its finite amplitude map over frequency labels.
#[derive(Debug, Clone, PartialEq)]
pub struct GnsVector {
    state: ThetaState,
    amplitudes: BTreeMap<Vec<Rational>, Complex64>,
}

impl GnsVector {
    pub fn state(&self) -> &ThetaState {
        &self.state
    }

    pub fn amplitudes(&self) -> impl Iterator<Item = (&Vec<Rational>, &Complex64)> {
        self.amplitudes.iter()
    }

    pub fn amplitude(&self, u: &[Rational]) -> Complex64 {
        self.amplitudes
            .get(u)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn is_zero(&self) -> bool {
        self.amplitudes.is_empty()
    }

    /// Frequencies with nonzero amplitude, in label order.
    pub fn support(&self) -> impl Iterator<Item = &Vec<Rational>> {
        self.amplitudes.keys()
    }

    pub fn scale(&self, factor: Complex64) -> GnsVector {
        let mut out = GnsVector {
            state: self.state.clone(),
            amplitudes: self
                .amplitudes
                .iter()
                .map(|(u, a)| (u.clone(), a * factor))
                .collect(),
        };
        out.prune();
        out
    }

    pub fn add(&self, other: &GnsVector) -> Result<GnsVector, GnsError> {
        if self.state != other.state {
            return Err(GnsError::StateMismatch);
        }
        let mut out = self.clone();
        for (u, a) in &other.amplitudes {
            *out.amplitudes
                .entry(u.clone())
                .or_insert(Complex64::new(0.0, 0.0)) += a;
        }
        out.prune();
        Ok(out)
    }

    pub fn sub(&self, other: &GnsVector) -> Result<GnsVector, GnsError> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    fn prune(&mut self) {
        self.amplitudes.retain(|_, a| a.norm() > PRUNE_TOL);
    }

    /// `⟨self, other⟩ = Σ_u conj(self[u])·other[u]`: distinct frequencies
    /// are orthogonal, so only shared labels contribute.
    pub fn inner(&self, other: &GnsVector) -> Result<Complex64, GnsError> {
        if self.state != other.state {
            return Err(GnsError::StateMismatch);
        }
        let mut value = Complex64::new(0.0, 0.0);
        for (u, a) in &self.amplitudes {
            if let Some(b) = other.amplitudes.get(u) {
                value += a.conj() * b;
            }
        }
        Ok(value)
    }

    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.values().map(|a| a.norm_sqr()).sum()
    }

    /// Finite-L average `(2L)^{-1} ∫_{−L}^{L} |ψ(x)|² dx` of the
    /// almost-periodic wavefunction `ψ(x) = Σ_u a_u e^{i·u·κ·x}`, by
    /// composite trapezoidal quadrature with `samples` intervals.
    ///
    /// Converges to [`GnsVector::norm_sq`] as O(1/L): the definition of the
    /// inner product is the exact ℓ² sum, this is a diagnostic of the
    /// ergodic-mean formula. One-dimensional structures only.
    pub fn ergodic_mean_check(&self, half_width: f64, samples: usize) -> Result<f64, GnsError> {
        if self.state.structure.dims != 1 {
            return Err(GnsError::UnsupportedDimension(self.state.structure.dims));
        }
        if self.amplitudes.is_empty() {
            return Ok(0.0);
        }
        let kappa = self.state.structure.unit_kappa[0];
        let freqs: Vec<(f64, Complex64)> = self
            .amplitudes
            .iter()
            .map(|(u, a)| (u[0].to_f64() * kappa, *a))
            .collect();
        let psi = |x: f64| -> Complex64 {
            freqs
                .iter()
                .map(|(w, a)| a * Complex64::from_polar(1.0, w * x))
                .sum()
        };
        let n = samples.max(2);
        let h = 2.0 * half_width / n as f64;
        let mut sum = 0.5 * (psi(-half_width).norm_sqr() + psi(half_width).norm_sqr());
        for k in 1..n {
            sum += psi(-half_width + k as f64 * h).norm_sqr();
        }
        Ok(sum * h / (2.0 * half_width))
    }
}

/// GNS action of a field element: extends
/// `W(u,b) · U(u′)Ψ₀ = e^{2πi·b·(u′+θ)} · U(u+u′)Ψ₀` linearly in both
/// arguments.
pub fn apply(a: &AlgebraElement, v: &GnsVector) -> Result<GnsVector, GnsError> {
    let dims = v.state.structure.dims;
    if let Some(d) = a.dims() {
        if d != dims {
            return Err(GnsError::Algebra(AlgebraError::DimensionMismatch(d, dims)));
        }
    }
    let mut out = GnsVector {
        state: v.state.clone(),
        amplitudes: BTreeMap::new(),
    };
    for (label, coeff) in a.terms() {
        for (freq, amp) in &v.amplitudes {
            // Phase turn Σ_i b_i·(u′_i + θ_i); the rational part is exact,
            // θ enters as a double.
            let turn: f64 = label
                .b_components()
                .iter()
                .zip(freq)
                .zip(&v.state.theta_turns)
                .map(|((b, u), t)| b.to_f64() * (u.to_f64() + t))
                .sum();
            let phase = Complex64::from_polar(1.0, std::f64::consts::TAU * turn);
            let mut new_freq = Vec::with_capacity(dims);
            for (u, f) in label.u_components().iter().zip(freq) {
                new_freq.push(u.add(f).map_err(AlgebraError::from)?);
            }
            *out.amplitudes
                .entry(new_freq)
                .or_insert(Complex64::new(0.0, 0.0)) += coeff * amp * phase;
        }
    }
    out.prune();
    Ok(out)
}
