//! Automorphisms of the field algebra and symmetry-breaking verdicts.
//!
//! Automorphisms are stored by their exact action on generator labels
//! (a phase turn plus a label map), never by explicit conjugation. This
//! makes β^λ for λ outside the observable lattice a first-class object even
//! though no generator for it exists in any sector: it is an outer
//! automorphism of the observable algebra.
//!
//! The breaking criterion is topological: an automorphism is spontaneously
//! broken in every irreducible representation of the observables exactly
//! when it moves some center generator, i.e. shifts the superselection
//! sector. [`ward_obstruction`] documents the converse obstruction — the
//! adjoint action of any observable element fixes every sector, so no
//! observable charge can generate a sector-moving symmetry, and the
//! symmetry-breaking Ward identity cannot be written.

use num_complex::Complex64;
use thiserror::Error;

use crate::algebra::{AlgebraElement, AlgebraError, WeylLabel, EQ_TOL};
use crate::gauge::{GaugeError, GaugeStructure, SectorShift};
use crate::gns::{GnsError, ThetaState};
use crate::rational::{Rational, TurnPhase};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymmetryError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Gauge(#[from] GaugeError),
    #[error(transparent)]
    Gns(#[from] GnsError),
    #[error("automorphism does not preserve the observable algebra")]
    ObservablesNotPreserved,
    #[error("automorphism does not map the center generator {0} to a multiple of itself")]
    CenterNotPreserved(String),
    #[error("charge is not observable: term {0} lies outside the observable lattice")]
    ChargeNotObservable(String),
    #[error("charge is not self-adjoint: ‖Q − Q*‖₁ = {0}")]
    ChargeNotSelfAdjoint(f64),
    #[error("automorphism dimension {0} does not match element dimension {1}")]
    DimensionMismatch(usize, usize),
}

#[derive(Debug, Clone, PartialEq)]
enum Step {
    /// `W ↦ e^{2πi(u·b₀ − u₀·b)}·W` — conjugation by `W(u₀, b₀)`.
    Adjoint { label: WeylLabel },
    /// Free evolution for `H = p²/2m`:
    /// `W(u, b) ↦ e^{2πi·u²·t/2}·W(u, b + u·t)` per dimension, with `t` the
    /// time in units of `m·ξ/κ` (the unique scaling in which both the phase
    /// and the label shift stay rational).
    FreeEvolution { t: Rational },
}

impl Step {
    fn dims(&self) -> Option<usize> {
        match self {
            Step::Adjoint { label } => Some(label.dims()),
            Step::FreeEvolution { .. } => None,
        }
    }

    fn apply_label(&self, label: &WeylLabel) -> Result<(TurnPhase, WeylLabel), SymmetryError> {
        match self {
            Step::Adjoint { label: l0 } => {
                let phase = label.symplectic_turn(l0)?;
                Ok((phase, label.clone()))
            }
            Step::FreeEvolution { t } => {
                let dims = label.dims();
                let mut phase = TurnPhase::ZERO;
                let mut new_b = Vec::with_capacity(dims);
                let half = Rational::new(1, 2).expect("static");
                for i in 0..dims {
                    let u = label.u(i);
                    let ut = u.mul(t).map_err(AlgebraError::from)?;
                    // u²·t/2 mod 1 = (u/2)·(u·t) mod 1, reduced before
                    // narrowing so only the fractional part must fit.
                    let quad = u
                        .mul(&half)
                        .map_err(AlgebraError::from)?
                        .mul_mod_one(&ut)
                        .map_err(AlgebraError::from)?;
                    phase = phase.compose(&TurnPhase::from_turns(quad));
                    new_b.push(label.b(i).add(&ut).map_err(AlgebraError::from)?);
                }
                let new_label = WeylLabel::new(label.u_components().to_vec(), new_b)?;
                Ok((phase, new_label))
            }
        }
    }

    fn inverse(&self) -> Step {
        match self {
            Step::Adjoint { label } => Step::Adjoint {
                label: label.negate(),
            },
            Step::FreeEvolution { t } => Step::FreeEvolution { t: t.neg() },
        }
    }
}

/// A *-automorphism of the field algebra, represented by its exact
/// phase/label action on generators.
#[derive(Debug, Clone, PartialEq)]
pub struct Automorphism {
    /// Applied left to right: `steps[n-1] ∘ … ∘ steps[0]`.
    steps: Vec<Step>,
}

impl Automorphism {
    pub fn identity() -> Self {
        Automorphism { steps: Vec::new() }
    }

    /// Conjugation by the unitary generator `W(label)`.
    pub fn adjoint_label(label: WeylLabel) -> Self {
        Automorphism {
            steps: vec![Step::Adjoint { label }],
        }
    }

    /// One-dimensional adjoint automorphism `Ad W(u₀, b₀)`; the
    /// sector-moving family β^λ is `adjoint(λ, 0)`.
    pub fn adjoint(u0: Rational, b0: Rational) -> Self {
        Self::adjoint_label(WeylLabel::pair(u0, b0))
    }

    /// Free time evolution generated by `H = p²/2m`, with `t` the time in
    /// structure units `m·ξ/κ` (physical time = `t·m·ξᵢ/κᵢ` per dimension).
    ///
    /// Only such times keep the translation labels rational; arbitrary real
    /// times are rejected by the type — the numeric-time spectrum lives in
    /// [`crate::spectra`] instead. Fixes every `W(0, b)` and commutes with
    /// the gauge transformations of `structure`.
    pub fn free_evolution(
        t: Rational,
        mass: f64,
        structure: &GaugeStructure,
    ) -> Result<Self, SymmetryError> {
        if !mass.is_finite() || mass <= 0.0 {
            return Err(SymmetryError::Gauge(GaugeError::InvalidParameter(format!(
                "mass must be positive and finite, got {mass}"
            ))));
        }
        // The unit-free phase rule u²t/2 presumes κᵢ·ξᵢ = 2π.
        for i in 0..structure.dims {
            let product = structure.unit_kappa[i] * structure.unit_xi[i];
            if (product - std::f64::consts::TAU).abs() > 1e-9 {
                return Err(SymmetryError::Gauge(GaugeError::InvalidParameter(format!(
                    "structure units violate κ·ξ = 2π in dimension {i}: {product}"
                ))));
            }
        }
        Ok(Automorphism {
            steps: vec![Step::FreeEvolution { t }],
        })
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        let mut steps = other.steps.clone();
        steps.extend(self.steps.iter().cloned());
        Automorphism { steps }
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            steps: self.steps.iter().rev().map(Step::inverse).collect(),
        }
    }

    /// Exact action on a generator label: the accumulated turn and the
    /// final label.
    pub fn apply_label(&self, label: &WeylLabel) -> Result<(TurnPhase, WeylLabel), SymmetryError> {
        let mut phase = TurnPhase::ZERO;
        let mut current = label.clone();
        for step in &self.steps {
            if let Some(d) = step.dims() {
                if d != current.dims() {
                    return Err(SymmetryError::DimensionMismatch(d, current.dims()));
                }
            }
            let (p, next) = step.apply_label(&current)?;
            phase = phase.compose(&p);
            current = next;
        }
        Ok((phase, current))
    }

    /// Linear extension to algebra elements.
    pub fn apply(&self, a: &AlgebraElement) -> Result<AlgebraElement, SymmetryError> {
        let mut terms = Vec::with_capacity(a.num_terms());
        for (label, coeff) in a.terms() {
            let (phase, new_label) = self.apply_label(label)?;
            terms.push((new_label, coeff * phase.to_complex()));
        }
        Ok(AlgebraElement::from_terms(terms))
    }

    /// True iff the label action maps the observable lattice of `structure`
    /// into itself (checked exactly on the lattice/label level).
    pub fn preserves_observables(&self, structure: &GaugeStructure) -> Result<bool, SymmetryError> {
        // The action never changes u-components (adjoint fixes labels, free
        // evolution shifts only b), so it suffices to check a generating
        // sample: one lattice generator per dimension plus a translation.
        let mut samples: Vec<WeylLabel> = vec![WeylLabel::identity(structure.dims)];
        for i in 0..structure.dims {
            let mut u = vec![Rational::ZERO; structure.dims];
            let mut b = vec![Rational::ZERO; structure.dims];
            if let crate::gauge::ObservableLattice::Spacing(s) = structure.observable_u_lattice[i] {
                u[i] = s;
            }
            b[i] = Rational::ONE;
            samples.push(WeylLabel::new(u, b)?);
        }
        for sample in &samples {
            let (_, moved) = self.apply_label(sample)?;
            if !structure.label_is_observable(&moved)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The exact turns this automorphism puts on the center generators,
    /// signed so that `Ad U(λκ)` shifts the sector label by `+λ` turns —
    /// the intertwiner convention `π_θ → π_{θ+2πλ}`. Dually, expectations
    /// transport backwards: `ω_θ ∘ β = ω_{θ − 2π·shift}`.
    pub fn sector_shift(&self, structure: &GaugeStructure) -> Result<SectorShift, SymmetryError> {
        if !self.preserves_observables(structure)? {
            return Err(SymmetryError::ObservablesNotPreserved);
        }
        let mut turns = Vec::with_capacity(structure.center_generators.len());
        for center in &structure.center_generators {
            let (phase, moved) = self.apply_label(center)?;
            if &moved != center {
                return Err(SymmetryError::CenterNotPreserved(center.to_string()));
            }
            turns.push(phase.inverse().turns());
        }
        Ok(SectorShift::from_turns(turns))
    }
}

/// Outcome of the topological breaking test for one automorphism.
#[derive(Debug, Clone, PartialEq)]
pub struct BreakingVerdict {
    pub broken: bool,
    /// A center generator with nontrivial action, when broken.
    pub witness: Option<WeylLabel>,
    pub sector_shift: SectorShift,
    /// Rows `(center label, ω_θ(V), ω_θ(β(V)))` at the reference sector
    /// θ = 0: the order parameter of the breaking.
    pub order_parameter_samples: Vec<(WeylLabel, Complex64, Complex64)>,
}

/// Decides whether `auto` is spontaneously broken in the θ sectors of
/// `structure`: broken iff some center generator acquires a nontrivial
/// phase (equivalently, iff the sector shift is nonzero).
pub fn is_broken(
    auto: &Automorphism,
    structure: &GaugeStructure,
) -> Result<BreakingVerdict, SymmetryError> {
    let shift = auto.sector_shift(structure)?;
    let witness = structure
        .center_generators
        .iter()
        .zip(shift.turns())
        .find(|(_, t)| !t.is_zero())
        .map(|(label, _)| label.clone());

    let reference = ThetaState::uniform(structure.clone(), 0.0);
    let mut samples = Vec::with_capacity(structure.center_generators.len());
    for center in &structure.center_generators {
        let v = AlgebraElement::generator_label(center.clone());
        let before = reference.expect(&v)?;
        let after = reference.expect(&auto.apply(&v)?)?;
        samples.push((center.clone(), before, after));
    }

    Ok(BreakingVerdict {
        broken: witness.is_some(),
        witness,
        sector_shift: shift,
        order_parameter_samples: samples,
    })
}

/// The pair `(ω(A), ω(β(A)))`: a symmetry is visible on `A` in the state
/// when the two entries differ.
pub fn order_parameter(
    state: &ThetaState,
    auto: &Automorphism,
    a: &AlgebraElement,
) -> Result<(Complex64, Complex64), SymmetryError> {
    Ok((state.expect(a)?, state.expect(&auto.apply(a)?)?))
}

/// Why a sector-moving symmetry admits no observable generator: the report
/// for one candidate charge `Q`.
#[derive(Debug, Clone, PartialEq)]
pub struct WardReport {
    /// `‖Q − Q*‖₁`, accepted up to 1e-10.
    pub self_adjoint_residual: f64,
    /// Sector shift of `Ad W(l)` for every generator label `l` of `Q`;
    /// all zero for observable `Q`.
    pub generator_shifts: Vec<(WeylLabel, SectorShift)>,
    /// Exchange turn between each generator label of `Q` and each center
    /// generator: the central element `V⁻¹W(l)⁻¹VW(l)` equals
    /// `e^{2πi·turn}·1`. Trivial turns mean `Q` cannot move any sector.
    pub central_phases: Vec<(WeylLabel, WeylLabel, TurnPhase)>,
    /// `ω_θ([Q, V]·V⁻¹)` per center generator `V`: the coefficient that
    /// would contaminate every Ward identity were it nonzero.
    pub commutator_expectations: Vec<(WeylLabel, Complex64)>,
    /// True when every shift is zero and every phase is trivial: this
    /// charge provably fixes every sector.
    pub obstruction_holds: bool,
}

/// Checks that the observable, self-adjoint charge `Q` fixes every
/// superselection sector, so the adjoint action of `Q` cannot reproduce a
/// center-moving automorphism and no symmetry-breaking Ward identity can be
/// written in a θ state.
///
/// Rejects non-observable charges: the obstruction concerns generators
/// inside the observable algebra only (intertwiners are excluded by the
/// lattice test).
pub fn ward_obstruction(
    state: &ThetaState,
    q: &AlgebraElement,
    structure: &GaugeStructure,
) -> Result<WardReport, SymmetryError> {
    for label in q.labels() {
        if !structure.label_is_observable(label)? {
            return Err(SymmetryError::ChargeNotObservable(label.to_string()));
        }
    }
    let residual = q.sub(&q.adjoint()?)?.one_norm();
    if residual > EQ_TOL {
        return Err(SymmetryError::ChargeNotSelfAdjoint(residual));
    }

    let mut generator_shifts = Vec::new();
    let mut central_phases = Vec::new();
    for label in q.labels() {
        let shift = Automorphism::adjoint_label(label.clone()).sector_shift(structure)?;
        generator_shifts.push((label.clone(), shift));
        for center in &structure.center_generators {
            let turn = center.symplectic_turn(label)?;
            central_phases.push((label.clone(), center.clone(), turn));
        }
    }

    let mut commutator_expectations = Vec::new();
    for center in &structure.center_generators {
        let v = AlgebraElement::generator_label(center.clone());
        let v_inv = v.adjoint()?; // unitary generator
        let bracket = q.commutator(&v)?.multiply(&v_inv)?;
        commutator_expectations.push((center.clone(), state.expect(&bracket)?));
    }

    let obstruction_holds = generator_shifts.iter().all(|(_, s)| s.is_zero())
        && central_phases.iter().all(|(_, _, t)| t.is_trivial());

    Ok(WardReport {
        self_adjoint_residual: residual,
        generator_shifts,
        central_phases,
        commutator_expectations,
        obstruction_holds,
    })
}
