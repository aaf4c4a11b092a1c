//! Exact arithmetic in the *-algebra generated by Weyl operators with
//! rational labels.
//!
//! A generator `W(u, b)` stands for the normal-ordered product
//! `U(u·κ)·V(b·ξ)` with `κ·ξ = 2π`, so the exchange relation
//! `U(α)V(β) = e^{−iαβ} V(β)U(α)` becomes
//!
//! ```text
//! W(u, b) · W(u′, b′) = e^{2πi·u′·b} · W(u + u′, b + b′)
//! ```
//!
//! with a phase that is an exact element of ℚ/ℤ ([`TurnPhase`]). Labels are
//! exact rationals; coefficients are complex doubles. All structural
//! predicates (commutation, adjoints, centrality downstream) go through the
//! exact label arithmetic, never through floats.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::rational::{OverflowError, Rational, TurnPhase};

/// Coefficients at or below this modulus are dropped after every ring
/// operation.
pub const PRUNE_TOL: f64 = 1e-12;

/// Default tolerance for approximate equality of elements.
pub const EQ_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Overflow(#[from] OverflowError),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

/// Label of the generator `Π_i U_i(u_i·κ_i) V_i(b_i·ξ_i)`: one `(u, b)` pair
/// of exact rationals per dimension. `(0, 0)` in every dimension names the
/// identity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeylLabel {
    u: Vec<Rational>,
    b: Vec<Rational>,
}

impl WeylLabel {
    pub fn new(u: Vec<Rational>, b: Vec<Rational>) -> Result<Self, AlgebraError> {
        if u.len() != b.len() {
            return Err(AlgebraError::DimensionMismatch(u.len(), b.len()));
        }
        Ok(WeylLabel { u, b })
    }

    /// One-dimensional label `(u, b)`.
    pub fn pair(u: Rational, b: Rational) -> Self {
        WeylLabel {
            u: vec![u],
            b: vec![b],
        }
    }

    pub fn identity(dims: usize) -> Self {
        WeylLabel {
            u: vec![Rational::ZERO; dims],
            b: vec![Rational::ZERO; dims],
        }
    }

    pub fn dims(&self) -> usize {
        self.u.len()
    }

    pub fn u(&self, dim: usize) -> Rational {
        self.u[dim]
    }

    pub fn b(&self, dim: usize) -> Rational {
        self.b[dim]
    }

    pub fn u_components(&self) -> &[Rational] {
        &self.u
    }

    pub fn b_components(&self) -> &[Rational] {
        &self.b
    }

    pub fn is_identity(&self) -> bool {
        self.u.iter().all(Rational::is_zero) && self.b.iter().all(Rational::is_zero)
    }

    /// True iff the frequency part vanishes in every dimension (a pure `V`).
    pub fn is_pure_translation(&self) -> bool {
        self.u.iter().all(Rational::is_zero)
    }

    pub fn negate(&self) -> Self {
        WeylLabel {
            u: self.u.iter().map(Rational::neg).collect(),
            b: self.b.iter().map(Rational::neg).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_dims(other)?;
        let u = self
            .u
            .iter()
            .zip(&other.u)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_, _>>()?;
        let b = self
            .b
            .iter()
            .zip(&other.b)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_, _>>()?;
        Ok(WeylLabel { u, b })
    }

    fn check_dims(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.dims() != other.dims() {
            return Err(AlgebraError::DimensionMismatch(self.dims(), other.dims()));
        }
        Ok(())
    }

    /// `Σ_i u_i · b_i mod 1` as an exact turn.
    fn u_dot_b_turn(u: &[Rational], b: &[Rational]) -> Result<TurnPhase, AlgebraError> {
        let mut acc = TurnPhase::ZERO;
        for (ui, bi) in u.iter().zip(b) {
            acc = acc.compose(&TurnPhase::from_turns(ui.mul_mod_one(bi)?));
        }
        Ok(acc)
    }

    /// Phase of the normal-ordered product `W(self)·W(other)`:
    /// `e^{2πi Σ_i other.u_i · self.b_i}`.
    pub fn product_phase(&self, other: &Self) -> Result<TurnPhase, AlgebraError> {
        self.check_dims(other)?;
        Self::u_dot_b_turn(&other.u, &self.b)
    }

    /// Phase of the adjoint: `W(u,b)* = e^{2πi Σ u_i b_i} W(−u,−b)`.
    pub fn adjoint_phase(&self) -> Result<TurnPhase, AlgebraError> {
        Self::u_dot_b_turn(&self.u, &self.b)
    }

    /// Turn of the symplectic pairing `Σ_i (u_i·b′_i − u′_i·b_i) mod 1`
    /// with `(u′, b′)` the components of `other`. This is the phase exponent
    /// of the adjoint action `W(other) W(self) W(other)^{-1}` on `W(self)`.
    pub fn symplectic_turn(&self, other: &Self) -> Result<TurnPhase, AlgebraError> {
        self.check_dims(other)?;
        let a = Self::u_dot_b_turn(&self.u, &other.b)?;
        let b = Self::u_dot_b_turn(&other.u, &self.b)?;
        Ok(a.compose(&b.inverse()))
    }

    /// True iff the generators named by the two labels commute as operators:
    /// the symplectic pairing `Σ_i (u_i b′_i − u′_i b_i)` is an integer.
    /// Decided exactly, without reducing intermediate products.
    pub fn commutes_with(&self, other: &Self) -> Result<bool, AlgebraError> {
        Ok(self.symplectic_turn(other)?.is_trivial())
    }
}

impl fmt::Display for WeylLabel {
    /// Canonical form `W(u,b)` in one dimension, `W(u1,b1|u2,b2)` beyond.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W(")?;
        for i in 0..self.dims() {
            if i > 0 {
                write!(f, "|")?;
            }
            write!(f, "{},{}", self.u[i], self.b[i])?;
        }
        write!(f, ")")
    }
}

/// Label-level commutation test; see [`WeylLabel::commutes_with`].
pub fn labels_commute(l1: &WeylLabel, l2: &WeylLabel) -> Result<bool, AlgebraError> {
    l1.commutes_with(l2)
}

/// A finite complex linear combination of Weyl generators: the field algebra
/// at desk scale. The empty combination is the zero element.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    terms: BTreeMap<WeylLabel, Complex64>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(dims: usize) -> Self {
        Self::generator_label(WeylLabel::identity(dims))
    }

    /// The single generator `W(label)` with coefficient 1.
    pub fn generator_label(label: WeylLabel) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(label, Complex64::new(1.0, 0.0));
        AlgebraElement { terms }
    }

    /// One-dimensional generator `W(u, b) = U(uκ)V(bξ)`.
    pub fn generator(u: Rational, b: Rational) -> Self {
        Self::generator_label(WeylLabel::pair(u, b))
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (WeylLabel, Complex64)>,
    {
        let mut out = AlgebraElement::zero();
        for (label, coeff) in terms {
            out.accumulate(label, coeff);
        }
        out.prune();
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Dimension of the labels, `None` for the zero element (compatible with
    /// any dimension).
    pub fn dims(&self) -> Option<usize> {
        self.terms.keys().next().map(WeylLabel::dims)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylLabel, &Complex64)> {
        self.terms.iter()
    }

    pub fn labels(&self) -> impl Iterator<Item = &WeylLabel> {
        self.terms.keys()
    }

    pub fn coefficient(&self, label: &WeylLabel) -> Complex64 {
        self.terms
            .get(label)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    fn accumulate(&mut self, label: WeylLabel, coeff: Complex64) {
        *self.terms.entry(label).or_insert(Complex64::new(0.0, 0.0)) += coeff;
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| c.norm() > PRUNE_TOL);
    }

    fn check_compatible(&self, other: &Self) -> Result<(), AlgebraError> {
        if let (Some(a), Some(b)) = (self.dims(), other.dims()) {
            if a != b {
                return Err(AlgebraError::DimensionMismatch(a, b));
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (label, coeff) in &other.terms {
            out.accumulate(label.clone(), *coeff);
        }
        out.prune();
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut out = AlgebraElement {
            terms: self
                .terms
                .iter()
                .map(|(l, c)| (l.clone(), c * factor))
                .collect(),
        };
        out.prune();
        out
    }

    /// Normal-ordered product, extended bilinearly from the generator rule.
    pub fn multiply(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_compatible(other)?;
        let mut out = AlgebraElement::zero();
        for (la, ca) in &self.terms {
            for (lb, cb) in &other.terms {
                let phase = la.product_phase(lb)?;
                let label = la.add(lb)?;
                out.accumulate(label, ca * cb * phase.to_complex());
            }
        }
        out.prune();
        Ok(out)
    }

    /// The antilinear involution: `(c·W(u,b))* = c̄·e^{2πi u·b}·W(−u,−b)`.
    pub fn adjoint(&self) -> Result<Self, AlgebraError> {
        let mut out = AlgebraElement::zero();
        for (label, coeff) in &self.terms {
            let phase = label.adjoint_phase()?;
            out.accumulate(label.negate(), coeff.conj() * phase.to_complex());
        }
        out.prune();
        Ok(out)
    }

    /// `AB − BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self, AlgebraError> {
        let ab = self.multiply(other)?;
        let ba = other.multiply(self)?;
        ab.sub(&ba)
    }

    /// `Σ |coefficients|`: an upper bound for the C*-norm (which is not
    /// computed anywhere in this crate).
    pub fn one_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    /// Embed a one-dimensional element into dimension `at_dim` of a
    /// `dims`-dimensional structure, acting as the identity elsewhere.
    pub fn embed(&self, dims: usize, at_dim: usize) -> Result<Self, AlgebraError> {
        if let Some(d) = self.dims() {
            if d != 1 {
                return Err(AlgebraError::DimensionMismatch(d, 1));
            }
        }
        if at_dim >= dims {
            return Err(AlgebraError::DimensionMismatch(at_dim, dims));
        }
        let mut out = AlgebraElement::zero();
        for (label, coeff) in &self.terms {
            let mut u = vec![Rational::ZERO; dims];
            let mut b = vec![Rational::ZERO; dims];
            u[at_dim] = label.u(0);
            b[at_dim] = label.b(0);
            out.accumulate(WeylLabel::new(u, b)?, *coeff);
        }
        out.prune();
        Ok(out)
    }

    /// Equality up to `tol` on coefficients over the union of label sets.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.terms
            .keys()
            .chain(other.terms.keys())
            .all(|l| (self.coefficient(l) - other.coefficient(l)).norm() <= tol)
    }
}

impl fmt::Display for AlgebraElement {
    /// Canonical printable form, re-parseable by the expression parser:
    /// `(re+imi)*W(u,b) + ...` in label order; `0` for the zero element.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (label, coeff)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let im = if coeff.im.is_sign_negative() {
                format!("-{}", -coeff.im)
            } else {
                format!("+{}", coeff.im)
            };
            write!(f, "({}{}i)*{}", coeff.re, im, label)?;
        }
        Ok(())
    }
}
