//! Shared test oracles and randomized element generators.
//!
//! The clock/shift oracle maps rationally-labeled Weyl generators onto
//! finite matrices with the same exchange relations, turning algebraic
//! identities into numerically checkable matrix identities. It goes
//! through nalgebra matrix products only — none of the algebra's own
//! phase bookkeeping is reused here.

// Each test binary uses its own subset of these helpers.
#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use weylgauge::gauge::ObservableLattice;
use weylgauge::{AlgebraElement, GaugeStructure, Rational, WeylLabel};

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

/// lcm of the label denominators of `a` (1-dimensional elements).
pub fn common_denominator(elements: &[&AlgebraElement]) -> i64 {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let mut l = 1i64;
    for a in elements {
        for label in a.labels() {
            for r in [label.u(0), label.b(0)] {
                let d = r.denominator();
                l = l / gcd(l, d) * d;
            }
        }
    }
    l
}

/// Faithful-by-construction matrix image of a 1-d element whose labels have
/// common denominator `q`: `W(j/q, k/q) ↦ S^j C^k` in dimension `q²`, with
/// `C S = e^{2πi/q²}·S C`. Products, adjoints, and phases of the algebra
/// must match the matrix arithmetic exactly (to rounding).
pub fn clock_shift_rep(a: &AlgebraElement, q: i64) -> DMatrix<Complex64> {
    let dim = (q * q) as usize;
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for (label, coeff) in a.terms() {
        assert_eq!(label.dims(), 1, "oracle handles 1-d labels");
        let j = to_scaled_int(label.u(0), q);
        let k = to_scaled_int(label.b(0), q);
        for col in 0..dim {
            let row = (col as i64 + j).rem_euclid(dim as i64) as usize;
            let turn = (k * col as i64).rem_euclid(dim as i64) as f64 / dim as f64;
            let omega = Complex64::from_polar(1.0, std::f64::consts::TAU * turn);
            m[(row, col)] += coeff * omega;
        }
    }
    m
}

fn to_scaled_int(r: Rational, q: i64) -> i64 {
    assert_eq!(
        q % r.denominator(),
        0,
        "label denominator {} does not divide q = {q}",
        r.denominator()
    );
    r.numerator() * (q / r.denominator())
}

pub fn matrices_close(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>, tol: f64) -> bool {
    (a - b).iter().all(|x| x.norm() <= tol)
}

pub fn random_coeff<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Random rational with denominator ≤ `max_den` and |value| ≤ `span`.
pub fn random_rational<R: Rng>(rng: &mut R, max_den: i64, span: i64) -> Rational {
    let den = rng.gen_range(1..=max_den);
    let num = rng.gen_range(-span * den..=span * den);
    rat(num, den)
}

/// Random 1-d element with at most `max_terms` terms, label denominators
/// ≤ `max_den`, and label magnitudes ≤ 3.
pub fn random_element<R: Rng>(rng: &mut R, max_terms: usize, max_den: i64) -> AlgebraElement {
    let n = rng.gen_range(1..=max_terms);
    let mut acc = AlgebraElement::zero();
    for _ in 0..n {
        let u = random_rational(rng, max_den, 3);
        let b = random_rational(rng, max_den, 3);
        let term = AlgebraElement::generator(u, b).scale(random_coeff(rng));
        acc = acc.add(&term).unwrap();
    }
    acc
}

/// Random element with all labels inside the observable lattice of
/// `structure` (1-dimensional structures).
pub fn random_observable_element<R: Rng>(
    rng: &mut R,
    structure: &GaugeStructure,
    max_terms: usize,
    max_den: i64,
) -> AlgebraElement {
    assert_eq!(structure.dims, 1);
    let n = rng.gen_range(1..=max_terms);
    let mut acc = AlgebraElement::zero();
    for _ in 0..n {
        let u = match structure.observable_u_lattice[0] {
            ObservableLattice::Spacing(s) => s.mul_int(rng.gen_range(-3..=3)).unwrap(),
            ObservableLattice::All => random_rational(rng, max_den, 3),
            ObservableLattice::OnlyZero => Rational::ZERO,
        };
        let b = random_rational(rng, max_den, 3);
        let term = AlgebraElement::generator(u, b).scale(random_coeff(rng));
        acc = acc.add(&term).unwrap();
    }
    acc
}

/// Random element whose labels have denominators dividing `q` — the
/// domain of the clock/shift oracle.
pub fn random_element_mod_q<R: Rng>(rng: &mut R, max_terms: usize, q: i64) -> AlgebraElement {
    let n = rng.gen_range(1..=max_terms);
    let mut acc = AlgebraElement::zero();
    for _ in 0..n {
        let u = rat(rng.gen_range(-2 * q..=2 * q), q);
        let b = rat(rng.gen_range(-2 * q..=2 * q), q);
        let term = AlgebraElement::generator(u, b).scale(random_coeff(rng));
        acc = acc.add(&term).unwrap();
    }
    acc
}

/// Random observable self-adjoint charge: `B + B*` for observable `B`.
pub fn random_charge<R: Rng>(rng: &mut R, structure: &GaugeStructure) -> AlgebraElement {
    let b = random_observable_element(rng, structure, 4, 12);
    b.add(&b.adjoint().unwrap()).unwrap()
}

/// Self-test of the oracle itself: the canonical exchange pair.
#[allow(dead_code)]
pub fn oracle_self_check() {
    let u = AlgebraElement::generator(rat(1, 2), rat(0, 1));
    let v = AlgebraElement::generator(rat(0, 1), rat(1, 2));
    let q = 2;
    let mu = clock_shift_rep(&u, q);
    let mv = clock_shift_rep(&v, q);
    // V(ξ/2)·U(κ/2) = e^{2πi/4}·U(κ/2)·V(ξ/2) in the matrix picture.
    let lhs = &mv * &mu;
    let rhs = (&mu * &mv).map(|x| x * Complex64::new(0.0, 1.0));
    assert!(matrices_close(&lhs, &rhs, 1e-12));
    let _ = WeylLabel::pair(rat(1, 2), rat(0, 1));
}
