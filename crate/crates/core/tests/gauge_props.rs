//! Structural properties of the preset gauge structures.

mod common;

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weylgauge::gauge::ObservableLattice;
use weylgauge::{
    labels_commute, AlgebraElement, Automorphism, GaugeStructure, Rational, SectorShift, WeylLabel,
};

/// Exhaustive commutation of gauge generators with observable generator
/// labels of denominator ≤ 12.
#[test]
fn gauge_generators_commute_with_every_observable_generator() {
    for structure in [
        GaugeStructure::circle(),
        GaugeStructure::bloch(1.7).unwrap(),
        GaugeStructure::two_body(),
    ] {
        structure.validate().unwrap();
        for den in 1..=12i64 {
            for num in -12..=12i64 {
                let b = rat(num, den);
                for dim in 0..structure.dims {
                    // Observable u along `dim`: lattice points within ±3 steps.
                    let us: Vec<Rational> = match structure.observable_u_lattice[dim] {
                        ObservableLattice::Spacing(s) => {
                            (-3..=3).map(|k| s.mul_int(k).unwrap()).collect()
                        }
                        ObservableLattice::All => (-6..=6).map(|n| rat(n, den)).collect(),
                        ObservableLattice::OnlyZero => vec![Rational::ZERO],
                    };
                    for u in us {
                        let mut uv = vec![Rational::ZERO; structure.dims];
                        let mut bv = vec![Rational::ZERO; structure.dims];
                        uv[dim] = u;
                        bv[dim] = b;
                        let observable = WeylLabel::new(uv, bv).unwrap();
                        assert!(structure.label_is_observable(&observable).unwrap());
                        for gauge in &structure.gauge_generators {
                            assert!(
                                labels_commute(&observable, gauge).unwrap(),
                                "{} does not commute with gauge generator {} in {}",
                                observable,
                                gauge,
                                structure.name
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn observables_are_gauge_fixed_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for structure in [
        GaugeStructure::circle(),
        GaugeStructure::bloch(1.3).unwrap(),
    ] {
        for _ in 0..100 {
            let a = random_observable_element(&mut rng, &structure, 8, 12);
            for g in -3..=3 {
                let moved = structure.gauge_transform_1(&a, g).unwrap();
                assert!(moved.approx_eq(&a, 1e-10));
            }
        }
    }
}

#[test]
fn non_observable_generators_acquire_a_phase() {
    // On the circle every u ∉ ℤ is detected by some integer power of the
    // gauge generator.
    let circle = GaugeStructure::circle();
    for (num, den) in [(1, 2), (1, 3), (-2, 3), (5, 12), (7, 5)] {
        let w = AlgebraElement::generator(rat(num, den), rat(1, 4));
        assert!(!circle.is_observable(&w).unwrap());
        let detected = (-3..=3).any(|g| {
            !circle
                .gauge_transform_1(&w, g)
                .unwrap()
                .approx_eq(&w, 1e-10)
        });
        assert!(detected, "gauge action misses intertwiner u = {num}/{den}");
    }
}

#[test]
fn two_body_lattice_is_stricter_than_its_discrete_representative() {
    // The two-body gauge group is continuous: the lattice test correctly
    // rejects U_Q(κ) even though the listed ℤ-generator fixes it.
    let s = GaugeStructure::two_body();
    let com_u = AlgebraElement::generator_label(
        WeylLabel::new(
            vec![Rational::ZERO, Rational::ONE],
            vec![Rational::ZERO, Rational::ZERO],
        )
        .unwrap(),
    );
    assert!(!s.is_observable(&com_u).unwrap());
    let fixed = s.gauge_transform_1(&com_u, 1).unwrap();
    assert!(fixed.approx_eq(&com_u, 1e-12));
}

#[test]
fn sector_shift_is_a_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let circle = GaugeStructure::circle();
    for _ in 0..200 {
        let a = Automorphism::adjoint(
            random_rational(&mut rng, 12, 3),
            random_rational(&mut rng, 12, 3),
        );
        let b = Automorphism::adjoint(
            random_rational(&mut rng, 12, 3),
            random_rational(&mut rng, 12, 3),
        );
        let composed = a.compose(&b).sector_shift(&circle).unwrap();
        let summed = a
            .sector_shift(&circle)
            .unwrap()
            .compose(&b.sector_shift(&circle).unwrap());
        assert_eq!(composed, summed);
    }
}

#[test]
fn observable_adjoints_never_move_a_sector() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for structure in [
        GaugeStructure::circle(),
        GaugeStructure::bloch(0.8).unwrap(),
    ] {
        for _ in 0..100 {
            let a = random_observable_element(&mut rng, &structure, 8, 12);
            for label in a.labels() {
                let shift = Automorphism::adjoint_label(label.clone())
                    .sector_shift(&structure)
                    .unwrap();
                assert!(
                    shift.is_zero(),
                    "observable generator {label} shifts the sector by {shift}"
                );
            }
        }
    }
}

#[test]
fn gauge_transform_phases_match_the_matrix_oracle() {
    // Ad V(ξ) on W(u, b) in the q²-dimensional representation.
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let circle = GaugeStructure::circle();
    for &q in &[2i64, 3, 4, 6] {
        for _ in 0..15 {
            let a = random_element_mod_q(&mut rng, 5, q);
            let transformed = circle.gauge_transform_1(&a, 1).unwrap();
            let v = AlgebraElement::generator(Rational::ZERO, Rational::ONE);
            let v_inv = v.adjoint().unwrap();
            let m_lhs = clock_shift_rep(&transformed, q);
            let m_rhs =
                clock_shift_rep(&v, q) * clock_shift_rep(&a, q) * clock_shift_rep(&v_inv, q);
            assert!(
                matrices_close(&m_lhs, &m_rhs, 1e-10),
                "gauge transform disagrees with explicit conjugation at q = {q}"
            );
        }
    }
}

#[test]
fn shift_composition_wraps_mod_one() {
    let a = SectorShift::from_turns(vec![rat(5, 6)]);
    let b = SectorShift::from_turns(vec![rat(1, 3)]);
    assert_eq!(a.compose(&b), SectorShift::from_turns(vec![rat(1, 6)]));
}

#[test]
fn display_labels_use_physics_notation() {
    let circle = GaugeStructure::circle();
    assert_eq!(
        circle.display_label(&WeylLabel::pair(Rational::ZERO, Rational::ONE)),
        "V(2π)"
    );
    assert_eq!(
        circle.display_label(&WeylLabel::pair(Rational::ONE, Rational::ZERO)),
        "U(κ)"
    );
    assert_eq!(circle.display_label(&WeylLabel::identity(1)), "1");
    let two_body = GaugeStructure::two_body();
    assert_eq!(
        two_body.display_label(&two_body.center_generators[0]),
        "V_P(ξ)"
    );
}

#[test]
fn gauge_transform_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let circle = GaugeStructure::circle();
    for _ in 0..100 {
        let a = random_element(&mut rng, 6, 12);
        let b = random_element(&mut rng, 6, 12);
        let g = rand::Rng::gen_range(&mut rng, -3i64..=3);
        let lhs = circle
            .gauge_transform_1(&a.multiply(&b).unwrap(), g)
            .unwrap();
        let rhs = circle
            .gauge_transform_1(&a, g)
            .unwrap()
            .multiply(&circle.gauge_transform_1(&b, g).unwrap())
            .unwrap();
        assert!(lhs.approx_eq(&rhs, 1e-10));
    }
}
