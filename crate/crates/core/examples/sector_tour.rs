//! A walk through the superselection structure of the particle on a
//! circle and the Bloch electron: non-regular expectations, breaking
//! verdicts, and the gap that survives the breaking.
//!
//! Run:
//!   cargo run -p weylgauge --example sector_tour

use weylgauge::{
    bloch_bands, circle_spectrum, gap_report, is_broken, theta_grid, ward_obstruction,
    AlgebraElement, Automorphism, GaugeStructure, PotentialSpec, Rational, ThetaState,
};

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

fn main() {
    let circle = GaugeStructure::circle();

    // ── 1. The state ω_θ is wildly discontinuous in the U direction ──
    println!("# 1. Non-regularity of U(λκ) in the θ = 0 state");
    let state = ThetaState::uniform(circle.clone(), 0.0);
    let lambdas = [rat(0, 1), rat(1, 10), rat(1, 3), rat(1, 2), rat(1, 1)];
    let table = state
        .nonregularity_scan(&AlgebraElement::identity(1), &lambdas, 0)
        .unwrap();
    for (lambda, value) in &table {
        println!("  ω(U({lambda}·κ)) = {value}");
    }
    println!("  (exact zeros: U(λκ) maps the sector onto an orthogonal one)\n");

    // ── 2. Sector shifts and breaking ──
    println!("# 2. Breaking verdicts for β^λ = Ad U(λκ)");
    for lambda in [rat(1, 2), rat(1, 3), rat(1, 1)] {
        let verdict = is_broken(&Automorphism::adjoint(lambda, Rational::ZERO), &circle).unwrap();
        let witness = verdict
            .witness
            .as_ref()
            .map(|w| circle.display_label(w))
            .unwrap_or_else(|| "-".to_string());
        println!(
            "  λ = {lambda:<4} broken = {:<5} shift = {:<4} witness = {witness}",
            verdict.broken, verdict.sector_shift
        );
    }
    println!();

    // ── 3. No observable charge can generate the broken symmetry ──
    println!("# 3. Ward obstruction for Q = U(κ) + U(−κ)");
    let q = AlgebraElement::generator(Rational::ONE, Rational::ZERO)
        .add(&AlgebraElement::generator(rat(-1, 1), Rational::ZERO))
        .unwrap();
    let report = ward_obstruction(&state, &q, &circle).unwrap();
    println!(
        "  sector shifts of the generators: all zero = {}",
        report.generator_shifts.iter().all(|(_, s)| s.is_zero())
    );
    println!(
        "  exchange phases with the center:  all trivial = {}",
        report.central_phases.iter().all(|(_, _, t)| t.is_trivial())
    );
    println!("  ⇒ the broken β^λ admits no generator in the observables\n");

    // ── 4. ...and yet every sector has a gap ──
    println!("# 4. Circle spectra per sector (m = 1)");
    for theta in [0.0, 0.25, 0.5] {
        let s = circle_spectrum(theta, 1.0, 3).unwrap();
        let levels: Vec<String> = s.levels.iter().take(4).map(|e| format!("{e:.5}")).collect();
        println!(
            "  θ = {theta:<5} E = [{}]  gap = {:.5}",
            levels.join(", "),
            s.gap
        );
    }
    let r = gap_report(&circle, 0.25, None, 1.0, rat(1, 2), 64).unwrap();
    println!("  verdict at θ = 0.25, λ = 1/2: {}\n", r.conclusion);

    // ── 5. The Bloch electron: a periodic potential opens the edge gap ──
    println!("# 5. Bloch bands for W(x) = 2c·cos(2πx/a), c = 0.05, a = 1");
    let potential = PotentialSpec::cosine(1.0, 0.05).unwrap();
    let grid = theta_grid(8);
    let bands = bloch_bands(&grid, &potential, 1.0, 32, 2).unwrap();
    for b in &bands {
        println!(
            "  θ = {:<6.3} E₀ = {:>9.5}  E₁ = {:>9.5}  gap = {:.5}",
            b.theta_turns, b.levels[0], b.levels[1], b.gap
        );
    }
    let edge = &bloch_bands(&[0.5], &potential, 1.0, 32, 2).unwrap()[0];
    println!(
        "  zone edge θ = 1/2: gap = {:.5} ≈ 2c = 0.1 — breaking with a gap.",
        edge.gap
    );
}
