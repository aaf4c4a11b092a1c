//! `weylgauge`: algebra, sector, and spectrum reports on stdout.
//!
//! Every subcommand emits JSON (sorted keys, floats at 12 significant
//! digits) unless `--csv` is given. Exit codes: 0 success, 2 input error,
//! 3 numerical failure.

mod output;

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use output::*;
use weylgauge::{
    bloch_bands, circle_spectrum, gap_report, is_broken, parse_element, ward_obstruction,
    AlgebraElement, AlgebraError, Automorphism, ExprError, GaugeError, GaugeStructure, GnsError,
    PotentialSpec, Rational, SpectraError, SymmetryError, ThetaState,
};

#[derive(Debug)]
enum CliError {
    /// Exit code 2.
    Input(String),
    /// Exit code 3.
    Numerical(String),
}

impl CliError {
    fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }
}

impl From<ExprError> for CliError {
    fn from(e: ExprError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Overflow(_) => CliError::Numerical(e.to_string()),
            AlgebraError::DimensionMismatch(..) => CliError::Input(e.to_string()),
        }
    }
}

impl From<GaugeError> for CliError {
    fn from(e: GaugeError) -> Self {
        match e {
            GaugeError::Algebra(inner) => inner.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<GnsError> for CliError {
    fn from(e: GnsError) -> Self {
        match e {
            GnsError::Algebra(inner) => inner.into(),
            GnsError::Gauge(inner) => inner.into(),
            GnsError::PositivityViolated(_) => CliError::Numerical(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<SymmetryError> for CliError {
    fn from(e: SymmetryError) -> Self {
        match e {
            SymmetryError::Algebra(inner) => inner.into(),
            SymmetryError::Gauge(inner) => inner.into(),
            SymmetryError::Gns(inner) => inner.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<SpectraError> for CliError {
    fn from(e: SpectraError) -> Self {
        match e {
            SpectraError::EigenNonConvergence | SpectraError::ResidualContract { .. } => {
                CliError::Numerical(e.to_string())
            }
            SpectraError::Gauge(inner) => inner.into(),
            SpectraError::Symmetry(inner) => inner.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "weylgauge",
    about = "Weyl algebras with gauge structure: sectors, breaking verdicts, spectra",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ThetaArgs {
    /// Sector angle (turns by default).
    #[arg(long)]
    theta: f64,
    /// Interpret --theta in radians instead of turns.
    #[arg(long)]
    radians: bool,
}

impl ThetaArgs {
    fn turns(&self) -> f64 {
        if self.radians {
            self.theta / std::f64::consts::TAU
        } else {
            self.theta
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Inspect gauge structures.
    Structure {
        #[command(subcommand)]
        command: StructureCommand,
    },
    /// Evaluate ω_θ on an algebra element.
    Expect {
        /// circle | bloch:a=<v> | two_body
        #[arg(long)]
        preset: String,
        #[command(flatten)]
        theta: ThetaArgs,
        /// Element expression, e.g. "U(1)+U(-1)" or "2*W(1,1/2)".
        #[arg(long)]
        element: String,
        #[arg(long)]
        csv: bool,
    },
    /// Table of ω_θ(U(λκ)·A) over a λ list: the non-regularity of U.
    Nonregularity {
        #[arg(long)]
        preset: String,
        #[command(flatten)]
        theta: ThetaArgs,
        #[arg(long)]
        element: String,
        /// Comma-separated rationals, e.g. "0,1/10,1/3".
        #[arg(long)]
        lambdas: String,
        #[arg(long)]
        csv: bool,
    },
    /// Symmetry-breaking verdicts.
    Symmetry {
        #[command(subcommand)]
        command: SymmetryCommand,
    },
    /// Ward-identity obstruction report for an observable charge.
    Ward {
        #[arg(long)]
        preset: String,
        #[command(flatten)]
        theta: ThetaArgs,
        /// Charge expression (must be observable and self-adjoint).
        #[arg(long = "Q")]
        q: String,
        #[arg(long)]
        csv: bool,
    },
    /// Sector energy spectra.
    Spectrum {
        #[command(subcommand)]
        command: SpectrumCommand,
    },
    /// Joint breaking + gap verdict for β^λ in the sector θ.
    GapReport {
        #[arg(long)]
        preset: String,
        #[command(flatten)]
        theta: ThetaArgs,
        /// λ of the adjoint automorphism Ad U(λκ), as a rational.
        #[arg(long)]
        lambda: String,
        /// Periodic potential file (`m re im` per line); period = the
        /// structure's ξ.
        #[arg(long)]
        potential: Option<String>,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        /// Plane-wave truncation for the potential branch.
        #[arg(long, default_value_t = 64)]
        ntrunc: usize,
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Subcommand)]
enum StructureCommand {
    /// Print the observable lattice, gauge group, center, and units.
    Show {
        #[arg(long)]
        preset: String,
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Subcommand)]
enum SymmetryCommand {
    /// Is Ad W(λ, b₀) broken in the θ sectors of this structure?
    Check {
        #[arg(long)]
        preset: String,
        /// λ (rational): the U-part of the adjoint generator.
        #[arg(long)]
        lambda: String,
        /// b₀ (rational): optional V-part of the adjoint generator.
        #[arg(long)]
        b0: Option<String>,
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Subcommand)]
enum SpectrumCommand {
    /// Closed-form circle spectrum (n + θ/2π)²/2m.
    Circle {
        #[command(flatten)]
        theta: ThetaArgs,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        /// Number of lowest levels to print.
        #[arg(long, default_value_t = 8)]
        levels: usize,
        #[arg(long)]
        csv: bool,
    },
    /// Bloch bands from the truncated plane-wave Hamiltonian.
    Bloch {
        /// Lattice period a.
        #[arg(long)]
        a: f64,
        /// Potential file: lines `m re(w_m) im(w_m)`, m ≥ 0.
        #[arg(long)]
        potential: String,
        /// Number of θ grid points in [0, 1).
        #[arg(long = "theta-grid", default_value_t = 64)]
        theta_grid: usize,
        /// Number of lowest bands per θ.
        #[arg(long, default_value_t = 5)]
        bands: usize,
        /// Plane-wave truncation N (basis n ∈ [−N, N]).
        #[arg(long, default_value_t = 64)]
        ntrunc: usize,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        #[arg(long)]
        csv: bool,
    },
}

fn parse_rational(text: &str, what: &str) -> Result<Rational, CliError> {
    text.parse()
        .map_err(|e| CliError::input(format!("cannot parse {what} `{text}`: {e}")))
}

fn parse_lambda_list(text: &str) -> Result<Vec<Rational>, CliError> {
    text.split(',')
        .map(|part| parse_rational(part.trim(), "lambda"))
        .collect()
}

/// Parse a 1-d element expression and embed it along dimension 0 of the
/// structure (identity on the remaining dimensions).
fn parse_embedded(text: &str, structure: &GaugeStructure) -> Result<AlgebraElement, CliError> {
    let element = parse_element(text)?;
    if structure.dims == 1 {
        Ok(element)
    } else {
        Ok(element.embed(structure.dims, 0)?)
    }
}

fn lattice_json(l: &weylgauge::ObservableLattice) -> Value {
    match l {
        weylgauge::ObservableLattice::Spacing(s) => {
            json!({ "type": "spacing", "spacing": s.to_string() })
        }
        weylgauge::ObservableLattice::All => json!({ "type": "all" }),
        weylgauge::ObservableLattice::OnlyZero => json!({ "type": "zero" }),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Structure { command } => match command {
            StructureCommand::Show { preset, csv } => structure_show(&preset, csv),
        },
        Command::Expect {
            preset,
            theta,
            element,
            csv,
        } => expect_cmd(&preset, theta.turns(), &element, csv),
        Command::Nonregularity {
            preset,
            theta,
            element,
            lambdas,
            csv,
        } => nonregularity_cmd(&preset, theta.turns(), &element, &lambdas, csv),
        Command::Symmetry { command } => match command {
            SymmetryCommand::Check {
                preset,
                lambda,
                b0,
                csv,
            } => symmetry_check(&preset, &lambda, b0.as_deref(), csv),
        },
        Command::Ward {
            preset,
            theta,
            q,
            csv,
        } => ward_cmd(&preset, theta.turns(), &q, csv),
        Command::Spectrum { command } => match command {
            SpectrumCommand::Circle {
                theta,
                mass,
                levels,
                csv,
            } => spectrum_circle(theta.turns(), mass, levels, csv),
            SpectrumCommand::Bloch {
                a,
                potential,
                theta_grid,
                bands,
                ntrunc,
                mass,
                csv,
            } => spectrum_bloch(a, &potential, theta_grid, bands, ntrunc, mass, csv),
        },
        Command::GapReport {
            preset,
            theta,
            lambda,
            potential,
            mass,
            ntrunc,
            csv,
        } => gap_report_cmd(
            &preset,
            theta.turns(),
            &lambda,
            potential.as_deref(),
            mass,
            ntrunc,
            csv,
        ),
    }
}

fn structure_show(preset: &str, csv: bool) -> Result<(), CliError> {
    let s = GaugeStructure::preset(preset)?;
    if csv {
        let lattices: Vec<String> = s
            .observable_u_lattice
            .iter()
            .map(|l| l.to_string())
            .collect();
        let gauge: Vec<String> = s.gauge_generators.iter().map(|g| g.to_string()).collect();
        let center: Vec<String> = s
            .center_generators
            .iter()
            .map(|c| format!("{} ({})", c, s.display_label(c)))
            .collect();
        print_csv_pairs(&[
            ("name", s.name.clone()),
            ("dims", s.dims.to_string()),
            (
                "kappa",
                s.unit_kappa
                    .iter()
                    .map(|k| fmt_f64(*k))
                    .collect::<Vec<_>>()
                    .join(";"),
            ),
            (
                "xi",
                s.unit_xi
                    .iter()
                    .map(|x| fmt_f64(*x))
                    .collect::<Vec<_>>()
                    .join(";"),
            ),
            ("observable_u_lattice", lattices.join(";")),
            ("gauge_generators", gauge.join(";")),
            ("center_generators", center.join(";")),
        ]);
        return Ok(());
    }
    let report = json!({
        "schema": 1,
        "name": s.name,
        "dims": s.dims,
        "kappa": s.unit_kappa.iter().map(|k| json_f64(*k)).collect::<Vec<_>>(),
        "xi": s.unit_xi.iter().map(|x| json_f64(*x)).collect::<Vec<_>>(),
        "observable_u_lattice": s.observable_u_lattice.iter().map(lattice_json).collect::<Vec<_>>(),
        "gauge_generators": s.gauge_generators.iter().map(|g| json!({
            "label": g.to_string(),
            "display": s.display_label(g),
        })).collect::<Vec<_>>(),
        "center_generators": s.center_generators.iter().map(|c| json!({
            "label": c.to_string(),
            "display": s.display_label(c),
        })).collect::<Vec<_>>(),
    });
    print_json(&report);
    Ok(())
}

fn expect_cmd(preset: &str, theta: f64, element: &str, csv: bool) -> Result<(), CliError> {
    let s = GaugeStructure::preset(preset)?;
    let a = parse_embedded(element, &s)?;
    let state = ThetaState::uniform(s.clone(), theta);
    let value = state.expect(&a)?;
    let observable = s.is_observable(&a)?;
    if csv {
        print_csv_pairs(&[
            ("preset", s.name.clone()),
            ("theta_turns", fmt_f64(theta.rem_euclid(1.0))),
            ("element", a.to_string()),
            ("observable", observable.to_string()),
            ("re", fmt_f64(value.re)),
            ("im", fmt_f64(value.im)),
        ]);
        return Ok(());
    }
    let report = json!({
        "schema": 1,
        "preset": s.name,
        "theta_turns": json_f64(theta.rem_euclid(1.0)),
        "element": a.to_string(),
        "observable": observable,
        "value": json_complex(value),
    });
    print_json(&report);
    Ok(())
}

fn nonregularity_cmd(
    preset: &str,
    theta: f64,
    element: &str,
    lambdas: &str,
    csv: bool,
) -> Result<(), CliError> {
    let s = GaugeStructure::preset(preset)?;
    let a = parse_embedded(element, &s)?;
    let lambdas = parse_lambda_list(lambdas)?;
    let state = ThetaState::uniform(s.clone(), theta);
    // Scan along the gauge direction, where U(λκ) moves the sector.
    let dim = s.gauge_dims().first().copied().unwrap_or(0);
    let table = state.nonregularity_scan(&a, &lambdas, dim)?;
    if csv {
        out_line("lambda,re,im");
        for (lambda, value) in &table {
            out_line(&format!(
                "{},{},{}",
                lambda,
                fmt_f64(value.re),
                fmt_f64(value.im)
            ));
        }
        return Ok(());
    }
    let report = json!({
        "schema": 1,
        "preset": s.name,
        "theta_turns": json_f64(theta.rem_euclid(1.0)),
        "element": a.to_string(),
        "scan_dimension": dim,
        "table": table.iter().map(|(lambda, value)| json!({
            "lambda": lambda.to_string(),
            "value": json_complex(*value),
        })).collect::<Vec<_>>(),
    });
    print_json(&report);
    Ok(())
}

fn symmetry_check(preset: &str, lambda: &str, b0: Option<&str>, csv: bool) -> Result<(), CliError> {
    let s = GaugeStructure::preset(preset)?;
    let lambda = parse_rational(lambda, "lambda")?;
    let b0 = match b0 {
        Some(text) => parse_rational(text, "b0")?,
        None => Rational::ZERO,
    };
    let dim = s.gauge_dims().first().copied().unwrap_or(0);
    let mut u = vec![Rational::ZERO; s.dims];
    let mut b = vec![Rational::ZERO; s.dims];
    u[dim] = lambda;
    b[dim] = b0;
    let label = weylgauge::WeylLabel::new(u, b)?;
    let verdict = is_broken(&Automorphism::adjoint_label(label), &s)?;
    let witness = verdict.witness.as_ref().map(|w| s.display_label(w));
    if csv {
        print_csv_pairs(&[
            ("preset", s.name.clone()),
            ("lambda", lambda.to_string()),
            ("b0", b0.to_string()),
            ("broken", verdict.broken.to_string()),
            ("sector_shift", verdict.sector_shift.to_string()),
            ("witness", witness.unwrap_or_default()),
        ]);
        return Ok(());
    }
    let report = json!({
        "schema": 1,
        "preset": s.name,
        "lambda": lambda.to_string(),
        "b0": b0.to_string(),
        "broken": verdict.broken,
        "sector_shift": json_shift(&verdict.sector_shift),
        "witness": witness.map(Value::String).unwrap_or(Value::Null),
        "order_parameter_samples": verdict.order_parameter_samples.iter().map(
            |(center, before, after)| json!({
                "center": s.display_label(center),
                "before": json_complex(*before),
                "after": json_complex(*after),
            })
        ).collect::<Vec<_>>(),
    });
    print_json(&report);
    Ok(())
}

fn ward_cmd(preset: &str, theta: f64, q_text: &str, csv: bool) -> Result<(), CliError> {
    let s = GaugeStructure::preset(preset)?;
    let q = parse_embedded(q_text, &s)?;
    let state = ThetaState::uniform(s.clone(), theta);
    let report = ward_obstruction(&state, &q, &s)?;
    if csv {
        let mut rows: Vec<(&str, String)> = vec![
            ("preset", s.name.clone()),
            ("Q", q.to_string()),
            (
                "self_adjoint_residual",
                fmt_f64(report.self_adjoint_residual),
            ),
            ("obstruction_holds", report.obstruction_holds.to_string()),
        ];
        let shifts: Vec<String> = report
            .generator_shifts
            .iter()
            .map(|(l, shift)| format!("{l}:{shift}"))
            .collect();
        rows.push(("generator_shifts", shifts.join(";")));
        let phases: Vec<String> = report
            .central_phases
            .iter()
            .map(|(l, center, turn)| format!("{l}|{center}:{turn}"))
            .collect();
        rows.push(("central_phase_turns", phases.join(";")));
        print_csv_pairs(&rows);
        return Ok(());
    }
    let value = json!({
        "schema": 1,
        "preset": s.name,
        "theta_turns": json_f64(theta.rem_euclid(1.0)),
        "Q": q.to_string(),
        "observable": true,
        "self_adjoint_residual": json_f64(report.self_adjoint_residual),
        "generator_shifts": report.generator_shifts.iter().map(|(l, shift)| json!({
            "generator": l.to_string(),
            "shift": shift.to_string(),
        })).collect::<Vec<_>>(),
        "central_phases": report.central_phases.iter().map(|(l, center, turn)| json!({
            "generator": l.to_string(),
            "center": s.display_label(center),
            "phase_turns": turn.to_string(),
        })).collect::<Vec<_>>(),
        "commutator_expectations": report.commutator_expectations.iter().map(
            |(center, v)| json!({
                "center": s.display_label(center),
                "value": json_complex(*v),
            })
        ).collect::<Vec<_>>(),
        "obstruction_holds": report.obstruction_holds,
    });
    print_json(&value);
    Ok(())
}

fn spectrum_circle(theta: f64, mass: f64, levels: usize, csv: bool) -> Result<(), CliError> {
    if levels == 0 {
        return Err(CliError::input("--levels must be at least 1"));
    }
    let result = circle_spectrum(theta, mass, levels.max(1))?;
    let lowest: Vec<f64> = result.levels.iter().copied().take(levels).collect();
    if csv {
        out_line("level_index,energy");
        for (i, e) in lowest.iter().enumerate() {
            out_line(&format!("{},{}", i, fmt_f64(*e)));
        }
        return Ok(());
    }
    let report = json!({
        "schema": 1,
        "theta_turns": json_f64(result.theta_turns),
        "mass": json_f64(mass),
        "levels": lowest.iter().map(|e| json_f64(*e)).collect::<Vec<_>>(),
        "gap": json_f64(result.gap),
        "ground_energy": json_f64(result.levels[0]),
    });
    print_json(&report);
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn spectrum_bloch(
    a: f64,
    potential_path: &str,
    grid_points: usize,
    bands: usize,
    ntrunc: usize,
    mass: f64,
    csv: bool,
) -> Result<(), CliError> {
    if grid_points == 0 {
        return Err(CliError::input("--theta-grid must be at least 1"));
    }
    let text = fs::read_to_string(potential_path)
        .map_err(|e| CliError::input(format!("cannot read `{potential_path}`: {e}")))?;
    let potential = PotentialSpec::parse(a, &text)?;
    let grid = weylgauge::theta_grid(grid_points);
    let results = bloch_bands(&grid, &potential, mass, ntrunc, bands)?;
    if csv {
        out_line("theta_turns,band_index,energy");
        for result in &results {
            for (band, energy) in result.levels.iter().enumerate() {
                out_line(&format!(
                    "{},{},{}",
                    fmt_f64(result.theta_turns),
                    band,
                    fmt_f64(*energy)
                ));
            }
        }
        return Ok(());
    }
    let report = json!({
        "schema": 1,
        "a": json_f64(a),
        "mass": json_f64(mass),
        "ntrunc": ntrunc,
        "bands": bands,
        "results": results.iter().map(|r| json!({
            "theta_turns": json_f64(r.theta_turns),
            "levels": r.levels.iter().map(|e| json_f64(*e)).collect::<Vec<_>>(),
            "gap": json_f64(r.gap),
            "residual_max": json_f64(r.residual_max),
        })).collect::<Vec<_>>(),
    });
    print_json(&report);
    Ok(())
}

fn gap_report_cmd(
    preset: &str,
    theta: f64,
    lambda: &str,
    potential_path: Option<&str>,
    mass: f64,
    ntrunc: usize,
    csv: bool,
) -> Result<(), CliError> {
    let s = GaugeStructure::preset(preset)?;
    let lambda = parse_rational(lambda, "lambda")?;
    let potential = match potential_path {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::input(format!("cannot read `{path}`: {e}")))?;
            // The file carries no period; the structure's ξ is the lattice
            // period in every preset.
            Some(PotentialSpec::parse(s.unit_xi[0], &text)?)
        }
        None => None,
    };
    let report = gap_report(&s, theta, potential.as_ref(), mass, lambda, ntrunc)?;
    if csv {
        print_csv_pairs(&[
            ("preset", s.name.clone()),
            ("theta_turns", fmt_f64(report.theta_turns)),
            ("lambda", report.lambda.to_string()),
            ("broken", report.broken.to_string()),
            ("sector_shift", report.sector_shift.to_string()),
            ("witness", report.witness.clone().unwrap_or_default()),
            ("E0", fmt_f64(report.ground_energy)),
            ("gap", fmt_f64(report.gap)),
            ("conclusion", report.conclusion.clone()),
        ]);
        return Ok(());
    }
    let value = json!({
        "schema": 1,
        "preset": s.name,
        "theta_turns": json_f64(report.theta_turns),
        "lambda": report.lambda.to_string(),
        "broken": report.broken,
        "sector_shift": json_shift(&report.sector_shift),
        "witness": report.witness.clone().map(Value::String).unwrap_or(Value::Null),
        "E0": json_f64(report.ground_energy),
        "gap": json_f64(report.gap),
        "conclusion": report.conclusion,
    });
    print_json(&value);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
