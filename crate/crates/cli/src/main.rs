use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ecsc::oracle::{solve_screened_with, SolverConfig};
use ecsc::perturbation::ground_wavefunction;
use ecsc::report::{self, emit_scan, emit_table, paper_reference, Format, ScanRequest, TableId};
use ecsc::{total_energy, CoulombState, Error, QuantumState, ScreeningSpec, SecondOrderVariant, UnitSystem};

#[derive(Parser, Debug)]
#[command(name = "ecsc", version, about = "Bound states of the exponential-cosine-screened Coulomb potential")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Perturbative energy of one state, optionally checked by the shooting solver.
    Energy(PointArgs),
    /// Recompute a published table; exits 1 when a cell misses its gate.
    Table {
        /// T1 … T6
        id: TableId,
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long, default_value = "eq27")]
        variant: SecondOrderVariant,
    },
    /// Sweep δ and compare closed forms, quadrature and (optionally) the solver.
    Scan {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value_t = 0.0)]
        delta_start: f64,
        #[arg(long, default_value_t = 0.1)]
        delta_end: f64,
        #[arg(long, default_value_t = 11)]
        steps: usize,
        /// Single δ; overrides the range.
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        with_oracle: bool,
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long, default_value = "eq27")]
        variant: SecondOrderVariant,
    },
    /// Sample the Coulomb and perturbed radial functions.
    Wavefunction {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, default_value_t = 20.0)]
        r_max: f64,
        #[arg(long, default_value_t = 200)]
        points: usize,
    },
    /// Shooting-method eigenvalue only.
    Oracle {
        #[command(flatten)]
        point: PointArgs,
        /// Grid spacing; defaults to a Coulomb-scaled value.
        #[arg(long)]
        step: Option<f64>,
        #[arg(long)]
        r_max: Option<f64>,
        /// Also write the solution as two columns `r chi`.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
struct SystemArgs {
    #[arg(long, default_value = "1s")]
    state: QuantumState,
    #[arg(long = "A", default_value_t = 1.0)]
    strength: f64,
    /// atomic | hbar2m | custom:<hbar>,<mass>
    #[arg(long, default_value = "atomic")]
    units: UnitSystem<f64>,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    #[arg(long, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct PointArgs {
    #[command(flatten)]
    system: SystemArgs,
    #[arg(long, default_value_t = 0.0)]
    delta: f64,
    #[arg(long, default_value = "eq27")]
    variant: SecondOrderVariant,
    #[arg(long)]
    with_oracle: bool,
    #[command(flatten)]
    out: OutputArgs,
}

impl PointArgs {
    fn screening(&self) -> ecsc::Result<ScreeningSpec<f64>> {
        ScreeningSpec::ecsc(self.system.strength, self.delta)
    }
}

fn open(out: &OutputArgs) -> ecsc::Result<Box<dyn Write>> {
    Ok(match &out.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

enum Outcome {
    Pass,
    GateFailure,
}

fn run(cli: Cli) -> ecsc::Result<Outcome> {
    match cli.command {
        Command::Energy(p) => energy(&p),
        Command::Table { id, out, variant } => {
            let artifact = report::reproduce_table_with(id, variant)?;
            let mut w = open(&out)?;
            emit_table(&artifact, out.format, &mut w)?;
            w.flush()?;
            for row in artifact.failures() {
                eprintln!(
                    "{id}: {} at {} = {}: computed {:.9} vs printed {} (|diff| {:.2e} > {:.0e})",
                    row.cell.state,
                    if id == TableId::T5 { "G" } else { "δ" },
                    row.cell.parameter,
                    row.computed(),
                    row.cell.value,
                    row.diff.abs(),
                    artifact.gate
                );
            }
            Ok(if artifact.passes() { Outcome::Pass } else { Outcome::GateFailure })
        }
        Command::Scan { system, delta_start, delta_end, steps, delta, with_oracle, out, variant } => {
            let (delta_start, delta_end, steps) = match delta {
                Some(d) => (d, d, 1),
                None => (delta_start, delta_end, steps),
            };
            let rows = report::scan_delta(&ScanRequest {
                state: system.state,
                strength: system.strength,
                units: system.units,
                delta_start,
                delta_end,
                steps,
                with_oracle,
                variant,
            })?;
            let mut w = open(&out)?;
            emit_scan(&rows, out.format, &mut w)?;
            w.flush()?;
            Ok(Outcome::Pass)
        }
        Command::Wavefunction { point, r_max, points } => wavefunction(&point, r_max, points),
        Command::Oracle { point, step, r_max, dump } => oracle(&point, step, r_max, dump),
    }
}

fn solver_config(p: &PointArgs, step: Option<f64>, r_max: Option<f64>) -> ecsc::Result<SolverConfig<f64>> {
    let base = SolverConfig {
        energy_abs_tol: 1e-10,
        ..SolverConfig::coulomb_scaled(p.system.state, p.system.strength, &p.system.units)
    };
    SolverConfig::new(step.unwrap_or(base.step), r_max.unwrap_or(base.r_max), base.energy_abs_tol, base.max_iterations)
}

fn energy(p: &PointArgs) -> ecsc::Result<Outcome> {
    let spec = p.screening()?;
    let units = &p.system.units;
    let state = p.system.state;
    let b = total_energy(state, &spec, units, p.variant)?;
    let oracle = if p.with_oracle {
        Some(solve_screened_with(state, &spec, units, &solver_config(p, None, None)?)?.energy)
    } else {
        None
    };
    let paper = paper_reference(state, spec.strength, units, spec.delta);
    let opt = |x: Option<f64>| x.map(report::emit::sig9).unwrap_or_default();
    let mut w = open(&p.out)?;
    let cols = ["state", "A", "delta", "units", "variant", "E0", "A_delta", "E1", "E2", "total", "E_oracle", "E_paper"];
    let vals = [
        state.to_string(),
        spec.strength.to_string(),
        spec.delta.to_string(),
        units.label().to_string(),
        if b.first_order_only { format!("{} (first order only)", b.variant) } else { b.variant.to_string() },
        report::emit::sig9(b.e0),
        report::emit::sig9(b.linear_shift),
        report::emit::sig9(b.e1),
        report::emit::sig9(b.e2),
        report::emit::sig9(b.total),
        opt(oracle),
        opt(paper),
    ];
    match p.out.format {
        Format::Csv => {
            writeln!(w, "{}", cols.join(","))?;
            writeln!(w, "{}", vals.join(","))?;
        }
        Format::Markdown => {
            writeln!(w, "| quantity | value |\n|---|---|")?;
            for (c, v) in cols.iter().zip(&vals) {
                writeln!(w, "| {c} | {v} |")?;
            }
        }
    }
    w.flush()?;
    Ok(Outcome::Pass)
}

fn wavefunction(p: &PointArgs, r_max: f64, points: usize) -> ecsc::Result<Outcome> {
    if r_max.is_nan() || r_max <= 0.0 || points < 2 {
        return Err(Error::InvalidArgument("need r_max > 0 and at least 2 points".into()));
    }
    let spec = p.screening()?;
    let units = &p.system.units;
    let state = p.system.state;
    let chi = CoulombState::new(state, &spec, units);
    let psi = if state.n == 0 { Some(ground_wavefunction(state.ell, &spec, units)?) } else { None };
    let solved = if p.with_oracle {
        Some(solve_screened_with(state, &spec, units, &solver_config(p, None, None)?)?)
    } else {
        None
    };
    let sample_oracle = |r: f64| -> Option<f64> {
        let f = solved.as_ref()?;
        let h = f.grid[1] - f.grid[0];
        let x = r / h - 1.0;
        if x < 0.0 {
            return Some(f.values[0] * r / f.grid[0]);
        }
        let i = x.floor() as usize;
        let (a, b) = (*f.values.get(i)?, *f.values.get(i + 1)?);
        Some(a + (b - a) * (x - i as f64))
    };
    let mut w = open(&p.out)?;
    let header = ["r", "chi_coulomb", "psi_perturbed", "chi_oracle"];
    let md = p.out.format == Format::Markdown;
    if md {
        writeln!(w, "| {} |\n|---|---|---|---|", header.join(" | "))?;
    } else {
        writeln!(w, "{}", header.join(","))?;
    }
    let opt = |x: Option<f64>| x.map(report::emit::sig9).unwrap_or_default();
    for i in 1..=points {
        let r = r_max * i as f64 / points as f64;
        let vals = [
            report::emit::sig9(r),
            report::emit::sig9(chi.value(r)),
            opt(psi.as_ref().map(|g| g.value(r))),
            opt(sample_oracle(r)),
        ];
        if md {
            writeln!(w, "| {} |", vals.join(" | "))?;
        } else {
            writeln!(w, "{}", vals.join(","))?;
        }
    }
    w.flush()?;
    Ok(Outcome::Pass)
}

fn oracle(p: &PointArgs, step: Option<f64>, r_max: Option<f64>, dump: Option<PathBuf>) -> ecsc::Result<Outcome> {
    let spec = p.screening()?;
    let units = &p.system.units;
    let state = p.system.state;
    let f = solve_screened_with(state, &spec, units, &solver_config(p, step, r_max)?)?;
    let analytic = total_energy(state, &spec, units, p.variant)?.total;
    if let Some(path) = dump {
        f.write_two_column(BufWriter::new(File::create(path)?))?;
    }
    let mut w = open(&p.out)?;
    let cols = ["state", "A", "delta", "E_oracle", "nodes", "converged", "E_analytic", "diff"];
    let vals = [
        state.to_string(),
        spec.strength.to_string(),
        spec.delta.to_string(),
        report::emit::sig9(f.energy),
        f.node_count.to_string(),
        f.converged.to_string(),
        report::emit::sig9(analytic),
        report::emit::sig9(f.energy - analytic),
    ];
    match p.out.format {
        Format::Csv => writeln!(w, "{}\n{}", cols.join(","), vals.join(","))?,
        Format::Markdown => {
            writeln!(w, "| {} |\n|{}\n| {} |", cols.join(" | "), "---|".repeat(cols.len()), vals.join(" | "))?
        }
    }
    w.flush()?;
    Ok(if f.converged { Outcome::Pass } else { Outcome::GateFailure })
}

fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidUnits(_)
            | Error::InvalidState(_)
            | Error::InvalidScreening(_)
            | Error::InvalidArgument(_)
            | Error::NonPositiveRadius(_)
            | Error::UnsupportedExpansion(_)
            | Error::UnsupportedState { .. }
    )
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::GateFailure) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if is_usage(&e) { 2 } else { 1 })
        }
    }
}
