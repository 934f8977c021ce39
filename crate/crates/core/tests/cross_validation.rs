use ecsc::oracle::{solve_screened, solve_screened_with, SolverConfig};
use ecsc::perturbation::{ground_wavefunction, superpotential_first, superpotential_second_ground, FirstOrderTerms};
use ecsc::quadrature::{integrate, total_energy_numeric, QuadratureSpec};
use ecsc::report::{scan_delta, ScanRequest};
use ecsc::{total_energy, QuantumState, Screening, SecondOrderVariant, Units};

const DEFAULT: SecondOrderVariant = SecondOrderVariant::Truncated;

fn states() -> Vec<QuantumState> {
    ["1s", "2s", "2p", "3s", "3p", "3d"].iter().map(|s| s.parse().unwrap()).collect()
}

#[test]
fn solver_agrees_with_closed_forms_at_weak_screening() {
    let u = Units::atomic();
    for st in states() {
        let s = Screening::ecsc(1.0, 0.01).unwrap();
        let solved = solve_screened(st, &s, &u).unwrap();
        let pt = total_energy(st, &s, &u, DEFAULT).unwrap().total;
        assert!(solved.converged);
        assert!((solved.energy - pt).abs() < 5e-7, "{st}: {} vs {pt}", solved.energy);
    }
}

#[test]
fn truncation_gap_shrinks_fast_with_screening() {
    let u = Units::atomic();
    let st = QuantumState::new(1, 0);
    let gap = |d: f64| {
        let s = Screening::ecsc(1.0, d).unwrap();
        let cfg = SolverConfig { energy_abs_tol: 1e-12, ..SolverConfig::coulomb_scaled(st, 1.0, &u) };
        (solve_screened_with(st, &s, &u, &cfg).unwrap().energy - total_energy(st, &s, &u, DEFAULT).unwrap().total).abs()
    };
    let (g1, g2) = (gap(0.02), gap(0.04));
    assert!(g2 / g1 > 16.0, "{g1:e} {g2:e}");
}

#[test]
fn hbar2m_units_track_the_solver() {
    let u = Units::hbar2m();
    for (st, a) in [(QuantumState::new(0, 0), 4.0), (QuantumState::new(0, 1), 8.0), (QuantumState::new(1, 0), 16.0)] {
        let s = Screening::ecsc(a, 0.2).unwrap();
        let solved = solve_screened(st, &s, &u).unwrap().energy;
        let pt = total_energy(st, &s, &u, DEFAULT).unwrap().total;
        assert!((solved - pt).abs() < 2e-4 * pt.abs(), "{st} A={a}: {solved} vs {pt}");
    }
}

/// u(r) = exp(P(r) + βr) against exp of −(√2m/ħ)∫₀^r (W⁽¹⁾ + W⁽²⁾) by quadrature.
#[test]
fn moderating_function_from_superpotential_integral() {
    let q = QuadratureSpec::default();
    for (ell, u, a) in [(0, Units::atomic(), 1.0), (1, Units::hbar2m(), 8.0)] {
        let s = Screening::ecsc(a, 0.1).unwrap();
        let psi = ground_wavefunction(ell, &s, &u).unwrap();
        let st = QuantumState::new(0, ell);
        let w = superpotential_first(st, &s, &u, FirstOrderTerms::All)
            .unwrap()
            .add(&superpotential_second_ground(ell, &s, &u).unwrap());
        let k = (2.0 * u.mass()).sqrt() / u.hbar();
        for i in 0..=20 {
            let r = 0.1 + 7.9 * i as f64 / 20.0;
            let integral = integrate(|x| w.eval(x), 0.0, r, &q).unwrap().value;
            let (direct, via_w) = (psi.log_moderation(r).exp(), (-k * integral).exp());
            assert!(((direct - via_w) / direct).abs() < 1e-6, "ℓ={ell} r={r}");
        }
    }
}

#[test]
fn perturbed_ground_state_resembles_solver_wavefunction() {
    let u = Units::atomic();
    let s = Screening::ecsc(1.0, 0.05).unwrap();
    let solved = solve_screened(QuantumState::new(0, 0), &s, &u).unwrap();
    let psi = ground_wavefunction(0, &s, &u).unwrap().renormalized(20.0).unwrap();
    let coulomb = ecsc::Coulomb::new(QuantumState::new(0, 0), &s, &u);
    let (mut worst_psi, mut worst_chi): (f64, f64) = (0.0, 0.0);
    for (r, v) in solved.grid.iter().zip(&solved.values).step_by(250).take_while(|(r, _)| **r < 10.0) {
        worst_psi = worst_psi.max((psi.value(*r) - v).abs());
        worst_chi = worst_chi.max((coulomb.value(*r) - v).abs());
    }
    assert!(worst_psi < 1e-4, "{worst_psi:e}");
    assert!(worst_psi < worst_chi / 10.0, "{worst_psi:e} vs {worst_chi:e}");
}

#[test]
fn quadrature_totals_sit_close_to_closed_forms() {
    let u = Units::atomic();
    let q = QuadratureSpec::default();
    for st in states() {
        let s = Screening::ecsc(1.0, 0.02).unwrap();
        let num = total_energy_numeric(st, &s, &u, DEFAULT, &q).unwrap().total;
        let closed = total_energy(st, &s, &u, DEFAULT).unwrap().total;
        // equal up to the truncation residual of the excited-state W⁽¹⁾
        assert!((num - closed).abs() < 1e-6, "{st}: {num} vs {closed}");
    }
}

#[test]
fn sweep_with_solver_column() {
    let rows = scan_delta(&ScanRequest {
        state: QuantumState::new(0, 0),
        strength: 1.0,
        units: Units::atomic(),
        delta_start: 0.0,
        delta_end: 0.06,
        steps: 7,
        with_oracle: true,
        variant: DEFAULT,
    })
    .unwrap();
    assert_eq!(rows.len(), 7);
    for r in &rows {
        assert!(r.oracle_diff.unwrap().abs() <= 5e-6, "δ={}", r.delta);
        if r.delta > 0.0 {
            assert!(r.paper_diff.unwrap().abs() < 1e-6);
        }
    }
}
