//! Numerov shooting solver for the radial equation
//! χ'' = (2m/ħ²)[V(r) + ħ²ℓ(ℓ+1)/(2mr²) − E]·χ.
//!
//! The eigenvalue is first bracketed by counting nodes of the outward
//! solution over the whole grid, then refined on the Numerov mismatch at the
//! outermost classical turning point. The solver knows nothing about the
//! perturbative expansion; it only sees V(r).

use std::io::Write;

use crate::error::{Error, Result};
use crate::model::{QuantumState, ScreeningSpec, UnitSystem};
use crate::potential::{centrifugal, evaluate_potential};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig<T> {
    /// Uniform grid spacing.
    pub step: T,
    pub r_max: T,
    pub energy_abs_tol: T,
    pub max_iterations: usize,
}

impl<T: Real> SolverConfig<T> {
    pub fn new(step: T, r_max: T, energy_abs_tol: T, max_iterations: usize) -> Result<Self> {
        if !(step > T::zero()) || !(r_max > step * T::lit(10.0)) {
            return Err(Error::InvalidArgument("need step > 0 and r_max >> step".into()));
        }
        if !(energy_abs_tol > T::zero()) || max_iterations == 0 {
            return Err(Error::InvalidArgument("tolerance and iteration limit must be positive".into()));
        }
        Ok(Self { step, r_max, energy_abs_tol, max_iterations })
    }

    /// Grid scaled to the Coulomb state of strength A: step = 10⁻³/β_N and
    /// r_max = 40·N²ħ²/(mA).
    pub fn coulomb_scaled(state: QuantumState, strength: T, units: &UnitSystem<T>) -> Self {
        let big_n = T::int(state.principal() as i128);
        let bohr = units.hbar() * units.hbar() / (units.mass() * strength);
        Self {
            step: T::lit(1e-3) * big_n * bohr,
            r_max: T::lit(40.0) * big_n * big_n * bohr,
            energy_abs_tol: T::lit(1e-9),
            max_iterations: 200,
        }
    }

    pub fn with_step(self, step: T) -> Self {
        Self { step, ..self }
    }

    fn grid_len(&self) -> usize {
        (self.r_max / self.step).round().to_usize().unwrap_or(0)
    }
}

/// Sampled bound state χ(r) on the solver grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialFunction<T> {
    pub grid: Vec<T>,
    pub values: Vec<T>,
    pub node_count: usize,
    pub energy: T,
    pub converged: bool,
}

impl<T: Real> RadialFunction<T> {
    /// Two whitespace-separated columns `r chi`, one grid point per line.
    pub fn write_two_column<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "# r chi  (E = {:.12e}, nodes = {})", self.energy.as_f64(), self.node_count)?;
        for (r, v) in self.grid.iter().zip(&self.values) {
            writeln!(out, "{:.10e} {:.10e}", r.as_f64(), v.as_f64())?;
        }
        Ok(())
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }
}

/// Potential-dependent data tabulated once per solve.
struct Tabulation<T> {
    h: T,
    /// (2m/ħ²)·V_eff(r_i); index 0 (r = 0) is unused.
    scaled_veff: Vec<T>,
    q: T,
    ell: u32,
    /// Near-origin behaviour r·V(r) ≈ −z + c0·r.
    z: T,
    c0: T,
}

const RESCALE_AT: f64 = 1e30;

impl<T: Real> Tabulation<T> {
    fn new<V: Fn(T) -> T>(
        potential: &V,
        state: QuantumState,
        units: &UnitSystem<T>,
        config: &SolverConfig<T>,
    ) -> Result<Self> {
        let m_pts = config.grid_len();
        if m_pts < 100 {
            return Err(Error::InvalidArgument("solver grid has fewer than 100 points".into()));
        }
        let h = config.step;
        let q = T::lit(2.0) * units.mass() / (units.hbar() * units.hbar());
        let mut scaled_veff = Vec::with_capacity(m_pts + 1);
        scaled_veff.push(T::zero());
        for i in 1..=m_pts {
            let r = h * T::int(i as i128);
            let v = potential(r) + centrifugal(r, state.ell, units);
            if !v.is_finite() {
                return Err(Error::InvalidArgument(format!("potential is not finite at r = {}", r.as_f64())));
            }
            scaled_veff.push(q * v);
        }
        let (ra, rb) = (h * T::lit(0.25), h * T::lit(0.5));
        let (ua, ub) = (ra * potential(ra), rb * potential(rb));
        let c0 = (ub - ua) / (rb - ra);
        let z = -(ua - c0 * ra);
        Ok(Self { h, scaled_veff, q, ell: state.ell, z, c0 })
    }

    fn len(&self) -> usize {
        self.scaled_veff.len()
    }

    fn numerov_c(&self, i: usize, e: T) -> T {
        let g = self.scaled_veff[i] - self.q * e;
        T::one() - self.h * self.h * g / T::lit(12.0)
    }

    /// Series start χ ≈ r^{ℓ+1}(1 + a₁r + a₂r²).
    fn start(&self, r: T, e: T) -> T {
        let lp1 = T::int(self.ell as i128 + 1);
        let a1 = -self.q * self.z / (T::lit(2.0) * lp1);
        let a2 = (-self.q * self.z * a1 + self.q * (self.c0 - e)) / T::int(4 * self.ell as i128 + 6);
        r.powi(self.ell as i32 + 1) * (T::one() + a1 * r + a2 * r * r)
    }

    /// Outward Numerov solution on indices 0..=last; returns values and the
    /// number of sign changes.
    fn outward(&self, e: T, last: usize) -> (Vec<T>, usize) {
        let mut y = vec![T::zero(); last + 1];
        y[1] = self.start(self.h, e);
        y[2] = self.start(self.h * T::lit(2.0), e);
        let mut nodes = 0;
        let big = T::lit(RESCALE_AT);
        let (mut c_prev, mut c_cur) = (self.numerov_c(1, e), self.numerov_c(2, e));
        for i in 2..last {
            let c_next = self.numerov_c(i + 1, e);
            y[i + 1] = ((T::lit(12.0) - T::lit(10.0) * c_cur) * y[i] - c_prev * y[i - 1]) / c_next;
            if (y[i + 1] < T::zero()) != (y[i] < T::zero()) && y[i] != T::zero() {
                nodes += 1;
            }
            if y[i + 1].abs() > big {
                let s = T::one() / big;
                y[..=i + 1].iter_mut().for_each(|v| *v = *v * s);
            }
            c_prev = c_cur;
            c_cur = c_next;
        }
        (y, nodes)
    }

    /// Inward Numerov solution on indices first..=M starting from χ(r_max) = 0.
    fn inward(&self, e: T, first: usize) -> Vec<T> {
        let last = self.len() - 1;
        let mut y = vec![T::zero(); last + 1];
        y[last - 1] = T::lit(1e-20);
        let big = T::lit(RESCALE_AT);
        let (mut c_next, mut c_cur) = (self.numerov_c(last, e), self.numerov_c(last - 1, e));
        for i in (first + 1..last).rev() {
            let c_prev = self.numerov_c(i - 1, e);
            y[i - 1] = ((T::lit(12.0) - T::lit(10.0) * c_cur) * y[i] - c_next * y[i + 1]) / c_prev;
            if y[i - 1].abs() > big {
                let s = T::one() / big;
                y[i - 1..].iter_mut().for_each(|v| *v = *v * s);
            }
            c_next = c_cur;
            c_cur = c_prev;
        }
        y
    }

    fn node_count(&self, e: T) -> usize {
        self.outward(e, self.len() - 1).1
    }

    /// Outermost grid index where E exceeds V_eff, kept clear of both ends.
    fn turning_point(&self, e: T) -> Option<usize> {
        let qe = self.q * e;
        let last = self.len() - 1;
        (1..last).rev().find(|&i| self.scaled_veff[i] < qe).map(|i| i.clamp(3, last - 10))
    }

    /// Numerov mismatch of the joined outward/inward solutions at index m.
    fn mismatch(&self, e: T, m: usize) -> T {
        let (yo, _) = self.outward(e, m + 1);
        let yi = self.inward(e, m - 1);
        let (po, pi) = (yo[m - 1] / yo[m], yi[m + 1] / yi[m]);
        (self.numerov_c(m - 1, e) * po + self.numerov_c(m + 1, e) * pi
            - (T::lit(12.0) - T::lit(10.0) * self.numerov_c(m, e)))
            / self.h
    }

    fn lowest_veff(&self) -> T {
        self.scaled_veff[1..].iter().fold(T::infinity(), |m, &v| m.min(v)) / self.q
    }
}

/// Interval [E_lo, E_hi] whose outward solutions carry n and n + 1 nodes.
pub fn energy_search_bracket<T, V>(
    potential: V,
    state: QuantumState,
    units: &UnitSystem<T>,
    config: &SolverConfig<T>,
) -> Result<(T, T)>
where
    T: Real,
    V: Fn(T) -> T,
{
    let tab = Tabulation::new(&potential, state, units, config)?;
    bracket(&tab, state, config)
}

fn bracket<T: Real>(tab: &Tabulation<T>, state: QuantumState, config: &SolverConfig<T>) -> Result<(T, T)> {
    let n = state.n as usize;
    let floor = tab.lowest_veff();
    if !(floor < T::zero()) {
        return Err(Error::NoBoundState(format!("effective potential is never negative (min {})", floor.as_f64())));
    }
    // just below the continuum threshold
    let mut hi = -T::epsilon() * floor.abs();
    if tab.node_count(hi) <= n {
        return Err(Error::NoBoundState(format!(
            "fewer than {} nodes below the continuum threshold for {state}",
            n + 1
        )));
    }
    let mut lo = floor;
    for _ in 0..config.max_iterations {
        let mid = T::lit(0.5) * (lo + hi);
        if tab.node_count(mid) <= n {
            lo = mid;
        } else {
            hi = mid;
        }
        let narrow = hi - lo <= T::lit(1e-4) * hi.abs().max(config.energy_abs_tol);
        if narrow && tab.node_count(lo) == n && tab.node_count(hi) == n + 1 {
            return Ok((lo, hi));
        }
    }
    Err(Error::IterationLimit { lo: lo.as_f64(), hi: hi.as_f64() })
}

/// Bound state with `state.n` nodes of V(r) plus the centrifugal barrier.
pub fn solve_bound_state<T, V>(
    potential: V,
    state: QuantumState,
    units: &UnitSystem<T>,
    config: &SolverConfig<T>,
) -> Result<RadialFunction<T>>
where
    T: Real,
    V: Fn(T) -> T,
{
    let tab = Tabulation::new(&potential, state, units, config)?;
    let (mut lo, mut hi) = bracket(&tab, state, config)?;
    let m = tab
        .turning_point(T::lit(0.5) * (lo + hi))
        .ok_or_else(|| Error::NoBoundState("no classically allowed region".into()))?;

    let mut f_lo = tab.mismatch(lo, m);
    let mut f_hi = tab.mismatch(hi, m);
    let mut iterations = 0;
    let mut use_nodes = f_lo.is_nan() || f_hi.is_nan() || (f_lo > T::zero()) == (f_hi > T::zero());
    // Illinois regula falsi on the mismatch; node bisection when the mismatch
    // does not change sign across the bracket.
    let mut side = 0i8;
    while hi - lo > config.energy_abs_tol {
        iterations += 1;
        if iterations > config.max_iterations {
            return Err(Error::IterationLimit { lo: lo.as_f64(), hi: hi.as_f64() });
        }
        if use_nodes {
            let mid = T::lit(0.5) * (lo + hi);
            if tab.node_count(mid) <= state.n as usize {
                lo = mid;
            } else {
                hi = mid;
            }
            continue;
        }
        let mut e = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
        if !(e > lo && e < hi) {
            e = T::lit(0.5) * (lo + hi);
        }
        let f = tab.mismatch(e, m);
        if f.is_nan() {
            use_nodes = true;
            continue;
        }
        if f == T::zero() {
            lo = e;
            hi = e;
            break;
        }
        if (f > T::zero()) == (f_lo > T::zero()) {
            lo = e;
            f_lo = f;
            if side == -1 {
                f_hi = f_hi * T::lit(0.5);
            }
            side = -1;
        } else {
            hi = e;
            f_hi = f;
            if side == 1 {
                f_lo = f_lo * T::lit(0.5);
            }
            side = 1;
        }
        // guard against stalling on a flat side
        if iterations % 40 == 0 {
            use_nodes = true;
        }
    }
    let energy = T::lit(0.5) * (lo + hi);
    Ok(assemble(&tab, energy, m, state))
}

fn assemble<T: Real>(tab: &Tabulation<T>, energy: T, m: usize, state: QuantumState) -> RadialFunction<T> {
    let last = tab.len() - 1;
    let (yo, _) = tab.outward(energy, m);
    let yi = tab.inward(energy, m);
    let scale_in = yo[m] / yi[m];
    let mut values: Vec<T> = yo[..m].to_vec();
    values.extend(yi[m..].iter().map(|&v| v * scale_in));
    // Simpson over the uniform grid including r = 0 (χ = 0 there)
    let sq: Vec<T> = values.iter().map(|&v| v * v).collect();
    let mut s = sq[0] + sq[last];
    for (i, &v) in sq.iter().enumerate().take(last).skip(1) {
        s = s + v * if i % 2 == 1 { T::lit(4.0) } else { T::lit(2.0) };
    }
    let norm = (s * tab.h / T::lit(3.0)).sqrt();
    let sign = if values[1] < T::zero() { -T::one() } else { T::one() };
    let values: Vec<T> = values.iter().map(|&v| sign * v / norm).collect();
    let node_count = count_sign_changes(&values[1..]);
    let grid = (1..=last).map(|i| tab.h * T::int(i as i128)).collect();
    RadialFunction { grid, values: values[1..].to_vec(), node_count, energy, converged: node_count == state.n as usize }
}

fn count_sign_changes<T: Real>(values: &[T]) -> usize {
    // ignore the numerically zero tail
    let peak = values.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    let cutoff = peak * T::lit(1e-12);
    let mut prev = 0i8;
    let mut count = 0;
    for &v in values {
        if v.abs() <= cutoff {
            continue;
        }
        let s = if v > T::zero() { 1 } else { -1 };
        if prev != 0 && s != prev {
            count += 1;
        }
        prev = s;
    }
    count
}

/// Solves the cosine-screened (or any g) potential with the Coulomb-scaled default grid.
pub fn solve_screened<T: Real>(
    state: QuantumState,
    spec: &ScreeningSpec<T>,
    units: &UnitSystem<T>,
) -> Result<RadialFunction<T>> {
    let config = SolverConfig::coulomb_scaled(state, spec.strength, units);
    solve_screened_with(state, spec, units, &config)
}

pub fn solve_screened_with<T: Real>(
    state: QuantumState,
    spec: &ScreeningSpec<T>,
    units: &UnitSystem<T>,
    config: &SolverConfig<T>,
) -> Result<RadialFunction<T>> {
    let spec = *spec;
    solve_bound_state(move |r| evaluate_potential(r, &spec).unwrap_or_else(|_| T::nan()), state, units, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::SecondOrderVariant;
    use crate::perturbation::total_energy;

    fn coulomb(a: f64) -> impl Fn(f64) -> f64 {
        move |r| -a / r
    }

    fn atomic_config(state: QuantumState) -> SolverConfig<f64> {
        SolverConfig { energy_abs_tol: 1e-11, ..SolverConfig::coulomb_scaled(state, 1.0, &UnitSystem::atomic()) }
    }

    #[test]
    fn hydrogen_levels() {
        let u = UnitSystem::atomic();
        for (state, e) in
            [(QuantumState::new(0, 0), -0.5), (QuantumState::new(0, 1), -0.125), (QuantumState::new(1, 0), -0.125)]
        {
            let f = solve_bound_state(coulomb(1.0), state, &u, &atomic_config(state)).unwrap();
            assert!((f.energy - e).abs() < 1e-7, "{state}: {}", f.energy);
            assert!(f.converged);
            assert_eq!(f.node_count, state.n as usize);
        }
    }

    #[test]
    fn coulomb_exact_across_units_and_strengths() {
        for u in [UnitSystem::atomic(), UnitSystem::hbar2m(), UnitSystem::new(1.0, 1.0, "unit").unwrap()] {
            for a in [1.0, std::f64::consts::SQRT_2, 4.0] {
                for state in [QuantumState::new(0, 0), QuantumState::new(1, 1), QuantumState::new(2, 0)] {
                    let cfg = SolverConfig::coulomb_scaled(state, a, &u);
                    let exact = -u.mass() * a * a / (2.0 * u.hbar().powi(2) * f64::from(state.principal()).powi(2));
                    let got = solve_bound_state(coulomb(a), state, &u, &cfg).unwrap().energy;
                    assert!(((got - exact) / exact).abs() < 1e-6, "{state} A={a} {}: {got} vs {exact}", u.label());
                }
            }
        }
    }

    #[test]
    fn screened_ground_state() {
        let s = ScreeningSpec::<f64>::ecsc(1.0, 0.05).unwrap();
        let f = solve_screened(QuantumState::new(0, 0), &s, &UnitSystem::atomic()).unwrap();
        assert!((f.energy - -0.4501174).abs() < 2e-6, "{}", f.energy);
    }

    #[test]
    fn tracks_perturbation_theory_at_small_screening() {
        let u = UnitSystem::atomic();
        let state = QuantumState::new(0, 0);
        let s = ScreeningSpec::<f64>::ecsc(1.0, 0.1).unwrap();
        let pt = total_energy(state, &s, &u, SecondOrderVariant::default()).unwrap().total;
        let (lo, hi) =
            energy_search_bracket(|r| evaluate_potential(r, &s).unwrap(), state, &u, &atomic_config(state)).unwrap();
        assert!(lo < pt && pt < hi, "[{lo}, {hi}] vs {pt}");
    }

    #[test]
    fn repulsive_potential_has_no_bound_state() {
        let u = UnitSystem::atomic();
        let state = QuantumState::new(0, 0);
        let r = solve_bound_state(|r: f64| 1.0 / r, state, &u, &atomic_config(state));
        assert!(matches!(r, Err(Error::NoBoundState(_))));
    }

    #[test]
    fn vanished_level_is_reported() {
        let s = ScreeningSpec::<f64>::ecsc(1.0, 1.0).unwrap();
        let r = solve_screened(QuantumState::new(0, 2), &s, &UnitSystem::atomic());
        assert!(matches!(r, Err(Error::NoBoundState(_))));
    }

    #[test]
    fn energy_rises_with_screening() {
        let u = UnitSystem::atomic();
        let state = QuantumState::new(0, 0);
        let energies: Vec<f64> = (0..=5)
            .map(|i| {
                let s = ScreeningSpec::<f64>::ecsc(1.0, 0.02 * i as f64).unwrap();
                solve_screened(state, &s, &u).unwrap().energy
            })
            .collect();
        assert!(energies.windows(2).all(|w| w[0] < w[1]), "{energies:?}");
    }

    #[test]
    fn yukawa_reaches_coulomb_limit() {
        let u = UnitSystem::atomic();
        let s = ScreeningSpec::<f64>::yukawa(1.0, 1e-6).unwrap();
        let e = solve_screened(QuantumState::new(0, 0), &s, &u).unwrap().energy;
        assert!((e - -0.5).abs() < 1e-5, "{e}");
    }

    #[test]
    fn grid_refinement_is_stable() {
        let u = UnitSystem::atomic();
        let state = QuantumState::new(0, 0);
        let s = ScreeningSpec::<f64>::ecsc(1.0, 0.05).unwrap();
        let cfg = atomic_config(state);
        let coarse = solve_screened_with(state, &s, &u, &cfg).unwrap().energy;
        let fine = solve_screened_with(state, &s, &u, &cfg.with_step(cfg.step / 2.0)).unwrap().energy;
        assert!((coarse - fine).abs() < 1e-8, "{coarse} vs {fine}");
    }

    #[test]
    fn normalized_wavefunction() {
        let u = UnitSystem::atomic();
        let state = QuantumState::new(1, 0);
        let f = solve_bound_state(coulomb(1.0), state, &u, &atomic_config(state)).unwrap();
        let h = f.grid[1] - f.grid[0];
        let norm: f64 = f.values.iter().map(|v| v * v).sum::<f64>() * h;
        assert!((norm - 1.0).abs() < 1e-6);
        // compare with the analytic 2s function
        let chi = crate::coulomb::CoulombState::new(state, &ScreeningSpec::<f64>::ecsc(1.0, 0.0).unwrap(), &u);
        let i = f.grid.iter().position(|&r| r >= 1.0).unwrap();
        assert!((f.values[i] - chi.value(f.grid[i])).abs() < 1e-5);
    }

    #[test]
    fn two_column_dump() {
        let u = UnitSystem::atomic();
        let state = QuantumState::new(0, 0);
        let cfg = SolverConfig::new(0.01, 30.0, 1e-9, 200).unwrap();
        let f = solve_bound_state(coulomb(1.0), state, &u, &cfg).unwrap();
        let mut buf = Vec::new();
        f.write_two_column(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), f.grid.len() + 1);
        assert_eq!(text.lines().nth(1).unwrap().split_whitespace().count(), 2);
    }

    #[test]
    fn config_validation() {
        assert!(SolverConfig::new(0.0, 10.0, 1e-9, 10).is_err());
        assert!(SolverConfig::new(0.1, 0.5, 1e-9, 10).is_err());
        assert!(SolverConfig::new(0.01, 10.0, 0.0, 10).is_err());
        let tiny = SolverConfig::new(0.1, 5.0, 1e-9, 10).unwrap();
        let r = solve_bound_state(coulomb(1.0), QuantumState::new(0, 0), &UnitSystem::atomic(), &tiny);
        assert!(matches!(r, Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn single_precision_solve() {
        let u = UnitSystem::<f32>::atomic();
        let state = QuantumState::new(0, 0);
        // h²g/12 must stay well above f32 epsilon
        let cfg = SolverConfig::new(0.02f32, 30.0, 1e-6, 200).unwrap();
        let f = solve_bound_state(|r: f32| -1.0 / r, state, &u, &cfg).unwrap();
        assert!((f.energy + 0.5).abs() < 1e-3, "{}", f.energy);
    }
}
