//! Numerical evaluation of the perturbation integrals over the Coulomb basis.
//!
//! Everything here goes through quadrature of χ²(r)·f(r) and never touches the
//! closed forms, so it serves as an independent check of them.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::coulomb::CoulombState;
use crate::error::{Error, Result};
use crate::model::{EnergyBreakdown, QuantumState, ScreeningSpec, SecondOrderVariant, UnitSystem};
use crate::perturbation::{self, FirstOrderTerms};
use crate::potential::require_cosine;
use crate::scalar::{powu, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// Global adaptive 7/15-point Gauss–Kronrod on [0, r_max].
    Adaptive,
    /// Gauss–Laguerre on the e^{−2βr} weight; the error estimate compares
    /// `nodes` against `nodes + 8` points.
    GaussLaguerre { nodes: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec<T> {
    pub scheme: Scheme,
    pub rel_tol: T,
    /// Cutoff of the radial range in units of 1/β.
    pub r_max_factor: T,
    pub max_subdivisions: usize,
}

impl<T: Real> Default for QuadratureSpec<T> {
    fn default() -> Self {
        Self { scheme: Scheme::Adaptive, rel_tol: T::lit(1e-10), r_max_factor: T::lit(40.0), max_subdivisions: 4000 }
    }
}

impl<T: Real> QuadratureSpec<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > T::zero()) {
            return Err(Error::InvalidArgument("rel_tol must be positive".into()));
        }
        if !(self.r_max_factor >= T::lit(20.0)) {
            return Err(Error::InvalidArgument("r_max_factor must be at least 20".into()));
        }
        if let Scheme::GaussLaguerre { nodes } = self.scheme {
            if !(2..=150).contains(&nodes) {
                return Err(Error::InvalidArgument("Gauss-Laguerre node count must be in 2..=150".into()));
            }
        }
        Ok(())
    }
}

/// Integral value with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub error: T,
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

struct Segment<T> {
    a: T,
    b: T,
    value: T,
    error: T,
    abs_value: T,
}

impl<T: Real> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T: Real> Eq for Segment<T> {}
impl<T: Real> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Real> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.partial_cmp(&other.error).unwrap_or(Ordering::Equal)
    }
}

fn kronrod<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T) -> Segment<T> {
    let half = T::lit(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);
    let fc = f(center);
    let mut gauss = fc * T::lit(WG[3]);
    let mut kron = fc * T::lit(WGK[7]);
    let mut abs_value = fc.abs() * T::lit(WGK[7]);
    for j in 0..7 {
        let dx = half_len * T::lit(XGK[j]);
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        kron = kron + T::lit(WGK[j]) * (f1 + f2);
        abs_value = abs_value + T::lit(WGK[j]) * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss = gauss + T::lit(WG[j / 2]) * (f1 + f2);
        }
    }
    let value = kron * half_len;
    let abs_value = abs_value * half_len.abs();
    let raw = ((kron - gauss) * half_len).abs();
    // QUADPACK-style rescaling: the 7-point difference grossly overestimates
    // the 15-point error on smooth integrands.
    let error = if raw > T::zero() && abs_value > T::zero() {
        let scale = (T::lit(200.0) * raw / abs_value).powf(T::lit(1.5));
        abs_value * if scale < T::one() { scale } else { T::one() }
    } else {
        raw
    };
    let floor = T::lit(50.0) * T::epsilon() * abs_value;
    Segment { a, b, value, error: if error > floor { error } else { floor }, abs_value }
}

/// Adaptive Gauss–Kronrod integral of `f` over [a, b], starting from
/// `initial_pieces` equal subintervals.
pub fn integrate_pieces<T, F>(f: F, a: T, b: T, initial_pieces: usize, spec: &QuadratureSpec<T>) -> Result<Estimate<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    if a == b {
        return Ok(Estimate { value: T::zero(), error: T::zero() });
    }
    let pieces = initial_pieces.max(1);
    let width = (b - a) / T::int(pieces as i128);
    let mut heap = BinaryHeap::with_capacity(spec.max_subdivisions + pieces);
    for i in 0..pieces {
        let lo = a + width * T::int(i as i128);
        let hi = if i + 1 == pieces { b } else { lo + width };
        heap.push(kronrod(&f, lo, hi));
    }
    let totals = |heap: &BinaryHeap<Segment<T>>| {
        heap.iter()
            .fold((T::zero(), T::zero(), T::zero()), |(v, e, s), seg| (v + seg.value, e + seg.error, s + seg.abs_value))
    };
    loop {
        let (value, error, abs_total) = totals(&heap);
        let roundoff = T::lit(50.0) * T::epsilon() * abs_total;
        if error <= spec.rel_tol * value.abs() || error <= roundoff {
            return Ok(Estimate { value, error });
        }
        if heap.len() >= spec.max_subdivisions {
            return Err(Error::ToleranceNotMet { best: value.as_f64(), error_estimate: error.as_f64() });
        }
        let worst = heap.pop().expect("non-empty segment heap");
        let mid = T::lit(0.5) * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // interval exhausted at machine resolution
            heap.push(worst);
            let (value, error, _) = totals(&heap);
            return Err(Error::ToleranceNotMet { best: value.as_f64(), error_estimate: error.as_f64() });
        }
        heap.push(kronrod(&f, worst.a, mid));
        heap.push(kronrod(&f, mid, worst.b));
    }
}

pub fn integrate<T, F>(f: F, a: T, b: T, spec: &QuadratureSpec<T>) -> Result<Estimate<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    integrate_pieces(f, a, b, 8, spec)
}

/// Nodes and weights of the n-point Gauss–Laguerre rule for ∫₀^∞ e^{−x} g(x) dx.
pub fn gauss_laguerre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let nf = n as f64;
    let mut z = 0.0f64;
    for i in 0..n {
        // initial guesses after Stroud & Secrest
        z = match i {
            0 => 3.0 / (1.0 + 2.4 * nf),
            1 => z + 15.0 / (1.0 + 2.5 * nf),
            _ => {
                let ai = (i - 1) as f64;
                z + ((1.0 + 2.55 * ai) / (1.9 * ai)) * (z - nodes[i - 2])
            }
        };
        let mut dp = 0.0;
        for _ in 0..200 {
            let (mut p1, mut p2) = (1.0f64, 0.0f64);
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = ((2.0 * jf + 1.0 - z) * p2 - jf * p3) / (jf + 1.0);
            }
            dp = nf * (p1 - p2) / z;
            let step = p1 / dp;
            z -= step;
            if step.abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        nodes.push(z);
        // w = 1 / (x [L_n'(x)]²)
        weights.push(1.0 / (z * dp * dp));
    }
    (nodes, weights)
}

fn gauss_laguerre_density<T: Real, F: Fn(T) -> T>(chi: &CoulombState<T>, f: &F, n: usize) -> T {
    let (nodes, weights) = gauss_laguerre_rule(n);
    let two_beta = T::lit(2.0) * chi.beta();
    nodes
        .iter()
        .zip(&weights)
        .map(|(&x, &w)| {
            let r = T::lit(x) / two_beta;
            T::lit(w) * chi.density_polynomial_part(r) * f(r)
        })
        .fold(T::zero(), |a, b| a + b)
        / two_beta
}

/// ∫₀^∞ χ²(r)·f(r) dr for the Coulomb state.
pub fn integrate_density<T, F>(
    state: QuantumState,
    screening: &ScreeningSpec<T>,
    units: &UnitSystem<T>,
    f: F,
    quad: &QuadratureSpec<T>,
) -> Result<Estimate<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    let chi = CoulombState::new(state, screening, units);
    integrate_weighted(&chi, f, quad)
}

/// ∫₀^∞ χ²(r)·f(r) dr for a prepared Coulomb state.
pub fn integrate_weighted<T, F>(chi: &CoulombState<T>, f: F, quad: &QuadratureSpec<T>) -> Result<Estimate<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    quad.validate()?;
    match quad.scheme {
        Scheme::Adaptive => {
            let r_max = quad.r_max_factor / chi.beta();
            let pieces = 8 * (chi.state().n as usize + 2);
            let body = integrate_pieces(|r| chi.density(r) * f(r), T::zero(), r_max, pieces, quad)?;
            // χ²f decays at least like e^{−2βr}·poly beyond r_max
            let tail = (chi.density(r_max) * f(r_max)).abs() * r_max;
            Ok(Estimate { value: body.value, error: body.error + tail })
        }
        Scheme::GaussLaguerre { nodes } => {
            let coarse = gauss_laguerre_density(chi, &f, nodes);
            let fine = gauss_laguerre_density(chi, &f, nodes + 8);
            let error = (fine - coarse).abs();
            if error <= quad.rel_tol * fine.abs() || error <= T::lit(100.0) * T::epsilon() * fine.abs() {
                Ok(Estimate { value: fine, error })
            } else {
                Err(Error::ToleranceNotMet { best: fine.as_f64(), error_estimate: error.as_f64() })
            }
        }
    }
}

/// E⁽¹⁾ = ∫χ²·(−Aδ³r²/3) dr.
pub fn first_order_energy_numeric<T: Real>(
    state: QuantumState,
    screening: &ScreeningSpec<T>,
    units: &UnitSystem<T>,
    quad: &QuadratureSpec<T>,
) -> Result<Estimate<T>> {
    require_cosine(screening)?;
    let k = -screening.strength * powu(screening.delta, 3) / T::lit(3.0);
    integrate_density(state, screening, units, |r| k * r * r, quad)
}

/// The W-independent piece (Aδ⁴/6)⟨r³⟩ of E⁽²⁾.
pub fn second_order_quartic_numeric<T: Real>(
    state: QuantumState,
    screening: &ScreeningSpec<T>,
    units: &UnitSystem<T>,
    quad: &QuadratureSpec<T>,
) -> Result<Estimate<T>> {
    require_cosine(screening)?;
    let k = screening.strength * powu(screening.delta, 4) / T::lit(6.0);
    integrate_density(state, screening, units, |r| k * r * r * r, quad)
}

/// E⁽²⁾ = ∫χ²·[Aδ⁴r³/6 − W⁽¹⁾(r)²] dr for a supplied first-order superpotential.
pub fn second_order_energy_numeric<T, W>(
    state: QuantumState,
    screening: &ScreeningSpec<T>,
    units: &UnitSystem<T>,
    w1: W,
    quad: &QuadratureSpec<T>,
) -> Result<Estimate<T>>
where
    T: Real,
    W: Fn(T) -> T,
{
    require_cosine(screening)?;
    let k = screening.strength * powu(screening.delta, 4) / T::lit(6.0);
    integrate_density(
        state,
        screening,
        units,
        |r| {
            let w = w1(r);
            k * r * r * r - w * w
        },
        quad,
    )
}

/// W⁽¹⁾(r) = (√2m/ħ)·χ⁻²(r)·∫₀^r χ²(x)[E⁽¹⁾ + Aδ³x²/3] dx, evaluated by
/// quadrature for the node-free ground states.
#[derive(Debug, Clone)]
pub struct NumericSuperpotential<T> {
    chi: CoulombState<T>,
    e1: T,
    cubic: T,
    scale: T,
    quad: QuadratureSpec<T>,
}

impl<T: Real> NumericSuperpotential<T> {
    pub fn first_order_energy(&self) -> T {
        self.e1
    }

    pub fn at(&self, r: T) -> Result<T> {
        if !(r > T::zero()) {
            return Ok(T::zero());
        }
        let g = |x: T| self.chi.density(x) * (self.e1 + self.cubic * x * x);
        // ∫₀^∞ g = 0, so beyond the density peak integrate the tail instead
        // and avoid cancelling two nearly equal halves.
        let peak = T::int(self.chi.state().ell as i128 + 1) / self.chi.beta();
        let cumulative = if r <= peak {
            integrate_pieces(g, T::zero(), r, 4, &self.quad)?.value
        } else {
            let far = r + self.quad.r_max_factor / self.chi.beta();
            -integrate_pieces(g, r, far, 8, &self.quad)?.value
        };
        Ok(self.scale * cumulative / self.chi.density(r))
    }

    /// NaN where the quadrature misses its tolerance.
    pub fn value(&self, r: T) -> T {
        self.at(r).unwrap_or_else(|_| T::nan())
    }
}

pub fn superpotential_first_numeric<T: Real>(
    state: QuantumState,
    screening: &ScreeningSpec<T>,
    units: &UnitSystem<T>,
    quad: &QuadratureSpec<T>,
) -> Result<NumericSuperpotential<T>> {
    if state.n != 0 {
        return Err(Error::NodeSingularity { n: state.n });
    }
    require_cosine(screening)?;
    quad.validate()?;
    let e1 = first_order_energy_numeric(state, screening, units, quad)?.value;
    Ok(NumericSuperpotential {
        chi: CoulombState::new(state, screening, units),
        e1,
        cubic: screening.strength * powu(screening.delta, 3) / T::lit(3.0),
        scale: (T::lit(2.0) * units.mass()).sqrt() / units.hbar(),
        quad: *quad,
    })
}

/// Second-order energies obtained by quadrature with the available
/// first-order superpotentials, next to the closed forms.
#[derive(Debug, Clone, PartialEq)]
pub struct SecondOrderResidual<T> {
    pub state: QuantumState,
    /// With the full first-order superpotential (numeric for n = 0, three-term form otherwise).
    pub numeric_full: T,
    /// With the first two terms only; equals `numeric_full` for n = 0.
    pub numeric_truncated: T,
    pub closed_truncated: T,
    /// Only differs from `closed_truncated` for n = 1.
    pub closed_full: T,
}

impl<T: Real> SecondOrderResidual<T> {
    pub fn truncated_residual(&self) -> T {
        self.numeric_truncated - self.closed_truncated
    }

    pub fn full_residual(&self) -> T {
        self.numeric_full - self.closed_full
    }
}

pub fn second_order_residuals<T: Real>(
    state: QuantumState,
    screening: &ScreeningSpec<T>,
    units: &UnitSystem<T>,
    quad: &QuadratureSpec<T>,
) -> Result<SecondOrderResidual<T>> {
    let closed_truncated = perturbation::second_order_shift(state, screening, units, SecondOrderVariant::Truncated)?;
    let closed_full = perturbation::second_order_shift(state, screening, units, SecondOrderVariant::Full)?;
    let (numeric_full, numeric_truncated) = if state.n == 0 {
        let w = superpotential_first_numeric(state, screening, units, quad)?;
        let e = second_order_energy_numeric(state, screening, units, |r| w.value(r), quad)?.value;
        (e, e)
    } else {
        let full = perturbation::superpotential_first(state, screening, units, FirstOrderTerms::All)?;
        let two = perturbation::superpotential_first(state, screening, units, FirstOrderTerms::LeadingTwo)?;
        (
            second_order_energy_numeric(state, screening, units, |r| full.eval(r), quad)?.value,
            second_order_energy_numeric(state, screening, units, |r| two.eval(r), quad)?.value,
        )
    };
    Ok(SecondOrderResidual { state, numeric_full, numeric_truncated, closed_truncated, closed_full })
}

/// Total energy with E⁽¹⁾ and E⁽²⁾ both taken from quadrature. The n ≥ 1
/// second order uses the closed W⁽¹⁾ truncated according to `variant`; no
/// second order is attempted beyond n = 2.
pub fn total_energy_numeric<T: Real>(
    state: QuantumState,
    screening: &ScreeningSpec<T>,
    units: &UnitSystem<T>,
    variant: SecondOrderVariant,
    quad: &QuadratureSpec<T>,
) -> Result<EnergyBreakdown<T>> {
    let e0 = crate::coulomb::coulomb_energy(state, screening, units);
    let linear = screening.strength * screening.delta;
    let e1 = first_order_energy_numeric(state, screening, units, quad)?.value;
    let (e2, first_only) = match state.n {
        0 => {
            let w = superpotential_first_numeric(state, screening, units, quad)?;
            (second_order_energy_numeric(state, screening, units, |r| w.value(r), quad)?.value, false)
        }
        1 | 2 => {
            let w = perturbation::superpotential_first(state, screening, units, FirstOrderTerms::from(variant))?;
            (second_order_energy_numeric(state, screening, units, |r| w.eval(r), quad)?.value, false)
        }
        _ => (T::zero(), true),
    };
    Ok(EnergyBreakdown::new(e0, linear, e1, e2, variant, first_only))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type Spec = ScreeningSpec<f64>;

    fn atomic() -> UnitSystem<f64> {
        UnitSystem::atomic()
    }

    fn gl(nodes: usize) -> QuadratureSpec<f64> {
        QuadratureSpec { scheme: Scheme::GaussLaguerre { nodes }, ..QuadratureSpec::default() }
    }

    #[test]
    fn laguerre_rule_moments() {
        let (x, w) = gauss_laguerre_rule(20);
        let mut fact = 1.0;
        for k in 0..20 {
            if k > 0 {
                fact *= k as f64;
            }
            let got: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k)).sum();
            assert!((got - fact).abs() <= 1e-11 * fact, "k={k}: {got}");
        }
    }

    #[test]
    fn plain_integrals() {
        let q = QuadratureSpec::default();
        let e = integrate(|x: f64| x.sin(), 0.0, std::f64::consts::PI, &q).unwrap();
        assert!((e.value - 2.0).abs() < 1e-13);
        assert!(e.error < 1e-9);
        assert_eq!(integrate(|x: f64| x, 1.0, 1.0, &q).unwrap().value, 0.0);
        let starved = QuadratureSpec { max_subdivisions: 10, rel_tol: 1e-15, ..q };
        assert!(matches!(
            integrate_pieces(|x: f64| x.abs().sqrt(), -1.0, 1.0, 1, &starved),
            Err(Error::ToleranceNotMet { .. })
        ));
    }

    #[test]
    fn density_moments() {
        let s = Spec::ecsc(1.0, 0.0).unwrap();
        for q in [QuadratureSpec::default(), gl(40)] {
            for n in 0..3 {
                for ell in 0..3 {
                    let one = integrate_density(QuantumState::new(n, ell), &s, &atomic(), |_| 1.0, &q).unwrap();
                    assert!((one.value - 1.0).abs() < 1e-10);
                }
            }
            let r2 = |n| integrate_density(QuantumState::new(n, 0), &s, &atomic(), |r| r * r, &q).unwrap().value;
            assert!((r2(0) - 3.0).abs() < 1e-9);
            assert!((r2(1) - 42.0).abs() < 1e-8);
        }
    }

    #[test]
    fn first_order_against_closed_form() {
        let e = first_order_energy_numeric(
            QuantumState::new(1, 0),
            &Spec::ecsc(1.0, 0.05).unwrap(),
            &atomic(),
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!((e.value - -0.00175).abs() < 1e-11);
        for units in [atomic(), UnitSystem::hbar2m()] {
            for n in 0..3 {
                for ell in 0..4 {
                    let st = QuantumState::new(n, ell);
                    let s = Spec::ecsc(3.0, 0.1).unwrap();
                    let closed = perturbation::first_order_shift(st, &s, &units).unwrap();
                    for q in [QuadratureSpec::default(), gl(60)] {
                        let num = first_order_energy_numeric(st, &s, &units, &q).unwrap().value;
                        assert!(((num - closed) / closed).abs() < 1e-10, "{st}: {num} vs {closed}");
                    }
                }
            }
        }
    }

    #[test]
    fn quartic_term_isolation() {
        let q = QuadratureSpec::default();
        for n in 0..3 {
            for ell in 0..4 {
                let st = QuantumState::new(n, ell);
                let s = Spec::ecsc(1.0, 0.1).unwrap();
                let (d4, _) = perturbation::second_order_coefficients(st, SecondOrderVariant::Truncated).unwrap();
                let closed = d4 as f64 * 1e-4 / 24.0;
                let num = second_order_quartic_numeric(st, &s, &atomic(), &q).unwrap().value;
                assert!(((num - closed) / closed).abs() < 1e-10, "{st}: {num} vs {closed}");
            }
        }
    }

    #[test]
    fn numeric_superpotential_matches_closed_form() {
        let q = QuadratureSpec::default();
        for (ell, units, a) in [(0, atomic(), 1.0), (1, UnitSystem::hbar2m(), 8.0), (3, atomic(), 2.0)] {
            let st = QuantumState::new(0, ell);
            let s = Spec::ecsc(a, 0.1).unwrap();
            let w = superpotential_first_numeric(st, &s, &units, &q).unwrap();
            let closed = perturbation::superpotential_first(st, &s, &units, FirstOrderTerms::All).unwrap();
            for r in [0.05, 0.5, 2.0, 6.0, 15.0] {
                let (got, want) = (w.value(r), closed.eval(r));
                assert!((got - want).abs() <= 1e-8 * want.abs(), "ℓ={ell} r={r}: {got} vs {want}");
            }
            assert_eq!(w.value(0.0), 0.0);
        }
        assert!(matches!(
            superpotential_first_numeric(QuantumState::new(1, 0), &Spec::ecsc(1.0, 0.1).unwrap(), &atomic(), &q),
            Err(Error::NodeSingularity { n: 1 })
        ));
    }

    #[test]
    fn ground_second_order() {
        let q = QuadratureSpec::default();
        let st = QuantumState::new(0, 0);
        let s = Spec::ecsc(1.0, 0.1).unwrap();
        let w = perturbation::superpotential_first(st, &s, &atomic(), FirstOrderTerms::All).unwrap();
        let e = second_order_energy_numeric(st, &s, &atomic(), |r| w.eval(r), &q).unwrap();
        assert!((e.value - 1.2141667e-4).abs() < 1e-10);

        let h2m = UnitSystem::hbar2m();
        let st = QuantumState::new(0, 1);
        let s = Spec::ecsc(8.0, 0.2).unwrap();
        let w = superpotential_first_numeric(st, &s, &h2m, &q).unwrap();
        let e = second_order_energy_numeric(st, &s, &h2m, |r| w.value(r), &q).unwrap();
        assert!((e.value - 481.0 / 75000.0).abs() < 1e-8, "{}", e.value);
    }

    #[test]
    fn ground_second_order_equivalence() {
        let q = QuadratureSpec::default();
        for units in [atomic(), UnitSystem::hbar2m()] {
            for ell in 0..4 {
                for delta in [0.02, 0.05, 0.1] {
                    let st = QuantumState::new(0, ell);
                    let s = Spec::ecsc(1.0, delta).unwrap();
                    let r = second_order_residuals(st, &s, &units, &q).unwrap();
                    assert!((r.truncated_residual() / r.closed_truncated).abs() < 1e-9, "ℓ={ell} δ={delta}");
                    assert_eq!(r.numeric_full, r.numeric_truncated);
                }
            }
        }
    }

    #[test]
    fn excited_state_residuals() {
        let q = QuadratureSpec::default();
        let s = Spec::ecsc(1.0, 0.1).unwrap();
        let r = second_order_residuals(QuantumState::new(1, 0), &s, &atomic(), &q).unwrap();
        assert!((r.truncated_residual() - -168.0 * 1e-6).abs() < 1e-14, "{r:?}");
        assert!((r.full_residual() - -64.0 / 9.0 * 1e-6).abs() < 1e-14);
        let r = second_order_residuals(QuantumState::new(2, 0), &s, &atomic(), &q).unwrap();
        assert!(r.truncated_residual().abs() < 1e-10 * r.closed_truncated.abs());
    }

    #[test]
    fn tolerance_halving_is_within_error_estimate() {
        let st = QuantumState::new(1, 1);
        let s = Spec::ecsc(1.0, 0.05).unwrap();
        let q = QuadratureSpec::default();
        let a = first_order_energy_numeric(st, &s, &atomic(), &q).unwrap();
        let b =
            first_order_energy_numeric(st, &s, &atomic(), &QuadratureSpec { rel_tol: q.rel_tol / 2.0, ..q }).unwrap();
        assert!((a.value - b.value).abs() <= a.error);
    }

    #[test]
    fn numeric_total_matches_closed_total() {
        let q = QuadratureSpec::default();
        let s = Spec::ecsc(1.0, 0.05).unwrap();
        let st = QuantumState::new(0, 0);
        let num = total_energy_numeric(st, &s, &atomic(), SecondOrderVariant::Truncated, &q).unwrap();
        let closed = perturbation::total_energy(st, &s, &atomic(), SecondOrderVariant::Truncated).unwrap();
        assert!((num.total - closed.total).abs() < 1e-12);
        let far =
            total_energy_numeric(QuantumState::new(3, 0), &s, &atomic(), SecondOrderVariant::Truncated, &q).unwrap();
        assert!(far.first_order_only);
    }

    #[test]
    fn spec_validation() {
        let bad = [
            QuadratureSpec { rel_tol: 0.0, ..QuadratureSpec::<f64>::default() },
            QuadratureSpec { r_max_factor: 5.0, ..QuadratureSpec::default() },
            gl(1),
        ];
        for q in bad {
            assert!(q.validate().is_err());
        }
        assert!(first_order_energy_numeric(
            QuantumState::new(0, 0),
            &Spec::yukawa(1.0, 0.1).unwrap(),
            &atomic(),
            &QuadratureSpec::default()
        )
        .is_err());
    }

    proptest! {
        #[test]
        fn first_order_relative_agreement(n in 0u32..3, ell in 0u32..4, delta in 0.01f64..0.2, a in 0.5f64..10.0) {
            let st = QuantumState::new(n, ell);
            let s = Spec::ecsc(a, delta).unwrap();
            let closed = perturbation::first_order_shift(st, &s, &atomic()).unwrap();
            let num = first_order_energy_numeric(st, &s, &atomic(), &QuadratureSpec::default()).unwrap().value;
            prop_assert!(((num - closed) / closed).abs() < 1e-10);
        }
    }
}
