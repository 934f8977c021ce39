//! Closed-form energy corrections and superpotentials of the cosine-screened
//! Coulomb problem, built on the Coulomb basis.
//!
//! The perturbation is ΔV = Aδ − (Aδ³/3)r² + (Aδ⁴/6)r³ + …; the constant Aδ
//! shifts every level, the r² term drives the first-order correction and the
//! r³ term (together with the square of the first-order superpotential)
//! drives the second-order one. Corrections are printed in closed form for
//! n ≤ 2; the first order is available for every state through ⟨r²⟩.
//!
//! Integer polynomials in ℓ are evaluated exactly in `i128`; the working
//! scalar only enters at the final multiply by powers of δ, ħ, m and A.

use crate::coulomb::CoulombState;
use crate::error::{Error, Result};
use crate::model::{EnergyBreakdown, QuantumState, ScreeningSpec, SecondOrderVariant, UnitSystem};
use crate::potential::require_cosine;
use crate::scalar::{powu, Real};

/// Polynomial Σ cᵢ rⁱ in the radial coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialPolynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Real> RadialPolynomial<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![T::zero()] }
    }

    /// Coefficients in increasing powers of r.
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn eval(&self, r: T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * r + c)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| c * T::int(i as i128)).collect::<Vec<_>>();
        if coeffs.is_empty() {
            Self::zero()
        } else {
            Self { coeffs }
        }
    }

    /// Antiderivative vanishing at r = 0.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(T::zero());
        coeffs.extend(self.coeffs.iter().enumerate().map(|(i, &c)| c / T::int(i as i128 + 1)));
        Self { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let at = |v: &[T], i: usize| v.get(i).copied().unwrap_or_else(T::zero);
        Self { coeffs: (0..len).map(|i| at(&self.coeffs, i) + at(&other.coeffs, i)).collect() }
    }

    pub fn scale(&self, k: T) -> Self {
        Self { coeffs: self.coeffs.iter().map(|&c| c * k).collect() }
    }
}

/// Which terms of the three-term first-order superpotential to keep for n ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FirstOrderTerms {
    #[default]
    All,
    /// Only the r² and r terms.
    LeadingTwo,
}

impl From<SecondOrderVariant> for FirstOrderTerms {
    fn from(v: SecondOrderVariant) -> Self {
        match v {
            SecondOrderVariant::Truncated => Self::LeadingTwo,
            SecondOrderVariant::Full => Self::All,
        }
    }
}

fn product(factors: &[i128]) -> Result<i128> {
    factors.iter().try_fold(1i128, |acc, &f| {
        acc.checked_mul(f).ok_or_else(|| Error::InvalidArgument("closed-form coefficient overflows i128".into()))
    })
}

fn horner_i(coeffs: &[i128], l: i128) -> i128 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * l + c)
}

/// Integer C with E⁽¹⁾ = −C·ħ⁴δ³/(6Am²), for the printed states n ≤ 2.
pub fn first_order_coefficient(state: QuantumState) -> Result<i128> {
    let l = state.ell as i128;
    match state.n {
        0 => product(&[l + 1, l + 1, l + 2, 2 * l + 3]),
        1 => product(&[l + 2, l + 2, l + 7, 2 * l + 3]),
        2 => product(&[l + 3, l + 3, l + 2, 2 * l + 23]),
        n => Err(Error::UnsupportedState { n, what: "closed-form first-order coefficient" }),
    }
}

/// Integer pair (D₄, D₆) with E⁽²⁾ = D₄·ħ⁶δ⁴/(24A²m³) − D₆·ħ¹⁰δ⁶/(72A⁴m⁵).
pub fn second_order_coefficients(state: QuantumState, variant: SecondOrderVariant) -> Result<(i128, i128)> {
    let l = state.ell as i128;
    match state.n {
        0 => Ok((
            product(&[l + 1, l + 1, l + 1, l + 2, 2 * l + 3, 2 * l + 5])?,
            product(&[powi128(l + 1, 6)?, l + 2, 2 * l + 3, horner_i(&[43, 37, 8], l)])?,
        )),
        1 => {
            let d4 = product(&[powi128(l + 2, 3)?, l + 11, 2 * l + 3, 2 * l + 5])?;
            let d6 = match variant {
                SecondOrderVariant::Truncated => {
                    product(&[powi128(l + 2, 6)?, l + 3, 2 * l + 3, horner_i(&[211, 101, 7], l)])?
                }
                SecondOrderVariant::Full => {
                    product(&[powi128(l + 2, 5)?, horner_i(&[3568, 6878, 5085, 1795, 294, 16], l)])?
                }
            };
            Ok((d4, d6))
        }
        2 => Ok((
            product(&[l + 2, powi128(l + 3, 2)?, 2 * l + 5, horner_i(&[153, 45, 2], l)])?,
            product(&[l + 2, powi128(l + 3, 5)?, horner_i(&[12873, 12118, 3879, 474, 16], l)])?,
        )),
        n => Err(Error::UnsupportedState { n, what: "closed-form second-order correction" }),
    }
}

fn powi128(x: i128, k: u32) -> Result<i128> {
    x.checked_pow(k).ok_or_else(|| Error::InvalidArgument("closed-form coefficient overflows i128".into()))
}

/// First-order energy correction E⁽¹⁾.
///
/// Printed closed forms for n ≤ 2; −(Aδ³/3)⟨r²⟩ for higher radial excitations.
pub fn first_order_shift<T: Real>(state: QuantumState, spec: &ScreeningSpec<T>, units: &UnitSystem<T>) -> Result<T> {
    require_cosine(spec)?;
    let (hbar, m, a, delta) = (units.hbar(), units.mass(), spec.strength, spec.delta);
    match first_order_coefficient(state) {
        Ok(c) => Ok(-T::int(c) * powu(hbar, 4) * powu(delta, 3) / (T::lit(6.0) * a * m * m)),
        Err(_) => {
            let r2 = CoulombState::new(state, spec, units).radial_moment(2)?;
            Ok(-a * powu(delta, 3) / T::lit(3.0) * r2)
        }
    }
}

/// Second-order energy correction E⁽²⁾ for n ≤ 2. `variant` only matters for n = 1.
pub fn second_order_shift<T: Real>(
    state: QuantumState,
    spec: &ScreeningSpec<T>,
    units: &UnitSystem<T>,
    variant: SecondOrderVariant,
) -> Result<T> {
    require_cosine(spec)?;
    let (d4, d6) = second_order_coefficients(state, variant)?;
    let (hbar, m, a, delta) = (units.hbar(), units.mass(), spec.strength, spec.delta);
    let quartic = T::int(d4) * powu(hbar, 6) * powu(delta, 4) / (T::lit(24.0) * a * a * powu(m, 3));
    let sextic = T::int(d6) * powu(hbar, 10) * powu(delta, 6) / (T::lit(72.0) * powu(a, 4) * powu(m, 5));
    Ok(quartic - sextic)
}

/// E = E⁽⁰⁾ + Aδ + E⁽¹⁾ + E⁽²⁾.
///
/// For n > 2 there is no closed second-order form; the breakdown carries
/// `e2 = 0` and `first_order_only = true`.
pub fn total_energy<T: Real>(
    state: QuantumState,
    spec: &ScreeningSpec<T>,
    units: &UnitSystem<T>,
    variant: SecondOrderVariant,
) -> Result<EnergyBreakdown<T>> {
    require_cosine(spec)?;
    let e0 = crate::coulomb::coulomb_energy(state, spec, units);
    let linear = spec.strength * spec.delta;
    let e1 = first_order_shift(state, spec, units)?;
    let (e2, first_only) =
        if state.n <= 2 { (second_order_shift(state, spec, units, variant)?, false) } else { (T::zero(), true) };
    Ok(EnergyBreakdown::new(e0, linear, e1, e2, variant, first_only))
}

/// Unperturbed ground superpotential
/// W(r) = −(ħ/√2m)(ℓ+1)/r + √(m/2)·A/((ℓ+1)ħ).
pub fn superpotential_w0<T: Real>(
    state: QuantumState,
    spec: &ScreeningSpec<T>,
    units: &UnitSystem<T>,
) -> Result<impl Fn(T) -> T + Clone + Send + Sync> {
    if state.n != 0 {
        return Err(Error::UnsupportedState { n: state.n, what: "unperturbed superpotential" });
    }
    let lp1 = T::int(state.ell as i128 + 1);
    let scale = units.superpotential_scale();
    let tail = (units.mass() / T::lit(2.0)).sqrt() * spec.strength / (lp1 * units.hbar());
    Ok(move |r: T| -scale * lp1 / r + tail)
}

/// First-order superpotential W⁽¹⁾ as a polynomial in r.
///
/// n = 0: −(ħ(ℓ+1)δ³/(3√2m))·r·(r + ħ²(ℓ+1)(ℓ+2)/(Am)), which solves the
/// first-order Riccati relation exactly.
///
/// n ≥ 1: −(ħNδ³/(3√2m))·(r² + ħ²N(N+1)/(Am)·r − 2ħ⁴(n+ℓ)N²/(A²m²)),
/// with the constant dropped under [`FirstOrderTerms::LeadingTwo`].
pub fn superpotential_first<T: Real>(
    state: QuantumState,
    spec: &ScreeningSpec<T>,
    units: &UnitSystem<T>,
    terms: FirstOrderTerms,
) -> Result<RadialPolynomial<T>> {
    require_cosine(spec)?;
    let (hbar, m, a, delta) = (units.hbar(), units.mass(), spec.strength, spec.delta);
    let length = hbar * hbar / (a * m);
    let sqrt_2m = (T::lit(2.0) * m).sqrt();
    if state.n == 0 {
        let lp1 = T::int(state.ell as i128 + 1);
        let lp2 = T::int(state.ell as i128 + 2);
        let pre = -hbar * lp1 * powu(delta, 3) / (T::lit(3.0) * sqrt_2m);
        let k = length * lp1 * lp2;
        return Ok(RadialPolynomial::new(vec![T::zero(), pre * k, pre]));
    }
    let big_n = T::int(state.principal() as i128);
    let pre = -hbar * big_n * powu(delta, 3) / (T::lit(3.0) * sqrt_2m);
    let linear = length * big_n * (big_n + T::one());
    let constant = match terms {
        FirstOrderTerms::All => -T::lit(2.0) * length * length * T::int((state.n + state.ell) as i128) * big_n * big_n,
        FirstOrderTerms::LeadingTwo => T::zero(),
    };
    Ok(RadialPolynomial::new(vec![pre * constant, pre * linear, pre]))
}

/// Auxiliary coefficients (a, b, c) of the second-order ground superpotential,
/// and the combination d = b + 6Am/(ħ²(ℓ+1)²δ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundCoefficients<T> {
    /// Inverse length.
    pub a: T,
    /// Dimensionless.
    pub b: T,
    /// Length.
    pub c: T,
    ell: u32,
    delta: T,
    inverse_length: T,
}

impl<T: Real> GroundCoefficients<T> {
    pub fn new(ell: u32, spec: &ScreeningSpec<T>, units: &UnitSystem<T>) -> Self {
        let (hbar, m, a_str, delta) = (units.hbar(), units.mass(), spec.strength, spec.delta);
        let l = ell as i128;
        let lp1 = T::int(l + 1);
        let length = hbar * hbar / (a_str * m);
        let inverse_length = T::one() / length;
        let d2 = delta * delta;
        let a = length * T::int((l + 1) * (3 * l + 7)) * d2 - T::lit(3.0) * inverse_length / (lp1 * lp1);
        let b = length * length * T::int((l + 1) * (l + 1) * horner_i(&[43, 37, 8], l)) * d2 / T::lit(2.0)
            - T::int(3 * (2 * l + 5)) / (T::lit(2.0) * lp1);
        let c = length * powu(lp1, 3) / T::lit(9.0);
        Self { a, b, c, ell, delta, inverse_length }
    }

    /// d·δ⁴ = bδ⁴ + 6Amδ³/(ħ²(ℓ+1)²), finite at δ = 0.
    pub fn d_times_delta4(&self) -> T {
        let lp1 = T::int(self.ell as i128 + 1);
        self.b * powu(self.delta, 4) + T::lit(6.0) * self.inverse_length * powu(self.delta, 3) / (lp1 * lp1)
    }

    /// d itself; `None` at δ = 0 where it diverges.
    pub fn d(&self) -> Option<T> {
        (self.delta > T::zero()).then(|| self.d_times_delta4() / powu(self.delta, 4))
    }
}

/// Second-order ground superpotential W₀⁽²⁾ as a polynomial in r:
/// −(ħδ⁴c/(2√2m))·r·(δ²r³ + a r² + b(r + ħ²(ℓ+1)(ℓ+2)/(Am))) − ħ(ℓ+1)E₀⁽²⁾/(√2m·A).
pub fn superpotential_second_ground<T: Real>(
    ell: u32,
    spec: &ScreeningSpec<T>,
    units: &UnitSystem<T>,
) -> Result<RadialPolynomial<T>> {
    require_cosine(spec)?;
    if spec.delta == T::zero() {
        return Ok(RadialPolynomial::zero());
    }
    let (hbar, m, a_str, delta) = (units.hbar(), units.mass(), spec.strength, spec.delta);
    let coeffs = GroundCoefficients::new(ell, spec, units);
    let sqrt_2m = (T::lit(2.0) * m).sqrt();
    let lp1 = T::int(ell as i128 + 1);
    let k = hbar * hbar * lp1 * T::int(ell as i128 + 2) / (a_str * m);
    let pre = -hbar * powu(delta, 4) * coeffs.c / (T::lit(2.0) * sqrt_2m);
    let e2 = second_order_shift(QuantumState::new(0, ell), spec, units, SecondOrderVariant::Truncated)?;
    let constant = -hbar * lp1 * e2 / (sqrt_2m * a_str);
    Ok(RadialPolynomial::new(vec![constant, pre * coeffs.b * k, pre * coeffs.b, pre * coeffs.a, pre * delta * delta]))
}

/// Exponent polynomial P(r) = Σ_{i=1..5} pᵢ rⁱ of the moderated ground state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavefunctionPolynomial<T> {
    pub p: [T; 5],
}

impl<T: Real> WavefunctionPolynomial<T> {
    pub fn eval(&self, r: T) -> T {
        self.p.iter().rev().fold(T::zero(), |acc, &c| acc * r + c) * r
    }

    pub fn as_polynomial(&self) -> RadialPolynomial<T> {
        let mut coeffs = vec![T::zero()];
        coeffs.extend_from_slice(&self.p);
        RadialPolynomial::new(coeffs)
    }
}

/// ψ(r) = N·r^{ℓ+1}·exp(P(r)), the Coulomb ground state multiplied by the
/// moderating function built from the first two superpotential corrections.
///
/// N is the normalized Coulomb constant, so ψ reduces to χ at δ = 0. ψ is not
/// renormalized; see [`GroundWavefunction::norm_squared`].
#[derive(Debug, Clone)]
pub struct GroundWavefunction<T> {
    pub ell: u32,
    pub prefactor: T,
    pub beta: T,
    pub polynomial: WavefunctionPolynomial<T>,
}

impl<T: Real> GroundWavefunction<T> {
    pub fn value(&self, r: T) -> T {
        self.prefactor * powu(r, self.ell + 1) * self.polynomial.eval(r).exp()
    }

    /// log u(r) = P(r) + βr, with u = ψ/χ.
    pub fn log_moderation(&self, r: T) -> T {
        self.polynomial.eval(r) + self.beta * r
    }

    /// ∫₀^{r_max} ψ² dr. P(r) has a positive r⁵ coefficient, so the integral
    /// is only meaningful on a finite range (a few tens of Bohr-like radii).
    pub fn norm_squared(&self, r_max: T) -> Result<T> {
        let spec = crate::quadrature::QuadratureSpec::default();
        crate::quadrature::integrate(|r| self.value(r) * self.value(r), T::zero(), r_max, &spec).map(|e| e.value)
    }

    /// Copy of ψ scaled to unit norm on [0, r_max].
    pub fn renormalized(&self, r_max: T) -> Result<Self> {
        let n2 = self.norm_squared(r_max)?;
        Ok(Self { prefactor: self.prefactor / n2.sqrt(), ..self.clone() })
    }
}

/// Moderated ground-state wavefunction and its exponent polynomial.
pub fn ground_wavefunction<T: Real>(
    ell: u32,
    spec: &ScreeningSpec<T>,
    units: &UnitSystem<T>,
) -> Result<GroundWavefunction<T>> {
    require_cosine(spec)?;
    let state = QuantumState::new(0, ell);
    let coulomb = CoulombState::new(state, spec, units);
    let beta = coulomb.beta();
    let coeffs = GroundCoefficients::new(ell, spec, units);
    let delta = spec.delta;
    let lp1 = T::int(ell as i128 + 1);
    let e2 = second_order_shift(state, spec, units, SecondOrderVariant::Truncated)?;
    let dd4 = coeffs.d_times_delta4();
    let p = [
        lp1 * e2 / spec.strength - beta,
        T::int(9 * (ell as i128 + 2)) / (T::lit(4.0) * lp1 * lp1) * coeffs.c * coeffs.c * dd4,
        coeffs.c * dd4 / T::lit(6.0),
        coeffs.a * coeffs.c * powu(delta, 4) / T::lit(8.0),
        coeffs.c * powu(delta, 6) / T::lit(10.0),
    ];
    Ok(GroundWavefunction { ell, prefactor: coulomb.norm(), beta, polynomial: WavefunctionPolynomial { p } })
}
