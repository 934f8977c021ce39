//! Unperturbed Coulomb eigensystem: energies, normalized radial functions,
//! associated Laguerre polynomials and exact radial moments.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{factorial, to_real};
use crate::model::{QuantumState, ScreeningSpec, UnitSystem};
use crate::scalar::{powu, Real};

/// Coefficients of L_n^k(x) = Σ_m c_m x^m with
/// c_m = (−1)^m (n+k)! / ((n−m)! (m+k)! m!).
pub fn laguerre_coefficients(n: u32, k: u32) -> Vec<BigRational> {
    (0..=n)
        .map(|m| {
            let num = factorial(n + k);
            let den = factorial(n - m) * factorial(m + k) * factorial(m);
            let c = BigRational::new(num, den);
            if m % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect()
}

/// Associated Laguerre polynomial L_n^k(x) in the explicit-sum convention.
pub fn laguerre<T: Real>(n: u32, k: u32, x: T) -> T {
    let coeffs: Vec<T> = laguerre_coefficients(n, k).iter().map(to_real).collect();
    horner(&coeffs, x)
}

fn horner<T: Real>(coeffs: &[T], x: T) -> T {
    coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * x + c)
}

/// E⁽⁰⁾ = −mA²/(2ħ²N²).
pub fn coulomb_energy<T: Real>(state: QuantumState, spec: &ScreeningSpec<T>, units: &UnitSystem<T>) -> T {
    let big_n = T::int(state.principal() as i128);
    let hbar = units.hbar();
    -units.mass() * spec.strength * spec.strength / (T::lit(2.0) * hbar * hbar * big_n * big_n)
}

/// Exact ⟨r^k⟩ in units of (2β)^{−k}:
/// Σ c_i c_j (2ℓ+2+k+i+j)! / Σ c_i c_j (2ℓ+2+i+j)!.
pub fn moment_ratio(state: QuantumState, k: i32) -> Result<BigRational> {
    let base = 2 * state.ell as i32 + 2;
    if base + k < 0 {
        return Err(Error::DivergentMoment { k, ell: state.ell });
    }
    let coeffs = laguerre_coefficients(state.n, 2 * state.ell + 1);
    let gamma_sum = |shift: i32| {
        let mut acc = BigRational::zero();
        for (i, ci) in coeffs.iter().enumerate() {
            for (j, cj) in coeffs.iter().enumerate() {
                let s = (base + shift) as u32 + (i + j) as u32;
                acc += ci * cj * BigRational::from_integer(factorial(s));
            }
        }
        acc
    };
    Ok(gamma_sum(k) / gamma_sum(0))
}

/// Normalized Coulomb radial function χ(r) = N r^{ℓ+1} e^{−βr} L_n^{2ℓ+1}(2βr).
#[derive(Debug, Clone)]
pub struct CoulombState<T> {
    state: QuantumState,
    beta: T,
    norm: T,
    energy: T,
    laguerre: Vec<T>,
}

impl<T: Real> CoulombState<T> {
    pub fn new(state: QuantumState, spec: &ScreeningSpec<T>, units: &UnitSystem<T>) -> Self {
        let big_n = state.principal();
        let hbar = units.hbar();
        let beta = units.mass() * spec.strength / (T::int(big_n as i128) * hbar * hbar);
        // N² = (2β)^{2ℓ+3} n! / (2N (n+2ℓ+1)!)
        let ratio =
            BigRational::new(factorial(state.n), BigInt::from(2 * big_n) * factorial(state.n + 2 * state.ell + 1));
        let norm = (powu(T::lit(2.0) * beta, 2 * state.ell + 3) * to_real::<T>(&ratio)).sqrt();
        let laguerre = laguerre_coefficients(state.n, 2 * state.ell + 1).iter().map(to_real).collect();
        Self { state, beta, norm, energy: coulomb_energy(state, spec, units), laguerre }
    }

    pub fn state(&self) -> QuantumState {
        self.state
    }

    /// β = mA/(Nħ²).
    pub fn beta(&self) -> T {
        self.beta
    }

    pub fn norm(&self) -> T {
        self.norm
    }

    pub fn energy(&self) -> T {
        self.energy
    }

    pub fn value(&self, r: T) -> T {
        let x = T::lit(2.0) * self.beta * r;
        self.norm * powu(r, self.state.ell + 1) * (-self.beta * r).exp() * horner(&self.laguerre, x)
    }

    /// χ(r)².
    pub fn density(&self, r: T) -> T {
        let v = self.value(r);
        v * v
    }

    /// χ²(r)·e^{2βr}, the part left over when Gauss–Laguerre absorbs the exponential.
    pub fn density_polynomial_part(&self, r: T) -> T {
        let x = T::lit(2.0) * self.beta * r;
        let p = self.norm * powu(r, self.state.ell + 1) * horner(&self.laguerre, x);
        p * p
    }

    /// χ'(r)/χ(r); singular at the nodes.
    pub fn log_derivative(&self, r: T) -> T {
        let two_beta = T::lit(2.0) * self.beta;
        let x = two_beta * r;
        let l = horner(&self.laguerre, x);
        let dl: T = self
            .laguerre
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(T::zero(), |acc, (m, &c)| acc * x + c * T::int(m as i128));
        T::int(self.state.ell as i128 + 1) / r - self.beta + two_beta * dl / l
    }

    pub fn derivative(&self, r: T) -> T {
        self.value(r) * self.log_derivative(r)
    }

    /// ⟨r^k⟩ from the exact factorial sums.
    pub fn radial_moment(&self, k: i32) -> Result<T> {
        let ratio = to_real::<T>(&moment_ratio(self.state, k)?);
        Ok(ratio * (T::lit(2.0) * self.beta).powi(-k))
    }
}

pub fn coulomb_wavefunction<T: Real>(
    state: QuantumState,
    spec: &ScreeningSpec<T>,
    units: &UnitSystem<T>,
    r: T,
) -> Result<T> {
    if !(r > T::zero()) {
        return Err(Error::NonPositiveRadius(r.as_f64()));
    }
    Ok(CoulombState::new(state, spec, units).value(r))
}

pub fn radial_moment<T: Real>(
    state: QuantumState,
    spec: &ScreeningSpec<T>,
    units: &UnitSystem<T>,
    k: i32,
) -> Result<T> {
    CoulombState::new(state, spec, units).radial_moment(k)
}

/// Number of sign changes of χ on (0, r_max] sampled at `samples` points.
pub fn count_nodes<T: Real>(chi: &CoulombState<T>, r_max: T, samples: usize) -> usize {
    let h = r_max / T::int(samples as i128);
    let mut nodes = 0;
    let mut prev_sign = 0i8;
    for i in 1..=samples {
        let v = chi.value(h * T::int(i as i128));
        let sign = if v > T::zero() {
            1
        } else if v < T::zero() {
            -1
        } else {
            0
        };
        if sign != 0 {
            if prev_sign != 0 && sign != prev_sign {
                nodes += 1;
            }
            prev_sign = sign;
        }
    }
    nodes
}
