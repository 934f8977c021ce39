//! The cosine-screened Coulomb potential, its small-δ power series and the
//! perturbation remainder left after subtracting the Coulomb part.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{factorial, to_real};
use crate::model::{ScreeningSpec, UnitSystem};
use crate::scalar::{powu, Real};

/// Highest series order kept in ΔV by the closed forms (terms through r³).
pub const DEFAULT_REMAINDER_ORDER: u32 = 4;

fn check_radius<T: Real>(r: T) -> Result<()> {
    if r > T::zero() {
        Ok(())
    } else {
        Err(Error::NonPositiveRadius(r.as_f64()))
    }
}

/// V(r) = −(A/r)·exp(−δr)·cos(gδr).
pub fn evaluate_potential<T: Real>(r: T, spec: &ScreeningSpec<T>) -> Result<T> {
    check_radius(r)?;
    let x = spec.delta * r;
    Ok(-(spec.strength / r) * (-x).exp() * (spec.g * x).cos())
}

/// V(r) plus the centrifugal barrier ħ²ℓ(ℓ+1)/(2mr²).
pub fn effective_potential<T: Real>(r: T, spec: &ScreeningSpec<T>, ell: u32, units: &UnitSystem<T>) -> Result<T> {
    let v = evaluate_potential(r, spec)?;
    Ok(v + centrifugal(r, ell, units))
}

pub(crate) fn centrifugal<T: Real>(r: T, ell: u32, units: &UnitSystem<T>) -> T {
    let l = T::int(ell as i128);
    units.kinetic_scale() * l * (l + T::one()) / (r * r)
}

/// Exact coefficient V_i of exp(−x)·cos(x) = Σ V_i xⁱ.
///
/// V_i = Re[(−1−i)ⁱ]/i!, built with Gaussian-integer powers.
pub fn series_coefficient(i: u32) -> BigRational {
    // (re + im·i) ← (re + im·i)·(−1 − i)
    let (mut re, mut im) = (BigInt::from(1), BigInt::zero());
    for _ in 0..i {
        let next_re = -&re + &im;
        let next_im = -&re - &im;
        re = next_re;
        im = next_im;
    }
    BigRational::new(re, factorial(i))
}

pub fn series_coefficient_value<T: Real>(i: u32) -> T {
    to_real(&series_coefficient(i))
}

/// Truncated series −(A/r)·Σ_{i=0..=order} V_i (δr)ⁱ. Requires g = 1.
pub fn series_potential<T: Real>(r: T, spec: &ScreeningSpec<T>, order: u32) -> Result<T> {
    check_radius(r)?;
    require_cosine(spec)?;
    let x = spec.delta * r;
    let sum = (0..=order).rev().fold(T::zero(), |acc, i| acc * x + series_coefficient_value::<T>(i));
    Ok(-(spec.strength / r) * sum)
}

/// ΔV(r) = −A·Σ_{i=1..=max_order} V_i δⁱ r^{i−1}, the part of V beyond −A/r.
pub fn perturbation_remainder<T: Real>(r: T, spec: &ScreeningSpec<T>, max_order: u32) -> Result<T> {
    check_radius(r)?;
    require_cosine(spec)?;
    let mut total = T::zero();
    for i in 1..=max_order {
        let v = series_coefficient_value::<T>(i);
        if v != T::zero() {
            total = total + v * powu(spec.delta, i) * powu(r, i - 1);
        }
    }
    Ok(-spec.strength * total)
}

pub(crate) fn require_cosine<T: Real>(spec: &ScreeningSpec<T>) -> Result<()> {
    if spec.is_cosine_screened() {
        Ok(())
    } else {
        Err(Error::UnsupportedExpansion(spec.g.as_f64()))
    }
}
