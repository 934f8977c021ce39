//! Domain types shared by all modules: unit systems, quantum numbers,
//! screening parameters, energy breakdowns and tolerance policy.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// The pair (ħ, m) every formula is evaluated with.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitSystem<T> {
    hbar: T,
    mass: T,
    label: String,
}

/// Named or explicit unit-system selection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UnitPreset<T> {
    /// ħ = m = 1.
    Atomic,
    /// ħ = 2m = 1.
    Hbar2m,
    Explicit {
        hbar: T,
        mass: T,
    },
}

impl<T: Real> UnitSystem<T> {
    pub fn new(hbar: T, mass: T, label: impl Into<String>) -> Result<Self> {
        if !(hbar > T::zero() && hbar.is_finite()) {
            return Err(Error::InvalidUnits(format!("hbar must be positive, got {hbar}")));
        }
        if !(mass > T::zero() && mass.is_finite()) {
            return Err(Error::InvalidUnits(format!("mass must be positive, got {mass}")));
        }
        Ok(Self { hbar, mass, label: label.into() })
    }

    pub fn atomic() -> Self {
        Self { hbar: T::one(), mass: T::one(), label: "atomic".into() }
    }

    pub fn hbar2m() -> Self {
        Self { hbar: T::one(), mass: T::lit(0.5), label: "hbar2m".into() }
    }

    pub fn hbar(&self) -> T {
        self.hbar
    }

    pub fn mass(&self) -> T {
        self.mass
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// ħ²/(2m), the coefficient of the kinetic and centrifugal terms.
    pub fn kinetic_scale(&self) -> T {
        self.hbar * self.hbar / (T::lit(2.0) * self.mass)
    }

    /// ħ/√(2m), the scale linking superpotentials to logarithmic derivatives.
    pub fn superpotential_scale(&self) -> T {
        self.hbar / (T::lit(2.0) * self.mass).sqrt()
    }
}

/// Builds a validated unit system from a preset or an explicit (ħ, m) pair.
pub fn make_unit_system<T: Real>(preset: UnitPreset<T>) -> Result<UnitSystem<T>> {
    match preset {
        UnitPreset::Atomic => Ok(UnitSystem::atomic()),
        UnitPreset::Hbar2m => Ok(UnitSystem::hbar2m()),
        UnitPreset::Explicit { hbar, mass } => UnitSystem::new(hbar, mass, format!("custom:{hbar},{mass}")),
    }
}

/// Parses `atomic`, `hbar2m` or `custom:<hbar>,<mass>`.
impl<T: Real> FromStr for UnitSystem<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "atomic" => return Ok(Self::atomic()),
            "hbar2m" => return Ok(Self::hbar2m()),
            _ => {}
        }
        let pair =
            s.strip_prefix("custom:").ok_or_else(|| Error::InvalidUnits(format!("unknown unit preset '{s}'")))?;
        let (h, m) = pair
            .split_once(',')
            .ok_or_else(|| Error::InvalidUnits(format!("expected custom:<hbar>,<mass>, got '{s}'")))?;
        let parse = |v: &str| {
            v.trim().parse::<f64>().map(T::lit).map_err(|e| Error::InvalidUnits(format!("bad number '{v}': {e}")))
        };
        make_unit_system(UnitPreset::Explicit { hbar: parse(h)?, mass: parse(m)? })
    }
}

const ORBITAL_LETTERS: &[u8] = b"spdfghik";

/// Radial quantum number `n` (node count) and orbital angular momentum `ell`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuantumState {
    pub n: u32,
    pub ell: u32,
}

impl QuantumState {
    pub const fn new(n: u32, ell: u32) -> Self {
        Self { n, ell }
    }

    /// Principal quantum number N = n + ℓ + 1.
    pub const fn principal(&self) -> u32 {
        self.n + self.ell + 1
    }

    /// Spectroscopic label such as `3d`; `None` when ℓ has no letter.
    pub fn label(&self) -> Option<String> {
        let letter = *ORBITAL_LETTERS.get(self.ell as usize)?;
        Some(format!("{}{}", self.principal(), letter as char))
    }
}

impl fmt::Display for QuantumState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.label() {
            Some(l) => write!(f, "{l}"),
            None => write!(f, "(n={}, l={})", self.n, self.ell),
        }
    }
}

/// Maps a spectroscopic label (`1s`, `2p`, `3d`, ...) to (n, ℓ).
pub fn state_from_label(label: &str) -> Result<QuantumState> {
    let label = label.trim();
    let bad = || Error::InvalidState(format!("cannot parse state label '{label}'"));
    let letter = label.chars().last().ok_or_else(bad)?;
    let digits = &label[..label.len() - letter.len_utf8()];
    let principal: u32 = digits.parse().map_err(|_| bad())?;
    let ell = ORBITAL_LETTERS.iter().position(|&c| c as char == letter.to_ascii_lowercase()).ok_or_else(bad)? as u32;
    if principal == 0 || ell >= principal {
        return Err(Error::InvalidState(format!(
            "'{label}': orbital angular momentum {ell} requires principal number > {ell}"
        )));
    }
    Ok(QuantumState::new(principal - ell - 1, ell))
}

impl FromStr for QuantumState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        state_from_label(s)
    }
}

/// Screening parameter δ, cosine factor g and strength A of
/// V(r) = −(A/r)·exp(−δr)·cos(gδr).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScreeningSpec<T> {
    pub delta: T,
    pub g: T,
    pub strength: T,
}

impl<T: Real> ScreeningSpec<T> {
    pub fn new(strength: T, delta: T, g: T) -> Result<Self> {
        if !(strength > T::zero() && strength.is_finite()) {
            return Err(Error::InvalidScreening(format!("strength must be positive, got {strength}")));
        }
        if !(delta >= T::zero() && delta.is_finite()) {
            return Err(Error::InvalidScreening(format!("delta must be non-negative, got {delta}")));
        }
        if !g.is_finite() {
            return Err(Error::InvalidScreening(format!("g must be finite, got {g}")));
        }
        Ok(Self { delta, g, strength })
    }

    /// The cosine-screened case, g = 1.
    pub fn ecsc(strength: T, delta: T) -> Result<Self> {
        Self::new(strength, delta, T::one())
    }

    /// The static (Yukawa) case, g = 0.
    pub fn yukawa(strength: T, delta: T) -> Result<Self> {
        Self::new(strength, delta, T::zero())
    }

    pub fn is_cosine_screened(&self) -> bool {
        self.g == T::one()
    }

    pub fn with_delta(self, delta: T) -> Result<Self> {
        Self::new(self.strength, delta, self.g)
    }
}

/// Which printed second-order form to use for the first radial excitation.
///
/// `Truncated` keeps only the r² and r terms of the first-order superpotential
/// and is the form that reproduces the published tables. `Full` keeps all three.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SecondOrderVariant {
    #[default]
    Truncated,
    Full,
}

impl FromStr for SecondOrderVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "eq27" | "truncated" => Ok(Self::Truncated),
            "eq28" | "full" => Ok(Self::Full),
            other => Err(Error::InvalidArgument(format!("unknown variant '{other}'"))),
        }
    }
}

impl fmt::Display for SecondOrderVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Truncated => "eq27",
            Self::Full => "eq28",
        })
    }
}

/// Energy split into the Coulomb level, the constant Aδ shift and the
/// first- and second-order corrections.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBreakdown<T> {
    pub e0: T,
    pub linear_shift: T,
    pub e1: T,
    pub e2: T,
    pub total: T,
    pub variant: SecondOrderVariant,
    /// Set when no closed second-order form exists for the state and `e2` is zero.
    pub first_order_only: bool,
}

impl<T: Real> EnergyBreakdown<T> {
    pub fn new(e0: T, linear_shift: T, e1: T, e2: T, variant: SecondOrderVariant, first_order_only: bool) -> Self {
        let total = e0 + linear_shift + e1 + e2;
        Self { e0, linear_shift, e1, e2, total, variant, first_order_only }
    }

    /// Recomputes the total from the components in the same order as [`EnergyBreakdown::new`].
    pub fn recomputed_total(&self) -> T {
        self.e0 + self.linear_shift + self.e1 + self.e2
    }
}

/// Default accuracy targets for quadrature, eigenvalue refinement and grid studies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances<T> {
    pub quadrature_rel: T,
    pub eigen_abs: T,
    pub grid_refine_abs: T,
}

impl<T: Real> Tolerances<T> {
    pub fn new(quadrature_rel: T, eigen_abs: T, grid_refine_abs: T) -> Result<Self> {
        for (name, v) in
            [("quadrature_rel", quadrature_rel), ("eigen_abs", eigen_abs), ("grid_refine_abs", grid_refine_abs)]
        {
            if !(v > T::zero()) {
                return Err(Error::InvalidArgument(format!("{name} must be positive")));
            }
        }
        Ok(Self { quadrature_rel, eigen_abs, grid_refine_abs })
    }
}

impl<T: Real> Default for Tolerances<T> {
    fn default() -> Self {
        Self { quadrature_rel: T::lit(1e-10), eigen_abs: T::lit(1e-9), grid_refine_abs: T::lit(1e-8) }
    }
}
