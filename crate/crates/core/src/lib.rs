//! Bound states of the exponential-cosine-screened Coulomb potential
//! V(r) = −(A/r)·e^{−δr}·cos(gδr).
//!
//! Energies come from closed-form perturbation theory around the Coulomb
//! problem ([`perturbation`]), checked against quadrature over the Coulomb
//! basis ([`quadrature`]) and a Numerov shooting solver ([`oracle`]).
//!
//! Everything numeric is generic over [`Real`]; the aliases below fix `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod coulomb;
pub mod error;
pub mod exact;
pub mod model;
pub mod oracle;
pub mod perturbation;
pub mod potential;
pub mod quadrature;
pub mod report;
mod scalar;

pub use coulomb::{coulomb_energy, coulomb_wavefunction, radial_moment, CoulombState};
pub use error::{Error, Result};
pub use model::{
    make_unit_system, state_from_label, EnergyBreakdown, QuantumState, ScreeningSpec, SecondOrderVariant, Tolerances,
    UnitPreset, UnitSystem,
};
pub use oracle::{solve_bound_state, solve_screened, RadialFunction, SolverConfig};
pub use perturbation::{first_order_shift, ground_wavefunction, second_order_shift, total_energy};
pub use potential::{evaluate_potential, perturbation_remainder, series_potential};
pub use quadrature::{integrate_density, QuadratureSpec};
pub use scalar::Real;

pub type Units = UnitSystem<f64>;
pub type Screening = ScreeningSpec<f64>;
pub type Breakdown = EnergyBreakdown<f64>;
pub type Coulomb = CoulombState<f64>;
pub type Solution = RadialFunction<f64>;
pub type Solver = SolverConfig<f64>;
pub type Quadrature = QuadratureSpec<f64>;

pub type UnitsF32 = UnitSystem<f32>;
pub type ScreeningF32 = ScreeningSpec<f32>;
