//! Closed forms, forbidden sets, and stability for the rational difference
//! equation
//!
//! ```text
//! x(n+1) = (α·x(n−1) + β) / (γ·x(n)·x(n−1)),   p = β/γ,  q = α/γ
//! ```
//!
//! and its symmetric two-equation system
//! `x(n+1) = (p·x(n−1) + q)/(y(n)·x(n−1))`, `y(n+1) = (p·y(n−1) + q)/(x(n)·y(n−1))`.
//!
//! Solutions are expressed through generalized Padovan numbers
//! `S(n+1) = p·S(n−1) + q·S(n−2)` and cross-checked against direct iteration
//! in exact rational arithmetic.

pub mod closed_form;
pub mod dynamics;
pub mod error;
pub mod numerics;
pub mod sequence;
pub mod stability;

pub use closed_form::{
    forbidden_scan, system_closed, x_closed, x_closed_float, AnyInitials, ForbiddenReport,
    ForbiddenSet, ScalarInitials, ScalarSolution, SystemInitials, SystemSolution,
};
pub use dynamics::{
    iterate_scalar, iterate_system, z_substitution_check, Orbit, SystemOrbit, Termination,
    ZCheckReport, ZOrbit,
};
pub use error::{Error, Result};
pub use numerics::{
    check_r_formula, parse_rational, render_decimal, solve_characteristic_cubic, Backend, Complex,
    CubicRoots, Scalar,
};
pub use sequence::{
    binet_coefficients, compare_weight_formula, generate, ratio, BinetCoefficients, GenPadovanCache,
    Params,
};
pub use stability::{
    attractor_sweep, clark_check, equilibrium, jury_check, linearize, system_equilibrium,
    StabilityReport, SweepConfig, SweepMode, SweepReport, Verdict,
};

/// Re-exported so downstream crates can build parameters without naming `num-rational`.
pub use num_rational::BigRational;
