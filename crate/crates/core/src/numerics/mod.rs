//! Scalar backends and the characteristic-cubic machinery.
//!
//! Every quantity along an orbit lives in a [`Scalar`]: either an exact
//! arbitrary-precision rational or an `f64`. The cubic `λ³ = pλ + q` is solved
//! in double precision; its positive root is the equilibrium of the map and the
//! dominant root of the generalized Padovan recurrence.

mod cubic;
mod scalar;

pub use cubic::{
    check_r_formula, positive_real_root, solve_characteristic_cubic, CubicRoots, RFormulaCheck,
    RadicalBranch,
};
pub use scalar::{
    parse_rational, rational_from_f64, rational_to_f64, render_decimal, Backend, Scalar,
};

/// Complex numbers used for the non-dominant roots and Binet weights.
pub type Complex = num_complex::Complex64;

pub(crate) mod serde_rational {
    use num_rational::BigRational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(value: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(value)
    }
}
