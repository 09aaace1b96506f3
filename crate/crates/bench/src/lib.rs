//! Shared inputs for the criterion benchmarks.

use padovan_core::{BigRational, Params, ScalarInitials, SystemInitials};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `α = 2, β = 5, γ = 4` with `x(−1) = 3, x(0) = 1/5`.
pub fn scalar_scenario() -> (Params, ScalarInitials) {
    let params = Params::from_integers(2, 5, 4).expect("gamma is nonzero");
    let inits = ScalarInitials::new(rat(3, 1), rat(1, 5)).expect("nonzero initials");
    (params, inits)
}

/// `α = 2, β = 3, γ = 5` with `x(−1) = 6/5, x(0) = 18/5, y(−1) = 23/10, y(0) = 4/5`.
pub fn system_scenario() -> (Params, SystemInitials) {
    let params = Params::from_integers(2, 3, 5).expect("gamma is nonzero");
    let inits = SystemInitials::new(rat(6, 5), rat(18, 5), rat(23, 10), rat(4, 5))
        .expect("nonzero initials");
    (params, inits)
}
