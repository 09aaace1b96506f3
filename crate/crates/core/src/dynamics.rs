//! Direct iteration of `x(n+1) = (p·x(n−1) + q) / (x(n)·x(n−1))` and of the
//! symmetric system, in either backend.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::closed_form::{ForbiddenSet, ScalarInitials, SystemInitials};
use crate::error::{Error, Result};
use crate::numerics::{Backend, Scalar};
use crate::sequence::{generate, GenPadovanCache, Params};

/// Float denominators below this magnitude are treated as numeric failure.
pub const FLOAT_DENOMINATOR_FLOOR: f64 = 1e-300;

/// How an orbit ended. `step` is the index `n` of the first state that could
/// not be computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Termination {
    Completed,
    ForbiddenHit { step: usize },
    FloatOverflow { step: usize },
}

impl Termination {
    pub fn is_completed(&self) -> bool {
        matches!(self, Termination::Completed)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Orbit {
    pub params: Params,
    pub initials: ScalarInitials,
    pub backend: Backend,
    /// `x(−1), x(0), …, x(N)`.
    pub states: Vec<Scalar>,
    pub termination: Termination,
}

impl Orbit {
    pub fn x(&self, n: i64) -> Option<&Scalar> {
        if n < -1 {
            return None;
        }
        self.states.get((n + 1) as usize)
    }

    /// Index of the last computed state.
    pub fn last_index(&self) -> i64 {
        self.states.len() as i64 - 2
    }

    pub fn last(&self) -> &Scalar {
        self.states.last().expect("orbit always holds its initials")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SystemOrbit {
    pub params: Params,
    pub initials: SystemInitials,
    pub backend: Backend,
    /// `(x(n), y(n))` for `n = −1, 0, …, N`.
    pub states: Vec<(Scalar, Scalar)>,
    pub termination: Termination,
}

impl SystemOrbit {
    pub fn at(&self, n: i64) -> Option<&(Scalar, Scalar)> {
        if n < -1 {
            return None;
        }
        self.states.get((n + 1) as usize)
    }

    pub fn last_index(&self) -> i64 {
        self.states.len() as i64 - 2
    }

    pub fn last(&self) -> &(Scalar, Scalar) {
        self.states.last().expect("orbit always holds its initials")
    }
}

enum Step {
    Value(Scalar),
    Forbidden,
    Overflow,
}

/// `(p·lag + q) / (current·lag)` for the scalar map, or with `current`
/// replaced by the other component for the system.
fn step(p: &Scalar, q: &Scalar, lag: &Scalar, current: &Scalar) -> Step {
    // A vanishing factor is a genuine forbidden hit; a product that merely
    // underflows is a numeric failure.
    if lag.is_zero() || current.is_zero() {
        return Step::Forbidden;
    }
    let den = current * lag;
    let num = &(p * lag) + q;
    match den {
        Scalar::Exact(_) => match num.checked_div(&den) {
            Ok(v) => Step::Value(v),
            Err(_) => Step::Forbidden,
        },
        Scalar::Float(d) => {
            if !d.is_finite() || d.abs() < FLOAT_DENOMINATOR_FLOOR {
                Step::Overflow
            } else {
                let v = num.to_f64() / d;
                if v.is_finite() {
                    Step::Value(Scalar::Float(v))
                } else {
                    Step::Overflow
                }
            }
        }
    }
}

fn coefficients(params: &Params, backend: Backend) -> (Scalar, Scalar) {
    (
        Scalar::from_rational(params.p(), backend),
        Scalar::from_rational(params.q(), backend),
    )
}

pub fn iterate_scalar(
    params: &Params,
    inits: &ScalarInitials,
    steps: usize,
    backend: Backend,
) -> Orbit {
    let (p, q) = coefficients(params, backend);
    let mut states = Vec::with_capacity(steps + 2);
    states.push(Scalar::from_rational(inits.x_m1(), backend));
    states.push(Scalar::from_rational(inits.x_0(), backend));
    let mut termination = Termination::Completed;
    for n in 1..=steps {
        let len = states.len();
        match step(&p, &q, &states[len - 2], &states[len - 1]) {
            Step::Value(v) => states.push(v),
            Step::Forbidden => {
                termination = Termination::ForbiddenHit { step: n };
                break;
            }
            Step::Overflow => {
                termination = Termination::FloatOverflow { step: n };
                break;
            }
        }
    }
    Orbit {
        params: params.clone(),
        initials: inits.clone(),
        backend,
        states,
        termination,
    }
}

pub fn iterate_system(
    params: &Params,
    inits: &SystemInitials,
    steps: usize,
    backend: Backend,
) -> SystemOrbit {
    let (p, q) = coefficients(params, backend);
    let s = |r: &BigRational| Scalar::from_rational(r, backend);
    let mut states = Vec::with_capacity(steps + 2);
    states.push((s(inits.x_m1()), s(inits.y_m1())));
    states.push((s(inits.x_0()), s(inits.y_0())));
    let mut termination = Termination::Completed;
    for n in 1..=steps {
        let len = states.len();
        let (x_lag, y_lag) = &states[len - 2];
        let (x_cur, y_cur) = &states[len - 1];
        let next_x = step(&p, &q, x_lag, y_cur);
        let next_y = step(&p, &q, y_lag, x_cur);
        match (next_x, next_y) {
            (Step::Value(x), Step::Value(y)) => states.push((x, y)),
            (Step::Forbidden, _) | (_, Step::Forbidden) => {
                termination = Termination::ForbiddenHit { step: n };
                break;
            }
            _ => {
                termination = Termination::FloatOverflow { step: n };
                break;
            }
        }
    }
    SystemOrbit {
        params: params.clone(),
        initials: inits.clone(),
        backend,
        states,
        termination,
    }
}

/// Auxiliary sequence with `x(n) = z(n)/z(n−1)` and
/// `z(n+1) = p·z(n−1) + q·z(n−2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZOrbit {
    /// `z(−2), z(−1), …, z(N)`.
    pub values: Vec<BigRational>,
}

impl ZOrbit {
    /// Seeds `z(−1) = 1`, `z(−2) = 1/x(−1)`, `z(0) = x(0)` and runs the
    /// linear recurrence up to `z(n_max)`.
    pub fn from_initials(params: &Params, inits: &ScalarInitials, n_max: usize) -> Self {
        let z_m1 = BigRational::one();
        let z_m2 = &z_m1 / inits.x_m1();
        let z_0 = inits.x_0() * &z_m1;
        let mut values = Vec::with_capacity(n_max + 3);
        values.extend([z_m2, z_m1, z_0]);
        while values.len() < n_max + 3 {
            let k = values.len();
            values.push(params.p() * &values[k - 2] + params.q() * &values[k - 3]);
        }
        ZOrbit { values }
    }

    pub fn z(&self, n: i64) -> &BigRational {
        &self.values[(n + 2) as usize]
    }

    pub fn n_max(&self) -> i64 {
        self.values.len() as i64 - 3
    }

    /// `z(n)/z(n−1)`, or `None` where `z(n−1) = 0`.
    pub fn ratio(&self, n: i64) -> Option<BigRational> {
        let den = self.z(n - 1);
        (!den.is_zero()).then(|| self.z(n) / den)
    }
}

/// Coefficients `(S(k), S(k+1), q·S(k−1))` of
/// `z(n+1) = S(k)·z(n+1−k) + S(k+1)·z(n−k) + q·S(k−1)·z(n−1−k)`,
/// the expansion after `k` back-substitutions of the linear recurrence.
pub fn expansion_coefficients(cache: &GenPadovanCache, depth: i64) -> Result<[BigRational; 3]> {
    let q = cache.params().q();
    Ok([
        cache.try_at(depth)?.clone(),
        cache.try_at(depth + 1)?.clone(),
        q * cache.try_at(depth - 1)?,
    ])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZCheckReport {
    pub steps_checked: i64,
    /// `max |x(n) − z(n)/z(n−1)|` over the exact orbit.
    #[serde(with = "crate::numerics::serde_rational")]
    pub max_ratio_residual: BigRational,
    /// `max |z(m) − (S(m)·z(0) + S(m+1)·z(−1) + q·S(m−1)·z(−2))|`.
    #[serde(with = "crate::numerics::serde_rational")]
    pub max_expansion_residual: BigRational,
    pub ratio_mismatches: usize,
    pub expansion_mismatches: usize,
}

impl ZCheckReport {
    pub fn is_exact(&self) -> bool {
        self.ratio_mismatches == 0 && self.expansion_mismatches == 0
    }
}

/// Verifies the substitution `x(n) = z(n)/z(n−1)` against the exact orbit and
/// the expansion of `z` in generalized Padovan numbers.
pub fn z_substitution_check(
    params: &Params,
    inits: &ScalarInitials,
    steps: usize,
) -> Result<ZCheckReport> {
    let orbit = iterate_scalar(params, inits, steps, Backend::Exact);
    let z = ZOrbit::from_initials(params, inits, steps);
    let cache = generate(params, steps + 1, None);

    let mut max_ratio = BigRational::zero();
    let mut ratio_mismatches = 0;
    for n in -1..=orbit.last_index() {
        let Some(ratio) = z.ratio(n) else {
            return Err(Error::ForbiddenInitials {
                set: ForbiddenSet::F,
                index: n + 1,
            });
        };
        let x = orbit.x(n).and_then(Scalar::as_exact).expect("exact orbit");
        let residual = (x - ratio).abs();
        if !residual.is_zero() {
            ratio_mismatches += 1;
        }
        max_ratio = max_ratio.max(residual);
    }
    if let Termination::ForbiddenHit { step } = orbit.termination {
        return Err(Error::ForbiddenInitials {
            set: ForbiddenSet::F,
            index: step as i64,
        });
    }

    let q = params.q();
    let (z0, zm1, zm2) = (z.z(0), z.z(-1), z.z(-2));
    let mut max_expansion = BigRational::zero();
    let mut expansion_mismatches = 0;
    for m in -1..=z.n_max() {
        let predicted = cache.at(m) * z0 + cache.at(m + 1) * zm1 + q * cache.at(m - 1) * zm2;
        let residual = (z.z(m) - predicted).abs();
        if !residual.is_zero() {
            expansion_mismatches += 1;
        }
        max_expansion = max_expansion.max(residual);
    }

    Ok(ZCheckReport {
        steps_checked: orbit.last_index(),
        max_ratio_residual: max_ratio,
        max_expansion_residual: max_expansion,
        ratio_mismatches,
        expansion_mismatches,
    })
}
