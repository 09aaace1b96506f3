//! Closed-form solutions in terms of generalized Padovan numbers.
//!
//! For the scalar equation
//!
//! ```text
//! x(n) = (S(n+1)·x(−1) + S(n)·x(0)·x(−1) + q·S(n−1))
//!      / (S(n)·x(−1)   + S(n−1)·x(0)·x(−1) + q·S(n−2))
//! ```
//!
//! The system splits into two interleaved scalar chains:
//! `u = (x(−1), y(0), x(1), y(2), x(3), …)` and
//! `v = (y(−1), x(0), y(1), x(2), y(3), …)`, each of which obeys the scalar
//! recurrence. Odd `x` and even `y` come from `u`; even `x` and odd `y` from `v`.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::rational_to_f64;
use crate::sequence::{generate, GenPadovanCache, Params};

/// Default scan horizon for forbidden-set membership.
pub const DEFAULT_HORIZON: i64 = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScalarInitials {
    #[serde(with = "crate::numerics::serde_rational")]
    x_m1: BigRational,
    #[serde(with = "crate::numerics::serde_rational")]
    x_0: BigRational,
}

impl ScalarInitials {
    pub fn new(x_m1: BigRational, x_0: BigRational) -> Result<Self> {
        if x_m1.is_zero() || x_0.is_zero() {
            return Err(Error::InvalidInitials(format!(
                "x(-1) and x(0) must be nonzero, got {x_m1} and {x_0}"
            )));
        }
        Ok(ScalarInitials { x_m1, x_0 })
    }

    pub fn x_m1(&self) -> &BigRational {
        &self.x_m1
    }
    pub fn x_0(&self) -> &BigRational {
        &self.x_0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SystemInitials {
    #[serde(with = "crate::numerics::serde_rational")]
    x_m1: BigRational,
    #[serde(with = "crate::numerics::serde_rational")]
    x_0: BigRational,
    #[serde(with = "crate::numerics::serde_rational")]
    y_m1: BigRational,
    #[serde(with = "crate::numerics::serde_rational")]
    y_0: BigRational,
}

impl SystemInitials {
    pub fn new(
        x_m1: BigRational,
        x_0: BigRational,
        y_m1: BigRational,
        y_0: BigRational,
    ) -> Result<Self> {
        if [&x_m1, &x_0, &y_m1, &y_0].iter().any(|v| v.is_zero()) {
            return Err(Error::InvalidInitials(
                "x(-1), x(0), y(-1), y(0) must all be nonzero".into(),
            ));
        }
        Ok(SystemInitials {
            x_m1,
            x_0,
            y_m1,
            y_0,
        })
    }

    /// `x ≡ y`: the system collapses onto the scalar equation.
    pub fn symmetric(inits: &ScalarInitials) -> Self {
        SystemInitials {
            x_m1: inits.x_m1.clone(),
            x_0: inits.x_0.clone(),
            y_m1: inits.x_m1.clone(),
            y_0: inits.x_0.clone(),
        }
    }

    pub fn x_m1(&self) -> &BigRational {
        &self.x_m1
    }
    pub fn x_0(&self) -> &BigRational {
        &self.x_0
    }
    pub fn y_m1(&self) -> &BigRational {
        &self.y_m1
    }
    pub fn y_0(&self) -> &BigRational {
        &self.y_0
    }

    /// Chain seeded by `(x(−1), y(0))`; its denominators define `F₁`.
    pub fn chain_u(&self) -> ScalarInitials {
        ScalarInitials {
            x_m1: self.x_m1.clone(),
            x_0: self.y_0.clone(),
        }
    }

    /// Chain seeded by `(y(−1), x(0))`; its denominators define `F₂`.
    pub fn chain_v(&self) -> ScalarInitials {
        ScalarInitials {
            x_m1: self.y_m1.clone(),
            x_0: self.x_0.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ForbiddenSet {
    F,
    F1,
    F2,
}

impl fmt::Display for ForbiddenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ForbiddenSet::F => "F",
            ForbiddenSet::F1 => "F1",
            ForbiddenSet::F2 => "F2",
        })
    }
}

/// Scalar closed form over a shared Padovan cache.
#[derive(Debug, Clone)]
pub struct ScalarSolution {
    cache: GenPadovanCache,
    s_minus3: BigRational,
    inits: ScalarInitials,
}

impl ScalarSolution {
    /// Prepares evaluation for `−1 ≤ n ≤ n_max`.
    pub fn new(params: &Params, inits: &ScalarInitials, n_max: usize) -> Result<Self> {
        let cache = generate(params, n_max + 1, None);
        Self::with_cache(cache, inits.clone())
    }

    fn with_cache(cache: GenPadovanCache, inits: ScalarInitials) -> Result<Self> {
        let s_minus3 = cache.s_minus3()?;
        Ok(ScalarSolution {
            cache,
            s_minus3,
            inits,
        })
    }

    pub fn n_max(&self) -> i64 {
        self.cache.n_max() - 1
    }

    fn s(&self, n: i64) -> Result<&BigRational> {
        if n == -3 {
            Ok(&self.s_minus3)
        } else {
            self.cache.try_at(n)
        }
    }

    /// `S(n+1)·x(−1) + S(n)·x(0)·x(−1) + q·S(n−1)`.
    pub fn numerator(&self, n: i64) -> Result<BigRational> {
        let (a, b) = (&self.inits.x_m1, &self.inits.x_0);
        let q = self.cache.params().q();
        Ok(self.s(n + 1)? * a + self.s(n)? * b * a + q * self.s(n - 1)?)
    }

    /// `S(n)·x(−1) + S(n−1)·x(0)·x(−1) + q·S(n−2)`. At `n = −1` this uses the
    /// backward-extended `S(−3)`.
    pub fn denominator(&self, n: i64) -> Result<BigRational> {
        let (a, b) = (&self.inits.x_m1, &self.inits.x_0);
        let q = self.cache.params().q();
        Ok(self.s(n)? * a + self.s(n - 1)? * b * a + q * self.s(n - 2)?)
    }

    /// `x(n)` for `n ≥ 0`; errors when the denominator at `n` vanishes.
    pub fn value(&self, n: i64) -> Result<BigRational> {
        let den = self.denominator(n)?;
        if den.is_zero() {
            return Err(Error::ForbiddenInitials {
                set: ForbiddenSet::F,
                index: n,
            });
        }
        Ok(self.numerator(n)? / den)
    }

    /// First `n` in `[−1, horizon]` where the denominator vanishes.
    pub fn first_vanishing(&self, horizon: i64) -> Result<Option<i64>> {
        for n in -1..=horizon {
            if self.denominator(n)?.is_zero() {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }
}

/// `x(n)` from the closed form, in exact arithmetic.
pub fn x_closed(params: &Params, inits: &ScalarInitials, n: usize) -> Result<BigRational> {
    ScalarSolution::new(params, inits, n)?.value(n as i64)
}

/// Double-precision closed form. Denominator cancellation is invisible here;
/// use only when exactness is not the point.
pub fn x_closed_float(params: &Params, inits: &ScalarInitials, n: usize) -> Result<f64> {
    let (p, q) = (params.p_f64(), params.q_f64());
    let a = rational_to_f64(&inits.x_m1);
    let b = rational_to_f64(&inits.x_0);
    // s[k] = S(k − 3)
    let mut s = vec![1.0 / q, 0.0, 0.0, 1.0];
    while s.len() < n + 5 {
        let k = s.len();
        s.push(p * s[k - 2] + q * s[k - 3]);
    }
    let at = |m: usize| s[m + 3];
    let num = at(n + 1) * a + at(n) * b * a + q * s[n + 2];
    let den = at(n) * a + s[n + 2] * b * a + q * s[n + 1];
    if den == 0.0 {
        return Err(Error::ForbiddenInitials {
            set: ForbiddenSet::F,
            index: n as i64,
        });
    }
    Ok(num / den)
}

/// Closed form of the two-equation system.
#[derive(Debug, Clone)]
pub struct SystemSolution {
    u: ScalarSolution,
    v: ScalarSolution,
}

impl SystemSolution {
    pub fn new(params: &Params, inits: &SystemInitials, n_max: usize) -> Result<Self> {
        let cache = generate(params, n_max + 1, None);
        let u = ScalarSolution::with_cache(cache.clone(), inits.chain_u())?;
        let v = ScalarSolution::with_cache(cache, inits.chain_v())?;
        Ok(SystemSolution { u, v })
    }

    pub fn n_max(&self) -> i64 {
        self.u.n_max()
    }

    /// Denominator of the `F₁` (`u`) or `F₂` (`v`) chain at `n`.
    pub fn denominator(&self, set: ForbiddenSet, n: i64) -> Result<BigRational> {
        match set {
            ForbiddenSet::F1 => self.u.denominator(n),
            ForbiddenSet::F2 => self.v.denominator(n),
            ForbiddenSet::F => Err(Error::InvalidInitials(
                "the system has forbidden sets F1 and F2, not F".into(),
            )),
        }
    }

    /// `(x(n), y(n))`, checking only the denominators at `n` itself.
    pub fn value(&self, n: i64) -> Result<(BigRational, BigRational)> {
        let from_u = self.u.value(n).map_err(|e| relabel(e, ForbiddenSet::F1))?;
        let from_v = self.v.value(n).map_err(|e| relabel(e, ForbiddenSet::F2))?;
        if n % 2 == 0 {
            Ok((from_v, from_u))
        } else {
            Ok((from_u, from_v))
        }
    }

    /// First vanishing index across `F₁` and `F₂`; ties report `F₁`.
    pub fn first_vanishing(&self, horizon: i64) -> Result<Option<(ForbiddenSet, i64)>> {
        for n in -1..=horizon {
            if self.u.denominator(n)?.is_zero() {
                return Ok(Some((ForbiddenSet::F1, n)));
            }
            if self.v.denominator(n)?.is_zero() {
                return Ok(Some((ForbiddenSet::F2, n)));
            }
        }
        Ok(None)
    }
}

fn relabel(err: Error, set: ForbiddenSet) -> Error {
    match err {
        Error::ForbiddenInitials { index, .. } => Error::ForbiddenInitials { set, index },
        other => other,
    }
}

/// `(x(n), y(n))` from the even/odd closed form, after checking that no `F₁`
/// or `F₂` denominator vanishes at or before `n`.
pub fn system_closed(
    params: &Params,
    inits: &SystemInitials,
    n: usize,
) -> Result<(BigRational, BigRational)> {
    let solution = SystemSolution::new(params, inits, n)?;
    if let Some((set, index)) = solution.first_vanishing(n as i64)? {
        return Err(Error::ForbiddenInitials { set, index });
    }
    solution.value(n as i64)
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum AnyInitials {
    Scalar(ScalarInitials),
    System(SystemInitials),
}

impl From<ScalarInitials> for AnyInitials {
    fn from(v: ScalarInitials) -> Self {
        AnyInitials::Scalar(v)
    }
}

impl From<SystemInitials> for AnyInitials {
    fn from(v: SystemInitials) -> Self {
        AnyInitials::System(v)
    }
}

/// Result of an exact forbidden-set scan over `n ∈ [−1, horizon]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForbiddenReport {
    pub hit: bool,
    pub first_index: Option<i64>,
    pub which_set: Option<ForbiddenSet>,
    pub sets_scanned: Vec<ForbiddenSet>,
    pub scanned_horizon: i64,
    /// The `n = −1` term uses `S(−3) = (S(0) − p·S(−2))/q`.
    pub backward_extended: bool,
    pub note: String,
}

/// Scans the relevant denominators exactly. A clean report only certifies
/// `n ≤ horizon`; membership in the full union is not decided.
pub fn forbidden_scan(
    params: &Params,
    inits: &AnyInitials,
    horizon: i64,
) -> Result<ForbiddenReport> {
    if horizon < 1 {
        return Err(Error::ParameterDomain(format!(
            "horizon must be at least 1, got {horizon}"
        )));
    }
    let (sets, hit) = match inits {
        AnyInitials::Scalar(s) => {
            let solution = ScalarSolution::new(params, s, horizon as usize)?;
            let hit = solution
                .first_vanishing(horizon)?
                .map(|n| (ForbiddenSet::F, n));
            (vec![ForbiddenSet::F], hit)
        }
        AnyInitials::System(s) => {
            let solution = SystemSolution::new(params, s, horizon as usize)?;
            (
                vec![ForbiddenSet::F1, ForbiddenSet::F2],
                solution.first_vanishing(horizon)?,
            )
        }
    };
    let note = match hit {
        Some((set, n)) => format!("denominator of {set} vanishes at n = {n}; no earlier index vanishes"),
        None => format!(
            "no denominator vanishes for -1 <= n <= {horizon}; membership beyond the horizon is not certified"
        ),
    };
    Ok(ForbiddenReport {
        hit: hit.is_some(),
        first_index: hit.map(|(_, n)| n),
        which_set: hit.map(|(set, _)| set),
        sets_scanned: sets,
        scanned_horizon: horizon,
        backward_extended: true,
        note,
    })
}
