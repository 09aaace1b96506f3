//! Generalized Padovan numbers `S(n+1) = p·S(n−1) + q·S(n−2)` and their
//! Binet representation.
//!
//! The default seed is `S(−2) = 0, S(−1) = 0, S(0) = 1`, which forces
//! `S(1) = 0, S(2) = p, S(3) = q`. With `p = q = 1` the sequence from `S(0)`
//! is `1, 0, 1, 1, 1, 2, 2, 3, 4, 5, 7, 9, 12, …`; the classical Padovan
//! listing `1, 1, 2, 2, 3, 4, …` is the same sequence read from `S(3)`.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{rational_to_f64, Complex, CubicRoots};

/// Coefficients of `x(n+1) = (α x(n−1) + β) / (γ x(n) x(n−1))` together with
/// the reduced pair `p = β/γ`, `q = α/γ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Params {
    #[serde(with = "crate::numerics::serde_rational")]
    alpha: BigRational,
    #[serde(with = "crate::numerics::serde_rational")]
    beta: BigRational,
    #[serde(with = "crate::numerics::serde_rational")]
    gamma: BigRational,
    #[serde(with = "crate::numerics::serde_rational")]
    p: BigRational,
    #[serde(with = "crate::numerics::serde_rational")]
    q: BigRational,
}

impl Params {
    pub fn new(alpha: BigRational, beta: BigRational, gamma: BigRational) -> Result<Self> {
        if gamma.is_zero() {
            return Err(Error::ParameterDomain("gamma must be nonzero".into()));
        }
        let p = &beta / &gamma;
        let q = &alpha / &gamma;
        Ok(Params {
            alpha,
            beta,
            gamma,
            p,
            q,
        })
    }

    /// Reduced form only; echoed back as `α = q, β = p, γ = 1`.
    pub fn from_pq(p: BigRational, q: BigRational) -> Self {
        Params {
            alpha: q.clone(),
            beta: p.clone(),
            gamma: BigRational::one(),
            p,
            q,
        }
    }

    pub fn from_integers(alpha: i64, beta: i64, gamma: i64) -> Result<Self> {
        Params::new(
            BigRational::from_integer(alpha.into()),
            BigRational::from_integer(beta.into()),
            BigRational::from_integer(gamma.into()),
        )
    }

    pub fn alpha(&self) -> &BigRational {
        &self.alpha
    }
    pub fn beta(&self) -> &BigRational {
        &self.beta
    }
    pub fn gamma(&self) -> &BigRational {
        &self.gamma
    }
    pub fn p(&self) -> &BigRational {
        &self.p
    }
    pub fn q(&self) -> &BigRational {
        &self.q
    }
    pub fn p_f64(&self) -> f64 {
        rational_to_f64(&self.p)
    }
    pub fn q_f64(&self) -> f64 {
        rational_to_f64(&self.q)
    }

    /// Stability results need `p, q > 0`.
    pub fn ensure_positive(&self) -> Result<()> {
        if self.p.is_positive() && self.q.is_positive() {
            Ok(())
        } else {
            Err(Error::ParameterDomain(format!(
                "p and q must be positive, got p = {}, q = {}",
                self.p, self.q
            )))
        }
    }
}

/// Values of `S(−2), S(−1), S(0)`.
pub type InitialTriple = [BigRational; 3];

pub fn default_initials() -> InitialTriple {
    [BigRational::zero(), BigRational::zero(), BigRational::one()]
}

/// Materialized `S(−2)..=S(n_max)` in exact arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub struct GenPadovanCache {
    params: Params,
    values: Vec<BigRational>,
}

impl GenPadovanCache {
    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn n_max(&self) -> i64 {
        self.values.len() as i64 - 3
    }

    pub fn initials(&self) -> &[BigRational] {
        &self.values[..3]
    }

    pub fn get(&self, n: i64) -> Option<&BigRational> {
        if n < -2 {
            return None;
        }
        self.values.get((n + 2) as usize)
    }

    /// `S(n)`; panics outside the cached range.
    pub fn at(&self, n: i64) -> &BigRational {
        self.get(n)
            .unwrap_or_else(|| panic!("S({n}) not cached (range -2..={})", self.n_max()))
    }

    pub fn try_at(&self, n: i64) -> Result<&BigRational> {
        self.get(n).ok_or(Error::OutOfRange {
            index: n,
            n_max: self.n_max(),
        })
    }

    /// Values from `S(−2)` on.
    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// One step of the backward recurrence `S(n−2) = (S(n+1) − p·S(n−1)) / q`
    /// applied at `n = −1`. With the default seed this is `1/q`.
    pub fn s_minus3(&self) -> Result<BigRational> {
        if self.params.q.is_zero() {
            return Err(Error::ParameterDomain(
                "backward extension needs q != 0".into(),
            ));
        }
        Ok((self.at(0) - self.params.p() * self.at(-2)) / self.params.q())
    }

    /// Grows the cache in place so that `S(n_max)` is available.
    pub fn extend_to(&mut self, n_max: i64) {
        let (p, q) = (self.params.p.clone(), self.params.q.clone());
        while self.n_max() < n_max {
            let len = self.values.len();
            let next = &p * &self.values[len - 2] + &q * &self.values[len - 3];
            self.values.push(next);
        }
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.values.iter().map(rational_to_f64).collect()
    }
}

/// Builds `S(−2)..=S(n_max)`; `initials` defaults to `(0, 0, 1)`.
pub fn generate(params: &Params, n_max: usize, initials: Option<InitialTriple>) -> GenPadovanCache {
    let initials = initials.unwrap_or_else(default_initials);
    let mut cache = GenPadovanCache {
        params: params.clone(),
        values: Vec::with_capacity(n_max + 3),
    };
    cache.values.extend(initials);
    cache.extend_to(n_max as i64);
    cache
}

/// `S(n+1) / S(n)` exactly.
pub fn ratio(cache: &GenPadovanCache, n: i64) -> Result<BigRational> {
    let denom = cache.try_at(n)?;
    let numer = cache.try_at(n + 1)?;
    if denom.is_zero() {
        return Err(Error::ZeroDenominator { index: n });
    }
    Ok(numer / denom)
}

/// Weights of `S(n) = c_φ φⁿ + c_ϕ ϕⁿ + c_ϕ̄ ϕ̄ⁿ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BinetCoefficients {
    pub c_phi: Complex,
    pub c_varphi: Complex,
    pub c_varphi_conj: Complex,
    pub roots: CubicRoots,
}

impl BinetCoefficients {
    pub fn eval(&self, n: i64) -> Complex {
        let r = &self.roots;
        self.c_phi * Complex::new(r.phi, 0.0).powi(n as i32)
            + self.c_varphi * r.varphi.powi(n as i32)
            + self.c_varphi_conj * r.varphi_conj.powi(n as i32)
    }

    /// Real part of [`eval`](Self::eval); the imaginary part cancels for real seeds.
    pub fn eval_real(&self, n: i64) -> f64 {
        self.eval(n).re
    }
}

/// Solves the Vandermonde system `Σ cᵢ λᵢⁿ = S(n)` at `n = −2, −1, 0`.
pub fn binet_coefficients(roots: &CubicRoots, initials: &[f64; 3]) -> Result<BinetCoefficients> {
    let sep = roots.min_separation();
    if sep.is_nan() || sep <= 1e-9 {
        return Err(Error::IllConditioned(format!(
            "characteristic roots nearly repeated (separation {sep:e})"
        )));
    }
    let lambdas = roots.all();
    // With dᵢ = cᵢ λᵢ⁻², the conditions read Σ dᵢ λᵢᵏ = S(k−2), k = 0, 1, 2:
    // a transposed Vandermonde system whose inverse rows are the Lagrange basis.
    let [b0, b1, b2] = *initials;
    let weight = |i: usize| {
        let li = lambdas[i];
        let lj = lambdas[(i + 1) % 3];
        let lk = lambdas[(i + 2) % 3];
        let d = (b2 - (lj + lk) * b1 + lj * lk * b0) / ((li - lj) * (li - lk));
        d * li * li
    };
    Ok(BinetCoefficients {
        c_phi: weight(0),
        c_varphi: weight(1),
        c_varphi_conj: weight(2),
        roots: *roots,
    })
}

/// How far the weights `(ϕ−1)(ϕ̄−1)/((φ−ϕ)(φ−ϕ̄))` etc. land from the exact sequence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightFormulaReport {
    pub n_max: i64,
    pub weights: [Complex; 3],
    pub value_at_zero: f64,
    pub max_abs_deviation: f64,
    pub max_abs_value: f64,
    pub consistent: bool,
}

/// Evaluates the closed-form weight expression
/// `(ϕ−1)(ϕ̄−1)/((φ−ϕ)(φ−ϕ̄))`, `(φ−1)(ϕ̄−1)/((ϕ−φ)(ϕ−ϕ̄))`,
/// `(φ−1)(ϕ−1)/((φ−ϕ̄)(ϕ−ϕ̄))` and compares the resulting `S(n)` with the
/// cache for `0 ≤ n ≤ n_max`. Diagnostic only.
pub fn compare_weight_formula(roots: &CubicRoots, cache: &GenPadovanCache) -> WeightFormulaReport {
    let one = Complex::new(1.0, 0.0);
    let phi = Complex::new(roots.phi, 0.0);
    let (v, vc) = (roots.varphi, roots.varphi_conj);
    let weights = [
        (v - one) * (vc - one) / ((phi - v) * (phi - vc)),
        (phi - one) * (vc - one) / ((v - phi) * (v - vc)),
        (phi - one) * (v - one) / ((phi - vc) * (v - vc)),
    ];
    let eval = |n: i64| -> f64 {
        (weights[0] * phi.powi(n as i32)
            + weights[1] * v.powi(n as i32)
            + weights[2] * vc.powi(n as i32))
        .re
    };
    let mut max_dev = 0.0_f64;
    let mut max_val = 0.0_f64;
    for n in 0..=cache.n_max() {
        let exact = rational_to_f64(cache.at(n));
        max_dev = max_dev.max((eval(n) - exact).abs());
        max_val = max_val.max(exact.abs());
    }
    WeightFormulaReport {
        n_max: cache.n_max(),
        weights,
        value_at_zero: eval(0),
        max_abs_deviation: max_dev,
        max_abs_value: max_val,
        consistent: max_dev < 1e-6 * max_val,
    }
}
