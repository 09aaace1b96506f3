//! Equilibrium, linearization and attractor experiments.
//!
//! At the positive equilibrium `φ` (the positive root of `λ³ = pλ + q`) the
//! map `f(x, y) = (p·y + q)/(x·y)` has partials `t₁ = −(pφ + q)/φ³ = −1` and
//! `t₂ = −q/φ³`. Clark's sum `|t₁| + |t₂| = 1 + q/φ³` therefore never drops
//! below one, so that sufficient condition says nothing here; the
//! Schur–Cohn (Jury) conditions on `λ² − t₁λ − t₂` and the explicit eigenvalues
//! decide instead.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::closed_form::{ScalarInitials, SystemInitials};
use crate::dynamics::{iterate_scalar, iterate_system, Termination};
use crate::error::{Error, Result};
use crate::numerics::{
    check_r_formula, rational_from_f64, rational_to_f64, solve_characteristic_cubic, Backend,
    Complex, RFormulaCheck, Scalar,
};
use crate::sequence::Params;

/// Default sweep seed (`0x9AD07A`, "PAD0VA" with look-alike hex digits).
pub const DEFAULT_SEED: u64 = 0x9A_D07A;

/// Margin used for strict inequalities in the stability verdicts.
pub const STABILITY_MARGIN: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Stable,
    Marginal,
    Unstable,
}

/// Exact check of a double-precision equilibrium.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilibriumCertificate {
    pub phi: f64,
    /// The rational the residual was evaluated at: either an exact rational
    /// root, or the exact value of `phi`.
    #[serde(with = "crate::numerics::serde_rational")]
    pub witness: BigRational,
    /// `witness³ − p·witness − q`, exactly.
    #[serde(with = "crate::numerics::serde_rational")]
    pub residual: BigRational,
    pub residual_f64: f64,
    /// True when `witness` is an exact root.
    pub exact_root: bool,
}

fn cubic_residual(params: &Params, x: &BigRational) -> BigRational {
    x * x * x - params.p() * x - params.q()
}

/// Continued-fraction convergents of `x` with denominators up to `max_den`.
fn convergents(x: f64, max_den: i64) -> Vec<BigRational> {
    let mut out = Vec::new();
    let (mut h0, mut h1) = (1i128, x.floor() as i128);
    let (mut k0, mut k1) = (0i128, 1i128);
    let mut frac = x - x.floor();
    out.push(BigRational::from_integer(BigInt::from(h1)));
    for _ in 0..40 {
        if frac.abs() < 1e-15 {
            break;
        }
        let inv = 1.0 / frac;
        let a = inv.floor() as i128;
        frac = inv - inv.floor();
        let (h2, k2) = (a * h1 + h0, a * k1 + k0);
        if k2 > max_den as i128 {
            break;
        }
        out.push(BigRational::new(BigInt::from(h2), BigInt::from(k2)));
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
    }
    out
}

/// The positive equilibrium `φ` with an exact residual certificate.
pub fn equilibrium(params: &Params) -> Result<EquilibriumCertificate> {
    params.ensure_positive()?;
    let roots = solve_characteristic_cubic(params.p_f64(), params.q_f64())?;
    // A rational root is always found among the small-denominator convergents.
    for candidate in convergents(roots.phi, 1_000_000) {
        if candidate.is_positive() && cubic_residual(params, &candidate).is_zero() {
            return Ok(EquilibriumCertificate {
                phi: rational_to_f64(&candidate),
                witness: candidate,
                residual: BigRational::zero(),
                residual_f64: 0.0,
                exact_root: true,
            });
        }
    }
    let witness = rational_from_f64(roots.phi).expect("finite root");
    let residual = cubic_residual(params, &witness);
    Ok(EquilibriumCertificate {
        phi: roots.phi,
        residual_f64: rational_to_f64(&residual),
        witness,
        residual,
        exact_root: false,
    })
}

/// Second-order Schur–Cohn test for `λ² + a₁λ + a₀`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JuryReport {
    pub a1: f64,
    pub a0: f64,
    /// `(|a₀| < 1, |a₁| < 1 + a₀)`.
    pub conditions: (bool, bool),
    pub verdict: Verdict,
    /// Verdict from the explicit eigenvalue moduli matches.
    pub agrees_with_eigenvalues: bool,
}

pub fn jury_quadratic(a1: f64, a0: f64) -> Verdict {
    let c1 = 1.0 - a0.abs();
    let c2 = 1.0 + a0 - a1.abs();
    if c1 > STABILITY_MARGIN && c2 > STABILITY_MARGIN {
        Verdict::Stable
    } else if c1 < -STABILITY_MARGIN || c2 < -STABILITY_MARGIN {
        Verdict::Unstable
    } else {
        Verdict::Marginal
    }
}

/// Roots of `λ² + a₁λ + a₀`.
pub fn quadratic_roots(a1: f64, a0: f64) -> [Complex; 2] {
    let disc = Complex::new(a1 * a1 - 4.0 * a0, 0.0).sqrt();
    [(-a1 + disc) * 0.5, (-a1 - disc) * 0.5]
}

fn radius_verdict(rho: f64) -> Verdict {
    if rho < 1.0 - STABILITY_MARGIN {
        Verdict::Stable
    } else if rho > 1.0 + STABILITY_MARGIN {
        Verdict::Unstable
    } else {
        Verdict::Marginal
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClarkCheck {
    pub sum: f64,
    pub holds: bool,
    pub explanation: String,
}

pub fn clark_criterion(t1: f64, t2: f64) -> ClarkCheck {
    let sum = t1.abs() + t2.abs();
    let holds = sum < 1.0;
    let explanation = if holds {
        format!(
            "|t1| + |t2| = {sum} < 1: sufficient condition for local asymptotic stability holds"
        )
    } else {
        format!("|t1| + |t2| = {sum} >= 1: the sufficient condition is inconclusive")
    };
    ClarkCheck {
        sum,
        holds,
        explanation,
    }
}

/// Values of the R-parametrized expressions for `t₁`, `t₂` and the bound used
/// for `|t₁|`, set against the analytic partials.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RExpressions {
    /// `−(pR² + 12p² + 6qR) / (R⁶ + pR² + 12p² + 48p³/R²)`
    pub t1: Complex,
    /// `−6qR / (R⁶ + pR² + 12p² + 48p³/R²)`
    pub t2: Complex,
    /// `(pR² + 12p² + 12qR) / (R⁶ + pR² + 12p² + 48p³/R²)`
    pub bound: Complex,
    pub t1_matches: bool,
    pub t2_matches: bool,
}

fn r_expressions(p: f64, q: f64, r: Complex, t1: f64, t2: f64) -> RExpressions {
    let den = r.powi(6) + p * r * r + 12.0 * p * p + 48.0 * p * p * p / (r * r);
    let e1 = -(p * r * r + 12.0 * p * p + 6.0 * q * r) / den;
    let e2 = -(6.0 * q * r) / den;
    let bound = (p * r * r + 12.0 * p * p + 12.0 * q * r) / den;
    RExpressions {
        t1: e1,
        t2: e2,
        bound,
        t1_matches: (e1 - t1).norm() < 1e-6,
        t2_matches: (e2 - t2).norm() < 1e-6,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityReport {
    pub p: f64,
    pub q: f64,
    pub phi: f64,
    pub certificate: EquilibriumCertificate,
    pub r_formula: RFormulaCheck,
    pub t1: f64,
    pub t2: f64,
    pub t1_fd: f64,
    pub t2_fd: f64,
    pub r_expressions: RExpressions,
    pub clark: ClarkCheck,
    pub jury: JuryReport,
    pub eigenvalues: [Complex; 2],
    pub spectral_radius: f64,
    pub verdict: Verdict,
}

impl StabilityReport {
    pub fn clark_sum(&self) -> f64 {
        self.clark.sum
    }
}

fn map(p: f64, q: f64, x: f64, y: f64) -> f64 {
    (p * y + q) / (x * y)
}

/// Linearization at `(φ, φ)` with analytic and finite-difference partials.
pub fn linearize(params: &Params) -> Result<StabilityReport> {
    let certificate = equilibrium(params)?;
    let (p, q) = (params.p_f64(), params.q_f64());
    let phi = certificate.phi;
    let phi3 = phi * phi * phi;
    let t1 = -(p * phi + q) / phi3;
    let t2 = -q / phi3;

    let h = 1e-6 * phi;
    let t1_fd = (map(p, q, phi + h, phi) - map(p, q, phi - h, phi)) / (2.0 * h);
    let t2_fd = (map(p, q, phi, phi + h) - map(p, q, phi, phi - h)) / (2.0 * h);

    let roots = solve_characteristic_cubic(p, q)?;
    let r_formula = check_r_formula(p, q, &roots);
    let r_exprs = r_expressions(p, q, roots.cardano_radical, t1, t2);

    // y(n+1) = t₁y(n) + t₂y(n−1)  ⇒  λ² − t₁λ − t₂ = 0
    let (a1, a0) = (-t1, -t2);
    let eigenvalues = quadratic_roots(a1, a0);
    let spectral_radius = eigenvalues[0].norm().max(eigenvalues[1].norm());
    let verdict = radius_verdict(spectral_radius);
    let jury_verdict = jury_quadratic(a1, a0);
    let jury = JuryReport {
        a1,
        a0,
        conditions: (a0.abs() < 1.0, a1.abs() < 1.0 + a0),
        verdict: jury_verdict,
        agrees_with_eigenvalues: jury_verdict == verdict,
    };
    let mut clark = clark_criterion(t1, t2);
    if !clark.holds {
        clark.explanation = format!(
            "{}; here t1 = -1 identically, so the sum equals 1 + q/phi^3 = {} for every p, q > 0. \
             Local stability is decided by the Jury conditions and eigenvalue moduli instead.",
            clark.explanation,
            1.0 + q / phi3
        );
    }
    Ok(StabilityReport {
        p,
        q,
        phi,
        certificate,
        r_formula,
        t1,
        t2,
        t1_fd,
        t2_fd,
        r_expressions: r_exprs,
        clark,
        jury,
        eigenvalues,
        spectral_radius,
        verdict,
    })
}

pub fn clark_check(report: &StabilityReport) -> ClarkCheck {
    report.clark.clone()
}

pub fn jury_check(report: &StabilityReport) -> JuryReport {
    report.jury
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepMode {
    Scalar,
    System,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    pub n_trials: usize,
    pub n_steps: usize,
    pub tolerance: f64,
    pub seed: u64,
    /// Initials are drawn uniformly from `(lo, hi]`.
    pub initial_range: (f64, f64),
    pub mode: SweepMode,
    #[serde(skip)]
    pub parallel: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            n_trials: 500,
            n_steps: 300,
            tolerance: 1e-6,
            seed: DEFAULT_SEED,
            initial_range: (0.05, 20.0),
            mode: SweepMode::Scalar,
            parallel: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepFailure {
    pub trial: usize,
    pub initials: Vec<f64>,
    pub final_error: Option<f64>,
    pub termination: Termination,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub n_trials: usize,
    pub n_steps: usize,
    pub tolerance: f64,
    pub seed: u64,
    pub initial_range: (f64, f64),
    pub mode: SweepMode,
    pub phi: f64,
    pub converged_count: usize,
    pub worst_final_error: f64,
    pub failures: Vec<SweepFailure>,
}

struct TrialOutcome {
    initials: Vec<f64>,
    final_error: Option<f64>,
    termination: Termination,
}

fn exact(x: f64) -> BigRational {
    rational_from_f64(x).expect("finite draw")
}

fn run_trial(params: &Params, config: &SweepConfig, phi: f64, trial: usize) -> TrialOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(trial as u64);
    let (lo, hi) = config.initial_range;
    let width = match config.mode {
        SweepMode::Scalar => 2,
        SweepMode::System => 4,
    };
    // hi − (hi − lo)·u with u ∈ [0, 1) lands in (lo, hi].
    let initials: Vec<f64> = (0..width)
        .map(|_| hi - (hi - lo) * rng.random::<f64>())
        .collect();
    let (termination, final_error) = match config.mode {
        SweepMode::Scalar => {
            let inits = ScalarInitials::new(exact(initials[0]), exact(initials[1]))
                .expect("draws are positive");
            let orbit = iterate_scalar(params, &inits, config.n_steps, Backend::Float);
            let err = (orbit.last().to_f64() - phi).abs();
            (orbit.termination, err)
        }
        SweepMode::System => {
            let inits = SystemInitials::new(
                exact(initials[0]),
                exact(initials[1]),
                exact(initials[2]),
                exact(initials[3]),
            )
            .expect("draws are positive");
            let orbit = iterate_system(params, &inits, config.n_steps, Backend::Float);
            let (x, y) = orbit.last();
            let err = (x.to_f64() - phi).abs().max((y.to_f64() - phi).abs());
            (orbit.termination, err)
        }
    };
    let final_error =
        (termination.is_completed() && final_error.is_finite()).then_some(final_error);
    TrialOutcome {
        initials,
        final_error,
        termination,
    }
}

/// Draws `n_trials` initial conditions, iterates each in double precision for
/// `n_steps`, and counts those ending within `tolerance` of `φ`.
///
/// Trial `i` uses ChaCha8 stream `i` under `seed`, so serial and parallel runs
/// produce identical reports.
pub fn attractor_sweep(params: &Params, config: &SweepConfig) -> Result<SweepReport> {
    params.ensure_positive()?;
    if config.n_trials == 0 || config.n_steps == 0 {
        return Err(Error::ParameterDomain(
            "n_trials and n_steps must be at least 1".into(),
        ));
    }
    let (lo, hi) = config.initial_range;
    if !(lo >= 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::ParameterDomain(format!(
            "initial range must satisfy 0 <= lo < hi, got ({lo}, {hi}]"
        )));
    }
    let phi = equilibrium(params)?.phi;
    let outcomes: Vec<TrialOutcome> = if config.parallel {
        (0..config.n_trials)
            .into_par_iter()
            .map(|i| run_trial(params, config, phi, i))
            .collect()
    } else {
        (0..config.n_trials)
            .map(|i| run_trial(params, config, phi, i))
            .collect()
    };

    let mut converged_count = 0;
    let mut worst = 0.0_f64;
    let mut failures = Vec::new();
    for (trial, outcome) in outcomes.into_iter().enumerate() {
        if let Some(err) = outcome.final_error {
            worst = worst.max(err);
        }
        match outcome.final_error {
            Some(err) if err < config.tolerance => converged_count += 1,
            _ => failures.push(SweepFailure {
                trial,
                initials: outcome.initials,
                final_error: outcome.final_error,
                termination: outcome.termination,
            }),
        }
    }
    Ok(SweepReport {
        n_trials: config.n_trials,
        n_steps: config.n_steps,
        tolerance: config.tolerance,
        seed: config.seed,
        initial_range: config.initial_range,
        mode: config.mode,
        phi,
        converged_count,
        worst_final_error: worst,
        failures,
    })
}

/// Grid search for equilibria of the system off the diagonal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymmetricScan {
    pub grid: usize,
    pub upper: f64,
    /// Interior grid minima of the residual away from `(φ, φ)`, each used as a
    /// Newton starting point.
    pub local_minima_examined: usize,
    /// Newton-polished zeros of `(x²y − px − q, xy² − py − q)` with
    /// `x, y > 0` and `x ≠ y`.
    pub asymmetric_equilibria: Vec<(f64, f64)>,
}

fn system_residual(p: f64, q: f64, x: f64, y: f64) -> f64 {
    (x * x * y - p * x - q).abs() + (x * y * y - p * y - q).abs()
}

fn polish(p: f64, q: f64, mut x: f64, mut y: f64) -> Option<(f64, f64)> {
    for _ in 0..60 {
        let f1 = x * x * y - p * x - q;
        let f2 = x * y * y - p * y - q;
        if f1.abs() + f2.abs() < 1e-12 {
            return Some((x, y));
        }
        let (a, b) = (2.0 * x * y - p, x * x);
        let (c, d) = (y * y, 2.0 * x * y - p);
        let det = a * d - b * c;
        if det.abs() < 1e-300 {
            return None;
        }
        x -= (d * f1 - b * f2) / det;
        y -= (a * f2 - c * f1) / det;
        if !(x.is_finite() && y.is_finite()) {
            return None;
        }
    }
    None
}

/// Scans `(0, upper]²` on a `grid × grid` lattice and polishes every interior
/// local minimum. Evidence only: a coarse grid can miss basins.
pub fn asymmetric_equilibrium_scan(
    p: f64,
    q: f64,
    phi: f64,
    grid: usize,
    upper: f64,
) -> AsymmetricScan {
    let h = upper / grid as f64;
    let coord = |i: usize| (i + 1) as f64 * h;
    let values: Vec<Vec<f64>> = (0..grid)
        .map(|i| {
            (0..grid)
                .map(|j| system_residual(p, q, coord(i), coord(j)))
                .collect()
        })
        .collect();
    let mut examined = 0;
    let mut found: Vec<(f64, f64)> = Vec::new();
    for i in 1..grid - 1 {
        for j in 1..grid - 1 {
            let v = values[i][j];
            let (x, y) = (coord(i), coord(j));
            if (x - phi).abs() <= 2.0 * h && (y - phi).abs() <= 2.0 * h {
                continue;
            }
            let is_min = (i - 1..=i + 1)
                .flat_map(|a| (j - 1..=j + 1).map(move |b| (a, b)))
                .all(|(a, b)| values[a][b] >= v);
            if !is_min {
                continue;
            }
            examined += 1;
            if let Some((px, py)) = polish(p, q, x, y) {
                let asymmetric = px > 0.0 && py > 0.0 && (px - py).abs() > 1e-6 * phi;
                let known = found
                    .iter()
                    .any(|&(fx, fy)| (fx - px).abs() + (fy - py).abs() < 1e-6);
                if asymmetric && !known {
                    found.push((px, py));
                }
            }
        }
    }
    AsymmetricScan {
        grid,
        upper,
        local_minima_examined: examined,
        asymmetric_equilibria: found,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SystemEquilibrium {
    pub x: f64,
    pub y: f64,
    pub certificate: EquilibriumCertificate,
    /// `max(|x − f(E)|, |y − g(E)|)` evaluated at `E = (φ, φ)`.
    pub substitution_residual: f64,
    pub scan: AsymmetricScan,
}

/// `E = (φ, φ)` for the system, with a substitution check and an off-diagonal scan.
pub fn system_equilibrium(params: &Params) -> Result<SystemEquilibrium> {
    let certificate = equilibrium(params)?;
    let (p, q) = (params.p_f64(), params.q_f64());
    let phi = certificate.phi;
    let substitution_residual = (phi - map(p, q, phi, phi))
        .abs()
        .max((phi - map(p, q, phi, phi)).abs());
    let scan = asymmetric_equilibrium_scan(p, q, phi, 400, 10.0);
    Ok(SystemEquilibrium {
        x: phi,
        y: phi,
        certificate,
        substitution_residual,
        scan,
    })
}

/// `|Scalar − φ|` helper for callers working with orbit states.
pub fn distance_to(value: &Scalar, phi: f64) -> f64 {
    (value.to_f64() - phi).abs()
}

/// Exact `f64` of a certificate residual, saturating for huge values.
pub fn residual_magnitude(cert: &EquilibriumCertificate) -> f64 {
    cert.residual.abs().to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PLASTIC: f64 = 1.324_717_957_244_746;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn params(p: BigRational, q: BigRational) -> Params {
        Params::from_pq(p, q)
    }

    #[test]
    fn plastic_equilibrium() {
        let cert = equilibrium(&params(rat(1, 1), rat(1, 1))).unwrap();
        assert!((cert.phi - PLASTIC).abs() < 1e-14);
        assert!(!cert.exact_root);
        assert!(residual_magnitude(&cert) < 1e-12);
    }

    #[test]
    fn bracketed_equilibrium() {
        let cert = equilibrium(&params(rat(5, 4), rat(1, 2))).unwrap();
        assert!((cert.phi - 1.2805).abs() < 1e-3);
    }

    #[test]
    fn rational_equilibrium_is_exact() {
        let cert = equilibrium(&Params::from_integers(2, 3, 5).unwrap()).unwrap();
        assert_eq!(cert.phi, 1.0);
        assert!(cert.exact_root);
        assert_eq!(cert.witness, rat(1, 1));
        assert!(cert.residual.is_zero());
        // p = 2, q = 4: λ³ − 2λ − 4 = (λ − 2)(λ² + 2λ + 2)
        let cert = equilibrium(&params(rat(2, 1), rat(4, 1))).unwrap();
        assert_eq!(cert.witness, rat(2, 1));
    }

    #[test]
    fn equilibrium_rejects_non_positive() {
        assert!(equilibrium(&params(rat(-1, 1), rat(1, 1))).is_err());
        assert!(equilibrium(&params(rat(1, 1), rat(0, 1))).is_err());
    }

    #[test]
    fn linearize_plastic() {
        let report = linearize(&params(rat(1, 1), rat(1, 1))).unwrap();
        let t2 = -1.0 / PLASTIC.powi(3);
        assert!((report.t1 + 1.0).abs() < 1e-12);
        assert!((report.t2 - t2).abs() < 1e-12);
        assert!((report.t2 + 0.4302).abs() < 1e-4);
        assert!(report.spectral_radius < 1.0);
        assert_eq!(report.verdict, Verdict::Stable);
        assert!(!report.r_expressions.t1_matches);
    }

    #[test]
    fn linearize_rational_equilibrium() {
        let report = linearize(&params(rat(3, 5), rat(2, 5))).unwrap();
        assert_eq!(report.phi, 1.0);
        assert!((report.t1 + 1.0).abs() < 1e-15);
        assert!((report.t2 + 0.4).abs() < 1e-15);
        for ev in report.eigenvalues {
            assert!((ev.norm() - 0.4f64.sqrt()).abs() < 1e-12);
        }
        assert_eq!(report.verdict, Verdict::Stable);
    }

    #[test]
    fn finite_differences_agree() {
        for p in [0.25, 0.5, 1.0, 1.25, 2.0, 5.0] {
            for q in [0.25, 0.5, 1.0, 1.25, 2.0, 5.0] {
                let par =
                    Params::from_pq(rational_from_f64(p).unwrap(), rational_from_f64(q).unwrap());
                let r = linearize(&par).unwrap();
                assert!((r.t1_fd - r.t1).abs() < 1e-6, "p = {p}, q = {q}");
                assert!((r.t2_fd - r.t2).abs() < 1e-6, "p = {p}, q = {q}");
            }
        }
    }

    #[test]
    fn clark_values() {
        let c = clark_check(&linearize(&params(rat(1, 1), rat(1, 1))).unwrap());
        assert!(!c.holds);
        assert!((c.sum - (1.0 + 1.0 / PLASTIC.powi(3))).abs() < 1e-12);
        assert!((c.sum - 1.4302).abs() < 1e-4);
        assert!(c.explanation.contains("inconclusive"));

        let c = clark_check(&linearize(&params(rat(3, 5), rat(2, 5))).unwrap());
        assert!(!c.holds);
        assert!((c.sum - 1.4).abs() < 1e-15);

        assert!(clark_criterion(0.3, 0.2).holds);
    }

    #[test]
    fn jury_values() {
        let j = jury_check(&linearize(&params(rat(1, 1), rat(1, 1))).unwrap());
        assert_eq!(j.verdict, Verdict::Stable);
        assert!((j.a1 - 1.0).abs() < 1e-12);
        assert!((j.a0 - 0.4302).abs() < 1e-4);
        assert_eq!(j.conditions, (true, true));
        assert!(j.agrees_with_eigenvalues);

        let j = jury_check(&linearize(&params(rat(3, 5), rat(2, 5))).unwrap());
        assert_eq!(j.verdict, Verdict::Stable);
        assert!((j.a0 - 0.4).abs() < 1e-15);

        assert_eq!(jury_quadratic(0.5, 1.0), Verdict::Marginal);
        assert_eq!(jury_quadratic(0.0, 1.5), Verdict::Unstable);
        assert_eq!(jury_quadratic(2.5, 0.5), Verdict::Unstable);
    }

    #[test]
    fn jury_matches_eigenvalues_on_a_grid() {
        for i in -20..=20 {
            for j in -20..=20 {
                let (a1, a0) = (i as f64 * 0.13, j as f64 * 0.07);
                let [r1, r2] = quadratic_roots(a1, a0);
                let rho = r1.norm().max(r2.norm());
                let verdict = jury_quadratic(a1, a0);
                if (rho - 1.0).abs() > 1e-9 {
                    assert_eq!(
                        verdict == Verdict::Stable,
                        rho < 1.0,
                        "a1 = {a1}, a0 = {a0}"
                    );
                }
            }
        }
    }

    #[test]
    fn example_scenarios_converge() {
        let p = Params::from_integers(2, 5, 4).unwrap();
        let inits = ScalarInitials::new(rat(3, 1), rat(1, 5)).unwrap();
        let orbit = iterate_scalar(&p, &inits, 100, Backend::Float);
        let phi = equilibrium(&p).unwrap().phi;
        assert!(distance_to(orbit.last(), phi) < 1e-6);

        let p = Params::from_integers(2, 3, 5).unwrap();
        let inits = SystemInitials::new(rat(6, 5), rat(18, 5), rat(23, 10), rat(4, 5)).unwrap();
        let orbit = iterate_system(&p, &inits, 100, Backend::Float);
        let (x, y) = orbit.last();
        assert!(distance_to(x, 1.0) < 1e-6 && distance_to(y, 1.0) < 1e-6);
    }

    #[test]
    fn sweep_plastic() {
        let config = SweepConfig::default();
        let report = attractor_sweep(&params(rat(1, 1), rat(1, 1)), &config).unwrap();
        assert_eq!(report.converged_count, 500);
        assert!(report.failures.is_empty());
        assert!(report.worst_final_error < 1e-6);
    }

    #[test]
    fn sweep_parallel_equals_serial() {
        let par = params(rat(5, 4), rat(1, 2));
        let mut config = SweepConfig {
            n_trials: 64,
            n_steps: 120,
            mode: SweepMode::System,
            ..SweepConfig::default()
        };
        let serial = attractor_sweep(&par, &config).unwrap();
        config.parallel = true;
        let parallel = attractor_sweep(&par, &config).unwrap();
        assert_eq!(serial, parallel);
    }

    #[test]
    fn sweep_records_failures() {
        let config = SweepConfig {
            n_trials: 10,
            n_steps: 3,
            ..SweepConfig::default()
        };
        let report = attractor_sweep(&params(rat(1, 1), rat(1, 1)), &config).unwrap();
        assert_eq!(report.converged_count + report.failures.len(), 10);
        assert!(!report.failures.is_empty());
        let bad = SweepConfig {
            n_trials: 0,
            ..SweepConfig::default()
        };
        assert!(attractor_sweep(&params(rat(1, 1), rat(1, 1)), &bad).is_err());
    }

    #[test]
    fn sweep_draws_stay_in_range() {
        let config = SweepConfig {
            n_trials: 200,
            n_steps: 1,
            initial_range: (0.05, 0.06),
            ..SweepConfig::default()
        };
        let report = attractor_sweep(&params(rat(1, 1), rat(1, 1)), &config).unwrap();
        for f in &report.failures {
            assert!(f.initials.iter().all(|&x| x > 0.05 && x <= 0.06));
        }
    }

    #[test]
    fn system_equilibrium_values() {
        let e = system_equilibrium(&Params::from_integers(2, 3, 5).unwrap()).unwrap();
        assert_eq!((e.x, e.y), (1.0, 1.0));
        assert!(e.substitution_residual < 1e-12);
        assert!(e.scan.asymmetric_equilibria.is_empty());
    }

    #[test]
    fn system_equilibrium_is_plastic_for_unit_params() {
        let e = system_equilibrium(&params(rat(1, 1), rat(1, 1))).unwrap();
        assert!((e.x - PLASTIC).abs() < 1e-12);
        assert_eq!(e.x, e.y);
        assert!(e.substitution_residual < 1e-12);
        assert!(e.scan.asymmetric_equilibria.is_empty());
    }

    #[test]
    fn polishing_finds_the_diagonal_root() {
        let (x, y) = polish(1.0, 1.0, 1.5, 1.2).unwrap();
        assert!((x - PLASTIC).abs() < 1e-10 && (y - PLASTIC).abs() < 1e-10);
    }
}
