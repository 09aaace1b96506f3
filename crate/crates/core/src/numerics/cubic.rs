use serde::Serialize;

use super::Complex;
use crate::error::{Error, Result};

/// The three roots of `λ³ − pλ − q = 0` for `p, q > 0`.
///
/// `phi` is the unique positive root. The other two come from deflating the
/// cubic by `(λ − phi)`: they form a complex-conjugate pair when
/// `4p³ < 27q²`, and two negative reals otherwise (in which case
/// `varphi_conj` is simply the second real root).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CubicRoots {
    pub p: f64,
    pub q: f64,
    pub phi: f64,
    pub varphi: Complex,
    pub varphi_conj: Complex,
    /// Cardano radical `∛(108q + 12√(81q² − 12p³))`, principal branches.
    pub cardano_radical: Complex,
}

impl CubicRoots {
    pub fn all(&self) -> [Complex; 3] {
        [Complex::new(self.phi, 0.0), self.varphi, self.varphi_conj]
    }

    /// `|λ³ − pλ − q|` at `λ`.
    pub fn residual(&self, lambda: Complex) -> f64 {
        (lambda * lambda * lambda - self.p * lambda - self.q).norm()
    }

    pub fn is_complex_pair(&self) -> bool {
        self.varphi.im != 0.0
    }

    /// Smallest pairwise distance between the roots.
    pub fn min_separation(&self) -> f64 {
        let r = self.all();
        let d01 = (r[0] - r[1]).norm();
        let d02 = (r[0] - r[2]).norm();
        let d12 = (r[1] - r[2]).norm();
        d01.min(d02).min(d12)
    }
}

fn cubic(p: f64, q: f64, x: f64) -> f64 {
    x * x * x - p * x - q
}

/// Positive real root of `λ³ = pλ + q` by bisection on `[0, 1 + p + q]`,
/// carried down to adjacent doubles.
///
/// Needs `q ≥ 0` and `p ≥ 0` so that the bracket is valid; no other checks.
pub fn positive_real_root(p: f64, q: f64) -> f64 {
    let mut lo = 0.0_f64;
    let mut hi = 1.0 + p + q;
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f = cubic(p, q, mid);
        if f == 0.0 {
            return mid;
        }
        if f < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if cubic(p, q, lo).abs() <= cubic(p, q, hi).abs() {
        lo
    } else {
        hi
    }
}

fn cardano_radical(p: f64, q: f64) -> Complex {
    let radicand = Complex::new(81.0 * q * q - 12.0 * p * p * p, 0.0);
    let cube = 108.0 * q + 12.0 * radicand.sqrt();
    principal_cbrt(cube)
}

/// Principal cube root: argument in (−π/3, π/3].
fn principal_cbrt(z: Complex) -> Complex {
    if z.im == 0.0 && z.re >= 0.0 {
        return Complex::new(z.re.cbrt(), 0.0);
    }
    let (r, theta) = z.to_polar();
    Complex::from_polar(r.cbrt(), theta / 3.0)
}

pub fn solve_characteristic_cubic(p: f64, q: f64) -> Result<CubicRoots> {
    if !(p > 0.0 && p.is_finite()) || !(q > 0.0 && q.is_finite()) {
        return Err(Error::ParameterDomain(format!(
            "characteristic cubic needs p > 0 and q > 0, got p = {p}, q = {q}"
        )));
    }
    Ok(roots_unchecked(p, q))
}

pub(crate) fn roots_unchecked(p: f64, q: f64) -> CubicRoots {
    let phi = positive_real_root(p, q);
    // λ³ − pλ − q = (λ − φ)(λ² + φλ + φ² − p)
    let disc = Complex::new(4.0 * p - 3.0 * phi * phi, 0.0);
    let sqrt_disc = disc.sqrt();
    let varphi = (Complex::new(-phi, 0.0) + sqrt_disc) * 0.5;
    let varphi_conj = (Complex::new(-phi, 0.0) - sqrt_disc) * 0.5;
    CubicRoots {
        p,
        q,
        phi,
        varphi,
        varphi_conj,
        cardano_radical: cardano_radical(p, q),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RadicalBranch {
    /// `81q² ≥ 12p³`: every radical is real.
    Real,
    /// `81q² < 12p³`: the inner square root is imaginary and the cube root is
    /// taken on the principal branch.
    ComplexPrincipal,
}

/// Outcome of evaluating `(R² + 12p) / (6R)` against the solver's root.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RFormulaCheck {
    pub branch: RadicalBranch,
    pub radical: Complex,
    pub phi_from_formula: Complex,
    pub residual: f64,
    pub consistent: bool,
}

pub fn check_r_formula(p: f64, q: f64, roots: &CubicRoots) -> RFormulaCheck {
    let branch = if 81.0 * q * q >= 12.0 * p * p * p {
        RadicalBranch::Real
    } else {
        RadicalBranch::ComplexPrincipal
    };
    let r = cardano_radical(p, q);
    let phi_from_formula = (r * r + 12.0 * p) / (6.0 * r);
    let residual = (phi_from_formula - roots.phi).norm();
    RFormulaCheck {
        branch,
        radical: r,
        phi_from_formula,
        residual,
        consistent: residual.is_finite() && residual <= 1e-6 * roots.phi,
    }
}
