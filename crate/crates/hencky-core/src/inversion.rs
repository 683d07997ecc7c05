//! Exact inversion of the Cauchy-stress / log-strain map of the
//! exponentiated family, plus the special-loading solvers.
//!
//! The trace part reduces to the scalar equation e^{khat x^2 - x} x = y,
//! strictly monotone for khat > 1/8; the deviatoric part reduces to
//! r e^{k r^2} = w with the solution parallel to dev(sigma). Scalar solves
//! use a safeguarded Newton iteration inside an automatically expanded
//! bracket, with bisection as fallback.

use crate::error::{HenckyError, Result};
use crate::params::MaterialParams;
#[cfg(test)]
use crate::stress::cauchy_eh;
use crate::tensor::{deviatoric, SymTensor};

/// Residual tolerance of the scalar solves, relative to max(1, |y|).
pub const SOLVE_TOL: f64 = 1e-12;
const MAX_NEWTON_ITER: usize = 200;

/// Threshold below which the trace equation stops being injective.
pub const KHAT_MONOTONE_LIMIT: f64 = 0.125;

/// Uniaxial-tension solution in closed principal form: amplitude `a` of the
/// deviatoric part, trace `x`, the full log strain and the nonlinear Poisson
/// ratio; `log V = diag(a + x/3, -a/2 + x/3, -a/2 + x/3)`.
#[derive(Debug, Clone)]
pub struct UniaxialSolution {
    pub s: f64,
    pub a: f64,
    pub x: f64,
    pub log_v: SymTensor,
    pub nu_hat: f64,
}

/// Solves f(x) = y for a strictly increasing f with f' available, by Newton
/// steps safeguarded inside a sign-change bracket grown from [-1, 1].
fn solve_monotone(
    f: impl Fn(f64) -> f64,
    df: impl Fn(f64) -> f64,
    y: f64,
) -> Result<f64> {
    let tol = SOLVE_TOL * y.abs().max(1.0);
    if f(0.0) == y {
        return Ok(0.0);
    }
    // Expand [-2^j, 2^j] until the residual changes sign.
    let mut hi = 1.0_f64;
    let mut lo = -1.0_f64;
    for _ in 0..1100 {
        if f(lo) <= y && y <= f(hi) {
            break;
        }
        lo *= 2.0;
        hi *= 2.0;
        if !lo.is_finite() {
            return Err(HenckyError::SolverFailure(
                "bracket expansion exhausted".into(),
            ));
        }
    }
    if !(f(lo) <= y && y <= f(hi)) {
        return Err(HenckyError::SolverFailure("no sign change found".into()));
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..MAX_NEWTON_ITER {
        let r = f(x) - y;
        if r.abs() <= tol {
            return Ok(x);
        }
        if r > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let d = df(x);
        let newton = x - r / d;
        let step_ok = d > 0.0 && newton > lo && newton < hi && newton.is_finite();
        let next = if step_ok { newton } else { 0.5 * (lo + hi) };
        if (next - x).abs() <= 1e-14 * (1.0 + x.abs()) && (f(next) - y).abs() <= tol {
            return Ok(next);
        }
        x = next;
    }
    let r = f(x) - y;
    if r.abs() <= tol * 1e2 {
        Ok(x)
    } else {
        Err(HenckyError::SolverFailure(format!(
            "residual {r:e} after {MAX_NEWTON_ITER} iterations"
        )))
    }
}

/// Solves e^{khat x^2 - x} x = y. Unique for khat > 1/8; refused otherwise
/// (the boundary case khat = 1/8 is rejected as well).
pub fn solve_trace_equation(y: f64, khat: f64) -> Result<f64> {
    if !(khat > KHAT_MONOTONE_LIMIT) {
        return Err(HenckyError::MonotonicityViolation(khat));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    let f = |x: f64| (khat * x * x - x).exp() * x;
    // f'(x) = e^{khat x^2 - x} (2 khat x^2 - x + 1), positive for khat > 1/8.
    let df = |x: f64| (khat * x * x - x).exp() * (2.0 * khat * x * x - x + 1.0);
    let x = solve_monotone(f, df, y)?;
    debug_assert!(x == 0.0 || x.signum() == y.signum());
    Ok(x)
}

/// Solves r e^{k r^2} = w for r >= 0 (w >= 0); strictly monotone for k > 0.
fn solve_radial(w: f64, k: f64) -> Result<f64> {
    if w == 0.0 {
        return Ok(0.0);
    }
    let f = |r: f64| (k * r * r).exp() * r;
    let df = |r: f64| (k * r * r).exp() * (2.0 * k * r * r + 1.0);
    solve_monotone(f, df, w)
}

/// Inverts the Cauchy stress of the exponentiated family: returns the unique
/// log V with cauchy_eh(log V) = sigma. Requires khat > 1/8.
pub fn invert_cauchy_eh(sigma: &SymTensor, p: &MaterialParams) -> Result<SymTensor> {
    if !(p.khat > KHAT_MONOTONE_LIMIT) {
        return Err(HenckyError::MonotonicityViolation(p.khat));
    }
    if !sigma.is_finite() {
        return Err(HenckyError::InvalidInput("stress must be finite".into()));
    }
    let n = sigma.dim() as f64;
    // Trace part: tr(sigma) / (n kappa) = e^{khat x^2 - x} x.
    let x = solve_trace_equation(sigma.trace() / (n * p.kappa), p.khat)?;
    // Deviatoric part: 2 mu e^{k r^2 - x} r = ||dev sigma|| with the solution
    // parallel to dev sigma.
    let dev_sigma = deviatoric(sigma);
    let dev_norm = dev_sigma.norm();
    let mut log_v = SymTensor::identity(sigma.dim()).scale(x / n);
    if dev_norm > 0.0 {
        let w = dev_norm * x.exp() / (2.0 * p.mu);
        let r = solve_radial(w, p.k)?;
        log_v = log_v.add(&dev_sigma.scale(r / dev_norm));
    }
    Ok(log_v)
}

/// Amount of shear gamma produced by the pure planar shear stress s:
/// solves 2 mu e^{k gamma^2 / 2} (gamma / 2) = s. The recovered stretch is
/// the biaxial V = [[cosh(g/2), sinh(g/2), 0], [sinh(g/2), cosh(g/2), 0],
/// [0, 0, 1]] with det V = 1.
pub fn pure_shear_strain(s: f64, p: &MaterialParams) -> Result<f64> {
    let f = |g: f64| p.mu * g * (0.5 * p.k * g * g).exp();
    let df = |g: f64| p.mu * (0.5 * p.k * g * g).exp() * (p.k * g * g + 1.0);
    solve_monotone(f, df, s)
}

/// Biaxial stretch tensor of the pure-shear solution.
pub fn pure_shear_stretch(gamma: f64) -> SymTensor {
    let mut v = SymTensor::identity(3);
    v.set(0, 0, (gamma / 2.0).cosh());
    v.set(1, 1, (gamma / 2.0).cosh());
    v.set(0, 1, (gamma / 2.0).sinh());
    v
}

/// Uniaxial tension in normalized form: solves
/// e^{(3/2) k a^2 - x} (3/2) a = (1 + nu) s/E and
/// e^{khat x^2 - x} x = (1 - 2 nu) s/E.
///
/// The endpoint values nu = 1/2 (incompressible, x = 0) and nu = -1 (a = 0)
/// are handled exactly.
pub fn uniaxial_tension_normalized(
    s_over_e: f64,
    nu: f64,
    k: f64,
    khat: f64,
) -> Result<UniaxialSolution> {
    if !(nu >= -1.0 && nu <= 0.5) {
        return Err(HenckyError::InvalidInput(format!(
            "Poisson ratio must lie in [-1, 1/2], got {nu}"
        )));
    }
    let x = if nu == 0.5 {
        0.0
    } else {
        solve_trace_equation((1.0 - 2.0 * nu) * s_over_e, khat)?
    };
    let a = if nu == -1.0 {
        0.0
    } else {
        // e^{(3/2) k a^2} (3/2) a = (1 + nu) (s/E) e^x
        let rhs = (1.0 + nu) * s_over_e * x.exp();
        let f = |a: f64| 1.5 * a * (1.5 * k * a * a).exp();
        let df = |a: f64| 1.5 * (1.5 * k * a * a).exp() * (3.0 * k * a * a + 1.0);
        solve_monotone(f, df, rhs)?
    };
    let log_v = SymTensor::diag(&[a + x / 3.0, -a / 2.0 + x / 3.0, -a / 2.0 + x / 3.0]);
    let nu_hat = if s_over_e == 0.0 {
        // Tangency limit of the contraction ratio at zero load.
        nu
    } else {
        (a / 2.0 - x / 3.0) / (a + x / 3.0)
    };
    Ok(UniaxialSolution {
        s: s_over_e,
        a,
        x,
        log_v,
        nu_hat,
    })
}

/// Uniaxial Cauchy tension for a concrete material: sigma = diag(s, 0, 0).
pub fn uniaxial_tension(s: f64, p: &MaterialParams) -> Result<UniaxialSolution> {
    let e = p.young_modulus();
    let nu = p.poisson_ratio();
    let mut sol = uniaxial_tension_normalized(s / e, nu, p.k, p.khat)?;
    sol.s = s;
    Ok(sol)
}

/// Nonlinear Poisson ratio nu_hat = -(log V)_22 / (log V)_11 under uniaxial
/// tension, as a function of the load s/E and the linear Poisson ratio.
pub fn nonlinear_poisson(s_over_e: f64, nu: f64, k: f64, khat: f64) -> Result<f64> {
    Ok(uniaxial_tension_normalized(s_over_e, nu, k, khat)?.nu_hat)
}
