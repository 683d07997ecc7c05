//! Monotonicity conditions on the stress tensors: TSTS-M(+) (Cauchy stress
//! monotone in log B), KSTS-M(+) (Hill: Kirchhoff stress monotone in log V,
//! i.e. the energy convex in log V), and the bounded-distortion feasibility
//! analysis for the exponentiated family.

use super::{CriterionReport, Verdict};
use crate::error::{HenckyError, Result};
use crate::fd;
use crate::params::{EnergySpec, MaterialParams, Model};
use crate::sampling;
use crate::tensor::{deviatoric, SymTensor};

/// Analytic quadratic form <D_X sigma(X) . H, H> of the Cauchy stress in
/// logarithmic strain. Positive definiteness of this form is sufficient for
/// strict true-stress-true-strain monotonicity.
///
/// Supported models: the exponentiated family, the quadratic Hencky model,
/// the full exponential e^{k ||X||^2} (Cauchy stress 2 mu e^{k||X||^2 - tr X} X)
/// and the coupled exponential.
pub fn tsts_quadratic_form(
    spec: &EnergySpec,
    x: &SymTensor,
    h: &SymTensor,
) -> Result<f64> {
    if x.dim() != spec.dim || h.dim() != spec.dim {
        return Err(HenckyError::UnsupportedDimension(x.dim(), spec.dim));
    }
    let p = &spec.params;
    let dev_x = deviatoric(x);
    let dev_h = deviatoric(h);
    let tr_x = x.trace();
    let tr_h = h.trace();
    let dxh = dev_x.inner(h);
    Ok(match spec.model {
        Model::ExpHencky | Model::ExpHenckySharp => {
            let iso = 2.0
                * p.mu
                * (p.k * dev_x.norm_sq() - tr_x).exp()
                * (2.0 * p.k * dxh * dxh - tr_h * dxh + dev_h.norm_sq());
            let vol = p.kappa
                * (p.khat * tr_x * tr_x - tr_x).exp()
                * (2.0 * p.khat * tr_x * tr_x - tr_x + 1.0)
                * tr_h
                * tr_h;
            iso + vol
        }
        Model::Hencky => {
            (2.0 * p.mu * dev_h.norm_sq() + p.kappa * tr_h * tr_h
                - 2.0 * p.mu * tr_h * dxh
                - p.kappa * tr_x * tr_h * tr_h)
                * (-tr_x).exp()
        }
        Model::FullLogExp => {
            let xh = x.inner(h);
            2.0 * p.mu
                * (p.k * x.norm_sq() - tr_x).exp()
                * (2.0 * p.k * xh * xh - tr_h * xh + h.norm_sq())
        }
        Model::CoupledExp { a, a_hat } => {
            let lin = 2.0 * a * dxh + a_hat * tr_x * tr_h;
            p.mu
                * (a * dev_x.norm_sq() + 0.5 * a_hat * tr_x * tr_x - tr_x).exp()
                * (lin * lin - tr_h * lin + 2.0 * a * dev_h.norm_sq() + a_hat * tr_h * tr_h)
        }
        _ => {
            return Err(HenckyError::UnknownModel(format!(
                "{:?} has no analytic stress-monotonicity form",
                spec.model
            )))
        }
    })
}

/// Cauchy stress of the models supported by [`tsts_quadratic_form`], used
/// for the finite-difference cross-check of the analytic form.
pub fn tsts_cauchy(spec: &EnergySpec, x: &SymTensor) -> Result<SymTensor> {
    let p = &spec.params;
    Ok(match spec.model {
        Model::ExpHencky | Model::ExpHenckySharp => crate::stress::cauchy_eh(x, p),
        Model::Hencky => crate::stress::stresses_h(x, p).cauchy,
        Model::FullLogExp => {
            x.scale(2.0 * p.mu * (p.k * x.norm_sq() - x.trace()).exp())
        }
        Model::CoupledExp { a, a_hat } => {
            let dev = deviatoric(x);
            let tr = x.trace();
            let front =
                p.mu * (a * dev.norm_sq() + 0.5 * a_hat * tr * tr - tr).exp();
            dev.scale(2.0 * a * front)
                .add(&SymTensor::identity(x.dim()).scale(a_hat * tr * front))
        }
        _ => {
            return Err(HenckyError::UnknownModel(format!(
                "{:?} has no closed-form Cauchy stress here",
                spec.model
            )))
        }
    })
}

/// The closed-form displayed value of the monotonicity counterexample for
/// the exponentiated family: off-diagonal state of magnitude t paired with a
/// near-spherical direction of trace q,
/// 2 mu e^{2 k t^2} (8 k t^2 - 2 q t + 4) + kappa q^2.
pub fn tsts_counterexample_display(t: f64, q: f64, p: &MaterialParams) -> f64 {
    2.0 * p.mu * (2.0 * p.k * t * t).exp() * (8.0 * p.k * t * t - 2.0 * q * t + 4.0)
        + p.kappa * q * q
}

/// The state/direction pair of the monotonicity counterexample.
pub fn tsts_counterexample_pair(t: f64, q: f64) -> (SymTensor, SymTensor) {
    let mut x = SymTensor::zeros(3);
    x.set(0, 1, t);
    let mut h = SymTensor::identity(3).scale(q / 3.0);
    h.set(0, 1, 1.0);
    (x, h)
}

/// Sampled TSTS-M check for e^{k ||log V||^2}: the form is positive
/// semidefinite for k >= 3/8 and definite for k > 3/8. Margins report the
/// minimum sampled form value (normalized by ||H|| = 1).
pub fn check_tsts_full_exponential(
    k: f64,
    samples: usize,
    seed: u64,
) -> Result<CriterionReport> {
    let p = MaterialParams::new(1.0, 1.0, k, 1.0)?;
    let spec = EnergySpec::new(Model::FullLogExp, p, 3)?;
    sampled_form_report("TSTSM-full-exp", &spec, samples, seed)
}

/// Sampled TSTS-M check for the coupled exponential
/// mu e^{a ||dev3 log V||^2 + (ahat/2) (tr log V)^2}; holds for ahat > 1/4.
pub fn check_coupled_exponential_tsts(
    a: f64,
    a_hat: f64,
    samples: usize,
    seed: u64,
) -> Result<CriterionReport> {
    let p = MaterialParams::new(1.0, 1.0, 1.0, 1.0)?;
    let spec = EnergySpec::new(Model::CoupledExp { a, a_hat }, p, 3)?;
    sampled_form_report("TSTSM-coupled", &spec, samples, seed)
}

/// Sampled TSTS-M check of an arbitrary supported model.
pub fn check_tsts_sampled(
    spec: &EnergySpec,
    samples: usize,
    seed: u64,
) -> Result<CriterionReport> {
    sampled_form_report("TSTSM", spec, samples, seed)
}

fn sampled_form_report(
    tag: &str,
    spec: &EnergySpec,
    samples: usize,
    seed: u64,
) -> Result<CriterionReport> {
    let mut rng = sampling::rng(seed);
    let mut min_form = f64::INFINITY;
    for _ in 0..samples {
        let x = sampling::random_sym(&mut rng, spec.dim, 5.0 / 3.0);
        let h = sampling::random_sym_unit(&mut rng, spec.dim);
        let q = tsts_quadratic_form(spec, &x, &h)?;
        min_form = min_form.min(q);
    }
    let margins = vec![("min_form".to_string(), min_form)];
    Ok(CriterionReport::new(tag, Vec::new(), margins).sampled())
}

/// Hill's inequality (KSTS-M) for an arbitrary energy given as a function
/// of the logarithmic strain tensor: convexity is probed by sampled
/// finite-difference Hessian quadratic forms. Margins report the minimum
/// sampled form normalized by the sampled energy magnitude, with a 1e-8
/// band absorbing the FD noise floor.
pub fn check_kstsm_fn(
    f: impl Fn(&SymTensor) -> f64,
    dim: usize,
    samples: usize,
    seed: u64,
) -> Result<CriterionReport> {
    let mut rng = sampling::rng(seed);
    let mut min_form = f64::INFINITY;
    let mut scale: f64 = 1.0;
    for _ in 0..samples {
        let x = sampling::random_log_strain(&mut rng, dim, 1.5, 1.5);
        let h = sampling::random_sym_unit(&mut rng, dim);
        let w0 = f(&x);
        let q = fd::second_directional(&f, &x, &h, fd::FD_STEP_HESS * (1.0 + x.norm()));
        scale = scale.max(w0.abs());
        min_form = min_form.min(q);
    }
    let margins = vec![("min_hessian_form".to_string(), min_form / scale + 1e-8)];
    Ok(CriterionReport::new("KSTSM", Vec::new(), margins).sampled())
}

/// Hill's inequality for one of the named models.
pub fn check_kstsm(spec: &EnergySpec, samples: usize, seed: u64) -> Result<CriterionReport> {
    check_kstsm_fn(
        |t| crate::energy::energy_from_log(spec, t).unwrap(),
        spec.dim,
        samples,
        seed,
    )
}

/// Feasible interval of the distortional stiffening parameter k for which
/// the exponentiated family satisfies TSTS-M+ on the bounded-distortion
/// domain ||dev3 log V||^2 <= (2/3) sigma_tilde^2.
///
/// The interval is the solution set of e^{k c}/k <= (4 kappa/mu) R with
/// c = (2/3) sigma_tilde^2 and R = (8 khat - 1)/(8 khat); it is nonempty iff
/// sigma_tilde^2 <= (6/e)(kappa/mu) R.
pub fn tsts_bounded_distortion_feasibility(
    p: &MaterialParams,
    sigma_tilde: f64,
) -> Result<Option<(f64, f64)>> {
    if !(p.khat > 0.125) {
        return Err(HenckyError::MonotonicityViolation(p.khat));
    }
    if !(sigma_tilde > 0.0) {
        return Err(HenckyError::InvalidInput(
            "sigma_tilde must be positive".into(),
        ));
    }
    let r = (8.0 * p.khat - 1.0) / (8.0 * p.khat);
    let bound = 6.0 / std::f64::consts::E * (p.kappa / p.mu) * r;
    if sigma_tilde * sigma_tilde > bound {
        return Ok(None);
    }
    let c = 2.0 / 3.0 * sigma_tilde * sigma_tilde;
    let limit = 4.0 * p.kappa / p.mu * r;
    let f = |k: f64| (k * c).exp() / k;
    Ok(Some(feasible_interval(f, 1.0 / c, limit)))
}

/// Feasibility for the three-parameter subfamily (khat = 2k/3, k > 3/16):
/// solution interval of e^{k c}/(16 k - 3) <= kappa/(4 mu); nonempty iff
/// sigma_tilde^2 e^{sigma_tilde^2 / 8 + 1} <= 6 kappa / mu.
pub fn tsts_bounded_distortion_feasibility_sharp(
    p: &MaterialParams,
    sigma_tilde: f64,
) -> Result<Option<(f64, f64)>> {
    if !(sigma_tilde > 0.0) {
        return Err(HenckyError::InvalidInput(
            "sigma_tilde must be positive".into(),
        ));
    }
    let s2 = sigma_tilde * sigma_tilde;
    if s2 * (s2 / 8.0 + 1.0).exp() > 6.0 * p.kappa / p.mu {
        return Ok(None);
    }
    let c = 2.0 / 3.0 * s2;
    let limit = p.kappa / (4.0 * p.mu);
    let f = |k: f64| (k * c).exp() / (16.0 * k - 3.0);
    // Unconstrained minimizer of f on (3/16, inf).
    let k_star = 1.0 / c + 3.0 / 16.0;
    let (lo, hi) = feasible_interval(f, k_star, limit);
    Ok(Some((lo.max(3.0 / 16.0 + 1e-12), hi)))
}

/// Solution interval {k : f(k) <= limit} of a strictly quasiconvex f with
/// minimizer near k_star, found by expanding brackets plus bisection.
fn feasible_interval(f: impl Fn(f64) -> f64, k_star: f64, limit: f64) -> (f64, f64) {
    let bisect = |mut inside: f64, mut outside: f64| -> f64 {
        for _ in 0..200 {
            let mid = 0.5 * (inside + outside);
            if f(mid) <= limit {
                inside = mid;
            } else {
                outside = mid;
            }
            if (inside - outside).abs() <= 1e-14 * inside.abs().max(1.0) {
                break;
            }
        }
        inside
    };
    // Left edge: walk down from the minimizer until infeasible.
    let mut lo_out = k_star;
    while f(lo_out) <= limit && lo_out > 1e-300 {
        lo_out /= 2.0;
    }
    let lo = bisect(lo_out * 2.0, lo_out);
    // Right edge: walk up until infeasible.
    let mut hi_out = k_star;
    while f(hi_out) <= limit && hi_out < 1e300 {
        hi_out *= 2.0;
    }
    let hi = bisect(hi_out / 2.0, hi_out);
    (lo, hi)
}
